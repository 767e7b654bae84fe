//! Toric ideals by elimination.

use super::engine::{groebner_basis, normal_form, Element};
use super::order::MonomialOrder;
use super::{variable_names, Binomial, BinomialIdeal};
use crate::error::Result;
use crate::poly::Monomial;
use crate::semigroup::AffineSemigroup;
use crate::Caps;

/// Kernel of `z_i ↦ t^{a_i}` as a minimal generating set of binomials.
///
/// The Gröbner basis of `{z_i - t^{a_i}}` under a t-before-z block order is
/// restricted to the t-free elements, then thinned to a minimal generating
/// set by scanning candidates in increasing degree. Variables default to
/// `z1, z2, ...`.
pub fn toric_ideal(
    gamma: &AffineSemigroup,
    names: Option<Vec<String>>,
    caps: &Caps,
) -> Result<BinomialIdeal> {
    let r = gamma.ambient_dim();
    let m = gamma.num_generators();
    let nv = r + m;
    let elim = MonomialOrder::block_elim(nv, r);
    let gens: Vec<Element> = gamma
        .generators()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| {
            let z = Monomial::var(nv, r + i, 1);
            let mut t = vec![0u32; nv];
            for (k, &x) in a.iter().enumerate() {
                t[k] = x as u32;
            }
            Element::from_terms(&elim, &[(z, 1), (Monomial(t), -1)])
        })
        .collect();
    let gb = groebner_basis(&gens, &elim, caps)?;

    let project = |mono: &Monomial| Monomial(mono.exps()[r..].to_vec());
    let t_free = |mono: &Monomial| mono.exps()[..r].iter().all(|&e| e == 0);
    let degrevlex = MonomialOrder::degrevlex(m);
    let degree_map = gamma.generators().to_vec();
    let weight = |b: &Monomial| -> i64 { b.weighted_degree(&degree_map).iter().sum() };

    let mut candidates: Vec<Element> = gb
        .iter()
        .filter(|e| t_free(&e.lead) && e.tail.as_ref().is_some_and(t_free))
        .filter_map(|e| {
            let tail = e.tail.as_ref().expect("filtered");
            Element::from_terms(&degrevlex, &[(project(&e.lead), 1), (project(tail), -1)])
        })
        .collect();
    candidates.sort_by(|a, b| {
        weight(&a.lead)
            .cmp(&weight(&b.lead))
            .then_with(|| degrevlex.compare(&a.lead, &b.lead))
    });

    let mut kept: Vec<Element> = Vec::new();
    for c in candidates {
        let redundant = if kept.is_empty() {
            false
        } else {
            let basis = groebner_basis(&kept, &degrevlex, caps)?;
            normal_form(&c, &basis, &degrevlex, caps)?.0.is_none()
        };
        if !redundant {
            kept.push(c);
        }
    }
    let binomials: Vec<Binomial> = kept
        .iter()
        .map(|e| e.to_binomial().expect("toric elements are binomials"))
        .collect();
    BinomialIdeal::new(
        names.unwrap_or_else(|| variable_names("z", m)),
        degree_map,
        binomials,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial_ideal::StructuredMatrix;
    use crate::constructors::{gap_semigroup, join, GapSpec};

    #[test]
    fn progression_equals_minors() {
        let caps = Caps::default();
        let spec = GapSpec::new(vec![1, 2], vec![2, 1], 1, 3);
        let g = gap_semigroup(&spec).unwrap();
        let i = toric_ideal(&g, Some(variable_names("x", 4)), &caps).unwrap();
        assert_eq!(i.binomials.len(), 3);
        let p = StructuredMatrix::progression(&spec).minors_2x2().unwrap();
        assert!(i.ideal_equal(&p, &caps).unwrap());
        for b in &i.binomials {
            assert!(b.is_homogeneous(&i.degree_map));
        }
    }

    #[test]
    fn free_semigroup_has_zero_ideal() {
        let g = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(toric_ideal(&g, None, &Caps::default()).unwrap().is_zero());
    }

    #[test]
    fn join_ideal_is_two_quadrics() {
        let caps = Caps::default();
        let l = gap_semigroup(&GapSpec::new(vec![1, 2], vec![2, 1], 1, 2)).unwrap();
        let r = gap_semigroup(&GapSpec::new(vec![1, 3], vec![1, 1], 1, 2)).unwrap();
        let j = join(&l, &r).unwrap();
        let i = toric_ideal(&j, None, &caps).unwrap();
        let x = |e: [u32; 6]| Monomial(e.to_vec());
        let mut got: Vec<Binomial> = i.binomials.clone();
        got.sort();
        let mut want = vec![
            Binomial::new(x([0, 2, 0, 0, 0, 0]), x([1, 0, 1, 0, 0, 0])),
            Binomial::new(x([0, 0, 0, 0, 2, 0]), x([0, 0, 0, 1, 0, 1])),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn numerical_semigroup() {
        // <3,4,5>: three quadrics/cubics generate the ideal.
        let g = AffineSemigroup::new(vec![vec![3], vec![4], vec![5]]).unwrap();
        let i = toric_ideal(&g, None, &Caps::default()).unwrap();
        assert_eq!(i.binomials.len(), 3);
        for b in &i.binomials {
            assert_eq!(
                b.plus.weighted_degree(&i.degree_map),
                b.minus.weighted_degree(&i.degree_map)
            );
        }
    }
}
