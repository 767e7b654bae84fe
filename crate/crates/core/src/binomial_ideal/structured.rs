//! Two-row monomial matrices and their 2×2 minors.

use serde::{Deserialize, Serialize};

use super::order::{MonomialOrder, OrderKind};
use super::{variable_names, Binomial, BinomialIdeal};
use crate::constructors::GapSpec;
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::semigroup::IntVec;

/// One or more 2×n blocks of monomials over a shared variable context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredMatrix {
    pub variables: Vec<String>,
    #[serde(default)]
    pub degree_map: Vec<IntVec>,
    pub blocks: Vec<(Vec<Monomial>, Vec<Monomial>)>,
}

fn var(nvars: usize, i: usize, power: u32) -> Monomial {
    Monomial::var(nvars, i, power)
}

/// Rows `[x^h_{o}, x_{o+1}, ..., x_{o+n-1}]` and `[x_{o+1}, ..., x_{o+n}]`
/// with `o = offset`.
fn progression_rows(nvars: usize, offset: usize, n: usize, h: u32) -> (Vec<Monomial>, Vec<Monomial>) {
    let mut top = vec![var(nvars, offset, h)];
    top.extend((1..n).map(|k| var(nvars, offset + k, 1)));
    let bottom = (1..=n).map(|k| var(nvars, offset + k, 1)).collect();
    (top, bottom)
}

impl StructuredMatrix {
    pub fn new(
        variables: Vec<String>,
        degree_map: Vec<IntVec>,
        blocks: Vec<(Vec<Monomial>, Vec<Monomial>)>,
    ) -> Result<Self> {
        let m = StructuredMatrix { variables, degree_map, blocks };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::BadShape("matrix has no blocks".into()));
        }
        for (top, bottom) in &self.blocks {
            if top.len() != bottom.len() || top.len() < 2 {
                return Err(Error::BadShape(format!(
                    "rows of lengths {} and {}; need equal lengths of at least 2",
                    top.len(),
                    bottom.len()
                )));
            }
            if top.iter().chain(bottom).any(|m| m.nvars() != self.variables.len()) {
                return Err(Error::BadShape("entry outside the variable context".into()));
            }
        }
        Ok(())
    }

    /// `[[x1^h, x2, ..., xn], [x2, x3, ..., x_{n+1}]]`, graded by the
    /// progression generators.
    pub fn progression(spec: &GapSpec) -> StructuredMatrix {
        let nvars = spec.n + 1;
        StructuredMatrix {
            variables: variable_names("x", nvars),
            degree_map: spec.generators(),
            blocks: vec![progression_rows(nvars, 0, spec.n, spec.h)],
        }
    }

    /// The two progression matrices of a block join, in variables
    /// `x1..x_{n1+1}, y1..y_{n2+1}`.
    pub fn join_pair(left: &GapSpec, right: &GapSpec) -> StructuredMatrix {
        let n1 = left.n + 1;
        let n2 = right.n + 1;
        let nvars = n1 + n2;
        let (r1, r2) = (left.a.len(), right.a.len());
        let mut variables = variable_names("x", n1);
        variables.extend(variable_names("y", n2));
        let mut degree_map = Vec::with_capacity(nvars);
        for g in left.generators() {
            let mut v = vec![0; r1 + r2];
            v[..r1].copy_from_slice(&g);
            degree_map.push(v);
        }
        for g in right.generators() {
            let mut v = vec![0; r1 + r2];
            v[r1..].copy_from_slice(&g);
            degree_map.push(v);
        }
        StructuredMatrix {
            variables,
            degree_map,
            blocks: vec![
                progression_rows(nvars, 0, left.n, left.h),
                progression_rows(nvars, n1, right.n, right.h),
            ],
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Number of columns of each block.
    pub fn widths(&self) -> Vec<usize> {
        self.blocks.iter().map(|(t, _)| t.len()).collect()
    }

    fn block_minors(&self, k: usize) -> Vec<Binomial> {
        let (top, bottom) = &self.blocks[k];
        let mut out = Vec::new();
        for i in 0..top.len() {
            for j in i + 1..top.len() {
                let plus = top[i].mul(&bottom[j]);
                let minus = top[j].mul(&bottom[i]);
                if plus != minus {
                    out.push(Binomial::new(plus, minus));
                }
            }
        }
        out
    }

    fn ideal_of(&self, binomials: Vec<Binomial>) -> Result<BinomialIdeal> {
        BinomialIdeal::new(self.variables.clone(), self.degree_map.clone(), binomials)
    }

    /// All 2×2 minors of every block.
    pub fn minors_2x2(&self) -> Result<BinomialIdeal> {
        self.validate()?;
        let all = (0..self.blocks.len()).flat_map(|k| self.block_minors(k)).collect();
        self.ideal_of(all)
    }

    /// The minors of each block as a separate ideal in the shared context.
    pub fn block_ideals(&self) -> Result<Vec<BinomialIdeal>> {
        self.validate()?;
        (0..self.blocks.len())
            .map(|k| self.ideal_of(self.block_minors(k)))
            .collect()
    }
}

/// Negative degrevlex on `x1..x_{n+1}` with `x2 > ... > xn > x1 > x_{n+1}`.
pub fn progression_local_order(n: usize) -> MonomialOrder {
    let mut perm: Vec<usize> = (1..n).collect();
    perm.push(0);
    perm.push(n);
    MonomialOrder::new(OrderKind::NegDegrevlex, perm).expect("valid permutation")
}

/// Degrevlex on `x1..x_{n+1}` with `x_{n+1} > xn > ... > x3 > x1 > x2`.
pub fn grade_witness_order(n: usize) -> MonomialOrder {
    let mut perm: Vec<usize> = (2..=n).rev().collect();
    perm.push(0);
    perm.push(1);
    MonomialOrder::new(OrderKind::Degrevlex, perm).expect("valid permutation")
}

/// Negative degrevlex on `x1..x_{n1+1}, y1..y_{n2+1}` with
/// `x2 > ... > x_{n1} > y2 > ... > y_{n2} > x1 > x_{n1+1} > y1 > y_{n2+1}`.
pub fn join_local_order(n1: usize, n2: usize) -> MonomialOrder {
    let y = n1 + 1;
    let mut perm: Vec<usize> = (1..n1).collect();
    perm.extend((y + 1)..(y + n2));
    perm.extend([0, n1, y, y + n2]);
    MonomialOrder::new(OrderKind::NegDegrevlex, perm).expect("valid permutation")
}

/// `{x_{i-1}x_{i+1} - x_i^2 : 3 ≤ i ≤ n} ∪ {x1^h x_{n+1} - x2 xn}`.
pub fn grade_witness_set(n: usize, h: u32) -> Vec<Binomial> {
    let nv = n + 1;
    let x = |i: usize, p: u32| var(nv, i - 1, p);
    let mut out: Vec<Binomial> = (3..=n)
        .map(|i| Binomial::new(x(i - 1, 1).mul(&x(i + 1, 1)), x(i, 2)))
        .collect();
    out.push(Binomial::new(x(1, h).mul(&x(n + 1, 1)), x(2, 1).mul(&x(n, 1))));
    out
}

/// Index ranges for the family `x_{i+1}x_j - x_i x_{j+1}` (`2 ≤ i ≤ i_max`,
/// `i+1 ≤ j ≤ j_max`) together with `x2 x_l - x1^h x_{l+1}` (`2 ≤ l ≤ l_max`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorRanges {
    pub i_max: usize,
    pub j_max: usize,
    pub l_max: usize,
}

impl MinorRanges {
    /// `i ≤ n-2`, `j ≤ n-1`, `l ≤ n-1`.
    pub fn stated(n: usize) -> Self {
        MinorRanges { i_max: n.saturating_sub(2), j_max: n - 1, l_max: n - 1 }
    }

    /// `i ≤ n-2`, `j ≤ n`, `l ≤ n`.
    pub fn extended(n: usize) -> Self {
        MinorRanges { i_max: n.saturating_sub(2), j_max: n, l_max: n }
    }

    /// `i ≤ n-1`, `j ≤ n`, `l ≤ n`.
    pub fn full(n: usize) -> Self {
        MinorRanges { i_max: n - 1, j_max: n, l_max: n }
    }
}

/// The binomial family described by `ranges`, in variables `x1..x_{n+1}`.
pub fn adjacent_minor_set(n: usize, h: u32, ranges: MinorRanges) -> Vec<Binomial> {
    let nv = n + 1;
    let x = |i: usize, p: u32| var(nv, i - 1, p);
    let mut out = Vec::new();
    for i in 2..=ranges.i_max {
        for j in (i + 1)..=ranges.j_max {
            out.push(Binomial::new(x(i + 1, 1).mul(&x(j, 1)), x(i, 1).mul(&x(j + 1, 1))));
        }
    }
    for l in 2..=ranges.l_max {
        out.push(Binomial::new(x(2, 1).mul(&x(l, 1)), x(1, h).mul(&x(l + 1, 1))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn spec(h: u32, n: usize) -> GapSpec {
        GapSpec::new(vec![1, 2], vec![2, 1], h, n)
    }

    #[test]
    fn minors_of_progression() {
        let p = StructuredMatrix::progression(&spec(1, 3));
        let i = p.minors_2x2().unwrap();
        assert_eq!(
            i.binomials,
            vec![
                Binomial::new(m(&[1, 0, 1, 0]), m(&[0, 2, 0, 0])),
                Binomial::new(m(&[1, 0, 0, 1]), m(&[0, 1, 1, 0])),
                Binomial::new(m(&[0, 1, 0, 1]), m(&[0, 0, 2, 0])),
            ]
        );
        let p = StructuredMatrix::progression(&spec(3, 2));
        assert_eq!(
            p.minors_2x2().unwrap().binomials,
            vec![Binomial::new(m(&[3, 0, 1]), m(&[0, 2, 0]))]
        );
    }

    #[test]
    fn join_pair_minors_are_the_union() {
        let l = spec(1, 2);
        let r = GapSpec::new(vec![1, 3], vec![1, 1], 1, 2);
        let p = StructuredMatrix::join_pair(&l, &r);
        assert_eq!(p.variables, vec!["x1", "x2", "x3", "y1", "y2", "y3"]);
        let i = p.minors_2x2().unwrap();
        assert_eq!(i.binomials.len(), 2);
        let blocks = p.block_ideals().unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].binomials[0], i.binomials[0]);
    }

    #[test]
    fn bad_shape() {
        let e = StructuredMatrix::new(
            vec!["x".into()],
            vec![],
            vec![(vec![m(&[1])], vec![m(&[1])])],
        )
        .unwrap_err();
        assert_eq!(e.code(), "bad-shape");
    }

    #[test]
    fn witness_set_leads_are_coprime() {
        let o = grade_witness_order(4);
        let t = grade_witness_set(4, 1);
        assert_eq!(t.len(), 3);
        let leads: Vec<&Monomial> = t.iter().map(|b| o.max(&b.plus, &b.minus)).collect();
        assert_eq!(leads, vec![&m(&[0, 0, 2, 0, 0]), &m(&[0, 0, 0, 2, 0]), &m(&[1, 0, 0, 0, 1])]);
        let t2 = grade_witness_set(2, 3);
        assert_eq!(t2, vec![Binomial::new(m(&[3, 0, 1]), m(&[0, 2, 0]))]);
    }

    #[test]
    fn orders_have_the_right_permutations() {
        assert_eq!(progression_local_order(4).permutation, vec![1, 2, 3, 0, 4]);
        assert_eq!(grade_witness_order(4).permutation, vec![4, 3, 2, 0, 1]);
        assert_eq!(join_local_order(2, 2).permutation, vec![1, 4, 0, 2, 3, 5]);
        let o = progression_local_order(3);
        assert_eq!(o.compare(&m(&[0, 2, 0, 0]), &m(&[1, 0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn minor_ranges() {
        assert_eq!(adjacent_minor_set(4, 1, MinorRanges::stated(4)).len(), 1 + 2);
        assert_eq!(adjacent_minor_set(4, 1, MinorRanges::extended(4)).len(), 2 + 3);
        assert_eq!(adjacent_minor_set(4, 1, MinorRanges::full(4)).len(), 6);
    }
}
