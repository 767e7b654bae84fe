//! Binomial ideals with ±1 coefficients: orders, division, Gröbner and
//! standard bases, toric ideals, determinantal ideals of structured 2×n
//! matrices and the witnesses built on them.

mod checks;
mod engine;
mod order;
mod structured;
mod toric;

pub use checks::{
    coprime_regular_sequence_witness, gastinger_check, has_quadratic_groebner,
    transversal_by_support, GastingerReport, TransversalVerdict,
};
pub use engine::{
    groebner_basis, is_groebner, normal_form, spoly, DivisionTrace, Element, GroebnerCertificate,
    PairCheck, Reducer, Step,
};
pub use order::{InnerKind, MonomialOrder, OrderDoc, OrderKind};
pub use structured::{
    adjacent_minor_set, grade_witness_order, grade_witness_set, join_local_order,
    progression_local_order, MinorRanges, StructuredMatrix,
};
pub use toric::toric_ideal;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::semigroup::IntVec;
use crate::Caps;

/// `plus - minus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn new(plus: Monomial, minus: Monomial) -> Self {
        Binomial { plus, minus }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::binomial(&self.plus, &self.minus)
    }

    /// Both sides have the same degree under `degree_map`.
    pub fn is_homogeneous(&self, degree_map: &[IntVec]) -> bool {
        self.plus.weighted_degree(degree_map) == self.minus.weighted_degree(degree_map)
    }

    pub fn display(&self, names: &[String]) -> String {
        format!("{} - {}", self.plus.display(names), self.minus.display(names))
    }
}

/// A binomial ideal over a named variable context with a degree map sending
/// each variable to a lattice vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialIdeal {
    pub variables: Vec<String>,
    #[serde(default)]
    pub degree_map: Vec<IntVec>,
    pub binomials: Vec<Binomial>,
}

/// `prefix1, prefix2, ...`.
pub fn variable_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl BinomialIdeal {
    /// Checks lengths and, when a degree map is present, homogeneity.
    pub fn new(variables: Vec<String>, degree_map: Vec<IntVec>, binomials: Vec<Binomial>) -> Result<Self> {
        let ideal = BinomialIdeal { variables, degree_map, binomials };
        ideal.validate()?;
        Ok(ideal)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        if !self.degree_map.is_empty() && self.degree_map.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.degree_map.len() });
        }
        for (idx, b) in self.binomials.iter().enumerate() {
            if b.plus.nvars() != n || b.minus.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.plus.nvars().max(b.minus.nvars()),
                });
            }
            if b.plus == b.minus {
                return Err(Error::BadShape(format!("binomial {idx} has equal terms")));
            }
            if !self.degree_map.is_empty() && !b.is_homogeneous(&self.degree_map) {
                return Err(Error::BadShape(format!("binomial {idx} is not homogeneous")));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_zero(&self) -> bool {
        self.binomials.is_empty()
    }

    pub fn elements(&self, order: &MonomialOrder) -> Vec<Element> {
        self.binomials
            .iter()
            .filter_map(|b| Element::from_binomial(b, order))
            .collect()
    }

    fn check_context(&self, other: &BinomialIdeal) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.variables, other.variables
            )));
        }
        Ok(())
    }

    fn check_order(&self, order: &MonomialOrder) -> Result<()> {
        if order.nvars() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "order on {} variables, ideal on {}",
                order.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Reduced Gröbner basis (global orders) or minimal standard basis
    /// (local order).
    pub fn basis(&self, order: &MonomialOrder, caps: &Caps) -> Result<Vec<Element>> {
        self.check_order(order)?;
        groebner_basis(&self.elements(order), order, caps)
    }

    /// The basis returned as an ideal with leading terms as `plus`.
    pub fn basis_ideal(&self, order: &MonomialOrder, caps: &Caps) -> Result<BinomialIdeal> {
        let binomials = self
            .basis(order, caps)?
            .iter()
            .map(|e| e.to_binomial().ok_or_else(|| Error::BadShape("monomial in a binomial basis".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(BinomialIdeal {
            variables: self.variables.clone(),
            degree_map: self.degree_map.clone(),
            binomials,
        })
    }

    /// Minimal generators of the initial ideal, sorted.
    pub fn initial_ideal(&self, order: &MonomialOrder, caps: &Caps) -> Result<Vec<Monomial>> {
        let mut leads: Vec<Monomial> = self.basis(order, caps)?.into_iter().map(|e| e.lead).collect();
        leads = minimal_monomials(leads);
        Ok(leads)
    }

    /// Equality of ideals: reduced bases under degrevlex coincide.
    pub fn ideal_equal(&self, other: &BinomialIdeal, caps: &Caps) -> Result<bool> {
        self.check_context(other)?;
        let order = MonomialOrder::degrevlex(self.nvars());
        Ok(self.basis(&order, caps)? == other.basis(&order, caps)?)
    }

    /// Membership of a binomial in the ideal.
    pub fn contains(&self, b: &Binomial, caps: &Caps) -> Result<bool> {
        let order = MonomialOrder::degrevlex(self.nvars());
        let gb = self.basis(&order, caps)?;
        match Element::from_binomial(b, &order) {
            None => Ok(true),
            Some(e) => Ok(normal_form(&e, &gb, &order, caps)?.0.is_none()),
        }
    }

    /// Sum of two ideals in the same context.
    pub fn sum(&self, other: &BinomialIdeal) -> Result<BinomialIdeal> {
        self.check_context(other)?;
        let mut binomials = self.binomials.clone();
        binomials.extend(other.binomials.iter().cloned());
        Ok(BinomialIdeal {
            variables: self.variables.clone(),
            degree_map: self.degree_map.clone(),
            binomials,
        })
    }

    pub fn with_variables(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "{} names for {} variables",
                names.len(),
                self.nvars()
            )));
        }
        self.variables = names;
        Ok(self)
    }
}

/// Minimal generators of the monomial ideal generated by `monos`, sorted.
pub fn minimal_monomials(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(|m| (m.degree(), m.clone()));
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        variable_names("x", n)
    }

    fn b(p: &[u32], m: &[u32]) -> Binomial {
        Binomial::new(Monomial(p.to_vec()), Monomial(m.to_vec()))
    }

    #[test]
    fn json_shape() {
        let i = BinomialIdeal::new(names(3), vec![], vec![b(&[0, 2, 0], &[1, 0, 1])]).unwrap();
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(
            s,
            r#"{"variables":["x1","x2","x3"],"degree_map":[],"binomials":[{"plus":[0,2,0],"minus":[1,0,1]}]}"#
        );
        let back: BinomialIdeal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn validation() {
        let e = BinomialIdeal::new(names(2), vec![vec![1], vec![2]], vec![b(&[1, 0], &[0, 1])])
            .unwrap_err();
        assert_eq!(e.code(), "bad-shape");
        let e = BinomialIdeal::new(names(2), vec![], vec![b(&[1, 0], &[1, 0])]).unwrap_err();
        assert_eq!(e.code(), "bad-shape");
    }

    #[test]
    fn sign_insensitive_equality() {
        let caps = Caps::default();
        let i = BinomialIdeal::new(names(3), vec![], vec![b(&[0, 2, 0], &[1, 0, 1])]).unwrap();
        let j = BinomialIdeal::new(names(3), vec![], vec![b(&[1, 0, 1], &[0, 2, 0])]).unwrap();
        assert!(i.ideal_equal(&j, &caps).unwrap());
        let k = BinomialIdeal::new(names(3), vec![], vec![b(&[1, 1, 0], &[0, 0, 2])]).unwrap();
        assert!(!i.ideal_equal(&k, &caps).unwrap());
    }

    #[test]
    fn zero_ideal_initial() {
        let i = BinomialIdeal::new(names(2), vec![], vec![]).unwrap();
        assert!(i.initial_ideal(&MonomialOrder::degrevlex(2), &Caps::default()).unwrap().is_empty());
    }

    #[test]
    fn minimal_monomials_drops_multiples() {
        let ms = vec![Monomial(vec![2, 0]), Monomial(vec![1, 0]), Monomial(vec![1, 1])];
        assert_eq!(minimal_monomials(ms), vec![Monomial(vec![1, 0])]);
    }
}
