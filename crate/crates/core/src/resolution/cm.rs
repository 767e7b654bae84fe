//! Cohen–Macaulay reports, CM type, the grade certificate for determinantal
//! ideals and the Betti transfer check.

use serde::Serialize;

use super::betti::{betti_monomial, betti_semigroup, monomial_dimension, BettiTable};
use crate::binomial_ideal::{
    coprime_regular_sequence_witness, grade_witness_order, toric_ideal, BinomialIdeal, MonomialOrder,
    StructuredMatrix,
};
use crate::error::{Error, Result};
use crate::semigroup::AffineSemigroup;
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub projdim: usize,
    /// `#generators - projdim`.
    pub depth: usize,
    pub dimension: usize,
    pub codimension: usize,
    pub cohen_macaulay: bool,
    pub totals: Vec<usize>,
}

impl CmReport {
    fn from_totals(totals: Vec<usize>, nvars: usize, dimension: usize) -> Self {
        let projdim = totals.len().saturating_sub(1);
        CmReport {
            projdim,
            depth: nvars - projdim,
            dimension,
            codimension: nvars - dimension,
            cohen_macaulay: projdim == nvars - dimension,
            totals,
        }
    }
}

/// Auslander–Buchsbaum test on `K[Γ]` from its Betti table.
pub fn is_cohen_macaulay(gamma: &AffineSemigroup, caps: &Caps) -> Result<CmReport> {
    let table = betti_semigroup(gamma, caps)?;
    Ok(cm_report_from_table(gamma, &table))
}

pub fn cm_report_from_table(gamma: &AffineSemigroup, table: &BettiTable) -> CmReport {
    CmReport::from_totals(table.totals(), gamma.num_generators(), gamma.dimension())
}

/// Same test for `A/M`, `M` monomial.
pub fn monomial_cm_report(gens: &[crate::poly::Monomial], nvars: usize) -> CmReport {
    CmReport::from_totals(
        betti_monomial(gens, nvars).totals(),
        nvars,
        monomial_dimension(gens, nvars),
    )
}

/// Last nonzero total Betti number of a CM semigroup ring.
pub fn cm_type(gamma: &AffineSemigroup, caps: &Caps) -> Result<usize> {
    let report = is_cohen_macaulay(gamma, caps)?;
    if !report.cohen_macaulay {
        return Err(Error::NotCohenMacaulay);
    }
    Ok(*report.totals.last().unwrap_or(&1))
}

/// True iff `n-1` minors with pairwise coprime leading monomials exist,
/// `n` the number of columns. Together with the generic height bound this
/// certifies the grade condition for the Eagon–Northcott complex.
pub fn grade_certified(p: &StructuredMatrix, minors: &BinomialIdeal) -> bool {
    let cols: usize = p.widths().iter().sum();
    let order = if p.blocks.len() == 1 && p.nvars() == cols + 1 {
        grade_witness_order(cols)
    } else {
        MonomialOrder::degrevlex(p.nvars())
    };
    coprime_regular_sequence_witness(&minors.binomials, cols - 1, &order).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub basis_size: usize,
    pub ideal_cm: bool,
    pub initial_cm: bool,
    /// One extremal variable in the support of every basis element and
    /// dividing none of the leading monomials.
    pub support_witness: Option<usize>,
    /// Every basis element has some extremal variable in its support that
    /// does not divide its leading monomial.
    pub support_per_element: bool,
    /// One extremal variable in the support of every basis element.
    pub support_only_witness: Option<usize>,
    pub hypotheses_hold: bool,
    pub betti_ideal: Vec<usize>,
    pub betti_initial: Vec<usize>,
    pub betti_equal: bool,
    /// `β_i(A/I) ≤ β_i(A/in(I))` for all `i`.
    pub herzog_inequality: bool,
    /// For local orders `A/in(I)` stands in for the associated graded ring.
    pub associated_graded_note: Option<&'static str>,
}

/// Evaluates the hypotheses of the Betti transfer statement and compares the
/// Betti numbers of `A/I_Γ` and `A/in(I_Γ)` computed independently.
pub fn betti_transfer_check(gamma: &AffineSemigroup, order: &MonomialOrder, caps: &Caps) -> Result<TransferReport> {
    let ideal = toric_ideal(gamma, None, caps)?;
    let basis = ideal.basis(order, caps)?;
    let extremal = gamma.extremal_rays();
    let in_support =
        |e: &crate::binomial_ideal::Element, v: usize| e.lead.exps()[v] > 0 || e.tail.as_ref().is_some_and(|t| t.exps()[v] > 0);
    let good = |e: &crate::binomial_ideal::Element, v: usize| in_support(e, v) && e.lead.exps()[v] == 0;
    let support_witness = extremal
        .iter()
        .copied()
        .find(|&v| basis.iter().all(|e| good(e, v)));
    let support_per_element = basis.iter().all(|e| extremal.iter().any(|&v| good(e, v)));
    let support_only_witness = extremal
        .iter()
        .copied()
        .find(|&v| basis.iter().all(|e| in_support(e, v)));

    let nv = gamma.num_generators();
    let table = betti_semigroup(gamma, caps)?;
    let ideal_report = cm_report_from_table(gamma, &table);
    let leads = ideal.initial_ideal(order, caps)?;
    let initial_report = monomial_cm_report(&leads, nv);

    let betti_ideal = ideal_report.totals.clone();
    let betti_initial = initial_report.totals.clone();
    let len = betti_ideal.len().max(betti_initial.len());
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    let herzog_inequality = (0..len).all(|i| at(&betti_ideal, i) <= at(&betti_initial, i));
    Ok(TransferReport {
        basis_size: basis.len(),
        ideal_cm: ideal_report.cohen_macaulay,
        initial_cm: initial_report.cohen_macaulay,
        support_witness,
        support_per_element,
        support_only_witness,
        hypotheses_hold: ideal_report.cohen_macaulay && initial_report.cohen_macaulay && support_witness.is_some(),
        betti_equal: betti_ideal == betti_initial,
        betti_ideal,
        betti_initial,
        herzog_inequality,
        associated_graded_note: order
            .is_local()
            .then_some("associated graded ring identified with A/in(I) for the local order"),
    })
}

/// `max ord(w)` over the Apéry set with respect to the extremal rays.
pub fn reg_gr_closed_form(gamma: &AffineSemigroup, caps: &Caps) -> Result<u64> {
    let ap = gamma.apery_extremal(caps)?;
    ap.elements
        .iter()
        .map(|w| gamma.ord(w))
        .try_fold(0, |acc, o| o.map(|o| acc.max(o)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial_ideal::{join_local_order, progression_local_order};
    use crate::constructors::{gap_semigroup, join, GapSpec};

    fn spec(h: u32, n: usize) -> GapSpec {
        GapSpec::new(vec![1, 2], vec![2, 1], h, n)
    }

    fn s2() -> (GapSpec, GapSpec) {
        (spec(1, 2), GapSpec::new(vec![1, 3], vec![1, 1], 1, 2))
    }

    #[test]
    fn cm_examples() {
        let caps = Caps::default();
        let g = gap_semigroup(&spec(1, 3)).unwrap();
        let r = is_cohen_macaulay(&g, &caps).unwrap();
        assert!(r.cohen_macaulay);
        assert_eq!((r.projdim, r.depth, r.dimension), (2, 2, 2));
        assert_eq!(cm_type(&g, &caps).unwrap(), 2);

        let g2 = gap_semigroup(&spec(1, 2)).unwrap();
        assert_eq!(cm_type(&g2, &caps).unwrap(), 1);

        let (l, rr) = s2();
        let j = join(&gap_semigroup(&l).unwrap(), &gap_semigroup(&rr).unwrap()).unwrap();
        let r = is_cohen_macaulay(&j, &caps).unwrap();
        assert!(r.cohen_macaulay);
        assert_eq!(r.projdim, 2);
        assert_eq!(cm_type(&j, &caps).unwrap(), 1);
    }

    #[test]
    fn non_cm_semigroup() {
        // <(4,0),(3,1),(1,3),(0,4)>: the classical non-CM monomial curve.
        let g = AffineSemigroup::new(vec![vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]]).unwrap();
        let caps = Caps::default();
        let r = is_cohen_macaulay(&g, &caps).unwrap();
        assert!(!r.cohen_macaulay);
        assert_eq!(r.projdim, 3);
        assert_eq!(cm_type(&g, &caps).unwrap_err().code(), "not-cm");
    }

    #[test]
    fn grade_examples() {
        for (h, n) in [(1, 4), (2, 3), (1, 2)] {
            let p = StructuredMatrix::progression(&spec(h, n));
            assert!(grade_certified(&p, &p.minors_2x2().unwrap()), "h={h} n={n}");
        }
    }

    #[test]
    fn transfer_examples() {
        let caps = Caps::default();
        let (l, r) = s2();
        let j = join(&gap_semigroup(&l).unwrap(), &gap_semigroup(&r).unwrap()).unwrap();
        let rep = betti_transfer_check(&j, &join_local_order(2, 2), &caps).unwrap();
        assert_eq!(rep.betti_ideal, vec![1, 2, 1]);
        assert_eq!(rep.betti_initial, vec![1, 2, 1]);
        assert!(rep.betti_equal && rep.herzog_inequality);
        assert!(rep.support_per_element);

        let g = gap_semigroup(&spec(1, 3)).unwrap();
        let rep = betti_transfer_check(&g, &progression_local_order(3), &caps).unwrap();
        assert!(rep.ideal_cm && rep.initial_cm);
        assert!(rep.betti_equal);

        let free = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let rep = betti_transfer_check(&free, &MonomialOrder::degrevlex(2), &caps).unwrap();
        assert!(rep.betti_equal);
        assert_eq!(rep.betti_ideal, vec![1]);
    }

    #[test]
    fn regularity_closed_form() {
        let caps = Caps::default();
        let (l, r) = s2();
        let j = join(&gap_semigroup(&l).unwrap(), &gap_semigroup(&r).unwrap()).unwrap();
        assert_eq!(reg_gr_closed_form(&j, &caps).unwrap(), 2);
        let free = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(reg_gr_closed_form(&free, &caps).unwrap(), 0);
        let l3 = spec(1, 3);
        let j = join(&gap_semigroup(&l3).unwrap(), &gap_semigroup(&r).unwrap()).unwrap();
        assert_eq!(reg_gr_closed_form(&j, &caps).unwrap(), 2);
    }
}
