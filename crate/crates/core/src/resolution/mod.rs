//! Free complexes, Betti tables and Cohen–Macaulay reports.

mod betti;
mod cm;
mod complex;

pub use betti::{
    betti_monomial, betti_semigroup, lcm_lattice, monomial_dimension, squarefree_divisor_complex, BettiTable,
};
pub use cm::{
    betti_transfer_check, cm_report_from_table, cm_type, grade_certified, is_cohen_macaulay,
    monomial_cm_report, reg_gr_closed_form, CmReport, TransferReport,
};
pub use complex::{ComplexDoc, EntryDoc, GradedFreeComplex, PolyMatrix, TermDoc};

/// Total complex of `left ⊗ right`.
pub fn tensor_complexes(left: &GradedFreeComplex, right: &GradedFreeComplex) -> crate::Result<GradedFreeComplex> {
    left.tensor(right)
}

/// Eagon–Northcott complex of a single-block structured matrix.
pub fn eagon_northcott(p: &crate::binomial_ideal::StructuredMatrix) -> crate::Result<GradedFreeComplex> {
    GradedFreeComplex::eagon_northcott(p)
}
