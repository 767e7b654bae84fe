//! Exact computations on simplicial affine semigroups.
//!
//! The crate builds affine semigroups (generalized arithmetic progressions,
//! joins, the Backelin family), computes Apéry sets and quasi-Frobenius data,
//! toric ideals with Gröbner and standard bases over ±1 binomials, free
//! complexes of Eagon–Northcott type, and Betti tables. Every quantity is
//! computed with exact integer or rational arithmetic.

pub mod binomial_ideal;
pub mod constructors;
pub mod error;
pub mod exactlinalg;
pub mod poly;
pub mod resolution;
pub mod semigroup;
pub mod verify;


pub use error::{Error, Result};
pub use semigroup::{AffineSemigroup, AperySet, IntVec, QFReport, SemigroupDoc};

/// Resource limits shared by the enumerating algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of vectors visited by an Apéry enumeration.
    pub apery_nodes: usize,
    /// Maximum number of reduction steps in a single normal-form computation,
    /// and of S-pairs processed in one completion.
    pub reduction_steps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            apery_nodes: 1_000_000,
            reduction_steps: 100_000,
        }
    }
}

impl Caps {
    /// Both caps set to `n`.
    pub fn uniform(n: usize) -> Self {
        Caps {
            apery_nodes: n,
            reduction_steps: n,
        }
    }
}
