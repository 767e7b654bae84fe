use thiserror::Error;

/// Errors raised across the crate.
///
/// Each variant maps to a stable kebab-case code (see [`Error::code`]) that the
/// command-line front end surfaces in its diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {index} ({vector:?}) is a non-negative integer combination of the others")]
    NotMinimal { index: usize, vector: Vec<i64> },

    #[error("generator {index} is the zero vector")]
    ZeroGenerator { index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty generator list")]
    Empty,

    #[error("generator {index} has a negative entry")]
    NegativeEntry { index: usize },

    #[error("{0:?} is not an element of the semigroup")]
    NotAMember(Vec<i64>),

    #[error("Apéry enumeration visited more than {cap} elements")]
    AperyBoundExceeded { cap: usize },

    #[error("vectors a and d are linearly dependent over the rationals")]
    DependentAD,

    #[error("extremal rays of the join are linearly dependent over the rationals")]
    DependentExtremalRays,

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("reduction exceeded {cap} steps")]
    IterationCapExceeded { cap: usize },

    #[error("generator {index} is not contained in the toric ideal")]
    NotContained { index: usize },

    #[error("quotient is infinite-dimensional (no pure power of {variable} in the initial ideal)")]
    InfiniteDimensional { variable: String },

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("complexes share variable {0}")]
    SharedVariables(String),

    #[error("ring is not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("boundary maps {0} and {1} do not compose to zero")]
    NotAComplex(usize, usize),

    #[error("variable context mismatch: {0}")]
    ContextMismatch(String),

    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotMinimal { .. } => "not-minimal",
            Error::ZeroGenerator { .. } => "zero-generator",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Empty => "empty",
            Error::NegativeEntry { .. } => "negative-entry",
            Error::NotAMember(_) => "not-a-member",
            Error::AperyBoundExceeded { .. } => "apery-bound-exceeded",
            Error::DependentAD => "dependent-a-d",
            Error::DependentExtremalRays => "dependent-extremal-rays",
            Error::ParameterOutOfRange(_) => "parameter-out-of-range",
            Error::IterationCapExceeded { .. } => "iteration-cap-exceeded",
            Error::NotContained { .. } => "not-contained",
            Error::InfiniteDimensional { .. } => "infinite-dimensional",
            Error::BadShape(_) => "bad-shape",
            Error::SharedVariables(_) => "shared-variables",
            Error::NotCohenMacaulay => "not-cm",
            Error::NotAComplex(..) => "not-a-complex",
            Error::ContextMismatch(_) => "context-mismatch",
            Error::Overflow => "overflow",
        }
    }

    /// True for errors caused by a configurable resource cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::AperyBoundExceeded { .. } | Error::IterationCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
