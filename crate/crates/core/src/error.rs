use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("leading coefficient is not invertible for a negative power")]
    NonInvertibleLeadingTerm,
    #[error("exponent {exponent} does not fit denominator bound {bound}")]
    DenominatorOverflow { exponent: String, bound: i64 },
    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("generator rows are linearly dependent (rank {rank} < {rows})")]
    DependentRows { rank: usize, rows: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("lattice construction failed: {0}")]
    Lattice(String),
    #[error("isometry check failed: {0}")]
    Isometry(String),
    #[error("series has a coefficient that is not a non-negative integer at exponent {0}")]
    NonIntegralCharacter(String),
    #[error("vector is isotropic; no reflection exists")]
    IsotropicVector,
    #[error("group order mismatch: computed {computed}, expected {expected}")]
    OrderMismatch { computed: String, expected: String },
    #[error("element is not an isometry of the quadratic form")]
    NotAnIsometry,
    #[error("quadratic-space geometry failure: {0}")]
    Geometry(String),
    #[error("bilinear form routes disagree on {0}")]
    FormMismatch(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
