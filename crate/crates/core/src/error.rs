use thiserror::Error;

/// Errors raised across the toolkit. Variants that come from a numeric
/// check carry the measured deviation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    InvalidDimension(usize),
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("matrix is not Hermitian: max |m - m^dagger| = {0:e}")]
    NotHermitian(f64),
    #[error("trace deviates from 1 by {0:e}")]
    TraceDeviation(f64),
    #[error("negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),
    #[error("matrix is not positive semidefinite: min eigenvalue {0:e}")]
    NotPsd(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("Pauli coefficient has imaginary part {0:e}")]
    NonRealCoefficient(f64),
    #[error("coefficients do not describe a state: min eigenvalue {0:e}")]
    UnphysicalCoefficients(f64),
    #[error("direction is not a unit vector: |v| = {0}")]
    NonUnitDirection(f64),
    #[error("argument {0} outside its domain")]
    DomainError(f64),
    #[error("reduction factor {0} outside [-1/3, 1]")]
    EtaOutOfRange(f64),
    #[error("Kraus operators violate completeness by {0:e}")]
    IncompleteKrausSet(f64),
    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),
    #[error("invalid state spec: {0}")]
    InvalidSpec(String),
    #[error("invalid copy number {0} (need M >= 1)")]
    InvalidM(i64),
    #[error("basis is not orthonormal: deviation {0:e}")]
    NonOrthonormalBasis(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
