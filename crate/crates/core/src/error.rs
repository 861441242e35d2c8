use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spin index {index} out of range for {n_spins} spins (labels are 1-based)")]
    SpinIndexOutOfRange { index: usize, n_spins: usize },
    #[error("exchange needs two distinct spins, got {index} twice")]
    EqualSpinIndices { index: usize },
    #[error("spin count {n_spins} outside supported range 1..={max}")]
    UnsupportedSpinCount { n_spins: usize, max: usize },
    #[error("operation is defined for 3 spins only, got {n_spins}")]
    ThreeSpinsOnly { n_spins: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndexOutOfRange { index: usize, dim: usize },
    #[error("not a valid permutation: {0}")]
    InvalidPermutation(String),
    #[error("operator is not unitary: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { defect: f64, tol: f64 },
    #[error("timescale must be positive, got {value}")]
    NonPositiveTimescale { value: f64 },
    #[error("phase list has {got} entries, cycle length is {expected}")]
    PhaseCountMismatch { got: usize, expected: usize },
    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },
    #[error("pauli projection supports at most {max} spins, got {n_spins}")]
    ProjectionTooLarge { n_spins: usize, max: usize },
    #[error("truncation order must be 2, 3, or 4, got {order}")]
    UnsupportedTruncationOrder { order: u32 },
    #[error("state vector is not normalized: |Σ|amp|² − 1| = {defect:.3e}")]
    NotNormalized { defect: f64 },
    #[error("perturbation strength must satisfy |ε| < 1, got {value}")]
    EpsilonOutOfRange { value: f64 },
    #[error("epsilon list must not be empty")]
    EmptyEpsilonList,
    #[error("unknown {kind} '{name}' (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("cannot parse spin configuration '{0}': expected arrows (\"↑↓↑\") or bits (\"010\")")]
    ConfigParse(String),
}
