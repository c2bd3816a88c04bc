//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mode index {mode} out of range 1..={modes}")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("segmentation {segmentation} invalid for {modes} modes: must be a power of two in 2..=2^d dividing the mode count")]
    InvalidSegmentation { segmentation: usize, modes: usize },

    #[error("symmetry set is empty")]
    EmptySymmetrySet,

    #[error("duplicate segmentation {0} in symmetry set")]
    DuplicateSegmentation(usize),

    #[error("occupation has {actual} modes, expected {expected}")]
    ModeCountMismatch { expected: usize, actual: usize },

    #[error("particle numbers differ: initial {initial}, final {final_}")]
    ParticleMismatch { initial: u32, final_: u32 },

    #[error("fermionic occupation must be 0/1 in every mode: found {count} in mode {mode}")]
    PauliViolation { mode: usize, count: u32 },

    #[error("dimension {dimension} outside supported range 1..={max}")]
    DimensionBound { dimension: usize, max: usize },

    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("matrix not unitary: max |A†A - I| = {residual:.3e} exceeds {tolerance:.0e}")]
    NotUnitary { residual: f64, tolerance: f64 },

    #[error("{particles} particles exceed the permanent bound {bound} (set HYPERWALK_MAX_N to raise it)")]
    PermanentBound { particles: u32, bound: u32 },

    #[error("{particles} particles exceed the path-sum oracle bound {bound}")]
    OracleBound { particles: u32, bound: u32 },

    #[error("enumeration of {count:.3e} final states exceeds the limit {limit:.1e}")]
    EnumerationBound { count: f64, limit: f64 },

    #[error("state-space count overflows 128-bit integer arithmetic")]
    CountOverflow,

    #[error("fermion particle number {particles} exceeds mode count {modes}")]
    TooManyFermions { particles: u32, modes: usize },

    #[error("particle number {particles} not divisible by 2^{eta}")]
    DivisibilityViolation { particles: u32, eta: u32 },

    #[error("suppression laws exist only for boson and fermion statistics, not {0}")]
    NoSuppressionLaw(&'static str),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
