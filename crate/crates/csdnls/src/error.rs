use thiserror::Error;

/// Errors surfaced by the spectral kernels and propagators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("Sobolev order must be nonnegative, got {0}")]
    NegativeSobolevOrder(f64),

    #[error("rational profile requires |q| < 1, got |q| = {0}")]
    PoleInsideTorus(f64),

    #[error("matrix not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("shifted eigenvalue {value:.6e} is not positive (shift {shift})")]
    NonPositiveShiftedEigenvalue { value: f64, shift: f64 },

    #[error("eigenfunction index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("basis not orthonormal: Gram residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotOrthonormal { residual: f64, tolerance: f64 },

    #[error("numerical blow-up at t = {t}: {detail}")]
    Blowup { t: f64, detail: String },

    #[error("need at least {needed} trajectory samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid flow configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
