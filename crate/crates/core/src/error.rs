use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong while evaluating or resumming a series.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("resonant parameters: a_{i}/a_{j} = q^{m}")]
    Resonance { i: usize, j: usize, m: i64 },

    #[error("forbidden direction: lambda = {lambda} lies on the spiral [(-1)^k; q] (index {index})")]
    ForbiddenDirection { lambda: Complex64, index: i64 },

    #[error("pole proximity: point {point} is within {distance:e} of spiral index {index}")]
    Pole {
        point: Complex64,
        index: i64,
        distance: f64,
    },

    #[error("pole collision at operator shift q^{shift}: {source_msg}")]
    PoleCollision { shift: i32, source_msg: String },

    #[error("out of region: |{what}| = {modulus} must be < 1")]
    OutOfRegion { what: &'static str, modulus: f64 },

    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("branch condition violated: {0}")]
    Branch(String),

    #[error("gamma pole at {0}")]
    GammaPole(Complex64),

    #[error("q-gamma pole: factor 1 - q^(z+{index}) vanishes")]
    QGammaPole { index: u64 },

    #[error("convergence failure in {what} after {terms} terms")]
    ConvergenceFailure { what: &'static str, terms: usize },
}

impl Error {
    /// True for input validation failures, false for numerical breakdowns.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::ConvergenceFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
