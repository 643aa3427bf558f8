//! Foundational q-special functions.
//!
//! q-Pochhammer symbols (finite and infinite), the Jacobi theta function
//! `θ_q(x) = Σ_{n∈ℤ} q^{n(n-1)/2} xⁿ` with log-scaled evaluation, the
//! q-gamma function and membership tests for discrete q-spirals `λ q^ℤ`.

mod pochhammer;
mod qgamma;
mod spiral;
mod theta;

pub use pochhammer::{qpoch, qpoch_inf, qpoch_inf_ln, qpoch_ln};
pub use qgamma::q_gamma;
pub use spiral::{spiral_contains, QSpiral, SpiralPoint, DEFAULT_SPIRAL_TOL};
pub use theta::{theta, theta_ln_ratio, theta_modular, theta_ratio, theta_series, ThetaEval};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A base `q` with `0 < |q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct QBase(Complex64);

impl QBase {
    pub fn new(q: Complex64) -> Result<Self> {
        let m = q.norm();
        if !(m > 0.0 && m < 1.0) || !q.is_finite() {
            return Err(Error::Domain(format!("base q = {q} must satisfy 0 < |q| < 1")));
        }
        Ok(QBase(q))
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    /// Principal logarithm of q.
    #[inline]
    pub fn ln(self) -> Complex64 {
        self.0.ln()
    }

    /// `q^k` as a new base; `k ≥ 1`.
    pub fn pow(self, k: u32) -> QBase {
        QBase(self.0.powu(k))
    }

    /// `q^n` for any integer n, through the logarithm so that large |n| stays
    /// consistent with the log-scaled theta reduction.
    pub fn powi(self, n: i64) -> Complex64 {
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        if n.unsigned_abs() <= 64 {
            return self.0.powi(n as i32);
        }
        (self.ln() * n as f64).exp()
    }
}

impl TryFrom<Complex64> for QBase {
    type Error = Error;
    fn try_from(q: Complex64) -> Result<Self> {
        QBase::new(q)
    }
}

impl From<QBase> for Complex64 {
    fn from(q: QBase) -> Self {
        q.0
    }
}
