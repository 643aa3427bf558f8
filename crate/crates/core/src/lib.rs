//! Resummation of divergent basic hypergeometric series.
//!
//! For `r > s + 1` the series
//!
//! ```text
//! rφs(a; b; q, x) = Σ (a₁,…,a_r; q)_n / ((b₁,…,b_s; q)_n (q; q)_n) · {(-1)ⁿ q^{n(n-1)/2}}^{1+s-r} xⁿ
//! ```
//!
//! has radius of convergence zero. Its q-Borel transform at base `p = q^k`
//! (`k = r - s - 1`) converges, continues meromorphically, and its discrete
//! q-Laplace transform along a spiral `[λ; p]` yields an actual solution of
//! the underlying q-difference equation. This crate evaluates that sum both
//! as a Jackson sum and in closed form, checks it against the equation,
//! splits it into q-Stokes coefficients and compares the q → 1 limit with the
//! classical Borel sum of `rFs`.
//!
//! Modules:
//! - [`qcore`]: q-Pochhammer, theta, q-gamma, spirals
//! - [`series`]: coefficient streams and convergent evaluation of `rφs`
//! - [`qborel`]: Borel image, its continuation, Jackson-sum Laplace transform
//! - [`qdiff`]: the q-difference operator, solutions at infinity, Stokes data
//! - [`classical`]: gamma, `pFq`, the classical Borel sum and the q → 1 scan

pub mod classical;
pub mod error;
pub mod qborel;
pub mod qcore;
pub mod qdiff;
pub mod series;

pub use num_complex::Complex64;

pub use classical::{
    classical_borel_sum, eval_f, gamma, limit_scan, ClassicalParams, FSeries, LimitScanRow,
};
pub use error::{Error, Result};
pub use qborel::{
    borel_image, continue_phi, qborel_transform, qlaplace, qsum, qsum_closed, qsum_direct,
    BorelImage, Method, SpiralNeighborhood, SumEvaluation,
};
pub use qcore::{
    q_gamma, qpoch, qpoch_inf, qpoch_inf_ln, spiral_contains, theta, theta_ratio, QBase, QSpiral,
    ThetaEval,
};
pub use qdiff::{
    apply_operator, fundamental_solution, stokes_coefficients, OperatorResidual, QOperator,
    StokesDecomposition,
};
pub use series::{
    eval_phi, phi_coeff, recurrence_residual, CoefficientStream, PhiSeries, SeriesParams,
};

/// Hard ceiling on terms for any single summation.
pub const HARD_TERM_CAP: usize = 1_000_000;

/// Stopping controls shared by every summation routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumControl {
    /// Relative tolerance for the tail test.
    pub tol: f64,
    /// Maximum number of terms before giving up.
    pub max_terms: usize,
}

impl SumControl {
    pub fn new(tol: f64) -> Self {
        SumControl {
            tol,
            max_terms: HARD_TERM_CAP,
        }
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms.min(HARD_TERM_CAP);
        self
    }
}

impl Default for SumControl {
    fn default() -> Self {
        SumControl::new(1e-16)
    }
}
