//! q-Borel summation at base `p = q^k`.
//!
//! The order-one q-Borel transform `c_n ↦ c_n p^{n(n-1)/2}` turns the
//! divergent series into `g(ξ) = rφ_{r-1}(a; b, 0_k; q, (-1)^k ξ)`, which
//! converges in the unit disk and continues to `ℂ* ∖ [(-1)^k; q]`. The
//! q-Laplace transform `Σ_m g(λpᵐ)/θ_p(λpᵐ/x)` then gives the `[λ;p]`-sum.

mod borel;
mod laplace;
mod sum;

pub use borel::{borel_image, continue_phi, BorelImage};
pub use laplace::{qlaplace, JACKSON_WINDOW_CAP};
pub use sum::{
    check_direction, check_pole_distance, connection_ln, inner_series, qsum, qsum_closed,
    qsum_direct, POLE_REJECT_DISTANCE,
};

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qcore::{QBase, QSpiral};

/// Which route produced a resummed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Jackson sum of the Borel image.
    Direct,
    /// Closed form in terms of convergent series at infinity.
    Closed,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Closed => "closed",
        })
    }
}

/// A resummed value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumEvaluation {
    pub value: Complex64,
    pub lambda: Complex64,
    pub method: Method,
    pub terms_used: usize,
    pub max_term: f64,
    /// Relative distance of x to the pole spiral `[-λ; p]`.
    pub pole_proximity: f64,
}

/// The tube `⋃_m {|x - λqᵐ| < ε|λqᵐ|}` around a spiral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralNeighborhood {
    pub spiral: QSpiral,
    pub epsilon: f64,
}

impl SpiralNeighborhood {
    pub fn new(spiral: QSpiral, epsilon: f64) -> Self {
        assert!(epsilon > 0.0, "neighborhood radius must be positive");
        SpiralNeighborhood { spiral, epsilon }
    }

    pub fn contains(&self, x: Complex64) -> bool {
        self.spiral.nearest(x).distance < self.epsilon
    }
}

/// Order-one q-Borel transform at base p: `c_n ↦ c_n p^{n(n-1)/2}`.
pub fn qborel_transform(coeffs: &[Complex64], p: QBase) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(coeffs.len());
    let mut weight = Complex64::new(1.0, 0.0); // p^{n(n-1)/2}
    let mut pn = Complex64::new(1.0, 0.0); // pⁿ
    for &c in coeffs {
        out.push(c * weight);
        weight *= pn;
        pn *= p.value();
    }
    out
}
