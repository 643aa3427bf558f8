use num_complex::Complex64;

use super::borel::{connection_prefactor_ln, BorelImage};
use super::{borel_image, qlaplace, Method, SumEvaluation};
use crate::error::{Error, Result};
use crate::qcore::{theta_ln_ratio, QBase, QSpiral, DEFAULT_SPIRAL_TOL};
use crate::series::{sum_phi, PhiSeries, SeriesParams};
use crate::SumControl;

/// Points closer than this (relative) to a pole spiral are rejected.
pub const POLE_REJECT_DISTANCE: f64 = 1e-6;

/// Above this modulus of the closed form's inner argument, [`qsum`] prefers
/// the Jackson sum.
const CLOSED_PREFERRED: f64 = 0.9;

/// Rejects summation directions on `[(-1)^k; q]`.
pub fn check_direction(params: &SeriesParams, lambda: Complex64) -> Result<()> {
    if lambda.norm() == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("λ must be nonzero and finite".into()));
    }
    let anchor = if params.k() % 2 == 0 { 1.0 } else { -1.0 };
    let spiral = QSpiral::new(Complex64::new(anchor, 0.0), params.q())?;
    match spiral.index_of(lambda, DEFAULT_SPIRAL_TOL) {
        Some(index) => Err(Error::ForbiddenDirection { lambda, index }),
        None => Ok(()),
    }
}

/// Relative distance of x to the pole spiral `[-λ; p]`, rejecting near hits.
pub fn check_pole_distance(lambda: Complex64, p: QBase, x: Complex64) -> Result<f64> {
    let near = QSpiral::new(-lambda, p)?.nearest(x);
    if near.distance < POLE_REJECT_DISTANCE {
        return Err(Error::Pole {
            point: x,
            index: near.index,
            distance: near.distance,
        });
    }
    Ok(near.distance)
}

/// `ln C_j = ln[(a_{≠j}, b/a_j; q)_∞ / (b, a_{≠j}/a_j; q)_∞]`, j zero-based.
pub fn connection_ln(params: &SeriesParams, j: usize) -> Result<Complex64> {
    connection_prefactor_ln(params.q(), params.a(), params.b(), j)
}

/// The convergent factor at infinity for index j (zero-based):
/// `rφ_{r-1}(a_j, a_j q/b, 0_k; a_j q/a_{≠j}; q, ·)`.
pub fn inner_series(params: &SeriesParams, j: usize) -> Result<PhiSeries> {
    let q = params.q().value();
    let aj = params.a()[j];
    let mut upper = vec![aj];
    upper.extend(params.b().iter().map(|&b| aj * q / b));
    upper.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(params.k() as usize));
    let lower = params
        .a()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &ai)| aj * q / ai)
        .collect();
    PhiSeries::new(params.q(), upper, lower)
}

/// `q b₁⋯b_s / (a₁⋯a_r x)`.
pub(crate) fn infinity_argument(params: &SeriesParams, x: Complex64) -> Complex64 {
    params.q().value() * params.b_over_a() / x
}

/// `[λ;p]`-sum by the Jackson q-Laplace transform of the Borel image.
pub fn qsum_direct(params: &SeriesParams, lambda: Complex64, x: Complex64, ctl: &SumControl) -> Result<SumEvaluation> {
    params.check_nonresonant()?;
    check_direction(params, lambda)?;
    let img = BorelImage::new(params)?;
    qlaplace(|xi| borel_image(&img, xi), lambda, params.p(), x, ctl)
}

/// `[λ;p]`-sum from the closed r-term form, valid for `|q b/(a x)| < 1`.
pub fn qsum_closed(params: &SeriesParams, lambda: Complex64, x: Complex64) -> Result<SumEvaluation> {
    params.check_nonresonant()?;
    check_direction(params, lambda)?;
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Domain("the closed form needs x ≠ 0".into()));
    }
    let p = params.p();
    let pole_proximity = check_pole_distance(lambda, p, x)?;
    let z = infinity_argument(params, x);
    if z.norm() >= 1.0 {
        return Err(Error::OutOfRegion {
            what: "q b1...bs / (a1...ar x)",
            modulus: z.norm(),
        });
    }
    let q = params.q();
    let k = params.k() as i32;
    // (-1)^{1-k}
    let s = if k % 2 == 0 { -1.0 } else { 1.0 };
    let ctl = SumControl::default();
    let mut value = Complex64::new(0.0, 0.0);
    let mut terms_used = 0;
    let mut max_term = 0.0f64;
    for (j, &aj) in params.a().iter().enumerate() {
        let ln_c = connection_ln(params, j)?;
        let ln_tp = theta_ln_ratio(p, p.value() * aj.powi(k) * x / lambda, p.value() * x / lambda)?;
        let ln_tq = theta_ln_ratio(q, s * aj * lambda, s * lambda)?;
        let phi = sum_phi(&inner_series(params, j)?, z, &ctl)?;
        let term = (ln_c + ln_tp + ln_tq).exp() * phi.value;
        terms_used += phi.terms_used;
        max_term = max_term.max(term.norm());
        value += term;
    }
    Ok(SumEvaluation {
        value,
        lambda,
        method: Method::Closed,
        terms_used,
        max_term,
        pole_proximity,
    })
}

/// `[λ;p]`-sum by whichever route suits x: the closed form well inside its
/// region, the Jackson sum elsewhere.
pub fn qsum(params: &SeriesParams, lambda: Complex64, x: Complex64, ctl: &SumControl) -> Result<SumEvaluation> {
    if x.norm() != 0.0 && infinity_argument(params, x).norm() < CLOSED_PREFERRED {
        qsum_closed(params, lambda, x)
    } else {
        qsum_direct(params, lambda, x, ctl)
    }
}
