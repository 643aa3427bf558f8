use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{qpoch_inf_ln, theta_ln_ratio, QBase, QSpiral};
use crate::series::{eval_phi, PhiSeries, SeriesParams, DEGENERACY_INDEX_LIMIT};
use crate::SumControl;

use super::sum::POLE_REJECT_DISTANCE;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const PRODUCT_TOL: f64 = 1e-17;

/// `ln[(a_{≠j}, b/a_j; q)_∞ / (b, a_{≠j}/a_j; q)_∞]`, the connection prefactor
/// of the j-th term of a `rφ_{r-1}`-type continuation.
pub(crate) fn connection_prefactor_ln(q: QBase, upper: &[Complex64], lower: &[Complex64], j: usize) -> Result<Complex64> {
    let aj = upper[j];
    let mut acc = Complex64::new(0.0, 0.0);
    for &b in lower {
        acc += qpoch_inf_ln(b / aj, q, PRODUCT_TOL);
        let d = qpoch_inf_ln(b, q, PRODUCT_TOL);
        if d.re == f64::NEG_INFINITY {
            return Err(Error::Parameter(format!("(b;q)_∞ vanishes for b = {b}")));
        }
        acc -= d;
    }
    for (i, &ai) in upper.iter().enumerate() {
        if i == j {
            continue;
        }
        acc += qpoch_inf_ln(ai, q, PRODUCT_TOL);
        let d = qpoch_inf_ln(ai / aj, q, PRODUCT_TOL);
        if d.re == f64::NEG_INFINITY {
            return Err(Error::Resonance { i: i + 1, j: j + 1, m: 0 });
        }
        acc -= d;
    }
    Ok(acc)
}

fn check_resonance(q: QBase, upper: &[Complex64]) -> Result<()> {
    let unit = QSpiral::new(ONE, q)?;
    for i in 0..upper.len() {
        for j in 0..upper.len() {
            if i != j {
                if let Some(m) = unit.index_of(upper[i] / upper[j], crate::qcore::DEFAULT_SPIRAL_TOL) {
                    if m.abs() <= DEGENERACY_INDEX_LIMIT {
                        return Err(Error::Resonance { i: i + 1, j: j + 1, m });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Analytic continuation of `rφ_{r-1}(a; b; q, ξ)` (all `b_l ≠ 0`) into the
/// exterior of the unit disk, as a sum of r terms
///
/// ```text
/// (a_{≠j}, b/a_j; q)_∞/(b, a_{≠j}/a_j; q)_∞ · θ_q(-a_j ξ)/θ_q(-ξ)
///     · rφ_{r-1}(a_j, a_j q/b; a_j q/a_{≠j}; q, q b₁⋯b_{r-1}/(a₁⋯a_r ξ)).
/// ```
pub fn continue_phi(series: &PhiSeries, xi: Complex64) -> Result<Complex64> {
    let q = series.q();
    let upper = series.upper();
    let lower = series.lower();
    let r = upper.len();
    if r < 2 || lower.len() + 1 != r {
        return Err(Error::Parameter(format!(
            "continuation needs an rφ(r-1) series, got {}φ{}",
            r,
            lower.len()
        )));
    }
    if upper.iter().chain(lower).any(|z| z.norm() == 0.0) {
        return Err(Error::Parameter("continuation needs nonzero parameters".into()));
    }
    check_resonance(q, upper)?;
    if xi.norm() == 0.0 {
        return Err(Error::Domain("continuation is not defined at ξ = 0".into()));
    }
    // zeros of θ_q(-ξ)
    let unit = QSpiral::new(ONE, q)?;
    let near = unit.nearest(xi);
    if near.distance < POLE_REJECT_DISTANCE {
        return Err(Error::Pole {
            point: xi,
            index: near.index,
            distance: near.distance,
        });
    }
    let prod_a: Complex64 = upper.iter().product();
    let prod_b: Complex64 = lower.iter().product();
    let z = q.value() * prod_b / (prod_a * xi);
    if z.norm() >= 1.0 {
        return Err(Error::OutOfRegion {
            what: "q b1...b(r-1) / (a1...ar xi)",
            modulus: z.norm(),
        });
    }
    let ctl = SumControl::default();
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..r {
        let aj = upper[j];
        let ln_c = connection_prefactor_ln(q, upper, lower, j)?;
        let ln_t = theta_ln_ratio(q, -aj * xi, -xi)?;
        let mut up = vec![aj];
        up.extend(lower.iter().map(|&b| aj * q.value() / b));
        let low: Vec<_> = (0..r).filter(|&i| i != j).map(|i| aj * q.value() / upper[i]).collect();
        let inner = PhiSeries::new(q, up, low)?;
        total += (ln_c + ln_t).exp() * eval_phi(&inner, z, &ctl)?;
    }
    Ok(total)
}

#[derive(Debug, Clone)]
struct ContinuedTerm {
    ln_prefactor: Complex64,
    a: Complex64,
    series: PhiSeries,
    /// The continued series is evaluated at `arg_scale / ξ`.
    arg_scale: Complex64,
}

/// The Borel image `g(ξ)` of a divergent series, with both representations.
#[derive(Debug, Clone)]
pub struct BorelImage {
    params: SeriesParams,
    pub inner_radius: f64,
    pub outer_switch: f64,
    inner: PhiSeries,
    continued: Vec<ContinuedTerm>,
    ctl: SumControl,
}

impl BorelImage {
    /// Requires nonresonant upper parameters.
    pub fn new(params: &SeriesParams) -> Result<Self> {
        params.check_nonresonant()?;
        let q = params.q();
        let k = params.k() as i32;
        let sign_k = if k % 2 == 0 { ONE } else { -ONE };
        let mut lower = params.b().to_vec();
        lower.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(k as usize));
        let inner = PhiSeries::new(q, params.a().to_vec(), lower)?;

        let prod_a: Complex64 = params.a().iter().product();
        let prod_b: Complex64 = params.b().iter().product();
        let qk1 = q.value().powi(k + 1);
        let mut continued = Vec::with_capacity(params.r());
        for (j, &aj) in params.a().iter().enumerate() {
            let ln_prefactor = connection_prefactor_ln(q, params.a(), params.b(), j)?;
            let mut up = vec![aj];
            up.extend(params.b().iter().map(|&b| aj * q.value() / b));
            let low = params
                .a()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &ai)| aj * q.value() / ai)
                .collect();
            let series = PhiSeries::new(q, up, low)?;
            // (-1)^k q^{k+1} b₁⋯b_s / (a_j^{1-k} ∏_{i≠j} a_i) = (-1)^k q^{k+1} ∏b a_j^k / ∏a
            let arg_scale = sign_k * qk1 * prod_b * aj.powi(k) / prod_a;
            continued.push(ContinuedTerm {
                ln_prefactor,
                a: aj,
                series,
                arg_scale,
            });
        }
        Ok(BorelImage {
            params: params.clone(),
            inner_radius: 0.6,
            outer_switch: 0.9,
            inner,
            continued,
            ctl: SumControl::default(),
        })
    }

    pub fn params(&self) -> &SeriesParams {
        &self.params
    }

    fn sign_k(&self) -> Complex64 {
        if self.params.k() % 2 == 0 {
            ONE
        } else {
            -ONE
        }
    }

    /// `Σ c_n p^{n(n-1)/2} ξⁿ` summed directly; `|ξ| < 1`.
    pub fn eval_inner(&self, xi: Complex64) -> Result<Complex64> {
        eval_phi(&self.inner, self.sign_k() * xi, &self.ctl)
    }

    /// The r-term continuation, valid off the spiral `[(-1)^k; q]`.
    pub fn eval_continued(&self, xi: Complex64) -> Result<Complex64> {
        if xi.norm() == 0.0 {
            return Err(Error::Domain("continued Borel image is not defined at ξ = 0".into()));
        }
        let q = self.params.q();
        let spiral = QSpiral::new(self.sign_k(), q)?;
        let near = spiral.nearest(xi);
        if near.distance < POLE_REJECT_DISTANCE {
            return Err(Error::Pole {
                point: xi,
                index: near.index,
                distance: near.distance,
            });
        }
        // θ_q((-1)^{k-1} a_j ξ) / θ_q((-1)^{k-1} ξ)
        let s = -self.sign_k();
        let mut total = Complex64::new(0.0, 0.0);
        for t in &self.continued {
            let ln_t = theta_ln_ratio(q, s * t.a * xi, s * xi)?;
            let phi = eval_phi(&t.series, t.arg_scale / xi, &self.ctl)?;
            total += (t.ln_prefactor + ln_t).exp() * phi;
        }
        Ok(total)
    }
}

/// `g(ξ)`: the inner series for small |ξ|, the continuation beyond.
pub fn borel_image(img: &BorelImage, xi: Complex64) -> Result<Complex64> {
    let m = xi.norm();
    if m == 0.0 {
        return Ok(ONE);
    }
    let split = 0.5 * (img.inner_radius + img.outer_switch);
    if m < split {
        img.eval_inner(xi)
    } else {
        img.eval_continued(xi)
    }
}
