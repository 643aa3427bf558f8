//! Log-scaled evaluation of `θ_q(x) = Σ_{n∈ℤ} q^{n(n-1)/2} xⁿ`.
//!
//! The argument is first moved into the annulus `|q| < |x₀| ≤ 1` with the
//! quasi-periodicity `θ_q(qⁿx) = x^{-n} q^{-n(n-1)/2} θ_q(x)`; the multiplier
//! is kept as a complex exponent. At the reduced argument the bilateral
//! series is summed directly when `|q|` is small. When `|q|` approaches 1 the
//! direct terms cancel catastrophically (θ is q-exponentially small away from
//! the positive real axis), so the Poisson-dual series is summed instead:
//!
//! ```text
//! θ_q(e^w) = √(2π/ε) · exp(εc²/2) · Σ_k exp(-2π²k²/ε + 2πi k c),
//! q = e^{-ε},  c = 1/2 + w/ε.
//! ```
//!
//! Both routes leave a normalised mantissa and push every large factor into
//! `log_scale`, so quotients of thetas are formed by exponent subtraction.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::QBase;
use crate::error::{Error, Result};

/// Below this `Re(-ln q)` the dual series is used at the reduced argument.
const MODULAR_SWITCH: f64 = PI;
const SERIES_RTOL: f64 = 1e-17;

/// Result of a theta evaluation: `value = exp(log_scale) · mantissa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub log_scale: Complex64,
    pub mantissa: Complex64,
    /// Recombined value; infinite or zero when not representable.
    pub value: Complex64,
    /// Reduction index n with `|q| < |qⁿ x| ≤ 1`.
    pub shift: i64,
    /// The reduced argument `x₀ = qⁿ x`.
    pub reduced_arg: Complex64,
}

impl ThetaEval {
    fn assemble(log_scale: Complex64, mantissa: Complex64, shift: i64, reduced_arg: Complex64) -> Self {
        let log_scale = wrap_imag(log_scale);
        let value = if mantissa == Complex64::new(0.0, 0.0) {
            mantissa
        } else {
            log_scale.exp() * mantissa
        };
        ThetaEval {
            log_scale,
            mantissa,
            value,
            shift,
            reduced_arg,
        }
    }

    /// Complex logarithm of θ (imaginary part mod 2π). `-∞` at a zero.
    pub fn ln(&self) -> Complex64 {
        if self.mantissa.norm() == 0.0 {
            return Complex64::new(f64::NEG_INFINITY, 0.0);
        }
        self.log_scale + self.mantissa.ln()
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    /// `self / other` formed in log space.
    pub fn ratio(&self, other: &ThetaEval) -> Complex64 {
        (self.log_scale - other.log_scale).exp() * (self.mantissa / other.mantissa)
    }
}

/// `θ_q(x)` with argument reduction; `x ≠ 0`.
pub fn theta(q: QBase, x: Complex64) -> Result<ThetaEval> {
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("theta argument must be nonzero and finite, got {x}")));
    }
    let lnq = q.ln();
    let lnx = x.ln();
    let lq = lnq.re; // < 0
    let mut n = (lnx.re / -lq).ceil() as i64;
    // Guard the annulus against rounding at its edges.
    while lnx.re + n as f64 * lq > 0.0 {
        n += 1;
    }
    while lnx.re + n as f64 * lq <= lq {
        n -= 1;
    }
    let nf = n as f64;
    let ln_x0 = lnx + lnq * nf;
    let x0 = ln_x0.exp();
    let reduction = lnx * nf + lnq * (nf * (nf - 1.0) / 2.0);

    let (ls, mant) = if -lq < MODULAR_SWITCH {
        modular_parts(lnq, ln_x0)
    } else {
        (Complex64::new(0.0, 0.0), direct_sum(q.value(), x0))
    };
    Ok(ThetaEval::assemble(reduction + ls, mant, n, x0))
}

/// Direct bilateral partial sums of `Σ q^{n(n-1)/2} xⁿ`, no reduction.
///
/// Accurate only when the terms do not cancel, i.e. for |x| of order one and
/// |q| well inside the disk.
pub fn theta_series(q: QBase, x: Complex64) -> Result<Complex64> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("theta argument must be nonzero".into()));
    }
    Ok(direct_sum(q.value(), x))
}

/// Poisson-dual evaluation at `x` (no reduction); `x ≠ 0`.
pub fn theta_modular(q: QBase, x: Complex64) -> Result<ThetaEval> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("theta argument must be nonzero".into()));
    }
    let (ls, mant) = modular_parts(q.ln(), x.ln());
    Ok(ThetaEval::assemble(ls, mant, 0, x))
}

/// `θ_q(x)/θ_q(y)` computed without forming either theta.
pub fn theta_ratio(q: QBase, x: Complex64, y: Complex64) -> Result<Complex64> {
    let tx = theta(q, x)?;
    let ty = theta(q, y)?;
    if ty.mantissa.norm() == 0.0 {
        return Err(Error::Domain(format!("theta denominator vanishes at {y}")));
    }
    Ok(tx.ratio(&ty))
}

/// `ln(θ_q(x)/θ_q(y))`, for accumulation with other logarithmic factors.
pub fn theta_ln_ratio(q: QBase, x: Complex64, y: Complex64) -> Result<Complex64> {
    let tx = theta(q, x)?;
    let ty = theta(q, y)?;
    if ty.mantissa.norm() == 0.0 {
        return Err(Error::Domain(format!("theta denominator vanishes at {y}")));
    }
    Ok(tx.log_scale - ty.log_scale + (tx.mantissa / ty.mantissa).ln())
}

fn direct_sum(q: Complex64, x: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut running_max = 1.0f64;

    // n ≥ 1: t_{n} = t_{n-1} · q^{n-1} x
    let mut t = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for _ in 0..100_000 {
        t *= qn * x;
        qn *= q;
        sum += t;
        running_max = running_max.max(t.norm());
        if t.norm() < SERIES_RTOL * running_max {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
    }

    // n = -m ≤ -1: t_{-m} = t_{-(m-1)} · q^m / x
    let xinv = 1.0 / x;
    let mut t = Complex64::new(1.0, 0.0);
    let mut qm = q;
    small = 0;
    for _ in 0..100_000 {
        t *= qm * xinv;
        qm *= q;
        sum += t;
        running_max = running_max.max(t.norm());
        if t.norm() < SERIES_RTOL * running_max {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// Returns `(log_scale, mantissa)` of the dual representation.
fn modular_parts(lnq: Complex64, w: Complex64) -> (Complex64, Complex64) {
    let eps = -lnq;
    let inv_eps = 1.0 / eps;
    let c = 0.5 + w * inv_eps;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let quad = -2.0 * PI * PI * inv_eps;
    let exponent = |k: f64| quad * (k * k) + two_pi_i * c * k;

    // Re E_k is a concave quadratic in k; start at its vertex.
    let a = quad.re;
    let b = (two_pi_i * c).re;
    let k_star = (-b / (2.0 * a)).round();
    let e_star = exponent(k_star);

    let mut mant = Complex64::new(1.0, 0.0);
    for dir in [1.0f64, -1.0] {
        let mut k = k_star + dir;
        loop {
            let d = exponent(k) - e_star;
            if d.re < -41.0 {
                break;
            }
            mant += d.exp();
            k += dir;
        }
    }
    let prefactor = 0.5 * (2.0 * PI * inv_eps).ln() + eps * c * c / 2.0;
    (prefactor + e_star, mant)
}

fn wrap_imag(z: Complex64) -> Complex64 {
    if z.im.abs() <= PI {
        return z;
    }
    let im = (z.im + PI).rem_euclid(2.0 * PI) - PI;
    Complex64::new(z.re, im)
}
