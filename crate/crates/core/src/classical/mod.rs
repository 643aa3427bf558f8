//! The classical counterpart: gamma function, `pFq` series, the Borel sum
//! of a divergent `rFs` and the q → 1 comparison with the `[λ;p]`-sum.

mod gamma;
mod hypergeom;

pub use gamma::{gamma, rgamma};
pub use hypergeom::{eval_f, FSeries};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qborel::qsum;
use crate::qcore::QBase;
use crate::series::SeriesParams;
use crate::SumControl;

/// Denominator floor for [`LimitScanRow::rel_error`].
pub const REL_ERROR_FLOOR: f64 = 1e-300;

fn near_integer(z: Complex64) -> bool {
    (z - z.re.round()).norm() < 1e-12
}

/// Parameters `α ∈ ℂ^r`, `β ∈ ℂ^s` of a divergent `rFs` (r > s + 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawClassical", into = "RawClassical")]
pub struct ClassicalParams {
    alpha: Vec<Complex64>,
    beta: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawClassical {
    alpha: Vec<Complex64>,
    #[serde(default)]
    beta: Vec<Complex64>,
}

impl TryFrom<RawClassical> for ClassicalParams {
    type Error = Error;
    fn try_from(raw: RawClassical) -> Result<Self> {
        ClassicalParams::new(raw.alpha, raw.beta)
    }
}

impl From<ClassicalParams> for RawClassical {
    fn from(p: ClassicalParams) -> Self {
        RawClassical {
            alpha: p.alpha,
            beta: p.beta,
        }
    }
}

impl ClassicalParams {
    pub fn new(alpha: Vec<Complex64>, beta: Vec<Complex64>) -> Result<Self> {
        if alpha.len() < beta.len() + 2 {
            return Err(Error::Parameter(format!(
                "need r > s + 1 for a divergent series, got r = {}, s = {}",
                alpha.len(),
                beta.len()
            )));
        }
        if alpha.iter().chain(&beta).any(|z| !z.is_finite()) {
            return Err(Error::Parameter("parameters must be finite".into()));
        }
        for i in 0..alpha.len() {
            for j in 0..alpha.len() {
                let d = alpha[i] - alpha[j];
                if i != j && near_integer(d) {
                    return Err(Error::Resonance {
                        i: i + 1,
                        j: j + 1,
                        m: d.re.round() as i64,
                    });
                }
            }
        }
        for (l, b) in beta.iter().enumerate() {
            if near_integer(*b) && b.re.round() <= 0.0 {
                return Err(Error::Parameter(format!("β_{} = {b} is a nonpositive integer", l + 1)));
            }
        }
        Ok(ClassicalParams { alpha, beta })
    }

    pub fn real(alpha: &[f64], beta: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        ClassicalParams::new(c(alpha), c(beta))
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn s(&self) -> usize {
        self.beta.len()
    }

    pub fn k(&self) -> u32 {
        (self.r() - self.s() - 1) as u32
    }

    /// The q-analogue `a = q^α`, `b = q^β`.
    pub fn q_analogue(&self, q: QBase) -> Result<SeriesParams> {
        let pw = |z: &Complex64| (q.ln() * z).exp();
        SeriesParams::new(q, self.alpha.iter().map(pw).collect(), self.beta.iter().map(pw).collect())
    }

    /// `C_{αβ} C_{αβ}(j)` written without `Γ(α_j)`, which cancels.
    fn connection(&self, j: usize) -> Result<Complex64> {
        let aj = self.alpha[j];
        let mut c = Complex64::new(1.0, 0.0);
        for &b in &self.beta {
            c *= gamma(b)? * rgamma(b - aj);
        }
        for (l, &al) in self.alpha.iter().enumerate() {
            if l != j {
                c *= gamma(al - aj)? * rgamma(al);
            }
        }
        Ok(c)
    }
}

/// The convergent factor `_{s+1}F_{r-1}(α_j, 1+α_j-β; 1+α_j-α_{≠j}; ·)`.
fn connection_series(params: &ClassicalParams, j: usize) -> Result<FSeries> {
    let aj = params.alpha[j];
    let mut upper = vec![aj];
    upper.extend(params.beta.iter().map(|b| 1.0 + aj - b));
    let lower = params
        .alpha
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != j)
        .map(|(_, al)| 1.0 + aj - al)
        .collect();
    FSeries::new(upper, lower)
}

/// Borel sum of `rFs(α; β; x)` as the r-term combination of convergent
/// series in `1/x`, principal branches throughout.
///
/// Valid for x off the positive real axis (the Stokes line of the principal
/// sheet).
pub fn classical_borel_sum(params: &ClassicalParams, x: Complex64) -> Result<Complex64> {
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Domain("the Borel sum is taken at x ≠ 0".into()));
    }
    let mx = -x;
    let opening = (params.r() as f64 - params.s() as f64 + 1.0) * PI / 2.0;
    let arg = mx.arg();
    if !(arg.abs() < opening.min(PI)) {
        return Err(Error::Branch(format!(
            "x = {x} lies on the excluded direction arg x = 0"
        )));
    }
    let sign = if params.k() % 2 == 0 { 1.0 } else { -1.0 };
    let z = sign / x;
    let ctl = SumControl::default();
    let ln_mx = mx.ln();
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..params.r() {
        let f = eval_f(&connection_series(params, j)?, z, &ctl)?;
        total += params.connection(j)? * (-params.alpha[j] * ln_mx).exp() * f;
    }
    Ok(total)
}

/// One q of a limit scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitScanRow {
    pub q: f64,
    pub qsum_value: Complex64,
    pub classical_value: Complex64,
    pub rel_error: f64,
}

/// Checks the summation direction and branch conditions of the q → 1 limit.
pub fn check_limit_branch(k: u32, lambda: Complex64, x: Complex64) -> Result<()> {
    if lambda.norm() == 0.0 || x.norm() == 0.0 {
        return Err(Error::Domain("λ and x must be nonzero".into()));
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    // λ ∉ (-1)^k ℝ₊
    if (sign * lambda).arg().abs() < 1e-12 {
        return Err(Error::Branch(format!("λ = {lambda} lies on (-1)^k ℝ+")));
    }
    let diff = (-x).arg() - (-sign * lambda).arg();
    if !(diff.abs() < PI) {
        return Err(Error::Branch(format!(
            "|arg(-x) - arg((-1)^(k-1) λ)| = {} is not below π",
            diff.abs()
        )));
    }
    Ok(())
}

/// Compares `rfs(q^α; q^β; λ; q, (-1)^k x/(1-q)^k)` with the classical Borel
/// sum at x, one row per q in the given order.
pub fn limit_scan(params: &ClassicalParams, lambda: Complex64, x: Complex64, q_list: &[f64]) -> Result<Vec<LimitScanRow>> {
    limit_scan_with(params, lambda, x, q_list, &SumControl::default())
}

/// As [`limit_scan`], with explicit summation controls for the q-side.
pub fn limit_scan_with(
    params: &ClassicalParams,
    lambda: Complex64,
    x: Complex64,
    q_list: &[f64],
    ctl: &SumControl,
) -> Result<Vec<LimitScanRow>> {
    let k = params.k();
    check_limit_branch(k, lambda, x)?;
    let classical_value = classical_borel_sum(params, x)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    q_list
        .iter()
        .map(|&qv| {
            if !(qv > 0.0 && qv < 1.0) {
                return Err(Error::Parameter(format!("limit scan needs real q in (0, 1), got {qv}")));
            }
            let q = QBase::real(qv)?;
            let sp = params.q_analogue(q)?;
            let arg = sign * x / (1.0 - qv).powi(k as i32);
            let qsum_value = qsum(&sp, lambda, arg, ctl)?.value;
            let rel_error = (qsum_value - classical_value).norm() / classical_value.norm().max(REL_ERROR_FLOOR);
            Ok(LimitScanRow {
                q: qv,
                qsum_value,
                classical_value,
                rel_error,
            })
        })
        .collect()
}
