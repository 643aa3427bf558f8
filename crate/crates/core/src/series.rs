//! Coefficient streams and convergent evaluation of basic hypergeometric
//! series.
//!
//! Coefficients are produced by the multiplicative recurrence
//!
//! ```text
//! c_{n+1}/c_n = ∏_j (1 - a_j qⁿ) / [∏_k (1 - b_k qⁿ)(1 - q^{n+1})] · (-qⁿ)^{1+s-r}
//! ```
//!
//! which is O(1) per term and never forms long Pochhammer products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{QBase, QSpiral, DEFAULT_SPIRAL_TOL};
use crate::SumControl;

/// Largest spiral index examined by degeneracy checks.
pub const DEGENERACY_INDEX_LIMIT: i64 = 200;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A general `r'φs'` series; zero parameters are allowed (padding).
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeries {
    q: QBase,
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
}

impl PhiSeries {
    pub fn new(q: QBase, upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        for (j, &b) in lower.iter().enumerate() {
            if let Some(m) = lower_pole_index(q, b) {
                return Err(Error::Parameter(format!(
                    "lower parameter b_{} = {b} equals q^{m}",
                    j + 1
                )));
            }
        }
        Ok(PhiSeries { q, upper, lower })
    }

    pub fn q(&self) -> QBase {
        self.q
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    /// The exponent `1 + s' - r'` on `(-1)ⁿ q^{n(n-1)/2}`.
    pub fn exponent(&self) -> i64 {
        1 + self.lower.len() as i64 - self.upper.len() as i64
    }

    /// `(numerator, denominator)` of `c_{n+1}/c_n` given `qn = qⁿ`.
    fn ratio_parts(&self, qn: Complex64) -> (Complex64, Complex64) {
        let mut num = signed_power(qn, self.exponent());
        for &a in &self.upper {
            num *= ONE - a * qn;
        }
        let mut den = ONE - qn * self.q.value();
        for &b in &self.lower {
            den *= ONE - b * qn;
        }
        (num, den)
    }
}

/// `(-qⁿ)^e` for integer e. Negative exponents invert first: squaring a tiny
/// base before inverting underflows.
fn signed_power(qn: Complex64, e: i64) -> Complex64 {
    let base = -qn;
    match e {
        0 => ONE,
        e if e > 0 => base.powi(e as i32),
        e => base.inv().powi((-e) as i32),
    }
}

/// `Some(-m)` when `b = q^{-m}` for some `0 ≤ m ≤ 200`.
fn lower_pole_index(q: QBase, b: Complex64) -> Option<i64> {
    if b.norm() == 0.0 {
        return None;
    }
    let unit = QSpiral::new(ONE, q).ok()?;
    match unit.index_of(b, DEFAULT_SPIRAL_TOL) {
        Some(m) if m <= 0 && m >= -DEGENERACY_INDEX_LIMIT => Some(m),
        _ => None,
    }
}

/// Validated parameters of a divergent series `rφs(a; b; q, x)`, `r > s+1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct SeriesParams {
    q: QBase,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    q: Complex64,
    a: Vec<Complex64>,
    #[serde(default)]
    b: Vec<Complex64>,
}

impl TryFrom<RawParams> for SeriesParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        SeriesParams::new(QBase::new(raw.q)?, raw.a, raw.b)
    }
}

impl From<SeriesParams> for RawParams {
    fn from(p: SeriesParams) -> Self {
        RawParams {
            q: p.q.value(),
            a: p.a,
            b: p.b,
        }
    }
}

impl SeriesParams {
    pub fn new(q: QBase, a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.len() <= b.len() + 1 {
            return Err(Error::Parameter(format!(
                "need r > s + 1 for a divergent series, got r = {}, s = {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(i) = a.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::Parameter(format!("upper parameter a_{} is zero", i + 1)));
        }
        if let Some(j) = b.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::Parameter(format!("lower parameter b_{} is zero", j + 1)));
        }
        for (j, &bj) in b.iter().enumerate() {
            if let Some(m) = lower_pole_index(q, bj) {
                return Err(Error::Parameter(format!(
                    "lower parameter b_{} = {bj} equals q^{m}",
                    j + 1
                )));
            }
        }
        Ok(SeriesParams { q, a, b })
    }

    /// Convenience constructor for real parameters.
    pub fn real(q: f64, a: &[f64], b: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        SeriesParams::new(QBase::real(q)?, c(a), c(b))
    }

    pub fn q(&self) -> QBase {
        self.q
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    /// `k = r - s - 1 ≥ 1`.
    pub fn k(&self) -> u32 {
        (self.a.len() - self.b.len() - 1) as u32
    }

    /// `p = q^k`.
    pub fn p(&self) -> QBase {
        self.q.pow(self.k())
    }

    /// Rejects `a_i/a_j ∈ q^ℤ` for `i ≠ j`, reporting 1-based indices.
    pub fn check_nonresonant(&self) -> Result<()> {
        let unit = QSpiral::new(ONE, self.q)?;
        for i in 0..self.a.len() {
            for j in 0..self.a.len() {
                if i == j {
                    continue;
                }
                if let Some(m) = unit.index_of(self.a[i] / self.a[j], DEFAULT_SPIRAL_TOL) {
                    if m.abs() <= DEGENERACY_INDEX_LIMIT {
                        return Err(Error::Resonance { i: i + 1, j: j + 1, m });
                    }
                }
            }
        }
        Ok(())
    }

    /// `∏ b / ∏ a`, the scale of the expansion at infinity.
    pub fn b_over_a(&self) -> Complex64 {
        self.b.iter().product::<Complex64>() / self.a.iter().product::<Complex64>()
    }

    /// The formal series itself as a general [`PhiSeries`].
    pub fn as_phi(&self) -> PhiSeries {
        PhiSeries {
            q: self.q,
            upper: self.a.clone(),
            lower: self.b.clone(),
        }
    }
}

/// Lazily extended, cached coefficients `c_n` of a [`PhiSeries`].
///
/// Extension needs `&mut self`; share a clone (an immutable snapshot) across
/// threads instead of the stream itself.
#[derive(Debug, Clone)]
pub struct CoefficientStream {
    series: PhiSeries,
    cache: Vec<Complex64>,
    /// `q^{cache.len() - 1}`
    qn: Complex64,
}

impl CoefficientStream {
    pub fn new(series: PhiSeries) -> Self {
        CoefficientStream {
            series,
            cache: vec![ONE],
            qn: ONE,
        }
    }

    pub fn from_params(params: &SeriesParams) -> Self {
        Self::new(params.as_phi())
    }

    pub fn series(&self) -> &PhiSeries {
        &self.series
    }

    /// Coefficients computed so far.
    pub fn cached(&self) -> &[Complex64] {
        &self.cache
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.cache.len() <= n {
            let m = self.cache.len() - 1;
            for (j, &b) in self.series.lower.iter().enumerate() {
                if (ONE - b * self.qn).norm() < 1e-13 {
                    return Err(Error::Parameter(format!(
                        "lower parameter b_{} hits q^-{m} at coefficient {}",
                        j + 1,
                        m + 1
                    )));
                }
            }
            let (num, den) = self.series.ratio_parts(self.qn);
            let next = self.cache[m] * num / den;
            self.cache.push(next);
            self.qn *= self.series.q.value();
        }
        Ok(())
    }

    /// The first `n` coefficients.
    pub fn take(&mut self, n: usize) -> Result<&[Complex64]> {
        if n > 0 {
            self.extend_to(n - 1)?;
        }
        Ok(&self.cache[..n])
    }
}

/// `c_n` of the stream, extending the cache as needed.
pub fn phi_coeff(stream: &mut CoefficientStream, n: usize) -> Result<Complex64> {
    stream.extend_to(n)?;
    Ok(stream.cache[n])
}

/// `c_{n+1}·∏(1-b qⁿ)(1-q^{n+1}) - c_n·(-qⁿ)^{1+s-r}·∏(1-a qⁿ)`.
pub fn recurrence_residual(stream: &mut CoefficientStream, n: usize) -> Result<Complex64> {
    stream.extend_to(n + 1)?;
    let qn = stream.series.q.powi(n as i64);
    let (num, den) = stream.series.ratio_parts(qn);
    Ok(stream.cache[n + 1] * den - stream.cache[n] * num)
}

/// `S_N(x) = Σ_{n<N} c_n xⁿ`.
pub fn partial_sum(stream: &mut CoefficientStream, terms: usize, x: Complex64) -> Result<Complex64> {
    let c = stream.take(terms)?;
    // Horner from the top.
    Ok(c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &cn| acc * x + cn))
}

/// Outcome of a tolerance-stopped summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    pub terms_used: usize,
    pub max_term: f64,
}

/// Value of a convergent `r'φs'` series at x.
pub fn eval_phi(series: &PhiSeries, x: Complex64, ctl: &SumControl) -> Result<Complex64> {
    sum_phi(series, x, ctl).map(|s| s.value)
}

/// As [`eval_phi`], with summation diagnostics.
///
/// Stops after three consecutive terms below `tol` times the running maximum
/// of the partial sums, or at an exactly vanishing coefficient (terminating
/// series, which are accepted in any regime).
pub fn sum_phi(series: &PhiSeries, x: Complex64, ctl: &SumControl) -> Result<SeriesSum> {
    let e = series.exponent();
    let terminating = series
        .upper
        .iter()
        .any(|&a| a.norm() != 0.0 && lower_pole_index(series.q, a).is_some());
    if !terminating {
        if e < 0 && x.norm() != 0.0 {
            return Err(Error::Divergent(format!(
                "{}φ{} has radius of convergence 0",
                series.upper.len(),
                series.lower.len()
            )));
        }
        if e == 0 && x.norm() >= 1.0 {
            return Err(Error::Divergent(format!(
                "{}φ{} needs |x| < 1, got |x| = {}",
                series.upper.len(),
                series.lower.len(),
                x.norm()
            )));
        }
    }

    let q = series.q.value();
    let mut term = ONE;
    let mut sum = ONE;
    let mut max_sum = 1.0f64;
    let mut max_term = 1.0f64;
    let mut qn = ONE;
    let mut small = 0;
    for n in 0..ctl.max_terms {
        if x.norm() == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                terms_used: 1,
                max_term,
            });
        }
        for (j, &b) in series.lower.iter().enumerate() {
            if (ONE - b * qn).norm() < 1e-13 {
                return Err(Error::Parameter(format!(
                    "lower parameter b_{} hits q^-{n} at term {}",
                    j + 1,
                    n + 1
                )));
            }
        }
        if series
            .upper
            .iter()
            .any(|&a| (ONE - a * qn).norm() < 1e-14)
        {
            return Ok(SeriesSum {
                value: sum,
                terms_used: n + 1,
                max_term,
            });
        }
        let (num, den) = series.ratio_parts(qn);
        term *= num / den * x;
        sum += term;
        qn *= q;
        let tn = term.norm();
        max_term = max_term.max(tn);
        max_sum = max_sum.max(sum.norm());
        if !tn.is_finite() {
            break;
        }
        if tn < ctl.tol * max_sum {
            small += 1;
            if small == 3 {
                return Ok(SeriesSum {
                    value: sum,
                    terms_used: n + 2,
                    max_term,
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::ConvergenceFailure {
        what: "basic hypergeometric series",
        terms: ctl.max_terms,
    })
}
