use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::QBase;
use crate::series::SeriesParams;

/// One elementary term `coeff · x^power · y(q^shift x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilTerm {
    pub coeff: Complex64,
    pub power: u32,
    pub shift: i32,
}

impl StencilTerm {
    fn identity() -> Self {
        StencilTerm {
            coeff: Complex64::new(1.0, 0.0),
            power: 0,
            shift: 0,
        }
    }

    /// `σ_q^n` applied on the left: `c x^e y(q^s x) ↦ c q^{ne} x^e y(q^{s+n} x)`.
    fn shifted(self, q: QBase, n: i32) -> Self {
        StencilTerm {
            coeff: self.coeff * q.powi(n as i64 * self.power as i64),
            power: self.power,
            shift: self.shift + n,
        }
    }
}

/// `(1 - c σ_q)` applied on the left of a stencil.
fn one_minus_shift(terms: &[StencilTerm], c: Complex64, q: QBase) -> Vec<StencilTerm> {
    let mut out = terms.to_vec();
    out.extend(terms.iter().map(|t| {
        let mut s = t.shifted(q, 1);
        s.coeff *= -c;
        s
    }));
    out
}

/// The q-difference operator annihilating the formal series, expanded as
/// two stencils: `x (-σ_q)^{-k} ∏(1 - a_j σ_q)` and `(1 - σ_q) ∏(1 - (b_l/q) σ_q)`.
///
/// Expansion applies the written factors right to left with no reordering.
#[derive(Debug, Clone)]
pub struct QOperator {
    params: SeriesParams,
    upper: Vec<StencilTerm>,
    lower: Vec<StencilTerm>,
}

impl QOperator {
    pub fn new(params: &SeriesParams) -> Self {
        let q = params.q();
        let mut upper = vec![StencilTerm::identity()];
        for &a in params.a().iter().rev() {
            upper = one_minus_shift(&upper, a, q);
        }
        let k = params.k() as i32;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        upper = upper
            .into_iter()
            .map(|t| {
                let mut s = t.shifted(q, -k);
                s.coeff *= sign;
                s.power += 1;
                s
            })
            .collect();

        let mut lower = vec![StencilTerm::identity()];
        for &b in params.b().iter().rev() {
            lower = one_minus_shift(&lower, b / q.value(), q);
        }
        lower = one_minus_shift(&lower, Complex64::new(1.0, 0.0), q);
        QOperator {
            params: params.clone(),
            upper,
            lower,
        }
    }

    pub fn params(&self) -> &SeriesParams {
        &self.params
    }

    /// Terms of the first group (carrying the factor x).
    pub fn upper_terms(&self) -> &[StencilTerm] {
        &self.upper
    }

    pub fn lower_terms(&self) -> &[StencilTerm] {
        &self.lower
    }

    /// Shift indices at which the evaluator is sampled, ascending.
    pub fn shifts(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.upper.iter().chain(&self.lower).map(|t| t.shift).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// Residual of the operator applied to an evaluator at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorResidual {
    /// `lower(f) - upper(f)`; zero for exact solutions.
    pub value: Complex64,
    /// Largest modulus among the individual terms before cancellation.
    pub scale: f64,
}

impl OperatorResidual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

/// Applies the q-difference operator of `params` to `f` at x.
///
/// `f` is sampled at `q^m x` for every shift m in the stencil. A pole or
/// domain error from `f` at a shifted point is reported as a pole collision.
pub fn apply_operator<F>(mut f: F, params: &SeriesParams, x: Complex64) -> Result<OperatorResidual>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let op = QOperator::new(params);
    let q = params.q();
    let mut samples = BTreeMap::new();
    for m in op.shifts() {
        let v = f(x * q.powi(m as i64)).map_err(|e| match e {
            Error::Pole { .. } | Error::Domain(_) | Error::GammaPole(_) | Error::QGammaPole { .. } => {
                Error::PoleCollision {
                    shift: m,
                    source_msg: e.to_string(),
                }
            }
            other => other,
        })?;
        samples.insert(m, v);
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    let mut accumulate = |t: &StencilTerm, sign: f64| {
        let term = t.coeff * x.powu(t.power) * samples[&t.shift];
        scale = scale.max(term.norm());
        value += sign * term;
    };
    for t in &op.lower {
        accumulate(t, 1.0);
    }
    for t in &op.upper {
        accumulate(t, -1.0);
    }
    Ok(OperatorResidual { value, scale })
}
