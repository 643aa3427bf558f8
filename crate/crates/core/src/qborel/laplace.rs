use num_complex::Complex64;

use super::sum::check_pole_distance;
use super::{Method, SumEvaluation};
use crate::error::{Error, Result};
use crate::qcore::{theta, QBase};
use crate::SumControl;

/// Largest |m| visited by the Jackson sum before declaring failure.
pub const JACKSON_WINDOW_CAP: i64 = 400;

const SMALL_RUN: usize = 5;

struct Side {
    step: i64,
    next: i64,
    small: usize,
    done: bool,
}

/// Jackson-sum q-Laplace transform `Σ_m g(λpᵐ) / θ_p(λpᵐ/x)`.
///
/// The window grows symmetrically from m = 0; each side stops after five
/// consecutive terms below `tol` times the running maximum.
pub fn qlaplace<F>(mut g: F, lambda: Complex64, p: QBase, x: Complex64, ctl: &SumControl) -> Result<SumEvaluation>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if lambda.norm() == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("λ must be nonzero".into()));
    }
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Domain("the Jackson sum needs x ≠ 0".into()));
    }
    let pole_proximity = check_pole_distance(lambda, p, x)?;

    let mut term_at = |m: i64| -> Result<Complex64> {
        let xi = lambda * p.powi(m);
        let gv = g(xi)?;
        if gv == Complex64::new(0.0, 0.0) {
            return Ok(gv);
        }
        let th = theta(p, xi / x)?;
        Ok(gv * (-th.ln()).exp())
    };

    let mut sum = term_at(0)?;
    let mut running = sum.norm();
    let mut max_term = running;
    let mut terms = 1usize;
    let mut sides = [
        Side { step: 1, next: 1, small: 0, done: false },
        Side { step: -1, next: -1, small: 0, done: false },
    ];
    while sides.iter().any(|s| !s.done) {
        for side in sides.iter_mut().filter(|s| !s.done) {
            if side.next.abs() > JACKSON_WINDOW_CAP || terms >= ctl.max_terms {
                return Err(Error::ConvergenceFailure {
                    what: "Jackson q-Laplace sum",
                    terms,
                });
            }
            let t = term_at(side.next)?;
            if !t.is_finite() {
                return Err(Error::ConvergenceFailure {
                    what: "Jackson q-Laplace sum (non-finite term)",
                    terms,
                });
            }
            sum += t;
            terms += 1;
            let tn = t.norm();
            max_term = max_term.max(tn);
            running = running.max(tn).max(sum.norm());
            if tn <= ctl.tol * running {
                side.small += 1;
                if side.small >= SMALL_RUN {
                    side.done = true;
                }
            } else {
                side.small = 0;
            }
            side.next += side.step;
        }
    }
    Ok(SumEvaluation {
        value: sum,
        lambda,
        method: Method::Direct,
        terms_used: terms,
        max_term,
        pole_proximity,
    })
}
