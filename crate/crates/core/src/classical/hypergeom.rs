use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::SumControl;

/// A generalized hypergeometric series `pFq(upper; lower; x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FSeries {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
}

impl FSeries {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        for (i, b) in lower.iter().enumerate() {
            let n = b.re.round();
            if n <= 0.0 && (b - n).norm() < 1e-14 {
                return Err(Error::Parameter(format!("lower parameter {} is a nonpositive integer", i + 1)));
            }
        }
        Ok(FSeries { upper, lower })
    }

    fn terminates(&self) -> bool {
        self.upper.iter().any(|a| {
            let n = a.re.round();
            n <= 0.0 && (a - n).norm() < 1e-14
        })
    }

    /// Ratio `c_{n+1}/c_n` of consecutive coefficients.
    pub fn term_ratio(&self, n: usize) -> Complex64 {
        let nf = n as f64;
        let num: Complex64 = self.upper.iter().map(|a| a + nf).product();
        let den: Complex64 = self.lower.iter().map(|b| b + nf).product();
        num / (den * (nf + 1.0))
    }
}

/// `Σ (upper)_n / ((lower)_n n!) xⁿ`, summed until three consecutive terms
/// fall below `tol` times the largest partial sum.
pub fn eval_f(series: &FSeries, x: Complex64, ctl: &SumControl) -> Result<Complex64> {
    let p = series.upper.len();
    let q = series.lower.len();
    if !series.terminates() && x.norm() != 0.0 {
        if p > q + 1 {
            return Err(Error::Divergent(format!("{p}F{q} has radius of convergence 0")));
        }
        if p == q + 1 && x.norm() >= 1.0 {
            return Err(Error::Divergent(format!("{p}F{q} needs |x| < 1, got {}", x.norm())));
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_sum = 1.0f64;
    let mut small = 0;
    for n in 0..ctl.max_terms {
        term *= series.term_ratio(n) * x;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        sum += term;
        max_sum = max_sum.max(sum.norm());
        if !sum.is_finite() {
            break;
        }
        if term.norm() < ctl.tol * max_sum {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::ConvergenceFailure {
        what: "hypergeometric series",
        terms: ctl.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let ctl = SumControl::new(1e-16);
        let s = FSeries::new(vec![c(0.5, 0.2), c(1.0, 0.0)], vec![]).unwrap();
        assert_eq!(eval_f(&s, c(0.0, 0.0), &ctl).unwrap(), c(1.0, 0.0));
        let binom = FSeries::new(vec![c(0.5, 0.2)], vec![]).unwrap();
        let x = c(0.3, 0.0);
        let expect = (-c(0.5, 0.2) * (1.0 - x).ln()).exp();
        assert!((eval_f(&binom, x, &ctl).unwrap() - expect).norm() < 1e-11);
        let exp = FSeries::new(vec![], vec![]).unwrap();
        assert!((eval_f(&exp, c(1.5, -2.0), &ctl).unwrap() - c(1.5, -2.0).exp()).norm() < 1e-13);
    }

    #[test]
    fn term_ratio_matches_products() {
        let s = FSeries::new(vec![c(0.3, 0.1), c(1.7, 0.0)], vec![c(2.2, -0.4)]).unwrap();
        let poch = |a: Complex64, n: usize| (0..n).fold(c(1.0, 0.0), |acc, i| acc * (a + i as f64));
        let coeff = |n: usize| {
            let fact: f64 = (1..=n).map(|i| i as f64).product();
            poch(s.upper[0], n) * poch(s.upper[1], n) / (poch(s.lower[0], n) * fact)
        };
        for n in 0..30 {
            let defect = coeff(n + 1) - s.term_ratio(n) * coeff(n);
            assert!(defect.norm() < 1e-13 * coeff(n + 1).norm());
        }
    }

    #[test]
    fn divergence_and_termination() {
        let ctl = SumControl::default();
        let s = FSeries::new(vec![c(1.0, 0.0), c(1.5, 0.0)], vec![]).unwrap();
        assert!(matches!(eval_f(&s, c(0.1, 0.0), &ctl), Err(Error::Divergent(_))));
        let t = FSeries::new(vec![c(-2.0, 0.0), c(1.5, 0.0)], vec![]).unwrap();
        // 1 + (-2)(1.5)x + (-2)(-1)(1.5)(2.5)/2 x²
        let x = c(0.7, 0.0);
        let expect = 1.0 - 3.0 * 0.7 + 3.75 * 0.49;
        assert!((eval_f(&t, x, &ctl).unwrap() - expect).norm() < 1e-14);
        let h = FSeries::new(vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(2.0, 0.0)]).unwrap();
        assert!(matches!(eval_f(&h, c(1.0, 0.0), &ctl), Err(Error::Divergent(_))));
        assert!(FSeries::new(vec![], vec![c(-3.0, 0.0)]).is_err());
    }
}
