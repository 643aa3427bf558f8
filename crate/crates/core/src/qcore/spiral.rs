use std::f64::consts::PI;

use num_complex::Complex64;

use super::QBase;
use crate::error::{Error, Result};

/// Default tolerance on the integer distance of the q-logarithm.
pub const DEFAULT_SPIRAL_TOL: f64 = 1e-9;

/// The discrete spiral `[λ; q] = λ q^ℤ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QSpiral {
    anchor: Complex64,
    base: QBase,
}

/// Nearest spiral point to a probe: `λ q^index`, at relative distance
/// `|x/(λ q^index) - 1|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralPoint {
    pub index: i64,
    pub distance: f64,
}

impl QSpiral {
    pub fn new(anchor: Complex64, base: QBase) -> Result<Self> {
        if anchor.norm() == 0.0 || !anchor.is_finite() {
            return Err(Error::Domain("spiral anchor must be nonzero".into()));
        }
        Ok(QSpiral { anchor, base })
    }

    pub fn anchor(&self) -> Complex64 {
        self.anchor
    }

    pub fn base(&self) -> QBase {
        self.base
    }

    /// Same spiral, anchored at `λ q^m`.
    pub fn shifted(&self, m: i64) -> QSpiral {
        QSpiral {
            anchor: self.anchor * self.base.powi(m),
            base: self.base,
        }
    }

    /// Real and imaginary "coordinates" of x: `ln(x/λ) = t·ln q + 2πi j`.
    fn coordinates(&self, x: Complex64) -> (f64, f64, Complex64) {
        let w = (x / self.anchor).ln();
        let l = self.base.ln();
        let t = w.re / l.re;
        let j = (w.im - t.round() * l.im) / (2.0 * PI);
        (t, j, w)
    }

    pub fn nearest(&self, x: Complex64) -> SpiralPoint {
        let (t, _, w) = self.coordinates(x);
        let l = self.base.ln();
        let mut best = SpiralPoint {
            index: 0,
            distance: f64::INFINITY,
        };
        let centre = t.round() as i64;
        for m in centre - 1..=centre + 1 {
            let d = ((w - l * m as f64).exp() - 1.0).norm();
            if d < best.distance {
                best = SpiralPoint { index: m, distance: d };
            }
        }
        best
    }

    /// Spiral index m with `x = λ q^m` when x is a member within `tol`.
    pub fn index_of(&self, x: Complex64, tol: f64) -> Option<i64> {
        if x.norm() == 0.0 {
            return None;
        }
        let (t, j, _) = self.coordinates(x);
        let m = t.round();
        if (t - m).abs() < tol && (j - j.round()).abs() < tol {
            Some(m as i64)
        } else {
            None
        }
    }
}

/// Membership of x in `[λ; base]` up to `tol` on the integer distance of
/// `log(x/λ)/log(base)` (imaginary part taken mod `2πi`).
pub fn spiral_contains(s: &QSpiral, x: Complex64, tol: f64) -> bool {
    s.index_of(x, tol).is_some()
}
