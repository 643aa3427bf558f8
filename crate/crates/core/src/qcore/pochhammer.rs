use num_complex::Complex64;

use super::QBase;

/// `(a;q)_n = ∏_{j<n} (1 - a q^j)`. The empty product (n = 0) is 1.
pub fn qpoch(a: Complex64, q: QBase, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..n {
        acc *= 1.0 - aq;
        aq *= q.value();
    }
    acc
}

/// Sum of principal logarithms of the factors of `(a;q)_n`.
///
/// Exponentiates to `(a;q)_n`; the imaginary part is only meaningful mod 2π.
pub fn qpoch_ln(a: Complex64, q: QBase, n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut aq = a;
    for _ in 0..n {
        acc += ln_one_minus(aq);
        aq *= q.value();
    }
    acc
}

/// `(a;q)_∞`, truncated once the geometric tail bound `|a||q|^j/(1-|q|)`
/// drops below `tol`.
///
/// For |q| close to 1 the product under- or overflows long before the tail
/// is negligible; use [`qpoch_inf_ln`] there.
pub fn qpoch_inf(a: Complex64, q: QBase, tol: f64) -> Complex64 {
    let qm = q.modulus();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut aq = a;
    let mut bound = a.norm() / (1.0 - qm);
    while bound >= tol {
        acc *= 1.0 - aq;
        aq *= q.value();
        bound *= qm;
    }
    acc
}

/// Logarithm of `(a;q)_∞` (sum of principal logs of the factors).
///
/// A vanishing factor yields a real part of `-∞`.
pub fn qpoch_inf_ln(a: Complex64, q: QBase, tol: f64) -> Complex64 {
    let qm = q.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut aq = a;
    let mut bound = a.norm() / (1.0 - qm);
    while bound >= tol {
        acc += ln_one_minus(aq);
        aq *= q.value();
        bound *= qm;
    }
    acc
}

/// `ln(1 - u)`, accurate for small |u|.
pub(crate) fn ln_one_minus(u: Complex64) -> Complex64 {
    let m = u.norm();
    if m > 1e-3 {
        let w = 1.0 - u;
        if w.norm() == 0.0 {
            return Complex64::new(f64::NEG_INFINITY, 0.0);
        }
        return w.ln();
    }
    // -Σ u^n / n; |u| ≤ 1e-3 so 6 terms reach double precision.
    let mut term = u;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=6 {
        acc -= term / n as f64;
        term *= u;
    }
    acc
}
