//! Shared fixtures for the benchmarks.

use num_complex::Complex64;
use qphi::SeriesParams;

/// One family per shape: `2φ0` and `3φ1` at q = 0.5, `3φ0` at q = 0.6. The
/// parameters sit off `q^ℤ`, so no series terminates and none is resonant.
pub fn families() -> Vec<(&'static str, SeriesParams)> {
    vec![
        ("2phi0", SeriesParams::real(0.5, &[2.5, 3.5], &[]).expect("valid parameters")),
        ("3phi1", SeriesParams::real(0.5, &[2.5, 3.5, 5.5], &[7.0]).expect("valid parameters")),
        ("3phi0", SeriesParams::real(0.6, &[2.5, 3.5, 5.5], &[]).expect("valid parameters")),
    ]
}

/// `n` points on the ray `arg x = π/4` between moduli `lo` and `hi`.
pub fn ray(n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    let dir = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    (0..n)
        .map(|i| {
            let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
            dir * (lo * (hi / lo).powf(t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_summable() {
        let lambda = Complex64::new(1.0, 1.0);
        for (name, p) in families() {
            assert!(p.check_nonresonant().is_ok(), "{name}");
            for x in ray(10, 0.5, 2.0) {
                assert!(qphi::qsum_closed(&p, lambda, x).is_ok(), "{name} at {x}");
            }
        }
    }

    #[test]
    fn ray_endpoints() {
        let r = ray(5, 0.5, 2.0);
        assert!((r[0].norm() - 0.5).abs() < 1e-15 && (r[4].norm() - 2.0).abs() < 1e-15);
        assert_eq!(ray(1, 0.5, 2.0).len(), 1);
    }
}
