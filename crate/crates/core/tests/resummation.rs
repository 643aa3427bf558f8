//! End-to-end checks through the public API.

use num_complex::Complex64;
use qphi::series::partial_sum;
use qphi::{
    classical_borel_sum, limit_scan, qsum, stokes_coefficients, ClassicalParams, CoefficientStream, Error,
    SeriesParams, SumControl,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_zero() -> SeriesParams {
    SeriesParams::real(0.5, &[2.5, 3.5], &[]).unwrap()
}

fn three_zero() -> SeriesParams {
    SeriesParams::real(0.6, &[2.5, 3.5, 5.5], &[]).unwrap()
}

#[test]
fn params_serialize_as_pairs() {
    let p = SeriesParams::real(0.5, &[2.5, 3.5, 5.5], &[7.0]).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    assert_eq!(text, r#"{"q":[0.5,0.0],"a":[[2.5,0.0],[3.5,0.0],[5.5,0.0]],"b":[[7.0,0.0]]}"#);
    let back: SeriesParams = serde_json::from_str(&text).unwrap();
    assert_eq!(back, p);
    // r = s + 1 is rejected on the way in
    assert!(serde_json::from_str::<SeriesParams>(r#"{"q":[0.5,0],"a":[[2,0]],"b":[]}"#).is_err());
    assert!(serde_json::from_str::<SeriesParams>(r#"{"q":[1.5,0],"a":[[2,0],[3,0]]}"#).is_err());

    let cp = ClassicalParams::real(&[0.5, 1.25], &[]).unwrap();
    let back: ClassicalParams = serde_json::from_str(&serde_json::to_string(&cp).unwrap()).unwrap();
    assert_eq!(back, cp);
}

#[test]
fn resummed_value_is_asymptotic_to_the_series() {
    for p in [two_zero(), three_zero()] {
        let lambda = c(0.0, 1.0);
        let mut st = CoefficientStream::from_params(&p);
        let dir = Complex64::from_polar(1.0, 0.9);
        let n = 3;
        let mut err = |r: f64| {
            let x = dir * r;
            let f = qsum(&p, lambda, x, &SumControl::new(1e-16)).unwrap().value;
            (f - partial_sum(&mut st, n, x).unwrap()).norm()
        };
        // remainder after n terms shrinks like |x|^n
        let (e1, e2) = (err(0.02), err(0.01));
        let slope = (e1 / e2).log2();
        assert!(slope > n as f64 - 0.5, "k={}: slope {slope}", p.k());
    }
}

#[test]
fn change_of_direction_is_carried_by_stokes_data() {
    for p in [two_zero(), three_zero()] {
        let (l1, l2) = (c(0.0, 1.0), c(1.0, 0.5));
        let x = c(0.9, 0.4);
        let d1 = stokes_coefficients(&p, l1, x).unwrap();
        let d2 = stokes_coefficients(&p, l2, x).unwrap();
        let ctl = SumControl::new(1e-16);
        let jump = qsum(&p, l1, x, &ctl).unwrap().value - qsum(&p, l2, x, &ctl).unwrap().value;
        let predicted: Complex64 = (0..p.r())
            .map(|j| (d1.coefficients[j] - d2.coefficients[j]) * d1.solutions[j])
            .sum();
        assert!((jump - predicted).norm() < 1e-9 * d1.recombined.norm(), "{jump} vs {predicted}");
        assert!(jump.norm() > 1e-6);
    }
}

#[test]
fn limit_scan_converges_for_several_shapes() {
    let cases = [
        (vec![0.5, 1.25, 0.75], vec![1.5], c(-1.5, 0.0)),
        (vec![0.5, 1.25, 0.8], vec![], c(-1.5, 0.3)),
        (vec![0.5, 1.25, 0.8], vec![], c(2.0, 1.0)),
    ];
    for (alpha, beta, x) in cases {
        let p = ClassicalParams::real(&alpha, &beta).unwrap();
        let rows = limit_scan(&p, c(0.0, 1.0), x, &[0.5, 0.9, 0.99, 0.999]).unwrap();
        let errs: Vec<f64> = rows.iter().map(|r| r.rel_error).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{alpha:?}: {errs:?}");
        // first order in 1 - q
        assert!(errs[3] < 1e-3 && errs[2] / errs[3] > 8.0, "{errs:?}");
    }
}

#[test]
fn classical_sum_rejects_the_stokes_line() {
    let p = ClassicalParams::real(&[0.5, 1.25], &[]).unwrap();
    assert!(matches!(classical_borel_sum(&p, c(1.5, 0.0)), Err(Error::Branch(_))));
    let above = classical_borel_sum(&p, c(1.5, 1e-9)).unwrap();
    let below = classical_borel_sum(&p, c(1.5, -1e-9)).unwrap();
    // the two lateral sums differ across the line
    assert!((above - below).norm() > 1e-3);
}
