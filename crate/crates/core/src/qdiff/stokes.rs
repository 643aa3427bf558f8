use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qborel::{check_direction, check_pole_distance, connection_ln, inner_series, POLE_REJECT_DISTANCE};
use crate::qcore::{theta_ln_ratio, QSpiral};
use crate::series::{eval_phi, SeriesParams};
use crate::SumControl;

/// The resummed solution split along the fundamental system at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesDecomposition {
    /// `M_j = C_j T_j(x, λ)`.
    pub coefficients: Vec<Complex64>,
    /// `y_j^{(∞)}(x)`.
    pub solutions: Vec<Complex64>,
    /// `Σ M_j y_j^{(∞)}(x)`.
    pub recombined: Complex64,
}

fn index_check(params: &SeriesParams, i: usize) -> Result<usize> {
    if i == 0 || i > params.r() {
        return Err(Error::Parameter(format!("solution index {i} outside 1..={}", params.r())));
    }
    Ok(i - 1)
}

fn region_argument(params: &SeriesParams, x: Complex64) -> Result<Complex64> {
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Domain("solutions at infinity need x ≠ 0".into()));
    }
    let z = params.q().value() * params.b_over_a() / x;
    if z.norm() >= 1.0 {
        return Err(Error::OutOfRegion {
            what: "q b1...bs / (a1...ar x)",
            modulus: z.norm(),
        });
    }
    Ok(z)
}

/// Rejects x near a zero of `θ_q(c x)`, i.e. near `[-1/c; q]`.
fn theta_zero_guard(params: &SeriesParams, c: Complex64, x: Complex64) -> Result<()> {
    let near = QSpiral::new(-c.inv(), params.q())?.nearest(x);
    if near.distance < POLE_REJECT_DISTANCE {
        return Err(Error::PoleCollision {
            shift: 0,
            source_msg: format!("x = {x} is a zero of θ_q({c}·x) (spiral index {})", near.index),
        });
    }
    Ok(())
}

/// `y_i^{(∞)}(x) = θ_q(-a_i x)/θ_q(-x) · rφ_{r-1}(a_i, a_i q/b, 0_k; a_i q/a_{≠i}; q, q∏b/(∏a x))`,
/// with i in `1..=r`.
pub fn fundamental_solution(params: &SeriesParams, i: usize, x: Complex64) -> Result<Complex64> {
    let j = index_check(params, i)?;
    params.check_nonresonant()?;
    let z = region_argument(params, x)?;
    theta_zero_guard(params, Complex64::new(-1.0, 0.0), x)?;
    let q = params.q();
    let ln_t = theta_ln_ratio(q, -params.a()[j] * x, -x)?;
    let phi = eval_phi(&inner_series(params, j)?, z, &SumControl::default())?;
    Ok(ln_t.exp() * phi)
}

/// `ln T_j(x, λ)` for zero-based j, where
/// `T_j = θ_p(p a_j^k x/λ)/θ_p(p x/λ) · θ_q((-1)^{1-k} a_j λ)/θ_q((-1)^{1-k} λ) · θ_q(-x)/θ_q(-a_j x)`.
pub fn stokes_t_ln(params: &SeriesParams, j: usize, x: Complex64, lambda: Complex64) -> Result<Complex64> {
    let q = params.q();
    let p = params.p();
    let k = params.k() as i32;
    let aj = params.a()[j];
    let s = if k % 2 == 0 { -1.0 } else { 1.0 };
    theta_zero_guard(params, -aj, x)?;
    let tp = theta_ln_ratio(p, p.value() * aj.powi(k) * x / lambda, p.value() * x / lambda)?;
    let tq = theta_ln_ratio(q, s * aj * lambda, s * lambda)?;
    let tx = theta_ln_ratio(q, -x, -aj * x)?;
    Ok(tp + tq + tx)
}

/// q-Stokes decomposition of the `[λ;p]`-sum at x.
pub fn stokes_coefficients(params: &SeriesParams, lambda: Complex64, x: Complex64) -> Result<StokesDecomposition> {
    params.check_nonresonant()?;
    check_direction(params, lambda)?;
    check_pole_distance(lambda, params.p(), x)?;
    region_argument(params, x)?;
    theta_zero_guard(params, Complex64::new(-1.0, 0.0), x)?;
    let r = params.r();
    let mut coefficients = Vec::with_capacity(r);
    let mut solutions = Vec::with_capacity(r);
    for j in 0..r {
        let m = (connection_ln(params, j)? + stokes_t_ln(params, j, x, lambda)?).exp();
        coefficients.push(m);
        solutions.push(fundamental_solution(params, j + 1, x)?);
    }
    let recombined = coefficients.iter().zip(&solutions).map(|(m, y)| m * y).sum();
    Ok(StokesDecomposition {
        coefficients,
        solutions,
        recombined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qborel::qsum_closed;
    use crate::qdiff::apply_operator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn families() -> Vec<SeriesParams> {
        vec![
            SeriesParams::real(0.5, &[2.0, 3.0], &[]).unwrap(),
            SeriesParams::real(0.5, &[2.0, 3.0, 5.0], &[7.0]).unwrap(),
            SeriesParams::real(0.5, &[2.5, 3.5], &[]).unwrap(),
            SeriesParams::real(0.6, &[2.5, 3.5, 5.5], &[]).unwrap(),
        ]
    }

    #[test]
    fn recombination_matches_closed_form() {
        let lambda = c(0.3, 1.0);
        for p in families() {
            for x in [c(0.4, 0.3), c(-0.5, 0.6), c(1.2, -0.9)] {
                let d = stokes_coefficients(&p, lambda, x).unwrap();
                let f = qsum_closed(&p, lambda, x).unwrap().value;
                assert!((d.recombined - f).norm() < 1e-9 * f.norm(), "{x}");
            }
        }
    }

    #[test]
    fn t_is_p_periodic() {
        let lambda = c(0.3, 1.0);
        for p in families() {
            let x = c(0.4, 0.3);
            for j in 0..p.r() {
                let a = stokes_t_ln(&p, j, x, lambda).unwrap().exp();
                let b = stokes_t_ln(&p, j, x * p.p().value(), lambda).unwrap().exp();
                assert!((a - b).norm() < 1e-10 * a.norm());
            }
        }
    }

    #[test]
    fn solution_prefactor_shift() {
        let p = families()[0].clone();
        let x = c(0.7, 0.4);
        for (j, &a) in p.a().iter().enumerate() {
            let t = |y: Complex64| theta_ln_ratio(p.q(), -a * y, -y).unwrap().exp();
            // θ_q(qy) = θ_q(y)/y gives t(x) = a·t(qx)
            assert!((t(x) - a * t(x * 0.5)).norm() < 1e-10 * t(x).norm(), "j={j}");
        }
        let unit = SeriesParams::real(0.5, &[1.0, 3.0], &[]).unwrap();
        let t = theta_ln_ratio(unit.q(), -unit.a()[0] * x, -x).unwrap();
        assert!(t.norm() < 1e-15);
    }

    #[test]
    fn solutions_satisfy_the_equation() {
        for p in families() {
            for x in [c(1.5, 0.7), c(-2.0, 1.1)] {
                for i in 1..=p.r() {
                    let res = apply_operator(|y| fundamental_solution(&p, i, y), &p, x).unwrap();
                    assert!(res.relative() < 1e-8, "i={i}, x={x}: {}", res.relative());
                }
            }
        }
    }

    #[test]
    fn resummed_value_solves_equation_with_shifted_anchors() {
        // σ_q carries the [λ;p]-sum to the [qλ;p]-sum; for k = 1 both are one class
        let lambda = c(0.0, 1.0);
        let x = c(1.3, 0.6);
        for p in [families()[2].clone(), families()[3].clone()] {
            let q = p.q();
            let twisted = apply_operator(
                |y| {
                    let m = ((y / x).ln() / q.ln()).re.round() as i64;
                    qsum_closed(&p, lambda * q.powi(m), y).map(|e| e.value)
                },
                &p,
                x,
            )
            .unwrap();
            assert!(twisted.relative() < 1e-10);
            let plain = apply_operator(|y| qsum_closed(&p, lambda, y).map(|e| e.value), &p, x).unwrap();
            if p.k() == 1 {
                assert!(plain.relative() < 1e-10);
            } else {
                assert!(plain.relative() > 1e-7, "{}", plain.relative());
            }
        }
    }

    #[test]
    fn errors() {
        let p = families()[0].clone();
        assert!(matches!(fundamental_solution(&p, 0, c(1.0, 0.0)), Err(Error::Parameter(_))));
        assert!(matches!(fundamental_solution(&p, 1, c(0.01, 0.0)), Err(Error::OutOfRegion { .. })));
        assert!(matches!(fundamental_solution(&p, 1, c(2.0, 0.0)), Err(Error::PoleCollision { .. })));
        assert!(fundamental_solution(&p, 1, c(-2.0, 0.0)).is_ok());
        assert!(matches!(
            stokes_coefficients(&p, c(1.0, 1.0), c(0.25, 0.0)),
            Err(Error::PoleCollision { .. })
        ));
    }
}
