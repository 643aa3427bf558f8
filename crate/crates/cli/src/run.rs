//! Executes a job and collects the report rows.

use num_complex::Complex64;
use qphi::classical::limit_scan_with;
use qphi::series::sum_phi;
use qphi::{
    apply_operator, fundamental_solution, qsum_closed, qsum_direct, stokes_coefficients, theta,
    ClassicalParams, Error, Method, PhiSeries, QBase, SeriesParams, SumControl, SumEvaluation,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::job::{Command, JobSpec, MethodTag, ParamSpec};

/// Version of the report layout.
pub const SCHEMA: u32 = 1;

/// Why a job did not produce a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad input: parameters, directions, points. Exit status 2.
    Validation(String),
    /// A summation gave up. Exit status 1.
    Convergence(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Convergence(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Convergence(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Convergence(e.to_string())
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Row {
    pub q: Complex64,
    pub x: Complex64,
    pub value: Complex64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole_proximity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_error: Option<f64>,
    /// Relative residual of the operator applied to the resummed value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Same, with the sample at `qᵐx` taken from the `[qᵐλ; p]`-sum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted_anchor_residual: Option<f64>,
    /// One entry per solution at infinity; null outside its region.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_residuals: Option<Vec<Option<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Complex64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Complex64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_value: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Command,
    pub params: ParamSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Complex64>,
    pub tol: f64,
    pub rows: Vec<Row>,
}

fn base(spec: &ParamSpec) -> Result<QBase, Failure> {
    let q = spec.q.ok_or_else(|| invalid("missing q"))?;
    Ok(QBase::new(q)?)
}

fn series_params(spec: &ParamSpec) -> Result<SeriesParams, Failure> {
    Ok(SeriesParams::new(base(spec)?, spec.a.clone(), spec.b.clone())?)
}

fn lambda(job: &JobSpec) -> Result<Complex64, Failure> {
    job.lambda
        .ok_or_else(|| invalid(format!("{} needs --lambda", job.command)))
}

fn methods(tag: MethodTag) -> &'static [Method] {
    match tag {
        MethodTag::Direct => &[Method::Direct],
        MethodTag::Closed => &[Method::Closed],
        MethodTag::Both => &[Method::Direct, Method::Closed],
    }
}

fn resum(params: &SeriesParams, method: Method, lambda: Complex64, x: Complex64, ctl: &SumControl) -> qphi::Result<SumEvaluation> {
    match method {
        Method::Direct => qsum_direct(params, lambda, x, ctl),
        Method::Closed => qsum_closed(params, lambda, x),
    }
}

fn eval_row(series: &PhiSeries, x: Complex64, ctl: &SumControl) -> Result<Vec<Row>, Failure> {
    let s = sum_phi(series, x, ctl)?;
    Ok(vec![Row {
        q: series.q().value(),
        x,
        value: s.value,
        terms_used: Some(s.terms_used),
        max_term: Some(s.max_term),
        ..Row::default()
    }])
}

fn theta_row(q: QBase, x: Complex64) -> Result<Vec<Row>, Failure> {
    Ok(vec![Row {
        q: q.value(),
        x,
        value: theta(q, x)?.value,
        ..Row::default()
    }])
}

fn sum_rows(params: &SeriesParams, tag: MethodTag, lambda: Complex64, x: Complex64, ctl: &SumControl) -> Result<Vec<Row>, Failure> {
    let evals = methods(tag)
        .iter()
        .map(|&m| resum(params, m, lambda, x, ctl))
        .collect::<qphi::Result<Vec<_>>>()?;
    let diff = match evals.as_slice() {
        [d, c] => Some((d.value - c.value).norm() / c.value.norm()),
        _ => None,
    };
    Ok(evals
        .iter()
        .map(|e| Row {
            q: params.q().value(),
            x,
            value: e.value,
            method: Some(e.method),
            terms_used: Some(e.terms_used),
            max_term: Some(e.max_term),
            pole_proximity: Some(e.pole_proximity),
            rel_error: diff,
            ..Row::default()
        })
        .collect())
}

fn verify_rows(params: &SeriesParams, tag: MethodTag, lambda: Complex64, x: Complex64, ctl: &SumControl) -> Result<Vec<Row>, Failure> {
    let q = params.q();
    let mut solution_residuals = Vec::with_capacity(params.r());
    for i in 1..=params.r() {
        match apply_operator(|y| fundamental_solution(params, i, y), params, x) {
            Ok(r) => solution_residuals.push(Some(r.relative())),
            Err(Error::OutOfRegion { .. }) | Err(Error::PoleCollision { .. }) => solution_residuals.push(None),
            Err(e) => return Err(e.into()),
        }
    }
    let mut rows = Vec::new();
    for &m in methods(tag) {
        let e = resum(params, m, lambda, x, ctl)?;
        let plain = apply_operator(|y| resum(params, m, lambda, y, ctl).map(|s| s.value), params, x)?;
        let shifted = apply_operator(
            |y| {
                let n = ((y / x).ln() / q.ln()).re.round() as i64;
                resum(params, m, lambda * q.powi(n), y, ctl).map(|s| s.value)
            },
            params,
            x,
        )?;
        rows.push(Row {
            q: q.value(),
            x,
            value: e.value,
            method: Some(m),
            terms_used: Some(e.terms_used),
            max_term: Some(e.max_term),
            pole_proximity: Some(e.pole_proximity),
            rel_error: Some(plain.relative()),
            residual: Some(plain.relative()),
            shifted_anchor_residual: Some(shifted.relative()),
            solution_residuals: Some(solution_residuals.clone()),
            ..Row::default()
        });
    }
    Ok(rows)
}

fn stokes_row(params: &SeriesParams, lambda: Complex64, x: Complex64) -> Result<Vec<Row>, Failure> {
    let d = stokes_coefficients(params, lambda, x)?;
    Ok(vec![Row {
        q: params.q().value(),
        x,
        value: d.recombined,
        method: Some(Method::Closed),
        coefficients: Some(d.coefficients),
        solutions: Some(d.solutions),
        ..Row::default()
    }])
}

fn scan_rows(params: &ClassicalParams, lambda: Complex64, x: Complex64, q_list: &[f64], ctl: &SumControl) -> Result<Vec<Row>, Failure> {
    Ok(limit_scan_with(params, lambda, x, q_list, ctl)?
        .into_iter()
        .map(|r| Row {
            q: Complex64::new(r.q, 0.0),
            x,
            value: r.qsum_value,
            rel_error: Some(r.rel_error),
            classical_value: Some(r.classical_value),
            ..Row::default()
        })
        .collect())
}

/// Evaluates every point in parallel and keeps the input order.
fn per_point<F>(points: &[Complex64], f: F) -> Result<Vec<Row>, Failure>
where
    F: Fn(Complex64) -> Result<Vec<Row>, Failure> + Sync,
{
    let results: Vec<Result<Vec<Row>, Failure>> = points.par_iter().map(|&x| f(x)).collect();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Runs a job. `max_terms` caps every summation when given.
pub fn execute(job: &JobSpec, max_terms: Option<usize>) -> Result<Report, Failure> {
    if !(job.tol > 0.0 && job.tol.is_finite()) {
        return Err(invalid(format!("tol must be positive and finite, got {}", job.tol)));
    }
    if job.points.is_empty() {
        return Err(invalid("no evaluation points; pass --x"));
    }
    let mut ctl = SumControl::new(job.tol);
    if let Some(n) = max_terms {
        ctl = ctl.with_max_terms(n);
    }
    let spec = &job.params;
    let rows = match job.command {
        Command::Eval => {
            let series = PhiSeries::new(base(spec)?, spec.a.clone(), spec.b.clone())?;
            per_point(&job.points, |x| eval_row(&series, x, &ctl))?
        }
        Command::Theta => {
            let q = base(spec)?;
            per_point(&job.points, |x| theta_row(q, x))?
        }
        Command::Qsum => {
            let (params, lambda) = (series_params(spec)?, lambda(job)?);
            per_point(&job.points, |x| sum_rows(&params, job.method, lambda, x, &ctl))?
        }
        Command::Verify => {
            let (params, lambda) = (series_params(spec)?, lambda(job)?);
            per_point(&job.points, |x| verify_rows(&params, job.method, lambda, x, &ctl))?
        }
        Command::Stokes => {
            let (params, lambda) = (series_params(spec)?, lambda(job)?);
            per_point(&job.points, |x| stokes_row(&params, lambda, x))?
        }
        Command::LimitScan => {
            let params = ClassicalParams::new(spec.alpha.clone(), spec.beta.clone())?;
            let lambda = lambda(job)?;
            if job.q_list.is_empty() {
                return Err(invalid("limit-scan needs --q-list"));
            }
            per_point(&job.points, |x| scan_rows(&params, lambda, x, &job.q_list, &ctl))?
        }
    };
    Ok(Report {
        schema: SCHEMA,
        command: job.command,
        params: spec.clone(),
        lambda: job.lambda,
        tol: job.tol,
        rows,
    })
}
