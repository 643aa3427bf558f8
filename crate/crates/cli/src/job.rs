//! The job description shared by flags and JSON job files.

use std::fmt;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default summation tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Convergent rφs at each point.
    Eval,
    /// θ_q at each point.
    Theta,
    /// Resummed value at each point.
    Qsum,
    /// Equation residuals of the resummed value and the solutions at infinity.
    Verify,
    /// Stokes coefficients of the resummed value.
    Stokes,
    /// q → 1 comparison with the classical Borel sum.
    LimitScan,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Eval => "eval",
            Command::Theta => "theta",
            Command::Qsum => "qsum",
            Command::Verify => "verify",
            Command::Stokes => "stokes",
            Command::LimitScan => "limit-scan",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodTag {
    #[default]
    Direct,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputTag {
    #[default]
    Json,
    Csv,
}

/// Series parameters as written in a job: `q, a, b` for the q-side,
/// `alpha, beta` for the classical side. Validation happens when the job runs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ParamSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beta: Vec<Complex64>,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub params: ParamSpec,
    #[serde(default)]
    pub points: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Complex64>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub method: MethodTag,
    #[serde(default)]
    pub output: OutputTag,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q_list: Vec<f64>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            params: ParamSpec::default(),
            points: Vec::new(),
            lambda: None,
            tol: DEFAULT_TOL,
            method: MethodTag::default(),
            output: OutputTag::default(),
            q_list: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid job file: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job specs always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> JobSpec {
        let mut job = JobSpec::new(Command::Qsum);
        job.params.q = Some(Complex64::new(0.5, 0.0));
        job.params.a = vec![Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.1)];
        job.points = vec![Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.0)];
        job.lambda = Some(Complex64::new(1.0, 1.0));
        job.method = MethodTag::Both;
        job
    }

    #[test]
    fn json_round_trip() {
        let job = sample();
        let text = job.to_json();
        let back = JobSpec::from_json(&text).unwrap();
        assert_eq!(back, job);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn complex_values_are_pairs() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["lambda"], serde_json::json!([1.0, 1.0]));
        assert_eq!(v["params"]["a"][1], serde_json::json!([3.0, 0.1]));
        assert_eq!(v["command"], "qsum");
    }

    #[test]
    fn defaults_fill_in() {
        let job = JobSpec::from_json(r#"{"command": "limit-scan", "params": {"alpha": [[0.5, 0], [1.25, 0]]}}"#).unwrap();
        assert_eq!(job.command, Command::LimitScan);
        assert_eq!(job.tol, DEFAULT_TOL);
        assert_eq!(job.method, MethodTag::Direct);
        assert_eq!(job.output, OutputTag::Json);
        assert!(job.params.beta.is_empty());
        assert!(JobSpec::from_json(r#"{"command": "nope"}"#).is_err());
    }
}
