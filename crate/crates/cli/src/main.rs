//! `qphi`: resummation of divergent basic hypergeometric series from the
//! command line.

mod complex;
mod job;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use complex::{parse_complex, parse_complex_list, parse_real_list};
use job::{Command, JobSpec, MethodTag, OutputTag, DEFAULT_TOL};
use run::{execute, Failure};

/// Environment variable capping the number of terms of every summation.
const MAX_TERMS_ENV: &str = "QSUM_MAX_TERMS";

#[derive(Parser)]
#[command(name = "qphi", version, about = "Resummation of divergent basic hypergeometric series")]
struct Cli {
    /// Run a JSON job file instead of a subcommand.
    #[arg(long, value_name = "FILE")]
    job: Option<PathBuf>,
    /// Print the job as JSON and exit without running it.
    #[arg(long)]
    dump_job: bool,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Subcommand)]
enum Sub {
    /// Evaluate a convergent rφs (any r, s) at each --x.
    Eval(Flags),
    /// Evaluate θ_q at each --x.
    Theta(Flags),
    /// Resummed value of rφs along [λ; p].
    Qsum(Flags),
    /// Operator residuals of the resummed value and the solutions at infinity.
    Verify(Flags),
    /// Stokes coefficients of the resummed value.
    Stokes(Flags),
    /// Compare the q-side with the classical Borel sum as q → 1.
    LimitScan(Flags),
}

#[derive(Args)]
struct Flags {
    /// Base q (re,im or a+bi).
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Upper parameters, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Lower parameters, comma separated; "" for none.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Classical upper parameters.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Classical lower parameters.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Summation direction λ.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Evaluation point; repeat for several.
    #[arg(long = "x", allow_hyphen_values = true)]
    x: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t)]
    method: MethodTag,
    #[arg(long, value_enum, default_value_t)]
    output: OutputTag,
    /// Real bases for limit-scan, comma separated.
    #[arg(long = "q-list", allow_hyphen_values = true)]
    q_list: Option<String>,
}

impl Sub {
    fn split(self) -> (Command, Flags) {
        match self {
            Sub::Eval(f) => (Command::Eval, f),
            Sub::Theta(f) => (Command::Theta, f),
            Sub::Qsum(f) => (Command::Qsum, f),
            Sub::Verify(f) => (Command::Verify, f),
            Sub::Stokes(f) => (Command::Stokes, f),
            Sub::LimitScan(f) => (Command::LimitScan, f),
        }
    }
}

fn job_from_flags(command: Command, f: Flags) -> Result<JobSpec, String> {
    let list = |s: &Option<String>| s.as_deref().map(parse_complex_list).transpose().map(Option::unwrap_or_default);
    let mut job = JobSpec::new(command);
    job.params.q = f.q.as_deref().map(parse_complex).transpose()?;
    job.params.a = list(&f.a)?;
    job.params.b = list(&f.b)?;
    job.params.alpha = list(&f.alpha)?;
    job.params.beta = list(&f.beta)?;
    job.lambda = f.lambda.as_deref().map(parse_complex).transpose()?;
    job.points = f.x.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
    job.tol = f.tol;
    job.method = f.method;
    job.output = f.output;
    job.q_list = f.q_list.as_deref().map(parse_real_list).transpose()?.unwrap_or_default();
    Ok(job)
}

fn max_terms() -> Result<Option<usize>, String> {
    match std::env::var(MAX_TERMS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("{MAX_TERMS_ENV} must be a positive integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn load(cli: Cli) -> Result<(JobSpec, bool), String> {
    let job = match (cli.job, cli.command) {
        (Some(_), Some(_)) => return Err("--job cannot be combined with a subcommand".into()),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            JobSpec::from_json(&text)?
        }
        (None, Some(sub)) => {
            let (command, flags) = sub.split();
            job_from_flags(command, flags)?
        }
        (None, None) => return Err("give a subcommand or --job FILE (see --help)".into()),
    };
    Ok((job, cli.dump_job))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (job, dump) = match load(cli) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if dump {
        println!("{}", job.to_json());
        return ExitCode::SUCCESS;
    }
    let outcome = max_terms().map_err(Failure::Validation).and_then(|cap| execute(&job, cap));
    match outcome {
        Ok(report) => {
            let text = match job.output {
                OutputTag::Json => report::render_json(&report),
                OutputTag::Csv => report::render_csv(&report),
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_build_the_job() {
        let cli = Cli::try_parse_from([
            "qphi", "qsum", "--q", "0.5", "--a", "2,3", "--b", "", "--lambda", "-1+0.5i", "--x", "-0.2,0.1", "--x", "1i",
            "--method", "both", "--output", "csv",
        ])
        .unwrap();
        let (job, dump) = load(cli).unwrap();
        assert!(!dump);
        assert_eq!(job.command, Command::Qsum);
        assert_eq!(job.params.a.len(), 2);
        assert!(job.params.b.is_empty());
        assert_eq!(job.lambda, Some(num_complex::Complex64::new(-1.0, 0.5)));
        assert_eq!(job.points.len(), 2);
        assert_eq!(job.method, MethodTag::Both);
        assert_eq!(job.output, OutputTag::Csv);
        assert_eq!(job.tol, DEFAULT_TOL);
    }

    #[test]
    fn bad_numbers_are_reported() {
        let cli = Cli::try_parse_from(["qphi", "theta", "--q", "half", "--x", "1"]).unwrap();
        assert!(load(cli).unwrap_err().contains("half"));
    }
}
