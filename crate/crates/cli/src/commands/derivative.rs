use clap::Args;
use fiberspec::{hf_derivative, solve_mode, ModeProblem};
use serde::Serialize;

use crate::output::print_json;
use crate::{CliError, CliResult, RunConfig, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Also report the central difference with this step.
    #[arg(long)]
    pub check_h: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    m: i64,
    b: f64,
    derivative: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    central_difference: Option<f64>,
}

pub fn run(o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    let b = super::finite("b", o.b)?;
    let derivative = hf_derivative(&ModeProblem::new(o.m, b)?, &cfg.solver)?;
    let central_difference = match o.check_h {
        Some(h) if h > 0.0 && h.is_finite() => {
            let at = |x: f64| -> CliResult<f64> {
                let p = solve_mode(&ModeProblem::new(o.m, x)?, &cfg.solver)?;
                if !p.converged {
                    return Err(CliError::Failed(format!("lambda_{}({x}) did not converge", o.m)));
                }
                Ok(p.lambda)
            };
            Some((at(b + h)? - at(b - h)?) / (2.0 * h))
        }
        Some(h) => return Err(CliError::Usage(format!("--check-h must be positive, got {h}"))),
        None => None,
    };
    print_json(&Report {
        m: o.m,
        b,
        derivative,
        central_difference,
    });
    Ok(EXIT_OK)
}
