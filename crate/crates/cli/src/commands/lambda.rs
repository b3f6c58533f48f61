use clap::Args;
use fiberspec::{solve_mode, ModeProblem};
use serde::Serialize;

use crate::output::print_json;
use crate::{CliResult, RunConfig, EXIT_FAIL, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Serialize)]
struct Report {
    m: i64,
    b: f64,
    lambda: f64,
    n_used: usize,
    residual: f64,
    converged: bool,
}

pub fn run(o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    let b = super::finite("b", o.b)?;
    let pair = solve_mode(&ModeProblem::new(o.m, b)?, &cfg.solver)?;
    print_json(&Report {
        m: o.m,
        b,
        lambda: pair.lambda,
        n_used: pair.n_used,
        residual: pair.residual,
        converged: pair.converged,
    });
    Ok(if pair.converged { EXIT_OK } else { EXIT_FAIL })
}
