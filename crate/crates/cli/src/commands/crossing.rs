use clap::Args;
use fiberspec::find_crossing;
use fiberspec::spectrum::trial_crossing_bound;
use serde::Serialize;

use crate::output::print_json;
use crate::{CliResult, RunConfig, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m_a: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub m_b: i64,
    /// Lower end of the bracket.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lo: f64,
    /// Upper end of the bracket [default: 16/(3π)].
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    m_a: i64,
    m_b: i64,
    bracket: (f64, f64),
    b0: f64,
    iterations: usize,
    lambda_a: f64,
    lambda_b: f64,
}

pub fn run(o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    let lo = super::finite("lo", o.lo)?;
    let hi = super::finite("hi", o.hi.unwrap_or_else(trial_crossing_bound))?;
    let c = find_crossing(o.m_a, o.m_b, (lo, hi), &cfg.solver)?;
    print_json(&Report {
        m_a: o.m_a,
        m_b: o.m_b,
        bracket: c.bracket_used,
        b0: c.b0,
        iterations: c.iterations,
        lambda_a: c.lambda_at_b0,
        lambda_b: c.lambda_other,
    });
    Ok(EXIT_OK)
}
