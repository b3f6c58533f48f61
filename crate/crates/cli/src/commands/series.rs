use clap::Args;
use fiberspec::{frobenius_expansion, ModeProblem};
use serde::Serialize;

use super::classify::SeriesReport;
use crate::output::print_json;
use crate::{CliResult, RunConfig, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Indicial root ½ ± |m|.
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    /// Evaluate the truncated series (w, w', w'') at this θ.
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    m: i64,
    b: f64,
    lambda: f64,
    #[serde(flatten)]
    series: SeriesReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<(f64, f64, f64, f64)>,
}

pub fn run(o: &Opts, _cfg: &RunConfig) -> CliResult<i32> {
    let b = super::finite("b", o.b)?;
    let e = frobenius_expansion(&ModeProblem::new(o.m, b)?, o.s, o.lambda, o.order)?;
    let value = match o.theta {
        Some(t) if t > 0.0 && t.is_finite() => {
            let (w, dw, d2w) = e.eval(t);
            Some((t, w, dw, d2w))
        }
        Some(t) => return Err(crate::CliError::Usage(format!("--theta must be positive, got {t}"))),
        None => None,
    };
    print_json(&Report {
        m: o.m,
        b,
        lambda: o.lambda,
        series: SeriesReport::from(&e),
        value,
    });
    Ok(EXIT_OK)
}
