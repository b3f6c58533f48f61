use clap::Args;
use fiberspec::{classify_endpoint, frobenius_expansion, Endpoint, FrobeniusExpansion, ModeProblem, Verdict};
use serde::Serialize;

use crate::output::print_json;
use crate::{CliResult, RunConfig, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Spectral parameter in the series (the verdict does not depend on it).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Number of series coefficients after a₀.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
}

#[derive(Serialize)]
pub(crate) struct EndpointReport {
    endpoint: &'static str,
    exponents: (f64, f64),
    verdict: &'static str,
    log_case: bool,
}

#[derive(Serialize)]
pub(crate) struct SeriesReport {
    pub exponent: f64,
    pub exponent_exact: String,
    pub coeffs_symbolic: Vec<String>,
    pub coeffs: Vec<f64>,
    pub resonance_order: Option<usize>,
    pub log_case: bool,
}

impl From<&FrobeniusExpansion> for SeriesReport {
    fn from(e: &FrobeniusExpansion) -> Self {
        Self {
            exponent: e.exponent_f64(),
            exponent_exact: e.exponent.to_string(),
            coeffs_symbolic: e.coeffs_symbolic.iter().map(|p| p.to_string()).collect(),
            coeffs: e.coeffs.clone(),
            resonance_order: e.resonance_order,
            log_case: e.log_case,
        }
    }
}

#[derive(Serialize)]
struct Report {
    m: i64,
    b: f64,
    endpoints: Vec<EndpointReport>,
    series: Vec<SeriesReport>,
}

pub fn run(o: &Opts, _cfg: &RunConfig) -> CliResult<i32> {
    let b = super::finite("b", o.b)?;
    let lambda = super::finite("lambda", o.lambda)?;
    let p = ModeProblem::new(o.m, b)?;
    let endpoints = [(Endpoint::Zero, "zero"), (Endpoint::Pi, "pi")]
        .into_iter()
        .map(|(e, name)| {
            let c = classify_endpoint(&p, e);
            EndpointReport {
                endpoint: name,
                exponents: c.exponents,
                verdict: match c.verdict {
                    Verdict::LimitPoint => "LimitPoint",
                    Verdict::LimitCircle => "LimitCircle",
                },
                log_case: c.log_case,
            }
        })
        .collect::<Vec<_>>();
    let (sp, sm) = endpoints[0].exponents;
    let roots: &[f64] = if sp == sm { &[sp] } else { &[sp, sm] };
    let series = roots
        .iter()
        .map(|&s| frobenius_expansion(&p, s, lambda, o.order).map(|e| SeriesReport::from(&e)))
        .collect::<Result<Vec<_>, _>>()?;
    print_json(&Report {
        m: o.m,
        b,
        endpoints,
        series,
    });
    Ok(EXIT_OK)
}
