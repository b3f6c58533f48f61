use std::f64::consts::LN_2;

use clap::Args;
use fiberspec::spectrum::trial_crossing_bound;
use fiberspec::{find_crossing, inequality_suite, iterated_log_integral, monotonicity_report, MonotonicityReport64};
use serde::Serialize;

use crate::config::Format;
use crate::output::{float, json, status_line, write_file};
use crate::range::grid;
use crate::{CliError, CliResult, RunConfig, EXIT_FAIL, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    /// Right end of the grid [0, b_max] for 𝔢.
    #[arg(long, default_value_t = 2.0)]
    pub b_max: f64,
    #[arg(long, default_value_t = 0.02)]
    pub grid_step: f64,
    /// Grid step for the pointwise inequality families.
    #[arg(long, default_value_t = 0.05)]
    pub inequality_step: f64,
}

const LN2_TOL: f64 = 1e-10;
const CROSSING_TOL: f64 = 1e-7;

#[derive(Serialize)]
struct Item {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct Witness {
    b: f64,
    delta: f64,
    e_before: f64,
    e_after: f64,
}

#[derive(Serialize)]
struct Monotonicity {
    non_monotonic: bool,
    witness: Option<Witness>,
    decreasing_intervals: Vec<(f64, f64)>,
    increasing_intervals: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct Crossing {
    b0: f64,
    bracket: (f64, f64),
    lambda_0: f64,
    lambda_1: f64,
}

#[derive(Serialize)]
struct Report {
    b_max: f64,
    grid_step: f64,
    passed: bool,
    items: Vec<Item>,
    monotonicity: Option<Monotonicity>,
    crossing: Option<Crossing>,
}

fn failed(name: &str, e: impl std::fmt::Display) -> Item {
    Item {
        name: name.to_string(),
        passed: false,
        detail: format!("error: {e}"),
    }
}

fn monotonicity_items(r: &MonotonicityReport64, items: &mut Vec<Item>) {
    let detail = match &r.witness {
        Some(w) => format!(
            "e({}) = {} > e({}) = {}",
            float(w.b),
            float(w.e_before),
            float(w.b + w.delta),
            float(w.e_after)
        ),
        None => "no strict decrease on the grid".to_string(),
    };
    items.push(Item {
        name: "e(b) is non-monotonic".into(),
        passed: r.non_monotonic,
        detail,
    });
    let below_one: Vec<usize> = (1..r.grid.len()).filter(|&i| r.grid[i] < 1.0).collect();
    let increasing = below_one.iter().all(|&i| r.e_values[i] > r.e_values[i - 1]);
    items.push(Item {
        name: "e(b) increasing on [0,1)".into(),
        passed: increasing,
        detail: format!("{} grid steps checked", below_one.len()),
    });
}

pub fn run(o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    if !(o.b_max > 0.0) || !o.b_max.is_finite() {
        return Err(CliError::Usage(format!("--b-max must be positive, got {}", o.b_max)));
    }
    if !(o.inequality_step > 0.0) || !o.inequality_step.is_finite() {
        return Err(CliError::Usage("--inequality-step must be positive".into()));
    }
    let b_grid = grid(0.0, o.b_max, o.grid_step, Some(12)).map_err(|e| CliError::Usage(format!("--grid-step: {e}")))?;
    if b_grid.len() < 3 {
        return Err(CliError::Usage("the grid needs at least three points".into()));
    }

    let mut items = Vec::new();
    let mut monotonicity = None;
    match monotonicity_report(&b_grid, &cfg.solver) {
        Ok(r) => {
            monotonicity_items(&r, &mut items);
            monotonicity = Some(Monotonicity {
                non_monotonic: r.non_monotonic,
                witness: r.witness.as_ref().map(|w| Witness {
                    b: w.b,
                    delta: w.delta,
                    e_before: w.e_before,
                    e_after: w.e_after,
                }),
                decreasing_intervals: r.decreasing_intervals.clone(),
                increasing_intervals: r.increasing_intervals.clone(),
            });
        }
        Err(e) => items.push(failed("e(b) is non-monotonic", e)),
    }

    let bound: f64 = trial_crossing_bound();
    let mut crossing = None;
    let name = "lambda_0 = lambda_1 at b0 < 16/(3 pi)";
    match find_crossing(0, 1, (1.0, bound), &cfg.solver) {
        Ok(c) => {
            let gap = (c.lambda_at_b0 - c.lambda_other).abs();
            items.push(Item {
                name: name.into(),
                passed: gap <= CROSSING_TOL && c.b0 < bound,
                detail: format!("b0 = {}, |gap| = {:.1e}", float(c.b0), gap),
            });
            crossing = Some(Crossing {
                b0: c.b0,
                bracket: c.bracket_used,
                lambda_0: c.lambda_at_b0,
                lambda_1: c.lambda_other,
            });
        }
        Err(e) => items.push(failed(name, e)),
    }

    match inequality_suite(o.inequality_step, &cfg.solver) {
        Ok(checks) => items.extend(checks.into_iter().map(|c| Item {
            name: c.name.to_string(),
            passed: c.passed,
            detail: format!(
                "{} cases, worst margin {:.3e} at m = {}, b = {}",
                c.cases,
                c.worst_margin,
                c.worst_at.0,
                float(c.worst_at.1)
            ),
        })),
        Err(e) => items.push(failed("inequality suite", e)),
    }

    let name = "iterated log integral = ln 2";
    match iterated_log_integral::<f64>(64) {
        Ok(v) => items.push(Item {
            name: name.into(),
            passed: (v - LN_2).abs() <= LN2_TOL,
            detail: format!("{} (error {:.1e})", float(v), (v - LN_2).abs()),
        }),
        Err(e) => items.push(failed(name, e)),
    }

    let passed = items.iter().all(|i| i.passed);
    for i in &items {
        println!("{}", status_line(i.passed, &i.name, &i.detail));
    }
    println!("{}", status_line(passed, "overall", ""));
    if cfg.wants(Format::Json) {
        let report = Report {
            b_max: o.b_max,
            grid_step: o.grid_step,
            passed,
            items,
            monotonicity,
            crossing,
        };
        let p = cfg.output_path("certify.json")?;
        write_file(&p, &json(&report))?;
        println!("wrote {}", p.display());
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}
