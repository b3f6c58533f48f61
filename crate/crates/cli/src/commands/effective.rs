use clap::Args;
use fiberspec::{effective_eigenvalue, SweepSummary};
use serde::Serialize;

use crate::config::Format;
use crate::output::{effective_csv, print_json, write_file};
use crate::range::parse_range;
use crate::{CliResult, RunConfig, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    /// A value, or lo:hi:step to write effective.csv.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Serialize)]
struct Mode {
    m: i64,
    lambda: f64,
    n_used: usize,
    converged: bool,
}

#[derive(Serialize)]
struct Report {
    b: f64,
    e_value: f64,
    argmin_m: i64,
    per_mode: Vec<Mode>,
}

pub fn run(o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    let grid = parse_range(&o.b)?;
    if let [b] = grid[..] {
        let e = effective_eigenvalue(b, &cfg.solver)?;
        print_json(&Report {
            b,
            e_value: e.e_value,
            argmin_m: e.argmin_m,
            per_mode: e
                .per_mode
                .iter()
                .map(|(m, p)| Mode {
                    m: *m,
                    lambda: p.lambda,
                    n_used: p.n_used,
                    converged: p.converged,
                })
                .collect(),
        });
        return Ok(EXIT_OK);
    }
    let rows = grid
        .iter()
        .map(|&b| {
            effective_eigenvalue(b, &cfg.solver).map(|e| SweepSummary {
                b,
                e_value: e.e_value,
                argmin_m: e.argmin_m,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let text = effective_csv(&rows);
    if cfg.wants(Format::Csv) {
        let p = cfg.output_path("effective.csv")?;
        write_file(&p, &text)?;
        println!("wrote {}", p.display());
    } else {
        print!("{text}");
    }
    Ok(EXIT_OK)
}
