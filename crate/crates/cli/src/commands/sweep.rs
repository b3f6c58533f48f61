use clap::Args;
use fiberspec::{sweep, ModeSet};
use log::warn;

use crate::config::Format;
use crate::output::{effective_csv, sweep_csv, write_file};
use crate::range::{parse_modes, parse_range};
use crate::{svg, CliResult, RunConfig, EXIT_FAIL, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {
    /// Field strengths: a value or lo:hi:step.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Modes: m, lo:hi or a comma-separated list.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "auto")]
    pub m: Option<String>,
    /// Scan m = 0..ceil(b)+1 at each b (the default without --m).
    #[arg(long)]
    pub auto: bool,
    /// Also write sweep.svg.
    #[arg(long)]
    pub svg: bool,
}

pub fn run(o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    let grid = parse_range(&o.b)?;
    let modes = match &o.m {
        Some(s) => ModeSet::Explicit(parse_modes(s)?),
        None => ModeSet::Auto,
    };
    let table = sweep(&grid, &modes, &cfg.solver)?;
    let mut written = Vec::new();
    if cfg.wants(Format::Csv) {
        let p = cfg.output_path("sweep.csv")?;
        write_file(&p, &sweep_csv(&table.rows))?;
        written.push(p);
        let p = cfg.output_path("effective.csv")?;
        write_file(&p, &effective_csv(&table.per_b))?;
        written.push(p);
    }
    if o.svg || cfg.wants(Format::Svg) {
        let p = cfg.output_path("sweep.svg")?;
        write_file(&p, &svg::render(&table.rows))?;
        written.push(p);
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    let unconverged = table.rows.iter().filter(|r| !r.converged).count();
    if unconverged > 0 {
        warn!("{unconverged} of {} rows did not converge", table.rows.len());
        return Ok(EXIT_FAIL);
    }
    Ok(EXIT_OK)
}
