//! CSV, JSON and terminal output.

use std::fmt::Write as _;
use std::fs;
use std::io::IsTerminal;
use std::path::Path;

use fiberspec::{SweepRow, SweepSummary};
use serde::Serialize;

use crate::{CliError, CliResult};

pub const SWEEP_HEADER: &str = "b,m,lambda,converged,n_used,residual";
pub const EFFECTIVE_HEADER: &str = "b,e_value,argmin_m";

/// Shortest decimal string that parses back to the same `f64`.
pub fn float(x: f64) -> String {
    if x == 0.0 {
        // No "-0" in files.
        return "0".to_string();
    }
    format!("{x}")
}

pub fn sweep_csv(rows: &[SweepRow<f64>]) -> String {
    let mut s = String::with_capacity(48 * (rows.len() + 1));
    s.push_str(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            float(r.b),
            r.m,
            float(r.lambda),
            r.converged,
            r.n_used,
            float(r.residual)
        );
    }
    s
}

pub fn effective_csv(rows: &[SweepSummary<f64>]) -> String {
    let mut s = String::with_capacity(32 * (rows.len() + 1));
    s.push_str(EFFECTIVE_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{}", float(r.b), float(r.e_value), r.argmin_m);
    }
    s
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn print_json<T: Serialize>(value: &T) {
    print!("{}", json(value));
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").map_or(true, |v| v.is_empty()) && std::io::stdout().is_terminal()
}

/// One line of a pass/fail table.
pub fn status_line(passed: bool, name: &str, detail: &str) -> String {
    let tag = match (passed, color_enabled()) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    format!("{tag}  {name:<48}  {detail}")
}
