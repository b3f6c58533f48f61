//! `lo:hi:step` grids and mode lists.

use crate::{CliError, CliResult};

const MAX_POINTS: usize = 1_000_000;

fn decimals(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap_or("");
    mantissa.split_once('.').map_or(0, |(_, frac)| frac.len())
}

fn number(s: &str) -> CliResult<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("not a finite number: {s:?}")));
    }
    Ok(v)
}

/// `lo + i·step` for all i with `lo + i·step ≤ hi + step/2`, optionally
/// rounded to `digits` decimals.
pub fn grid(lo: f64, hi: f64, step: f64, digits: Option<usize>) -> Result<Vec<f64>, String> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
        return Err("range bounds must be finite".into());
    }
    if !(step > 0.0) {
        return Err("range step must be positive".into());
    }
    if hi < lo {
        return Err("range is reversed".into());
    }
    let n = ((hi - lo) / step + 0.5).floor();
    if n >= MAX_POINTS as f64 {
        return Err("range has too many points".into());
    }
    Ok((0..=n as usize)
        .map(|i| {
            let v = lo + i as f64 * step;
            match digits {
                Some(d) => format!("{v:.d$}").parse().unwrap_or(v),
                None => v,
            }
        })
        .collect())
}

/// Parse a single value or `lo:hi:step`. The grid is `lo + i·step` for all
/// i with `lo + i·step ≤ hi + step/2`, so `hi` is hit despite rounding. When
/// all three parts are plain decimals the points are rounded to the longest
/// decimal expansion among them.
pub fn parse_range(s: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![number(single)?]),
        [lo, hi, step] => {
            let exponent = parts.iter().any(|p| p.contains(['e', 'E']));
            let digits = parts.iter().map(|p| decimals(p)).max().unwrap_or(0);
            grid(number(lo)?, number(hi)?, number(step)?, (!exponent).then_some(digits))
                .map_err(|e| CliError::Usage(format!("{e} in {s:?}")))
        }
        _ => Err(CliError::Usage(format!("expected a number or lo:hi:step, got {s:?}"))),
    }
}

fn integer(s: &str) -> CliResult<i64> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("not an integer: {s:?}")))
}

/// Parse `m`, `lo:hi`, `lo:hi:step` or a comma-separated list of those.
pub fn parse_modes(s: &str) -> CliResult<Vec<i64>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [m] => out.push(integer(m)?),
            [lo, hi] | [lo, hi, _] => {
                let (l, h) = (integer(lo)?, integer(hi)?);
                let step = if parts.len() == 3 { integer(parts[2])? } else { 1 };
                if step <= 0 {
                    return Err(CliError::Usage(format!("mode step must be positive in {item:?}")));
                }
                if h < l {
                    return Err(CliError::Usage(format!("mode range {item:?} is reversed")));
                }
                out.extend((l..=h).step_by(step as usize));
            }
            _ => return Err(CliError::Usage(format!("bad mode list {s:?}"))),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
