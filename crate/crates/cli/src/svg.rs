//! λ_m(b) line chart, 800×600, written by hand.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fiberspec::SweepRow;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Solid for m ∈ {0, 1}, dotted for m ≥ 2, dashed for m < 0.
pub fn dash_pattern(m: i64) -> Option<&'static str> {
    match m {
        0 | 1 => None,
        m if m >= 2 => Some("2,4"),
        _ => Some("8,5"),
    }
}

fn color(m: i64) -> &'static str {
    PALETTE[m.rem_euclid(PALETTE.len() as i64) as usize]
}

/// Round `span / 5` up to 1, 2 or 5 times a power of ten.
fn tick_step(span: f64) -> f64 {
    let raw = (span / 5.0).max(1e-12);
    let mag = 10f64.powf(raw.log10().floor());
    let rel = raw / mag;
    let nice = if rel <= 1.0 {
        1.0
    } else if rel <= 2.0 {
        2.0
    } else if rel <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> (f64, f64, Vec<f64>) {
    let step = tick_step(hi - lo);
    let start = (lo / step).floor() * step;
    let end = (hi / step).ceil() * step;
    let n = ((end - start) / step).round() as usize;
    let ts = (0..=n).map(|i| start + i as f64 * step).collect();
    (start, end, ts)
}

fn label(v: f64, step: f64) -> String {
    let digits = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Render converged sweep rows as one polyline per mode.
pub fn render(rows: &[SweepRow<f64>]) -> String {
    let mut curves: BTreeMap<i64, Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.converged && r.lambda.is_finite()) {
        curves.entry(r.m).or_default().push((r.b, r.lambda));
    }
    for pts in curves.values_mut() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    let all = curves.values().flatten();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    if !xmin.is_finite() {
        (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
    }
    if xmax - xmin < 1e-12 {
        xmax = xmin + 1.0;
    }
    if ymax - ymin < 1e-12 {
        ymax = ymin + 1.0;
    }
    let (x0, x1, xt) = ticks(xmin, xmax);
    let (y0, y1, yt) = ticks(ymin.min(0.0), ymax);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="#000"/>"##
    );
    let xstep = tick_step(x1 - x0);
    for &t in &xt {
        let x = sx(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#000"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            label(t, xstep)
        );
    }
    let ystep = tick_step(y1 - y0);
    for &t in &yt {
        let y = sy(t);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT:.2}" y2="{y:.2}" stroke="#000"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            label(t, ystep)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">b</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">λ_m(b)</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );

    for (&m, pts) in &curves {
        let mut path = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let _ = write!(path, "{}{:.2},{:.2}", if i == 0 { "" } else { " " }, sx(x), sy(y));
        }
        let dash = dash_pattern(m).map_or(String::new(), |d| format!(r#" stroke-dasharray="{d}""#));
        let _ = writeln!(
            s,
            r#"<polyline class="mode" data-m="{m}" points="{path}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
            color(m)
        );
    }

    let lx = WIDTH - RIGHT + 20.0;
    for (i, &m) in curves.keys().enumerate() {
        let y = TOP + 15.0 + 20.0 * i as f64;
        let dash = dash_pattern(m).map_or(String::new(), |d| format!(r#" stroke-dasharray="{d}""#));
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.5"{dash}/><text x="{:.2}" y="{:.2}">m = {m}</text>"#,
            lx + 30.0,
            color(m),
            lx + 38.0,
            y + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}
