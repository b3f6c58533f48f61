//! Independent oracles shared by the integration tests. Nothing here calls
//! the Galerkin solver or the Frobenius recurrence.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let q_safe = if q.abs() < 1e-300 { 1e-300_f64.copysign(q) } else { q };
        q = d[i] - x - e[i - 1] * e[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue of a symmetric tridiagonal matrix by bisection.
pub fn tridiagonal_min_eigenvalue(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Flux-form finite differences on a cell-centered θ grid for
/// `-(sin θ u')' + sin θ (m/sin θ - b/2)² u = λ sin θ u`, symmetrized with
/// `w_i = sin^{1/2}(θ_i) u_i`, the discrete Liouville variable. The face
/// coefficient sin θ vanishes at both ends, so no boundary rows are imposed.
pub fn fd_lambda(m: i64, b: f64, cells: usize) -> f64 {
    let h = PI / cells as f64;
    let h2 = h * h;
    let centers: Vec<f64> = (0..cells).map(|i| (i as f64 + 0.5) * h).collect();
    let faces: Vec<f64> = (0..=cells).map(|i| (i as f64 * h).sin()).collect();
    let r: Vec<f64> = centers.iter().map(|t| t.sin()).collect();
    let d: Vec<f64> = (0..cells)
        .map(|i| {
            let v = m as f64 / r[i] - b / 2.0;
            ((faces[i] + faces[i + 1]) / h2 + r[i] * v * v) / r[i]
        })
        .collect();
    let e: Vec<f64> = (0..cells - 1)
        .map(|i| -faces[i + 1] / h2 / (r[i] * r[i + 1]).sqrt())
        .collect();
    tridiagonal_min_eigenvalue(&d, &e)
}

/// Richardson extrapolation of the O(h²) scheme over 2000 and 4000 cells.
pub fn fd_oracle(m: i64, b: f64) -> f64 {
    let coarse = fd_lambda(m, b, 2000);
    let fine = fd_lambda(m, b, 4000);
    (4.0 * fine - coarse) / 3.0
}

/// b₀ with `fd_oracle(1, b) = b²/4`, by bisection.
pub fn fd_crossing(lo: f64, hi: f64) -> f64 {
    let g = |b: f64| fd_oracle(1, b) - b * b / 4.0;
    let (mut lo, mut hi) = (lo, hi);
    let g_lo = g(lo);
    assert!(g_lo * g(hi) < 0.0);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn simpson_rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    // Split first so symmetric integrands cannot fool the initial estimate.
    let pieces = 16;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
            let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            simpson_rec(f, x0, x1, f0, fm, f1, whole, (tol / pieces as f64).max(1e-17), 20)
        })
        .sum()
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn poly_derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect()
}

/// Associated Legendre function from Rodrigues' formula without the
/// Condon–Shortley phase, normalized numerically in L²(-1, 1).
pub fn rodrigues_assoc_legendre(ell: usize, m: usize, x: f64) -> f64 {
    // (x² - 1)^ℓ by repeated multiplication.
    let mut p = vec![1.0];
    for _ in 0..ell {
        let mut next = vec![0.0; p.len() + 2];
        for (k, &a) in p.iter().enumerate() {
            next[k] -= a;
            next[k + 2] += a;
        }
        p = next;
    }
    for _ in 0..ell + m {
        p = poly_derivative(&p);
    }
    let fact: f64 = (1..=ell).map(|k| k as f64).product();
    let scale = 1.0 / (2f64.powi(ell as i32) * fact);
    let raw = |t: f64| scale * (1.0 - t * t).powf(m as f64 / 2.0) * poly_eval(&p, t);
    // Squared function is the polynomial (1 - t²)^m p(t)², integrated by monomials.
    let mut sq = vec![0.0; 2 * p.len().max(1)];
    for (i, &a) in p.iter().enumerate() {
        for (j, &c) in p.iter().enumerate() {
            sq[i + j] += a * c;
        }
    }
    for _ in 0..m {
        let mut next = vec![0.0; sq.len() + 2];
        for (k, &a) in sq.iter().enumerate() {
            next[k] += a;
            next[k + 2] -= a;
        }
        sq = next;
    }
    let norm2: f64 = sq
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 0)
        .map(|(k, &a)| 2.0 * a / (k as f64 + 1.0))
        .sum::<f64>()
        * scale
        * scale;
    raw(x) / norm2.sqrt()
}

/// Integrate `w'' = (q̂(θ) - λ) w` from θ = 1 down to `theta_end` with RK4 in
/// the variable x = ln θ. Returns `(θ, w, dw/dθ)` samples at each decade.
pub fn integrate_liouville_to_zero(
    qhat: &dyn Fn(f64) -> f64,
    lambda: f64,
    w1: f64,
    dw1: f64,
    theta_end: f64,
    steps_per_unit: usize,
) -> Vec<(f64, f64, f64)> {
    // y(x) = w(e^x): y'' - y' = θ² (q̂ - λ) y.
    let rhs = |x: f64, y: f64, yp: f64| -> (f64, f64) {
        let t = x.exp();
        (yp, yp + t * t * (qhat(t) - lambda) * y)
    };
    let x_end = theta_end.ln();
    let n = (x_end.abs() * steps_per_unit as f64).ceil() as usize;
    let h = x_end / n as f64;
    let (mut x, mut y, mut yp) = (0.0, w1, dw1);
    let mut out = Vec::new();
    let mut next_decade = 0.1;
    for _ in 0..n {
        let (k1y, k1p) = rhs(x, y, yp);
        let (k2y, k2p) = rhs(x + h / 2.0, y + h / 2.0 * k1y, yp + h / 2.0 * k1p);
        let (k3y, k3p) = rhs(x + h / 2.0, y + h / 2.0 * k2y, yp + h / 2.0 * k2p);
        let (k4y, k4p) = rhs(x + h, y + h * k3y, yp + h * k3p);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        x += h;
        let t = x.exp();
        if t <= next_decade * (1.0 + 1e-9) {
            out.push((t, y, yp / t));
            next_decade /= 10.0;
        }
    }
    out
}

/// Uniform grid lo, lo + step, …, hi (inclusive within half a step).
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 0.5).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}
