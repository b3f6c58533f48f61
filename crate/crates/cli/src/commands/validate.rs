use std::f64::consts::{LN_2, PI};

use clap::Args;
use fiberspec::{gauss_chebyshev2, gauss_legendre, iterated_log_integral, solve_fixed, Basis, ModeProblem, SolverConfig64};

use crate::output::status_line;
use crate::{CliResult, RunConfig, EXIT_FAIL, EXIT_OK};

#[derive(Args, Debug)]
pub struct Opts {}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, error: f64, tol: f64) -> Check {
    Check {
        name: name.into(),
        passed: error <= tol,
        detail: format!("error {error:.1e} (tol {tol:.0e})"),
    }
}

/// Worst relative error of an n-point Gauss–Legendre rule on 1, x, …, x^{2n-1}.
fn legendre_exactness(n: usize) -> f64 {
    let rule = match gauss_legendre::<f64>(n) {
        Ok(r) => r,
        Err(_) => return f64::INFINITY,
    };
    (0..2 * n)
        .map(|k| {
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            (rule.integrate(|x| x.powi(k as i32)) - exact).abs() / exact.abs().max(1e-3)
        })
        .fold(0.0, f64::max)
}

/// Same for Gauss–Chebyshev of the second kind against the weight √(1 - x²).
fn chebyshev_exactness(n: usize) -> f64 {
    let rule = match gauss_chebyshev2::<f64>(n) {
        Ok(r) => r,
        Err(_) => return f64::INFINITY,
    };
    let mut even = PI / 2.0;
    (0..2 * n)
        .map(|k| {
            let exact = if k % 2 == 0 { even } else { 0.0 };
            if k % 2 == 0 {
                let j = (k / 2) as f64;
                even *= (2.0 * j + 1.0) / (2.0 * j + 4.0);
            }
            (rule.integrate(|x| x.powi(k as i32)) - exact).abs() / exact.abs().max(1e-3)
        })
        .fold(0.0, f64::max)
}

fn zero_field_error(basis: Basis) -> f64 {
    let cfg = SolverConfig64 {
        basis,
        ..SolverConfig64::default()
    };
    (-4i64..=4)
        .map(|m| {
            let k = m.unsigned_abs() as f64;
            match ModeProblem::new(m, 0.0).and_then(|p| solve_fixed(&p, 16, &cfg)) {
                Ok(r) => (r.lambda - k * (k + 1.0)).abs(),
                Err(_) => f64::INFINITY,
            }
        })
        .fold(0.0, f64::max)
}

pub fn run(_o: &Opts, cfg: &RunConfig) -> CliResult<i32> {
    let mut checks = Vec::new();
    for n in [4, 16, 64] {
        checks.push(check(format!("Gauss-Legendre n={n} exact to degree {}", 2 * n - 1), legendre_exactness(n), 1e-12));
    }
    for n in [4, 16, 64] {
        checks.push(check(
            format!("Gauss-Chebyshev-2 n={n} exact to degree {}", 2 * n - 1),
            chebyshev_exactness(n),
            1e-12,
        ));
    }
    checks.push(check(
        "angular basis: lambda_m(0) = |m|(|m|+1)",
        zero_field_error(Basis::AngularPolynomial),
        1e-8,
    ));
    checks.push(check(
        "legendre basis: lambda_m(0) = |m|(|m|+1)",
        zero_field_error(Basis::AssociatedLegendre),
        1e-8,
    ));
    let b = 1.3;
    let l0 = ModeProblem::new(0, b)
        .and_then(|p| solve_fixed(&p, cfg.solver.n_initial, &cfg.solver))
        .map_or(f64::INFINITY, |r| (r.lambda - b * b / 4.0).abs());
    checks.push(check("lambda_0(1.3) = 1.3^2/4", l0, 1e-10));
    let ln2 = iterated_log_integral::<f64>(64).map_or(f64::INFINITY, |v| (v - LN_2).abs());
    checks.push(check("iterated log integral = ln 2", ln2, 1e-10));

    let passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        println!("{}", status_line(c.passed, &c.name, &c.detail));
    }
    println!("{}", status_line(passed, "overall", ""));
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}
