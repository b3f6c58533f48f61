//! Analysis built on λ_m(b): the effective eigenvalue 𝔢(b) = inf_m λ_m(b),
//! parameter sweeps, the λ₀/λ₁ crossing, the Hellmann–Feynman derivative in
//! b, the non-monotonicity report, trial-function Rayleigh quotients and the
//! large-Robin-parameter composition.

use log::warn;
use rayon::prelude::*;

use crate::eigensolver::{solve_mode, Basis, EigenPair, GalerkinSystem, ModeProblem, SolverConfig};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::scalar::Real;

/// Differences below this are treated as flat when classifying monotonicity.
pub const MONOTONICITY_NOISE: f64 = 1e-9;

/// Bisection stops once the bracket is at most this wide.
pub const CROSSING_BRACKET_TOL: f64 = 1e-8;

/// `16 / (3π)`: above this b the trial function sin θ already puts λ₁ below λ₀.
pub fn trial_crossing_bound<T: Real>() -> T {
    T::lit(16.0) / (T::lit(3.0) * T::PI())
}

/// `q_{1,b}(sin θ) / ‖sin θ‖² = b²/4 - (3/8)πb + 2`.
pub fn sin_trial_quotient<T: Real>(b: T) -> T {
    b * b / T::lit(4.0) - T::lit(3.0) / T::lit(8.0) * T::PI() * b + T::lit(2.0)
}

/// Modes scanned for 𝔢(b): m = 0, …, ⌈b⌉ + 1. For m > b the potential is
/// at least (m - b/2)² > b²/4 = λ₀(b), and negative m always exceed λ₀.
pub fn auto_modes<T: Real>(b: T) -> Vec<i64> {
    let top = b.max(T::zero()).ceil().to_i64().unwrap_or(0) + 1;
    (0..=top).collect()
}

/// Index of the minimum of `(m, λ)` pairs with ties broken toward smaller |m|,
/// then toward non-negative m.
fn argmin<T: Real>(pairs: impl Iterator<Item = (i64, T)>) -> Option<(i64, T)> {
    pairs.fold(None, |best, (m, l)| match best {
        None => Some((m, l)),
        Some((bm, bl)) => {
            let better = l < bl
                || (l == bl && (m.abs(), m < 0) < (bm.abs(), bm < 0));
            if better {
                Some((m, l))
            } else {
                Some((bm, bl))
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveValue<T> {
    pub b: T,
    pub e_value: T,
    pub argmin_m: i64,
    /// Every scanned mode with its eigenpair.
    pub per_mode: Vec<(i64, EigenPair<T>)>,
}

/// 𝔢(b) over the automatically truncated mode range.
pub fn effective_eigenvalue<T: Real>(b: T, config: &SolverConfig<T>) -> Result<EffectiveValue<T>> {
    if !(b >= T::zero()) || !b.is_finite() {
        return Err(Error::invalid(format!("effective eigenvalue needs finite b >= 0, got {b}")));
    }
    config.validate()?;
    let per_mode: Vec<(i64, EigenPair<T>)> = auto_modes(b)
        .into_par_iter()
        .map(|m| solve_mode(&ModeProblem::new(m, b)?, config).map(|p| (m, p)))
        .collect::<Result<_>>()?;
    let failed: Vec<i64> = per_mode
        .iter()
        .filter(|(_, p)| !p.converged)
        .map(|(m, _)| *m)
        .collect();
    if !failed.is_empty() {
        return Err(Error::NotConverged {
            b: b.to_f64_lossy(),
            modes: failed,
        });
    }
    let (argmin_m, e_value) = argmin(per_mode.iter().map(|(m, p)| (*m, p.lambda)))
        .expect("at least two modes are scanned");
    Ok(EffectiveValue {
        b,
        e_value,
        argmin_m,
        per_mode,
    })
}

/// Which modes a sweep solves at each b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeSet {
    Explicit(Vec<i64>),
    /// The per-b range used by [`effective_eigenvalue`].
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub b: T,
    pub m: i64,
    pub lambda: T,
    pub converged: bool,
    pub n_used: usize,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary<T> {
    pub b: T,
    pub e_value: T,
    pub argmin_m: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable<T> {
    /// Ordered by b (grid order), then by m (ascending).
    pub rows: Vec<SweepRow<T>>,
    /// Minimum over the converged rows at each b, in grid order.
    pub per_b: Vec<SweepSummary<T>>,
}

impl<T: Real> SweepTable<T> {
    pub fn lambda(&self, b: T, m: i64) -> Option<T> {
        self.rows
            .iter()
            .find(|r| r.b == b && r.m == m)
            .map(|r| r.lambda)
    }

    /// Grid values of b where the minimizing mode changes, as
    /// `(b_before, b_after, m_before, m_after)`.
    pub fn argmin_switches(&self) -> Vec<(T, T, i64, i64)> {
        self.per_b
            .windows(2)
            .filter(|w| w[0].argmin_m != w[1].argmin_m)
            .map(|w| (w[0].b, w[1].b, w[0].argmin_m, w[1].argmin_m))
            .collect()
    }
}

/// Solve every (b, m) pair of the grid. Unconverged rows are kept and
/// flagged but do not enter the per-b minimum.
pub fn sweep<T: Real>(b_grid: &[T], modes: &ModeSet, config: &SolverConfig<T>) -> Result<SweepTable<T>> {
    if b_grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    if b_grid.iter().any(|b| !b.is_finite()) {
        return Err(Error::invalid("sweep grid contains non-finite values"));
    }
    if let ModeSet::Explicit(ms) = modes {
        if ms.is_empty() {
            return Err(Error::invalid("explicit mode set is empty"));
        }
    }
    config.validate()?;

    let jobs: Vec<(usize, T, i64)> = b_grid
        .iter()
        .enumerate()
        .flat_map(|(i, &b)| {
            let mut ms = match modes {
                ModeSet::Explicit(ms) => ms.clone(),
                ModeSet::Auto => auto_modes(b),
            };
            ms.sort_unstable();
            ms.dedup();
            ms.into_iter().map(move |m| (i, b, m))
        })
        .collect();

    let mut solved: Vec<(usize, SweepRow<T>)> = jobs
        .into_par_iter()
        .map(|(i, b, m)| {
            let pair = solve_mode(&ModeProblem::new(m, b)?, config)?;
            Ok((
                i,
                SweepRow {
                    b,
                    m,
                    lambda: pair.lambda,
                    converged: pair.converged,
                    n_used: pair.n_used,
                    residual: pair.residual,
                },
            ))
        })
        .collect::<Result<_>>()?;
    solved.sort_by_key(|(i, r)| (*i, r.m));

    let mut per_b = Vec::with_capacity(b_grid.len());
    for (i, &b) in b_grid.iter().enumerate() {
        let at_b = solved.iter().filter(|(j, _)| *j == i).map(|(_, r)| r);
        let unconverged: Vec<i64> = at_b.clone().filter(|r| !r.converged).map(|r| r.m).collect();
        if !unconverged.is_empty() {
            warn!("b = {b}: modes {unconverged:?} did not converge; excluded from the minimum");
        }
        match argmin(at_b.filter(|r| r.converged).map(|r| (r.m, r.lambda))) {
            Some((argmin_m, e_value)) => per_b.push(SweepSummary { b, e_value, argmin_m }),
            None => warn!("b = {b}: no converged mode, no summary row"),
        }
    }
    Ok(SweepTable {
        rows: solved.into_iter().map(|(_, r)| r).collect(),
        per_b,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingResult<T> {
    pub b0: T,
    pub bracket_used: (T, T),
    pub iterations: usize,
    /// λ_{m_a}(b0).
    pub lambda_at_b0: T,
    /// λ_{m_b}(b0).
    pub lambda_other: T,
}

fn converged_lambda<T: Real>(m: i64, b: T, config: &SolverConfig<T>) -> Result<T> {
    let p = solve_mode(&ModeProblem::new(m, b)?, config)?;
    if !p.converged {
        return Err(Error::NotConverged {
            b: b.to_f64_lossy(),
            modes: vec![m],
        });
    }
    Ok(p.lambda)
}

/// Locate b₀ with λ_{m_a}(b₀) = λ_{m_b}(b₀) by bisection inside `bracket`.
pub fn find_crossing<T: Real>(
    m_a: i64,
    m_b: i64,
    bracket: (T, T),
    config: &SolverConfig<T>,
) -> Result<CrossingResult<T>> {
    if m_a == m_b {
        return Err(Error::invalid("crossing needs two distinct modes"));
    }
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!("bracket [{lo}, {hi}] is not an interval")));
    }
    config.validate()?;
    let gap = |b: T| -> Result<(T, T)> {
        let la = converged_lambda(m_a, b, config)?;
        let lb = converged_lambda(m_b, b, config)?;
        Ok((la - lb, la))
    };
    let (g_lo, _) = gap(lo)?;
    let (g_hi, _) = gap(hi)?;
    if g_lo.signum() == g_hi.signum() && g_lo != T::zero() && g_hi != T::zero() {
        return Err(Error::Bracket {
            what: format!("lambda_{m_a} - lambda_{m_b}"),
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    let tol = T::lit(CROSSING_BRACKET_TOL);
    let mut iterations = 0;
    let mut sign_lo = g_lo.signum();
    if g_lo == T::zero() {
        hi = lo;
    } else if g_hi == T::zero() {
        lo = hi;
    }
    while hi - lo > tol {
        iterations += 1;
        let mid = (lo + hi) / T::lit(2.0);
        let (g, _) = gap(mid)?;
        if g == T::zero() {
            lo = mid;
            hi = mid;
            break;
        }
        if g.signum() == sign_lo {
            lo = mid;
            sign_lo = g.signum();
        } else {
            hi = mid;
        }
    }
    let b0 = (lo + hi) / T::lit(2.0);
    let la = converged_lambda(m_a, b0, config)?;
    let lb = converged_lambda(m_b, b0, config)?;
    Ok(CrossingResult {
        b0,
        bracket_used: bracket,
        iterations,
        lambda_at_b0: la,
        lambda_other: lb,
    })
}

/// dλ_m/db = b/2 - m ∫ |f|² dθ with f the normalized ground state, i.e.
/// `-∫ (m/sin θ - b/2) |f|² sin θ dθ`.
pub fn hf_derivative<T: Real>(problem: &ModeProblem<T>, config: &SolverConfig<T>) -> Result<T> {
    let pair = solve_mode(problem, config)?;
    if !pair.converged {
        return Err(Error::NotConverged {
            b: problem.b.to_f64_lossy(),
            modes: vec![problem.m],
        });
    }
    let sys = GalerkinSystem::assemble(problem.m, pair.n_used, config.basis, config.quad)?;
    Ok(problem.b / T::lit(2.0) - T::lit(problem.m as f64) * sys.coupling_expectation(&pair.coeffs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityWitness<T> {
    pub b: T,
    pub delta: T,
    pub e_before: T,
    pub e_after: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport<T> {
    pub grid: Vec<T>,
    pub e_values: Vec<T>,
    pub argmin_m: Vec<i64>,
    /// Maximal runs of consecutive grid points on which 𝔢 strictly decreases.
    pub decreasing_intervals: Vec<(T, T)>,
    pub increasing_intervals: Vec<(T, T)>,
    pub non_monotonic: bool,
    /// First adjacent pair on which 𝔢 drops by more than the noise level.
    pub witness: Option<MonotonicityWitness<T>>,
}

fn runs<T: Real>(grid: &[T], flags: &[bool]) -> Vec<(T, T)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, &f) in flags.iter().enumerate() {
        match (f, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((grid[s], grid[i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((grid[s], grid[flags.len()]));
    }
    out
}

/// Evaluate 𝔢 on a sorted grid and decide whether it is monotone there.
pub fn monotonicity_report<T: Real>(b_grid: &[T], config: &SolverConfig<T>) -> Result<MonotonicityReport<T>> {
    if b_grid.len() < 3 {
        return Err(Error::invalid("monotonicity grid needs at least three points"));
    }
    if b_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("monotonicity grid must be strictly increasing"));
    }
    let values: Vec<EffectiveValue<T>> = b_grid
        .par_iter()
        .map(|&b| effective_eigenvalue(b, config))
        .collect::<Result<_>>()?;
    let e_values: Vec<T> = values.iter().map(|v| v.e_value).collect();
    let argmin_m = values.iter().map(|v| v.argmin_m).collect();
    let noise = T::lit(MONOTONICITY_NOISE);
    let down: Vec<bool> = e_values.windows(2).map(|w| w[1] < w[0] - noise).collect();
    let up: Vec<bool> = e_values.windows(2).map(|w| w[1] > w[0] + noise).collect();
    let witness = down.iter().position(|&d| d).map(|i| MonotonicityWitness {
        b: b_grid[i],
        delta: b_grid[i + 1] - b_grid[i],
        e_before: e_values[i],
        e_after: e_values[i + 1],
    });
    Ok(MonotonicityReport {
        grid: b_grid.to_vec(),
        decreasing_intervals: runs(b_grid, &down),
        increasing_intervals: runs(b_grid, &up),
        non_monotonic: down.iter().any(|&d| d) && up.iter().any(|&u| u),
        witness,
        e_values,
        argmin_m,
    })
}

/// A trial function for [`rayleigh_quotient`].
pub enum Trial<'a, T> {
    /// Orthonormal-basis coefficients; the basis size is `coeffs.len()`.
    Coefficients { basis: Basis, coeffs: &'a [T] },
    /// Closed form given by its value and derivative in θ.
    Closure {
        value: &'a dyn Fn(T) -> T,
        derivative: &'a dyn Fn(T) -> T,
    },
}

/// Gauss–Legendre points in θ used for closed-form trial functions.
pub const TRIAL_QUADRATURE_POINTS: usize = 256;

/// `q_{m,b}(f) / ‖f‖²` in L²((0, π); sin θ dθ).
pub fn rayleigh_quotient<T: Real>(problem: &ModeProblem<T>, trial: Trial<'_, T>) -> Result<T> {
    let (num, den) = match trial {
        Trial::Coefficients { basis, coeffs } => {
            if coeffs.is_empty() {
                return Err(Error::invalid("empty coefficient vector"));
            }
            let sys = GalerkinSystem::assemble(problem.m, coeffs.len(), basis, Default::default())?;
            let a = sys.matrix(problem.b);
            (a.quadratic_form(coeffs), coeffs.iter().map(|&c| c * c).sum::<T>())
        }
        Trial::Closure { value, derivative } => {
            let rule = gauss_legendre::<T>(TRIAL_QUADRATURE_POINTS)?;
            let half_pi = T::FRAC_PI_2();
            let mut num = T::zero();
            let mut den = T::zero();
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let theta = half_pi * (T::one() + t);
                let ws = w * half_pi * theta.sin();
                let f = value(theta);
                let df = derivative(theta);
                num = num + ws * (df * df + problem.potential(theta) * f * f);
                den = den + ws * f * f;
            }
            (num, den)
        }
    };
    if !(den > T::zero()) || !num.is_finite() {
        return Err(Error::invalid("trial function is zero or outside the form domain"));
    }
    Ok(num / den)
}

/// `-γ² + 2γ + 𝔢(b)`: leading terms of the lowest eigenvalue of the Robin
/// magnetic Laplacian on the unit ball as γ → ∞. The o(1) remainder is not
/// modelled.
pub fn robin_asymptotic<T: Real>(gamma: T, b: T, config: &SolverConfig<T>) -> Result<T> {
    let e = effective_eigenvalue(b, config)?;
    Ok(-gamma * gamma + T::lit(2.0) * gamma + e.e_value)
}

/// One family of pointwise inequalities checked on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck<T> {
    pub name: &'static str,
    pub cases: usize,
    /// Smallest `lhs - rhs` over the family, with the (m, b) attaining it.
    /// Positive means the inequality held everywhere.
    pub worst_margin: T,
    pub worst_at: (i64, T),
    pub passed: bool,
}

fn grid_between<T: Real>(lo: T, hi: T, step: T, include_lo: bool, include_hi: bool) -> Vec<T> {
    let n = ((hi - lo) / step).round().to_usize().unwrap_or(0).max(1);
    let span = hi - lo;
    (0..=n)
        .map(|i| lo + span * T::from_count(i) / T::from_count(n))
        .filter(|&b| (include_lo || b > lo) && (include_hi || b < hi - step / T::lit(2.0)))
        .collect()
}

fn check_family<T: Real>(
    name: &'static str,
    modes: &[i64],
    grid: &[T],
    margin: impl Fn(i64, T, T) -> T + Sync,
    config: &SolverConfig<T>,
) -> Result<InequalityCheck<T>> {
    let jobs: Vec<(i64, T)> = modes.iter().flat_map(|&m| grid.iter().map(move |&b| (m, b))).collect();
    let margins: Vec<(i64, T, T)> = jobs
        .into_par_iter()
        .map(|(m, b)| converged_lambda(m, b, config).map(|l| (m, b, margin(m, b, l))))
        .collect::<Result<_>>()?;
    let (m, b, worst) = margins
        .iter()
        .copied()
        .fold(None, |acc: Option<(i64, T, T)>, x| match acc {
            Some(a) if a.2 <= x.2 => Some(a),
            _ => Some(x),
        })
        .ok_or_else(|| Error::invalid(format!("{name}: empty grid")))?;
    Ok(InequalityCheck {
        name,
        cases: margins.len(),
        worst_margin: worst,
        worst_at: (m, b),
        passed: worst > T::zero(),
    })
}

/// The pointwise bounds on λ_m(b) for small fields, checked on grids of the
/// given step:
///
/// * λ_m(b) > b²/4 for m = 1..4 and b ∈ [0, 1),
/// * λ_m(b) > 1 for m = 2..5 and b ∈ [1, 2),
/// * λ_m(b) > b²/4 for m ∈ {-1, -2} and b ∈ (0, 2.5],
/// * λ₁(b) ≤ b²/4 - (3/8)πb + 2 (+1e-10) for b ∈ [0, 2].
pub fn inequality_suite<T: Real>(step: T, config: &SolverConfig<T>) -> Result<Vec<InequalityCheck<T>>> {
    if !(step > T::zero()) || !step.is_finite() {
        return Err(Error::invalid(format!("grid step must be positive, got {step}")));
    }
    config.validate()?;
    let quarter = |b: T| b * b / T::lit(4.0);
    Ok(vec![
        check_family(
            "lambda_m(b) > b^2/4, m = 1..4, b in [0,1)",
            &[1, 2, 3, 4],
            &grid_between(T::zero(), T::one(), step, true, false),
            |_, b, l| l - quarter(b),
            config,
        )?,
        check_family(
            "lambda_m(b) > 1, m = 2..5, b in [1,2)",
            &[2, 3, 4, 5],
            &grid_between(T::one(), T::lit(2.0), step, true, false),
            |_, _, l| l - T::one(),
            config,
        )?,
        check_family(
            "lambda_m(b) > b^2/4, m = -1,-2, b in (0,2.5]",
            &[-1, -2],
            &grid_between(T::zero(), T::lit(2.5), step, false, true),
            |_, b, l| l - quarter(b),
            config,
        )?,
        check_family(
            "lambda_1(b) <= b^2/4 - 3 pi b/8 + 2, b in [0,2]",
            &[1],
            &grid_between(T::zero(), T::lit(2.0), step, true, true),
            |_, b, l| sin_trial_quotient(b) + T::lit(1e-10) - l,
            config,
        )?,
    ])
}
