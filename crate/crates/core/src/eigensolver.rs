//! Rayleigh–Ritz computation of λ_m(b), the bottom of the spectrum of the
//! fiber operator
//!
//! ```text
//! L_{m,b} u = -(sin θ)⁻¹ (sin θ u')' + (m / sin θ - b/2)² u   on (0, π)
//! ```
//!
//! in L²((0, π); sin θ dθ). Every discretization is brought to an orthonormal
//! representation of the quadratic form,
//!
//! ```text
//! A(b) = K + (b²/4)·I - m·b·G,
//! ```
//!
//! where `K` collects `∫ (|f'|² + m² |f|² / sin²θ) sin θ dθ` and `G` is the
//! matrix of `∫ |f|² dθ` (the `1/sin θ` coupling against the weight). Both
//! `K` and `G` depend on `m` only, so a solve at a new `b` is a single
//! symmetric eigenproblem.

use log::debug;

use crate::error::{Error, Result};
use crate::legendre::{assoc_legendre_table, sym_jacobi_table};
use crate::linalg::{cholesky, congruence_inverse, norm, smallest_eigenpair, symmetric_eigen, Matrix};
use crate::quadrature::{gauss_chebyshev2, gauss_legendre, QuadOrderPolicy};
use crate::scalar::Real;

/// One fiber operator `L_{m,b}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProblem<T> {
    pub m: i64,
    pub b: T,
}

impl<T: Real> ModeProblem<T> {
    pub fn new(m: i64, b: T) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::invalid(format!("field strength must be finite, got {b}")));
        }
        Ok(Self { m, b })
    }

    pub fn m_abs(&self) -> usize {
        self.m.unsigned_abs() as usize
    }

    /// `V_{m,b}(θ) = (m / sin θ - b/2)²`.
    pub fn potential(&self, theta: T) -> T {
        let v = T::lit(self.m as f64) / theta.sin() - self.b / T::lit(2.0);
        v * v
    }
}

/// Trial space used for the Galerkin discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    /// `sin^{|m|}θ · Q_k(2θ/π - 1)` with `Q_k` orthonormal for the weight
    /// `(1 - t²)^{2|m|+1}`. The ground state is `sin^{|m|}θ` times a function
    /// analytic in θ on the closed interval, so this converges geometrically.
    #[default]
    AngularPolynomial,
    /// Orthonormal associated Legendre functions `P̃_ℓ^{|m|}(cos θ)`. Here the
    /// derivative and `m²/sin²θ` part is exactly `diag(ℓ(ℓ+1))`, but the
    /// ground state has a square-root branch in `x = cos θ` for m ≠ 0 and
    /// the eigenvalue error decays only like n⁻⁴.
    AssociatedLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    pub n_initial: usize,
    pub n_max: usize,
    pub rel_tol: T,
    pub residual_tol: T,
    pub quad: QuadOrderPolicy,
    pub basis: Basis,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            n_initial: 16,
            n_max: 512,
            rel_tol: T::lit(1e-10),
            residual_tol: T::lit(1e-8),
            quad: QuadOrderPolicy::default(),
            basis: Basis::default(),
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_initial == 0 {
            return Err(Error::invalid("n_initial must be positive"));
        }
        if self.n_initial > self.n_max {
            return Err(Error::invalid(format!(
                "n_initial ({}) exceeds n_max ({})",
                self.n_initial, self.n_max
            )));
        }
        if !(self.rel_tol > T::zero()) || !(self.residual_tol > T::zero()) {
            return Err(Error::invalid("tolerances must be positive"));
        }
        if self.quad.factor == 0 && self.quad.extra == 0 {
            return Err(Error::invalid("quadrature policy yields no points"));
        }
        Ok(())
    }
}

/// Converged (or best available) lowest eigenpair of one fiber operator.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub lambda: T,
    /// Coefficients in the orthonormal basis; unit Euclidean norm, so the
    /// represented function has unit norm in L²((0, π); sin θ dθ).
    pub coeffs: Vec<T>,
    pub n_used: usize,
    /// `‖A c - λ c‖₂`.
    pub residual: T,
    pub converged: bool,
    pub basis: Basis,
    /// `(n, λ⁽ⁿ⁾)` for every basis size tried, in order.
    pub history: Vec<(usize, T)>,
}

/// Galerkin representation of the fiber form for a fixed `m` and basis size.
#[derive(Debug, Clone)]
pub struct GalerkinSystem<T> {
    pub m: i64,
    pub basis: Basis,
    /// b-independent part `K`.
    pub stiffness: Matrix<T>,
    /// Coupling `G`; identically zero when m = 0.
    pub coupling: Matrix<T>,
    /// Cholesky factor of the raw mass matrix (angular basis only).
    mass_factor: Option<Matrix<T>>,
}

impl<T: Real> GalerkinSystem<T> {
    pub fn assemble(m: i64, n: usize, basis: Basis, quad: QuadOrderPolicy) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("basis size must be positive"));
        }
        match basis {
            Basis::AssociatedLegendre => Ok(assemble_legendre(m, n, quad)),
            Basis::AngularPolynomial => assemble_angular(m, n, quad),
        }
    }

    pub fn dim(&self) -> usize {
        self.stiffness.dim()
    }

    /// `A(b) = K + (b²/4) I - m b G`.
    pub fn matrix(&self, b: T) -> Matrix<T> {
        let quarter_b2 = b * b / T::lit(4.0);
        let mb = T::lit(self.m as f64) * b;
        let a = if self.m == 0 {
            self.stiffness.clone()
        } else {
            self.stiffness.add_scaled(-mb, &self.coupling)
        };
        a.add_diagonal(quarter_b2)
    }

    /// `cᵀ G c`, i.e. `∫ |f|² dθ` for the function with coefficients `c`.
    pub fn coupling_expectation(&self, coeffs: &[T]) -> T {
        if self.m == 0 {
            return T::zero();
        }
        self.coupling.quadratic_form(coeffs)
    }

    /// Evaluate the function with orthonormal coefficients `coeffs` at θ.
    pub fn eval(&self, coeffs: &[T], theta: T) -> T {
        let m_abs = self.m.unsigned_abs() as usize;
        let n = self.dim();
        match self.basis {
            Basis::AssociatedLegendre => {
                let x = theta.cos().max(-T::one()).min(T::one());
                let vals = assoc_legendre_table(m_abs, n, x);
                vals.iter().zip(coeffs).map(|(&p, &c)| p * c).sum()
            }
            Basis::AngularPolynomial => {
                let raw = self.raw_coefficients(coeffs);
                let t = T::lit(2.0) * theta / T::PI() - T::one();
                let (q, _) = sym_jacobi_table(2 * m_abs + 1, n, t);
                let s = theta.sin().powi(m_abs as i32);
                s * q.iter().zip(&raw).map(|(&p, &c)| p * c).sum::<T>()
            }
        }
    }

    /// Coefficients with respect to the raw (non-orthonormal) functions.
    fn raw_coefficients(&self, coeffs: &[T]) -> Vec<T> {
        let Some(l) = &self.mass_factor else {
            return coeffs.to_vec();
        };
        // Solve Lᵀ a = c.
        let n = l.dim();
        let mut a = coeffs.to_vec();
        for i in (0..n).rev() {
            let mut s = a[i];
            for k in i + 1..n {
                s = s - l[(k, i)] * a[k];
            }
            a[i] = s / l[(i, i)];
        }
        a
    }
}

fn assemble_legendre<T: Real>(m: i64, n: usize, quad: QuadOrderPolicy) -> GalerkinSystem<T> {
    let m_abs = m.unsigned_abs() as usize;
    let diag: Vec<T> = (m_abs..m_abs + n)
        .map(|l| T::from_count(l) * T::from_count(l + 1))
        .collect();
    let stiffness = Matrix::from_diagonal(&diag);
    let mut coupling = Matrix::zeros(n);
    if m != 0 {
        let points = quad.points_for_degree(m_abs + n - 1);
        let rule = gauss_chebyshev2::<T>(points).expect("positive quadrature size");
        // P̃_i P̃_j / √(1-x²) = √(1-x²) · (1-x²)^{|m|-1} · polynomial, so the
        // Chebyshev-2 weight divided by (1 - x²) integrates it exactly.
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let vals = assoc_legendre_table(m_abs, n, x);
            let wk = w / ((T::one() - x) * (T::one() + x));
            for i in 0..n {
                let wi = wk * vals[i];
                for j in 0..=i {
                    coupling[(i, j)] = coupling[(i, j)] + wi * vals[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                coupling[(j, i)] = coupling[(i, j)];
            }
        }
    }
    GalerkinSystem {
        m,
        basis: Basis::AssociatedLegendre,
        stiffness,
        coupling,
        mass_factor: None,
    }
}

fn assemble_angular<T: Real>(m: i64, n: usize, quad: QuadOrderPolicy) -> Result<GalerkinSystem<T>> {
    let m_abs = m.unsigned_abs() as usize;
    let alpha = 2 * m_abs + 1;
    let points = quad.points_for_degree(m_abs + n - 1);
    let rule = gauss_legendre::<T>(points)?;
    let half_pi = T::FRAC_PI_2();
    let dt_dtheta = T::one() / half_pi;
    let m2 = T::lit((m * m) as f64);

    let mut mass = Matrix::zeros(n);
    let mut stiff = Matrix::zeros(n);
    let mut coup = Matrix::zeros(n);
    let mut f = vec![T::zero(); n];
    let mut fp = vec![T::zero(); n];
    for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let theta = half_pi * (T::one() + t);
        let w = wt * half_pi;
        let (s, c) = theta.sin_cos();
        let (q, dq) = sym_jacobi_table(alpha, n, t);
        let s_m = s.powi(m_abs as i32);
        let s_m1 = if m_abs > 0 { s.powi(m_abs as i32 - 1) } else { T::zero() };
        for k in 0..n {
            f[k] = s_m * q[k];
            fp[k] = T::lit(m_abs as f64) * s_m1 * c * q[k] + s_m * dq[k] * dt_dtheta;
        }
        // m² |f|² / sin θ = m² sin^{2|m|-1} θ |Q|².
        let centrifugal = if m_abs > 0 {
            w * m2 * s_m1 * s_m1 * s
        } else {
            T::zero()
        };
        for i in 0..n {
            for j in 0..=i {
                mass[(i, j)] = mass[(i, j)] + w * s * f[i] * f[j];
                stiff[(i, j)] = stiff[(i, j)] + w * s * fp[i] * fp[j] + centrifugal * q[i] * q[j];
                coup[(i, j)] = coup[(i, j)] + w * f[i] * f[j];
            }
        }
    }
    for mat in [&mut mass, &mut stiff, &mut coup] {
        for i in 0..n {
            for j in 0..i {
                mat[(j, i)] = mat[(i, j)];
            }
        }
    }
    let l = cholesky(&mass)?;
    let stiffness = congruence_inverse(&l, &stiff);
    let coupling = if m == 0 {
        Matrix::zeros(n)
    } else {
        congruence_inverse(&l, &coup)
    };
    Ok(GalerkinSystem {
        m,
        basis: Basis::AngularPolynomial,
        stiffness,
        coupling,
        mass_factor: Some(l),
    })
}

/// Galerkin matrix `A = K + (b²/4) I - m b G` of size `n` in the given basis.
///
/// With [`Basis::AssociatedLegendre`] this is `diag(ℓ(ℓ+1)) + (b²/4) I - m b G`
/// with `G_{ℓℓ'} = ∫ P̃_ℓ^{|m|} P̃_{ℓ'}^{|m|} (1 - x²)^{-1/2} dx`.
pub fn assemble_matrix<T: Real>(
    problem: &ModeProblem<T>,
    n: usize,
    basis: Basis,
) -> Result<Matrix<T>> {
    let sys = GalerkinSystem::assemble(problem.m, n, basis, QuadOrderPolicy::default())?;
    Ok(sys.matrix(problem.b))
}

/// Lowest Ritz pair at a fixed basis size.
#[derive(Debug, Clone)]
pub struct RitzPair<T> {
    pub lambda: T,
    pub coeffs: Vec<T>,
    pub residual: T,
}

pub fn ritz_pair<T: Real>(system: &GalerkinSystem<T>, b: T) -> Result<RitzPair<T>> {
    let a = system.matrix(b);
    let (lambda, coeffs) = smallest_eigenpair(&a)?;
    let ac = a.mul_vec(&coeffs);
    let r: Vec<T> = ac.iter().zip(&coeffs).map(|(&x, &c)| x - lambda * c).collect();
    Ok(RitzPair {
        lambda,
        coeffs,
        residual: norm(&r),
    })
}

/// Ritz pair for `problem` with exactly `n` basis functions.
pub fn solve_fixed<T: Real>(
    problem: &ModeProblem<T>,
    n: usize,
    config: &SolverConfig<T>,
) -> Result<RitzPair<T>> {
    let sys = GalerkinSystem::assemble(problem.m, n, config.basis, config.quad)?;
    ritz_pair(&sys, problem.b)
}

/// All eigenvalues of the size-`n` Galerkin matrix, ascending. Only the
/// first is a certified approximation; the rest are for inspection.
pub fn galerkin_spectrum<T: Real>(
    problem: &ModeProblem<T>,
    n: usize,
    config: &SolverConfig<T>,
) -> Result<Vec<T>> {
    let sys = GalerkinSystem::assemble(problem.m, n, config.basis, config.quad)?;
    Ok(symmetric_eigen(&sys.matrix(problem.b))?.values)
}

/// λ_m(b) by Rayleigh–Ritz on nested subspaces: the basis size doubles from
/// `n_initial` until two successive Ritz values agree to
/// `rel_tol · max(1, |λ|)` or `n_max` is reached. An unconverged result is
/// returned with `converged = false` rather than as an error.
pub fn solve_mode<T: Real>(problem: &ModeProblem<T>, config: &SolverConfig<T>) -> Result<EigenPair<T>> {
    config.validate()?;
    ModeProblem::new(problem.m, problem.b)?;
    let mut n = config.n_initial;
    let mut coarse = solve_fixed(problem, n, config)?;
    let mut history = vec![(n, coarse.lambda)];
    loop {
        let next = (2 * n).min(config.n_max);
        if next == n {
            debug!("m={} b={} stopped at n_max={} without convergence", problem.m, problem.b, n);
            return Ok(EigenPair {
                lambda: coarse.lambda,
                coeffs: coarse.coeffs,
                n_used: n,
                residual: coarse.residual,
                converged: false,
                basis: config.basis,
                history,
            });
        }
        let fine = solve_fixed(problem, next, config)?;
        history.push((next, fine.lambda));
        let scale = coarse.lambda.abs().max(T::one());
        if (fine.lambda - coarse.lambda).abs() <= config.rel_tol * scale {
            let converged = fine.residual <= config.residual_tol;
            return Ok(EigenPair {
                lambda: fine.lambda,
                coeffs: fine.coeffs,
                n_used: next,
                residual: fine.residual,
                converged,
                basis: config.basis,
                history,
            });
        }
        n = next;
        coarse = fine;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn legendre(m: i64, b: f64, n: usize) -> Matrix<f64> {
        assemble_matrix(&ModeProblem::new(m, b).unwrap(), n, Basis::AssociatedLegendre).unwrap()
    }

    #[test]
    fn legendre_matrix_at_m0_is_diagonal() {
        let a = legendre(0, 1.0, 4);
        let expect = [0.25, 2.25, 6.25, 12.25];
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { expect[i] } else { 0.0 };
                assert_abs_diff_eq!(a[(i, j)], e, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn legendre_matrix_at_b0_is_diagonal() {
        let a = legendre(1, 0.0, 3);
        assert_eq!(a.diagonal(), vec![2.0, 6.0, 12.0]);
        assert_eq!(a.max_asymmetry(), 0.0);
        assert_abs_diff_eq!(a[(0, 1)], 0.0);
    }

    #[test]
    fn exact_cases_in_both_bases() {
        for basis in [Basis::AngularPolynomial, Basis::AssociatedLegendre] {
            let cfg = SolverConfig {
                basis,
                ..SolverConfig::default()
            };
            let r = solve_mode(&ModeProblem::new(0, 1.0).unwrap(), &cfg).unwrap();
            assert_abs_diff_eq!(r.lambda, 0.25, epsilon = 1e-12);
            let r = solve_mode(&ModeProblem::new(1, 0.0).unwrap(), &cfg).unwrap();
            assert_abs_diff_eq!(r.lambda, 2.0, epsilon = 1e-10);
            assert!(r.converged);
        }
    }

    #[test]
    fn lower_bounds_at_sample_points() {
        let cfg = SolverConfig::default();
        let r = solve_mode(&ModeProblem::new(1, 1.9).unwrap(), &cfg).unwrap();
        assert!(r.converged);
        assert!(r.lambda < 0.9025);
        let r = solve_mode(&ModeProblem::new(-1, 1.5).unwrap(), &cfg).unwrap();
        assert!(r.lambda > 0.5625);
    }

    #[test]
    fn coefficients_have_unit_norm() {
        let r = solve_mode(&ModeProblem::new(2, 1.3).unwrap(), &SolverConfig::default()).unwrap();
        assert_abs_diff_eq!(norm(&r.coeffs), 1.0, epsilon = 1e-12);
        assert!(r.residual <= 1e-8);
    }

    #[test]
    fn legendre_basis_is_slow_for_m1() {
        // n⁻⁴ convergence: the default 512 cap is not enough at b = 2.5.
        let cfg = SolverConfig {
            basis: Basis::AssociatedLegendre,
            n_initial: 64,
            n_max: 256,
            ..SolverConfig::default()
        };
        let r = solve_mode(&ModeProblem::new(1, 2.5).unwrap(), &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.n_used, 256);
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = SolverConfig::<f64> {
            n_initial: 64,
            n_max: 32,
            ..SolverConfig::default()
        };
        assert!(solve_mode(&ModeProblem::new(0, 1.0).unwrap(), &cfg).is_err());
        assert!(ModeProblem::new(0, f64::INFINITY).is_err());
    }

    #[test]
    fn ground_state_is_positive() {
        let p = ModeProblem::new(1, 1.67).unwrap();
        let cfg = SolverConfig::default();
        let r = solve_mode(&p, &cfg).unwrap();
        let sys = GalerkinSystem::assemble(1, r.n_used, cfg.basis, cfg.quad).unwrap();
        let vals: Vec<f64> = (1..100).map(|k| sys.eval(&r.coeffs, k as f64 * 0.0314159)).collect();
        let sign = vals[50].signum();
        assert!(vals.iter().all(|v| v * sign > 0.0));
    }
}
