//! Lowest eigenvalues λ_m(b) of the fiber operators of the magnetic Robin
//! Laplacian on the unit ball,
//!
//! ```text
//! λ_m(b) = inf_f ∫ (|f'|² + (m/sin θ - b/2)² |f|²) sin θ dθ / ∫ |f|² sin θ dθ,
//! ```
//!
//! the effective eigenvalue 𝔢(b) = inf_m λ_m(b), and the analysis around
//! them: the λ₀/λ₁ crossing, non-monotonicity of 𝔢, the Hellmann–Feynman
//! derivative, and the Frobenius / limit-point analysis at θ = 0, π.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the
//! `*64` aliases below fix the usual `f64` instantiation. Frobenius
//! coefficients are computed in exact rational arithmetic.
//!
//! ```
//! use fiberspec::{solve_mode, ModeProblem64, SolverConfig64};
//!
//! let pair = solve_mode(&ModeProblem64::new(0, 1.0).unwrap(), &SolverConfig64::default()).unwrap();
//! assert!((pair.lambda - 0.25).abs() < 1e-12);
//! ```

pub mod eigensolver;
pub mod endpoint;
pub mod error;
pub mod legendre;
pub mod linalg;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod spectrum;

pub use eigensolver::{
    assemble_matrix, galerkin_spectrum, ritz_pair, solve_fixed, solve_mode, Basis, EigenPair,
    GalerkinSystem, ModeProblem, RitzPair, SolverConfig,
};
pub use endpoint::{
    classify_endpoint, frobenius_expansion, indicial_exponents, indicial_exponents_exact,
    liouville_qhat, Endpoint, EndpointClass, FrobeniusExpansion, LiouvillePotential, Rational,
    Verdict,
};
pub use error::{Error, Result};
pub use legendre::assoc_legendre_normalized;
pub use linalg::{smallest_eigenpair, Matrix};
pub use quadrature::{gauss_chebyshev2, gauss_legendre, QuadOrderPolicy, QuadratureKind, QuadratureRule};
pub use scalar::Real;
pub use spectrum::{
    effective_eigenvalue, find_crossing, hf_derivative, inequality_suite, monotonicity_report, rayleigh_quotient,
    robin_asymptotic, sweep, CrossingResult, EffectiveValue, InequalityCheck, ModeSet, MonotonicityReport,
    MonotonicityWitness, SweepRow, SweepSummary, SweepTable, Trial,
};

pub type QuadratureRule64 = QuadratureRule<f64>;
pub type Matrix64 = Matrix<f64>;
pub type ModeProblem64 = ModeProblem<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type EigenPair64 = EigenPair<f64>;
pub type SweepTable64 = SweepTable<f64>;
pub type CrossingResult64 = CrossingResult<f64>;
pub type MonotonicityReport64 = MonotonicityReport<f64>;

pub type ModeProblem32 = ModeProblem<f32>;
pub type SolverConfig32 = SolverConfig<f32>;
pub type EigenPair32 = EigenPair<f32>;

/// `∫_0^{π/2} sin x ∫_x^{π/2} dt / sin t dx`, reduced by Fubini to
/// `∫_0^{π/2} (1 - cos t) / sin t dt = ∫_0^{π/2} tan(t/2) dt` and evaluated
/// with an `n`-point Gauss–Legendre rule. The exact value is ln 2.
pub fn iterated_log_integral<T: Real>(n: usize) -> Result<T> {
    let rule = gauss_legendre::<T>(n)?;
    Ok(rule.integrate_on(T::zero(), T::FRAC_PI_2(), |t| (t / T::lit(2.0)).tan()))
}
