//! Behaviour of the fiber equation at the singular endpoints θ = 0 and θ = π.
//!
//! With `u = w · sin^{-1/2} θ` the eigenvalue equation `L_{m,b} u = λ u`
//! becomes `w'' + (λ - q̂(θ)) w = 0` on (0, π), where
//!
//! ```text
//! q̂(θ) = (m/sin θ - b/2)² - ¼ cot²θ - ½
//!      = (m² - ¼) / sin²θ - m b / sin θ + b²/4 - ¼.
//! ```
//!
//! Near θ = 0, `q̂ ~ (m² - ¼) θ⁻²`, so both endpoints are regular singular
//! points with indicial roots `½ ± |m|`. Both solutions are square
//! integrable near the endpoint (limit circle) only for m = 0.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eigensolver::ModeProblem;
use crate::error::{Error, Result};
use crate::poly::{Field, Poly2};

pub type Rational = BigRational;

fn rational(num: i64, den: i64) -> Rational {
    Rational::ratio(num, den)
}

/// Taylor coefficients of `θ / sin θ` in powers of θ², i.e. `κ_k` with
/// `csc θ = Σ κ_k θ^{2k-1}`.
fn csc_series<F: Field>(terms: usize) -> Vec<F> {
    // sin θ / θ = Σ (-1)^k θ^{2k} / (2k+1)!
    let mut sinc = Vec::with_capacity(terms);
    let mut fact = F::one();
    for k in 0..terms {
        if k > 0 {
            fact = fact * F::ratio((2 * k) as i64, 1) * F::ratio((2 * k + 1) as i64, 1);
        }
        let sign = if k % 2 == 0 { F::one() } else { -F::one() };
        sinc.push(sign / fact.clone());
    }
    // Invert the power series: Σ sinc_i inv_{k-i} = δ_{k0}.
    let mut inv: Vec<F> = Vec::with_capacity(terms);
    for k in 0..terms {
        if k == 0 {
            inv.push(F::one() / sinc[0].clone());
            continue;
        }
        let mut s = F::zero();
        for i in 1..=k {
            s = s + sinc[i].clone() * inv[k - i].clone();
        }
        inv.push(-s / sinc[0].clone());
    }
    inv
}

/// Coefficients `σ_k` with `csc²θ = Σ σ_k θ^{2k-2}`.
fn csc2_series<F: Field>(terms: usize) -> Vec<F> {
    let k = csc_series::<F>(terms);
    (0..terms)
        .map(|n| {
            (0..=n).fold(F::zero(), |acc, i| acc + k[i].clone() * k[n - i].clone())
        })
        .collect()
}

/// q̂ for one mode, as a closed form and as a Laurent series at θ = 0.
#[derive(Debug, Clone)]
pub struct LiouvillePotential {
    pub m: i64,
    pub b: f64,
    /// Coefficient of `θ^{j-2}` at index `j`, symbolic in b (λ does not appear).
    pub laurent: Vec<Poly2<Rational>>,
}

impl LiouvillePotential {
    /// `(m/sin θ - b/2)² - ¼ cot²θ - ½`.
    pub fn eval(&self, theta: f64) -> f64 {
        let s = theta.sin();
        let c = theta.cos();
        let v = self.m as f64 / s - self.b / 2.0;
        v * v - 0.25 * c * c / (s * s) - 0.5
    }

    /// Numeric Laurent coefficients at this potential's b, powers θ⁻², θ⁻¹, ….
    pub fn laurent_values(&self) -> Vec<f64> {
        self.laurent.iter().map(|p| p.eval(self.b, 0.0)).collect()
    }

    /// Truncated Laurent sum at θ.
    pub fn laurent_eval(&self, theta: f64) -> f64 {
        self.laurent_values()
            .iter()
            .enumerate()
            .map(|(j, c)| c * theta.powi(j as i32 - 2))
            .sum()
    }
}

/// Laurent coefficients of `q̂` at θ = 0 for powers θ⁻², …, θ^{order},
/// symbolic in b.
pub fn qhat_laurent<F: Field>(m: i64, order: usize) -> Vec<Poly2<F>> {
    let len = order + 3;
    let terms = len / 2 + 2;
    let csc = csc_series::<F>(terms);
    let csc2 = csc2_series::<F>(terms);
    let m_f = F::ratio(m, 1);
    let centrifugal = F::ratio(4 * m * m - 1, 4);
    let b = Poly2::<F>::b();
    let mut out = vec![Poly2::zero(); len];
    for (j, slot) in out.iter_mut().enumerate() {
        // Power θ^{j-2}.
        if j % 2 == 0 {
            let k = j / 2;
            *slot = Poly2::constant(centrifugal.clone() * csc2[k].clone());
        } else {
            let k = (j - 1) / 2;
            *slot = b.scale(&(-(m_f.clone() * csc[k].clone())));
        }
    }
    // Constant part b²/4 - ¼ sits at θ⁰.
    let bb = (&b * &b).scale(&F::ratio(1, 4));
    out[2] = &(&out[2] + &bb) - &Poly2::constant(F::ratio(1, 4));
    out
}

pub fn liouville_qhat(problem: &ModeProblem<f64>, order: usize) -> LiouvillePotential {
    LiouvillePotential {
        m: problem.m,
        b: problem.b,
        laurent: qhat_laurent(problem.m, order),
    }
}

/// Roots `(½ + |m|, ½ - |m|)` of `s(s - 1) = m² - ¼`.
pub fn indicial_exponents(m: i64) -> (f64, f64) {
    let a = m.unsigned_abs() as f64;
    (0.5 + a, 0.5 - a)
}

pub fn indicial_exponents_exact(m: i64) -> (Rational, Rational) {
    let a = m.abs();
    (rational(2 * a + 1, 2), rational(1 - 2 * a, 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    Pi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    LimitPoint,
    LimitCircle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndpointClass {
    pub endpoint: Endpoint,
    /// `(s_plus, s_minus)`.
    pub exponents: (f64, f64),
    pub verdict: Verdict,
    /// Double indicial root: the second solution carries a logarithm.
    pub log_case: bool,
}

/// `θ^s` (with or without a `log θ` factor) is square integrable near 0 iff `2s > -1`.
fn square_integrable(s: f64) -> bool {
    2.0 * s > -1.0
}

/// Limit-point / limit-circle verdict at one endpoint. The equation is
/// invariant under θ → π - θ, so θ = π is handled by reflection.
pub fn classify_endpoint(problem: &ModeProblem<f64>, endpoint: Endpoint) -> EndpointClass {
    let (s_plus, s_minus) = indicial_exponents(problem.m);
    let circle = square_integrable(s_plus) && square_integrable(s_minus);
    EndpointClass {
        endpoint,
        exponents: (s_plus, s_minus),
        verdict: if circle {
            Verdict::LimitCircle
        } else {
            Verdict::LimitPoint
        },
        log_case: s_plus == s_minus,
    }
}

/// Series `w(θ) = θ^s Σ a_k θ^k` solving `w'' = (q̂ - λ) w` near θ = 0.
#[derive(Debug, Clone)]
pub struct FrobeniusExpansion {
    pub m: i64,
    pub b: f64,
    pub lambda: f64,
    pub exponent: Rational,
    /// `a_0 = 1, a_1, …`, symbolic in (b, λ).
    pub coeffs_symbolic: Vec<Poly2<Rational>>,
    /// The same coefficients at this expansion's (b, λ).
    pub coeffs: Vec<f64>,
    /// Order k at which `k(k + 2s - 1)` vanishes; the series stops before it
    /// and the solution there generally needs a logarithmic term.
    pub resonance_order: Option<usize>,
    /// The indicial root is double, so the partner solution is `log θ` times a series.
    pub log_case: bool,
}

impl FrobeniusExpansion {
    pub fn exponent_f64(&self) -> f64 {
        Field::to_f64(&self.exponent)
    }

    /// `(w, w', w'')` of the truncated series at θ > 0.
    pub fn eval(&self, theta: f64) -> (f64, f64, f64) {
        let s = self.exponent_f64();
        let mut w = 0.0;
        let mut dw = 0.0;
        let mut d2w = 0.0;
        for (k, a) in self.coeffs.iter().enumerate() {
            let p = s + k as f64;
            w += a * theta.powf(p);
            dw += a * p * theta.powf(p - 1.0);
            d2w += a * p * (p - 1.0) * theta.powf(p - 2.0);
        }
        (w, dw, d2w)
    }
}

/// Frobenius recurrence `a_k · k(k + 2s - 1) = Σ_{j=1..k} c_{j-2} a_{k-j}`
/// driven by the Laurent coefficients `c` of `q̂ - λ` (index j ↔ θ^{j-2}).
/// Returns the coefficients and the resonance order, if hit.
pub fn frobenius_recurrence<F: Field>(
    laurent: &[Poly2<F>],
    exponent: &F,
    order: usize,
) -> (Vec<Poly2<F>>, Option<usize>) {
    let mut shifted: Vec<Poly2<F>> = laurent.to_vec();
    if shifted.len() > 2 {
        shifted[2] = &shifted[2] - &Poly2::lambda();
    }
    let mut a = vec![Poly2::constant(F::one())];
    for k in 1..=order {
        let kf = F::ratio(k as i64, 1);
        let denom = kf.clone() * (kf + exponent.clone() + exponent.clone() - F::one());
        if denom.is_zero() {
            return (a, Some(k));
        }
        let mut rhs = Poly2::zero();
        for j in 1..=k {
            if let Some(c) = shifted.get(j) {
                rhs = &rhs + &(c * &a[k - j]);
            }
        }
        a.push(rhs.scale(&(F::one() / denom)));
    }
    (a, None)
}

/// Frobenius series about θ = 0 for the given indicial root.
///
/// `exponent` must match `½ ± |m|` within 1e-12. The coefficients are
/// computed exactly as polynomials in (b, λ) and then evaluated.
pub fn frobenius_expansion(
    problem: &ModeProblem<f64>,
    exponent: f64,
    lambda: f64,
    order: usize,
) -> Result<FrobeniusExpansion> {
    let (sp, sm) = indicial_exponents(problem.m);
    let (ep, em) = indicial_exponents_exact(problem.m);
    let s = if (exponent - sp).abs() <= 1e-12 {
        ep
    } else if (exponent - sm).abs() <= 1e-12 {
        em
    } else {
        return Err(Error::invalid(format!(
            "{exponent} is not an indicial root for m = {} (roots {sp}, {sm})",
            problem.m
        )));
    };
    if !lambda.is_finite() {
        return Err(Error::invalid("lambda must be finite"));
    }
    let laurent = qhat_laurent::<Rational>(problem.m, order);
    let (coeffs_symbolic, resonance_order) = frobenius_recurrence(&laurent, &s, order);
    let coeffs = coeffs_symbolic
        .iter()
        .map(|p| p.eval(problem.b, lambda))
        .collect();
    Ok(FrobeniusExpansion {
        m: problem.m,
        b: problem.b,
        lambda,
        log_case: problem.m == 0,
        exponent: s,
        coeffs_symbolic,
        coeffs,
        resonance_order,
    })
}

/// `s(s - 1) - (m² - ¼)` in exact arithmetic.
pub fn indicial_residual(m: i64, s: &Rational) -> Rational {
    s * (s - Rational::one()) - rational(4 * m * m - 1, 4)
}

/// `true` when `r` is exactly zero.
pub fn is_exact_zero(r: &Rational) -> bool {
    r.is_zero()
}
