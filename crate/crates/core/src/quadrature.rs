//! Gauss–Legendre and Gauss–Chebyshev (second kind) rules on [-1, 1].
//!
//! All integrals over θ ∈ (0, π) in this crate go through x = cos θ or through
//! an affine map of θ onto [-1, 1], so these two families cover everything.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Weight 1 on [-1, 1].
    GaussLegendre,
    /// Weight (1 - x²)^{1/2} on [-1, 1].
    GaussChebyshev2,
}

/// Nodes (strictly increasing, inside (-1, 1)) and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub kind: QuadratureKind,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k f(x_k)`. For Chebyshev-2 rules this approximates
    /// `∫ (1 - x²)^{1/2} f(x) dx`, i.e. the weight is implicit.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate over `[a, b]` through the affine map from `[-1, 1]`.
    /// Only meaningful for the unit-weight Gauss–Legendre rule.
    pub fn integrate_on<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        half * self.integrate(|x| f(mid + half * x))
    }
}

/// Quadrature size used for Galerkin integrals: `factor · degree + extra`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadOrderPolicy {
    pub factor: usize,
    pub extra: usize,
}

impl Default for QuadOrderPolicy {
    fn default() -> Self {
        Self {
            factor: 2,
            extra: 16,
        }
    }
}

impl QuadOrderPolicy {
    pub fn points_for_degree(&self, max_degree: usize) -> usize {
        self.factor * max_degree + self.extra
    }
}

/// Legendre polynomial P_n and its derivative at x.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = T::from_count(k);
        let p_next = ((kf + kf - T::one()) * x * p - (kf - T::one()) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let nf = T::from_count(n);
    let dp = nf * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

/// n-point Gauss–Legendre rule, exact for polynomials of degree ≤ 2n − 1.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::invalid("Gauss-Legendre rule needs at least one node"));
    }
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let two = T::lit(2.0);
    let eps = T::epsilon() * T::lit(4.0);
    let nf = T::from_count(n);
    // Roots in the upper half, descending; mirrored into the lower half.
    for i in 0..n.div_ceil(2) {
        let mut x = (T::PI() * (T::from_count(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= eps {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = two / ((T::one() - x * x) * dp * dp);
        let hi = n - 1 - i;
        if hi == i {
            x = T::zero();
        }
        nodes[hi] = x;
        nodes[i] = -x;
        weights[hi] = w;
        weights[i] = w;
    }
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussLegendre,
        nodes,
        weights,
    })
}

/// n-point Gauss–Chebyshev rule of the second kind:
/// `x_k = cos(kπ/(n+1))`, `w_k = π/(n+1) · sin²(kπ/(n+1))`, k = 1..n.
pub fn gauss_chebyshev2<T: Real>(n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::invalid("Gauss-Chebyshev rule needs at least one node"));
    }
    let h = T::PI() / T::from_count(n + 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // k = n..1 gives increasing nodes.
    for k in (1..=n).rev() {
        let angle = h * T::from_count(k);
        let (s, c) = angle.sin_cos();
        // Exact zero at the midpoint keeps the node set symmetric.
        nodes.push(if 2 * k == n + 1 { T::zero() } else { c });
        weights.push(h * s * s);
    }
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussChebyshev2,
        nodes,
        weights,
    })
}
