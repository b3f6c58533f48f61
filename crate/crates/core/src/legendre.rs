//! Orthonormal associated Legendre functions and symmetric Jacobi polynomials.
//!
//! Both families come from the same three-term recurrence: with weight
//! `(1 - t²)^α` on [-1, 1] the orthonormal polynomials satisfy
//! `t·p_k = β_{k+1} p_{k+1} + β_k p_{k-1}` where
//! `β_k² = k(k + 2α) / ((2k + 2α - 1)(2k + 2α + 1))`.
//! The associated Legendre function of order m is `(1 - x²)^{m/2}` times the
//! α = m member of that family.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Recurrence coefficient β_k (k ≥ 1) for weight `(1 - t²)^α`.
pub(crate) fn sym_jacobi_beta<T: Real>(k: usize, alpha: usize) -> T {
    let k = k as f64;
    let a = alpha as f64;
    let v = k * (k + 2.0 * a) / ((2.0 * k + 2.0 * a - 1.0) * (2.0 * k + 2.0 * a + 1.0));
    T::lit(v.sqrt())
}

/// `∫_{-1}^{1} (1 - t²)^α dt` for integer α.
fn sym_jacobi_mass(alpha: usize) -> f64 {
    (1..=alpha).fold(2.0, |acc, j| acc * (2 * j) as f64 / (2 * j + 1) as f64)
}

/// Orthonormal associated Legendre function `P̃_ℓ^m(x)` without the
/// Condon–Shortley phase, normalized in L²(-1, 1).
pub fn assoc_legendre_normalized<T: Real>(ell: usize, m_abs: usize, x: T) -> Result<T> {
    if ell < m_abs {
        return Err(Error::invalid(format!(
            "associated Legendre degree {ell} is below its order {m_abs}"
        )));
    }
    if !(x.abs() <= T::one()) {
        return Err(Error::invalid(format!("argument {x} outside [-1, 1]")));
    }
    let table = assoc_legendre_table(m_abs, ell - m_abs + 1, x);
    Ok(table[ell - m_abs])
}

/// `P̃_ℓ^m(x)` for ℓ = m, …, m + n − 1. `x` must lie in [-1, 1].
pub fn assoc_legendre_table<T: Real>(m_abs: usize, n: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let sin_like = ((T::one() - x) * (T::one() + x)).max(T::zero()).sqrt();
    // Seed P̃_m^m = c_m (1 - x²)^{m/2}, c_0 = 1/√2, c_j = c_{j-1} √((2j+1)/(2j)).
    let mut seed = T::FRAC_1_SQRT_2();
    for j in 1..=m_abs {
        let jf = j as f64;
        seed = seed * T::lit(((2.0 * jf + 1.0) / (2.0 * jf)).sqrt()) * sin_like;
    }
    out.push(seed);
    let mut prev = T::zero();
    let mut cur = seed;
    for k in 1..n {
        let beta_next = sym_jacobi_beta::<T>(k, m_abs);
        let beta_cur = if k > 1 {
            sym_jacobi_beta::<T>(k - 1, m_abs)
        } else {
            T::zero()
        };
        let next = (x * cur - beta_cur * prev) / beta_next;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Orthonormal polynomials for weight `(1 - t²)^α` and their derivatives,
/// degrees 0..n, evaluated at `t`.
pub fn sym_jacobi_table<T: Real>(alpha: usize, n: usize, t: T) -> (Vec<T>, Vec<T>) {
    let mut vals = Vec::with_capacity(n);
    let mut ders = Vec::with_capacity(n);
    if n == 0 {
        return (vals, ders);
    }
    let p0 = T::lit(1.0 / sym_jacobi_mass(alpha).sqrt());
    vals.push(p0);
    ders.push(T::zero());
    let (mut p_prev, mut p) = (T::zero(), p0);
    let (mut d_prev, mut d) = (T::zero(), T::zero());
    for k in 0..n.saturating_sub(1) {
        let beta_next = sym_jacobi_beta::<T>(k + 1, alpha);
        let beta_cur = if k > 0 {
            sym_jacobi_beta::<T>(k, alpha)
        } else {
            T::zero()
        };
        let p_next = (t * p - beta_cur * p_prev) / beta_next;
        let d_next = (p + t * d - beta_cur * d_prev) / beta_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        vals.push(p);
        ders.push(d);
    }
    (vals, ders)
}
