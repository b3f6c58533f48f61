//! Polynomials in the two parameters (b, λ) over an exact or floating field.
//!
//! Frobenius coefficients of the fiber equation are polynomials in b and λ
//! with rational coefficients; keeping them symbolic lets the series be
//! compared term by term instead of at sample values.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Coefficient field for [`Poly2`].
pub trait Field: Clone + PartialEq + Num + Neg<Output = Self> + Display + Debug {
    fn ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool;
}

impl Field for f64 {
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Field for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// `Σ c_{ij} bⁱ λʲ`, keyed by `(i, j)`. Zero terms are never stored.
#[derive(Clone, PartialEq)]
pub struct Poly2<F> {
    terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> Poly2<F> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: F, b_deg: u32, lambda_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((b_deg, lambda_deg), c);
        }
        Self { terms }
    }

    pub fn b() -> Self {
        Self::monomial(F::one(), 1, 0)
    }

    pub fn lambda() -> Self {
        Self::monomial(F::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `bⁱ λʲ`.
    pub fn coeff(&self, b_deg: u32, lambda_deg: u32) -> F {
        self.terms
            .get(&(b_deg, lambda_deg))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero();
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.terms.insert(*k, c.clone() * s.clone());
        }
        out
    }

    pub fn eval(&self, b: f64, lambda: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64() * b.powi(i as i32) * lambda.powi(j as i32))
            .sum()
    }

    fn add_term(&mut self, key: (u32, u32), c: F) {
        let entry = self.terms.entry(key).or_insert_with(F::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl<F: Field> Add for &Poly2<F> {
    type Output = Poly2<F>;
    fn add(self, rhs: Self) -> Poly2<F> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Poly2<F> {
    type Output = Poly2<F>;
    fn sub(self, rhs: Self) -> Poly2<F> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &Poly2<F> {
    type Output = Poly2<F>;
    fn mul(self, rhs: Self) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Poly2<F> {
    type Output = Poly2<F>;
    fn neg(self) -> Poly2<F> {
        self.scale(&-F::one())
    }
}

fn monomial_name(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("b".to_string()),
        _ => parts.push(format!("b^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("lambda".to_string()),
        _ => parts.push(format!("lambda^{j}")),
    }
    parts.join("*")
}

/// Highest total degree first, e.g. `b^2/4 - 1/4` renders as `1/4*b^2 - 1/4`.
impl<F: Field> Display for Poly2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let name = monomial_name(key.0, key.1);
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Debug for Poly2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}
