//! Small dense linear algebra: square matrices, Cholesky, and the symmetric
//! eigenproblem by Householder tridiagonalization followed by implicit QL.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Row-major construction; fails unless `rows` is square.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must form a square"));
        }
        Ok(Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, |i, j| self[(i, j)])
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `vᵀ A v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        self.mul_vec(v).iter().zip(v).map(|(&a, &b)| a * b).sum()
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        }
    }

    pub fn add_diagonal(&self, s: T) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] = out[(i, i)] + s;
        }
        out
    }

    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn symmetrized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.n, |i, j| half * (self[(i, j)] + self[(j, i)]))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

pub fn norm<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.dim();
    let mut l = Matrix::zeros(n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if !(d > T::zero()) {
            return Err(Error::Linalg(format!(
                "matrix not positive definite (pivot {j} = {d})"
            )));
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// `L⁻¹ A L⁻ᵀ` for symmetric `A` and lower triangular `L`.
pub fn congruence_inverse<T: Real>(l: &Matrix<T>, a: &Matrix<T>) -> Matrix<T> {
    let n = a.dim();
    // X = L⁻¹ A, column by column.
    let mut x = a.clone();
    for col in 0..n {
        for i in 0..n {
            let mut s = x[(i, col)];
            for k in 0..i {
                s = s - l[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / l[(i, i)];
        }
    }
    // Y = L⁻¹ Xᵀ = L⁻¹ A L⁻ᵀ (A symmetric).
    let mut y = Matrix::from_fn(n, |i, j| x[(j, i)]);
    for col in 0..n {
        for i in 0..n {
            let mut s = y[(i, col)];
            for k in 0..i {
                s = s - l[(i, k)] * y[(k, col)];
            }
            y[(i, col)] = s / l[(i, i)];
        }
    }
    y.symmetrized()
}

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: Matrix<T>,
}

/// Householder reduction to tridiagonal form followed by the implicit QL
/// iteration with eigenvector accumulation.
pub fn symmetric_eigen<T: Real>(a: &Matrix<T>) -> Result<SymmetricEigen<T>> {
    let n = a.dim();
    if !a.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    if n == 0 {
        return Ok(SymmetricEigen {
            values: vec![],
            vectors: Matrix::zeros(0),
        });
    }
    let mut v = a.symmetrized();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tridiagonalize(&mut v, &mut d, &mut e);
    implicit_ql(&mut v, &mut d, &mut e)?;
    Ok(SymmetricEigen { values: d, vectors: v })
}

fn tridiagonalize<T: Real>(v: &mut Matrix<T>, d: &mut [T], e: &mut [T]) {
    let n = v.dim();
    let zero = T::zero();
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = zero;
        let mut h = zero;
        for &dk in d.iter().take(i) {
            scale = scale + dk.abs();
        }
        if scale == zero {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = zero;
                v[(j, i)] = zero;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk = *dk / scale;
                h = h + *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > zero {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = zero;
            }
            for j in 0..i {
                let f = d[j];
                v[(j, i)] = f;
                let mut g = e[j] + v[(j, j)] * f;
                for k in j + 1..i {
                    g = g + v[(k, j)] * d[k];
                    e[k] = e[k] + v[(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = zero;
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[(k, j)] = v[(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = zero;
            }
        }
        d[i] = h;
    }
    // Accumulate the transformations.
    for i in 0..n - 1 {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = T::one();
        let h = d[i + 1];
        if h != zero {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = zero;
                for k in 0..=i {
                    g = g + v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] = v[(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = zero;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = zero;
    }
    v[(n - 1, n - 1)] = T::one();
    e[0] = zero;
}

fn implicit_ql<T: Real>(v: &mut Matrix<T>, d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = v.dim();
    let zero = T::zero();
    let one = T::one();
    let two = T::lit(2.0);
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = zero;

    let eps = T::epsilon();
    let mut f = zero;
    let mut tst1 = zero;
    let max_sweeps = 60 * n.max(1);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::Linalg("implicit QL did not converge".into()));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(one);
                if p < zero {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = one;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = zero;
                let mut s2 = zero;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = zero;
    }

    // Ascending order; strict comparison keeps the first of equal values.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for row in 0..n {
                let tmp = v[(row, i)];
                v[(row, i)] = v[(row, k)];
                v[(row, k)] = tmp;
            }
        }
    }
    Ok(())
}

/// Smallest eigenvalue and a unit eigenvector whose first non-negligible
/// component is positive.
///
/// The input is symmetrized before use. Among exactly tied eigenvalues the
/// lowest-index eigenvector from the QL sweep is returned, which gives `e₁`
/// for the identity.
pub fn smallest_eigenpair<T: Real>(a: &Matrix<T>) -> Result<(T, Vec<T>)> {
    if a.dim() == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    let eig = symmetric_eigen(a)?;
    let lambda = eig.values[0];
    let mut vec: Vec<T> = (0..a.dim()).map(|i| eig.vectors[(i, 0)]).collect();
    let nrm = norm(&vec);
    for x in vec.iter_mut() {
        *x = *x / nrm;
    }
    fix_sign(&mut vec);
    Ok((lambda, vec))
}

/// Flip `v` so that its first component above a relative noise floor is positive.
pub fn fix_sign<T: Real>(v: &mut [T]) {
    let scale = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let floor = scale * T::epsilon() * T::lit(64.0);
    if let Some(first) = v.iter().find(|x| x.abs() > floor) {
        if *first < T::zero() {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_gives_first_unit_vector() {
        let (l, v) = smallest_eigenpair(&Matrix::<f64>::identity(3)).unwrap();
        assert_eq!(l, 1.0);
        assert_eq!(v, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn diagonal_picks_minimum() {
        let a = Matrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let (l, v) = smallest_eigenpair(&a).unwrap();
        assert_eq!(l, 1.0);
        assert_eq!(v, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn non_finite_rejected() {
        let a = Matrix::from_rows(&[vec![1.0, f64::NAN], vec![f64::NAN, 1.0]]).unwrap();
        assert!(matches!(smallest_eigenpair(&a), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn full_decomposition_reconstructs() {
        let n = 7;
        let a = Matrix::<f64>::from_fn(n, |i, j| {
            1.0 / (1.0 + i as f64 + j as f64) + if i == j { i as f64 } else { 0.0 }
        });
        let eig = symmetric_eigen(&a).unwrap();
        for k in 0..n {
            let v: Vec<f64> = (0..n).map(|i| eig.vectors[(i, k)]).collect();
            let av = a.mul_vec(&v);
            for i in 0..n {
                assert_abs_diff_eq!(av[i], eig.values[k] * v[i], epsilon = 1e-12);
            }
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn cholesky_congruence_of_self_is_identity() {
        let a = Matrix::<f64>::from_fn(5, |i, j| if i == j { 4.0 } else { 1.0 / (1.0 + (i + j) as f64) });
        let l = cholesky(&a).unwrap();
        let c = congruence_inverse(&l, &a);
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!(c[(i, j)], if i == j { 1.0 } else { 0.0 }, epsilon = 1e-13);
            }
        }
        let bad = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(cholesky(&bad).is_err());
    }
}
