//! Small dense complex linear algebra (row-major `n × n` buffers).
//!
//! Sizes here are bounded by the node count or a polynomial degree, so plain
//! O(n³) kernels are all that is needed.

use num_complex::Complex;

use crate::{Error, Real, Result};

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + self[(i, k)] * other[(k, j)]
            })
        })
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                    acc + self[(i, k)] * x[k]
                })
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Lower-triangular `L` with `self = L·L*`; fails unless Hermitian positive definite.
    pub fn cholesky(&self) -> Result<Self> {
        let n = self.n;
        let mut l = Self::zeros(n);
        for j in 0..n {
            let mut d = self[(j, j)].re;
            for k in 0..j {
                d = d - l[(j, k)].norm_sqr();
            }
            if !(d > T::zero()) {
                return Err(Error::NotFactorable(format!(
                    "matrix is not positive definite (pivot {j} = {d})"
                )));
            }
            let djj = d.sqrt();
            l[(j, j)] = Complex::new(djj, T::zero());
            for i in (j + 1)..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(l)
    }

    /// Solves `L x = b` for lower-triangular `self`.
    pub fn solve_lower(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        let mut x = b.to_vec();
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s = s - self[(i, k)] * x[k];
            }
            x[i] = s / self[(i, i)];
        }
        x
    }

    /// Solves `L* x = b` for lower-triangular `self`.
    pub fn solve_lower_adjoint(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s = s - self[(k, i)].conj() * x[k];
            }
            x[i] = s / self[(i, i)].conj();
        }
        x
    }

    /// Solves a Hermitian positive definite system via Cholesky.
    pub fn solve_hpd(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let l = self.cholesky()?;
        Ok(l.solve_lower_adjoint(&l.solve_lower(b)))
    }

    /// General solve by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut x = b.to_vec();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| {
                    a[i * n + col]
                        .norm()
                        .partial_cmp(&a[j * n + col].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            if a[piv * n + col].norm() == T::zero() {
                return Err(Error::invalid("singular linear system"));
            }
            if piv != col {
                for k in 0..n {
                    a.swap(col * n + k, piv * n + k);
                }
                x.swap(col, piv);
            }
            let p = a[col * n + col];
            for i in (col + 1)..n {
                let f = a[i * n + col] / p;
                if f.norm() == T::zero() {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[i * n + k] = a[i * n + k] - f * v;
                }
                let xc = x[col];
                x[i] = x[i] - f * xc;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s = s - a[i * n + k] * x[k];
            }
            x[i] = s / a[i * n + i];
        }
        Ok(x)
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Eigenvalues, largest first.
    pub values: Vec<T>,
    /// Eigenvectors as columns, ordered like `values`.
    pub vectors: CMatrix<T>,
}

/// Cyclic complex Jacobi iteration. Only the Hermitian part of `a` is used.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>) -> HermitianEigen<T> {
    let n = a.dim();
    let mut m = CMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()).unscale(T::lit(2.0)));
    let mut v = CMatrix::identity(n);
    let eps = T::epsilon();

    for _sweep in 0..100 {
        let mut off = T::zero();
        let mut diag = T::zero();
        for i in 0..n {
            diag = diag + m[(i, i)].norm_sqr();
            for j in (i + 1)..n {
                off = off + m[(i, j)].norm_sqr();
            }
        }
        if off <= eps * eps * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = m[(p, q)];
                let babs = b.norm();
                if babs == T::zero() {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                if babs <= eps * eps * (app.abs() + aqq.abs()) {
                    m[(p, q)] = Complex::new(T::zero(), T::zero());
                    m[(q, p)] = Complex::new(T::zero(), T::zero());
                    continue;
                }
                let phase = b / babs;
                let theta = (aqq - app) / (T::lit(2.0) * babs);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // P = [[c, s·e^{iφ}], [-s·e^{-iφ}, c]] acting on (p, q)
                let sp = phase.scale(s);
                let spc = sp.conj();
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp.scale(c) - akq * spc;
                    m[(k, q)] = akp * sp + akq.scale(c);
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk.scale(c) - aqk * sp;
                    m[(q, k)] = apk * spc + aqk.scale(c);
                }
                m[(p, q)] = Complex::new(T::zero(), T::zero());
                m[(q, p)] = Complex::new(T::zero(), T::zero());
                m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
                m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp.scale(c) - vkq * spc;
                    v[(k, q)] = vkp * sp + vkq.scale(c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(j, j)]
            .re
            .partial_cmp(&m[(i, i)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Solves a small dense real system by Gaussian elimination with partial pivoting.
pub fn solve_real<T: Real>(a: &[T], n: usize, b: &[T]) -> Result<Vec<T>> {
    let mut a = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                a[i * n + col]
                    .abs()
                    .partial_cmp(&a[j * n + col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if a[piv * n + col] == T::zero() {
            return Err(Error::invalid("singular linear system"));
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        for i in (col + 1)..n {
            let f = a[i * n + col] / a[col * n + col];
            for k in col..n {
                a[i * n + k] = a[i * n + k] - f * a[col * n + k];
            }
            x[i] = x[i] - f * x[col];
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in (i + 1)..n {
            s = s - a[i * n + k] * x[k];
        }
        x[i] = s / a[i * n + i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn sample(n: usize, seed: u64) -> CMatrix<f64> {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        CMatrix::from_fn(n, |_, _| C::new(next(), next()))
    }

    #[test]
    fn cholesky_reconstructs() {
        let a = sample(5, 3);
        let h = a.mul(&a.conj_transpose());
        let h = CMatrix::from_fn(5, |i, j| h[(i, j)] + if i == j { C::new(0.1, 0.0) } else { C::new(0.0, 0.0) });
        let l = h.cholesky().unwrap();
        let back = l.mul(&l.conj_transpose());
        for i in 0..5 {
            for j in 0..5 {
                assert!((back[(i, j)] - h[(i, j)]).norm() < 1e-13);
            }
        }
        let b: Vec<C> = (0..5).map(|k| C::new(k as f64, 1.0)).collect();
        let x = h.solve_hpd(&b).unwrap();
        let r = h.mul_vec(&x);
        for k in 0..5 {
            assert!((r[k] - b[k]).norm() < 1e-11);
        }
    }

    #[test]
    fn jacobi_diagonalizes_hermitian() {
        let a = sample(6, 11);
        let h = a.mul(&a.conj_transpose());
        let eig = hermitian_eigen(&h);
        for j in 0..6 {
            let v = eig.vectors.column(j);
            let hv = h.mul_vec(&v);
            for k in 0..6 {
                assert!((hv[k] - v[k].scale(eig.values[j])).norm() < 1e-12);
            }
        }
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn general_solve() {
        let a = sample(4, 7);
        let b: Vec<C> = (0..4).map(|k| C::new(1.0, k as f64)).collect();
        let x = a.solve(&b).unwrap();
        let r = a.mul_vec(&x);
        for k in 0..4 {
            assert!((r[k] - b[k]).norm() < 1e-12);
        }
        let xr: Vec<f64> = solve_real(&[2.0, 1.0, 1.0, 3.0], 2, &[3.0, 5.0]).unwrap();
        assert!((xr[0] - 0.8).abs() < 1e-14 && (xr[1] - 1.4).abs() < 1e-14);
    }
}
