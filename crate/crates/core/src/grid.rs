//! Uniform grids on the unit circle and deterministic summation.

use num_complex::Complex;

use crate::{Error, Real, Result};

/// Uniform `n`-point grid `t_j = 2πj/n` on the circle; `n` is a power of two ≥ 256.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitGrid {
    n: usize,
}

impl UnitGrid {
    pub const DEFAULT_SIZE: usize = 4096;

    pub fn new(n: usize) -> Result<Self> {
        if n < 256 || !n.is_power_of_two() {
            return Err(Error::invalid(format!(
                "grid size must be a power of two >= 256, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn doubled(&self) -> Self {
        Self { n: 2 * self.n }
    }

    pub fn angle<T: Real>(&self, j: usize) -> T {
        T::TAU() * T::of_usize(j) / T::of_usize(self.n)
    }

    pub fn point<T: Real>(&self, j: usize) -> Complex<T> {
        Complex::from_polar(T::one(), self.angle(j))
    }

    pub fn points<T: Real>(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Trapezoidal mean of `f` over the grid (normalized arc length).
    pub fn mean<T: Real>(&self, f: impl Fn(Complex<T>) -> T) -> T {
        let vals: Vec<T> = self.points().map(f).collect();
        pairwise_sum(&vals) / T::of_usize(self.n)
    }

    pub fn mean_complex<T: Real>(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Complex<T> {
        let vals: Vec<Complex<T>> = self.points().map(f).collect();
        let re: Vec<T> = vals.iter().map(|v| v.re).collect();
        let im: Vec<T> = vals.iter().map(|v| v.im).collect();
        Complex::new(pairwise_sum(&re), pairwise_sum(&im)) / T::of_usize(self.n)
    }
}

impl Default for UnitGrid {
    fn default() -> Self {
        Self {
            n: Self::DEFAULT_SIZE,
        }
    }
}

/// Pairwise (cascade) summation; result depends only on the slice contents.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().fold(T::zero(), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(UnitGrid::new(128).is_err());
        assert!(UnitGrid::new(1000).is_err());
        assert!(UnitGrid::new(1024).is_ok());
    }

    #[test]
    fn mean_of_trig_monomials() {
        let g = UnitGrid::new(256).unwrap();
        let m0 = g.mean(|_z: Complex<f64>| 1.0);
        assert!((m0 - 1.0).abs() < 1e-15);
        let m1 = g.mean_complex(|z: Complex<f64>| z.powu(3));
        assert!(m1.norm() < 1e-15);
    }

    #[test]
    fn pairwise_matches_naive_sum() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }
}
