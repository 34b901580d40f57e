//! Brute-force referee: extremal values and minimal interpolation norms
//! computed directly over polynomials of bounded degree, with no use of the
//! structure theory.
//!
//! Both problems are `min mean_j |f(z_j)|` on a circle grid subject to linear
//! constraints on the coefficients of `f`, solved by iteratively reweighted
//! least squares with a shrinking smoothing parameter. Each weighted Gram
//! matrix is Toeplitz, built from one FFT of the weights. Degrees are climbed
//! in steps of five with warm starts, so results are monotone in the degree.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::duality::Functional;
use crate::grid::UnitGrid;
use crate::hardy::NodeSet;
use crate::linalg::CMatrix;
use crate::{Error, Real, Result};

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub degree: usize,
    pub grid: UnitGrid,
    /// IRLS iterations per rung of the degree ladder.
    pub max_iterations: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            degree: 50,
            grid: UnitGrid::default(),
            max_iterations: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub value: T,
    pub converged: bool,
    pub iterations: usize,
    /// `(degree, value)` for every rung that was solved, lowest degree first.
    pub ladder: Vec<(usize, T)>,
    /// Coefficients of the best polynomial at the top degree.
    pub coeffs: Vec<Complex<T>>,
}

/// Lower bound for `sup { Re Σ cₖ f(βₖ) : ‖f‖₁ ≤ 1 }` from polynomials of
/// degree ≤ `opts.degree`, as `1 / min { ‖f‖₁ : Σ cₖ f(βₖ) = 1 }`.
pub fn oracle_support<T: Real>(c: &Functional<T>, opts: &OracleOptions) -> Result<OracleResult<T>> {
    check(c.nodes(), opts)?;
    let deg = opts.degree;
    let r = crate::nehari::hankel_coeffs(c, deg + 1);
    let rows = vec![r[..=deg].to_vec()];
    let rhs = vec![Complex::new(T::one(), T::zero())];
    let res = ladder(&rows, &rhs, c.nodes().len(), opts)?;
    Ok(OracleResult {
        value: res.value.recip(),
        ladder: res.ladder.into_iter().map(|(d, v)| (d, v.recip())).collect(),
        ..res
    })
}

/// Upper bound for `min { ‖f‖₁ : f(βₖ) = vₖ }` over polynomials of degree ≤ `opts.degree`.
pub fn oracle_min_norm<T: Real>(
    v: &[Complex<T>],
    nodes: &NodeSet<T>,
    opts: &OracleOptions,
) -> Result<OracleResult<T>> {
    check(nodes, opts)?;
    let n = nodes.len();
    if v.len() != n {
        return Err(Error::invalid(format!("point has {} coordinates for {n} nodes", v.len())));
    }
    if v.iter().all(|z| z.norm() == T::zero()) {
        return Ok(OracleResult {
            value: T::zero(),
            converged: true,
            iterations: 0,
            ladder: vec![(opts.degree, T::zero())],
            coeffs: vec![Complex::new(T::zero(), T::zero()); opts.degree + 1],
        });
    }
    let rows: Vec<Vec<Complex<T>>> = nodes
        .beta()
        .iter()
        .map(|b| {
            let mut p = Complex::new(T::one(), T::zero());
            (0..=opts.degree)
                .map(|_| {
                    let x = p;
                    p = p * b;
                    x
                })
                .collect()
        })
        .collect();
    ladder(&rows, v, n, opts)
}

fn check<T: Real>(nodes: &NodeSet<T>, opts: &OracleOptions) -> Result<()> {
    if opts.degree < nodes.len() {
        return Err(Error::invalid(format!(
            "degree {} is below the number of nodes {}",
            opts.degree,
            nodes.len()
        )));
    }
    if opts.grid.len() < 1024 {
        return Err(Error::invalid(format!("grid size {} is below 1024", opts.grid.len())));
    }
    if opts.grid.len() <= 2 * opts.degree {
        return Err(Error::invalid("grid too coarse for the degree"));
    }
    Ok(())
}

/// Rungs `deg, deg − 5, …` down to the smallest one ≥ `n`, solved upward.
fn ladder<T: Real>(
    rows: &[Vec<Complex<T>>],
    rhs: &[Complex<T>],
    n: usize,
    opts: &OracleOptions,
) -> Result<OracleResult<T>> {
    let mut rungs: Vec<usize> = (0..)
        .map(|k| opts.degree as isize - 5 * k)
        .take_while(|&d| d >= n as isize)
        .map(|d| d as usize)
        .collect();
    rungs.reverse();
    let mut solver = Irls::new(opts.grid.len());
    let mut best: Option<(Vec<Complex<T>>, T)> = None;
    let mut ladder = Vec::with_capacity(rungs.len());
    let mut iterations = 0;
    let mut converged = true;
    for d in rungs {
        let sub: Vec<Vec<Complex<T>>> = rows.iter().map(|r| r[..=d].to_vec()).collect();
        let warm = best.as_ref().map(|(f, _)| {
            let mut g = f.clone();
            g.resize(d + 1, Complex::new(T::zero(), T::zero()));
            g
        });
        let out = solver.solve(&sub, rhs, warm, opts.max_iterations)?;
        iterations += out.iterations;
        converged = out.converged;
        let improved = best.as_ref().map_or(true, |(_, b)| out.norm < *b);
        if improved {
            best = Some((out.coeffs, out.norm));
        } else if let Some((f, _)) = best.as_mut() {
            f.resize(d + 1, Complex::new(T::zero(), T::zero()));
        }
        ladder.push((d, best.as_ref().map(|b| b.1).expect("set above")));
    }
    let (coeffs, value) = best.ok_or_else(|| Error::invalid("empty degree ladder"))?;
    Ok(OracleResult {
        value,
        converged,
        iterations,
        ladder,
        coeffs,
    })
}

struct IrlsOutput<T> {
    coeffs: Vec<Complex<T>>,
    norm: T,
    iterations: usize,
    converged: bool,
}

struct Irls<T: Real> {
    n: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> Irls<T> {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    /// `f(z_j)` on the grid.
    fn eval(&self, f: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut buf = vec![Complex::new(T::zero(), T::zero()); self.n];
        buf[..f.len()].copy_from_slice(f);
        self.inverse.process(&mut buf);
        buf
    }

    /// `t_d = mean_j w_j e^{i d θ_j}` for `d = 0..=deg`.
    fn toeplitz(&self, w: &[T], deg: usize) -> Vec<Complex<T>> {
        let mut buf: Vec<Complex<T>> = w.iter().map(|&x| Complex::new(x, T::zero())).collect();
        self.forward.process(&mut buf);
        let scale = T::of_usize(self.n);
        (0..=deg).map(|d| buf[(self.n - d) % self.n] / scale).collect()
    }

    /// `argmin f*Mf` subject to `A f = b`, with `M` the weighted Gram matrix.
    fn weighted_solve(
        &self,
        rows: &[Vec<Complex<T>>],
        rhs: &[Complex<T>],
        t: &[Complex<T>],
    ) -> Result<Vec<Complex<T>>> {
        let dim = t.len();
        let m = CMatrix::from_fn(dim, |i, l| if l >= i { t[l - i] } else { t[i - l].conj() });
        let chol = m.cholesky()?;
        let cols: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|r| {
                let rc: Vec<Complex<T>> = r.iter().map(|z| z.conj()).collect();
                chol.solve_lower_adjoint(&chol.solve_lower(&rc))
            })
            .collect();
        let k = rows.len();
        let s = CMatrix::from_fn(k, |i, j| {
            rows[i].iter().zip(&cols[j]).fold(Complex::new(T::zero(), T::zero()), |a, (x, y)| a + x * y)
        });
        let y = s.solve(rhs)?;
        Ok((0..dim)
            .map(|i| (0..k).fold(Complex::new(T::zero(), T::zero()), |a, j| a + cols[j][i] * y[j]))
            .collect())
    }

    fn solve(
        &mut self,
        rows: &[Vec<Complex<T>>],
        rhs: &[Complex<T>],
        warm: Option<Vec<Complex<T>>>,
        max_iter: usize,
    ) -> Result<IrlsOutput<T>> {
        let deg = rows[0].len() - 1;
        let mut f = match warm {
            Some(f) => f,
            None => self.weighted_solve(rows, rhs, &self.toeplitz(&vec![T::one(); self.n], deg))?,
        };
        let mean_abs = |vals: &[Complex<T>]| crate::grid::pairwise_sum(&vals.iter().map(|z| z.norm()).collect::<Vec<_>>()) / T::of_usize(self.n);
        let mut vals = self.eval(&f);
        let norm = mean_abs(&vals);
        let mut best = (f.clone(), norm);
        let mut eps = norm * T::lit(1e-2);
        let floor = T::lit(1e-10);
        let mut stall = 0;
        let mut iterations = 0;
        let mut converged = false;
        for _ in 0..max_iter {
            iterations += 1;
            let w: Vec<T> = vals.iter().map(|z| (z.norm_sqr() + eps * eps).sqrt().recip()).collect();
            let Ok(next) = self.weighted_solve(rows, rhs, &self.toeplitz(&w, deg)) else { break };
            f = next;
            vals = self.eval(&f);
            let new_norm = mean_abs(&vals);
            let gain = (best.1 - new_norm) / best.1;
            if new_norm < best.1 {
                best = (f.clone(), new_norm);
            }
            if gain < T::lit(1e-4) {
                eps = (eps * T::lit(0.3)).max(floor * best.1);
            }
            if eps <= floor * best.1 && gain.abs() < T::lit(1e-12) {
                stall += 1;
                if stall >= 3 {
                    converged = true;
                    break;
                }
            } else {
                stall = 0;
            }
        }
        Ok(IrlsOutput {
            coeffs: best.0,
            norm: best.1,
            iterations,
            converged,
        })
    }
}
