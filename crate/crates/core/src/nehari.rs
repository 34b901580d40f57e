//! From a functional `c` back to its extremal boundary form.
//!
//! With `R(z) = z Σ cₖ/(z − βₖ)`, the support value `sup Re Σ cₖ f(βₖ)` over
//! the H¹ unit ball equals `dist(R, H∞₀)`, the norm of the Hankel operator
//! with symbol `e^{−it}R(e^{it})`. That operator has rank `n` and range
//! spanned by the Szegő kernels `kⱼ(z) = 1/(1 − conj(βⱼ)z)`, so the whole
//! computation reduces to the `n × n` Gram matrix
//! `G[i][j] = 1/(1 − βᵢ conj(βⱼ))`: with `G = L L*`,
//!
//! ```text
//! support(c) = σ₁(Lᵀ diag(c) L).
//! ```
//!
//! A Takagi vector `x` of that complex symmetric matrix (`xᵀYx = σ₁`) gives
//! the maximizing vector `h = Σ aⱼ kⱼ`, `a = L^{−*}x`, and the extremal form
//! `F = h² = q²P` with `F(βₖ) = (Lx)ₖ²`. The explicit Hankel matrix
//! `H[k][l] = r_{k+l}` is kept for inspection and cross-checks.

use num_complex::Complex;

use crate::cpoly::{CPolynomial, DEFAULT_CIRCLE_TOL};
use crate::duality::{functional_from_kernel, kernel_from_form, Functional, KernelCertificate};
use crate::grid::UnitGrid;
use crate::hardy::{h1_norm, BoundaryForm, NodeSet};
use crate::linalg::{hermitian_eigen, solve_real, CMatrix};
use crate::{Error, Real, Result};

/// Largest truncation order [`truncation_order`] will return.
pub const MAX_TRUNCATION: usize = 2000;

/// Moments `r_j = Σ cₖ βₖ^j` of `R(e^{it}) = Σ_{j≥0} r_j e^{−ijt}` and the
/// truncated Hankel matrix `H[k][l] = r_{k+l}`, `0 ≤ k, l < N_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelSystem<T> {
    functional: Functional<T>,
    r: Vec<Complex<T>>,
    truncation: usize,
}

impl<T: Real> HankelSystem<T> {
    pub fn new(c: &Functional<T>, truncation: usize) -> Result<Self> {
        let n = c.nodes().len();
        if truncation < n + 10 {
            return Err(Error::invalid(format!(
                "truncation {truncation} is below n + 10 = {}",
                n + 10
            )));
        }
        Ok(Self {
            functional: c.clone(),
            r: hankel_coeffs(c, truncation),
            truncation,
        })
    }

    /// Uses [`truncation_order`] for the node set.
    pub fn with_default_truncation(c: &Functional<T>) -> Result<Self> {
        Self::new(c, truncation_order(c.nodes()))
    }

    pub fn functional(&self) -> &Functional<T> {
        &self.functional
    }

    pub fn r(&self) -> &[Complex<T>] {
        &self.r
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn entry(&self, k: usize, l: usize) -> Complex<T> {
        self.r[k + l]
    }

    pub fn matrix(&self) -> CMatrix<T> {
        CMatrix::from_fn(self.truncation, |k, l| self.r[k + l])
    }

    /// `(Σ|cₖ|)·ρ^j`, an upper bound for `|r_j|`.
    pub fn decay_bound(&self, j: usize) -> T {
        let s: T = self.functional.coeffs().iter().map(|c| c.norm()).sum();
        s * self.functional.nodes().max_modulus().powi(j as i32)
    }
}

/// `r_0, …, r_{2N_t−2}`.
pub fn hankel_coeffs<T: Real>(c: &Functional<T>, truncation: usize) -> Vec<Complex<T>> {
    let len = (2 * truncation).saturating_sub(1);
    let mut powers: Vec<Complex<T>> = vec![Complex::new(T::one(), T::zero()); c.nodes().len()];
    let mut r = Vec::with_capacity(len);
    for _ in 0..len {
        r.push(c.apply(&powers));
        for (p, b) in powers.iter_mut().zip(c.nodes().beta()) {
            *p = *p * b;
        }
    }
    r
}

/// Smallest `N` with `ρ^N ≤ 1e−12` (`ρ = max|βₖ|`), at least `n + 10`, at most [`MAX_TRUNCATION`].
pub fn truncation_order<T: Real>(nodes: &NodeSet<T>) -> usize {
    let rho = nodes.max_modulus().to_f64_lossy();
    let raw = if rho <= 0.0 {
        1.0
    } else {
        ((1e-12f64).ln() / rho.ln()).ceil()
    };
    (raw as usize).max(nodes.len() + 10).min(MAX_TRUNCATION)
}

fn gram_factor<T: Real>(nodes: &NodeSet<T>) -> Result<CMatrix<T>> {
    let b = nodes.beta();
    let one = Complex::new(T::one(), T::zero());
    CMatrix::from_fn(b.len(), |i, j| (one - b[i] * b[j].conj()).inv()).cholesky()
}

/// `Y = Lᵀ diag(c) L`.
fn reduced_matrix<T: Real>(l: &CMatrix<T>, c: &[Complex<T>]) -> CMatrix<T> {
    let n = l.dim();
    CMatrix::from_fn(n, |i, j| {
        (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + l[(k, i)] * c[k] * l[(k, j)])
    })
}

/// Singular values of `Y`, largest first, plus the top right singular vector.
fn top_singular<T: Real>(y: &CMatrix<T>) -> (Vec<T>, Vec<Complex<T>>) {
    let eig = hermitian_eigen(&y.conj_transpose().mul(y));
    let sv = eig.values.iter().map(|v| v.max(T::zero()).sqrt()).collect();
    (sv, eig.vectors.column(0))
}

/// The value `sup { Re Σ cₖ f(βₖ) : ‖f‖₁ ≤ 1 }`.
pub fn support_function<T: Real>(c: &Functional<T>) -> Result<T> {
    let l = gram_factor(c.nodes())?;
    let (sv, _) = top_singular(&reduced_matrix(&l, c.coeffs()));
    Ok(sv[0])
}

/// Real subgradient data of the support function at `c`: returns the value
/// and the evaluation vector `u` of an extremal function, so that
/// `support(c′) ≥ Re Σ c′ₖ uₖ` for every `c′` with equality at `c`.
pub(crate) fn support_with_point<T: Real>(c: &Functional<T>) -> Result<(T, Vec<Complex<T>>)> {
    let l = gram_factor(c.nodes())?;
    let y = reduced_matrix(&l, c.coeffs());
    let (sv, top) = top_singular(&y);
    let x = takagi_vector(&y, sv[0], &top);
    let lx = l.mul_vec(&x);
    Ok((sv[0], lx.iter().map(|v| v * v).collect()))
}

/// Fixed point of `y ↦ conj(Y y)/σ` built from a top singular vector; satisfies `xᵀYx = σ`, `‖x‖ = 1`.
fn takagi_vector<T: Real>(y: &CMatrix<T>, sigma: T, v: &[Complex<T>]) -> Vec<Complex<T>> {
    let jv: Vec<Complex<T>> = y.mul_vec(v).iter().map(|z| z.conj().unscale(sigma)).collect();
    let plus: Vec<Complex<T>> = v.iter().zip(&jv).map(|(a, b)| a + b).collect();
    let minus: Vec<Complex<T>> = v
        .iter()
        .zip(&jv)
        .map(|(a, b)| (a - b) * Complex::new(T::zero(), T::one()))
        .collect();
    let norm = |w: &[Complex<T>]| w.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let (w, nw) = if norm(&plus) >= norm(&minus) {
        let n = norm(&plus);
        (plus, n)
    } else {
        let n = norm(&minus);
        (minus, n)
    };
    w.into_iter().map(|z| z.unscale(nw)).collect()
}

/// Evaluation vectors `(Lx)²` of extremal functions built from random
/// combinations of the singular vectors whose singular value lies within
/// `tie_tol` of the top one (a single vector when the top is simple).
pub(crate) fn cluster_values<T: Real, R: rand::Rng + ?Sized>(
    c: &Functional<T>,
    tie_tol: T,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<Vec<Complex<T>>>> {
    let l = gram_factor(c.nodes())?;
    let y = reduced_matrix(&l, c.coeffs());
    let eig = hermitian_eigen(&y.conj_transpose().mul(&y));
    let sigma = eig.values[0].max(T::zero()).sqrt();
    let cutoff = sigma * (T::one() - tie_tol);
    let cluster: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i].max(T::zero()).sqrt() >= cutoff)
        .collect();
    let n = l.dim();
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut v = vec![Complex::new(T::zero(), T::zero()); n];
        for &j in &cluster {
            let w: Complex<T> = crate::random::complex_normal(rng);
            for (i, vi) in v.iter_mut().enumerate() {
                *vi = *vi + eig.vectors[(i, j)] * w;
            }
        }
        let nv = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        v.iter_mut().for_each(|z| *z = z.unscale(nv));
        let x = takagi_vector(&y, sigma, &v);
        out.push(l.mul_vec(&x).iter().map(|z| z * z).collect());
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ExtremalOptions<T> {
    pub grid: UnitGrid,
    /// Relative gap `σ₂ ≥ σ₁(1 − tie_tol)` that counts as a repeated top singular value.
    pub tie_tol: T,
    pub circle_tol: T,
    /// Relative trimming threshold for the leading coefficients of `q`.
    pub trim_tol: T,
    /// Residual of the residue map above which Newton refinement runs.
    pub polish_tol: T,
    pub max_polish_iters: usize,
}

impl<T: Real> Default for ExtremalOptions<T> {
    fn default() -> Self {
        Self {
            grid: UnitGrid::default(),
            tie_tol: T::lit(1e-9),
            circle_tol: T::lit(DEFAULT_CIRCLE_TOL),
            trim_tol: T::lit(1e-10),
            polish_tol: T::lit(1e-10),
            max_polish_iters: 30,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtremalSolution<T> {
    /// Support value of the functional as given.
    pub support: T,
    /// Second singular value of the reduced problem (zero when `n = 1`).
    pub second_singular: T,
    /// The input functional.
    pub original: Functional<T>,
    /// The functional rescaled to support value one.
    pub functional: Functional<T>,
    pub form: BoundaryForm<T>,
    pub kernel: KernelCertificate<T>,
    pub unique: bool,
    /// Top singular value repeated within the tie tolerance.
    pub tie: bool,
    /// `max |cₖ(q) − cₖ|` between the residues of `kernel` and `functional`.
    pub residual: T,
}

impl<T: Real> ExtremalSolution<T> {
    pub fn values(&self) -> Vec<Complex<T>> {
        self.form.values()
    }

    /// The best approximation `g₀ = R − σK` from `H∞₀`.
    pub fn g0_eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.original.r_eval(z)? - self.kernel.eval(z)?.scale(self.support))
    }
}

pub fn extremal_solve<T: Real>(c: &Functional<T>, opts: &ExtremalOptions<T>) -> Result<ExtremalSolution<T>> {
    let nodes = c.nodes();
    let n = nodes.len();
    let l = gram_factor(nodes)?;
    let y = reduced_matrix(&l, c.coeffs());
    let (sv, top) = top_singular(&y);
    let sigma = sv[0];
    if !(sigma > T::zero()) || !sigma.is_finite() {
        return Err(Error::Invariant(format!("support value {sigma} is not positive")));
    }
    let second = sv.get(1).copied().unwrap_or(T::zero());
    let tie = n > 1 && second >= sigma * (T::one() - opts.tie_tol);
    let x = takagi_vector(&y, sigma, &top);
    let a = l.solve_lower_adjoint(&x);

    // q(z) = Σ aⱼ Πᵢ≠ⱼ (1 − conj(βᵢ) z)
    let one = CPolynomial::constant(Complex::new(T::one(), T::zero()));
    let factors: Vec<CPolynomial<T>> = nodes
        .beta()
        .iter()
        .map(|b| CPolynomial::new(vec![Complex::new(T::one(), T::zero()), -b.conj()]))
        .collect();
    let mut q = CPolynomial::zero();
    for (j, aj) in a.iter().enumerate() {
        let mut term = one.clone();
        for (i, f) in factors.iter().enumerate() {
            if i != j {
                term = term.mul(f);
            }
        }
        q = q.add(&term.scale(*aj));
    }
    let q = q.trim_relative(opts.trim_tol);

    let scaled = c.scaled(Complex::new(sigma.recip(), T::zero()));
    let (ell, w_zeros, q) = split_inner(&q, opts.circle_tol)?;
    let mut form = BoundaryForm::with_scale(nodes.clone(), ell, w_zeros, q, T::one(), opts.circle_tol)
        .map_err(|e| Error::Invariant(format!("recovered form is invalid: {e}")))?;
    let mut residual = residue_residual(&form, &scaled)?;
    if residual > opts.polish_tol && form.is_outer() {
        if let Some((f, r)) = polish(&form, &scaled, opts)? {
            form = f;
            residual = r;
        }
    }
    let kernel = kernel_from_form(&form);
    let circle_roots = !form.q().classify_roots(opts.circle_tol)?.on_circle.is_empty();
    Ok(ExtremalSolution {
        support: sigma,
        second_singular: second,
        original: c.clone(),
        functional: scaled,
        form,
        kernel,
        unique: !tie && !circle_roots,
        tie,
        residual,
    })
}

/// Rewrites `h² = q_h²P` in boundary form. A root `w` of `q_h` inside the
/// disc (which only occurs when the top singular value is repeated) becomes
/// a double zero of `W`, using `z − w = B_w(z)·(1 − conj(w)z)` on the circle;
/// a root at the origin contributes `z²`.
fn split_inner<T: Real>(
    q_h: &CPolynomial<T>,
    circle_tol: T,
) -> Result<(usize, Vec<Complex<T>>, CPolynomial<T>)> {
    let mut q = q_h.clone();
    let mut ell = 0;
    while q.degree().is_some_and(|d| d > 0) && q.coeffs()[0].norm() <= T::lit(1e-14) * q.coeff_scale() {
        q = CPolynomial::new(q.coeffs()[1..].to_vec());
        ell += 2;
    }
    let inside = q.classify_roots(circle_tol)?.inside;
    let mut w_zeros = Vec::with_capacity(2 * inside.len());
    let one = Complex::new(T::one(), T::zero());
    for w in inside {
        q = q.deflate(w).0.mul(&CPolynomial::new(vec![one, -w.conj()]));
        w_zeros.push(w);
        w_zeros.push(w);
    }
    Ok((ell, w_zeros, q))
}

fn residue_residual<T: Real>(f: &BoundaryForm<T>, target: &Functional<T>) -> Result<T> {
    let got = functional_from_kernel(&kernel_from_form(f))?;
    Ok(got
        .coeffs()
        .iter()
        .zip(target.coeffs())
        .fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
}

/// Levenberg–Marquardt on the residue map `q ↦ c(q)` with a finite-difference
/// Jacobian; outer forms only. Returns `None` when no improvement was found.
fn polish<T: Real>(
    start: &BoundaryForm<T>,
    target: &Functional<T>,
    opts: &ExtremalOptions<T>,
) -> Result<Option<(BoundaryForm<T>, T)>> {
    let nodes = start.nodes().clone();
    let n = nodes.len();
    let coeffs_of = |q: &CPolynomial<T>| -> Vec<T> {
        q.coeffs().iter().flat_map(|z| [z.re, z.im]).collect()
    };
    let poly_of = |p: &[T]| CPolynomial::new(p.chunks(2).map(|w| Complex::new(w[0], w[1])).collect());
    let residual_vec = |p: &[T]| -> Option<Vec<T>> {
        let f = BoundaryForm::with_scale(nodes.clone(), 0, vec![], poly_of(p), T::one(), opts.circle_tol).ok()?;
        let got = functional_from_kernel(&kernel_from_form(&f)).ok()?;
        Some(
            got.coeffs()
                .iter()
                .zip(target.coeffs())
                .flat_map(|(a, b)| [(a - b).re, (a - b).im])
                .collect(),
        )
    };
    let norm_inf = |r: &[T]| r.chunks(2).fold(T::zero(), |m, w| m.max(w[0].hypot(w[1])));

    let mut p = coeffs_of(start.q());
    let dim = p.len();
    let Some(mut res) = residual_vec(&p) else { return Ok(None) };
    let initial = norm_inf(&res);
    let mut best = initial;
    let mut mu = T::lit(1e-6);
    for _ in 0..opts.max_polish_iters {
        if best <= opts.polish_tol * T::lit(1e-2) {
            break;
        }
        let scale = p.iter().fold(T::zero(), |m, v| m.max(v.abs())).max(T::one());
        let h = T::lit(1e-7) * scale;
        let mut jac = vec![T::zero(); 2 * n * dim];
        for j in 0..dim {
            let mut pp = p.clone();
            pp[j] = pp[j] + h;
            let Some(rp) = residual_vec(&pp) else { return Ok(None) };
            for i in 0..2 * n {
                jac[i * dim + j] = (rp[i] - res[i]) / h;
            }
        }
        // (JᵀJ + μ·diag) δ = −Jᵀr
        let mut jtj = vec![T::zero(); dim * dim];
        let mut jtr = vec![T::zero(); dim];
        for a in 0..dim {
            for b in 0..dim {
                jtj[a * dim + b] = (0..2 * n).map(|i| jac[i * dim + a] * jac[i * dim + b]).sum();
            }
            jtr[a] = -(0..2 * n).map(|i| jac[i * dim + a] * res[i]).sum::<T>();
        }
        let mut improved = false;
        for _ in 0..8 {
            let mut damped = jtj.clone();
            for a in 0..dim {
                damped[a * dim + a] = damped[a * dim + a] * (T::one() + mu) + mu * T::lit(1e-12);
            }
            let Ok(delta) = solve_real(&damped, dim, &jtr) else {
                mu = mu * T::lit(10.0);
                continue;
            };
            let trial: Vec<T> = p.iter().zip(&delta).map(|(a, d)| *a + *d).collect();
            if let Some(r) = residual_vec(&trial) {
                let nr = norm_inf(&r);
                if nr < best {
                    p = trial;
                    res = r;
                    best = nr;
                    mu = (mu / T::lit(10.0)).max(T::lit(1e-15));
                    improved = true;
                    break;
                }
            }
            mu = mu * T::lit(10.0);
        }
        if !improved {
            break;
        }
    }
    if best >= initial {
        return Ok(None);
    }
    let raw = BoundaryForm::with_scale(nodes, 0, vec![], poly_of(&p), T::one(), opts.circle_tol)?;
    let norm = h1_norm(&raw, &opts.grid);
    Ok(Some((raw.rescaled(norm.recip()), best)))
}
