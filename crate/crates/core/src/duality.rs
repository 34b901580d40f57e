//! Dual certificates for boundary points of Λ.
//!
//! For a boundary form `F = A z^ℓ W q² P` the kernel
//!
//! ```text
//! K(z) = z^{m−ℓ} · q̃(z) / (q(z) · B(z) · W(z)),    q̃ = reflect(q, deg q)
//! ```
//!
//! is unimodular on the circle, vanishes at the origin, has simple poles at
//! the nodes, and `F·K = |F|` on the circle. With `cₖ = Res_{βₖ}K / βₖ` the
//! pairing `∮ f K dσ` equals `Σ cₖ f(βₖ)` for every `f ∈ H¹`, which is what
//! makes `(F(β₁), …, F(βₙ))` a boundary point.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::cpoly::{CPolynomial, DEFAULT_CIRCLE_TOL};
use crate::grid::UnitGrid;
use crate::hardy::{blaschke_eval, h1_norm_of, BoundaryForm, NodeSet};
use crate::{random, Error, Real, Result};

/// The unimodular kernel attached to a boundary form.
///
/// Roots `λ` of `q` on (or within the circle tolerance of) the circle are
/// divided out of both `q` and `q̃`; each contributes the Möbius factor
/// `(1 − conj(λ)z)/(z − λ) = −conj(λ) + (1 − |λ|²)/(z − λ)`, which stays
/// well defined at grid points that hit the root.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCertificate<T> {
    nodes: NodeSet<T>,
    m: usize,
    ell: usize,
    q: CPolynomial<T>,
    w_zeros: Vec<Complex<T>>,
    core: CPolynomial<T>,
    core_reflected: CPolynomial<T>,
    circle_roots: Vec<Complex<T>>,
    gain: Complex<T>,
}

impl<T: Real> KernelCertificate<T> {
    pub fn nodes(&self) -> &NodeSet<T> {
        &self.nodes
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn q(&self) -> &CPolynomial<T> {
        &self.q
    }

    pub fn w_zeros(&self) -> &[Complex<T>] {
        &self.w_zeros
    }

    /// The same kernel multiplied by a constant (breaks the certificate
    /// unless `|factor| = 1`; used to exercise the checks).
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self {
            gain: self.gain * factor,
            ..self.clone()
        }
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let den = self.core.eval(z) * self.nodes.blaschke(z)? * blaschke_eval(&self.w_zeros, z)?;
        if den.norm() <= T::min_positive_value() {
            return Err(Error::pole(z));
        }
        let pow = z.powu((self.m - self.ell) as u32);
        Ok(self.gain * self.circle_factor(z) * pow * self.core_reflected.eval(z) / den)
    }

    /// `Res_{βₖ} K`, from `B′(βₖ)` in closed form.
    pub fn residue(&self, k: usize) -> Result<Complex<T>> {
        let b = self.nodes.beta()[k];
        let w = blaschke_eval(&self.w_zeros, b)?;
        if w.norm() <= T::epsilon() {
            return Err(Error::invalid(format!("W vanishes at node beta[{k}]")));
        }
        let den = self.core.eval(b) * w * self.nodes.blaschke_derivative_at_node(k);
        let pow = b.powu((self.m - self.ell) as u32);
        Ok(self.gain * self.circle_factor(b) * pow * self.core_reflected.eval(b) / den)
    }

    fn circle_factor(&self, z: Complex<T>) -> Complex<T> {
        self.circle_roots.iter().fold(Complex::new(T::one(), T::zero()), |acc, &l| {
            let r = l.norm();
            let defect = (T::one() - r) * (T::one() + r);
            let d = z - l;
            let f = if d.norm() == T::zero() || defect == T::zero() {
                -l.conj()
            } else {
                -l.conj() + Complex::new(defect, T::zero()) / d
            };
            acc * f
        })
    }
}

pub fn kernel_from_form<T: Real>(f: &BoundaryForm<T>) -> KernelCertificate<T> {
    let q = f.q().clone();
    let circle_tol = T::lit(DEFAULT_CIRCLE_TOL);
    let circle: Vec<Complex<T>> = q
        .classify_roots(circle_tol)
        .map(|k| k.on_circle)
        .unwrap_or_default();
    let mut core = q.clone();
    for &l in &circle {
        core = core.deflate(l).0;
    }
    let core_reflected = core
        .reflect(core.degree().unwrap_or(0))
        .expect("reflection at the exact degree");
    KernelCertificate {
        nodes: f.nodes().clone(),
        m: f.m(),
        ell: f.ell(),
        q,
        w_zeros: f.w_zeros().to_vec(),
        core,
        core_reflected,
        circle_roots: circle,
        gain: Complex::new(T::one(), T::zero()),
    }
}

/// Coefficients `c` of the functional `f ↦ Σ cₖ f(βₖ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional<T> {
    nodes: NodeSet<T>,
    c: Vec<Complex<T>>,
}

impl<T: Real> Functional<T> {
    pub fn new(nodes: NodeSet<T>, c: Vec<Complex<T>>) -> Result<Self> {
        if c.len() != nodes.len() {
            return Err(Error::invalid(format!(
                "functional has {} coefficients for {} nodes",
                c.len(),
                nodes.len()
            )));
        }
        if c.iter().all(|x| x.norm() == T::zero()) {
            return Err(Error::invalid("functional coefficients are all zero"));
        }
        if c.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::invalid("functional coefficients must be finite"));
        }
        Ok(Self { nodes, c })
    }

    pub fn nodes(&self) -> &NodeSet<T> {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.c
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> T {
        self.c.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self {
            nodes: self.nodes.clone(),
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    /// `Σ cₖ vₖ`.
    pub fn apply(&self, values: &[Complex<T>]) -> Complex<T> {
        self.c
            .iter()
            .zip(values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (c, v)| acc + c * v)
    }

    pub fn pairing(&self, f: &BoundaryForm<T>) -> Complex<T> {
        self.apply(&f.values())
    }

    /// `R(z) = z · Σ cₖ/(z − βₖ)`.
    pub fn r_eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let mut s = Complex::new(T::zero(), T::zero());
        for (c, b) in self.c.iter().zip(self.nodes.beta()) {
            let d = z - b;
            if d.norm() == T::zero() {
                return Err(Error::pole(z));
            }
            s = s + c / d;
        }
        Ok(z * s)
    }
}

/// `cₖ = Res_{βₖ}K / βₖ`.
pub fn functional_from_kernel<T: Real>(k: &KernelCertificate<T>) -> Result<Functional<T>> {
    let c = (0..k.nodes.len())
        .map(|j| Ok(k.residue(j)? / k.nodes.beta()[j]))
        .collect::<Result<Vec<_>>>()?;
    Functional::new(k.nodes.clone(), c)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions<T> {
    pub grid: UnitGrid,
    /// Tolerance for the equality checks.
    pub eq_tol: T,
    /// Allowed negative slack in `Re(FK) ≥ 0`.
    pub positivity_tol: T,
    pub ball_samples: usize,
    pub ball_tol: T,
    pub seed: u64,
}

impl<T: Real> Default for VerifyOptions<T> {
    fn default() -> Self {
        Self {
            grid: UnitGrid::default(),
            eq_tol: T::lit(1e-8),
            positivity_tol: T::lit(1e-10),
            ball_samples: 200,
            ball_tol: T::lit(1e-7),
            seed: 0,
        }
    }
}

/// Outcome of [`verify_certificate`]; every measured quantity is reported
/// whether or not its check passed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport<T> {
    /// `max |(|K| − 1)|` on the grid.
    pub kernel_modulus_deviation: T,
    pub min_re_fk: T,
    pub max_abs_im_fk: T,
    /// `|∮ F K dσ − 1|`.
    pub fk_integral_error: T,
    /// `|Σ cₖ F(βₖ) − 1|`.
    pub pairing_error: T,
    /// Largest `Re Σ cₖ f(βₖ)` over the random unit-norm polynomials.
    pub ball_max: T,
    pub passed: bool,
    pub failures: Vec<String>,
}

pub fn verify_certificate<T: Real>(
    f: &BoundaryForm<T>,
    k: &KernelCertificate<T>,
    c: &Functional<T>,
    opts: &VerifyOptions<T>,
) -> Result<CertificateReport<T>> {
    if f.nodes() != k.nodes() || f.nodes() != c.nodes() {
        return Err(Error::invalid("form, kernel and functional must share one node set"));
    }
    let grid = &opts.grid;
    let mut kdev = T::zero();
    let mut min_re = T::infinity();
    let mut max_im = T::zero();
    let mut fk_vals = Vec::with_capacity(grid.len());
    for z in grid.points::<T>() {
        let kz = k.eval(z)?;
        let fz = f.eval(z)?;
        let fk = fz * kz;
        kdev = kdev.max((kz.norm() - T::one()).abs());
        min_re = min_re.min(fk.re);
        max_im = max_im.max(fk.im.abs());
        fk_vals.push(fk);
    }
    let re: Vec<T> = fk_vals.iter().map(|v| v.re).collect();
    let im: Vec<T> = fk_vals.iter().map(|v| v.im).collect();
    let integral = Complex::new(crate::grid::pairwise_sum(&re), crate::grid::pairwise_sum(&im))
        / T::of_usize(grid.len());
    let fk_err = (integral - Complex::new(T::one(), T::zero())).norm();
    let pairing_err = (c.pairing(f) - Complex::new(T::one(), T::zero())).norm();
    let ball_max = ball_test(c, opts);

    let mut failures = Vec::new();
    if kdev > opts.eq_tol {
        failures.push(format!("|K| deviates from 1 by {kdev:e}"));
    }
    if min_re < -opts.positivity_tol {
        failures.push(format!("Re(FK) reaches {min_re:e} < 0"));
    }
    if max_im > opts.eq_tol {
        failures.push(format!("Im(FK) reaches {max_im:e}"));
    }
    if fk_err > opts.eq_tol {
        failures.push(format!("integral of FK differs from 1 by {fk_err:e}"));
    }
    if pairing_err > opts.eq_tol {
        failures.push(format!("pairing sum c_k F(beta_k) differs from 1 by {pairing_err:e}"));
    }
    if ball_max > T::one() + opts.ball_tol {
        failures.push(format!("functional exceeds 1 on the ball: {ball_max}"));
    }
    Ok(CertificateReport {
        kernel_modulus_deviation: kdev,
        min_re_fk: min_re,
        max_abs_im_fk: max_im,
        fk_integral_error: fk_err,
        pairing_error: pairing_err,
        ball_max,
        passed: failures.is_empty(),
        failures,
    })
}

/// Largest `Re Σ cₖ f(βₖ)` over random polynomials of degree ≤ 2n scaled to unit grid norm.
fn ball_test<T: Real>(c: &Functional<T>, opts: &VerifyOptions<T>) -> T {
    let n = c.nodes().len();
    let mut rng = random::seeded(opts.seed ^ 0x5eed_ba11);
    let mut best = T::neg_infinity();
    for _ in 0..opts.ball_samples {
        let deg = rng.gen_range(0..=2 * n);
        let p = CPolynomial::new((0..=deg).map(|_| random::complex_normal(&mut rng)).collect());
        if p.is_zero() {
            continue;
        }
        let norm = h1_norm_of(|z| p.eval(z), &opts.grid);
        let vals: Vec<Complex<T>> = c.nodes().beta().iter().map(|&b| p.eval(b)).collect();
        best = best.max(c.apply(&vals).re / norm);
    }
    best
}
