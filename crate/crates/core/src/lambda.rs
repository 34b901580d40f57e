//! Geometry of Λ: boundary classification, alternate extremal solutions,
//! midpoint decomposition of non-extreme points, point location, uniqueness
//! and two-dimensional boundary slices.
//!
//! A boundary form is extreme exactly when it is outer (`ℓ = 0`, no `W`),
//! and an extreme point is exposed exactly when `q` has no zero on the circle.

use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::cpoly::{CPolynomial, DEFAULT_CIRCLE_TOL};
use crate::duality::{
    functional_from_kernel, kernel_from_form, verify_certificate, CertificateReport, Functional,
    KernelCertificate, VerifyOptions,
};
use crate::grid::UnitGrid;
use crate::hardy::{h1_norm, normalize, BoundaryForm, NodeSet};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::nehari::{cluster_values, extremal_solve, support_with_point, ExtremalOptions, ExtremalSolution};
use crate::{random, Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Interior,
    Exterior,
    BoundaryNotExtreme,
    ExtremeNotExposed,
    Exposed,
}

impl Kind {
    pub fn is_boundary(self) -> bool {
        matches!(self, Kind::BoundaryNotExtreme | Kind::ExtremeNotExposed | Kind::Exposed)
    }

    pub fn is_extreme(self) -> bool {
        matches!(self, Kind::ExtremeNotExposed | Kind::Exposed)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Interior => "Interior",
            Kind::Exterior => "Exterior",
            Kind::BoundaryNotExtreme => "BoundaryNotExtreme",
            Kind::ExtremeNotExposed => "ExtremeNotExposed",
            Kind::Exposed => "Exposed",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A classification with whatever evidence supports it.
#[derive(Debug, Clone)]
pub struct Classification<T> {
    pub kind: Kind,
    /// The boundary form realizing the point (boundary kinds).
    pub form: Option<BoundaryForm<T>>,
    pub kernel: Option<KernelCertificate<T>>,
    /// Certifying functional for boundary kinds, separating functional for `Exterior`.
    pub functional: Option<Functional<T>>,
    pub report: Option<CertificateReport<T>>,
    /// A different extremal solution for the same functional (`ExtremeNotExposed`).
    pub second_solution: Option<BoundaryForm<T>>,
    /// Distance from the circle of the root of `q` nearest to it.
    pub nearest_circle_distance: Option<T>,
    /// Bounds `(lower, upper)` on the gauge of a located point.
    pub gauge_bounds: Option<(T, T)>,
}

impl<T> Classification<T> {
    fn bare(kind: Kind) -> Self {
        Self {
            kind,
            form: None,
            kernel: None,
            functional: None,
            report: None,
            second_solution: None,
            nearest_circle_distance: None,
            gauge_bounds: None,
        }
    }
}

/// Kind of a valid boundary form, without building a certificate.
pub fn kind_of_form<T: Real>(f: &BoundaryForm<T>, circle_tol: T) -> Result<Kind> {
    if !f.is_outer() {
        return Ok(Kind::BoundaryNotExtreme);
    }
    if f.q().classify_roots(circle_tol)?.on_circle.is_empty() {
        Ok(Kind::Exposed)
    } else {
        Ok(Kind::ExtremeNotExposed)
    }
}

pub fn classify_form<T: Real>(f: &BoundaryForm<T>) -> Result<Classification<T>> {
    classify_form_with(f, &VerifyOptions::default(), T::lit(DEFAULT_CIRCLE_TOL))
}

pub fn classify_form_with<T: Real>(
    f: &BoundaryForm<T>,
    opts: &VerifyOptions<T>,
    circle_tol: T,
) -> Result<Classification<T>> {
    let kind = kind_of_form(f, circle_tol)?;
    let classes = f.q().classify_roots(circle_tol)?;
    let kernel = kernel_from_form(f);
    let functional = functional_from_kernel(&kernel)?;
    let report = verify_certificate(f, &kernel, &functional, opts)?;
    let second = match (kind, classes.on_circle.first()) {
        (Kind::ExtremeNotExposed, Some(&lambda)) => Some(alternate_solution_with(f, lambda, &opts.grid, circle_tol)?),
        _ => None,
    };
    Ok(Classification {
        kind,
        form: Some(f.clone()),
        kernel: Some(kernel),
        functional: Some(functional),
        report: Some(report),
        second_solution: second,
        nearest_circle_distance: classes.nearest_circle_distance(),
        gauge_bounds: None,
    })
}

/// Second extremal solution `G = A(−λ) z F/(z − λ)²` for a circle root `λ` of `q`.
pub fn alternate_solution<T: Real>(f: &BoundaryForm<T>, lambda: Complex<T>) -> Result<BoundaryForm<T>> {
    alternate_solution_with(f, lambda, &UnitGrid::default(), T::lit(DEFAULT_CIRCLE_TOL))
}

pub fn alternate_solution_with<T: Real>(
    f: &BoundaryForm<T>,
    lambda: Complex<T>,
    grid: &UnitGrid,
    circle_tol: T,
) -> Result<BoundaryForm<T>> {
    if !f.is_outer() {
        return Err(Error::invalid("alternate solutions are built from outer (extreme) forms"));
    }
    if (lambda.norm() - T::one()).abs() > circle_tol {
        return Err(Error::invalid(format!("lambda = {lambda} is not on the unit circle")));
    }
    let classes = f.q().classify_roots(circle_tol)?;
    let root = classes
        .on_circle
        .iter()
        .copied()
        .min_by(|a, b| {
            (a - lambda)
                .norm()
                .partial_cmp(&(b - lambda).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .filter(|r| (r - lambda).norm() <= T::lit(1e-6))
        .ok_or_else(|| Error::invalid(format!("lambda = {lambda} is not a circle root of q")))?;
    let root = root.unscale(root.norm());
    let (deflated, _) = f.q().deflate(root);
    let q = deflated.scale((-root).sqrt());
    normalize(f.nodes().clone(), 1, vec![], q, grid, circle_tol)
}

#[derive(Debug, Clone)]
pub struct MidpointDecomposition<T> {
    pub first: BoundaryForm<T>,
    pub second: BoundaryForm<T>,
    /// `max |F(βₖ) − (F₁(βₖ) + F₂(βₖ))/2|`.
    pub midpoint_error: T,
    /// `max |F₁(βₖ) − F₂(βₖ)|`.
    pub separation: T,
}

/// Writes a non-extreme boundary point as the midpoint of two extreme ones.
///
/// With inner part `I = z^ℓ W`, `D = Π(1 − conj(w)z)`, `W = Π(z − w)/D` and
/// `q = D·q_r`, the outer forms built from `p± = (D ± e^{−iα} z^ℓ Π(z − w))·q_r`
/// satisfy `F₁ + F₂ = 2F` identically; `α` is chosen so that both have norm one.
pub fn midpoint_decompose<T: Real>(f: &BoundaryForm<T>) -> Result<MidpointDecomposition<T>> {
    midpoint_decompose_with(f, &UnitGrid::default(), T::lit(DEFAULT_CIRCLE_TOL))
}

pub fn midpoint_decompose_with<T: Real>(
    f: &BoundaryForm<T>,
    grid: &UnitGrid,
    circle_tol: T,
) -> Result<MidpointDecomposition<T>> {
    if f.is_outer() {
        return Err(Error::invalid("form is outer, hence already an extreme point"));
    }
    let one = Complex::new(T::one(), T::zero());
    let w = f.w_zeros();
    let d = w.iter().fold(CPolynomial::constant(one), |acc, wi| {
        acc.mul(&CPolynomial::new(vec![one, -wi.conj()]))
    });
    let wn = CPolynomial::from_roots(w, one);
    let (q_r, _) = f.q().div_rem(&d)?;

    let mu = grid.mean_complex(|z| {
        f.inner(z).expect("inner factor is finite on the circle").scale(f.modulus_on_circle(z))
    });
    let alpha = mu.arg() - T::FRAC_PI_2();
    let rot = Complex::from_polar(T::one(), -alpha);
    let tail = wn.shift(f.ell()).scale(rot);
    let half_phase = Complex::from_polar(T::one(), alpha / T::lit(2.0));
    let q1 = d.add(&tail).mul(&q_r).scale(half_phase);
    let q2 = d.sub(&tail).mul(&q_r).scale(half_phase * Complex::new(T::zero(), T::one()));
    let a = f.scale() / T::lit(2.0);
    let first = BoundaryForm::with_scale(f.nodes().clone(), 0, vec![], q1, a, circle_tol)?;
    let second = BoundaryForm::with_scale(f.nodes().clone(), 0, vec![], q2, a, circle_tol)?;

    for (name, g) in [("first", &first), ("second", &second)] {
        let norm = h1_norm(g, grid);
        if (norm - T::one()).abs() > T::lit(1e-8) {
            return Err(Error::Invariant(format!("{name} endpoint has norm {norm}, expected 1")));
        }
    }
    let (v, v1, v2) = (f.values(), first.values(), second.values());
    let mut midpoint_error = T::zero();
    let mut separation = T::zero();
    for k in 0..v.len() {
        midpoint_error = midpoint_error.max((v[k] - (v1[k] + v2[k]).unscale(T::lit(2.0))).norm());
        separation = separation.max((v1[k] - v2[k]).norm());
    }
    if separation < T::lit(1e-6) {
        return Err(Error::Invariant(format!("endpoints coincide (separation {separation:e})")));
    }
    Ok(MidpointDecomposition {
        first,
        second,
        midpoint_error,
        separation,
    })
}

#[derive(Debug, Clone)]
pub struct LocateOptions<T> {
    /// Random unit directions sampled before the ellipsoid phase.
    pub directions: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Gauge above `1 + exterior_tol` is `Exterior`.
    pub exterior_tol: T,
    /// Gauge below `1 − interior_tol` is `Interior`.
    pub interior_tol: T,
    pub circle_tol: T,
    pub verify: VerifyOptions<T>,
}

impl<T: Real> Default for LocateOptions<T> {
    fn default() -> Self {
        Self {
            directions: 64,
            seed: 0,
            max_iterations: 0,
            exterior_tol: T::lit(1e-9),
            interior_tol: T::lit(1e-6),
            circle_tol: T::lit(DEFAULT_CIRCLE_TOL),
            verify: VerifyOptions::default(),
        }
    }
}

fn support_at<T: Real>(nodes: &NodeSet<T>, c: &[Complex<T>]) -> Result<(T, Vec<Complex<T>>)> {
    if c.iter().all(|z| z.norm() == T::zero()) {
        return Ok((T::zero(), vec![Complex::new(T::zero(), T::zero()); c.len()]));
    }
    support_with_point(&Functional::new(nodes.clone(), c.to_vec())?)
}

fn to_complex<T: Real>(x: &[T]) -> Vec<Complex<T>> {
    x.chunks(2).map(|w| Complex::new(w[0], w[1])).collect()
}

/// `(Re u, −Im u)`: the real gradient of `c ↦ Re Σ cₖ uₖ`.
fn real_gradient<T: Real>(u: &[Complex<T>]) -> Vec<T> {
    u.iter().flat_map(|z| [z.re, -z.im]).collect()
}

/// Locates `v` relative to Λ by bounding its gauge `max { Re Σ cₖvₖ : support(c) ≤ 1 }`.
///
/// Sampled directions give a quick lower bound; a central-cut ellipsoid
/// method then tightens lower and upper bounds until one of the decisions is
/// certain. Boundary points are then tested for an outer interpolant
/// `q²P` (sign patterns of `√(vₖ/P(βₖ))`), which decides extremality.
pub fn point_locate<T: Real>(
    v: &[Complex<T>],
    nodes: &NodeSet<T>,
    opts: &LocateOptions<T>,
) -> Result<Classification<T>> {
    let n = nodes.len();
    if v.len() != n {
        return Err(Error::invalid(format!("point has {} coordinates for {n} nodes", v.len())));
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("point coordinates must be finite"));
    }
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if vnorm <= T::lit(1e-14) {
        let mut c = Classification::bare(Kind::Interior);
        c.gauge_bounds = Some((T::zero(), T::zero()));
        return Ok(c);
    }
    let phi = |c: &[Complex<T>]| -> T { c.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + (a * b).re) };

    let mut lower = T::neg_infinity();
    let mut best_c: Vec<Complex<T>> = Vec::new();
    let consider = |c: Vec<Complex<T>>, s: T, lower: &mut T, best: &mut Vec<Complex<T>>| {
        if s > T::zero() {
            let r = phi(&c) / s;
            if r > *lower {
                *lower = r;
                *best = c;
            }
        }
    };

    // Sampling phase: conj(v) direction, coordinates, random.
    let mut rng = random::seeded(opts.seed);
    let mut samples: Vec<Vec<Complex<T>>> = vec![v.iter().map(|z| z.conj()).collect()];
    for k in 0..n {
        for unit in [Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::one())] {
            let mut c = vec![Complex::new(T::zero(), T::zero()); n];
            c[k] = unit;
            samples.push(c);
        }
    }
    for _ in 0..opts.directions {
        samples.push((0..n).map(|_| random::complex_normal(&mut rng)).collect());
    }
    for c in samples {
        let (s, _) = support_at(nodes, &c)?;
        consider(c, s, &mut lower, &mut best_c);
    }

    // Ellipsoid phase in R^{2n}.
    let dim = 2 * n;
    let gram = CMatrix::from_fn(n, |i, j| {
        (Complex::new(T::one(), T::zero()) - nodes.beta()[i] * nodes.beta()[j].conj()).inv()
    });
    let lam_min = *hermitian_eigen(&gram).values.last().expect("nonempty");
    let radius = T::of_usize(n).sqrt() / lam_min;
    let mut center = vec![T::zero(); dim];
    let mut shape = vec![T::zero(); dim * dim];
    for i in 0..dim {
        shape[i * dim + i] = radius * radius;
    }
    let gphi = real_gradient(v);
    let quad = |p: &[T], g: &[T]| -> T {
        (0..dim)
            .map(|i| g[i] * (0..dim).map(|j| p[i * dim + j] * g[j]).sum::<T>())
            .sum::<T>()
            .max(T::zero())
    };
    let mut upper = T::infinity();
    let max_iter = if opts.max_iterations > 0 {
        opts.max_iterations
    } else {
        100 * dim * dim + 1000
    };
    let one = T::one();
    let mut interpolant_checked = false;
    let mut outer_interpolant: Option<BoundaryForm<T>> = None;
    let dimt = T::of_usize(dim);
    for _ in 0..max_iter {
        if lower > one + opts.exterior_tol || upper < one - opts.interior_tol {
            break;
        }
        if lower >= one - opts.interior_tol {
            if !interpolant_checked {
                interpolant_checked = true;
                outer_interpolant = interpolate_q_squared(v, nodes, opts)?;
            }
            if outer_interpolant.is_some() || upper <= one + opts.exterior_tol {
                break;
            }
        }
        let c = to_complex(&center);
        let (s, u) = support_at(nodes, &c)?;
        consider(c.clone(), s, &mut lower, &mut best_c);
        let g: Vec<T> = if s > one {
            real_gradient(&u)
        } else {
            let bound = phi(&c) + quad(&shape, &gphi).sqrt();
            upper = upper.min(bound);
            gphi.iter().map(|x| -*x).collect()
        };
        let gamma = quad(&shape, &g).sqrt();
        if !(gamma > T::zero()) {
            break;
        }
        let pg: Vec<T> = (0..dim)
            .map(|i| (0..dim).map(|j| shape[i * dim + j] * g[j]).sum::<T>() / gamma)
            .collect();
        for i in 0..dim {
            center[i] = center[i] - pg[i] / (dimt + one);
        }
        let f1 = if dim > 1 { dimt * dimt / (dimt * dimt - one) } else { one };
        let f2 = T::lit(2.0) / (dimt + one);
        for i in 0..dim {
            for j in 0..dim {
                shape[i * dim + j] = f1 * (shape[i * dim + j] - f2 * pg[i] * pg[j]);
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let avg = (shape[i * dim + j] + shape[j * dim + i]) / T::lit(2.0);
                shape[i * dim + j] = avg;
                shape[j * dim + i] = avg;
            }
        }
    }
    if lower >= one - opts.interior_tol && !interpolant_checked {
        outer_interpolant = interpolate_q_squared(v, nodes, opts)?;
    }

    let bounds = Some((lower, upper));
    if lower > one + opts.exterior_tol {
        let mut c = Classification::bare(Kind::Exterior);
        c.functional = Some(Functional::new(nodes.clone(), best_c)?);
        c.gauge_bounds = bounds;
        return Ok(c);
    }
    if lower < one - opts.interior_tol {
        let mut c = Classification::bare(Kind::Interior);
        c.gauge_bounds = bounds;
        return Ok(c);
    }
    match outer_interpolant {
        Some(form) => {
            let mut c = classify_form_with(&form, &opts.verify, opts.circle_tol)?;
            c.gauge_bounds = bounds;
            Ok(c)
        }
        None => {
            let functional = Functional::new(nodes.clone(), best_c)?;
            let sol = extremal_solve(&functional, &ExtremalOptions::default())?;
            let report = verify_certificate(&sol.form, &sol.kernel, &sol.functional, &opts.verify)?;
            let mut c = Classification::bare(Kind::BoundaryNotExtreme);
            c.nearest_circle_distance = sol.form.q().classify_roots(opts.circle_tol)?.nearest_circle_distance();
            c.form = Some(sol.form);
            c.kernel = Some(sol.kernel);
            c.functional = Some(sol.functional);
            c.report = Some(report);
            c.gauge_bounds = bounds;
            Ok(c)
        }
    }
}

/// Searches the `2^{n−1}` interpolants `q(βₖ) = ±√(vₖ/P(βₖ))` for one with
/// `‖q²P‖₁` within `interior_tol` of one and no root of `q` in the open disc.
fn interpolate_q_squared<T: Real>(
    v: &[Complex<T>],
    nodes: &NodeSet<T>,
    opts: &LocateOptions<T>,
) -> Result<Option<BoundaryForm<T>>> {
    let n = nodes.len();
    let roots: Vec<Complex<T>> = v
        .iter()
        .zip(nodes.beta())
        .map(|(vk, &b)| Ok((vk / nodes.p(b)?).sqrt()))
        .collect::<Result<_>>()?;
    for pattern in 0u64..(1u64 << (n - 1)) {
        let vals: Vec<Complex<T>> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| if k > 0 && pattern >> (k - 1) & 1 == 1 { -r } else { *r })
            .collect();
        let q = CPolynomial::interpolate(nodes.beta(), &vals)?.trim_relative(T::lit(1e-12));
        if q.is_zero() {
            continue;
        }
        let raw = nodes_form_norm(nodes, &q, &opts.verify.grid);
        if (raw - T::one()).abs() > opts.interior_tol {
            continue;
        }
        if let Ok(f) = BoundaryForm::with_scale(nodes.clone(), 0, vec![], q, T::one(), opts.circle_tol) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn nodes_form_norm<T: Real>(nodes: &NodeSet<T>, q: &CPolynomial<T>, grid: &UnitGrid) -> T {
    grid.mean(|z| q.eval(z).norm_sqr() * nodes.p_modulus(z))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceRecord<T> {
    pub theta: T,
    pub c: Vec<Complex<T>>,
    pub support: T,
    pub v: Vec<Complex<T>>,
    /// `(Re Σ e₁ₖvₖ, Re Σ e₂ₖvₖ)`.
    pub point: (T, T),
    pub kind: Kind,
}

/// Boundary of Λ traced along a real 2-plane of functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceTrace<T> {
    pub records: Vec<SliceRecord<T>>,
}

impl<T: Real> SliceTrace<T> {
    /// Smallest cross product of consecutive edges of the projected trace
    /// (nonnegative for a counterclockwise convex curve).
    pub fn min_cross(&self) -> T {
        let pts: Vec<(T, T)> = self.records.iter().map(|r| r.point).collect();
        let m = pts.len();
        let mut worst = T::infinity();
        for i in 0..m {
            let (a, b, c) = (pts[i], pts[(i + 1) % m], pts[(i + 2) % m]);
            let cross = (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0);
            worst = worst.min(cross);
        }
        worst
    }

    pub fn is_convex(&self, tol: T) -> bool {
        self.min_cross() >= -tol
    }

    pub fn to_csv(&self) -> String {
        let n = self.records.first().map_or(0, |r| r.c.len());
        let mut cols = vec!["theta".to_string()];
        cols.extend((1..=n).map(|k| format!("re_c{k}")));
        cols.extend((1..=n).map(|k| format!("im_c{k}")));
        cols.push("support".into());
        cols.extend((1..=n).map(|k| format!("re_v{k}")));
        cols.extend((1..=n).map(|k| format!("im_v{k}")));
        cols.push("kind".into());
        let mut out = cols.join(",");
        out.push('\n');
        for r in &self.records {
            let mut row = vec![format!("{:e}", r.theta)];
            row.extend(r.c.iter().map(|z| format!("{:e}", z.re)));
            row.extend(r.c.iter().map(|z| format!("{:e}", z.im)));
            row.push(format!("{:e}", r.support));
            row.extend(r.v.iter().map(|z| format!("{:e}", z.re)));
            row.extend(r.v.iter().map(|z| format!("{:e}", z.im)));
            row.push(r.kind.to_string());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Traces `θ ↦ v(θ)`, the extremal point for `c(θ) = cos θ·e₁ + sin θ·e₂`.
pub fn trace_slice<T: Real>(
    nodes: &NodeSet<T>,
    e1: &[Complex<T>],
    e2: &[Complex<T>],
    steps: usize,
) -> Result<SliceTrace<T>> {
    let n = nodes.len();
    if e1.len() != n || e2.len() != n {
        return Err(Error::invalid(format!("plane vectors must have {n} coordinates")));
    }
    if steps < 16 {
        return Err(Error::invalid(format!("steps = {steps}, at least 16 required")));
    }
    let tol = T::lit(1e-9);
    let dot = |a: &[Complex<T>], b: &[Complex<T>]| -> T {
        a.iter().zip(b).map(|(x, y)| (x * y.conj()).re).sum()
    };
    if (dot(e1, e1) - T::one()).abs() > tol || (dot(e2, e2) - T::one()).abs() > tol || dot(e1, e2).abs() > tol {
        return Err(Error::invalid("plane vectors must be orthonormal in the real inner product"));
    }
    let opts = ExtremalOptions::default();
    let records = (0..steps)
        .into_par_iter()
        .map(|j| {
            let theta = T::TAU() * T::of_usize(j) / T::of_usize(steps);
            let (s, co) = theta.sin_cos();
            let c: Vec<Complex<T>> = e1.iter().zip(e2).map(|(a, b)| a.scale(co) + b.scale(s)).collect();
            let sol = extremal_solve(&Functional::new(nodes.clone(), c.clone())?, &opts)?;
            let v = sol.values();
            let proj = |e: &[Complex<T>]| e.iter().zip(&v).fold(T::zero(), |acc, (a, b)| acc + (a * b).re);
            Ok(SliceRecord {
                theta,
                point: (proj(e1), proj(e2)),
                support: sol.support,
                kind: kind_of_form(&sol.form, opts.circle_tol)?,
                c,
                v,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SliceTrace { records })
}

#[derive(Debug, Clone)]
pub struct UniquenessReport<T> {
    pub unique: bool,
    /// Evaluation vectors of every extremal solution found.
    pub solutions: Vec<Vec<Complex<T>>>,
    pub solution: ExtremalSolution<T>,
}

/// Collects extremal solutions for `c` from the solver, from `restarts`
/// random vectors in the top singular cluster, and from alternate solutions
/// at circle roots; unique iff all agree within `1e−5`.
pub fn uniqueness_check<T: Real>(c: &Functional<T>, restarts: usize, seed: u64) -> Result<UniquenessReport<T>> {
    let opts = ExtremalOptions::default();
    let sol = extremal_solve(c, &opts)?;
    let mut solutions = vec![sol.values()];
    let mut rng = random::seeded(seed);
    let cluster_tol = T::lit(1e-7).max(opts.tie_tol);
    solutions.extend(cluster_values(c, cluster_tol, restarts, &mut rng)?);
    if sol.form.is_outer() {
        for lambda in sol.form.q().classify_roots(opts.circle_tol)?.on_circle {
            solutions.push(alternate_solution_with(&sol.form, lambda, &opts.grid, opts.circle_tol)?.values());
        }
    }
    let tol = T::lit(1e-5);
    let unique = solutions
        .iter()
        .all(|s| s.iter().zip(&solutions[0]).all(|(a, b)| (a - b).norm() <= tol));
    Ok(UniquenessReport {
        unique,
        solutions,
        solution: sol,
    })
}
