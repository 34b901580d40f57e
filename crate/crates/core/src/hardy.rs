//! Rational H¹ objects: the Blaschke product `B` of the nodes, the outer
//! weight `P(z) = Π (1 − conj(βₖ)z)^{−2}`, and boundary functions
//! `F = A·z^ℓ·W·q²·P` together with their H¹ norms.
//!
//! Norms use normalized arc length on the circle (total mass one) and are
//! computed by the periodic trapezoid rule on a [`UnitGrid`].

use num_complex::Complex;

use crate::cpoly::{CPolynomial, DEFAULT_CIRCLE_TOL, DEFAULT_ROOT_TOL};
use crate::grid::UnitGrid;
use crate::{Error, Real, Result};

/// Minimum pairwise distance between nodes.
pub const NODE_SEPARATION: f64 = 1e-10;

/// Tolerance for matching `W` zeros against zeros of the reflected `q`.
pub const W_ZERO_MATCH_TOL: f64 = 1e-8;

/// `W` zeros closer than this are treated as one repeated zero.
pub const W_CLUSTER_RADIUS: f64 = 1e-5;

/// Distinct nonzero points β₁..βₙ of the open unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet<T> {
    beta: Vec<Complex<T>>,
}

impl<T: Real> NodeSet<T> {
    pub fn new(beta: Vec<Complex<T>>) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::invalid("node set must be nonempty"));
        }
        for (k, b) in beta.iter().enumerate() {
            let m = b.norm();
            if !(m > T::zero()) {
                return Err(Error::invalid(format!("beta[{k}] is the origin")));
            }
            if !(m < T::one()) {
                return Err(Error::invalid(format!(
                    "beta[{k}] = {b} has modulus {m}, must lie inside the unit disc"
                )));
            }
        }
        for i in 0..beta.len() {
            for j in (i + 1)..beta.len() {
                if (beta[i] - beta[j]).norm() <= T::lit(NODE_SEPARATION) {
                    return Err(Error::invalid(format!(
                        "beta[{i}] and beta[{j}] coincide"
                    )));
                }
            }
        }
        Ok(Self { beta })
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn beta(&self) -> &[Complex<T>] {
        &self.beta
    }

    pub fn max_modulus(&self) -> T {
        self.beta.iter().fold(T::zero(), |m, b| m.max(b.norm()))
    }

    /// `B(z)`, the Blaschke product with zeros at the nodes.
    pub fn blaschke(&self, z: Complex<T>) -> Result<Complex<T>> {
        blaschke_eval(&self.beta, z)
    }

    /// `P(z) = Π (1 − conj(βₖ) z)^{−2}`.
    pub fn p(&self, z: Complex<T>) -> Result<Complex<T>> {
        p_eval(self, z)
    }

    /// `|P(z)|` without forming the complex product.
    pub fn p_modulus(&self, z: Complex<T>) -> T {
        self.beta
            .iter()
            .fold(T::one(), |acc, b| acc / (Complex::new(T::one(), T::zero()) - b.conj() * z).norm_sqr())
    }

    /// `B′(βₖ) = (1 − |βₖ|²)^{−1} · Π_{j≠k} (βₖ − βⱼ)/(1 − conj(βⱼ)βₖ)`.
    pub fn blaschke_derivative_at_node(&self, k: usize) -> Complex<T> {
        let bk = self.beta[k];
        let one = Complex::new(T::one(), T::zero());
        let mut d = Complex::new((T::one() - bk.norm_sqr()).recip(), T::zero());
        for (j, bj) in self.beta.iter().enumerate() {
            if j != k {
                d = d * (bk - bj) / (one - bj.conj() * bk);
            }
        }
        d
    }
}

/// Finite Blaschke product `Π (z − a)/(1 − conj(a) z)`; empty product is 1.
pub fn blaschke_eval<T: Real>(zeros: &[Complex<T>], z: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let mut acc = one;
    for a in zeros {
        let den = one - a.conj() * z;
        if den.norm() <= T::epsilon() {
            return Err(Error::pole(z));
        }
        acc = acc * (z - a) / den;
    }
    Ok(acc)
}

pub fn p_eval<T: Real>(nodes: &NodeSet<T>, z: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let mut den = one;
    for b in nodes.beta() {
        let f = one - b.conj() * z;
        if f.norm() <= T::epsilon() {
            return Err(Error::pole(z));
        }
        den = den * f * f;
    }
    Ok(den.inv())
}

/// Boundary function `F(z) = A · z^ℓ · W(z) · q(z)² · P(z)`.
///
/// `q` has degree at most `n − 1` and no roots in the open disc, `ℓ ≤ m − 1`
/// with `m = n − deg q`, and every zero of the Blaschke factor `W` is a zero
/// (with multiplicity) of `reflect(q, deg q)` inside the disc. Forms built by
/// [`BoundaryForm::new`] have unit H¹ norm.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryForm<T> {
    nodes: NodeSet<T>,
    ell: usize,
    w_zeros: Vec<Complex<T>>,
    q: CPolynomial<T>,
    scale: T,
}

impl<T: Real> BoundaryForm<T> {
    /// Validated and normalized to unit norm on the default grid.
    pub fn new(nodes: NodeSet<T>, ell: usize, w_zeros: Vec<Complex<T>>, q: CPolynomial<T>) -> Result<Self> {
        normalize(nodes, ell, w_zeros, q, &UnitGrid::default(), T::lit(DEFAULT_CIRCLE_TOL))
    }

    /// Outer form `A·q²·P`.
    pub fn outer(nodes: NodeSet<T>, q: CPolynomial<T>) -> Result<Self> {
        Self::new(nodes, 0, Vec::new(), q)
    }

    /// Structural checks only; `scale` is taken as given (no norm check).
    pub fn with_scale(
        nodes: NodeSet<T>,
        ell: usize,
        w_zeros: Vec<Complex<T>>,
        q: CPolynomial<T>,
        scale: T,
        circle_tol: T,
    ) -> Result<Self> {
        validate_structure(&nodes, ell, &w_zeros, &q, circle_tol)?;
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::invalid(format!("scale A must be positive, got {scale}")));
        }
        Ok(Self { nodes, ell, w_zeros, q, scale })
    }

    pub fn nodes(&self) -> &NodeSet<T> {
        &self.nodes
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn w_zeros(&self) -> &[Complex<T>] {
        &self.w_zeros
    }

    pub fn q(&self) -> &CPolynomial<T> {
        &self.q
    }

    /// The positive scale `A`.
    pub fn scale(&self) -> T {
        self.scale
    }

    /// `m = n − deg q`.
    pub fn m(&self) -> usize {
        self.nodes.len() - self.q.degree().unwrap_or(0)
    }

    pub fn is_outer(&self) -> bool {
        self.ell == 0 && self.w_zeros.is_empty()
    }

    /// Same form with `A` multiplied by `factor`.
    pub fn rescaled(&self, factor: T) -> Self {
        Self {
            scale: self.scale * factor,
            ..self.clone()
        }
    }

    /// Inner factor `z^ℓ·W(z)`.
    pub fn inner(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(z.powu(self.ell as u32) * blaschke_eval(&self.w_zeros, z)?)
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        form_eval(self, z)
    }

    /// `|F(e^{it})| = A·|q|²·|P|` on the circle.
    pub fn modulus_on_circle(&self, z: Complex<T>) -> T {
        self.scale * self.q.eval(z).norm_sqr() * self.nodes.p_modulus(z)
    }

    /// `(F(β₁), …, F(βₙ))`.
    pub fn values(&self) -> Vec<Complex<T>> {
        self.nodes
            .beta()
            .iter()
            .map(|&b| form_eval(self, b).expect("nodes are not poles of F"))
            .collect()
    }

    pub fn h1_norm(&self, grid: &UnitGrid) -> T {
        h1_norm(self, grid)
    }
}

fn validate_structure<T: Real>(
    nodes: &NodeSet<T>,
    ell: usize,
    w_zeros: &[Complex<T>],
    q: &CPolynomial<T>,
    circle_tol: T,
) -> Result<()> {
    let n = nodes.len();
    let d = q
        .degree()
        .ok_or_else(|| Error::invalid("q must be a nonzero polynomial"))?;
    if d > n - 1 {
        return Err(Error::invalid(format!("q has degree {d}, at most n - 1 = {} allowed", n - 1)));
    }
    let m = n - d;
    if ell > m - 1 {
        return Err(Error::invalid(format!(
            "ell = {ell} exceeds m - 1 = {} (m = n - deg q)",
            m - 1
        )));
    }
    let classes = q.classify_roots(circle_tol)?;
    if let Some(r) = classes.inside.first() {
        return Err(Error::invalid(format!(
            "q has a root {r} (modulus {}) inside the unit disc",
            r.norm()
        )));
    }
    // Repeated zeros are matched as clusters and confirmed through derivatives:
    // individual roots of a multiple root are ill-conditioned.
    let mut available: Vec<Complex<T>> = classes.outside.iter().map(|r| r.conj().inv()).collect();
    let cluster = T::lit(W_CLUSTER_RADIUS);
    let reflected = q.reflect(d)?;
    let mut used = vec![false; w_zeros.len()];
    for (i, w) in w_zeros.iter().enumerate() {
        if !(w.norm() < T::one()) {
            return Err(Error::invalid(format!("w_zeros[{i}] = {w} is not inside the unit disc")));
        }
    }
    for i in 0..w_zeros.len() {
        if used[i] {
            continue;
        }
        let group: Vec<usize> = (i..w_zeros.len())
            .filter(|&j| !used[j] && (w_zeros[j] - w_zeros[i]).norm() <= cluster)
            .collect();
        let k = group.len();
        let center = group.iter().fold(Complex::new(T::zero(), T::zero()), |a, &j| a + w_zeros[j])
            / T::of_usize(k);
        let mut order: Vec<usize> = (0..available.len()).collect();
        order.sort_by(|&a, &b| {
            (available[a] - center)
                .norm()
                .partial_cmp(&(available[b] - center).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let chosen: Vec<usize> = order.into_iter().take(k).collect();
        let ok = chosen.len() == k
            && chosen.iter().all(|&a| (available[a] - center).norm() <= cluster)
            && (k == 1 || vanishes_to_order(&reflected, center, k));
        let ok = ok && (k > 1 || (available[chosen[0]] - center).norm() <= T::lit(W_ZERO_MATCH_TOL));
        if !ok {
            return Err(Error::invalid(format!(
                "w_zeros[{i}] = {} is not an unused zero of the reflected q inside the disc",
                w_zeros[i]
            )));
        }
        let mut chosen = chosen;
        chosen.sort_unstable_by(|a, b| b.cmp(a));
        for a in chosen {
            available.swap_remove(a);
        }
        for j in group {
            used[j] = true;
        }
    }
    Ok(())
}

/// `p^{(j)}(w) ≈ 0` for `j < k`, relative to the size of the coefficients.
fn vanishes_to_order<T: Real>(p: &CPolynomial<T>, w: Complex<T>, k: usize) -> bool {
    let mut d = p.clone();
    for _ in 0..k {
        let bound: T = d
            .coeffs()
            .iter()
            .map(|c| c.norm())
            .sum::<T>()
            .max(T::min_positive_value());
        if d.eval(w).norm() > T::lit(W_ZERO_MATCH_TOL) * bound {
            return false;
        }
        d = d.derivative();
    }
    true
}

pub fn form_eval<T: Real>(f: &BoundaryForm<T>, z: Complex<T>) -> Result<Complex<T>> {
    let qz = f.q.eval(z);
    Ok(f.inner(z)? * qz * qz * p_eval(&f.nodes, z)?.scale(f.scale))
}

/// Trapezoidal H¹ norm of a boundary form.
pub fn h1_norm<T: Real>(f: &BoundaryForm<T>, grid: &UnitGrid) -> T {
    grid.mean(|z| f.modulus_on_circle(z))
}

/// Trapezoidal H¹ norm of a function sampled on the circle.
pub fn h1_norm_of<T: Real>(f: impl Fn(Complex<T>) -> Complex<T>, grid: &UnitGrid) -> T {
    grid.mean(|z| f(z).norm())
}

/// Validates the form and sets `A = 1/‖z^ℓ W q² P‖₁`.
pub fn normalize<T: Real>(
    nodes: NodeSet<T>,
    ell: usize,
    w_zeros: Vec<Complex<T>>,
    q: CPolynomial<T>,
    grid: &UnitGrid,
    circle_tol: T,
) -> Result<BoundaryForm<T>> {
    let raw = BoundaryForm::with_scale(nodes, ell, w_zeros, q, T::one(), circle_tol)?;
    let norm = h1_norm(&raw, grid);
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(Error::invalid(format!("form has degenerate norm {norm}")));
    }
    Ok(raw.rescaled(norm.recip()))
}

#[doc(hidden)]
pub fn default_root_tol<T: Real>() -> T {
    T::lit(DEFAULT_ROOT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn half_node() -> NodeSet<f64> {
        NodeSet::new(vec![c(0.5, 0.0)]).unwrap()
    }

    /// Composite Simpson rule on [0, 2π], independent of the grid module.
    fn simpson_circle_mean(f: impl Fn(f64) -> f64, panels: usize) -> f64 {
        let h = std::f64::consts::TAU / panels as f64;
        let mut s = f(0.0) + f(std::f64::consts::TAU);
        for k in 1..panels {
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
        }
        s * h / 3.0 / std::f64::consts::TAU
    }

    #[test]
    fn node_validation() {
        assert!(NodeSet::<f64>::new(vec![]).is_err());
        assert!(NodeSet::new(vec![c(0.0, 0.0)]).is_err());
        assert!(NodeSet::new(vec![c(1.0, 0.0)]).is_err());
        assert!(NodeSet::new(vec![c(0.3, 0.0), c(0.3, 0.0)]).is_err());
        assert!(NodeSet::new(vec![c(0.3, 0.0), c(0.0, 0.3)]).is_ok());
    }

    #[test]
    fn blaschke_examples() {
        assert!((blaschke_eval(&[c(0.5, 0.0)], c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-15);
        let b = c(0.2, -0.4);
        assert!(blaschke_eval(&[b], b).unwrap().norm() < 1e-15);
        assert_eq!(blaschke_eval::<f64>(&[], c(0.3, 0.1)).unwrap(), c(1.0, 0.0));
        assert!(matches!(blaschke_eval(&[c(0.5, 0.0)], c(2.0, 0.0)), Err(Error::Pole { .. })));

        let mut rng = random::seeded(3);
        let zeros: Vec<C> = (0..5).map(|_| random::annulus_point(&mut rng, 0.0, 0.95)).collect();
        for z in UnitGrid::new(256).unwrap().points::<f64>() {
            assert!((blaschke_eval(&zeros, z).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn p_examples() {
        let nodes = half_node();
        assert!((p_eval(&nodes, c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p_eval(&nodes, c(0.5, 0.0)).unwrap() - c(16.0 / 9.0, 0.0)).norm() < 1e-14);
        assert!(p_eval(&nodes, c(2.0, 0.0)).is_err());
        // ∮ |1 − β̄e^{it}|^{−2} dσ = 1/(1 − |β|²)
        let simpson = simpson_circle_mean(|t| nodes.p_modulus(C::from_polar(1.0, t)), 2000);
        assert!((simpson - 4.0 / 3.0).abs() < 1e-10);
        let trap = UnitGrid::default().mean(|z| p_eval(&nodes, z).unwrap().norm());
        assert!((trap - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn form_examples() {
        let nodes = half_node();
        let q = CPolynomial::constant(c(3f64.sqrt() / 2.0, 0.0));
        let f = BoundaryForm::with_scale(nodes.clone(), 0, vec![], q, 1.0, 1e-7).unwrap();
        assert!((f.eval(c(0.5, 0.0)).unwrap() - c(4.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!((f.h1_norm(&UnitGrid::default()) - 1.0).abs() < 1e-12);

        let nodes2 = NodeSet::new(vec![c(0.5, 0.1), c(-0.3, 0.4)]).unwrap();
        let f0 = BoundaryForm::new(nodes2, 1, vec![], CPolynomial::from_real(&[1.0])).unwrap();
        assert_eq!(f0.eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        for z in UnitGrid::new(256).unwrap().points::<f64>() {
            assert!((f0.eval(z).unwrap().norm() - f0.modulus_on_circle(z)).abs() < 1e-12);
        }
    }

    #[test]
    fn h1_norm_examples() {
        let g = UnitGrid::default();
        assert!((h1_norm_of(|_z: C| c(1.0, 0.0), &g) - 1.0).abs() < 1e-15);
        let p = BoundaryForm::with_scale(half_node(), 0, vec![], CPolynomial::from_real(&[1.0]), 1.0, 1e-7).unwrap();
        assert!((h1_norm(&p, &g) - 4.0 / 3.0).abs() < 1e-12);
        assert!((h1_norm(&p.rescaled(2.0), &g) - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_examples() {
        let g = UnitGrid::default();
        let f = normalize(half_node(), 0, vec![], CPolynomial::from_real(&[1.0]), &g, 1e-7).unwrap();
        assert!((f.scale() - 0.75).abs() < 1e-12);
        let again = normalize(half_node(), 0, vec![], f.q().clone(), &g, 1e-7).unwrap();
        assert!((again.scale() - f.scale()).abs() < 1e-10);
        let big = normalize(half_node(), 0, vec![], CPolynomial::from_real(&[10.0]), &g, 1e-7).unwrap();
        assert!((big.scale() - f.scale() / 100.0).abs() < 1e-14);
        assert!(normalize(half_node(), 0, vec![], CPolynomial::zero(), &g, 1e-7).is_err());
    }

    #[test]
    fn structural_violations_are_named() {
        let nodes = NodeSet::new(vec![c(0.5, 0.0), c(-0.2, 0.3)]).unwrap();
        let inside = CPolynomial::from_real(&[-0.5, 1.0]);
        let e = BoundaryForm::outer(nodes.clone(), inside).unwrap_err();
        assert!(e.to_string().contains("inside the unit disc"), "{e}");
        let too_big = CPolynomial::from_real(&[1.0, 0.1, 0.1]);
        assert!(BoundaryForm::outer(nodes.clone(), too_big).unwrap_err().to_string().contains("degree"));
        let lin = CPolynomial::from_real(&[1.0, -0.5]);
        assert!(BoundaryForm::new(nodes.clone(), 1, vec![], lin.clone()).unwrap_err().to_string().contains("ell"));
        // q = 1 − z/2 has its root at 2; reflected zero at 1/2
        assert!(BoundaryForm::new(nodes.clone(), 0, vec![c(0.5, 0.0)], lin.clone()).is_ok());
        assert!(BoundaryForm::new(nodes.clone(), 0, vec![c(0.4, 0.0)], lin.clone()).is_err());
        assert!(BoundaryForm::new(nodes, 0, vec![c(0.5, 0.0), c(0.5, 0.0)], lin).is_err());
    }

    #[test]
    fn positivity_identity_on_circle() {
        let mut rng = random::seeded(9);
        let g = UnitGrid::new(1024).unwrap();
        for n in 1..=6 {
            let nodes: NodeSet<f64> = random::nodes(&mut rng, n, 0.05, 0.95, 1e-3);
            for (j, z) in g.points::<f64>().enumerate() {
                let t: f64 = g.angle(j);
                let val = C::from_polar(1.0, n as f64 * t) * nodes.p(z).unwrap() / nodes.blaschke(z).unwrap();
                assert!(val.re > 0.0);
                assert!(val.im.abs() <= 1e-10 * val.re);
                assert!((val.re - nodes.p_modulus(z)).abs() <= 1e-10 * val.re);
            }
        }
    }

    #[test]
    fn norm_converges_under_grid_doubling() {
        let mut rng = random::seeded(12);
        for n in 2..=5 {
            let nodes: NodeSet<f64> = random::nodes(&mut rng, n, 0.1, 0.9, 1e-2);
            let q = random::zero_free_poly(&mut rng, n - 1, 1.1, 3.0);
            let f = BoundaryForm::outer(nodes, q).unwrap();
            let g = UnitGrid::new(2048).unwrap();
            assert!((h1_norm(&f, &g) - h1_norm(&f, &g.doubled())).abs() <= 1e-9);
        }
    }

    #[test]
    fn derivative_of_blaschke_at_node() {
        let nodes = NodeSet::new(vec![c(0.3, 0.2), c(-0.5, 0.1), c(0.1, -0.7)]).unwrap();
        for k in 0..3 {
            let b = nodes.beta()[k];
            let h = 1e-6;
            let fd = (nodes.blaschke(b + c(h, 0.0)).unwrap() - nodes.blaschke(b - c(h, 0.0)).unwrap()) / (2.0 * h);
            assert!((fd - nodes.blaschke_derivative_at_node(k)).norm() < 1e-8);
        }
    }
}
