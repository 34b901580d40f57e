//! Complex polynomials: evaluation, reflection `z^n·conj(p(1/conj z))`, root
//! finding and classification against the unit circle, and Fejér–Riesz
//! spectral factorization of nonnegative trigonometric polynomials.

use num_complex::Complex;

use crate::grid::UnitGrid;
use crate::{Error, Real, Result};

/// Roots within this distance of |z| = 1 are declared to lie on the circle.
pub const DEFAULT_CIRCLE_TOL: f64 = 1e-7;

/// Backward-error bound accepted from the root finder.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

/// Polynomial `Σ coeffs[j]·z^j` with complex coefficients.
///
/// Trailing exact zeros are stripped, so the last stored coefficient (if any)
/// is nonzero and the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CPolynomial<T> {
    coeffs: Vec<Complex<T>>,
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

impl<T: Real> CPolynomial<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| *c == czero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// `lead · Π (z − r)`.
    pub fn from_roots(roots: &[Complex<T>], lead: Complex<T>) -> Self {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![czero(); c.len() + 1];
            for (j, &a) in c.iter().enumerate() {
                next[j + 1] = next[j + 1] + a;
                next[j] = next[j] - a * r;
            }
            c = next;
        }
        Self::new(c)
    }

    /// Degree-`(n−1)` interpolant through `(points[k], values[k])`.
    pub fn interpolate(points: &[Complex<T>], values: &[Complex<T>]) -> Result<Self> {
        if points.len() != values.len() || points.is_empty() {
            return Err(Error::invalid("interpolation needs matching nonempty point/value lists"));
        }
        let n = points.len();
        let mut dd = values.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let h = points[i] - points[i - j];
                if h.norm() == T::zero() {
                    return Err(Error::invalid("interpolation points must be distinct"));
                }
                dd[i] = (dd[i] - dd[i - 1]) / h;
            }
        }
        let mut p = Self::constant(dd[n - 1]);
        for i in (0..n - 1).rev() {
            p = p.mul(&Self::new(vec![-points[i], cone()]));
            p = p.add(&Self::constant(dd[i]));
        }
        Ok(p)
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs.last().copied().unwrap_or_else(czero)
    }

    /// Largest coefficient modulus.
    pub fn coeff_scale(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(czero(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = czero();
        let mut dp = czero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |a_j|·|z|^j`, the natural scale for a residual at `z`.
    pub fn abs_eval(&self, z: Complex<T>) -> T {
        let r = z.norm();
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c.scale(T::of_usize(j)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|j| {
                    self.coeffs.get(j).copied().unwrap_or_else(czero)
                        + other.coeffs.get(j).copied().unwrap_or_else(czero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-cone::<T>()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![czero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j] + a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![czero(); k];
        c.extend_from_slice(&self.coeffs);
        Self::new(c)
    }

    /// Long division: `self = quotient·divisor + remainder`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![czero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let f = rem[k + dd] / lead;
            quot[k] = f;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - f * b;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Synthetic division by `(z − root)`; returns the quotient and `p(root)`.
    pub fn deflate(&self, root: Complex<T>) -> (Self, Complex<T>) {
        let Some(d) = self.degree() else {
            return (Self::zero(), czero());
        };
        if d == 0 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![czero(); d];
        let mut acc = self.coeffs[d];
        for j in (0..d).rev() {
            q[j] = acc;
            acc = acc * root + self.coeffs[j];
        }
        (Self::new(q), acc)
    }

    /// Drops leading coefficients below `rel · coeff_scale()`.
    pub fn trim_relative(&self, rel: T) -> Self {
        let cut = rel * self.coeff_scale();
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().is_some_and(|x| x.norm() <= cut) {
            c.pop();
        }
        Self::new(c)
    }

    /// `z^n · conj(p(1/conj z))`: coefficient `j` of the result is `conj(a_{n−j})`.
    pub fn reflect(&self, n: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::invalid(format!(
                    "cannot reflect a degree-{d} polynomial with nominal degree {n}"
                )));
            }
        }
        Ok(Self::new(
            (0..=n)
                .map(|j| {
                    self.coeffs
                        .get(n - j)
                        .map(|c| c.conj())
                        .unwrap_or_else(czero)
                })
                .collect(),
        ))
    }

    /// All roots with multiplicity (Aberth–Ehrlich iteration).
    ///
    /// Every returned root satisfies `|p(r)| ≤ tol · Σ|a_j||r|^j`.
    pub fn roots(&self, tol: T) -> Result<Vec<Complex<T>>> {
        let d = self
            .degree()
            .ok_or_else(|| Error::invalid("roots of the zero polynomial are undefined"))?;
        if d == 0 {
            return Err(Error::invalid("a constant polynomial has no roots to find"));
        }
        let zeros_at_origin = self.coeffs.iter().take_while(|c| **c == czero()).count();
        let reduced = Self::new(self.coeffs[zeros_at_origin..].to_vec());
        let mut out = vec![czero(); zeros_at_origin];
        if reduced.degree().unwrap_or(0) > 0 {
            out.extend(aberth(&reduced, tol)?);
        }
        Ok(out)
    }

    pub fn classify_roots(&self, circle_tol: T) -> Result<RootClasses<T>> {
        classify_roots(self, circle_tol)
    }
}

/// Initial guesses on circles read off the upper convex hull of the
/// Newton polygon `(j, ln|a_j|)`.
fn initial_guesses<T: Real>(p: &CPolynomial<T>) -> Vec<Complex<T>> {
    let a = p.coeffs();
    let d = a.len() - 1;
    let pts: Vec<(f64, f64)> = a
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let m = c.norm().to_f64_lossy();
            (j as f64, if m > 0.0 { m.ln() } else { f64::NEG_INFINITY })
        })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for j in 0..=d {
        if pts[j].1 == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let (i0, i1) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (pts[i1].0 - pts[i0].0) * (pts[j].1 - pts[i0].1)
                - (pts[i1].1 - pts[i0].1) * (pts[j].0 - pts[i0].0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    let mut guesses = Vec::with_capacity(d);
    for w in hull.windows(2) {
        let (i, k) = (w[0], w[1]);
        let cnt = k - i;
        let r = ((pts[i].1 - pts[k].1) / cnt as f64).exp();
        for s in 0..cnt {
            let th = std::f64::consts::TAU * (s as f64) / (cnt as f64) + 0.4 + 0.7 * guesses.len() as f64;
            guesses.push(Complex::from_polar(T::lit(r), T::lit(th)));
        }
    }
    guesses
}

fn aberth<T: Real>(p: &CPolynomial<T>, tol: T) -> Result<Vec<Complex<T>>> {
    const MAX_ITER: usize = 1000;
    let d = p.degree().unwrap_or(0);
    let mut z = initial_guesses(p);
    debug_assert_eq!(z.len(), d);
    let eps = T::epsilon();
    let mut done = vec![false; d];
    let mut iterations = 0;
    while iterations < MAX_ITER && done.iter().any(|x| !x) {
        iterations += 1;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (pz, dpz) = p.eval_with_derivative(z[k]);
            if pz.norm() <= T::lit(4.0) * eps * p.abs_eval(z[k]) {
                done[k] = true;
                continue;
            }
            if dpz.norm() == T::zero() {
                z[k] = z[k] + Complex::new(eps.sqrt(), eps.sqrt()) * (T::one() + z[k].norm());
                continue;
            }
            let w = pz / dpz;
            let s = (0..d)
                .filter(|&j| j != k)
                .fold(czero::<T>(), |acc, j| acc + (z[k] - z[j]).inv());
            let corr = w / (cone::<T>() - w * s);
            if !corr.re.is_finite() || !corr.im.is_finite() {
                z[k] = z[k] + Complex::new(eps.sqrt(), -eps.sqrt()) * (T::one() + z[k].norm());
                continue;
            }
            z[k] = z[k] - corr;
            if corr.norm() <= T::lit(2.0) * eps * z[k].norm() {
                done[k] = true;
            }
        }
    }
    let worst = z
        .iter()
        .map(|&r| p.eval(r).norm() / p.abs_eval(r).max(T::min_positive_value()))
        .fold(T::zero(), |m, x| m.max(x));
    if worst > tol || !worst.is_finite() {
        return Err(Error::NonConvergence {
            what: "polynomial root finder",
            iterations,
            residual: worst.to_f64_lossy(),
        });
    }
    Ok(z)
}

pub fn reflect<T: Real>(p: &CPolynomial<T>, n: usize) -> Result<CPolynomial<T>> {
    p.reflect(n)
}

pub fn roots<T: Real>(p: &CPolynomial<T>, tol: T) -> Result<Vec<Complex<T>>> {
    p.roots(tol)
}

/// Roots of a polynomial split by position relative to the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct RootClasses<T> {
    pub inside: Vec<Complex<T>>,
    pub on_circle: Vec<Complex<T>>,
    pub outside: Vec<Complex<T>>,
}

impl<T: Real> RootClasses<T> {
    pub fn all(&self) -> impl Iterator<Item = &Complex<T>> {
        self.inside.iter().chain(&self.on_circle).chain(&self.outside)
    }

    /// Distance of the root nearest to the circle, `None` without roots.
    pub fn nearest_circle_distance(&self) -> Option<T> {
        self.all()
            .map(|r| (r.norm() - T::one()).abs())
            .reduce(|a, b| a.min(b))
    }
}

pub fn classify_roots<T: Real>(p: &CPolynomial<T>, circle_tol: T) -> Result<RootClasses<T>> {
    let d = p
        .degree()
        .ok_or_else(|| Error::invalid("cannot classify roots of the zero polynomial"))?;
    let mut classes = RootClasses {
        inside: Vec::new(),
        on_circle: Vec::new(),
        outside: Vec::new(),
    };
    if d == 0 {
        return Ok(classes);
    }
    for r in p.roots(T::lit(DEFAULT_ROOT_TOL))? {
        let m = r.norm();
        if m < T::one() - circle_tol {
            classes.inside.push(r);
        } else if m > T::one() + circle_tol {
            classes.outside.push(r);
        } else {
            classes.on_circle.push(r);
        }
    }
    Ok(classes)
}

/// Real-valued trigonometric polynomial `v(t) = Σ_{|j|≤d} a_j e^{ijt}` with
/// `a_{−j} = conj(a_j)`; only `a_0..a_d` are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> TrigPoly<T> {
    /// `coeffs[j] = a_j` for `j = 0..=d`; `a_0` must be real.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            coeffs.push(czero());
        }
        let scale = coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        if coeffs[0].im.abs() > T::lit(1e-12) * scale.max(T::one()) {
            return Err(Error::invalid("constant coefficient of a Hermitian trig polynomial must be real"));
        }
        coeffs[0].im = T::zero();
        Ok(Self { coeffs })
    }

    /// `|p(e^{it})|²`.
    pub fn abs_square(p: &CPolynomial<T>) -> Self {
        let c = p.coeffs();
        let d = c.len().saturating_sub(1);
        let mut a = vec![czero(); d + 1];
        for (j, aj) in a.iter_mut().enumerate() {
            for l in 0..c.len().saturating_sub(j) {
                *aj = *aj + c[l + j] * c[l].conj();
            }
        }
        if c.is_empty() {
            return Self { coeffs: vec![czero()] };
        }
        a[0].im = T::zero();
        Self { coeffs: a }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Hermitian degree `d`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: T) -> T {
        let mut v = self.coeffs[0].re;
        for (j, a) in self.coeffs.iter().enumerate().skip(1) {
            let e = Complex::from_polar(T::one(), t * T::of_usize(j));
            v = v + T::lit(2.0) * (*a * e).re;
        }
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..n)
                .map(|j| {
                    self.coeffs.get(j).copied().unwrap_or_else(czero)
                        + other.coeffs.get(j).copied().unwrap_or_else(czero)
                })
                .collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Product `v·w` (Laurent convolution).
    pub fn mul(&self, other: &Self) -> Self {
        let full = |p: &Self| -> Vec<Complex<T>> {
            let d = p.degree();
            (0..=2 * d)
                .map(|k| {
                    if k >= d {
                        p.coeffs[k - d]
                    } else {
                        p.coeffs[d - k].conj()
                    }
                })
                .collect()
        };
        let (a, b) = (full(self), full(other));
        let (da, db) = (self.degree(), other.degree());
        let d = da + db;
        let mut c = vec![czero(); d + 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                // exponent (i - da) + (j - db)
                let e = i + j;
                if e >= d {
                    c[e - d] = c[e - d] + x * y;
                }
            }
        }
        c[0].im = T::zero();
        Self { coeffs: c }
    }

    /// `z^d · v(z)` as an ordinary polynomial of degree `2d`.
    pub fn laurent_lift(&self) -> CPolynomial<T> {
        let d = self.degree();
        CPolynomial::new(
            (0..=2 * d)
                .map(|k| {
                    if k >= d {
                        self.coeffs[k - d]
                    } else {
                        self.coeffs[d - k].conj()
                    }
                })
                .collect(),
        )
    }

    /// `(min, max|v|)` over a uniform sampling of the circle.
    pub fn sample_range(&self, samples: usize) -> (T, T) {
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for j in 0..samples {
            let t = T::TAU() * T::of_usize(j) / T::of_usize(samples);
            let v = self.eval(t);
            lo = lo.min(v);
            hi = hi.max(v.abs());
        }
        (lo, hi)
    }

    fn trimmed(&self) -> Self {
        let scale = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().is_some_and(|x| x.norm() <= T::lit(1e-14) * scale) {
            c.pop();
        }
        Self { coeffs: c }
    }
}

/// Circle roots of the Laurent lift within this band are paired and averaged.
const FR_PAIR_BAND: f64 = 1e-6;

/// Spectral factor `s` with `|s(e^{it})|² = v(t)` and no roots in the open
/// disc, normalized so its leading coefficient is real positive.
pub fn fejer_riesz<T: Real>(v: &TrigPoly<T>, tol: T) -> Result<CPolynomial<T>> {
    let v = v.trimmed();
    let d = v.degree();
    let samples = (64 * (d + 1)).max(1024);
    let (vmin, vmax) = v.sample_range(samples);
    if vmax == T::zero() {
        return Err(Error::NotFactorable("the zero trigonometric polynomial has no normalized factor".into()));
    }
    if vmin < -tol * vmax {
        return Err(Error::NotFactorable(format!(
            "trigonometric polynomial takes the negative value {vmin} (max |v| = {vmax})"
        )));
    }
    if d == 0 {
        return Ok(CPolynomial::constant(Complex::new(v.coeffs[0].re.sqrt(), T::zero())));
    }

    let lift = v.laurent_lift();
    let band = T::lit(FR_PAIR_BAND);
    let mut outer = Vec::with_capacity(d);
    let mut circle = Vec::new();
    for r in lift.roots(T::lit(DEFAULT_ROOT_TOL))? {
        let m = r.norm();
        if m > T::one() + band {
            outer.push(r);
        } else if m >= T::one() - band {
            circle.push(r);
        }
    }
    if circle.len() % 2 == 1 {
        return Err(Error::NotFactorable(format!(
            "odd number ({}) of zeros on the unit circle",
            circle.len()
        )));
    }
    let dlift = lift.derivative();
    let halved: Vec<Complex<T>> = pair_circle_roots(circle)
        .into_iter()
        .map(|r| polish_double_root(&dlift, r))
        .collect();
    if outer.len() + halved.len() != d {
        return Err(Error::NotFactorable(format!(
            "root pairing inconsistent: {} outside + {} circle pairs for degree {d}",
            outer.len(),
            halved.len()
        )));
    }
    outer.extend(halved);
    let prod_mod = outer.iter().fold(T::one(), |acc, r| acc * r.norm());
    let lead = (v.coeffs[d].norm() / prod_mod).sqrt();
    let s = CPolynomial::from_roots(&outer, Complex::new(lead, T::zero()));

    let grid = UnitGrid::new(samples.next_power_of_two())?;
    let resid = (0..grid.len())
        .map(|j| {
            let t: T = grid.angle(j);
            (v.eval(t) - s.eval(grid.point(j)).norm_sqr()).abs()
        })
        .fold(T::zero(), |m, x| m.max(x));
    if resid > tol.sqrt() * vmax {
        return Err(Error::NotFactorable(format!(
            "spectral factor reproduces v only to {resid:e} (max |v| = {vmax})"
        )));
    }
    Ok(s)
}

/// Newton on `L′`, where a double root of `L` is simple, then back onto |z| = 1.
fn polish_double_root<T: Real>(dlift: &CPolynomial<T>, mut r: Complex<T>) -> Complex<T> {
    let start = r;
    for _ in 0..8 {
        let (f, df) = dlift.eval_with_derivative(r);
        if df.norm() == T::zero() {
            break;
        }
        let step = f / df;
        r = r - step;
        if step.norm() <= T::epsilon() * T::lit(4.0) {
            break;
        }
    }
    if !(r.norm().is_finite()) || (r - start).norm() > T::lit(FR_PAIR_BAND) * T::lit(10.0) {
        r = start;
    }
    r.unscale(r.norm())
}

/// Pairs circle roots that are adjacent in angle (split double roots) and
/// returns one unit-modulus representative per pair.
fn pair_circle_roots<T: Real>(mut roots: Vec<Complex<T>>) -> Vec<Complex<T>> {
    if roots.is_empty() {
        return roots;
    }
    roots.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap_or(std::cmp::Ordering::Equal));
    let n = roots.len();
    let pairing = |offset: usize| -> (T, Vec<Complex<T>>) {
        let mut worst = T::zero();
        let mut reps = Vec::with_capacity(n / 2);
        for k in 0..n / 2 {
            let a = roots[(2 * k + offset) % n];
            let b = roots[(2 * k + 1 + offset) % n];
            worst = worst.max((a - b).norm());
            let mid = (a + b).unscale(T::lit(2.0));
            reps.push(mid.unscale(mid.norm()));
        }
        (worst, reps)
    };
    let (w0, r0) = pairing(0);
    let (w1, r1) = pairing(1);
    if w0 <= w1 {
        r0
    } else {
        r1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn assert_multiset_close(mut got: Vec<C>, mut want: Vec<C>, tol: f64) {
        let key = |z: &C| (z.re * 1e6).round() as i64 * 1_000_000_000 + (z.im * 1e6).round() as i64;
        got.sort_by_key(key);
        want.sort_by_key(key);
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < tol, "{g} vs {w}");
        }
    }

    #[test]
    fn reflect_examples() {
        let p = CPolynomial::from_real(&[1.0, 2.0]);
        assert_eq!(p.reflect(1).unwrap(), CPolynomial::from_real(&[2.0, 1.0]));
        let i = CPolynomial::constant(c(0.0, 1.0));
        assert_eq!(i.reflect(0).unwrap(), CPolynomial::constant(c(0.0, -1.0)));
        assert!(p.reflect(0).is_err());
        // nominal degree above the true degree multiplies by z^k
        let r = CPolynomial::constant(c(2.0, 0.0)).reflect(2).unwrap();
        assert_eq!(r, CPolynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]));
    }

    #[test]
    fn reflect_on_circle_is_conjugate_times_power() {
        let mut rng = random::seeded(5);
        let p: CPolynomial<f64> = CPolynomial::new((0..6).map(|_| random::complex_normal(&mut rng)).collect());
        let d = p.degree().unwrap();
        let pr = p.reflect(d).unwrap();
        let g = UnitGrid::new(1024).unwrap();
        for z in g.points::<f64>() {
            let want = z.powu(d as u32) * p.eval(z).conj();
            assert!((pr.eval(z) - want).norm() < 1e-10);
        }
    }

    #[test]
    fn roots_examples() {
        let p = CPolynomial::from_real(&[-1.0, 0.0, 1.0]);
        assert_multiset_close(p.roots(1e-10).unwrap(), vec![c(1.0, 0.0), c(-1.0, 0.0)], 1e-12);
        let q = CPolynomial::from_real(&[0.25, -1.0, 1.0]);
        assert_multiset_close(q.roots(1e-10).unwrap(), vec![c(0.5, 0.0), c(0.5, 0.0)], 1e-7);
        assert!(CPolynomial::<f64>::zero().roots(1e-10).is_err());
        assert!(CPolynomial::from_real(&[3.0]).roots(1e-10).is_err());
        let z2 = CPolynomial::from_real(&[0.0, 0.0, 1.0, 1.0]);
        assert_multiset_close(z2.roots(1e-10).unwrap(), vec![c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)], 1e-12);
    }

    #[test]
    fn roots_reconstruct_random_degree_eight() {
        let mut rng = random::seeded(17);
        for _ in 0..50 {
            let coeffs: Vec<C> = (0..9).map(|_| random::complex_normal(&mut rng)).collect();
            let p = CPolynomial::new(coeffs);
            let r = p.roots(1e-10).unwrap();
            assert_eq!(r.len(), 8);
            let rebuilt = CPolynomial::from_roots(&r, p.leading());
            let scale = p.coeff_scale();
            for (a, b) in rebuilt.coeffs().iter().zip(p.coeffs()) {
                assert!((a - b).norm() <= 1e-8 * scale, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn roots_with_spread_moduli() {
        let want = vec![c(1e-3, 0.0), c(0.0, 0.5), c(30.0, 4.0), c(-800.0, 1.0)];
        let p = CPolynomial::from_roots(&want, c(1.0, 0.0));
        let got = p.roots(1e-10).unwrap();
        for w in &want {
            assert!(got.iter().any(|g| (g - w).norm() <= 1e-9 * w.norm().max(1.0)));
        }
    }

    #[test]
    fn classify_examples() {
        let p = CPolynomial::from_roots(&[c(0.5, 0.0), c(-1.0, 0.0), c(2.0, 0.0)], c(1.0, 0.0));
        let k = p.classify_roots(1e-7).unwrap();
        assert_eq!(k.inside.len(), 1);
        assert_eq!(k.on_circle.len(), 1);
        assert_eq!(k.outside.len(), 1);
        assert!((k.inside[0] - c(0.5, 0.0)).norm() < 1e-12);
        assert!((k.on_circle[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((k.outside[0] - c(2.0, 0.0)).norm() < 1e-12);
        let k0 = CPolynomial::constant(c(2.0, 1.0)).classify_roots(1e-7).unwrap();
        assert!(k0.inside.is_empty() && k0.on_circle.is_empty() && k0.outside.is_empty());
        assert!(CPolynomial::<f64>::zero().classify_roots(1e-7).is_err());
    }

    #[test]
    fn reflection_pairs_inside_and_outside() {
        let mut rng = random::seeded(23);
        for deg in 1..6 {
            let q: CPolynomial<f64> = random::zero_free_poly(&mut rng, deg, 1.1, 3.0);
            let prod = q.mul(&q.reflect(deg).unwrap());
            let k = prod.classify_roots(1e-7).unwrap();
            assert_eq!(k.inside.len(), deg);
            assert_eq!(k.outside.len(), deg);
            assert!(k.on_circle.is_empty());
            // roots pair as λ ↔ 1/conj(λ)
            for r in &k.inside {
                let partner = r.conj().inv();
                assert!(k.outside.iter().any(|o| (o - partner).norm() < 1e-8 * partner.norm()));
            }
        }
    }

    #[test]
    fn unimodular_product_identity() {
        // Π (e^{it} − λ_k)² = μ e^{irt} Π |e^{it} − λ_k|² with μ constant
        let mut rng = random::seeded(31);
        let lambdas: Vec<C> = (0..4).map(|_| random::unit_complex(&mut rng)).collect();
        let r = lambdas.len() as i32;
        let g = UnitGrid::new(1024).unwrap();
        let mut mu: Option<C> = None;
        for z in g.points::<f64>() {
            let num = lambdas.iter().fold(c(1.0, 0.0), |acc, l| acc * (z - l) * (z - l));
            let den = lambdas.iter().fold(1.0, |acc, l| acc * (z - l).norm_sqr());
            if den < 1e-6 {
                continue;
            }
            let ratio = num / (z.powi(r) * den);
            assert!((ratio.norm() - 1.0).abs() < 1e-8);
            match mu {
                None => mu = Some(ratio),
                Some(m) => assert!((ratio - m).norm() < 1e-8),
            }
        }
    }

    #[test]
    fn fejer_riesz_examples() {
        let v = TrigPoly::new(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let s = fejer_riesz(&v, 1e-10).unwrap();
        assert_eq!(s.degree(), Some(1));
        assert!((s.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-7);
        assert!((s.coeffs()[1] - c(1.0, 0.0)).norm() < 1e-12);

        let four = TrigPoly::new(vec![c(4.0, 0.0)]).unwrap();
        assert_eq!(fejer_riesz(&four, 1e-10).unwrap(), CPolynomial::constant(c(2.0, 0.0)));
    }

    #[test]
    fn fejer_riesz_recovers_zero_free_factor() {
        let mut rng = random::seeded(41);
        for deg in 1..=8 {
            let s0: CPolynomial<f64> = random::zero_free_poly(&mut rng, deg, 1.05, 4.0);
            let v = TrigPoly::abs_square(&s0);
            let s = fejer_riesz(&v, 1e-10).unwrap();
            // s0 up to a unimodular constant; fix the phase by the leading coefficient
            let phase = s0.leading() / s0.leading().norm();
            let want = s0.scale(phase.conj());
            let scale = want.coeff_scale();
            for (a, b) in s.coeffs().iter().zip(want.coeffs()) {
                assert!((a - b).norm() <= 1e-8 * scale, "deg {deg}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn fejer_riesz_rejects_bad_input() {
        let zero = TrigPoly::<f64>::new(vec![c(0.0, 0.0)]).unwrap();
        assert!(matches!(fejer_riesz(&zero, 1e-10), Err(Error::NotFactorable(_))));
        let neg = TrigPoly::new(vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(matches!(fejer_riesz(&neg, 1e-10), Err(Error::NotFactorable(_))));
        assert!(TrigPoly::new(vec![c(1.0, 1.0)]).is_err());
    }

    #[test]
    fn fejer_riesz_with_double_circle_zeros() {
        // |(z − e^{0.3i})(z + 2)(z − e^{2i})|²
        let s0 = CPolynomial::from_roots(
            &[C::from_polar(1.0, 0.3), c(-2.0, 0.0), C::from_polar(1.0, 2.0)],
            c(1.5, 0.0),
        );
        let v = TrigPoly::abs_square(&s0);
        let s = fejer_riesz(&v, 1e-10).unwrap();
        for (a, b) in s.coeffs().iter().zip(s0.coeffs()) {
            assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        }
        let k = s.classify_roots(1e-7).unwrap();
        assert_eq!(k.on_circle.len(), 2);
        assert!(k.inside.is_empty());
    }

    #[test]
    fn trig_product_matches_pointwise() {
        let a = TrigPoly::new(vec![c(3.0, 0.0), c(0.5, -0.2), c(0.1, 0.3)]).unwrap();
        let b = TrigPoly::new(vec![c(1.0, 0.0), c(-0.4, 0.1)]).unwrap();
        let ab = a.mul(&b);
        for k in 0..50 {
            let t = 0.13 * k as f64;
            assert!((ab.eval(t) - a.eval(t) * b.eval(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolation_hits_values() {
        let pts = vec![c(0.1, 0.2), c(-0.5, 0.0), c(0.3, -0.6), c(0.7, 0.1)];
        let vals = vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0), c(3.0, -0.5)];
        let p = CPolynomial::interpolate(&pts, &vals).unwrap();
        assert!(p.degree().unwrap() <= 3);
        for (z, v) in pts.iter().zip(&vals) {
            assert!((p.eval(*z) - v).norm() < 1e-12);
        }
    }

    #[test]
    fn division_and_deflation() {
        let p = CPolynomial::from_roots(&[c(1.0, 1.0), c(2.0, 0.0), c(-0.5, 0.3)], c(2.0, -1.0));
        let (q, r) = p.deflate(c(2.0, 0.0));
        assert!(r.norm() < 1e-12);
        assert_eq!(q.degree(), Some(2));
        let d = CPolynomial::from_roots(&[c(1.0, 1.0)], c(1.0, 0.0));
        let (q2, r2) = p.div_rem(&d).unwrap();
        assert!(r2.coeff_scale() < 1e-12);
        let back = q2.mul(&d);
        for (a, b) in back.coeffs().iter().zip(p.coeffs()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution(coeffs in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..8)) {
            let mut c: Vec<C> = coeffs.iter().map(|&(a, b)| C::new(a, b)).collect();
            if c[0].norm() < 1e-3 { c[0] = C::new(1.0, 0.0); }
            if c.last().unwrap().norm() < 1e-3 { *c.last_mut().unwrap() = C::new(0.0, 1.0); }
            let p = CPolynomial::new(c);
            let d = p.degree().unwrap();
            prop_assert_eq!(p.reflect(d).unwrap().reflect(d).unwrap(), p);
        }

        #[test]
        fn abs_square_is_real_and_nonnegative(coeffs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..6), t in 0.0f64..6.3) {
            let p = CPolynomial::new(coeffs.iter().map(|&(a, b)| C::new(a, b)).collect());
            let v = TrigPoly::abs_square(&p);
            let z = C::from_polar(1.0, t);
            prop_assert!((v.eval(t) - p.eval(z).norm_sqr()).abs() <= 1e-9 * (1.0 + p.eval(z).norm_sqr()));
        }
    }
}
