#![allow(dead_code)]

use hardy_lambda::cpoly::{CPolynomial, TrigPoly};
use hardy_lambda::hardy::{BoundaryForm, NodeSet};
use hardy_lambda::random::{self, SeededRng};
use hardy_lambda::C64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn nodes(rng: &mut SeededRng, n: usize) -> NodeSet<f64> {
    random::nodes(rng, n, 0.1, 0.85, 0.05)
}

/// Outer form with `q` zero-free on the closed disc.
pub fn exposed_form(rng: &mut SeededRng, n: usize) -> BoundaryForm<f64> {
    let d = rng.gen_range(0..n);
    let q = random::zero_free_poly(rng, d, 1.1, 3.0);
    BoundaryForm::outer(nodes(rng, n), q).unwrap()
}

/// Outer form whose `q` has a root on the circle (`n ≥ 2`).
pub fn circle_root_form(rng: &mut SeededRng, n: usize) -> BoundaryForm<f64> {
    let d = rng.gen_range(0..n - 1);
    let rest: CPolynomial<f64> = random::zero_free_poly(rng, d, 1.1, 3.0);
    let lambda: C64 = random::unit_complex(rng);
    let q = rest.mul(&CPolynomial::new(vec![-lambda, c(1.0, 0.0)]));
    BoundaryForm::outer(nodes(rng, n), q).unwrap()
}

/// Form with `ell ≥ 1` or a nonempty `W` (`n ≥ 2`).
pub fn non_extreme_form(rng: &mut SeededRng, n: usize) -> BoundaryForm<f64> {
    let nodes = nodes(rng, n);
    loop {
        let d = rng.gen_range(0..n);
        let q: CPolynomial<f64> = random::zero_free_poly(rng, d, 1.2, 3.0);
        let ell = rng.gen_range(0..n - d);
        let outside = q.classify_roots(1e-7).unwrap().outside;
        let w: Vec<C64> = outside
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .map(|r| r.conj().inv())
            .collect();
        if ell > 0 || !w.is_empty() {
            return BoundaryForm::new(nodes, ell, w, q).unwrap();
        }
    }
}

/// Any valid form: random degree, `ell` and `W` subset.
pub fn any_form(rng: &mut SeededRng, n: usize) -> BoundaryForm<f64> {
    let nodes = nodes(rng, n);
    let d = rng.gen_range(0..n);
    let q: CPolynomial<f64> = random::zero_free_poly(rng, d, 1.1, 3.0);
    let ell = rng.gen_range(0..n - d);
    let outside = q.classify_roots(1e-7).unwrap().outside;
    let w: Vec<C64> = outside
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .map(|r| r.conj().inv())
        .collect();
    BoundaryForm::new(nodes, ell, w, q).unwrap()
}

/// `|p|² + |r|²` for random polynomials of degree `d`.
pub fn nonnegative_trig(rng: &mut SeededRng, d: usize) -> TrigPoly<f64> {
    let p = CPolynomial::new((0..=d).map(|_| random::complex_normal(rng)).collect());
    let r = CPolynomial::new((0..=d).map(|_| random::complex_normal(rng)).collect());
    TrigPoly::abs_square(&p).add(&TrigPoly::abs_square(&r))
}
