//! Seeded random generators for test instances and randomized checks.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cpoly::CPolynomial;
use crate::hardy::NodeSet;
use crate::Real;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (Box–Muller), `E|z|² = 1`.
pub fn complex_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    let r = (-u1.ln()).sqrt();
    let th = std::f64::consts::TAU * u2;
    Complex::new(T::lit(r * th.cos()), T::lit(r * th.sin()))
}

pub fn unit_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::from_polar(T::one(), T::lit(rng.gen_range(0.0..std::f64::consts::TAU)))
}

/// A point with modulus uniform in `[r_min, r_max]` and uniform argument.
pub fn annulus_point<T: Real, R: Rng + ?Sized>(rng: &mut R, r_min: f64, r_max: f64) -> Complex<T> {
    let r = rng.gen_range(r_min..=r_max);
    unit_complex::<T, R>(rng).scale(T::lit(r))
}

/// Random admissible node set with moduli in `[r_min, r_max]` and pairwise
/// separation at least `min_sep`.
pub fn nodes<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    r_min: f64,
    r_max: f64,
    min_sep: f64,
) -> NodeSet<T> {
    loop {
        let mut beta: Vec<Complex<T>> = Vec::with_capacity(n);
        let mut tries = 0;
        while beta.len() < n && tries < 1000 {
            tries += 1;
            let b = annulus_point::<T, R>(rng, r_min, r_max);
            if beta.iter().all(|x| (*x - b).norm() >= T::lit(min_sep)) {
                beta.push(b);
            }
        }
        if beta.len() == n {
            return NodeSet::new(beta).expect("generated nodes are admissible");
        }
    }
}

/// Polynomial of exact degree `deg` whose roots have modulus in `[r_min, r_max]`
/// (so zero-free on the closed disc when `r_min > 1`), with a random complex scale.
pub fn zero_free_poly<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    deg: usize,
    r_min: f64,
    r_max: f64,
) -> CPolynomial<T> {
    let roots: Vec<Complex<T>> = (0..deg)
        .map(|_| annulus_point::<T, R>(rng, r_min, r_max))
        .collect();
    let lead = complex_normal::<T, R>(rng);
    let p = CPolynomial::from_roots(&roots, Complex::new(T::one(), T::zero()));
    // scale so that the constant term has modulus ~1 regardless of root sizes
    let c0 = p.coeffs()[0].norm();
    p.scale(lead.unscale(c0))
}
