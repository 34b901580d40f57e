//! Dual extremal problems for point evaluation on the unit ball of the Hardy
//! space H¹, and the geometry of the convex body
//!
//! ```text
//! Λ = { (f(β₁), …, f(βₙ)) : f ∈ H¹, ‖f‖₁ ≤ 1 }
//! ```
//!
//! for distinct nonzero nodes βₖ in the open unit disc.
//!
//! Boundary points of Λ are exactly the value vectors of norm-one functions
//! `F = A·z^ℓ·W·q²·P` (see [`hardy::BoundaryForm`]). Each such `F` carries a
//! unimodular kernel `K` ([`duality::KernelCertificate`]) whose residues at
//! the nodes give the linear functional it maximizes. The [`nehari`] module
//! runs the inverse direction, [`lambda`] classifies boundary points
//! (extreme, exposed, neither) and [`oracle`] is a brute-force referee.
//!
//! All numerics are generic over a [`Real`] scalar; the `*64` aliases at the
//! crate root fix it to `f64`, which is what the default tolerances assume.

pub mod cpoly;
pub mod duality;
mod error;
pub mod grid;
pub mod hardy;
pub mod lambda;
pub mod linalg;
pub mod nehari;
pub mod oracle;
pub mod random;

pub use error::{Error, Result};
pub use num_complex::Complex;

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumCast};
use rustfft::FftNum;

/// Scalar field the library computes over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FftNum + Sum + Display + LowerExp + Debug + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("literal representable in scalar type")
    }

    fn of_usize(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("integer representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FftNum + Sum + Display + LowerExp + Debug + Default + Send + Sync + 'static
{
}

pub type C64 = Complex<f64>;

pub type CPolynomial64 = cpoly::CPolynomial<f64>;
pub type TrigPoly64 = cpoly::TrigPoly<f64>;
pub type NodeSet64 = hardy::NodeSet<f64>;
pub type BoundaryForm64 = hardy::BoundaryForm<f64>;
pub type KernelCertificate64 = duality::KernelCertificate<f64>;
pub type Functional64 = duality::Functional<f64>;
pub type ExtremalSolution64 = nehari::ExtremalSolution<f64>;
pub type Classification64 = lambda::Classification<f64>;
pub type SliceTrace64 = lambda::SliceTrace<f64>;

pub type CPolynomial32 = cpoly::CPolynomial<f32>;
pub type NodeSet32 = hardy::NodeSet<f32>;
pub type BoundaryForm32 = hardy::BoundaryForm<f32>;
