//! Integer parametrizations of the solutions of homogeneous Diophantine
//! equations `f(X, Y, Z) = 0` whose curve is rational.
//!
//! The pipeline takes an integral ternary form and a birational
//! parametrization `(h1, h2, h3)` by binary forms (constructed for lines and
//! conics, supplied by the caller otherwise), certifies Bézout identities
//! `Σ φ_i h_i = a₁U^δ₁` and `Σ ψ_i h_i = a₂V^δ₂`, derives the bound `d` on
//! `gcd(h_i(u, v))` for coprime `u, v`, and splits the rational family
//! `w·h_i(u, v)/d` into finitely many integer-coefficient triples by residue
//! classes mod `d`. A brute-force box enumerator checks the result.

pub mod arith;
pub mod curve;
pub mod error;
pub mod eval;
pub mod forms;
pub mod intval;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod resultant;
pub mod univariate;
pub mod verify;

pub use error::{Error, Result};
