//! Computational harmonic analysis on locally compact abelian groups, at
//! desk scale.
//!
//! Four families of groups are covered, each with exact arithmetic where the
//! structure allows it and `f64` complex values only where characters force
//! irrational numbers:
//!
//! - finite abelian groups [`group`]: characters, the transform, convolution,
//!   translation, duality;
//! - the circle [`circle`]: Fourier coefficients, Abel means, the Poisson
//!   kernel;
//! - r-adic and p-adic integers [`padic`]: coherent residue towers,
//!   valuations, Haar integrals, characters;
//! - solenoids [`solenoid`]: coherent towers of angles and their characters.
//!
//! Supporting layers are [`scalar`] (rationals, complex values, roots of
//! unity), [`hilbert`] (finite inner-product and ℓᵖ machinery), [`ultra`]
//! (ultrametrics and quotient metrics) and [`banach`] (the convolution algebra
//! ℓ¹(A) and finite operator matrices). [`acceptance`] bundles the reproducible
//! acceptance suite used by the CLI and the test harness.

pub mod acceptance;
pub mod banach;
pub mod circle;
pub mod error;
pub mod group;
pub mod hilbert;
pub mod padic;
pub mod scalar;
pub mod solenoid;
pub mod ultra;

pub use error::{Error, Result};
pub use scalar::{Complex, Rational};
