//! Pseudospectral toolkit for the half Dirichlet energy on the circle.
//!
//! Functions on S¹ are carried as truncated Fourier series
//! ([`spectral::CircleFunction`]). On top of that sit the Fourier-multiplier
//! operators ((−Δ)^s, Hilbert transform, derivative), the half Dirichlet
//! energy in spectral and Gagliardo form, the fractional Hopf differential
//! with its stationarity characterization, commutator operators with
//! numerically probed estimates, Möbius boundary symmetries with their
//! conservation laws, and a sphere-constrained gradient flow that produces
//! stationary points numerically.

pub mod commutator;
pub mod energy;
pub mod error;
pub mod flows;
pub mod hopf;
pub mod mobius;
pub mod operators;
pub mod spectral;
pub mod variation;

pub mod cli;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use spectral::CircleFunction;
