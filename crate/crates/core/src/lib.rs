//! Spectral solver and numerical-verification lab for the dissipative
//! surface quasi-geostrophic (SQG) equation
//!
//! ```text
//! θ_t + u·∇θ + κ(−Δ)^α θ + λθ = f,    u = (−R₂θ, R₁θ),    α ∈ (½, 1]
//! ```
//!
//! on a periodic torus or, through the sine basis, on a Dirichlet square.
//!
//! The crate is organised by capability:
//!
//! - [`spectral`]: grids, the orthonormal transform pair, fractional Laplacian,
//!   Riesz transforms, velocity reconstruction, Sobolev and Lebesgue norms.
//! - [`dynamics`]: exponential time differencing built on the mild-solution
//!   (Duhamel) formula, plus an independent Picard reference solver.
//! - [`estimates`]: monitors for the Lq maximum principles, the Córdoba
//!   pointwise inequality, Sobolev bounds, tail masses and cutoff lemmas.
//! - [`operator`]: finite-dimensional checks of integral representations of
//!   fractional powers (Balakrishnan, `(I + A^α)^{-1}`, moment inequality).
//! - [`critical`]: the α → ½⁺ sweep measured in H^{-1/2}, with smallness,
//!   interpolation and weak-form residual diagnostics.
//! - [`cli`]: config parsing, experiment dispatch and reproducible artifacts.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod cli;
pub mod critical;
pub mod dynamics;
pub mod error;
pub mod estimates;
pub mod operator;
pub mod series;
pub mod spectral;

pub use error::{Error, Result};
pub use series::DiagnosticsSeries;
pub use spectral::{Basis, DomainSpec, PhysicalField, SpectralField, WaveVector};
