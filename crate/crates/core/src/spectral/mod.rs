//! Grids, transforms, spectral multipliers and norms.
//!
//! # Normalization
//!
//! Coefficients are taken against the L²-orthonormal eigenbasis of the box:
//!
//! - periodic torus `[0, L)²`: `θ(x) = (1/L) Σ_k θ̂(k) e^{i k·x}`, with
//!   `k = (2π/L)(m₁, m₂)` and `m` in FFT ordering;
//! - Dirichlet square `[0, L]²`: `θ(x) = (2/L) Σ_k θ̂(k) sin(k₁x₁) sin(k₂x₂)`,
//!   with `k = (π/L)(m₁, m₂)`, `m ≥ 1`.
//!
//! With this choice `‖θ‖_{L²} = (Σ|θ̂(k)|²)^{1/2}` exactly, the grid quadrature
//! with cell weight `(L/n)²` agrees with it, and coefficients keep their values
//! under zero padding to a finer grid.
//!
//! Odd multipliers (Riesz transforms, first derivatives) vanish on the torus
//! Nyquist row and column, which keeps the output real. Identities such as
//! `R₁² + R₂² = −I` therefore hold per mode away from the Nyquist index; all
//! dealiased fields satisfy them exactly.
//!
//! The Dirichlet basis is realised through its odd-odd extension to the torus
//! of side `2L` with `2n` points: the spectral fractional Dirichlet Laplacian
//! is the restriction of the periodic one to odd-odd fields.

mod field;
mod init;
mod ops;
mod transform;

#[cfg(test)]
mod tests;

pub use field::{PhysicalField, SpectralField};
pub use init::{gaussian_bump, lowest_mode, random_smooth, random_smooth_dirichlet};
pub use ops::{
    dealias, derivative, fractional_laplacian, fractional_power, inner_product, lq_norm,
    riesz_transform, sobolev_norm, velocity_from_theta, Direction,
};
pub use transform::{
    dirichlet_to_extended, extended_to_dirichlet, pad, to_physical, to_spectral, truncate,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    PeriodicTorus,
    DirichletRectangle,
}

/// Grid size, box side and basis kind.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DomainSpec {
    n: usize,
    #[serde(rename = "box")]
    box_len: f64,
    basis: Basis,
}

/// A mode index together with its physical wave vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub k1: i64,
    pub k2: i64,
    pub kx: f64,
    pub ky: f64,
}

impl WaveVector {
    pub fn magnitude(&self) -> f64 {
        self.kx.hypot(self.ky)
    }

    pub fn is_zero(&self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }
}

impl DomainSpec {
    pub fn new(n: usize, box_len: f64, basis: Basis) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "grid size n = {n} must be a power of two and at least 16"
            )));
        }
        if !(box_len > 0.0 && box_len.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "box side must be positive and finite, got {box_len}"
            )));
        }
        Ok(Self { n, box_len, basis })
    }

    /// Periodic torus of side 2π.
    pub fn torus(n: usize) -> Result<Self> {
        Self::new(n, 2.0 * PI, Basis::PeriodicTorus)
    }

    /// Dirichlet square of side π (first eigenvalue of −Δ equal to 2).
    pub fn dirichlet(n: usize) -> Result<Self> {
        Self::new(n, PI, Basis::DirichletRectangle)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_len(&self) -> f64 {
        self.box_len
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_torus(&self) -> bool {
        self.basis == Basis::PeriodicTorus
    }

    /// Same box and basis on a grid of `m` points per axis.
    pub fn with_n(&self, m: usize) -> Result<Self> {
        Self::new(m, self.box_len, self.basis)
    }

    /// Spacing of mode indices in physical wavenumber.
    pub fn wavenumber_unit(&self) -> f64 {
        match self.basis {
            Basis::PeriodicTorus => 2.0 * PI / self.box_len,
            Basis::DirichletRectangle => PI / self.box_len,
        }
    }

    /// Signed mode index stored at array position `i`.
    pub fn mode_index(&self, i: usize) -> i64 {
        match self.basis {
            Basis::PeriodicTorus => {
                if i < self.n / 2 {
                    i as i64
                } else {
                    i as i64 - self.n as i64
                }
            }
            Basis::DirichletRectangle => i as i64,
        }
    }

    pub fn is_nyquist(&self, i: usize) -> bool {
        self.basis == Basis::PeriodicTorus && i == self.n / 2
    }

    pub fn wavevector(&self, i1: usize, i2: usize) -> WaveVector {
        let unit = self.wavenumber_unit();
        let k1 = self.mode_index(i1);
        let k2 = self.mode_index(i2);
        WaveVector {
            k1,
            k2,
            kx: unit * k1 as f64,
            ky: unit * k2 as f64,
        }
    }

    /// Largest retained mode index under the 2/3 rule: a third of the grid on
    /// the torus, two thirds of it for the sine basis (whose periodic
    /// extension has `2n` points).
    pub fn dealias_cutoff(&self) -> f64 {
        match self.basis {
            Basis::PeriodicTorus => self.n as f64 / 3.0,
            Basis::DirichletRectangle => 2.0 * self.n as f64 / 3.0,
        }
    }

    pub fn spacing(&self) -> f64 {
        self.box_len / self.n as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.spacing() * self.spacing()
    }

    /// Physical coordinate of grid line `j`.
    pub fn coordinate(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    /// Smallest nonzero |k| carried by the basis.
    pub fn min_wavenumber(&self) -> f64 {
        match self.basis {
            Basis::PeriodicTorus => self.wavenumber_unit(),
            Basis::DirichletRectangle => self.wavenumber_unit() * 2f64.sqrt(),
        }
    }

    /// Largest |k| kept by [`dealias`].
    pub fn max_dealiased_wavenumber(&self) -> f64 {
        let m = self.dealias_cutoff().floor();
        self.wavenumber_unit() * m * 2f64.sqrt()
    }
}
