//! Time integration of `θ_t + u·∇θ + κ(−Δ)^α θ + λθ = f`.
//!
//! Per mode the linear part is `a(k) = κ|k|^{2α} + λ`, so the mild solution
//! reads `θ(t) = e^{−At}θ₀ + ∫₀ᵗ e^{−A(t−s)} F(θ(s)) ds` with
//! `F = −∇·(uθ) + f`. The steppers discretize exactly this formula (ETD1,
//! ETD2RK); [`picard_reference`] evaluates it by fixed-point iteration and
//! quadrature as an independent short-time oracle.

mod etd;
mod nonlinear;
mod picard;
mod stepper;

#[cfg(test)]
mod tests;

pub use etd::{etd_coefficients, phi_functions, EtdCoefficients};
pub use nonlinear::{max_speed, nonlinear_rhs, physical_velocity};
pub use picard::{picard_reference, picard_reference_with};
pub use stepper::{default_dt, integrate, step, trajectory, Monitor, Stepper};

use crate::error::{Error, Result};
use crate::spectral::{fractional_laplacian, Direction, DomainSpec, SpectralField};

/// Coefficients of the equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SqgParams {
    pub kappa: f64,
    pub alpha: f64,
    pub lambda: f64,
    /// Time-independent forcing; `None` is `f = 0`.
    pub forcing: Option<SpectralField>,
}

impl SqgParams {
    pub fn new(kappa: f64, alpha: f64, lambda: f64) -> Self {
        Self {
            kappa,
            alpha,
            lambda,
            forcing: None,
        }
    }

    pub fn with_forcing(mut self, forcing: SpectralField) -> Self {
        self.forcing = Some(forcing);
        self
    }

    /// Same coefficients at a different dissipation exponent.
    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self {
            alpha,
            ..self.clone()
        }
    }

    pub fn validate(&self, domain: &DomainSpec) -> Result<()> {
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "kappa must be positive, got {}",
                self.kappa
            )));
        }
        if !(self.alpha > 0.5 && self.alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must exceed 1/2 for time evolution (alpha in (1/2, 1]), got {}",
                self.alpha
            )));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        if let Some(f) = &self.forcing {
            if f.domain() != domain {
                return Err(Error::DomainMismatch);
            }
            if !f.is_mean_free() {
                return Err(Error::NotMeanFree);
            }
        }
        Ok(())
    }

    /// Linear symbol `κ|k|^{2α} + λ` at wavenumber magnitude `k`.
    pub fn linear_symbol(&self, k: f64) -> f64 {
        let diss = if k == 0.0 { 0.0 } else { k.powf(2.0 * self.alpha) };
        self.kappa * diss + self.lambda
    }

    /// Forcing that makes `g` a steady state when `g` is annihilated by the
    /// transport term: `f = κ(−Δ)^α g + λ g`.
    pub fn stationary_forcing(&self, g: &SpectralField) -> Result<SpectralField> {
        let diss = fractional_laplacian(g, self.alpha, Direction::Forward)?;
        diss.scale(self.kappa).axpy(self.lambda, g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Scheme {
    /// Exponential Euler; first order.
    Etd1,
    /// Cox–Matthews second-order exponential Runge–Kutta.
    Etd2Rk,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StepperConfig {
    pub dt: f64,
    pub scheme: Scheme,
    pub t_end: f64,
    pub sample_every: usize,
    /// Abort instead of warning when the CFL number exceeds [`CFL_LIMIT`].
    pub cfl_abort: bool,
}

/// Advective CFL bound `dt·max|u|·n/L` checked at every sample.
pub const CFL_LIMIT: f64 = 0.5;

impl StepperConfig {
    pub fn new(dt: f64, t_end: f64) -> Self {
        Self {
            dt,
            scheme: Scheme::Etd2Rk,
            t_end,
            sample_every: 1,
            cfl_abort: false,
        }
    }

    pub fn sample_every(mut self, every: usize) -> Self {
        self.sample_every = every;
        self
    }

    pub fn scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "t_end must be non-negative, got {}",
                self.t_end
            )));
        }
        if self.t_end > 0.0 && self.dt > self.t_end {
            return Err(Error::InvalidParameter(format!(
                "dt = {} exceeds t_end = {}",
                self.dt, self.t_end
            )));
        }
        if self.sample_every == 0 {
            return Err(Error::InvalidParameter("sample_every must be positive".into()));
        }
        Ok(())
    }

    /// Number of steps to reach `t_end`; the last one may be shortened.
    pub fn num_steps(&self) -> usize {
        if self.t_end == 0.0 {
            0
        } else {
            (self.t_end / self.dt - 1e-9).ceil().max(1.0) as usize
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationState {
    pub t: f64,
    pub theta: SpectralField,
}

impl SimulationState {
    pub fn new(theta: SpectralField) -> Self {
        Self { t: 0.0, theta }
    }

    pub fn validate(&self) -> Result<()> {
        if self.theta.domain().is_torus() && !self.theta.is_mean_free() {
            return Err(Error::NotMeanFree);
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidParameter("state has non-finite coefficients".into()));
        }
        Ok(())
    }
}
