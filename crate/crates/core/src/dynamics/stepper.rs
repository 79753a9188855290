use ndarray::Zip;

use super::nonlinear::transport_with_speed;
use super::{etd_coefficients, EtdCoefficients, Scheme, SimulationState, SqgParams, StepperConfig, CFL_LIMIT};
use crate::error::{Error, Result};
use crate::series::DiagnosticsSeries;
use crate::spectral::{DomainSpec, SpectralField};

/// A diagnostic evaluated on sampled states. Implementations only read.
pub trait Monitor: Sync {
    fn columns(&self) -> Vec<String>;
    fn sample(&self, state: &SimulationState) -> Vec<f64>;
}

/// Exponential integrator with cached per-mode tables.
pub struct Stepper {
    params: SqgParams,
    config: StepperConfig,
    domain: DomainSpec,
    coeffs: EtdCoefficients,
}

impl Stepper {
    pub fn new(params: &SqgParams, config: &StepperConfig, domain: &DomainSpec) -> Result<Self> {
        params.validate(domain)?;
        config.validate()?;
        Ok(Self {
            params: params.clone(),
            config: *config,
            domain: *domain,
            coeffs: etd_coefficients(params, domain, config.dt),
        })
    }

    pub fn config(&self) -> &StepperConfig {
        &self.config
    }

    fn forced(&self, n: SpectralField) -> SpectralField {
        match &self.params.forcing {
            Some(f) => n.add(f).expect("forcing validated against domain"),
            None => n,
        }
    }

    fn cfl(&self, dt: f64, speed: f64) -> f64 {
        dt * speed * self.domain.n() as f64 / self.domain.box_len()
    }

    /// One step of size `coeffs.dt`; returns the new field and the CFL number
    /// seen at the start of the step.
    fn advance(
        &self,
        t: f64,
        theta: &SpectralField,
        c: &EtdCoefficients,
    ) -> Result<(SpectralField, f64)> {
        let dt = c.dt;
        let (n0, speed) = transport_with_speed(theta)?;
        let cfl = self.cfl(dt, speed);
        let n0 = self.forced(n0);
        let mut pred = theta.coeffs().clone();
        Zip::from(&mut pred)
            .and(n0.coeffs())
            .and(&c.decay)
            .and(&c.phi1)
            .for_each(|p, &n, &e, &p1| *p = *p * e + n * (dt * p1));
        let pred = SpectralField::from_raw(pred, self.domain);
        if !pred.is_finite() {
            return Err(Error::BlowUp { t: t + dt, cfl });
        }
        let next = match self.config.scheme {
            Scheme::Etd1 => pred,
            Scheme::Etd2Rk => {
                let (n1, _) = transport_with_speed(&pred)?;
                let n1 = self.forced(n1);
                let mut out = pred.into_coeffs();
                Zip::from(&mut out)
                    .and(n1.coeffs())
                    .and(n0.coeffs())
                    .and(&c.phi2)
                    .for_each(|o, &a, &b, &p2| *o += (a - b) * (dt * p2));
                SpectralField::from_raw(out, self.domain)
            }
        };
        Ok((next, cfl))
    }

    /// Advance by the configured `dt`.
    pub fn step(&self, state: &SimulationState) -> Result<SimulationState> {
        self.step_by(state, None)
    }

    fn step_by(&self, state: &SimulationState, dt: Option<f64>) -> Result<SimulationState> {
        let owned;
        let (c, dt) = match dt {
            Some(dt) if (dt - self.config.dt).abs() > 1e-14 * self.config.dt => {
                owned = etd_coefficients(&self.params, &self.domain, dt);
                (&owned, dt)
            }
            _ => (&self.coeffs, self.config.dt),
        };
        let (theta, cfl) = self.advance(state.t, &state.theta, c)?;
        if !theta.is_finite() {
            return Err(Error::BlowUp {
                t: state.t + dt,
                cfl,
            });
        }
        Ok(SimulationState {
            t: state.t + dt,
            theta,
        })
    }

    /// Run to `t_end`, handing every sampled state to `observer`. Samples are
    /// taken at `t = 0`, every `sample_every` steps and at `t_end`.
    pub fn run(
        &self,
        initial: &SimulationState,
        mut observer: impl FnMut(&SimulationState) -> Result<()>,
    ) -> Result<SimulationState> {
        initial.validate()?;
        if initial.theta.domain() != &self.domain {
            return Err(Error::DomainMismatch);
        }
        let steps = self.config.num_steps();
        let t0 = initial.t;
        let mut state = initial.clone();
        self.check_cfl(&state)?;
        observer(&state)?;
        for s in 1..=steps {
            let target = if s == steps {
                t0 + self.config.t_end
            } else {
                t0 + s as f64 * self.config.dt
            };
            let dt = target - state.t;
            state = self.step_by(&state, Some(dt))?;
            state.t = target;
            if s % self.config.sample_every == 0 || s == steps {
                self.check_cfl(&state)?;
                observer(&state)?;
            }
        }
        Ok(state)
    }

    fn check_cfl(&self, state: &SimulationState) -> Result<()> {
        let speed = super::max_speed(&state.theta)?;
        let cfl = self.cfl(self.config.dt, speed);
        if cfl > CFL_LIMIT {
            if self.config.cfl_abort {
                return Err(Error::CflExceeded {
                    t: state.t,
                    cfl,
                    limit: CFL_LIMIT,
                });
            }
            log::warn!("CFL number {cfl:.3} exceeds {CFL_LIMIT} at t = {:.6}", state.t);
        }
        Ok(())
    }
}

/// Single step from scratch tables; prefer [`Stepper`] in loops.
pub fn step(
    state: &SimulationState,
    params: &SqgParams,
    config: &StepperConfig,
) -> Result<SimulationState> {
    state.validate()?;
    Stepper::new(params, config, state.theta.domain())?.step(state)
}

/// Run to `t_end` and evaluate `monitors` on each sample.
pub fn integrate(
    state: &SimulationState,
    params: &SqgParams,
    config: &StepperConfig,
    monitors: &[&dyn Monitor],
) -> Result<DiagnosticsSeries> {
    let stepper = Stepper::new(params, config, state.theta.domain())?;
    let columns = monitors.iter().flat_map(|m| m.columns()).collect();
    let mut series = DiagnosticsSeries::new(columns);
    stepper.run(state, |s| {
        let row = monitors.iter().flat_map(|m| m.sample(s)).collect();
        series.push(s.t, row)
    })?;
    Ok(series)
}

/// Run to `t_end` and keep every sampled state.
pub fn trajectory(
    state: &SimulationState,
    params: &SqgParams,
    config: &StepperConfig,
) -> Result<Vec<SimulationState>> {
    let stepper = Stepper::new(params, config, state.theta.domain())?;
    let mut out = Vec::new();
    stepper.run(state, |s| {
        out.push(s.clone());
        Ok(())
    })?;
    Ok(out)
}

/// `0.5·(L/n)/max(1, max|u₀|)`.
pub fn default_dt(theta0: &SpectralField) -> Result<f64> {
    let dom = theta0.domain();
    let speed = super::max_speed(theta0)?;
    Ok(0.5 * dom.spacing() / speed.max(1.0))
}
