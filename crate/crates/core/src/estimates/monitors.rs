//! [`Monitor`] adapters producing the columns of the simulate CSV.

use super::{tail_mass, CutoffSpec};
use crate::dynamics::{Monitor, SimulationState};
use crate::spectral::{lq_norm, sobolev_norm, to_physical};

/// `‖θ‖_q` for each configured `q`.
pub struct LqMonitor {
    pub qs: Vec<f64>,
}

impl Monitor for LqMonitor {
    fn columns(&self) -> Vec<String> {
        self.qs.iter().map(|q| format!("L{q}")).collect()
    }

    fn sample(&self, state: &SimulationState) -> Vec<f64> {
        let phys = to_physical(&state.theta);
        self.qs
            .iter()
            .map(|&q| lq_norm(&phys, q).unwrap_or(f64::NAN))
            .collect()
    }
}

/// `‖θ‖_{H^s}` for each configured `s`.
pub struct SobolevMonitor {
    pub ss: Vec<f64>,
}

impl Monitor for SobolevMonitor {
    fn columns(&self) -> Vec<String> {
        self.ss.iter().map(|s| format!("H{s}")).collect()
    }

    fn sample(&self, state: &SimulationState) -> Vec<f64> {
        self.ss
            .iter()
            .map(|&s| sobolev_norm(&state.theta, s).unwrap_or(f64::NAN))
            .collect()
    }
}

/// `∫θ²η_k` for each cutoff.
pub struct TailMonitor {
    pub cutoffs: Vec<CutoffSpec>,
}

impl Monitor for TailMonitor {
    fn columns(&self) -> Vec<String> {
        self.cutoffs.iter().map(|c| format!("tail_k{}", c.k)).collect()
    }

    fn sample(&self, state: &SimulationState) -> Vec<f64> {
        let phys = to_physical(&state.theta);
        self.cutoffs
            .iter()
            .map(|c| tail_mass(&phys, c).unwrap_or(f64::NAN))
            .collect()
    }
}

/// Maximum-principle slack `‖θ₀‖_q − ‖θ(t)‖_q` (unforced form).
pub struct SlackMonitor {
    qs: Vec<f64>,
    initial: Vec<f64>,
}

impl SlackMonitor {
    pub fn new(theta0: &SimulationState, qs: &[f64]) -> Self {
        let phys = to_physical(&theta0.theta);
        let initial = qs
            .iter()
            .map(|&q| lq_norm(&phys, q).unwrap_or(f64::NAN))
            .collect();
        Self {
            qs: qs.to_vec(),
            initial,
        }
    }
}

impl Monitor for SlackMonitor {
    fn columns(&self) -> Vec<String> {
        self.qs
            .iter()
            .map(|q| format!("slack_maxp_L{q}"))
            .collect()
    }

    fn sample(&self, state: &SimulationState) -> Vec<f64> {
        let phys = to_physical(&state.theta);
        self.qs
            .iter()
            .zip(&self.initial)
            .map(|(&q, n0)| n0 - lq_norm(&phys, q).unwrap_or(f64::NAN))
            .collect()
    }
}
