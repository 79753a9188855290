//! Inequality monitors and standalone property checks.
//!
//! Every check is returned as data ([`InequalityRecord`] or a plain number);
//! nothing here panics or errors on a violated inequality. The slack
//! convention is `rhs − lhs`, so positive means the inequality holds with
//! room to spare.

mod maxprinciple;
mod monitors;
mod pointwise;
mod probes;
pub(crate) mod sobolev;
mod tail;

pub use maxprinciple::{linf_monitor, max_principle_monitor, monotone_norm_records};
pub use monitors::{LqMonitor, SlackMonitor, SobolevMonitor, TailMonitor};
pub use pointwise::{cordoba_field, cordoba_pointwise_check, cordoba_scale, positivity_integral_check};
pub use probes::{commutator_probe, lp_norm, velocity_ratio_probe};
pub use sobolev::{sobolev_bound_monitor, sobolev_growth_records, SobolevBalance};
pub use tail::{cutoff_field, cutoff_fractional_bound, tail_mass, CutoffBound, CutoffSpec};

use serde::Serialize;

/// Relative tolerance shared by all inequality checks.
pub const DEFAULT_TOL: f64 = 1e-8;

/// `lhs ≤ rhs`, evaluated once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityRecord {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tol: f64,
    pub passed: bool,
}

impl InequalityRecord {
    pub fn new(t: f64, lhs: f64, rhs: f64) -> Self {
        Self::with_tol(t, lhs, rhs, DEFAULT_TOL)
    }

    /// Passes iff `rhs − lhs ≥ −tol·max(|lhs|, |rhs|, 1)`.
    pub fn with_tol(t: f64, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        Self {
            t,
            lhs,
            rhs,
            slack,
            tol,
            passed: slack >= -tol * scale,
        }
    }
}

pub fn all_passed(records: &[InequalityRecord]) -> bool {
    records.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_scale_is_at_least_one() {
        assert!(InequalityRecord::new(0.0, 1e-9, 0.0).passed);
        assert!(!InequalityRecord::new(0.0, 2e-8, 0.0).passed);
        // relative for large values
        assert!(InequalityRecord::new(0.0, 1e6 + 1e-3, 1e6).passed);
        assert!(!InequalityRecord::new(0.0, 1e6 + 1e-1, 1e6).passed);
    }

    #[test]
    fn slack_sign() {
        let r = InequalityRecord::new(1.0, 2.0, 3.0);
        assert_eq!(r.slack, 1.0);
        assert!(r.passed);
    }
}
