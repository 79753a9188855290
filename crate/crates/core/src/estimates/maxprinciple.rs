use super::InequalityRecord;
use crate::dynamics::SimulationState;
use crate::error::Result;
use crate::spectral::{lq_norm, to_physical, SpectralField};

fn lq(theta: &SpectralField, q: f64) -> Result<f64> {
    lq_norm(&to_physical(theta), q)
}

/// Lq maximum principle along a run.
///
/// With `f = 0` each record is `‖θ(t)‖_q ≤ ‖θ₀‖_q`. With forcing it is the
/// growth bound in q-th powers,
/// `‖θ(t)‖_q^q ≤ ‖θ₀‖_q^q e^{(q−1)t} + (e^{(q−1)t} − 1)/(q − 1)·‖f‖_q^q`,
/// with `t` measured from `theta0`'s time.
pub fn max_principle_monitor(
    states: &[SimulationState],
    q: f64,
    forcing: Option<&SpectralField>,
    theta0: &SimulationState,
) -> Result<Vec<InequalityRecord>> {
    let n0 = lq(&theta0.theta, q)?;
    let nf = forcing.map(|f| lq(f, q)).transpose()?;
    states
        .iter()
        .map(|s| {
            let nt = lq(&s.theta, q)?;
            Ok(match nf {
                None => InequalityRecord::new(s.t, nt, n0),
                Some(nf) => {
                    let g = (q - 1.0) * (s.t - theta0.t);
                    let rhs = n0.powf(q) * g.exp() + g.exp_m1() / (q - 1.0) * nf.powf(q);
                    InequalityRecord::new(s.t, nt.powf(q), rhs)
                }
            })
        })
        .collect()
}

/// Consecutive monotonicity `‖θ(t_i)‖_q ≤ ‖θ(t_{i−1})‖_q`; one record per
/// sample after the first.
pub fn monotone_norm_records(states: &[SimulationState], q: f64) -> Result<Vec<InequalityRecord>> {
    let norms = states
        .iter()
        .map(|s| lq(&s.theta, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(norms
        .windows(2)
        .zip(states.iter().skip(1))
        .map(|(w, s)| InequalityRecord::new(s.t, w[1], w[0]))
        .collect())
}

/// `‖θ(t)‖_∞ ≤ (‖θ₀‖_∞ + ‖f‖_∞) e^t`, the q → ∞ limit of the forced bound.
pub fn linf_monitor(
    states: &[SimulationState],
    forcing: Option<&SpectralField>,
    theta0: &SimulationState,
) -> Result<Vec<InequalityRecord>> {
    let n0 = lq(&theta0.theta, f64::INFINITY)?;
    let nf = match forcing {
        Some(f) => lq(f, f64::INFINITY)?,
        None => 0.0,
    };
    states
        .iter()
        .map(|s| {
            let nt = lq(&s.theta, f64::INFINITY)?;
            Ok(InequalityRecord::new(s.t, nt, (n0 + nf) * (s.t - theta0.t).exp()))
        })
        .collect()
}
