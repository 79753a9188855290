//! Lq norms of unforced solutions never increase; with a forcing they grow at
//! at most exponentially, in q-th powers, at a rate set by ‖f‖_q. Both are tracked as inequality records with a signed slack.

use sqglab::dynamics::{default_dt, trajectory, SimulationState, SqgParams, StepperConfig};
use sqglab::estimates::{linf_monitor, max_principle_monitor, monotone_norm_records};
use sqglab::spectral::random_smooth;
use sqglab::{DomainSpec, Result, SpectralField};

fn main() -> Result<()> {
    let dom = DomainSpec::torus(64)?;
    let theta0 = SimulationState::new(random_smooth(dom, 1, 1.0, 3.0));
    let dt = default_dt(&theta0.theta)?;
    let config = StepperConfig::new(dt, 3.0).sample_every(5);

    let free = SqgParams::new(0.02, 0.75, 0.0);
    let states = trajectory(&theta0, &free, &config)?;
    println!("unforced, {} samples", states.len());
    for q in [2.0, 4.0, 8.0] {
        let records = monotone_norm_records(&states, q)?;
        let min = records.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
        let ok = records.iter().all(|r| r.passed);
        println!("  q = {q}: monotone {ok}, min slack {min:.3e}");
    }

    let f = SpectralField::single_mode(dom, 2, 1, 1.0).scale(0.05);
    let forced = free.clone().with_forcing(f.clone());
    let states = trajectory(&theta0, &forced, &config)?;
    println!("forced, {} samples", states.len());
    for q in [2.0, 4.0] {
        let records = max_principle_monitor(&states, q, Some(&f), &theta0)?;
        let last = records.last().unwrap();
        println!(
            "  q = {q}: growth bound holds: {}, at T: ‖θ‖_q^q = {:.6} ≤ {:.6}",
            records.iter().all(|r| r.passed),
            last.lhs,
            last.rhs
        );
    }
    let linf = linf_monitor(&states, Some(&f), &theta0)?;
    println!("  sup norm bound holds: {}", linf.iter().all(|r| r.passed));
    Ok(())
}
