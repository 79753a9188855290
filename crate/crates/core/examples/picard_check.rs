//! Cross-check ETD2RK against the Picard iteration of the Duhamel formula.

use sqglab::dynamics::{picard_reference, trajectory, SimulationState, SqgParams, Scheme, StepperConfig};
use sqglab::spectral::random_smooth;
use sqglab::{DomainSpec, Result};

fn main() -> Result<()> {
    let dom = DomainSpec::torus(32)?;
    let s0 = SimulationState::new(random_smooth(dom, 14, 0.1, 3.0));
    let params = SqgParams::new(0.05, 0.75, 0.0);

    for scheme in [Scheme::Etd1, Scheme::Etd2Rk] {
        println!("{scheme:?}");
        let mut prev: Option<f64> = None;
        for dt in [0.04, 0.02, 0.01] {
            let t_end = 10.0 * dt;
            let reference = picard_reference(&s0, &params, t_end, 40)?;
            let config = StepperConfig::new(dt, t_end).scheme(scheme);
            let end = trajectory(&s0, &params, &config)?.pop().unwrap();
            let err = end.theta.sub(&reference.theta)?.norm_l2();
            match prev {
                Some(p) => println!("  dt = {dt}: error {err:.3e}, order {:.2}", (p / err).log2()),
                None => println!("  dt = {dt}: error {err:.3e}"),
            }
            prev = Some(err);
        }
    }
    Ok(())
}
