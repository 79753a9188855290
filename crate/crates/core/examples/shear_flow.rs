//! The shear θ₀ = cos x₁ is an exact solution: transport vanishes and, since
//! |k| = 1, the decay rate κ|k|^{2α} is the same for every α.

use sqglab::dynamics::{integrate, SimulationState, SqgParams, StepperConfig};
use sqglab::estimates::{LqMonitor, SobolevMonitor};
use sqglab::spectral::{lowest_mode, to_physical};
use sqglab::{DomainSpec, Result};

fn main() -> Result<()> {
    let dom = DomainSpec::torus(64)?;
    let theta0 = SimulationState::new(lowest_mode(dom, 1.0));
    let config = StepperConfig::new(0.01, 5.0).sample_every(100);

    for alpha in [0.55, 0.75, 1.0] {
        let params = SqgParams::new(0.1, alpha, 0.0);
        let lq = LqMonitor { qs: vec![2.0, f64::INFINITY] };
        let sob = SobolevMonitor { ss: vec![1.0] };
        let series = integrate(&theta0, &params, &config, &[&lq, &sob])?;
        println!("alpha = {alpha}");
        println!("  {:>5} {:>12} {:>12} {:>12} {:>12}", "t", "L2", "Linf", "H1", "exact Linf");
        for (t, row) in series.times().iter().zip(series.rows()) {
            println!("  {t:5.2} {:12.9} {:12.9} {:12.9} {:12.9}", row[0], row[1], row[2], (-0.1 * t).exp());
        }
    }

    let params = SqgParams::new(0.1, 0.75, 0.0);
    let end = sqglab::dynamics::trajectory(&theta0, &params, &config)?.pop().unwrap();
    let exact = theta0.theta.scale((-0.5f64).exp());
    println!("sup error at T = 5: {:.2e}", to_physical(&end.theta.sub(&exact)?).max_abs());
    Ok(())
}
