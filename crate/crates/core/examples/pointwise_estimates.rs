//! Córdoba's inequality 2φ(−Δ)^αφ ≥ (−Δ)^α(φ²), the positivity integral
//! behind the Lq maximum principle, and two harmonic-analysis probes.

use sqglab::estimates::{
    commutator_probe, cordoba_field, cordoba_pointwise_check, cordoba_scale,
    positivity_integral_check, velocity_ratio_probe,
};
use sqglab::spectral::{lowest_mode, random_smooth};
use sqglab::{DomainSpec, PhysicalField, Result};

fn main() -> Result<()> {
    let dom = DomainSpec::torus(64)?;

    // closed form: φ = cos x₁, α = 1 gives 2 sin² x₁ (evaluated on the padded grid)
    let c = cordoba_field(&lowest_mode(dom, 1.0), 1.0)?;
    let expected = PhysicalField::from_fn(*c.domain(), |x1, _| 2.0 - 2.0 * x1.cos().powi(2));
    println!("closed form error {:.2e}", c.sub(&expected)?.max_abs());

    println!("{:>5} {:>14} {:>14}", "alpha", "min slack", "integral q=4");
    for alpha in [0.5, 0.6, 0.7, 0.8, 0.9, 1.0] {
        let mut worst = f64::INFINITY;
        let mut integral = f64::INFINITY;
        for seed in 0..10 {
            let phi = random_smooth(dom, seed, 1.0, 3.0);
            worst = worst.min(cordoba_pointwise_check(&phi, alpha)? / cordoba_scale(&phi, alpha)?);
            integral = integral.min(positivity_integral_check(&phi, 4.0, alpha)?);
        }
        println!("{alpha:5.1} {worst:14.4e} {integral:14.4e}");
    }

    let theta = random_smooth(dom, 3, 1.0, 3.0);
    for q in [2.0, 4.0, 8.0] {
        println!("‖u‖_{q} / ‖θ‖_{q} = {:.4}", velocity_ratio_probe(&theta, q)?);
    }
    let g = random_smooth(dom, 4, 1.0, 2.0);
    println!("commutator ratio (γ = 0.5, p = 2, q = 4, r = 4): {:.4}", commutator_probe(&theta, &g, 0.5, 2.0, 4.0, 4.0)?);
    Ok(())
}
