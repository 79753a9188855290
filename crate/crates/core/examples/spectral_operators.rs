//! Transforms, Riesz transforms, the SQG velocity and the norms used everywhere
//! else, on a 64² torus.

use sqglab::spectral::{
    fractional_laplacian, lq_norm, random_smooth, riesz_transform, sobolev_norm, to_physical,
    to_spectral, velocity_from_theta, Direction,
};
use sqglab::{DomainSpec, Result};

fn main() -> Result<()> {
    let dom = DomainSpec::torus(64)?;
    let theta = random_smooth(dom, 7, 1.0, 3.0);
    let phys = to_physical(&theta);

    let back = to_spectral(&phys)?;
    println!("round trip error      {:.2e}", back.sub(&theta)?.norm_l2());
    println!("Parseval              {:.15} vs {:.15}", theta.norm_l2(), lq_norm(&phys, 2.0)?);

    // R₁² + R₂² = −I on mean-free fields
    let r11 = riesz_transform(&riesz_transform(&theta, 1)?, 1)?;
    let r22 = riesz_transform(&riesz_transform(&theta, 2)?, 2)?;
    println!("‖(R₁²+R₂²+I)θ‖        {:.2e}", r11.add(&r22)?.add(&theta)?.norm_l2());

    let (u1, u2) = velocity_from_theta(&theta)?;
    println!("‖u‖ / ‖θ‖             {:.15}", (u1.norm_l2().powi(2) + u2.norm_l2().powi(2)).sqrt() / theta.norm_l2());

    let half = fractional_laplacian(&theta, 0.25, Direction::Forward)?;
    let full = fractional_laplacian(&half, 0.25, Direction::Forward)?;
    let direct = fractional_laplacian(&theta, 0.5, Direction::Forward)?;
    println!("(−Δ)^¼(−Δ)^¼ − (−Δ)^½ {:.2e}", full.sub(&direct)?.norm_l2());
    let inverse = fractional_laplacian(&direct, 0.5, Direction::Inverse)?;
    println!("inverse power         {:.2e}", inverse.sub(&theta)?.norm_l2());

    for s in [-0.5, 0.0, 1.0, 1.5] {
        println!("‖θ‖_H^{s:<4}           {:.6}", sobolev_norm(&theta, s)?);
    }
    for q in [2.0, 4.0, 8.0, f64::INFINITY] {
        println!("‖θ‖_L^{q:<4}           {:.6}", lq_norm(&phys, q)?);
    }
    Ok(())
}
