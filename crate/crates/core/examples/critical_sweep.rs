//! Solutions for α = 0.75 … 0.51 from the same small datum, compared in
//! H^{-1/2} against the run closest to the critical exponent.

use std::time::Instant;

use sqglab::critical::{pairwise_bound_check, run_sweep, AlphaSweepConfig, DEFAULT_ALPHAS};
use sqglab::dynamics::SqgParams;
use sqglab::spectral::random_smooth;
use sqglab::{DomainSpec, Result};

fn main() -> Result<()> {
    let dom = DomainSpec::torus(64)?;
    let theta0 = random_smooth(dom, 4, 0.05, 3.0);
    let config = AlphaSweepConfig::new(DEFAULT_ALPHAS.to_vec(), theta0, SqgParams::new(0.2, 0.75, 0.0), 2.0);

    let start = Instant::now();
    let result = run_sweep(&config)?;
    let r = &result.report;
    println!("{} runs in {:.1} s, smallness coefficient {:.4}", result.runs.len(), start.elapsed().as_secs_f64(), r.smallness_coeff);
    println!("{:>6} {:>14}", "alpha", "sup dist");
    for (alpha, d) in r.alphas.iter().zip(&r.distance_to_last) {
        println!("{alpha:6.3} {d:14.6e}");
    }
    if r.smallness_coeff < 0.0 {
        let check = pairwise_bound_check(r, -r.smallness_coeff, 1.0)?;
        println!("monotone: {}, fitted exponent in Δα: {:?}", check.monotone, check.exponent);
    }
    Ok(())
}
