//! Fractional powers of SPD matrices through integral representations,
//! checked against eigendecomposition.

use nalgebra::DVector;
use sqglab::operator::{
    balakrishnan_neg_power, identity_minus_negpower_decay, inv_i_plus_apow, lemma62_convergence,
    moment_inequality_check, DenseOperator, QuadratureSpec,
};
use sqglab::Result;

fn main() -> Result<()> {
    let quad = QuadratureSpec::default();
    let a = DenseOperator::laplacian_1d(32)?;
    let psi = DVector::from_fn(32, |i, _| ((i * 7 % 11) as f64 - 5.0) / 5.0);

    for alpha in [0.25, 0.5, 0.75] {
        let exact = a.eig_power(-alpha, &psi)?;
        let quadrature = balakrishnan_neg_power(&a, alpha, &psi, &quad)?;
        println!("A^-{alpha}: relative error {:.2e}", (quadrature - &exact).norm() / exact.norm());
    }
    let exact = a.spectral_apply(&psi, |mu| 1.0 / (1.0 + mu.sqrt()));
    let quadrature = inv_i_plus_apow(&a, 0.5, &psi, &quad)?;
    println!("(I + A^½)^-1: relative error {:.2e}", (quadrature - &exact).norm() / exact.norm());

    // (I + A^α)^{-1}Aψ → (I + A^½)^{-1}Aψ as α → ½
    let phi = a.apply(&psi);
    println!("α → ½ convergence:");
    for (alpha, err) in lemma62_convergence(&a, &phi, &[0.75, 0.65, 0.55, 0.51], &quad, 1.0)? {
        println!("  α = {alpha:4}: {err:.4e}");
    }

    println!("(I − A^-β)φ → 0:");
    let spd = DenseOperator::random_spd(16, 1e3, 3)?;
    let phi = DVector::from_element(16, 1.0);
    for (beta, norm) in identity_minus_negpower_decay(&spd, &phi, &[0.25, 0.1, 0.01, 1e-3, 1e-4], &quad)? {
        println!("  β = {beta:<6}: {norm:.4e}");
    }

    let check = moment_inequality_check(&spd, &phi, 0.7)?;
    println!("moment inequality at β = 0.7: {:.4e} ≤ {:.4e}", check.lhs, check.rhs);
    Ok(())
}
