use std::f64::consts::PI;

use nalgebra::DVector;
use serde::Serialize;

use super::{DenseOperator, QuadratureSpec};
use crate::error::{Error, Result};

fn check_len(a: &DenseOperator, phi: &DVector<f64>) -> Result<()> {
    if phi.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found_rows: phi.len(),
            found_cols: 1,
        });
    }
    Ok(())
}

fn check_open_unit(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {x}")));
    }
    Ok(())
}

/// `(A + λI)^{-1}φ`.
pub fn resolvent_apply(a: &DenseOperator, lambda: f64, phi: &DVector<f64>) -> Result<DVector<f64>> {
    check_len(a, phi)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "resolvent parameter must be positive, got {lambda}"
        )));
    }
    Ok(a.spectral_apply(phi, |mu| 1.0 / (mu + lambda)))
}

fn resolvent(a: &DenseOperator, lambda: f64, phi: &DVector<f64>) -> DVector<f64> {
    a.spectral_apply(phi, |mu| 1.0 / (mu + lambda))
}

/// `A^{-α}φ = (sin πα/π) ∫₀^∞ λ^{-α}(A + λI)^{-1}φ dλ`.
///
/// The integral is truncated to `[λ₀, Λ]` with first-order end corrections
/// `λ₀^{1-α}/(1-α)·(A + λ₀)^{-1}φ` and `Λ^{-α}/α·φ`; the neglected
/// remainders are bounded by `λ₀^{2-α}/((2-α)μ_min²)` and
/// `Λ^{-1-α}μ_max/(1+α)` times `‖φ‖`, and the interval is chosen to make
/// both smaller than the spec's truncation tolerance.
pub fn balakrishnan_neg_power(
    a: &DenseOperator,
    alpha: f64,
    phi: &DVector<f64>,
    quad: &QuadratureSpec,
) -> Result<DVector<f64>> {
    check_len(a, phi)?;
    check_open_unit("alpha", alpha)?;
    quad.validate()?;
    a.require_invertible()?;
    let tol = quad.truncation_tol;
    let (mu_min, mu_max) = (a.min_eigenvalue(), a.max_eigenvalue());
    let lo = (tol * (2.0 - alpha) * mu_min * mu_min).powf(1.0 / (2.0 - alpha));
    let hi = (mu_max / ((1.0 + alpha) * tol)).powf(1.0 / (1.0 + alpha)).max(quad.split * 10.0);
    let body = quad.integrate(lo, hi, &[], |l| resolvent(a, l, phi) * l.powf(-alpha));
    let hi = quad.lambda_max.map_or(hi, |m| hi.min(m));
    let head = resolvent(a, lo, phi) * (lo.powf(1.0 - alpha) / (1.0 - alpha));
    let tail = phi * (hi.powf(-alpha) / alpha);
    Ok((body + head + tail) * ((PI * alpha).sin() / PI))
}

/// Panel boundaries clustering around the peak of the `(I + A^α)^{-1}`
/// kernel at `λ^α = −cos πα`, whose width shrinks like `sin πα` as `α → 1`.
fn peak_breaks(alpha: f64) -> Vec<f64> {
    let c = (PI * alpha).cos();
    if c >= 0.0 {
        return Vec::new();
    }
    let center = (-c).ln() / alpha;
    let w = 0.5 * (PI * alpha).sin() / alpha;
    let mut out = vec![center.exp()];
    let mut d = w;
    while d < std::f64::consts::LN_10 {
        out.push((center - d).exp());
        out.push((center + d).exp());
        d *= 2.0;
    }
    out
}

/// `(I + A^α)^{-1}φ = (sin απ/π) ∫₀^∞ λ^α/(λ^{2α} + 2λ^α cos απ + 1)
/// (λI + A)^{-1}φ dλ` for `α ∈ (0, 1)`; at `α = 1` the kernel degenerates and
/// `(I + A)x = φ` is solved directly.
pub fn inv_i_plus_apow(
    a: &DenseOperator,
    alpha: f64,
    phi: &DVector<f64>,
    quad: &QuadratureSpec,
) -> Result<DVector<f64>> {
    check_len(a, phi)?;
    if alpha == 1.0 {
        let m = a.matrix() + nalgebra::DMatrix::identity(a.dim(), a.dim());
        return m
            .cholesky()
            .map(|c| c.solve(phi))
            .ok_or_else(|| Error::NotPsd("I + A is not positive definite".into()));
    }
    check_open_unit("alpha", alpha)?;
    quad.validate()?;
    let tol = quad.truncation_tol;
    let (s, c) = ((PI * alpha).sin(), (PI * alpha).cos());
    let kernel = |l: f64| {
        let la = l.powf(alpha);
        s / PI * la / (la * la + 2.0 * la * c + 1.0)
    };
    // head: kernel ≲ λ^α and ‖(λ + A)^{-1}‖ ≤ 1/max(λ, μ_min)
    let mu_min = a.min_eigenvalue();
    let mut lo = (tol * alpha).powf(1.0 / alpha);
    if mu_min > 0.0 {
        lo = lo.max((tol * (1.0 + alpha) * mu_min).powf(1.0 / (1.0 + alpha)));
    }
    let lo = lo.min(1e-3);
    // tail: kernel·‖(λ + A)^{-1}‖ ≲ λ^{-α-1}/(1 − 2|cos|λ^{-α})
    let hi = (2.0 / (alpha * tol)).powf(1.0 / alpha).max(quad.split * 10.0);
    let breaks = peak_breaks(alpha);
    Ok(quad.integrate(lo, hi, &breaks, |l| resolvent(a, l, phi) * kernel(l)))
}

/// `‖A_α^{-1}φ − A_{1/2}^{-1}φ‖` along `alphas`, with
/// `A_α = κ(A^α + I)`, every inverse computed by quadrature.
pub fn lemma62_convergence(
    a: &DenseOperator,
    phi: &DVector<f64>,
    alphas: &[f64],
    quad: &QuadratureSpec,
    kappa: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidParameter(format!("kappa must be positive, got {kappa}")));
    }
    let reference = inv_i_plus_apow(a, 0.5, phi, quad)?;
    alphas
        .iter()
        .map(|&alpha| {
            if !(0.5..=1.0).contains(&alpha) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in [1/2, 1], got {alpha}"
                )));
            }
            let x = inv_i_plus_apow(a, alpha, phi, quad)?;
            Ok((alpha, (x - &reference).norm() / kappa))
        })
        .collect()
}

/// `‖(I − A^{-β})φ‖` along `betas`, from the subtracted representation
/// `(I − A^{-β})φ = (sin πβ/π) ∫₀^∞ λ^{-β}(λ + 1)^{-1}(A − I)(A + λI)^{-1}φ dλ`
/// (the difference of the Balakrishnan integrals for `A` and `I`), whose
/// integrand decays like `λ^{-2-β}` and so stays accurate as `β → 0⁺`.
pub fn identity_minus_negpower_decay(
    a: &DenseOperator,
    phi: &DVector<f64>,
    betas: &[f64],
    quad: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    check_len(a, phi)?;
    quad.validate()?;
    a.require_invertible()?;
    let tol = quad.truncation_tol;
    let spread = a
        .eigenvalues()
        .iter()
        .fold(0.0f64, |m, &mu| m.max((mu - 1.0).abs()));
    let head_const = spread / a.min_eigenvalue();
    betas
        .iter()
        .map(|&beta| {
            if beta == 0.0 || spread == 0.0 {
                return Ok((beta, 0.0));
            }
            check_open_unit("beta", beta)?;
            let lo = (tol * (1.0 - beta) / head_const).powf(1.0 / (1.0 - beta)).min(1e-3);
            let hi = (spread / ((1.0 + beta) * tol)).powf(1.0 / (1.0 + beta)).max(quad.split * 10.0);
            let v = quad.integrate(lo, hi, &[], |l| {
                let r = resolvent(a, l, phi);
                (a.apply(&r) - r) * (l.powf(-beta) / (l + 1.0))
            });
            Ok((beta, v.norm() * (PI * beta).sin() / PI))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub m: f64,
    pub passed: bool,
}

const ENDPOINT_GUARD: f64 = 1e-8;

/// `sin(2π(β − ½)) / (4π(1 − β)(β − ½))`, with `β` kept `1e-8` inside
/// `(½, 1)`; both endpoint limits equal 1.
pub fn moment_constant(beta: f64) -> f64 {
    let b = beta.clamp(0.5 + ENDPOINT_GUARD, 1.0 - ENDPOINT_GUARD);
    (2.0 * PI * (b - 0.5)).sin() / (4.0 * PI * (1.0 - b) * (b - 0.5))
}

/// `‖A^βφ‖ ≤ C(β)(M + 1)‖Aφ‖^{2β−1}‖A^{1/2}φ‖^{2−2β}` with `M` the computed
/// resolvent constant; all powers exact from the spectrum.
pub fn moment_inequality_check(
    a: &DenseOperator,
    phi: &DVector<f64>,
    beta: f64,
) -> Result<MomentCheck> {
    check_len(a, phi)?;
    if !(beta > 0.5 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!("beta must lie in (1/2, 1], got {beta}")));
    }
    let m = a.resolvent_bound();
    let constant = moment_constant(beta);
    let lhs = a.eig_power(beta, phi)?.norm();
    let full = a.apply(phi).norm();
    let half = a.eig_power(0.5, phi)?.norm();
    let rhs = constant * (m + 1.0) * full.powf(2.0 * beta - 1.0) * half.powf(2.0 - 2.0 * beta);
    Ok(MomentCheck {
        lhs,
        rhs,
        constant,
        m,
        passed: lhs <= rhs * (1.0 + 1e-10),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    #[test]
    fn resolvent_examples() {
        let z = DenseOperator::zero(2).unwrap();
        let r = resolvent_apply(&z, 2.0, &v(&[1.0, 3.0])).unwrap();
        assert_eq!(r, v(&[0.5, 1.5]));
        let d = DenseOperator::diagonal(&[1.0, 3.0]).unwrap();
        let r = resolvent_apply(&d, 1.0, &v(&[1.0, 1.0])).unwrap();
        assert!((r - v(&[0.5, 0.25])).norm() < 1e-15);
        assert!(resolvent_apply(&d, 0.0, &v(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn balakrishnan_scalar_and_diagonal() {
        let q = QuadratureSpec::default();
        let x = balakrishnan_neg_power(&DenseOperator::scalar(4.0).unwrap(), 0.5, &v(&[1.0]), &q)
            .unwrap();
        assert!((x[0] - 0.5).abs() < 1e-10, "{}", x[0]);
        let d = DenseOperator::diagonal(&[1.0, 4.0]).unwrap();
        let x = balakrishnan_neg_power(&d, 0.5, &v(&[1.0, 1.0]), &q).unwrap();
        assert!((x - v(&[1.0, 0.5])).norm() < 1e-10);
    }

    #[test]
    fn balakrishnan_extreme_exponents() {
        let q = QuadratureSpec::default();
        let a = DenseOperator::diagonal(&[0.3, 2.0, 70.0]).unwrap();
        let phi = v(&[1.0, -2.0, 0.5]);
        for alpha in [0.01, 0.2, 0.8, 0.99] {
            let x = balakrishnan_neg_power(&a, alpha, &phi, &q).unwrap();
            let e = a.eig_power(-alpha, &phi).unwrap();
            assert!((&x - &e).norm() < 1e-9 * e.norm(), "alpha {alpha}");
        }
    }

    #[test]
    fn singular_operator_rejected() {
        let q = QuadratureSpec::default();
        let a = DenseOperator::diagonal(&[0.0, 1.0]).unwrap();
        let r = balakrishnan_neg_power(&a, 0.5, &v(&[1.0, 1.0]), &q);
        assert!(matches!(r, Err(Error::NotInvertible { .. })));
        assert!(r.unwrap_err().to_string().contains("A not invertible"));
    }

    #[test]
    fn inv_i_plus_scalar_zero_and_direct() {
        let q = QuadratureSpec::default();
        let x = inv_i_plus_apow(&DenseOperator::scalar(1.0).unwrap(), 0.5, &v(&[1.0]), &q).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-10);
        let phi = v(&[1.0, -2.0, 3.0]);
        let x = inv_i_plus_apow(&DenseOperator::zero(3).unwrap(), 0.6, &phi, &q).unwrap();
        assert!((x - &phi).norm() < 1e-10);
        let a = DenseOperator::random_spd(3, 20.0, 3).unwrap();
        let x = inv_i_plus_apow(&a, 1.0, &phi, &q).unwrap();
        let e = a.spectral_apply(&phi, |mu| 1.0 / (1.0 + mu));
        assert!((x - e).norm() < 1e-12);
    }

    #[test]
    fn inv_i_plus_near_one_uses_graded_panels() {
        let q = QuadratureSpec::default();
        let a = DenseOperator::diagonal(&[0.5, 1.0, 3.0, 40.0]).unwrap();
        let phi = v(&[1.0, 1.0, 1.0, 1.0]);
        for alpha in [0.2, 0.5, 0.9, 0.99, 0.999] {
            let x = inv_i_plus_apow(&a, alpha, &phi, &q).unwrap();
            let e = a.spectral_apply(&phi, |mu| 1.0 / (1.0 + mu.powf(alpha)));
            assert!((&x - &e).norm() < 1e-8 * e.norm(), "alpha {alpha}: {}", (&x - &e).norm());
        }
    }

    #[test]
    fn identity_minus_scalar_exponential() {
        let q = QuadratureSpec::default();
        let a = DenseOperator::scalar(std::f64::consts::E).unwrap();
        let out = identity_minus_negpower_decay(&a, &v(&[1.0]), &[0.0, 0.3, 1e-4], &q).unwrap();
        assert_eq!(out[0].1, 0.0);
        for &(b, e) in &out[1..] {
            assert!((e - (1.0 - (-b).exp())).abs() < 1e-12, "beta {b}: {e}");
        }
    }

    #[test]
    fn moment_constant_values() {
        assert!((moment_constant(0.75) - 4.0 / PI).abs() < 1e-14);
        assert!((moment_constant(0.5) - 1.0).abs() < 1e-7);
        assert!((moment_constant(1.0) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn moment_scalar_passes() {
        let a = DenseOperator::scalar(7.0).unwrap();
        for beta in [0.51, 0.75, 0.99, 1.0] {
            let c = moment_inequality_check(&a, &v(&[2.0]), beta).unwrap();
            assert!(c.passed);
            assert!((c.lhs - 7f64.powf(beta) * 2.0).abs() < 1e-12);
            assert_eq!(c.m, 1.0);
        }
    }
}
