use num_complex::Complex64;

use super::{Basis, PhysicalField, SpectralField, WaveVector};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Multiply each mode by `|k|^s`. The zero mode is kept only for `s == 0`
/// (where the operator is the identity) and dropped otherwise.
pub fn fractional_power(field: &SpectralField, s: f64) -> SpectralField {
    if s == 0.0 {
        return field.clone();
    }
    field.map_modes_real(|k| {
        if k.is_zero() {
            0.0
        } else {
            k.magnitude().powf(s)
        }
    })
}

/// `(−Δ)^α` (forward) or `(−Δ)^{−α}` (inverse) through the symbol `|k|^{2α}`.
pub fn fractional_laplacian(
    field: &SpectralField,
    alpha: f64,
    direction: Direction,
) -> Result<SpectralField> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "fractional exponent must be non-negative, got {alpha}"
        )));
    }
    match direction {
        Direction::Forward => Ok(fractional_power(field, 2.0 * alpha)),
        Direction::Inverse => {
            if !field.is_mean_free() {
                return Err(Error::NonInvertibleZeroMode);
            }
            Ok(fractional_power(field, -2.0 * alpha))
        }
    }
}

/// Odd-multiplier component: `k_j`, or zero on the torus Nyquist line.
fn odd_component(field: &SpectralField, k: &WaveVector, j: usize) -> f64 {
    let dom = field.domain();
    let half = (dom.n() / 2) as i64;
    let (idx, comp) = if j == 1 { (k.k1, k.kx) } else { (k.k2, k.ky) };
    if dom.basis() == Basis::PeriodicTorus && idx == -half {
        0.0
    } else {
        comp
    }
}

fn check_axis(j: usize) -> Result<()> {
    if j == 1 || j == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("axis must be 1 or 2, got {j}")))
    }
}

/// Riesz transform `R_j` with symbol `−i k_j/|k|`; the zero mode maps to zero.
pub fn riesz_transform(field: &SpectralField, j: usize) -> Result<SpectralField> {
    check_axis(j)?;
    if !field.domain().is_torus() {
        return Err(Error::TorusOnly("Riesz transform"));
    }
    Ok(field.map_modes(|k| {
        if k.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            -I * (odd_component(field, k, j) / k.magnitude())
        }
    }))
}

/// Spectral derivative `∂/∂x_j` on the torus.
pub fn derivative(field: &SpectralField, j: usize) -> Result<SpectralField> {
    check_axis(j)?;
    if !field.domain().is_torus() {
        return Err(Error::TorusOnly("spectral derivative"));
    }
    Ok(field.map_modes(|k| I * odd_component(field, k, j)))
}

/// Velocity `u = (−R₂θ, R₁θ)`, i.e. `û₁ = i(k₂/|k|)θ̂`, `û₂ = −i(k₁/|k|)θ̂`.
pub fn velocity_from_theta(theta: &SpectralField) -> Result<(SpectralField, SpectralField)> {
    if !theta.domain().is_torus() {
        return Err(Error::TorusOnly("Riesz velocity"));
    }
    if !theta.is_mean_free() {
        return Err(Error::NotMeanFree);
    }
    let r2 = riesz_transform(theta, 2)?;
    let r1 = riesz_transform(theta, 1)?;
    Ok((r2.scale(-1.0), r1))
}

/// `(Σ_{k≠0} |k|^{2s}|θ̂(k)|² + [s ≥ 0]|θ̂(0)|²)^{1/2}`.
pub fn sobolev_norm(field: &SpectralField, s: f64) -> Result<f64> {
    if s < 0.0 && !field.is_mean_free() {
        return Err(Error::NotMeanFree);
    }
    let dom = field.domain();
    let mut acc = 0.0;
    for ((i1, i2), c) in field.coeffs().indexed_iter() {
        let k = dom.wavevector(i1, i2);
        let w = if k.is_zero() {
            if s >= 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            k.magnitude().powf(2.0 * s)
        };
        acc += w * c.norm_sqr();
    }
    Ok(acc.sqrt())
}

/// Grid quadrature of `(∫|θ|^q)^{1/q}`; `q = ∞` is the grid maximum.
pub fn lq_norm(field: &PhysicalField, q: f64) -> Result<f64> {
    if q.is_nan() || q < 2.0 {
        return Err(Error::InvalidParameter(format!(
            "Lq norms are monitored for q in [2, inf], got {q}"
        )));
    }
    if q.is_infinite() {
        return Ok(field.max_abs());
    }
    let sum: f64 = field.values().iter().map(|v| v.abs().powf(q)).sum();
    Ok((sum * field.domain().cell_area()).powf(1.0 / q))
}

/// Zero every mode with `max(|k₁|, |k₂|)` above the 2/3-rule cutoff.
pub fn dealias(field: &SpectralField) -> SpectralField {
    let cut = field.domain().dealias_cutoff();
    field.map_modes_real(|k| {
        if (k.k1.abs().max(k.k2.abs()) as f64) > cut {
            0.0
        } else {
            1.0
        }
    })
}

/// Real L² inner product `Σ Re(â conj b̂)`.
pub fn inner_product(a: &SpectralField, b: &SpectralField) -> Result<f64> {
    a.check_same_domain(b)?;
    Ok(a
        .coeffs()
        .iter()
        .zip(b.coeffs().iter())
        .map(|(x, y)| (x * y.conj()).re)
        .sum())
}
