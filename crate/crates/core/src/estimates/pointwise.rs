use crate::error::{Error, Result};
use crate::spectral::{
    dealias, fractional_laplacian, pad, to_physical, to_spectral, Direction, PhysicalField,
    SpectralField,
};

/// Dealiased field and its fractional Laplacian, both sampled on the doubled
/// grid so that quadratic products are represented exactly.
fn fine_pair(phi: &SpectralField, alpha: f64) -> Result<(PhysicalField, PhysicalField)> {
    if !phi.domain().is_torus() {
        return Err(Error::TorusOnly("pointwise fractional inequality"));
    }
    let phi = dealias(phi);
    let m = 2 * phi.domain().n();
    let lap = fractional_laplacian(&phi, alpha, Direction::Forward)?;
    Ok((to_physical(&pad(&phi, m)?), to_physical(&pad(&lap, m)?)))
}

/// `2φ(−Δ)^αφ − (−Δ)^α(φ²)` on the doubled grid.
pub fn cordoba_field(phi: &SpectralField, alpha: f64) -> Result<PhysicalField> {
    let (p, d) = fine_pair(phi, alpha)?;
    let sq = to_spectral(&p.mul(&p)?)?;
    let lap_sq = to_physical(&fractional_laplacian(&sq, alpha, Direction::Forward)?);
    let mut out = p.mul(&d)?.map(|v| 2.0 * v);
    out.values_mut().zip_mut_with(lap_sq.values(), |o, l| *o -= l);
    Ok(out)
}

/// Minimum over the grid of `2φ(−Δ)^αφ − (−Δ)^α(φ²)`.
pub fn cordoba_pointwise_check(phi: &SpectralField, alpha: f64) -> Result<f64> {
    Ok(cordoba_field(phi, alpha)?.min())
}

/// Size against which the Córdoba slack is judged: the sup of the two terms.
pub fn cordoba_scale(phi: &SpectralField, alpha: f64) -> Result<f64> {
    let (p, d) = fine_pair(phi, alpha)?;
    let sq = to_spectral(&p.mul(&p)?)?;
    let lap_sq = to_physical(&fractional_laplacian(&sq, alpha, Direction::Forward)?);
    Ok(2.0 * p.mul(&d)?.max_abs() + lap_sq.max_abs())
}

/// `∫ (−Δ)^αθ · |θ|^{q−1} sgn θ dx` by quadrature on the doubled grid.
pub fn positivity_integral_check(theta: &SpectralField, q: f64, alpha: f64) -> Result<f64> {
    if !(q >= 2.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "positivity integral needs q in [2, inf), got {q}"
        )));
    }
    let (p, d) = fine_pair(theta, alpha)?;
    let w = p.map(|v| v.abs().powf(q - 1.0) * v.signum());
    Ok(d.mul(&w)?.integral())
}
