use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    dealias, dirichlet_to_extended, extended_to_dirichlet, to_physical, to_spectral,
    velocity_from_theta, Basis, PhysicalField, SpectralField,
};

/// `−∇·(uθ)` on the torus, plus the largest grid speed.
fn torus_transport(theta: &SpectralField) -> Result<(SpectralField, f64)> {
    let theta = dealias(theta);
    let (u1, u2) = velocity_from_theta(&theta)?;
    let th = to_physical(&theta);
    let u1p = to_physical(&u1);
    let u2p = to_physical(&u2);
    let speed = u1p
        .values()
        .iter()
        .zip(u2p.values().iter())
        .fold(0.0f64, |m, (a, b)| m.max(a.hypot(*b)));
    let q1 = to_spectral(&u1p.mul(&th)?)?;
    let q2 = to_spectral(&u2p.mul(&th)?)?;
    let dom = *theta.domain();
    let half = (dom.n() / 2) as i64;
    let mut out = q1.coeffs().clone();
    for ((i1, i2), c) in out.indexed_iter_mut() {
        let k = dom.wavevector(i1, i2);
        let kx = if k.k1 == -half { 0.0 } else { k.kx };
        let ky = if k.k2 == -half { 0.0 } else { k.ky };
        let div = Complex64::new(0.0, kx) * *c + Complex64::new(0.0, ky) * q2.coeffs()[(i1, i2)];
        *c = -div;
    }
    let out = dealias(&SpectralField::from_raw(out, dom));
    Ok((out.remove_mean(), speed))
}

pub(crate) fn transport_with_speed(theta: &SpectralField) -> Result<(SpectralField, f64)> {
    match theta.domain().basis() {
        Basis::PeriodicTorus => {
            if !theta.is_mean_free() {
                return Err(Error::NotMeanFree);
            }
            torus_transport(theta)
        }
        Basis::DirichletRectangle => {
            // stream-function route on the odd-odd extension
            let ext = dirichlet_to_extended(theta)?;
            let (n_ext, speed) = torus_transport(&ext)?;
            Ok((extended_to_dirichlet(&n_ext, theta.domain())?, speed))
        }
    }
}

/// Transport term `−∇·(uθ) = −u·∇θ`, dealiased and mean-free.
///
/// On the torus `u = (−R₂θ, R₁θ)`. In the sine basis `ψ` solves
/// `(−Δ)^{1/2}ψ = −θ` with the spectral Dirichlet operator and
/// `u = (−∂ψ/∂x₂, ∂ψ/∂x₁)`; this is evaluated on the odd-odd periodic
/// extension, where it coincides with the Riesz route.
pub fn nonlinear_rhs(theta: &SpectralField) -> Result<SpectralField> {
    transport_with_speed(theta).map(|(n, _)| n)
}

/// Physical velocity components on the grid of `theta`.
pub fn physical_velocity(theta: &SpectralField) -> Result<(PhysicalField, PhysicalField)> {
    match theta.domain().basis() {
        Basis::PeriodicTorus => {
            let (u1, u2) = velocity_from_theta(theta)?;
            Ok((to_physical(&u1), to_physical(&u2)))
        }
        Basis::DirichletRectangle => {
            let n = theta.domain().n();
            let ext = dirichlet_to_extended(theta)?;
            let (u1, u2) = velocity_from_theta(&ext)?;
            let cut = |f: &SpectralField| {
                let full = to_physical(f);
                let v = full.values().slice(ndarray::s![0..n, 0..n]).to_owned();
                PhysicalField::from_values(v, *theta.domain())
            };
            Ok((cut(&u1)?, cut(&u2)?))
        }
    }
}

pub fn max_speed(theta: &SpectralField) -> Result<f64> {
    let (u1, u2) = physical_velocity(theta)?;
    Ok(u1
        .values()
        .iter()
        .zip(u2.values().iter())
        .fold(0.0f64, |m, (a, b)| m.max(a.hypot(*b))))
}
