use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

use super::{dealias, to_physical, to_spectral, Basis, DomainSpec, PhysicalField, SpectralField};

fn normalize_sup(field: SpectralField, amplitude: f64) -> SpectralField {
    let sup = to_physical(&field).max_abs();
    if sup > 0.0 {
        field.scale(amplitude / sup)
    } else {
        field
    }
}

/// Random smooth mean-free data: `|θ̂(k)| ∝ (1 + |k|)^{−decay}` with random
/// phases drawn from `seed`, dealiased, then scaled to `‖θ‖_∞ = amplitude`.
///
/// Sine-basis domains are routed to [`random_smooth_dirichlet`].
pub fn random_smooth(domain: DomainSpec, seed: u64, amplitude: f64, decay: f64) -> SpectralField {
    if domain.basis() == Basis::DirichletRectangle {
        return random_smooth_dirichlet(domain, seed, amplitude, decay);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = domain.n();
    let coeffs = Array2::from_shape_fn((n, n), |(i1, i2)| {
        let k = domain.wavevector(i1, i2);
        let r: f64 = rng.sample(StandardNormal);
        let phase: f64 = rng.random::<f64>() * 2.0 * PI;
        Complex64::from_polar(r * (1.0 + k.magnitude()).powf(-decay), phase)
    });
    // real part in physical space enforces conjugate symmetry
    let raw = SpectralField::from_raw(coeffs, domain);
    let real = to_physical(&raw);
    let field = dealias(&to_spectral(&real).expect("same grid")).remove_mean();
    normalize_sup(field, amplitude)
}

/// Random smooth sine-basis data with Gaussian coefficients of the same decay.
pub fn random_smooth_dirichlet(
    domain: DomainSpec,
    seed: u64,
    amplitude: f64,
    decay: f64,
) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = domain.n();
    let coeffs = Array2::from_shape_fn((n, n), |(i1, i2)| {
        let r: f64 = rng.sample(StandardNormal);
        if i1 == 0 || i2 == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let k = domain.wavevector(i1, i2);
        Complex64::new(r * (1.0 + k.magnitude()).powf(-decay), 0.0)
    });
    let field = dealias(&SpectralField::from_raw(coeffs, domain));
    normalize_sup(field, amplitude)
}

/// Lowest eigenmode of the box with unit sup norm: `cos(2πx₁/L)` on the
/// torus (the shear datum, `cos x₁` for `L = 2π`), `sin(πx₁/L) sin(πx₂/L)` in
/// the sine basis. Both are steady for the transport term.
pub fn lowest_mode(domain: DomainSpec, amplitude: f64) -> SpectralField {
    let l = domain.box_len();
    match domain.basis() {
        Basis::PeriodicTorus => SpectralField::single_mode(domain, 1, 0, amplitude * l / 2.0),
        Basis::DirichletRectangle => SpectralField::single_mode(domain, 1, 1, amplitude * l / 2.0),
    }
}

/// Localised mean-free bump: a difference of two Gaussians with equal mass,
/// `A [exp(−r²/2w²) − ¼ exp(−r²/8w²)]`, with `r` the periodic distance to
/// `center` on the torus.
pub fn gaussian_bump(
    domain: DomainSpec,
    center: (f64, f64),
    width: f64,
    amplitude: f64,
) -> SpectralField {
    let l = domain.box_len();
    let torus = domain.is_torus();
    let dist = move |a: f64, c: f64| {
        let d = a - c;
        if torus {
            d - l * (d / l).round()
        } else {
            d
        }
    };
    let w2 = width * width;
    let phys = PhysicalField::from_fn(domain, |x1, x2| {
        let r2 = dist(x1, center.0).powi(2) + dist(x2, center.1).powi(2);
        amplitude * ((-r2 / (2.0 * w2)).exp() - 0.25 * (-r2 / (8.0 * w2)).exp())
    });
    to_spectral(&phys).expect("same grid").remove_mean()
}
