use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_complex::Complex64;

use super::*;

fn torus() -> DomainSpec {
    DomainSpec::torus(32).unwrap()
}

fn coeff(f: &SpectralField, k1: i64, k2: i64) -> Complex64 {
    let n = f.domain().n() as i64;
    f.coeffs()[(k1.rem_euclid(n) as usize, k2.rem_euclid(n) as usize)]
}

fn max_diff(a: &PhysicalField, b: &PhysicalField) -> f64 {
    a.sub(b).unwrap().max_abs()
}

#[test]
fn domain_validation() {
    assert!(DomainSpec::torus(100).is_err());
    assert!(DomainSpec::torus(8).is_err());
    assert!(DomainSpec::new(32, 0.0, Basis::PeriodicTorus).is_err());
    assert!(DomainSpec::new(32, -1.0, Basis::DirichletRectangle).is_err());
    let d = DomainSpec::new(64, 3.0, Basis::DirichletRectangle).unwrap();
    assert_eq!((d.n(), d.box_len(), d.basis()), (64, 3.0, Basis::DirichletRectangle));
}

#[test]
fn zero_round_trip() {
    let z = SpectralField::zeros(torus());
    assert_eq!(to_physical(&z).max_abs(), 0.0);
    assert_eq!(to_spectral(&to_physical(&z)).unwrap(), z);
}

#[test]
fn single_mode_samples_cosine() {
    // orthonormal pair: θ = (1/L) Σ θ̂ e^{ik·x}, so a unit pair gives (2/L)cos
    let d = torus();
    let l = d.box_len();
    let f = SpectralField::single_mode(d, 1, 0, 1.0);
    let expected = PhysicalField::from_fn(d, |x1, _| 2.0 / l * (2.0 * PI * x1 / l).cos());
    assert!(max_diff(&to_physical(&f), &expected) < 1e-14);
}

#[test]
fn dirichlet_mode_samples_sines() {
    let d = DomainSpec::dirichlet(32).unwrap();
    let f = SpectralField::single_mode(d, 2, 3, 1.0);
    let l = d.box_len();
    let expected = PhysicalField::from_fn(d, |x1, x2| {
        2.0 / l * (2.0 * PI * x1 / l).sin() * (3.0 * PI * x2 / l).sin()
    });
    assert!(max_diff(&to_physical(&f), &expected) < 1e-14);
}

#[test]
fn random_round_trip_torus_and_sine() {
    for d in [torus(), DomainSpec::dirichlet(32).unwrap()] {
        let f = random_smooth(d, 11, 1.0, 1.0);
        let back = to_spectral(&to_physical(&f)).unwrap();
        let err = back.sub(&f).unwrap().norm_l2() / f.norm_l2();
        assert!(err < 1e-12, "{:?}: {err}", d.basis());
    }
}

#[test]
fn dimension_mismatch_is_reported() {
    let bad = PhysicalField::from_values(ndarray::Array2::zeros((16, 16)), torus());
    assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
}

#[test]
fn fractional_laplacian_symbol() {
    let d = torus();
    let f = SpectralField::single_mode(d, 3, 4, 1.0);
    let g = fractional_laplacian(&f, 0.5, Direction::Forward).unwrap();
    assert_relative_eq!(coeff(&g, 3, 4).re, 5.0, max_relative = 1e-15);
    let g = fractional_laplacian(&f, 1.0, Direction::Forward).unwrap();
    assert_relative_eq!(coeff(&g, 3, 4).re, 25.0, max_relative = 1e-15);
    let back = fractional_laplacian(&g, 1.0, Direction::Inverse).unwrap();
    assert!(back.sub(&f).unwrap().max_abs_coeff() < 1e-15);
}

#[test]
fn constants_are_annihilated_and_not_inverted() {
    let d = torus();
    let c = SpectralField::single_mode(d, 0, 0, 3.0);
    for alpha in [0.1, 0.5, 1.0] {
        let g = fractional_laplacian(&c, alpha, Direction::Forward).unwrap();
        assert_eq!(g.max_abs_coeff(), 0.0);
    }
    assert!(matches!(
        fractional_laplacian(&c, 0.5, Direction::Inverse),
        Err(Error::NonInvertibleZeroMode)
    ));
    assert!(fractional_laplacian(&c, -0.5, Direction::Forward).is_err());
}

#[test]
fn riesz_examples() {
    let d = torus();
    let mut f = SpectralField::zeros(d);
    f.coeffs_mut()[(1, 0)] = Complex64::new(1.0, 0.0);
    let r = riesz_transform(&f, 1).unwrap();
    assert_eq!(coeff(&r, 1, 0), Complex64::new(0.0, -1.0));
    let mut g = SpectralField::zeros(d);
    g.coeffs_mut()[(0, 3)] = Complex64::new(1.0, 0.0);
    assert_eq!(riesz_transform(&g, 1).unwrap().max_abs_coeff(), 0.0);
    assert!(riesz_transform(&f, 3).is_err());
    let s = SpectralField::zeros(DomainSpec::dirichlet(16).unwrap());
    let err = riesz_transform(&s, 1).unwrap_err();
    assert_eq!(err.to_string(), "Riesz transform defined on torus only");
}

#[test]
fn riesz_is_an_isometry_on_mean_free_fields() {
    let f = random_smooth(torus(), 3, 1.0, 1.0);
    for j in [1, 2] {
        let r = riesz_transform(&f, j).unwrap();
        assert_relative_eq!(r.norm_l2(), f.norm_l2() * direction_share(&f, j), max_relative = 1e-12);
        assert!(r.norm_l2() <= f.norm_l2());
        // equality on modes along the axis: the norm is attained
        let axis = if j == 1 { (2, 0) } else { (0, 2) };
        let m = SpectralField::single_mode(*f.domain(), axis.0, axis.1, 1.0);
        assert_relative_eq!(riesz_transform(&m, j).unwrap().norm_l2(), m.norm_l2(), max_relative = 1e-15);
    }
    let r1 = riesz_transform(&f, 1).unwrap();
    let r2 = riesz_transform(&f, 2).unwrap();
    assert_relative_eq!(r1.norm_l2().hypot(r2.norm_l2()), f.norm_l2(), max_relative = 1e-12);
}

/// `(Σ (k_j/|k|)² |θ̂|²)^{1/2} / ‖θ‖`, the exact share of `R_j`.
fn direction_share(f: &SpectralField, j: usize) -> f64 {
    let d = f.domain();
    let mut acc = 0.0;
    for ((i1, i2), c) in f.coeffs().indexed_iter() {
        let k = d.wavevector(i1, i2);
        if !k.is_zero() {
            let kj = if j == 1 { k.kx } else { k.ky };
            acc += (kj / k.magnitude()).powi(2) * c.norm_sqr();
        }
    }
    acc.sqrt() / f.norm_l2()
}

#[test]
fn velocity_examples() {
    let d = torus();
    let mut f = SpectralField::zeros(d);
    f.coeffs_mut()[(1, 0)] = Complex64::new(1.0, 0.0);
    let (u1, u2) = velocity_from_theta(&f).unwrap();
    assert_eq!(u1.max_abs_coeff(), 0.0);
    assert_eq!(coeff(&u2, 1, 0), Complex64::new(0.0, -1.0));

    let theta = lowest_mode(d, 1.0);
    let (u1, u2) = velocity_from_theta(&theta).unwrap();
    assert!(to_physical(&u1).max_abs() < 1e-15);
    let sine = PhysicalField::from_fn(d, |x1, _| x1.sin());
    assert!(max_diff(&to_physical(&u2), &sine) < 1e-14);

    let c = SpectralField::single_mode(d, 0, 0, 1.0);
    assert!(matches!(velocity_from_theta(&c), Err(Error::NotMeanFree)));
}

#[test]
fn sobolev_examples() {
    let d = torus();
    let mut f = SpectralField::zeros(d);
    f.coeffs_mut()[(2, 0)] = Complex64::new(1.0, 0.0);
    assert_relative_eq!(sobolev_norm(&f, -0.5).unwrap(), 2f64.powf(-0.5), max_relative = 1e-15);
    let g = random_smooth(d, 5, 1.0, 2.0);
    let l2 = lq_norm(&to_physical(&g), 2.0).unwrap();
    assert_relative_eq!(sobolev_norm(&g, 0.0).unwrap(), l2, max_relative = 1e-10);
    let c = SpectralField::single_mode(d, 0, 0, 1.0);
    assert!(matches!(sobolev_norm(&c, -0.5), Err(Error::NotMeanFree)));
    assert_eq!(sobolev_norm(&c, 0.5).unwrap(), 1.0);
}

#[test]
fn interpolation_between_negative_norms() {
    let g = random_smooth(torus(), 6, 1.0, 1.5);
    for eps in [0.05, 0.25, 0.45] {
        let lhs = sobolev_norm(&g, -eps).unwrap();
        let rhs = sobolev_norm(&g, -0.5).unwrap().powf(2.0 * eps) * sobolev_norm(&g, 0.0).unwrap().powf(1.0 - 2.0 * eps);
        assert!(lhs <= rhs * (1.0 + 1e-12), "eps {eps}: {lhs} > {rhs}");
    }
}

#[test]
fn lq_examples() {
    let d = torus();
    let l = d.box_len();
    let c = PhysicalField::from_fn(d, |_, _| -3.0);
    assert_relative_eq!(lq_norm(&c, 2.0).unwrap(), 3.0 * l, max_relative = 1e-14);
    let cos = PhysicalField::from_fn(d, |x1, _| x1.cos());
    assert_eq!(lq_norm(&cos, f64::INFINITY).unwrap(), 1.0);
    assert!(lq_norm(&cos, 1.5).is_err());
    let g = to_physical(&random_smooth(d, 8, 1.0, 1.0));
    assert!(lq_norm(&g, 2.0).unwrap() <= lq_norm(&g, 4.0).unwrap() * l.sqrt());
}

#[test]
fn dealias_examples() {
    let d = torus();
    let low = SpectralField::single_mode(d, 10, -10, 1.0);
    assert_eq!(dealias(&low), low);
    let high = SpectralField::single_mode(d, 11, 2, 1.0);
    assert_eq!(dealias(&high).max_abs_coeff(), 0.0);
    let raw = to_spectral(&PhysicalField::from_fn(d, |x1, x2| (x1 * x2).sin())).unwrap();
    let once = dealias(&raw);
    assert_eq!(dealias(&once), once);
}

#[test]
fn pad_and_truncate_invert_each_other() {
    for d in [torus(), DomainSpec::dirichlet(32).unwrap()] {
        let f = random_smooth(d, 9, 1.0, 1.0);
        let up = pad(&f, 64).unwrap();
        // spectral interpolation keeps the grid values at shared nodes
        let coarse = to_physical(&f);
        let fine = to_physical(&up);
        for j1 in 0..32 {
            for j2 in 0..32 {
                let diff = coarse.values()[(j1, j2)] - fine.values()[(2 * j1, 2 * j2)];
                assert!(diff.abs() < 1e-13);
            }
        }
        assert!(truncate(&up, 32).unwrap().sub(&f).unwrap().max_abs_coeff() < 1e-15);
        assert!(pad(&f, 16).is_err());
        assert!(truncate(&f, 64).is_err());
    }
}

#[test]
fn dirichlet_extension_is_odd() {
    let d = DomainSpec::dirichlet(16).unwrap();
    let f = random_smooth(d, 4, 1.0, 1.0);
    let ext = dirichlet_to_extended(&f).unwrap();
    let v = to_physical(&ext);
    let m = 32;
    for j1 in 1..m {
        for j2 in 1..m {
            let a = v.values()[(j1, j2)];
            let b = v.values()[(m - j1, j2)];
            assert!((a + b).abs() < 1e-14);
        }
    }
    let back = extended_to_dirichlet(&ext, &d).unwrap();
    assert!(back.sub(&f).unwrap().max_abs_coeff() < 1e-15);
}

#[test]
fn random_data_is_normalized_and_reproducible() {
    let d = torus();
    let a = random_smooth(d, 42, 0.05, 3.0);
    assert_relative_eq!(to_physical(&a).max_abs(), 0.05, max_relative = 1e-14);
    assert!(a.is_mean_free());
    assert_eq!(a, random_smooth(d, 42, 0.05, 3.0));
    assert_ne!(a, random_smooth(d, 43, 0.05, 3.0));
    assert_eq!(dealias(&a), a);
}

#[test]
fn gaussian_bump_is_mean_free_and_centered() {
    let d = DomainSpec::new(64, 8.0 * PI, Basis::PeriodicTorus).unwrap();
    let c = d.box_len() / 2.0;
    let b = gaussian_bump(d, (c, c), 1.0, 1.0);
    assert!(b.is_mean_free());
    let v = to_physical(&b);
    let (j, _) = v
        .values()
        .indexed_iter()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(idx, x)| (idx, *x))
        .unwrap();
    assert_eq!(j, (32, 32));
}
