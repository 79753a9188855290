use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;

use sqglab::critical::h_minus_half_distance;
use sqglab::dynamics::nonlinear_rhs;
use sqglab::estimates::InequalityRecord;
use sqglab::operator::{
    balakrishnan_neg_power, inv_i_plus_apow, moment_inequality_check, DenseOperator,
    QuadratureSpec,
};
use sqglab::spectral::{
    dealias, fractional_laplacian, inner_product, lq_norm, random_smooth, riesz_transform,
    sobolev_norm, to_physical, to_spectral, velocity_from_theta, Direction,
};
use sqglab::{Basis, DomainSpec, SpectralField};

fn domain(n: usize, basis: Basis) -> DomainSpec {
    let l = if basis == Basis::PeriodicTorus { 2.0 * std::f64::consts::PI } else { 3.0 };
    DomainSpec::new(n, l, basis).unwrap()
}

prop_compose! {
    fn torus_field()(n in prop::sample::select(vec![16usize, 32]), seed: u64,
                     amp in 0.01f64..10.0, decay in 0.5f64..4.0) -> SpectralField {
        random_smooth(domain(n, Basis::PeriodicTorus), seed, amp, decay)
    }
}

prop_compose! {
    fn any_field()(basis in prop::sample::select(vec![Basis::PeriodicTorus, Basis::DirichletRectangle]),
                   seed: u64, amp in 0.01f64..10.0, decay in 0.5f64..4.0) -> SpectralField {
        random_smooth(domain(16, basis), seed, amp, decay)
    }
}

fn close(a: &SpectralField, b: &SpectralField, tol: f64) -> bool {
    a.sub(b).unwrap().max_abs_coeff() <= tol * a.max_abs_coeff().max(b.max_abs_coeff()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip(f in any_field()) {
        let back = to_spectral(&to_physical(&f)).unwrap();
        prop_assert!(back.sub(&f).unwrap().norm_l2() <= 1e-12 * f.norm_l2());
    }

    #[test]
    fn parseval(f in any_field()) {
        let phys = lq_norm(&to_physical(&f), 2.0).unwrap();
        let spec = sobolev_norm(&f, 0.0).unwrap();
        prop_assert!((phys - spec).abs() <= 1e-10 * spec);
    }

    #[test]
    fn riesz_squares_sum_to_minus_identity(f in torus_field()) {
        let r11 = riesz_transform(&riesz_transform(&f, 1).unwrap(), 1).unwrap();
        let r22 = riesz_transform(&riesz_transform(&f, 2).unwrap(), 2).unwrap();
        let sum = r11.add(&r22).unwrap();
        prop_assert!(close(&sum, &f.scale(-1.0), 1e-14));
    }

    #[test]
    fn riesz_commutes_with_fractional_powers(f in torus_field(), beta in 0.0f64..1.0, j in 1usize..=2) {
        let a = fractional_laplacian(&riesz_transform(&f, j).unwrap(), beta, Direction::Forward).unwrap();
        let b = riesz_transform(&fractional_laplacian(&f, beta, Direction::Forward).unwrap(), j).unwrap();
        prop_assert!(close(&a, &b, 1e-14));
    }

    #[test]
    fn fractional_powers_compose(f in any_field(), a1 in 0.0f64..1.0, a2 in 0.0f64..1.0) {
        let two = fractional_laplacian(&fractional_laplacian(&f, a1, Direction::Forward).unwrap(), a2, Direction::Forward).unwrap();
        let one = fractional_laplacian(&f, a1 + a2, Direction::Forward).unwrap();
        prop_assert!(close(&two, &one, 1e-13));
    }

    #[test]
    fn velocity_is_divergence_free_per_mode(f in torus_field()) {
        let (u1, u2) = velocity_from_theta(&f).unwrap();
        let dom = f.domain();
        let mut worst: f64 = 0.0;
        for ((i1, i2), c1) in u1.coeffs().indexed_iter() {
            let k = dom.wavevector(i1, i2);
            let div: Complex64 = c1 * k.kx + u2.coeffs()[(i1, i2)] * k.ky;
            worst = worst.max(div.norm());
        }
        prop_assert!(worst <= 1e-14 * f.max_abs_coeff() * dom.n() as f64);
    }

    #[test]
    fn dealias_is_idempotent(f in any_field()) {
        let raw = to_spectral(&to_physical(&f).map(|v| v * v.abs())).unwrap();
        let once = dealias(&raw);
        prop_assert_eq!(dealias(&once), once);
    }

    #[test]
    fn transport_conserves_energy(f in torus_field()) {
        let n = nonlinear_rhs(&f).unwrap();
        prop_assert_eq!(n.mean_coeff().norm(), 0.0);
        let e = inner_product(&n, &f).unwrap();
        prop_assert!(e.abs() <= 1e-9 * f.norm_l2().powi(2), "{e}");
    }

    #[test]
    fn h_minus_half_is_a_metric(a in torus_field(), seed: u64) {
        let dom = *a.domain();
        let b = random_smooth(dom, seed, 1.0, 2.0);
        let c = random_smooth(dom, seed.wrapping_add(1), 0.5, 1.0);
        let ab = h_minus_half_distance(&a, &b).unwrap();
        prop_assert_eq!(h_minus_half_distance(&a, &a).unwrap(), 0.0);
        prop_assert!((ab - h_minus_half_distance(&b, &a).unwrap()).abs() <= 1e-15 * ab);
        let via = h_minus_half_distance(&a, &c).unwrap() + h_minus_half_distance(&c, &b).unwrap();
        prop_assert!(ab <= via * (1.0 + 1e-12));
    }

    #[test]
    fn record_slack_convention(t in 0.0f64..10.0, lhs in -1e3f64..1e3, rhs in -1e3f64..1e3) {
        let r = InequalityRecord::new(t, lhs, rhs);
        prop_assert_eq!(r.slack, rhs - lhs);
        prop_assert_eq!(r.passed, rhs - lhs >= -1e-8 * lhs.abs().max(rhs.abs()).max(1.0));
        if lhs <= rhs {
            prop_assert!(r.passed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadratures_match_the_spectrum(n in 1usize..8, cond in 1.0f64..1e4, seed: u64,
                                      alpha in 0.05f64..0.95, v in prop::collection::vec(-1.0f64..1.0, 8)) {
        let a = DenseOperator::random_spd(n, cond, seed).unwrap();
        let phi = DVector::from_column_slice(&v[..n]);
        prop_assume!(phi.norm() > 1e-3);
        let q = QuadratureSpec::default();
        let x = balakrishnan_neg_power(&a, alpha, &phi, &q).unwrap();
        let exact = a.eig_power(-alpha, &phi).unwrap();
        prop_assert!((x - &exact).norm() <= 1e-6 * exact.norm());
        let y = inv_i_plus_apow(&a, alpha, &phi, &q).unwrap();
        let exact = a.spectral_apply(&phi, |mu| 1.0 / (1.0 + mu.powf(alpha)));
        prop_assert!((y - &exact).norm() <= 1e-6 * exact.norm());
    }

    #[test]
    fn moment_inequality_holds(n in 1usize..8, cond in 1.0f64..1e4, seed: u64,
                               beta in 0.51f64..0.99, v in prop::collection::vec(-1.0f64..1.0, 8)) {
        let a = DenseOperator::random_spd(n, cond, seed).unwrap();
        let phi = DVector::from_column_slice(&v[..n]);
        let r = moment_inequality_check(&a, &phi, beta).unwrap();
        prop_assert!(r.passed, "{:?}", r);
    }
}
