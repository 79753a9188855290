use std::f64::consts::LN_2;

use approx::assert_relative_eq;

use super::*;
use crate::spectral::{
    inner_product, lowest_mode, random_smooth, to_physical, Basis, PhysicalField,
};

fn torus(n: usize) -> DomainSpec {
    DomainSpec::torus(n).unwrap()
}

fn linf(a: &SpectralField, b: &SpectralField) -> f64 {
    to_physical(&a.sub(b).unwrap()).max_abs()
}

fn run_to(theta: &SpectralField, params: &SqgParams, dt: f64, t_end: f64) -> SpectralField {
    let config = StepperConfig::new(dt, t_end);
    let states = trajectory(&SimulationState::new(theta.clone()), params, &config).unwrap();
    states.last().unwrap().theta.clone()
}

#[test]
fn phi_function_examples() {
    let (e, p1, _) = phi_functions(0.0);
    assert_eq!((e, p1), (1.0, 1.0));
    let (e, p1, _) = phi_functions(-LN_2);
    assert_relative_eq!(e, 0.5, max_relative = 1e-15);
    assert_relative_eq!(p1, 0.5 / LN_2, max_relative = 1e-15);
    let z = 1e-8;
    let (_, p1, p2) = phi_functions(-z);
    assert!((p1 - (1.0 - z / 2.0)).abs() < 1e-12);
    assert!((p2 - 0.5).abs() < 1e-8);
    // series and closed forms agree at the switch-over points
    for z in [-0.99e-4, -1.01e-4, -0.99e-2, -1.01e-2] {
        let (_, p1, p2) = phi_functions(z);
        assert_relative_eq!(p1, z.exp_m1() / z, max_relative = 1e-9);
        assert_relative_eq!(p2, (z.exp_m1() - z) / (z * z), max_relative = 1e-6);
    }
}

#[test]
fn coefficient_tables_match_the_symbol() {
    let dom = torus(16);
    let params = SqgParams::new(0.3, 0.75, 0.1);
    let c = etd_coefficients(&params, &dom, 0.2);
    let a = 0.3 * 5f64.powf(0.75) + 0.1; // |k|² = 5
    assert_relative_eq!(c.decay[(1, 2)], (-a * 0.2f64).exp(), max_relative = 1e-15);
    assert_relative_eq!(c.decay[(0, 0)], (-0.1 * 0.2f64).exp(), max_relative = 1e-15);
}

#[test]
fn parameter_validation() {
    let dom = torus(16);
    assert!(SqgParams::new(0.1, 0.5, 0.0).validate(&dom).is_err());
    assert!(SqgParams::new(0.1, 1.01, 0.0).validate(&dom).is_err());
    assert!(SqgParams::new(0.0, 0.75, 0.0).validate(&dom).is_err());
    assert!(SqgParams::new(0.1, 0.75, -1.0).validate(&dom).is_err());
    assert!(SqgParams::new(0.1, 1.0, 0.0).validate(&dom).is_ok());
    assert!(StepperConfig::new(0.2, 0.1).validate().is_err());
    assert!(StepperConfig::new(0.0, 0.1).validate().is_err());
    assert!(StepperConfig::new(0.1, 1.0).sample_every(0).validate().is_err());
}

#[test]
fn shear_annihilates_transport() {
    let theta = lowest_mode(torus(32), 1.0);
    assert!(nonlinear_rhs(&theta).unwrap().max_abs_coeff() < 1e-15);
    let (u1, u2) = physical_velocity(&theta).unwrap();
    assert!(u1.max_abs() < 1e-15);
    assert_relative_eq!(u2.max_abs(), 1.0, max_relative = 1e-14);
}

#[test]
fn transport_is_mean_free_and_conservative() {
    for seed in 0..5 {
        let theta = random_smooth(torus(32), seed, 1.0, 1.0);
        let n = nonlinear_rhs(&theta).unwrap();
        assert_eq!(n.mean_coeff().norm(), 0.0);
        let e = inner_product(&n, &theta).unwrap();
        assert!(e.abs() <= 1e-9 * theta.norm_l2().powi(2), "seed {seed}: {e}");
    }
}

#[test]
fn shear_decays_exactly() {
    let dom = torus(64);
    let theta0 = lowest_mode(dom, 1.0);
    for alpha in [0.55, 0.75, 1.0] {
        let params = SqgParams::new(0.1, alpha, 0.0);
        let theta = run_to(&theta0, &params, 0.01, 5.0);
        let exact = theta0.scale((-0.1f64 * 5.0).exp());
        assert!(linf(&theta, &exact) <= 1e-6, "alpha {alpha}");
        assert!(linf(&theta, &exact) <= 1e-13);
    }
}

#[test]
fn dirichlet_ground_state_decays_exactly() {
    let dom = DomainSpec::dirichlet(32).unwrap();
    let theta0 = lowest_mode(dom, 1.0);
    let params = SqgParams::new(0.2, 0.75, 0.1);
    let theta = run_to(&theta0, &params, 0.05, 2.0);
    // first eigenvalue of −Δ on the square of side π is 2
    let rate = 0.2 * 2f64.powf(0.75) + 0.1;
    let exact = theta0.scale((-rate * 2.0f64).exp());
    assert!(linf(&theta, &exact) < 1e-13);
    let v = to_physical(&theta);
    assert!(v.values().row(0).iter().all(|&x| x == 0.0));
    assert!(v.values().column(0).iter().all(|&x| x == 0.0));
}

#[test]
fn stationary_forcing_gives_a_fixed_point() {
    let g = lowest_mode(torus(32), 0.7);
    for lambda in [0.0, 0.4] {
        let params = SqgParams::new(0.1, 0.75, lambda);
        let f = params.stationary_forcing(&g).unwrap();
        let params = params.with_forcing(f);
        let theta = run_to(&g, &params, 0.05, 3.0);
        assert!(theta.sub(&g).unwrap().norm_l2() <= 1e-8);
    }
}

fn order_errors(scheme: Scheme) -> Vec<f64> {
    let theta0 = random_smooth(torus(32), 21, 1.0, 2.0);
    let params = SqgParams::new(0.05, 0.75, 0.0);
    let t_end = 0.4;
    let solve = |dt: f64| {
        let config = StepperConfig::new(dt, t_end).scheme(scheme);
        trajectory(&SimulationState::new(theta0.clone()), &params, &config)
            .unwrap()
            .pop()
            .unwrap()
            .theta
    };
    let reference = solve(0.4 / 1024.0);
    [0.04, 0.02, 0.01]
        .iter()
        .map(|&dt| solve(dt).sub(&reference).unwrap().norm_l2())
        .collect()
}

#[test]
fn etd2rk_is_second_order() {
    let e = order_errors(Scheme::Etd2Rk);
    for w in e.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 2.0 - 0.05, "errors {e:?}, order {order}");
    }
}

#[test]
fn etd1_is_first_order() {
    let e = order_errors(Scheme::Etd1);
    let order = (e[1] / e[2]).log2();
    assert!((0.9..1.2).contains(&order), "errors {e:?}");
}

struct L2;

impl Monitor for L2 {
    fn columns(&self) -> Vec<String> {
        vec!["L2".into()]
    }

    fn sample(&self, s: &SimulationState) -> Vec<f64> {
        vec![s.theta.norm_l2()]
    }
}

#[test]
fn sample_counting() {
    let s0 = SimulationState::new(random_smooth(torus(16), 1, 0.5, 2.0));
    let params = SqgParams::new(0.1, 0.75, 0.0);
    let series = integrate(&s0, &params, &StepperConfig::new(0.01, 0.0), &[&L2]).unwrap();
    assert_eq!(series.times(), &[0.0]);
    let series = integrate(&s0, &params, &StepperConfig::new(0.01, 0.1), &[&L2]).unwrap();
    assert_eq!(series.len(), 11);
    assert_eq!(*series.times().last().unwrap(), 0.1);
    let config = StepperConfig::new(0.01, 0.1).sample_every(3);
    let series = integrate(&s0, &params, &config, &[&L2]).unwrap();
    // t = 0, 3, 6, 9 steps and the final step
    assert_eq!(series.len(), 5);
    let config = StepperConfig::new(0.03, 0.1);
    let states = trajectory(&s0, &params, &config).unwrap();
    assert_eq!(states.len(), 5);
    assert_eq!(states.last().unwrap().t, 0.1);
}

#[test]
fn runs_are_bit_identical() {
    let s0 = SimulationState::new(random_smooth(torus(32), 2, 1.0, 2.0));
    let params = SqgParams::new(0.02, 0.6, 0.0);
    let config = StepperConfig::new(0.02, 0.5);
    let a = integrate(&s0, &params, &config, &[&L2]).unwrap();
    let b = integrate(&s0, &params, &config, &[&L2]).unwrap();
    assert_eq!(a, b);
    assert_eq!(trajectory(&s0, &params, &config).unwrap(), trajectory(&s0, &params, &config).unwrap());
}

#[test]
fn mean_and_energy_along_a_run() {
    let s0 = SimulationState::new(random_smooth(torus(32), 3, 1.0, 2.0));
    let params = SqgParams::new(0.02, 0.75, 0.0);
    let states = trajectory(&s0, &params, &StepperConfig::new(0.02, 2.0)).unwrap();
    for w in states.windows(2) {
        assert_eq!(w[1].theta.mean_coeff().norm(), 0.0);
        let (a, b) = (w[0].theta.norm_l2(), w[1].theta.norm_l2());
        assert!(b <= a * (1.0 + 1e-9), "t = {}: {b} > {a}", w[1].t);
    }
}

#[test]
fn damping_bound() {
    let s0 = SimulationState::new(random_smooth(torus(32), 4, 1.0, 2.0));
    let params = SqgParams::new(0.02, 0.75, 0.5);
    let e0 = s0.theta.norm_l2().powi(2);
    for s in trajectory(&s0, &params, &StepperConfig::new(0.05, 3.0)).unwrap() {
        let bound = e0 * (-2.0 * 0.5 * s.t).exp() * (1.0 + 1e-6);
        assert!(s.theta.norm_l2().powi(2) <= bound, "t = {}", s.t);
    }
}

#[test]
fn blow_up_is_reported_with_time() {
    let s0 = SimulationState::new(random_smooth(torus(32), 5, 50.0, 1.0));
    let params = SqgParams::new(0.001, 0.75, 0.0);
    let err = trajectory(&s0, &params, &StepperConfig::new(5.0, 100.0)).unwrap_err();
    match err {
        Error::BlowUp { t, .. } => assert!(t > 0.0 && t <= 100.0),
        other => panic!("expected blow-up, got {other}"),
    }
    assert!(err_is_numerical(&s0, &params));
}

fn err_is_numerical(s0: &SimulationState, params: &SqgParams) -> bool {
    trajectory(s0, params, &StepperConfig::new(5.0, 100.0)).unwrap_err().is_numerical()
}

#[test]
fn cfl_guard_aborts_on_request() {
    let s0 = SimulationState::new(random_smooth(torus(32), 6, 5.0, 2.0));
    let params = SqgParams::new(0.01, 0.75, 0.0);
    let mut config = StepperConfig::new(0.2, 0.4);
    config.cfl_abort = true;
    assert!(matches!(
        trajectory(&s0, &params, &config),
        Err(Error::CflExceeded { .. })
    ));
    config.cfl_abort = false;
    assert!(trajectory(&s0, &params, &config).is_ok());
}

#[test]
fn rejects_bad_states() {
    let dom = torus(16);
    let mut c = SpectralField::single_mode(dom, 1, 0, 1.0);
    c.coeffs_mut()[(0, 0)] = num_complex::Complex64::new(1.0, 0.0);
    let params = SqgParams::new(0.1, 0.75, 0.0);
    let err = step(&SimulationState::new(c), &params, &StepperConfig::new(0.1, 1.0));
    assert!(matches!(err, Err(Error::NotMeanFree)));
    let other = SpectralField::zeros(torus(32));
    let forced = params.clone().with_forcing(other);
    assert!(matches!(forced.validate(&dom), Err(Error::DomainMismatch)));
}

#[test]
fn default_step_scales_with_the_grid() {
    let small = lowest_mode(torus(16), 0.1);
    assert_relative_eq!(default_dt(&small).unwrap(), 0.5 * torus(16).spacing(), max_relative = 1e-15);
    let fast = lowest_mode(torus(16), 4.0);
    assert_relative_eq!(default_dt(&fast).unwrap(), 0.5 * torus(16).spacing() / 4.0, max_relative = 1e-12);
}

#[test]
fn picard_matches_linear_solution() {
    let theta0 = lowest_mode(torus(32), 1.0);
    let params = SqgParams::new(0.1, 0.75, 0.2);
    let p = picard_reference(&SimulationState::new(theta0.clone()), &params, 0.1, 5).unwrap();
    let exact = theta0.scale((-0.3f64 * 0.1).exp());
    assert!(linf(&p.theta, &exact) < 1e-14);
    assert_relative_eq!(p.t, 0.1);
}

#[test]
fn picard_cross_checks_etd2rk() {
    let theta0 = random_smooth(torus(32), 7, 0.3, 2.0);
    let params = SqgParams::new(0.05, 0.75, 0.0);
    let s0 = SimulationState::new(theta0);
    let errs: Vec<f64> = [0.02, 0.01, 0.005]
        .iter()
        .map(|&dt| {
            let t_end = 10.0 * dt;
            let reference = picard_reference(&s0, &params, t_end, 30).unwrap();
            let etd = trajectory(&s0, &params, &StepperConfig::new(dt, t_end))
                .unwrap()
                .pop()
                .unwrap();
            etd.theta.sub(&reference.theta).unwrap().norm_l2()
        })
        .collect();
    // fixed T = 10dt, so the global error scales like dt²·T ~ dt³; at least dt²
    for w in errs.windows(2) {
        assert!((w[0] / w[1]).log2() >= 1.8, "{errs:?}");
    }
}

#[test]
fn picard_reports_divergence() {
    let theta0 = random_smooth(torus(16), 8, 200.0, 1.0);
    let params = SqgParams::new(0.01, 0.75, 0.0);
    let r = picard_reference(&SimulationState::new(theta0), &params, 1.0, 3);
    assert!(matches!(r, Err(Error::PicardDiverged { .. })), "{r:?}");
}

#[test]
fn physical_velocity_is_divergence_free_on_the_sine_basis() {
    let dom = DomainSpec::new(32, 2.0, Basis::DirichletRectangle).unwrap();
    let theta = random_smooth(dom, 9, 1.0, 2.0);
    let (u1, u2) = physical_velocity(&theta).unwrap();
    assert!(u1.max_abs() > 0.0 && u2.max_abs() > 0.0);
    let _: &PhysicalField = &u1;
    // no flux through the walls: u·n = 0 on x₁ = 0 and x₂ = 0
    assert!(u1.values().row(0).iter().all(|x| x.abs() < 1e-12));
    assert!(u2.values().column(0).iter().all(|x| x.abs() < 1e-12));
}
