use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Experiment, ForcingSpec, InitialCondition, RunConfig};
use super::output::{emit_csv, emit_json, emit_table, format_float};
use crate::critical::{
    dirichlet_sweep, interpolation_upgrade, l43_check, pairwise_bound_check, run_sweep,
    weak_form_residual, AlphaSweepConfig, InterpolationCheck, L43Constants, SweepResult,
};
use crate::dynamics::{
    default_dt, Monitor, SimulationState, SqgParams, Stepper, StepperConfig,
};
use crate::error::{Error, Result};
use crate::estimates::{
    cordoba_field, cordoba_pointwise_check, cordoba_scale, linf_monitor, max_principle_monitor,
    monotone_norm_records, positivity_integral_check, CutoffSpec, InequalityRecord, LqMonitor,
    SlackMonitor, SobolevMonitor, TailMonitor,
};
use crate::operator::{
    balakrishnan_neg_power, identity_minus_negpower_decay, inv_i_plus_apow, lemma62_convergence,
    moment_inequality_check, DenseOperator, QuadratureSpec,
};
use crate::series::DiagnosticsSeries;
use crate::spectral::{
    lowest_mode, random_smooth, to_physical, to_spectral, Basis, DomainSpec, PhysicalField,
    SpectralField,
};

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// run directory, created if missing
    pub out_dir: PathBuf,
    /// CFL violations abort, and a non-negative smallness coefficient or a
    /// non-mean-free file datum fails the run
    pub strict: bool,
    /// config text echoed verbatim into the JSON artifacts
    pub config_text: Option<String>,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            out_dir: out_dir.into(),
            strict: false,
            config_text: None,
        }
    }

    /// `--out` if given, else `[output].dir` (relative to the config file),
    /// else `<root>/<config stem>` with `root` from `SQGLAB_OUT` or `out`.
    pub fn resolve_dir(
        config: &RunConfig,
        out_flag: Option<&Path>,
        env_root: Option<&Path>,
        config_path: &Path,
    ) -> PathBuf {
        if let Some(o) = out_flag {
            return o.to_path_buf();
        }
        if let Some(d) = &config.output {
            return config.base_dir.join(d);
        }
        let stem = config_path
            .file_stem()
            .map_or_else(|| "run".into(), |s| s.to_string_lossy().into_owned());
        env_root.unwrap_or(Path::new("out")).join(stem)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub passed: bool,
    pub checks: usize,
    /// names of the checks that failed
    pub failed: Vec<String>,
}

/// 0 when every check passed, 2 for numerical failures and failed checks,
/// 1 for everything else (bad config, bad parameters, I/O).
pub fn exit_code(result: &Result<RunOutcome>) -> i32 {
    match result {
        Ok(o) if o.passed => 0,
        Ok(_) => 2,
        Err(e) if e.is_numerical() => 2,
        Err(_) => 1,
    }
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    passed: bool,
    records: Value,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, records: impl Serialize) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            passed,
            records: serde_json::to_value(records)?,
        })
    }

    fn inequalities(name: impl Into<String>, records: &[InequalityRecord]) -> Result<Self> {
        Self::new(name, records.iter().all(|r| r.passed), records)
    }
}

enum Table {
    Series(DiagnosticsSeries),
    Rows {
        header: Vec<String>,
        rows: Vec<Vec<String>>,
    },
}

struct Artifacts {
    table: Table,
    results: Value,
    checks: Vec<Check>,
}

/// Run one experiment and write its artifacts into `opts.out_dir`.
///
/// A numerical failure still leaves a `summary.json` carrying the error
/// message (with its time stamp) before the error is returned.
pub fn run(config: &RunConfig, opts: &RunOptions) -> Result<RunOutcome> {
    let start = Instant::now();
    fs::create_dir_all(&opts.out_dir)?;
    let dir = &opts.out_dir;
    let result = match config.experiment {
        Experiment::Simulate => simulate(config, opts),
        Experiment::SweepAlpha | Experiment::DirichletSweep => sweep(config, opts),
        Experiment::OperatorTests => operator_tests(config),
        Experiment::EstimatesReport => estimates_report(config),
    };
    let echo = |passed: bool| {
        json!({
            "experiment": config.experiment.name(),
            "seed": config.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "configText": opts.config_text,
            "passed": passed,
        })
    };
    let timing = json!({ "wallClockSeconds": start.elapsed().as_secs_f64() });
    let art = match result {
        Ok(a) => a,
        Err(e) => {
            let mut summary = echo(false);
            summary["error"] = Value::String(e.to_string());
            emit_json(&summary, dir.join("summary.json"))?;
            emit_json(&timing, dir.join("timing.json"))?;
            return Err(e);
        }
    };
    match &art.table {
        Table::Series(s) => emit_csv(s, dir.join("series.csv"))?,
        Table::Rows { header, rows } => emit_table(dir.join("series.csv"), header, rows.clone())?,
    }
    let failed: Vec<String> = art
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();
    let passed = failed.is_empty();
    let mut summary = echo(passed);
    summary["results"] = art.results;
    summary["failedChecks"] = json!(failed);
    emit_json(&summary, dir.join("summary.json"))?;
    let mut checks = echo(passed);
    checks["checks"] = serde_json::to_value(&art.checks)?;
    emit_json(&checks, dir.join("checks.json"))?;
    emit_json(&timing, dir.join("timing.json"))?;
    Ok(RunOutcome {
        dir: dir.clone(),
        passed,
        checks: art.checks.len(),
        failed,
    })
}

fn read_field_file(path: &Path, domain: DomainSpec, strict: bool) -> Result<SpectralField> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::InvalidParameter(format!("cannot read initial datum {}: {e}", path.display()))
    })?;
    let n = domain.n();
    let values = text
        .split_whitespace()
        .map(|w| {
            w.parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad number `{w}` in {}", path.display())))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() != n * n {
        return Err(Error::InvalidParameter(format!(
            "{} holds {} values, expected {n}x{n}",
            path.display(),
            values.len()
        )));
    }
    let grid = ndarray::Array2::from_shape_vec((n, n), values).expect("length checked");
    let field = to_spectral(&PhysicalField::from_values(grid, domain)?)?;
    if !field.is_mean_free() {
        let mean = field.mean_coeff().norm() / domain.box_len();
        if strict {
            return Err(Error::NotMeanFree);
        }
        log::warn!("initial datum has mean {mean:.3e}; subtracting it");
    }
    Ok(field.remove_mean())
}

fn initial_field(config: &RunConfig, strict: bool) -> Result<SpectralField> {
    let dom = config.domain;
    Ok(match &config.initial {
        InitialCondition::RandomSmooth { amplitude, decay } => {
            random_smooth(dom, config.seed, *amplitude, *decay)
        }
        InitialCondition::Shear { amplitude } => lowest_mode(dom, *amplitude),
        InitialCondition::GaussianBump {
            center,
            width,
            amplitude,
        } => {
            let mid = dom.box_len() / 2.0;
            crate::spectral::gaussian_bump(dom, center.unwrap_or((mid, mid)), *width, *amplitude)
        }
        InitialCondition::File { path } => read_field_file(path, dom, strict)?,
    })
}

fn forcing_field(
    config: &RunConfig,
    theta0: &SpectralField,
    params: &SqgParams,
) -> Result<Option<SpectralField>> {
    let dom = config.domain;
    match &config.forcing {
        ForcingSpec::None => Ok(None),
        ForcingSpec::Stationary => params.stationary_forcing(theta0).map(Some),
        ForcingSpec::Mode { k, amplitude } => {
            let n = dom.n() as i64;
            let (k1, k2) = *k;
            let ok = match dom.basis() {
                Basis::PeriodicTorus => k1.abs() < n / 3 && k2.abs() < n / 3,
                Basis::DirichletRectangle => k1 >= 1 && k2 >= 1 && k1 < 2 * n / 3 && k2 < 2 * n / 3,
            };
            if !ok {
                return Err(Error::InvalidParameter(format!(
                    "forcing mode ({k1}, {k2}) lies outside the resolved range of an n = {n} grid"
                )));
            }
            let f = SpectralField::single_mode(dom, k1, k2, 1.0);
            let sup = to_physical(&f).max_abs();
            Ok(Some(f.scale(amplitude / sup)))
        }
    }
}

fn params_for(config: &RunConfig, alpha: f64, theta0: &SpectralField) -> Result<SqgParams> {
    let params = SqgParams::new(config.kappa, alpha, config.lambda);
    Ok(match forcing_field(config, theta0, &params)? {
        Some(f) => params.with_forcing(f),
        None => params,
    })
}

fn simulate(config: &RunConfig, opts: &RunOptions) -> Result<Artifacts> {
    let dom = config.domain;
    let theta0 = initial_field(config, opts.strict)?;
    let params = params_for(config, config.alpha, &theta0)?;
    params.validate(&dom)?;
    let dt = match config.dt {
        Some(dt) => dt,
        None => default_dt(&theta0)?.min(config.t_end),
    };
    let mut stepper_config = StepperConfig::new(dt, config.t_end)
        .sample_every(config.sample_every)
        .scheme(config.scheme);
    stepper_config.cfl_abort = config.cfl_abort || opts.strict;
    let stepper = Stepper::new(&params, &stepper_config, &dom)?;
    let initial = SimulationState::new(theta0);

    let qs = config.monitors.q.clone();
    let cutoffs = config
        .monitors
        .tail
        .iter()
        .map(|&k| CutoffSpec::new(k))
        .collect::<Result<Vec<_>>>()?;
    let lq = LqMonitor { qs: qs.clone() };
    let sobolev = SobolevMonitor {
        ss: config.monitors.sobolev.clone(),
    };
    let tail = TailMonitor { cutoffs };
    let slack = SlackMonitor::new(&initial, &qs);
    let monitors: [&dyn Monitor; 4] = [&lq, &sobolev, &tail, &slack];
    let mut series = DiagnosticsSeries::new(monitors.iter().flat_map(|m| m.columns()).collect());

    let forcing = params.forcing.as_ref();
    let mut maxp = vec![Vec::new(); qs.len()];
    let mut monotone = vec![Vec::new(); qs.len()];
    let mut linf = Vec::new();
    let mut damped = Vec::new();
    let l2_0 = initial.theta.norm_l2();
    let mut prev: Option<SimulationState> = None;
    let last = stepper.run(&initial, |s| {
        series.push(s.t, monitors.iter().flat_map(|m| m.sample(s)).collect())?;
        let here = std::slice::from_ref(s);
        for (i, &q) in qs.iter().enumerate() {
            if forcing.is_none() || q.is_finite() {
                maxp[i].extend(max_principle_monitor(here, q, forcing, &initial)?);
            }
            if let (None, Some(p)) = (forcing, &prev) {
                monotone[i].extend(monotone_norm_records(&[p.clone(), s.clone()], q)?);
            }
        }
        linf.extend(linf_monitor(here, forcing, &initial)?);
        if forcing.is_none() && params.lambda > 0.0 {
            let bound = l2_0 * l2_0 * (-params.lambda * (s.t - initial.t)).exp();
            let l2 = s.theta.norm_l2();
            damped.push(InequalityRecord::with_tol(s.t, l2 * l2, bound * (1.0 + 1e-6), 0.0));
        }
        prev = Some(s.clone());
        Ok(())
    })?;

    let mut checks = Vec::new();
    for (i, q) in qs.iter().enumerate() {
        if !maxp[i].is_empty() {
            checks.push(Check::inequalities(format!("max_principle_L{q}"), &maxp[i])?);
        }
        if forcing.is_none() {
            checks.push(Check::inequalities(format!("monotone_L{q}"), &monotone[i])?);
        }
    }
    checks.push(Check::inequalities("linf_bound", &linf)?);
    if !damped.is_empty() {
        checks.push(Check::inequalities("damped_l2_decay", &damped)?);
    }
    let final_row: serde_json::Map<String, Value> = series
        .columns()
        .iter()
        .cloned()
        .zip(series.rows().last().cloned().unwrap_or_default().into_iter().map(Value::from))
        .collect();
    let results = json!({
        "dt": dt,
        "steps": stepper_config.num_steps(),
        "samples": series.len(),
        "tFinal": last.t,
        "final": final_row,
    });
    Ok(Artifacts {
        table: Table::Series(series),
        results,
        checks,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PairCheck {
    alpha_i: f64,
    alpha_j: f64,
    t: f64,
    #[serde(flatten)]
    check: InterpolationCheck,
}

const INTERPOLATION_EPSILON: f64 = 0.25;

fn sweep(config: &RunConfig, opts: &RunOptions) -> Result<Artifacts> {
    let dom = config.domain;
    if config.forcing == ForcingSpec::Stationary {
        return Err(Error::InvalidParameter(
            "stationary forcing depends on alpha and is not available in sweeps".into(),
        ));
    }
    let theta0 = initial_field(config, opts.strict)?;
    let last_alpha = *config.alphas.last().expect("validated non-empty");
    let params = params_for(config, last_alpha, &theta0)?;
    let mut sweep_config = AlphaSweepConfig::new(config.alphas.clone(), theta0, params.clone(), config.t_end);
    sweep_config.dt = config.dt;
    sweep_config.sample_every = config.sample_every;
    sweep_config.scheme = config.scheme;
    sweep_config.cfl_abort = config.cfl_abort || opts.strict;
    let result = match config.experiment {
        Experiment::DirichletSweep => dirichlet_sweep(&sweep_config)?,
        _ => run_sweep(&sweep_config)?,
    };
    let SweepResult { report, runs } = &result;
    let mut checks = Vec::new();

    // convergence trend toward the last exponent
    let smallness = report.smallness_coeff;
    checks.push(Check::new(
        "smallness",
        smallness < 0.0 || !opts.strict,
        json!({ "smallnessCoeff": smallness, "strict": opts.strict }),
    )?);
    let mut exponent = None;
    let degenerate;
    if smallness < 0.0 {
        let trend = pairwise_bound_check(report, -smallness, 1.0)?;
        exponent = trend.exponent;
        degenerate = trend.degenerate;
        checks.push(Check::new("pairwise_trend", trend.passed, &trend)?);
    } else {
        degenerate = report.pairwise.iter().flatten().all(|&d| d <= 1e-10);
        let monotone = report.distance_to_last_is_decreasing();
        checks.push(Check::new(
            "pairwise_trend",
            degenerate || monotone,
            json!({ "monotone": monotone, "degenerate": degenerate }),
        )?);
    }

    // the sup-in-time distance matrix is a metric on the runs
    let p = &report.pairwise;
    let m = p.len();
    let mut metric_ok = true;
    for i in 0..m {
        metric_ok &= p[i][i] == 0.0;
        for j in 0..m {
            metric_ok &= (p[i][j] - p[j][i]).abs() <= 1e-10;
            for k in 0..m {
                metric_ok &= p[i][k] <= p[i][j] + p[j][k] + 1e-10;
            }
        }
    }
    checks.push(Check::new("pairwise_metric", metric_ok, json!({ "pairwise": p }))?);

    // interpolation upgrades on every sampled pair
    let l43 = L43Constants::calibrate(&dom);
    let mut upgrade = Vec::new();
    let mut l43_records = Vec::new();
    for (i, a) in runs.iter().enumerate() {
        for b in &runs[i + 1..] {
            for (sa, sb) in a.states.iter().zip(&b.states) {
                let pair = |check| PairCheck {
                    alpha_i: a.alpha,
                    alpha_j: b.alpha,
                    t: sa.t,
                    check,
                };
                upgrade.push(pair(interpolation_upgrade(&sa.theta, &sb.theta, INTERPOLATION_EPSILON)?));
                l43_records.push(pair(l43_check(&sa.theta, &sb.theta, &l43)?));
            }
        }
    }
    checks.push(Check::new(
        "interpolation_upgrade",
        upgrade.iter().all(|r| r.check.passed),
        json!({ "epsilon": INTERPOLATION_EPSILON, "pairs": upgrade }),
    )?);
    checks.push(Check::new(
        "l43_interpolation",
        l43_records.iter().all(|r| r.check.passed),
        json!({ "mu": l43.mu, "c": l43.c, "pairs": l43_records }),
    )?);

    // zero trace of every sampled state on the sine basis
    if dom.basis() == Basis::DirichletRectangle {
        let mut worst: f64 = 0.0;
        for run in runs {
            for s in &run.states {
                let v = to_physical(&s.theta);
                let v = v.values();
                worst = worst.max(v.row(0).iter().chain(v.column(0).iter()).fold(0.0, |m, x| m.max(x.abs())));
            }
        }
        checks.push(Check::new("boundary_trace", worst == 0.0, json!({ "maxAbs": worst }))?);
    }

    // residual of the critical weak form shrinks toward the last exponent
    let tests: Vec<SpectralField> = match dom.basis() {
        Basis::PeriodicTorus => vec![(1, 0), (0, 1), (1, 1)],
        Basis::DirichletRectangle => vec![(1, 1), (1, 2), (2, 1)],
    }
    .into_iter()
    .map(|(k1, k2)| SpectralField::single_mode(dom, k1, k2, 1.0))
    .collect();
    if report.samples >= 3 {
        let residuals = runs
            .iter()
            .map(|r| {
                let worst = weak_form_residual(&r.states, &tests, &params.with_alpha(r.alpha))?
                    .into_iter()
                    .fold(0.0f64, f64::max);
                Ok((r.alpha, worst))
            })
            .collect::<Result<Vec<_>>>()?;
        let first = residuals.first().map_or(0.0, |r| r.1);
        let last = residuals.last().map_or(0.0, |r| r.1);
        let passed = degenerate || last < first;
        let records: Vec<Value> = residuals
            .iter()
            .map(|(a, r)| json!({ "alpha": a, "residual": r }))
            .collect();
        checks.push(Check::new(
            "weak_form_residual",
            passed,
            json!({ "degenerate": degenerate, "residuals": records }),
        )?);
    }

    let mut results = serde_json::to_value(report)?;
    results["exponent"] = json!(exponent);
    let header = ["alpha_i", "alpha_j", "t", "h_minus_half"].map(String::from).to_vec();
    let rows = result
        .pair_rows()?
        .into_iter()
        .map(|r| [r.alpha_i, r.alpha_j, r.t, r.h_minus_half].map(format_float).to_vec())
        .collect();
    Ok(Artifacts {
        table: Table::Rows { header, rows },
        results,
        checks,
    })
}

/// `check,parameter,value` rows.
struct Rows(Vec<Vec<String>>);

impl Rows {
    fn push(&mut self, check: &str, parameter: f64, value: f64) {
        self.0.push(vec![check.to_string(), format_float(parameter), format_float(value)]);
    }

    fn into_table(self) -> Table {
        Table::Rows {
            header: ["check", "parameter", "value"].map(String::from).to_vec(),
            rows: self.0,
        }
    }
}

fn relative_error(x: &DVector<f64>, reference: &DVector<f64>) -> f64 {
    (x - reference).norm() / reference.norm().max(f64::MIN_POSITIVE)
}

fn gaussian_vector(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

fn strictly_decreasing(v: &[(f64, f64)]) -> bool {
    v.windows(2).all(|w| w[1].1 < w[0].1)
}

fn operator_tests(config: &RunConfig) -> Result<Artifacts> {
    let spec = &config.operator;
    let quad = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Rows(Vec::new());
    let mut checks = Vec::new();

    // quadratures against the eigendecomposition
    let diag: Vec<f64> = (1..=8).map(|i| (i * i) as f64).collect();
    let cases = [
        ("scalar", DenseOperator::scalar(4.0)?),
        ("diagonal", DenseOperator::diagonal(&diag)?),
        ("laplacian_1d", DenseOperator::laplacian_1d(spec.laplacian_n)?),
        ("random_spd", DenseOperator::random_spd(spec.spd_n, spec.cond, rng.random())?),
    ];
    let mut exact = Vec::new();
    for (name, a) in &cases {
        let phi = gaussian_vector(a.dim(), &mut rng);
        for alpha in [0.25, 0.5, 0.75] {
            let x = balakrishnan_neg_power(a, alpha, &phi, &quad)?;
            let err = relative_error(&x, &a.eig_power(-alpha, &phi)?);
            rows.push(&format!("balakrishnan_{name}"), alpha, err);
            exact.push(json!({ "case": name, "operator": "neg_power", "alpha": alpha, "error": err, "passed": err <= 1e-6 }));
        }
        for alpha in [0.25, 0.5, 0.75, 1.0] {
            let x = inv_i_plus_apow(a, alpha, &phi, &quad)?;
            let err = relative_error(&x, &a.spectral_apply(&phi, |mu| 1.0 / (1.0 + mu.powf(alpha))));
            rows.push(&format!("inv_i_plus_apow_{name}"), alpha, err);
            exact.push(json!({ "case": name, "operator": "inv_i_plus_apow", "alpha": alpha, "error": err, "passed": err <= 1e-6 }));
        }
    }
    let one = DVector::from_element(1, 1.0);
    let sqrt4 = balakrishnan_neg_power(&DenseOperator::scalar(4.0)?, 0.5, &one, &quad)?[0];
    exact.push(json!({ "case": "4^(-1/2)", "value": sqrt4, "passed": (sqrt4 - 0.5).abs() <= 1e-10 }));
    for alpha in [0.25, 0.5, 0.75] {
        let half = inv_i_plus_apow(&DenseOperator::scalar(1.0)?, alpha, &one, &quad)?[0];
        exact.push(json!({ "case": "(1+1)^(-1)", "alpha": alpha, "value": half, "passed": (half - 0.5).abs() <= 1e-10 }));
    }
    let exact_ok = exact.iter().all(|r| r["passed"] == json!(true));
    checks.push(Check::new("quadrature_exactness", exact_ok, &exact)?);

    // convergence of the resolvent family toward α = ½
    let lap = DenseOperator::laplacian_1d(spec.laplacian_n)?;
    let psi = gaussian_vector(lap.dim(), &mut rng);
    let phi = lap.apply(&psi);
    let alphas = [0.75, 0.7, 0.65, 0.6, 0.55, 0.52, 0.51];
    let conv = lemma62_convergence(&lap, &phi, &alphas, &quad, 1.0)?;
    for &(a, e) in &conv {
        rows.push("resolvent_convergence", a, e);
    }
    let conv_ok = strictly_decreasing(&conv) && conv[conv.len() - 1].1 <= conv[0].1 / 5.0;
    checks.push(Check::new("resolvent_convergence", conv_ok, &conv)?);

    // (I − A^{−β})φ → 0 as β → 0
    let a = DenseOperator::random_spd(spec.spd_n, spec.cond, rng.random())?;
    let phi = gaussian_vector(a.dim(), &mut rng);
    let betas = [0.25, 0.1, 0.01, 1e-3, 1e-4];
    let decay = identity_minus_negpower_decay(&a, &phi, &betas, &quad)?;
    for &(b, v) in &decay {
        rows.push("negpower_decay", b, v / phi.norm());
    }
    let decay_ok = strictly_decreasing(&decay) && decay[decay.len() - 1].1 <= 1e-3 * phi.norm();
    checks.push(Check::new(
        "negpower_decay",
        decay_ok,
        json!({ "phiNorm": phi.norm(), "cond": spec.cond, "decay": decay }),
    )?);

    // moment inequality over random operators, vectors and exponents
    let mut moment = Vec::new();
    for _ in 0..spec.trials {
        let n = rng.random_range(2..=8);
        let cond = 10f64.powf(rng.random_range(0.0..4.0));
        let a = DenseOperator::random_spd(n, cond, rng.random())?;
        let phi = gaussian_vector(n, &mut rng);
        let beta = rng.random_range(0.51..0.99);
        let r = moment_inequality_check(&a, &phi, beta)?;
        moment.push(json!({ "n": n, "cond": cond, "beta": beta, "lhs": r.lhs, "rhs": r.rhs, "m": r.m, "passed": r.passed }));
        rows.push("moment_ratio", beta, r.lhs / r.rhs);
    }
    let moment_ok = moment.iter().all(|r| r["passed"] == json!(true));
    checks.push(Check::new("moment_inequality", moment_ok, &moment)?);

    let results = json!({
        "resolventConvergence": conv,
        "negpowerDecay": decay,
        "momentTrials": spec.trials,
    });
    Ok(Artifacts {
        table: rows.into_table(),
        results,
        checks,
    })
}

fn estimates_report(config: &RunConfig) -> Result<Artifacts> {
    let dom = config.domain;
    if !dom.is_torus() {
        return Err(Error::TorusOnly("estimates report"));
    }
    let spec = &config.estimates;
    let decay = match config.initial {
        InitialCondition::RandomSmooth { decay, .. } => decay,
        _ => 3.0,
    };
    let seeds: Vec<u64> = (0..spec.fields as u64).map(|i| config.seed.wrapping_add(i)).collect();
    // (seed, alpha, min slack, scale) and (seed, q, alpha, integral)
    type Pointwise = Vec<(u64, f64, f64, f64)>;
    type Integral = Vec<(u64, f64, f64, f64)>;
    let per_field = seeds
        .par_iter()
        .map(|&seed| -> Result<(Pointwise, Integral)> {
            let phi = random_smooth(dom, seed, 1.0, decay);
            let mut pw = Vec::new();
            let mut int = Vec::new();
            for &alpha in &spec.alphas {
                pw.push((seed, alpha, cordoba_pointwise_check(&phi, alpha)?, cordoba_scale(&phi, alpha)?));
                for &q in &spec.q {
                    int.push((seed, q, alpha, positivity_integral_check(&phi, q, alpha)?));
                }
            }
            Ok((pw, int))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (pointwise, integrals): (Vec<_>, Vec<_>) = per_field.into_iter().unzip();
    let pointwise: Pointwise = pointwise.concat();
    let integrals: Integral = integrals.concat();

    let mut rows = Rows(Vec::new());
    let mut checks = Vec::new();
    let pw_records: Vec<Value> = pointwise
        .iter()
        .map(|&(seed, alpha, min, scale)| {
            json!({ "seed": seed, "alpha": alpha, "minSlack": min, "scale": scale, "passed": min >= -1e-8 * scale })
        })
        .collect();
    for &(_, alpha, min, scale) in &pointwise {
        rows.push("cordoba_min_slack", alpha, min / scale.max(f64::MIN_POSITIVE));
    }
    let pw_ok = pw_records.iter().all(|r| r["passed"] == json!(true));
    checks.push(Check::new("cordoba_pointwise", pw_ok, &pw_records)?);

    // closed form: φ = cos x₁ at α = 1 gives 2 − 2cos²x₁ (on the unit-wavenumber box)
    let unit = DomainSpec::torus(dom.n())?;
    let c = cordoba_field(&lowest_mode(unit, 1.0), 1.0)?;
    let fine = *c.domain();
    let expected = PhysicalField::from_fn(fine, |x1, _| 2.0 - 2.0 * x1.cos().powi(2));
    let err = c.sub(&expected)?.max_abs();
    checks.push(Check::new("cordoba_closed_form", err <= 1e-10, json!({ "maxError": err }))?);

    let int_records: Vec<Value> = integrals
        .iter()
        .map(|&(seed, q, alpha, v)| {
            json!({ "seed": seed, "q": q, "alpha": alpha, "integral": v, "passed": v >= -1e-8 })
        })
        .collect();
    for &(_, q, _, v) in &integrals {
        rows.push("positivity_integral", q, v);
    }
    let int_ok = int_records.iter().all(|r| r["passed"] == json!(true));
    checks.push(Check::new("positivity_integral", int_ok, &int_records)?);

    let min_pw = pointwise
        .iter()
        .map(|p| p.2 / p.3.max(f64::MIN_POSITIVE))
        .fold(f64::INFINITY, f64::min);
    let min_int = integrals.iter().map(|p| p.3).fold(f64::INFINITY, f64::min);
    let results = json!({
        "fields": spec.fields,
        "alphas": spec.alphas,
        "q": spec.q,
        "minRelativeCordobaSlack": min_pw,
        "minPositivityIntegral": min_int,
        "closedFormError": err,
    });
    Ok(Artifacts {
        table: rows.into_table(),
        results,
        checks,
    })
}
