use rayon::prelude::*;
use serde::Serialize;

use super::diagnostics::{h_minus_half_distance, smallness_coefficient, DiscreteConstants};
use crate::dynamics::{default_dt, trajectory, Scheme, SimulationState, SqgParams, StepperConfig};
use crate::error::{Error, Result};
use crate::spectral::{lq_norm, to_physical, Basis, SpectralField};

/// The default exponent list, decreasing toward ½.
pub const DEFAULT_ALPHAS: [f64; 6] = [0.75, 0.65, 0.6, 0.55, 0.52, 0.51];

#[derive(Debug, Clone)]
pub struct AlphaSweepConfig {
    /// strictly decreasing, in `(½, 1]`, last at least `0.505`
    pub alphas: Vec<f64>,
    pub theta0: SpectralField,
    /// κ, λ and forcing; the exponent is replaced per run
    pub params: SqgParams,
    pub t_end: f64,
    /// shared step; defaults to the CFL-based step of `theta0`
    pub dt: Option<f64>,
    pub sample_every: usize,
    pub scheme: Scheme,
    /// abort every run on a CFL violation instead of warning
    pub cfl_abort: bool,
}

impl AlphaSweepConfig {
    pub fn new(alphas: Vec<f64>, theta0: SpectralField, params: SqgParams, t_end: f64) -> Self {
        Self {
            alphas,
            theta0,
            params,
            t_end,
            dt: None,
            sample_every: 1,
            scheme: Scheme::Etd2Rk,
            cfl_abort: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::InvalidParameter("alpha list is empty".into()));
        }
        if self.alphas.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::InvalidParameter(
                "alphas must be strictly decreasing".into(),
            ));
        }
        let last = *self.alphas.last().expect("non-empty");
        if last < 0.505 {
            return Err(Error::InvalidParameter(format!(
                "last alpha must be at least 0.505, got {last}"
            )));
        }
        if self.alphas[0] > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "alphas must not exceed 1, got {}",
                self.alphas[0]
            )));
        }
        if self.alphas[0] > 0.75 {
            log::warn!(
                "alpha = {} lies outside the uniform-estimate window (1/2, 3/4]",
                self.alphas[0]
            );
        }
        let dom = self.theta0.domain();
        self.params.with_alpha(last).validate(dom)?;
        self.stepper()?.validate()
    }

    fn stepper(&self) -> Result<StepperConfig> {
        let dt = match self.dt {
            Some(dt) => dt,
            None => default_dt(&self.theta0)?.min(self.t_end.max(f64::MIN_POSITIVE)),
        };
        let mut config = StepperConfig::new(dt, self.t_end)
            .sample_every(self.sample_every)
            .scheme(self.scheme);
        config.cfl_abort = self.cfl_abort;
        Ok(config)
    }
}

/// One solution of the sweep, sampled on the shared time grid.
#[derive(Debug, Clone)]
pub struct AlphaRun {
    pub alpha: f64,
    pub states: Vec<SimulationState>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairBound {
    pub alpha_i: f64,
    pub alpha_j: f64,
    pub delta_alpha: f64,
    pub sup_distance: f64,
    /// `sup_distance / Δα`
    pub rate: f64,
}

/// Long-format row: distance of two runs at one sample time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSample {
    pub alpha_i: f64,
    pub alpha_j: f64,
    pub t: f64,
    pub h_minus_half: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConvergenceReport {
    pub alphas: Vec<f64>,
    pub dt: f64,
    pub t_end: f64,
    pub samples: usize,
    /// `sup_t ‖θ^{α_i}(t) − θ^{α_j}(t)‖_{H^{-1/2}}`
    pub pairwise: Vec<Vec<f64>>,
    /// column of `pairwise` against the last exponent
    pub distance_to_last: Vec<f64>,
    /// `sup_t ‖θ^{α_i}(t)‖_∞`
    pub sup_linf: Vec<f64>,
    /// largest smallness coefficient over all pairs; negative when the
    /// smallness hypothesis holds for every pair
    pub smallness_coeff: f64,
    pub constants: Vec<DiscreteConstants>,
    pub per_pair: Vec<PairBound>,
}

impl ConvergenceReport {
    /// `distance_to_last[i]` strictly decreasing in `i` over `i < last`.
    pub fn distance_to_last_is_decreasing(&self) -> bool {
        let d = &self.distance_to_last;
        d.len() < 2 || d[..d.len() - 1].windows(2).all(|w| w[1] < w[0])
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub report: ConvergenceReport,
    pub runs: Vec<AlphaRun>,
}

impl SweepResult {
    /// Every `(α_i, α_j, t)` distance with `i < j`.
    pub fn pair_rows(&self) -> Result<Vec<PairSample>> {
        let mut rows = Vec::new();
        for (i, a) in self.runs.iter().enumerate() {
            for b in &self.runs[i + 1..] {
                for (sa, sb) in a.states.iter().zip(&b.states) {
                    rows.push(PairSample {
                        alpha_i: a.alpha,
                        alpha_j: b.alpha,
                        t: sa.t,
                        h_minus_half: h_minus_half_distance(&sa.theta, &sb.theta)?,
                    });
                }
            }
        }
        Ok(rows)
    }
}

/// Integrate every exponent (in parallel) with a shared step and sampling,
/// then assemble the report in list order.
pub fn run_sweep(config: &AlphaSweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let stepper = config.stepper()?;
    let initial = SimulationState::new(config.theta0.clone());
    let runs = config
        .alphas
        .par_iter()
        .map(|&alpha| {
            trajectory(&initial, &config.params.with_alpha(alpha), &stepper)
                .map(|states| AlphaRun { alpha, states })
                .map_err(|e| Error::SweepRun {
                    alpha,
                    source: Box::new(e),
                })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let report = assemble(config, &stepper, &runs)?;
    if report.smallness_coeff >= 0.0 {
        log::warn!(
            "smallness coefficient {:.3e} is non-negative; distances are not expected to vanish",
            report.smallness_coeff
        );
    }
    Ok(SweepResult { report, runs })
}

/// [`run_sweep`] restricted to the sine basis.
pub fn dirichlet_sweep(config: &AlphaSweepConfig) -> Result<SweepResult> {
    if config.theta0.domain().basis() != Basis::DirichletRectangle {
        return Err(Error::InvalidParameter(
            "dirichlet sweep needs a sine-basis datum".into(),
        ));
    }
    run_sweep(config)
}

fn assemble(config: &AlphaSweepConfig, stepper: &StepperConfig, runs: &[AlphaRun]) -> Result<ConvergenceReport> {
    let p = runs.len();
    let pair_sups: Vec<((usize, usize), f64)> = (0..p)
        .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let sup = runs[i]
                .states
                .iter()
                .zip(&runs[j].states)
                .map(|(a, b)| h_minus_half_distance(&a.theta, &b.theta))
                .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))?;
            Ok(((i, j), sup))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut pairwise = vec![vec![0.0; p]; p];
    for &((i, j), d) in &pair_sups {
        pairwise[i][j] = d;
        pairwise[j][i] = d;
    }
    let sup_linf = runs
        .iter()
        .map(|r| {
            r.states
                .iter()
                .map(|s| lq_norm(&to_physical(&s.theta), f64::INFINITY))
                .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))
        })
        .collect::<Result<Vec<_>>>()?;
    let dom = config.theta0.domain();
    let constants: Vec<DiscreteConstants> = config
        .alphas
        .iter()
        .map(|&a| DiscreteConstants::for_domain(dom, a, config.params.kappa))
        .collect();
    let mut smallness = f64::NEG_INFINITY;
    for i in 0..p {
        for j in i + 1..p {
            smallness = smallness.max(smallness_coefficient(sup_linf[i], sup_linf[j], &constants[i]));
        }
    }
    if p == 1 {
        smallness = smallness_coefficient(sup_linf[0], sup_linf[0], &constants[0]);
    }
    let per_pair = pair_sups
        .iter()
        .map(|&((i, j), d)| {
            let delta = config.alphas[i] - config.alphas[j];
            PairBound {
                alpha_i: config.alphas[i],
                alpha_j: config.alphas[j],
                delta_alpha: delta,
                sup_distance: d,
                rate: d / delta,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        alphas: config.alphas.clone(),
        dt: stepper.dt,
        t_end: config.t_end,
        samples: runs.first().map_or(0, |r| r.states.len()),
        distance_to_last: pairwise.iter().map(|row| row[p - 1]).collect(),
        pairwise,
        sup_linf,
        smallness_coeff: smallness,
        constants,
        per_pair,
    })
}
