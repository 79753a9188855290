use std::f64::consts::LN_10;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadratureRule {
    /// Gauss–Legendre panels in `u = ln λ`, one per decade (refined around
    /// interior peaks).
    GaussLegendreLog,
    /// Uniform trapezoid in `u = ln λ`.
    TrapezoidLog,
}

/// Discretisation of `∫₀^∞ g(λ) dλ`.
///
/// Panels are aligned to decades on either side of the split point, which
/// mirrors the `(0, L) ∪ (L, ∞)` split of the resolvent estimates. The
/// truncation interval is derived per integrand from analytic head and tail
/// bounds so that each dropped piece is below `truncation_tol·‖φ‖`;
/// `lambda_max` caps the upper end if set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub split: f64,
    pub nodes_per_decade: usize,
    pub lambda_max: Option<f64>,
    pub rule: QuadratureRule,
    pub truncation_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            split: 10.0,
            nodes_per_decade: 20,
            lambda_max: None,
            rule: QuadratureRule::GaussLegendreLog,
            truncation_tol: 1e-14,
        }
    }
}

impl QuadratureSpec {
    pub fn with_nodes_per_decade(mut self, n: usize) -> Self {
        self.nodes_per_decade = n;
        self
    }

    pub fn with_rule(mut self, rule: QuadratureRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.split > 1.0 && self.split.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "split point must exceed 1, got {}",
                self.split
            )));
        }
        if self.nodes_per_decade < 20 {
            return Err(Error::InvalidParameter(format!(
                "nodes per decade must be at least 20, got {}",
                self.nodes_per_decade
            )));
        }
        if let Some(m) = self.lambda_max {
            if !(m > self.split) {
                return Err(Error::InvalidParameter(format!(
                    "lambda_max = {m} must exceed the split point {}",
                    self.split
                )));
            }
        }
        if !(self.truncation_tol > 0.0) {
            return Err(Error::InvalidParameter("truncation tolerance must be positive".into()));
        }
        Ok(())
    }

    /// `∫_lo^hi g(λ) dλ` with `g` vector valued. `breaks` are extra panel
    /// boundaries (in λ) for the Gauss–Legendre rule. Summation order is
    /// fixed, so results are bit-reproducible.
    pub(crate) fn integrate(
        &self,
        lo: f64,
        hi: f64,
        breaks: &[f64],
        g: impl Fn(f64) -> DVector<f64>,
    ) -> DVector<f64> {
        let hi = self.lambda_max.map_or(hi, |m| hi.min(m));
        let (a, b) = (lo.ln(), hi.ln());
        let mut acc: Option<DVector<f64>> = None;
        let mut add = |u: f64, w: f64| {
            let lam = u.exp();
            let v = g(lam) * (w * lam);
            match &mut acc {
                Some(s) => *s += v,
                None => acc = Some(v),
            }
        };
        match self.rule {
            QuadratureRule::GaussLegendreLog => {
                let npd = self.nodes_per_decade;
                let rule = GaussLegendre::new(NonZeroUsize::new(npd).expect("validated"));
                for (p0, p1) in self.panels(a, b, breaks) {
                    let reps = ((p1 - p0) / LN_10).ceil().max(1.0) as usize;
                    let width = (p1 - p0) / reps as f64;
                    for r in 0..reps {
                        let (c0, c1) = (p0 + r as f64 * width, p0 + (r + 1) as f64 * width);
                        let (mid, half) = (0.5 * (c0 + c1), 0.5 * (c1 - c0));
                        for &(x, w) in rule.as_node_weight_pairs() {
                            add(mid + half * x, half * w);
                        }
                    }
                }
            }
            QuadratureRule::TrapezoidLog => {
                let h = LN_10 / self.nodes_per_decade as f64;
                let origin = self.split.ln();
                let j0 = ((a - origin) / h).floor() as i64;
                let j1 = ((b - origin) / h).ceil() as i64;
                for j in j0..=j1 {
                    let w = if j == j0 || j == j1 { 0.5 * h } else { h };
                    add(origin + j as f64 * h, w);
                }
            }
        }
        acc.expect("at least one node")
    }

    fn panels(&self, a: f64, b: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
        let origin = self.split.ln();
        let mut cuts = vec![a, b];
        let j0 = ((a - origin) / LN_10).ceil() as i64;
        let j1 = ((b - origin) / LN_10).floor() as i64;
        cuts.extend((j0..=j1).map(|j| origin + j as f64 * LN_10));
        cuts.extend(breaks.iter().map(|l| l.ln()));
        cuts.retain(|u| *u >= a && *u <= b);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }
}
