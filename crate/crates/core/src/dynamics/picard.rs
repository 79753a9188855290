use ndarray::{Array2, Zip};
use num_complex::Complex64;

use super::nonlinear::transport_with_speed;
use super::{SimulationState, SqgParams};
use crate::error::{Error, Result};
use crate::spectral::SpectralField;

const DEFAULT_SUBSTEPS: usize = 64;
const DIVERGED_ABOVE: f64 = 1e-3;
const CONVERGED_BELOW: f64 = 1e-13;

/// Quadrature weights for `∫₀^{i h} g` on the nodes `0..=i` (plus node 2 when
/// `i = 1`): composite Simpson, with a trailing 3/8 panel for odd counts.
fn weights(i: usize, h: f64) -> Vec<(usize, f64)> {
    match i {
        0 => vec![],
        1 => vec![(0, 5.0 / 12.0 * h), (1, 8.0 / 12.0 * h), (2, -h / 12.0)],
        _ => {
            let mut w = vec![0.0; i + 1];
            let simpson_end = if i % 2 == 0 { i } else { i - 3 };
            for p in (0..simpson_end).step_by(2) {
                w[p] += h / 3.0;
                w[p + 1] += 4.0 * h / 3.0;
                w[p + 2] += h / 3.0;
            }
            if i % 2 == 1 {
                let s = simpson_end;
                for (o, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
                    w[s + o] += 3.0 * h / 8.0 * c;
                }
            }
            w.into_iter().enumerate().collect()
        }
    }
}

/// `θ(T)` from fixed-point iteration on the mild (Duhamel) form with
/// `DEFAULT_SUBSTEPS` quadrature intervals. Short times only.
pub fn picard_reference(
    state: &SimulationState,
    params: &SqgParams,
    t_end: f64,
    iterations: usize,
) -> Result<SimulationState> {
    picard_reference_with(state, params, t_end, iterations, DEFAULT_SUBSTEPS)
}

pub fn picard_reference_with(
    state: &SimulationState,
    params: &SqgParams,
    t_end: f64,
    iterations: usize,
    substeps: usize,
) -> Result<SimulationState> {
    state.validate()?;
    let dom = *state.theta.domain();
    params.validate(&dom)?;
    if !(t_end > 0.0 && t_end.is_finite()) || substeps < 2 || iterations == 0 {
        return Err(Error::InvalidParameter(
            "Picard reference needs t_end > 0, substeps >= 2 and iterations >= 1".into(),
        ));
    }
    let h = t_end / substeps as f64;
    let n = dom.n();
    let symbol = Array2::from_shape_fn((n, n), |(i1, i2)| {
        params.linear_symbol(dom.wavevector(i1, i2).magnitude())
    });
    let semigroup = |tau: f64, f: &Array2<Complex64>| {
        let mut out = f.clone();
        Zip::from(&mut out)
            .and(&symbol)
            .for_each(|c, &a| *c *= (-a * tau).exp());
        out
    };
    let free: Vec<Array2<Complex64>> = (0..=substeps)
        .map(|i| semigroup(i as f64 * h, state.theta.coeffs()))
        .collect();
    let mut path = free.clone();
    let mut change = f64::INFINITY;
    for _ in 0..iterations {
        let forcing: Vec<Array2<Complex64>> = path
            .iter()
            .map(|c| {
                let (mut nl, _) = transport_with_speed(&SpectralField::from_raw(c.clone(), dom))?;
                if let Some(f) = &params.forcing {
                    nl = nl.add(f)?;
                }
                Ok(nl.into_coeffs())
            })
            .collect::<Result<_>>()?;
        let mut next = free.clone();
        for (i, out) in next.iter_mut().enumerate().skip(1) {
            for (j, w) in weights(i, h) {
                let lag = (i as f64 - j as f64) * h;
                Zip::from(&mut *out)
                    .and(&forcing[j])
                    .and(&symbol)
                    .for_each(|o, &g, &a| *o += g * (w * (-a * lag).exp()));
            }
        }
        let scale = next
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        change = next
            .iter()
            .zip(&path)
            .map(|(a, b)| {
                a.iter()
                    .zip(b.iter())
                    .map(|(x, y)| (x - y).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0f64, f64::max)
            / scale;
        path = next;
        if !change.is_finite() {
            break;
        }
        if change < CONVERGED_BELOW {
            break;
        }
    }
    if !(change <= DIVERGED_ABOVE) {
        return Err(Error::PicardDiverged {
            change,
            iterations,
        });
    }
    let theta = SpectralField::from_raw(path.pop().expect("nonempty path"), dom);
    Ok(SimulationState {
        t: state.t + t_end,
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_integrate_quadratics_exactly() {
        let h = 0.1;
        for i in 1..9 {
            let w = weights(i, h);
            let q: f64 = w.iter().map(|&(j, c)| c * (j as f64 * h).powi(2)).sum();
            let exact = (i as f64 * h).powi(3) / 3.0;
            assert!((q - exact).abs() < 1e-14, "i = {i}: {q} vs {exact}");
        }
    }
}
