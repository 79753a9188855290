use ndarray::Array2;

use super::SqgParams;
use crate::spectral::DomainSpec;

/// Per-mode tables for one step size.
#[derive(Debug, Clone)]
pub struct EtdCoefficients {
    pub dt: f64,
    /// `e^{−a dt}`
    pub decay: Array2<f64>,
    /// `φ₁(−a dt) = (1 − e^{−a dt})/(a dt)`
    pub phi1: Array2<f64>,
    /// `φ₂(−a dt) = (e^{−a dt} − 1 + a dt)/(a dt)²`
    pub phi2: Array2<f64>,
}

const PHI1_SERIES_BELOW: f64 = 1e-4;
const PHI2_SERIES_BELOW: f64 = 1e-2;

/// `(e^z, φ₁(z), φ₂(z))` with Taylor fallbacks near `z = 0`.
pub fn phi_functions(z: f64) -> (f64, f64, f64) {
    let e = z.exp();
    let phi1 = if z.abs() < PHI1_SERIES_BELOW {
        1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        z.exp_m1() / z
    };
    let phi2 = if z.abs() < PHI2_SERIES_BELOW {
        // Σ z^j / (j+2)!
        let mut term = 0.5;
        let mut sum = 0.0;
        for j in 0..8 {
            sum += term;
            term *= z / (j + 3) as f64;
        }
        sum
    } else {
        (z.exp_m1() - z) / (z * z)
    };
    (e, phi1, phi2)
}

pub fn etd_coefficients(params: &SqgParams, domain: &DomainSpec, dt: f64) -> EtdCoefficients {
    let n = domain.n();
    let mut decay = Array2::zeros((n, n));
    let mut phi1 = Array2::zeros((n, n));
    let mut phi2 = Array2::zeros((n, n));
    for i1 in 0..n {
        for i2 in 0..n {
            let a = params.linear_symbol(domain.wavevector(i1, i2).magnitude());
            let (e, p1, p2) = phi_functions(-a * dt);
            decay[(i1, i2)] = e;
            phi1[(i1, i2)] = p1;
            phi2[(i1, i2)] = p2;
        }
    }
    EtdCoefficients {
        dt,
        decay,
        phi1,
        phi2,
    }
}
