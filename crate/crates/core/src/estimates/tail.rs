use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{
    fractional_laplacian, to_physical, to_spectral, Direction, DomainSpec, PhysicalField,
};

/// Dilated cutoff `η_k(x) = η(|x|/k)` with `η = 0` on `[0, 1]`, `η = 1` on
/// `[2, ∞)` and the quintic smoothstep `6s⁵ − 15s⁴ + 10s³` in between (C²
/// across both ends of the annulus).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffSpec {
    pub k: f64,
}

impl CutoffSpec {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cutoff radius must be positive, got {k}"
            )));
        }
        Ok(Self { k })
    }

    /// Undilated profile `η(r)`.
    pub fn profile(r: f64) -> f64 {
        let s = (r - 1.0).clamp(0.0, 1.0);
        s * s * s * (10.0 + s * (-15.0 + 6.0 * s))
    }

    pub fn eval(&self, r: f64) -> f64 {
        Self::profile(r / self.k)
    }

    /// The annulus must sit strictly inside the box around its center.
    fn check_fits(&self, domain: &DomainSpec) -> Result<()> {
        if self.k > domain.box_len() / 4.0 {
            return Err(Error::InvalidParameter(format!(
                "cutoff radius {} exceeds L/4 = {}",
                self.k,
                domain.box_len() / 4.0
            )));
        }
        Ok(())
    }
}

/// `η_k(|x − c|)` on the grid with `c` the box center.
pub fn cutoff_field(domain: DomainSpec, cutoff: &CutoffSpec) -> PhysicalField {
    let c = domain.box_len() / 2.0;
    PhysicalField::from_fn(domain, |x1, x2| cutoff.eval((x1 - c).hypot(x2 - c)))
}

/// `∫ θ² η_k dx`, which dominates the mass of `θ²` outside `|x − c| ≥ 2k`.
pub fn tail_mass(theta: &PhysicalField, cutoff: &CutoffSpec) -> Result<f64> {
    cutoff.check_fits(theta.domain())?;
    let eta = cutoff_field(*theta.domain(), cutoff);
    Ok(theta.mul(theta)?.mul(&eta)?.integral())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffBound {
    /// `max |(−Δ)^{s/2} η_k|` on the grid
    pub max_abs: f64,
    /// `max |(−Δ)^{s/2} η_k − k^{−s} [(−Δ)^{s/2} η](·/k)|`
    pub scaling_error: f64,
}

fn fractional_of_cutoff(domain: DomainSpec, cutoff: &CutoffSpec, s: f64) -> Result<PhysicalField> {
    let eta = to_spectral(&cutoff_field(domain, cutoff))?;
    Ok(to_physical(&fractional_laplacian(&eta, s / 2.0, Direction::Forward)?))
}

/// Size of `(−Δ)^{s/2} η_k` and its deviation from the dilation identity,
/// the undilated profile being evaluated on the box of side `L/k` with the
/// same number of points.
pub fn cutoff_fractional_bound(
    cutoff: &CutoffSpec,
    s: f64,
    domain: &DomainSpec,
) -> Result<CutoffBound> {
    if !domain.is_torus() {
        return Err(Error::TorusOnly("cutoff fractional bound"));
    }
    if !(0.0..2.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "order s must lie in [0, 2), got {s}"
        )));
    }
    cutoff.check_fits(domain)?;
    let dilated = fractional_of_cutoff(*domain, cutoff, s)?;
    let unit_box = DomainSpec::new(domain.n(), domain.box_len() / cutoff.k, domain.basis())?;
    let unit = fractional_of_cutoff(unit_box, &CutoffSpec::new(1.0)?, s)?;
    let scale = cutoff.k.powf(-s);
    let scaling_error = dilated
        .values()
        .iter()
        .zip(unit.values().iter())
        .fold(0.0f64, |m, (a, b)| m.max((a - scale * b).abs()));
    Ok(CutoffBound {
        max_abs: dilated.max_abs(),
        scaling_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_endpoints_and_range() {
        assert_eq!(CutoffSpec::profile(0.5), 0.0);
        assert_eq!(CutoffSpec::profile(1.0), 0.0);
        assert_eq!(CutoffSpec::profile(2.0), 1.0);
        assert_eq!(CutoffSpec::profile(7.0), 1.0);
        assert!((CutoffSpec::profile(1.5) - 0.5).abs() < 1e-15);
        for i in 0..=100 {
            let v = CutoffSpec::profile(1.0 + i as f64 / 100.0);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn profile_is_c2_at_the_joins() {
        let h = 1e-4;
        for r in [1.0, 2.0] {
            let d1 = (CutoffSpec::profile(r + h) - CutoffSpec::profile(r - h)) / (2.0 * h);
            let d2 = (CutoffSpec::profile(r + h) - 2.0 * CutoffSpec::profile(r)
                + CutoffSpec::profile(r - h))
                / (h * h);
            assert!(d1.abs() < 1e-6 && d2.abs() < 1e-3, "r = {r}: {d1} {d2}");
        }
    }

    #[test]
    fn unit_dilation_has_no_scaling_error() {
        let dom = DomainSpec::new(64, 16.0, crate::spectral::Basis::PeriodicTorus).unwrap();
        let b = cutoff_fractional_bound(&CutoffSpec::new(1.0).unwrap(), 1.0, &dom).unwrap();
        assert_eq!(b.scaling_error, 0.0);
        assert!(b.max_abs.is_finite() && b.max_abs > 0.0);
    }

    #[test]
    fn order_zero_is_identity() {
        let dom = DomainSpec::new(64, 16.0, crate::spectral::Basis::PeriodicTorus).unwrap();
        let c = CutoffSpec::new(2.0).unwrap();
        let b = cutoff_fractional_bound(&c, 0.0, &dom).unwrap();
        assert!((b.max_abs - 1.0).abs() < 1e-12);
        assert!(b.scaling_error < 1e-12);
    }

    #[test]
    fn oversized_cutoff_is_rejected() {
        let dom = DomainSpec::torus(32).unwrap();
        let theta = PhysicalField::zeros(dom);
        assert!(tail_mass(&theta, &CutoffSpec::new(2.0).unwrap()).is_err());
    }
}
