use crate::dynamics::physical_velocity;
use crate::error::{Error, Result};
use crate::spectral::{
    dealias, fractional_laplacian, pad, to_physical, to_spectral, Direction, PhysicalField,
    SpectralField,
};

/// Grid `L^p` norm for any `p ≥ 1` (the library's `lq_norm` covers `q ≥ 2`).
pub fn lp_norm(field: &PhysicalField, p: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(field.max_abs());
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("Lebesgue exponent must be >= 1, got {p}")));
    }
    let cell = field.domain().cell_area();
    let sum: f64 = field.values().iter().map(|v| v.abs().powf(p)).sum();
    Ok((sum * cell).powf(1.0 / p))
}

/// Ratio `‖(−Δ)^γ(FG)‖_p / (‖(−Δ)^γF‖_r ‖G‖_q + ‖F‖_q ‖(−Δ)^γG‖_r)` for
/// `1/r + 1/q = 1/p`. The constant in the product estimate is not known, so
/// this is reported rather than asserted. Products are formed on the
/// doubled grid after dealiasing.
pub fn commutator_probe(
    f: &SpectralField,
    g: &SpectralField,
    gamma: f64,
    p: f64,
    q: f64,
    r: f64,
) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
    }
    if !(p > 1.0 && q > p && r >= p) {
        return Err(Error::InvalidParameter(format!(
            "need 1 < p < q and r >= p, got p = {p}, q = {q}, r = {r}"
        )));
    }
    if ((1.0 / r + 1.0 / q) - 1.0 / p).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "exponents violate 1/r + 1/q = 1/p: {r}, {q}, {p}"
        )));
    }
    f.check_same_domain(g)?;
    let m = 2 * f.domain().n();
    let up = |x: &SpectralField| pad(&dealias(x), m);
    let (ff, gg) = (up(f)?, up(g)?);
    let lap = |x: &SpectralField| fractional_laplacian(x, gamma, Direction::Forward);
    let (fp, gp) = (to_physical(&ff), to_physical(&gg));
    let prod = to_spectral(&fp.mul(&gp)?)?;
    let num = lp_norm(&to_physical(&lap(&prod)?), p)?;
    let den = lp_norm(&to_physical(&lap(&ff)?), r)? * lp_norm(&gp, q)?
        + lp_norm(&fp, q)? * lp_norm(&to_physical(&lap(&gg)?), r)?;
    if den == 0.0 {
        return Ok(if num == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(num / den)
}

/// `‖u‖_q / ‖θ‖_q` with `|u|` the Euclidean speed; equals 1 at `q = 2`.
pub fn velocity_ratio_probe(theta: &SpectralField, q: f64) -> Result<f64> {
    let (u1, u2) = physical_velocity(theta)?;
    let mut speed = u1.clone();
    speed
        .values_mut()
        .zip_mut_with(u2.values(), |a, b| *a = a.hypot(*b));
    let th = lp_norm(&to_physical(theta), q)?;
    if th == 0.0 {
        return Ok(0.0);
    }
    Ok(lp_norm(&speed, q)? / th)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{lq_norm, random_smooth, DomainSpec};

    #[test]
    fn lp_matches_lq_above_two() {
        let dom = DomainSpec::torus(32).unwrap();
        let th = to_physical(&random_smooth(dom, 1, 1.0, 3.0));
        for q in [2.0, 3.0, 8.0, f64::INFINITY] {
            assert_eq!(lp_norm(&th, q).unwrap(), lq_norm(&th, q).unwrap());
        }
        assert!(lp_norm(&th, 0.5).is_err());
    }

    #[test]
    fn lp_of_constant() {
        let dom = DomainSpec::torus(16).unwrap();
        let c = PhysicalField::from_fn(dom, |_, _| 2.0);
        let l = dom.box_len();
        let v = lp_norm(&c, 4.0 / 3.0).unwrap();
        assert!((v - 2.0 * (l * l).powf(0.75)).abs() < 1e-12);
    }

    #[test]
    fn velocity_ratio_is_one_in_l2() {
        let dom = DomainSpec::torus(32).unwrap();
        let th = random_smooth(dom, 2, 1.0, 2.5);
        assert!((velocity_ratio_probe(&th, 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn commutator_with_constant_is_holder_bounded() {
        let dom = DomainSpec::torus(32).unwrap();
        let f = random_smooth(dom, 4, 1.0, 3.0);
        let one = SpectralField::single_mode(dom, 0, 0, dom.box_len());
        let ratio = commutator_probe(&f, &one, 0.5, 2.0, 4.0, 4.0).unwrap();
        // ‖h‖_2 ≤ |Ω|^{1/4} ‖h‖_4 and ‖1‖_4 = |Ω|^{1/4}
        assert!(ratio <= 1.0 + 1e-12, "{ratio}");
        assert!(ratio > 0.0);
    }

    #[test]
    fn exponent_relation_enforced() {
        let dom = DomainSpec::torus(16).unwrap();
        let f = random_smooth(dom, 4, 1.0, 3.0);
        assert!(commutator_probe(&f, &f, 0.5, 2.0, 4.0, 3.0).is_err());
        assert!(commutator_probe(&f, &f, 0.0, 2.0, 4.0, 4.0).is_err());
    }
}
