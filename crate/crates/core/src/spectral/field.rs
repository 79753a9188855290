use ndarray::Array2;
use num_complex::Complex64;

use super::{DomainSpec, WaveVector};
use crate::error::{Error, Result};

/// Spectral coefficients of a real field on a [`DomainSpec`].
///
/// On the torus the array is indexed in FFT order and is conjugate symmetric.
/// In the sine basis the coefficients are real and the row and column with
/// index 0 are identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    coeffs: Array2<Complex64>,
    domain: DomainSpec,
}

/// Grid samples of a real field.
///
/// Samples sit at `x_j = j L / n`, `j = 0..n`. In the sine basis row and
/// column 0 are the boundary lines `x₁ = 0` and `x₂ = 0`; the opposite edge
/// `x = L` is the odd reflection point and is not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    values: Array2<f64>,
    domain: DomainSpec,
}

fn check_dims(n: usize, shape: &[usize]) -> Result<()> {
    if shape[0] != n || shape[1] != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found_rows: shape[0],
            found_cols: shape[1],
        });
    }
    Ok(())
}

impl SpectralField {
    pub fn zeros(domain: DomainSpec) -> Self {
        let n = domain.n();
        Self {
            coeffs: Array2::zeros((n, n)),
            domain,
        }
    }

    pub fn from_coeffs(coeffs: Array2<Complex64>, domain: DomainSpec) -> Result<Self> {
        check_dims(domain.n(), coeffs.shape())?;
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "spectral coefficients must be finite".into(),
            ));
        }
        Ok(Self { coeffs, domain })
    }

    /// Field with a single real mode (and its conjugate partner on the torus)
    /// scaled so that the coefficient at `(k1, k2)` equals `value`.
    pub fn single_mode(domain: DomainSpec, k1: i64, k2: i64, value: f64) -> Self {
        let mut f = Self::zeros(domain);
        let n = domain.n() as i64;
        let wrap = |k: i64| k.rem_euclid(n) as usize;
        if domain.is_torus() {
            f.coeffs[(wrap(k1), wrap(k2))] += Complex64::new(value, 0.0);
            if (k1, k2) != (0, 0) {
                f.coeffs[(wrap(-k1), wrap(-k2))] += Complex64::new(value, 0.0);
            }
        } else {
            assert!(k1 > 0 && k2 > 0 && k1 < n && k2 < n, "sine mode out of range");
            f.coeffs[(k1 as usize, k2 as usize)] = Complex64::new(value, 0.0);
        }
        f
    }

    pub(crate) fn from_raw(coeffs: Array2<Complex64>, domain: DomainSpec) -> Self {
        debug_assert_eq!(coeffs.shape(), &[domain.n(), domain.n()]);
        Self { coeffs, domain }
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Array2<Complex64> {
        self.coeffs
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn mean_coeff(&self) -> Complex64 {
        self.coeffs[(0, 0)]
    }

    /// The k = 0 coefficient is exactly zero.
    pub fn is_mean_free(&self) -> bool {
        self.coeffs[(0, 0)] == Complex64::new(0.0, 0.0)
    }

    pub fn remove_mean(mut self) -> Self {
        self.coeffs[(0, 0)] = Complex64::new(0.0, 0.0);
        self
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Multiply each coefficient by `symbol(k)`.
    pub fn map_modes(&self, mut symbol: impl FnMut(&WaveVector) -> Complex64) -> Self {
        let mut out = self.coeffs.clone();
        for ((i1, i2), c) in out.indexed_iter_mut() {
            *c *= symbol(&self.domain.wavevector(i1, i2));
        }
        Self::from_raw(out, self.domain)
    }

    /// Multiply each coefficient by a real symbol.
    pub fn map_modes_real(&self, mut symbol: impl FnMut(&WaveVector) -> f64) -> Self {
        self.map_modes(|k| Complex64::new(symbol(k), 0.0))
    }

    pub(crate) fn check_same_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_domain(other)?;
        Ok(Self::from_raw(&self.coeffs + &other.coeffs, self.domain))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_domain(other)?;
        Ok(Self::from_raw(&self.coeffs - &other.coeffs, self.domain))
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::from_raw(self.coeffs.mapv(|c| c * a), self.domain)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Result<Self> {
        self.check_same_domain(other)?;
        let mut out = self.coeffs.clone();
        out.zip_mut_with(&other.coeffs, |x, y| *x += y * a);
        Ok(Self::from_raw(out, self.domain))
    }

    /// L² norm over all modes.
    pub fn norm_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }
}

impl PhysicalField {
    pub fn zeros(domain: DomainSpec) -> Self {
        let n = domain.n();
        Self {
            values: Array2::zeros((n, n)),
            domain,
        }
    }

    pub fn from_values(values: Array2<f64>, domain: DomainSpec) -> Result<Self> {
        check_dims(domain.n(), values.shape())?;
        Ok(Self { values, domain })
    }

    /// Sample `f(x₁, x₂)` on the grid.
    pub fn from_fn(domain: DomainSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = domain.n();
        let values = Array2::from_shape_fn((n, n), |(j1, j2)| {
            f(domain.coordinate(j1), domain.coordinate(j2))
        });
        Self { values, domain }
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<f64> {
        &mut self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Grid quadrature of the field.
    pub fn integral(&self) -> f64 {
        self.values.sum() * self.domain.cell_area()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.mapv(f),
            domain: self.domain,
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(Self {
            values: &self.values * &other.values,
            domain: self.domain,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(Self {
            values: &self.values - &other.values,
            domain: self.domain,
        })
    }
}
