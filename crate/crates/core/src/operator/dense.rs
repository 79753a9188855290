use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// Symmetric positive semi-definite matrix with its spectrum cached at
/// construction.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    matrix: DMatrix<f64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl DenseOperator {
    /// Validates symmetry and semi-definiteness up to `1e-12·‖A‖`.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidParameter(format!(
                "operator must be a non-empty square matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("operator has non-finite entries".into()));
        }
        let norm = matrix.norm();
        let asym = (&matrix - matrix.transpose()).norm();
        if asym > SYMMETRY_TOL * norm {
            return Err(Error::NotPsd(format!("asymmetry {asym:.3e} relative to norm {norm:.3e}")));
        }
        let sym = (&matrix + matrix.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym.clone());
        let min = eig.eigenvalues.min();
        if min < -SYMMETRY_TOL * norm {
            return Err(Error::NotPsd(format!("eigenvalue {min:.3e}")));
        }
        Ok(Self {
            matrix: sym,
            eigenvalues: eig.eigenvalues.map(|v| v.max(0.0)),
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn scalar(a: f64) -> Result<Self> {
        Self::from_matrix(DMatrix::from_element(1, 1, a))
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        Self::from_matrix(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_matrix(DMatrix::zeros(n, n))
    }

    /// Second-difference Dirichlet Laplacian on `(0, 1)` with `n` interior
    /// points, `h = 1/(n + 1)`.
    pub fn laplacian_1d(n: usize) -> Result<Self> {
        Self::from_matrix(laplacian_1d_matrix(n))
    }

    /// Five-point Dirichlet Laplacian on `(0, 1)²`, `n²` unknowns, as the
    /// Kronecker sum `L ⊗ I + I ⊗ L`.
    pub fn laplacian_2d(n: usize) -> Result<Self> {
        let l = laplacian_1d_matrix(n);
        let id = DMatrix::<f64>::identity(n, n);
        Self::from_matrix(l.kronecker(&id) + id.kronecker(&l))
    }

    /// Random orthogonal conjugate of a diagonal with log-uniform spectrum in
    /// `[1, cond]`, both endpoints attained.
    pub fn random_spd(n: usize, cond: f64, seed: u64) -> Result<Self> {
        if n == 0 || !(cond >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "random SPD needs n >= 1 and cond >= 1, got n = {n}, cond = {cond}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
        let q = g.qr().q();
        let spectrum: Vec<f64> = (0..n)
            .map(|i| match i {
                0 => 1.0,
                1 => cond,
                _ => cond.powf(rand::Rng::random::<f64>(&mut rng)),
            })
            .collect();
        let d = DMatrix::from_diagonal(&DVector::from_vec(spectrum));
        let a = &q * d * q.transpose();
        Self::from_matrix((&a + a.transpose()) * 0.5)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.min()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.max()
    }

    pub fn apply(&self, phi: &DVector<f64>) -> DVector<f64> {
        &self.matrix * phi
    }

    /// `f(A)φ` through the eigendecomposition.
    pub fn spectral_apply(&self, phi: &DVector<f64>, f: impl Fn(f64) -> f64) -> DVector<f64> {
        let coords = self.eigenvectors.tr_mul(phi);
        let scaled = DVector::from_iterator(
            coords.len(),
            coords.iter().zip(self.eigenvalues.iter()).map(|(c, &mu)| c * f(mu)),
        );
        &self.eigenvectors * scaled
    }

    /// Strictly positive spectrum, relative to the operator norm.
    pub fn is_invertible(&self) -> bool {
        self.min_eigenvalue() > 1e-14 * self.max_eigenvalue().max(f64::MIN_POSITIVE)
    }

    pub(crate) fn require_invertible(&self) -> Result<()> {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(Error::NotInvertible {
                min_eigenvalue: self.min_eigenvalue(),
            })
        }
    }

    /// Exact `A^s φ` from the spectrum; negative `s` needs `A` invertible.
    pub fn eig_power(&self, s: f64, phi: &DVector<f64>) -> Result<DVector<f64>> {
        if s < 0.0 {
            self.require_invertible()?;
        }
        Ok(self.spectral_apply(phi, |mu| if s == 0.0 { 1.0 } else { mu.powf(s) }))
    }

    /// `M = sup_{λ>0} ‖λ(λ + A)^{-1}‖`, computed from the spectrum: per
    /// eigenvalue `μ ≥ 0` the map `λ ↦ λ/(λ + μ)` increases to 1, so the
    /// supremum is the `λ → ∞` limit, checked against a sweep of `λ`.
    pub fn resolvent_bound(&self) -> f64 {
        let mut m: f64 = 1.0;
        for e in -12..=12 {
            let lam = 10f64.powi(e);
            for &mu in self.eigenvalues.iter() {
                m = m.max(lam / (lam + mu).abs());
            }
        }
        m
    }
}

fn laplacian_1d_matrix(n: usize) -> DMatrix<f64> {
    let h = 1.0 / (n as f64 + 1.0);
    let s = 1.0 / (h * h);
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * s
        } else if i.abs_diff(j) == 1 {
            -s
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn laplacian_spectrum_is_the_sine_formula() {
        let n = 32;
        let a = DenseOperator::laplacian_1d(n).unwrap();
        let h = 1.0 / (n as f64 + 1.0);
        let mut expect: Vec<f64> = (1..=n)
            .map(|j| 4.0 / (h * h) * (j as f64 * PI * h / 2.0).sin().powi(2))
            .collect();
        expect.sort_by(f64::total_cmp);
        let mut got: Vec<f64> = a.eigenvalues().iter().copied().collect();
        got.sort_by(f64::total_cmp);
        for (g, e) in got.iter().zip(&expect) {
            assert!((g - e).abs() < 1e-9 * e, "{g} vs {e}");
        }
    }

    #[test]
    fn laplacian_2d_eigenvalues_are_sums() {
        let a1 = DenseOperator::laplacian_1d(4).unwrap();
        let a2 = DenseOperator::laplacian_2d(4).unwrap();
        assert_eq!(a2.dim(), 16);
        let lo = 2.0 * a1.min_eigenvalue();
        assert!((a2.min_eigenvalue() - lo).abs() < 1e-9 * lo);
    }

    #[test]
    fn random_spd_has_requested_condition() {
        let a = DenseOperator::random_spd(16, 1e3, 9).unwrap();
        assert!((a.min_eigenvalue() - 1.0).abs() < 1e-9);
        assert!((a.max_eigenvalue() - 1e3).abs() < 1e-7);
    }

    #[test]
    fn rejects_asymmetric_and_indefinite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(DenseOperator::from_matrix(m), Err(Error::NotPsd(_))));
        assert!(matches!(DenseOperator::diagonal(&[1.0, -1.0]), Err(Error::NotPsd(_))));
    }

    #[test]
    fn resolvent_constant_is_one_for_psd() {
        for a in [
            DenseOperator::zero(3).unwrap(),
            DenseOperator::random_spd(8, 50.0, 1).unwrap(),
        ] {
            assert_eq!(a.resolvent_bound(), 1.0);
        }
    }

    #[test]
    fn negative_power_of_singular_fails() {
        let a = DenseOperator::diagonal(&[0.0, 1.0]).unwrap();
        let phi = DVector::from_vec(vec![1.0, 1.0]);
        assert!(matches!(a.eig_power(-0.5, &phi), Err(Error::NotInvertible { .. })));
        assert!(a.eig_power(0.5, &phi).is_ok());
    }
}
