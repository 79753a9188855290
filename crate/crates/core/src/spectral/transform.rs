use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{Basis, DomainSpec, PhysicalField, SpectralField};
use crate::error::{Error, Result};

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

thread_local! {
    // Plans are per thread; scratch is allocated per call.
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<usize, Arc<Plans>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plans(n: usize) -> Arc<Plans> {
    PLANS.with(|cell| {
        let (planner, cache) = &mut *cell.borrow_mut();
        cache
            .entry(n)
            .or_insert_with(|| {
                Arc::new(Plans {
                    forward: planner.plan_fft_forward(n),
                    inverse: planner.plan_fft_inverse(n),
                })
            })
            .clone()
    })
}

/// Unnormalized in-place 2D FFT of a square array in standard layout.
fn fft2(data: &mut Array2<Complex64>, inverse: bool) {
    let n = data.nrows();
    let p = plans(n);
    let fft = if inverse { &p.inverse } else { &p.forward };
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];

    // axis 1: rows are contiguous
    let buf = data
        .as_slice_mut()
        .expect("spectral arrays are kept in standard layout");
    fft.process_with_scratch(buf, &mut scratch);

    // axis 0: transpose, transform, transpose back
    let mut t: Vec<Complex64> = Vec::with_capacity(n * n);
    for i2 in 0..n {
        for i1 in 0..n {
            t.push(buf[i1 * n + i2]);
        }
    }
    fft.process_with_scratch(&mut t, &mut scratch);
    for i2 in 0..n {
        for i1 in 0..n {
            buf[i1 * n + i2] = t[i2 * n + i1];
        }
    }
}

fn torus_to_physical(coeffs: &Array2<Complex64>, box_len: f64) -> Array2<f64> {
    let mut work = coeffs.as_standard_layout().into_owned();
    fft2(&mut work, true);
    let scale = 1.0 / box_len;
    work.mapv(|c| c.re * scale)
}

fn torus_to_spectral(values: &Array2<f64>, box_len: f64) -> Array2<Complex64> {
    let n = values.nrows();
    let mut work = values.mapv(|v| Complex64::new(v, 0.0));
    fft2(&mut work, false);
    let scale = box_len / (n * n) as f64;
    work.mapv_inplace(|c| c * scale);
    work
}

/// Odd-odd periodic extension of a sine-basis field onto the torus of side
/// `2L` with `2n` points.
pub fn dirichlet_to_extended(field: &SpectralField) -> Result<SpectralField> {
    let dom = field.domain();
    if dom.basis() != Basis::DirichletRectangle {
        return Err(Error::InvalidParameter(
            "odd extension applies to sine-basis fields".into(),
        ));
    }
    let n = dom.n();
    let m = 2 * n;
    let ext_dom = DomainSpec::new(m, 2.0 * dom.box_len(), Basis::PeriodicTorus)?;
    let mut c = Array2::<Complex64>::zeros((m, m));
    let b = field.coeffs();
    for k1 in 1..n {
        for k2 in 1..n {
            let v = b[(k1, k2)].re;
            if v == 0.0 {
                continue;
            }
            c[(k1, k2)] = Complex64::new(-v, 0.0);
            c[(m - k1, k2)] = Complex64::new(v, 0.0);
            c[(k1, m - k2)] = Complex64::new(v, 0.0);
            c[(m - k1, m - k2)] = Complex64::new(-v, 0.0);
        }
    }
    Ok(SpectralField::from_raw(c, ext_dom))
}

/// Sine coefficients of the odd-odd part of an extended torus field.
pub fn extended_to_dirichlet(ext: &SpectralField, domain: &DomainSpec) -> Result<SpectralField> {
    let n = domain.n();
    let m = 2 * n;
    if ext.domain().n() != m || !ext.domain().is_torus() {
        return Err(Error::DomainMismatch);
    }
    let c = ext.coeffs();
    let mut b = Array2::<Complex64>::zeros((n, n));
    for k1 in 1..n {
        for k2 in 1..n {
            // average the four images: projects onto the odd-odd subspace
            let v = -c[(k1, k2)].re + c[(m - k1, k2)].re + c[(k1, m - k2)].re
                - c[(m - k1, m - k2)].re;
            b[(k1, k2)] = Complex64::new(0.25 * v, 0.0);
        }
    }
    Ok(SpectralField::from_raw(b, *domain))
}

pub fn to_physical(field: &SpectralField) -> PhysicalField {
    let dom = *field.domain();
    match dom.basis() {
        Basis::PeriodicTorus => {
            let values = torus_to_physical(field.coeffs(), dom.box_len());
            PhysicalField::from_values(values, dom).expect("shape preserved")
        }
        Basis::DirichletRectangle => {
            let n = dom.n();
            let ext = dirichlet_to_extended(field).expect("sine basis");
            let full = torus_to_physical(ext.coeffs(), ext.domain().box_len());
            let mut values = full.slice(ndarray::s![0..n, 0..n]).to_owned();
            // boundary lines: every basis function vanishes there
            values.row_mut(0).fill(0.0);
            values.column_mut(0).fill(0.0);
            PhysicalField::from_values(values, dom).expect("shape preserved")
        }
    }
}

pub fn to_spectral(field: &PhysicalField) -> Result<SpectralField> {
    let dom = *field.domain();
    let v = field.values();
    let n = dom.n();
    if v.nrows() != n || v.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found_rows: v.nrows(),
            found_cols: v.ncols(),
        });
    }
    match dom.basis() {
        Basis::PeriodicTorus => Ok(SpectralField::from_raw(
            torus_to_spectral(v, dom.box_len()),
            dom,
        )),
        Basis::DirichletRectangle => {
            let m = 2 * n;
            let fold = |j: usize| -> (usize, f64) {
                if j == 0 || j == n {
                    (0, 0.0)
                } else if j < n {
                    (j, 1.0)
                } else {
                    (m - j, -1.0)
                }
            };
            let ext = Array2::from_shape_fn((m, m), |(j1, j2)| {
                let (r1, s1) = fold(j1);
                let (r2, s2) = fold(j2);
                s1 * s2 * v[(r1, r2)]
            });
            let c = torus_to_spectral(&ext, 2.0 * dom.box_len());
            let ext_dom = DomainSpec::new(m, 2.0 * dom.box_len(), Basis::PeriodicTorus)?;
            extended_to_dirichlet(&SpectralField::from_raw(c, ext_dom), &dom)
        }
    }
}

/// Zero-pad a field onto a finer grid of `m ≥ n` points (spectral
/// interpolation). Torus Nyquist coefficients are split evenly between the
/// two images so the result stays real.
pub fn pad(field: &SpectralField, m: usize) -> Result<SpectralField> {
    let dom = field.domain();
    let n = dom.n();
    if m < n {
        return Err(Error::InvalidParameter(format!(
            "cannot pad from {n} down to {m}"
        )));
    }
    let target = dom.with_n(m)?;
    let src = field.coeffs();
    let mut out = Array2::<Complex64>::zeros((m, m));
    match dom.basis() {
        Basis::DirichletRectangle => {
            out.slice_mut(ndarray::s![0..n, 0..n]).assign(src);
        }
        Basis::PeriodicTorus => {
            let images = |i: usize| -> Vec<(usize, f64)> {
                let k = dom.mode_index(i);
                if m > n && dom.is_nyquist(i) {
                    let h = (n / 2) as i64;
                    vec![((m as i64 - h) as usize, 0.5), (h as usize, 0.5)]
                } else {
                    vec![(k.rem_euclid(m as i64) as usize, 1.0)]
                }
            };
            for ((i1, i2), c) in src.indexed_iter() {
                for (j1, w1) in images(i1) {
                    for (j2, w2) in images(i2) {
                        out[(j1, j2)] += c * (w1 * w2);
                    }
                }
            }
        }
    }
    Ok(SpectralField::from_raw(out, target))
}

/// Keep the modes representable on an `m ≤ n` grid and drop the rest.
/// Torus modes at the coarse Nyquist index are discarded.
pub fn truncate(field: &SpectralField, m: usize) -> Result<SpectralField> {
    let dom = field.domain();
    let n = dom.n();
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "cannot truncate from {n} up to {m}"
        )));
    }
    let target = dom.with_n(m)?;
    let src = field.coeffs();
    let mut out = Array2::<Complex64>::zeros((m, m));
    match dom.basis() {
        Basis::DirichletRectangle => {
            out.assign(&src.slice(ndarray::s![0..m, 0..m]));
        }
        Basis::PeriodicTorus => {
            let h = (m / 2) as i64;
            for ((i1, i2), c) in src.indexed_iter() {
                let k1 = dom.mode_index(i1);
                let k2 = dom.mode_index(i2);
                if k1.abs() < h && k2.abs() < h {
                    out[(
                        k1.rem_euclid(m as i64) as usize,
                        k2.rem_euclid(m as i64) as usize,
                    )] = *c;
                }
            }
        }
    }
    Ok(SpectralField::from_raw(out, target))
}
