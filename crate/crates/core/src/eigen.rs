//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! This is the reference solver every other module is checked against, so it
//! favors accuracy and reproducibility over speed: row-cyclic sweeps in a
//! fixed order, no thresholds that depend on timing or thread count, and a
//! canonical sign for every eigenvector.

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;
use crate::spectrum::{cluster_spectrum, default_cluster_tol, Spectrum};

/// Maximum number of full sweeps before [`eigh`] gives up.
pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal entries below `ROTATION_TOL · ‖A‖_F` are left alone.
pub const ROTATION_TOL: f64 = 1e-14;

/// Orthonormal eigenvectors paired with a descending [`Spectrum`].
///
/// `vector(k)` belongs to `spectrum().values()[k]`. Each vector has its
/// largest-magnitude entry positive (lowest index wins ties).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    spectrum: Spectrum,
    vectors: Vec<Vec<f64>>,
}

impl EigenBasis {
    pub(crate) fn new(spectrum: Spectrum, vectors: Vec<Vec<f64>>) -> Self {
        debug_assert_eq!(spectrum.len(), vectors.len());
        Self { spectrum, vectors }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// `‖PᵀP − I‖_max`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n();
        let mut err: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let d = crate::matrix::dot(&self.vectors[a], &self.vectors[b]);
                let target = if a == b { 1.0 } else { 0.0 };
                err = err.max((d - target).abs());
            }
        }
        err
    }

    /// `‖P·diag(values)·Pᵀ − A‖_max`.
    pub fn reconstruction_error(&self, a: &SymmetricMatrix) -> f64 {
        let n = self.n();
        let values = self.spectrum.values();
        let mut err: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s: f64 = (0..n)
                    .map(|k| self.vectors[k][i] * values[k] * self.vectors[k][j])
                    .sum();
                err = err.max((s - a.get(i, j)).abs());
            }
        }
        err
    }
}

/// Flips `v` so that its largest-magnitude entry is positive.
pub(crate) fn apply_sign_convention(v: &mut [f64]) {
    let mut best = 0;
    for k in 1..v.len() {
        if v[k].abs() > v[best].abs() {
            best = k;
        }
    }
    if v.get(best).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Eigendecomposition with the default cluster tolerance.
pub fn eigh(a: &SymmetricMatrix) -> Result<EigenBasis> {
    eigh_impl(a, None)
}

pub fn eigh_with_cluster_tol(a: &SymmetricMatrix, cluster_tol: f64) -> Result<EigenBasis> {
    eigh_impl(a, Some(cluster_tol))
}

fn eigh_impl(a: &SymmetricMatrix, cluster_tol: Option<f64>) -> Result<EigenBasis> {
    let n = a.n();
    let mut w = a.as_slice().to_vec();
    // v[r * n + k] is row r of eigenvector k
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = ROTATION_TOL * a.frobenius_norm();

    let max_off = |w: &[f64]| {
        let mut m: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                m = m.max(w[p * n + q].abs());
            }
        }
        m
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if max_off(&w) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq.abs() <= threshold {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = w[r * n + p];
                    let arq = w[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    w[r * n + p] = new_rp;
                    w[p * n + r] = new_rp;
                    w[r * n + q] = new_rq;
                    w[q * n + r] = new_rq;
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;

                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged {
        let off = max_off(&w);
        if off > threshold {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                off_diagonal: off,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[j * n + j].total_cmp(&w[i * n + i]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&k| w[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + k]).collect();
            apply_sign_convention(&mut col);
            col
        })
        .collect();
    let tol = cluster_tol.unwrap_or_else(|| default_cluster_tol(&values));
    let spectrum = cluster_spectrum(values, tol)?;
    Ok(EigenBasis::new(spectrum, vectors))
}
