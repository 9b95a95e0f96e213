//! Sorted spectra and numerical multiplicity clustering.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// Eigenvalues sorted in descending order, partitioned into clusters of
/// numerically equal values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    #[serde(skip)]
    clusters: Vec<Range<usize>>,
    #[serde(skip)]
    cluster_tol: f64,
}

/// `max(1e-12, 1e-8 · (λ_max − λ_min))`.
pub fn default_cluster_tol(values: &[f64]) -> f64 {
    let spread = match (values.first(), values.last()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0.0,
    };
    (1e-8 * spread).max(1e-12)
}

/// Groups descending `values` into clusters.
///
/// Adjacent values whose gap is at most `cluster_tol` share a cluster, so
/// consecutive clusters are always separated by more than `cluster_tol`.
pub fn cluster_spectrum(values: Vec<f64>, cluster_tol: f64) -> Result<Spectrum> {
    if !(cluster_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cluster_tol must be nonnegative, got {cluster_tol}"
        )));
    }
    for k in 1..values.len() {
        if !(values[k - 1] >= values[k]) {
            return Err(Error::Unsorted(k));
        }
    }
    let mut clusters = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k - 1] - values[k] > cluster_tol {
            clusters.push(start..k);
            start = k;
        }
    }
    Ok(Spectrum {
        values,
        clusters,
        cluster_tol,
    })
}

impl Spectrum {
    /// Sorts `values` descending and clusters with the default tolerance.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let tol = default_cluster_tol(&values);
        cluster_spectrum(values, tol).expect("sorted finite values")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn clusters(&self) -> &[Range<usize>] {
        &self.clusters
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    /// Index of the cluster containing eigenvalue `i`.
    pub fn cluster_of(&self, i: usize) -> usize {
        self.clusters
            .partition_point(|c| c.end <= i)
            .min(self.clusters.len().saturating_sub(1))
    }

    pub fn is_simple(&self, i: usize) -> bool {
        i < self.values.len() && self.clusters[self.cluster_of(i)].len() == 1
    }

    pub fn simple_indices(&self) -> Vec<usize> {
        self.clusters
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c.start)
            .collect()
    }

    /// `λ_max − λ_min`.
    pub fn spread(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => 0.0,
        }
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Mean of the values in cluster `c`.
    pub fn cluster_value(&self, c: usize) -> f64 {
        let r = &self.clusters[c];
        self.values[r.clone()].iter().sum::<f64>() / r.len() as f64
    }

    /// Largest index-aligned deviation `max_k |values[k] − other[k]|`.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `Π_k (λ − values[k])`, the monic characteristic polynomial at `lambda`.
pub fn char_poly_eval(spectrum: &Spectrum, lambda: f64) -> f64 {
    spectrum.values.iter().map(|v| lambda - v).product()
}

/// `Σ_k Π_{j≠k} (λ − values[j])`, the derivative of [`char_poly_eval`].
pub fn char_poly_derivative(spectrum: &Spectrum, lambda: f64) -> f64 {
    let v = &spectrum.values;
    (0..v.len())
        .map(|k| {
            v.iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, x)| lambda - x)
                .product::<f64>()
        })
        .sum()
}
