//! Dense real symmetric matrices.

use crate::error::{Error, Result};

/// Relative asymmetry accepted (and silently removed) on construction.
pub const SYM_TOL: f64 = 1e-8;

/// A dense, full-storage real symmetric `n × n` matrix.
///
/// Entries are stored row-major. After construction `get(i, j) == get(j, i)`
/// holds bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds a matrix from `n * n` row-major entries.
    ///
    /// The input is replaced by `(M + Mᵀ) / 2` when its asymmetry is within
    /// `SYM_TOL * max(1, max|M|)`; larger asymmetry is rejected.
    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::TokenCount {
                expected: n * n,
                found: entries.len(),
            });
        }
        let mut max_abs: f64 = 0.0;
        for (k, v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: k / n,
                    col: k % n,
                });
            }
            max_abs = max_abs.max(v.abs());
        }
        let mut deviation: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                deviation = deviation.max((entries[i * n + j] - entries[j * n + i]).abs());
            }
        }
        let allowed = SYM_TOL * max_abs.max(1.0);
        if deviation > allowed {
            return Err(Error::Asymmetric { deviation, allowed });
        }
        let mut data = entries;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_row_major(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    /// The all-ones matrix `J = 1·1ᵀ`.
    pub fn ones(n: usize) -> Self {
        Self {
            n,
            data: vec![1.0; n * n],
        }
    }

    /// Adjacency matrix of the path graph on `n` vertices.
    pub fn path_graph(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n.saturating_sub(1) {
            m.data[i * n + i + 1] = 1.0;
            m.data[(i + 1) * n + i] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Returns `self + t · x xᵀ`.
    pub fn rank_one_update(&self, x: &[f64], t: f64) -> Result<Self> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] += t * x[i] * x[j];
            }
        }
        Ok(Self { n, data })
    }

    /// `self + t · J`.
    pub fn plus_ones(&self, t: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v + t).collect(),
        }
    }

    /// The principal submatrix obtained by deleting row and column `m`.
    pub fn delete_vertex(&self, m: usize) -> Self {
        assert!(m < self.n && self.n >= 2);
        let keep: Vec<usize> = (0..self.n).filter(|&k| k != m).collect();
        let k = keep.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in &keep {
            for &j in &keep {
                data.push(self.get(i, j));
            }
        }
        Self { n: k, data }
    }

    /// Simultaneous row/column relabeling: `B[i][j] = A[perm[i]][perm[j]]`.
    ///
    /// If `p` is an eigenvector of `A` then `u[i] = p[perm[i]]` is the
    /// matching eigenvector of `B`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Ok(Self { n, data })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizes_within_tolerance() {
        let m = SymmetricMatrix::from_row_major(2, vec![0.0, 1.0, 1.0 + 1e-10, 0.0]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!((m.get(0, 1) - (1.0 + 5e-11)).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetry() {
        let err = SymmetricMatrix::from_row_major(2, vec![0.0, 1.0, 0.5, 0.0]).unwrap_err();
        assert!(matches!(err, Error::Asymmetric { deviation, .. } if deviation == 0.5));
    }

    #[test]
    fn asymmetry_tolerance_scales_with_entries() {
        // 1e-5 absolute asymmetry on entries of size 1e4 is 1e-9 relative
        let m = SymmetricMatrix::from_row_major(2, vec![1e4, 2e4, 2e4 + 1e-5, 0.0]);
        assert!(m.is_ok());
        let m = SymmetricMatrix::from_row_major(2, vec![1.0, 2.0, 2.0 + 1e-7, 0.0]);
        assert!(m.is_err());
    }

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert_eq!(
            SymmetricMatrix::from_row_major(0, vec![]),
            Err(Error::EmptyMatrix)
        );
        assert!(matches!(
            SymmetricMatrix::from_row_major(1, vec![f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 0 })
        ));
    }

    #[test]
    fn delete_vertex_of_path() {
        let p3 = SymmetricMatrix::path_graph(3);
        let mid = p3.delete_vertex(1);
        assert_eq!(mid, SymmetricMatrix::zeros(2));
        let end = p3.delete_vertex(0);
        assert_eq!(end, SymmetricMatrix::path_graph(2));
    }

    #[test]
    fn permutation_relabels_entries() {
        let a = SymmetricMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 5.0],
            vec![3.0, 5.0, 6.0],
        ])
        .unwrap();
        let b = a.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(b.get(0, 0), 6.0);
        assert_eq!(b.get(0, 1), 3.0);
        assert_eq!(b.get(1, 2), 2.0);
        assert!(a.permuted(&[0, 0, 1]).is_err());
    }

    #[test]
    fn rank_one_update_with_ones_matches_plus_ones() {
        let a = SymmetricMatrix::path_graph(4);
        let x = vec![1.0; 4];
        assert_eq!(a.rank_one_update(&x, -0.25).unwrap(), a.plus_ones(-0.25));
    }
}
