//! Squared eigenvector entries recovered from a spectrum and its deck.
//!
//! For a simple eigenvalue `λ_i` of `A` with unit eigenvector `p_i`,
//!
//! ```text
//!              Π_{j=1}^{n-1} (λ_j(A_m) − λ_i)
//! p_{m,i}² = ---------------------------------
//!                 Π_{j≠i} (λ_j − λ_i)
//! ```
//!
//! so the squares depend only on `eigen(A)` and `eigen(A_m)`. Both products
//! are evaluated factor by factor, never as expanded polynomials.

use serde::Serialize;

use crate::deck::SpectralDeck;
use crate::eigen::EigenBasis;
use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Rounding slack around `[0, 1]` that is clamped away silently.
pub const CLAMP_TOL: f64 = 1e-10;

/// Allowed deviation of a simple column sum from 1.
pub const COLUMN_SUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FromDeck,
    FromEigenbasis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TableWarning {
    /// A reconstructed value fell outside `[−CLAMP_TOL, 1 + CLAMP_TOL]`; the
    /// raw value is kept in the table.
    Inconsistent { row: usize, index: usize, value: f64 },
    /// A simple column does not sum to 1 within [`COLUMN_SUM_TOL`].
    ColumnSum { index: usize, sum: f64 },
}

/// `table[m][i]` holds `p_{m,i}²`, or `None` when `λ_i` is not simple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquareTable {
    n: usize,
    simple: Vec<usize>,
    table: Vec<Vec<Option<f64>>>,
    provenance: Provenance,
    warnings: Vec<TableWarning>,
}

impl SquareTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn get(&self, m: usize, i: usize) -> Option<f64> {
        self.table[m][i]
    }

    pub fn rows(&self) -> &[Vec<Option<f64>>] {
        &self.table
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn warnings(&self) -> &[TableWarning] {
        &self.warnings
    }

    pub fn is_consistent(&self) -> bool {
        self.warnings.is_empty()
    }

    pub fn column_sum(&self, i: usize) -> Option<f64> {
        self.table.iter().map(|row| row[i]).sum()
    }

    /// Sum over simple columns of row `m`.
    pub fn row_sum(&self, m: usize) -> f64 {
        self.table[m].iter().flatten().sum()
    }

    fn finish(n: usize, simple: Vec<usize>, table: Vec<Vec<Option<f64>>>, provenance: Provenance, mut warnings: Vec<TableWarning>) -> Self {
        let mut t = Self {
            n,
            simple,
            table,
            provenance,
            warnings: Vec::new(),
        };
        for &i in &t.simple {
            let sum = t.column_sum(i).unwrap_or(f64::NAN);
            if !((sum - 1.0).abs() <= COLUMN_SUM_TOL) {
                warnings.push(TableWarning::ColumnSum { index: i, sum });
            }
        }
        t.warnings = warnings;
        t
    }
}

/// `p_{m,i}²` from `eigen(A)` and `eigen(A_m)`.
///
/// Numerator and denominator factors are paired in sorted order; by Cauchy
/// interlacing each paired quotient lies in `[0, 1]`, so the running product
/// cannot overflow.
pub fn reconstruct_square(spectrum: &Spectrum, card: &Spectrum, i: usize) -> Result<f64> {
    let n = spectrum.len();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if card.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: card.len(),
        });
    }
    if !spectrum.is_simple(i) {
        let cluster_size = spectrum.clusters()[spectrum.cluster_of(i)].len();
        return Err(Error::NotSimple { index: i, cluster_size });
    }
    let values = spectrum.values();
    let lambda = values[i];
    let tol = spectrum.cluster_tol();
    let others = values
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v);
    let mut product = 1.0;
    for (&mu, other) in card.values().iter().zip(others) {
        let den = other - lambda;
        if den.abs() <= tol {
            return Err(Error::NotSimple {
                index: i,
                cluster_size: 2,
            });
        }
        product *= (mu - lambda) / den;
    }
    if (-CLAMP_TOL..0.0).contains(&product) {
        Ok(0.0)
    } else if product > 1.0 && product <= 1.0 + CLAMP_TOL {
        Ok(1.0)
    } else if (0.0..=1.0).contains(&product) {
        Ok(product)
    } else {
        Err(Error::InconsistentSquare {
            index: i,
            value: product,
        })
    }
}

pub fn square_table_from_deck(spectrum: &Spectrum, deck: &SpectralDeck) -> Result<SquareTable> {
    let n = spectrum.len();
    if deck.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: deck.len(),
        });
    }
    if let Some(bad) = deck.cards().iter().find(|c| c.len() + 1 != n) {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: bad.len(),
        });
    }
    let simple = spectrum.simple_indices();
    let mut warnings = Vec::new();
    let mut table = vec![vec![None; n]; n];
    for (m, row) in table.iter_mut().enumerate() {
        for &i in &simple {
            row[i] = Some(match reconstruct_square(spectrum, deck.card(m), i) {
                Ok(v) => v,
                Err(Error::InconsistentSquare { value, .. }) => {
                    warnings.push(TableWarning::Inconsistent { row: m, index: i, value });
                    value
                }
                Err(e) => return Err(e),
            });
        }
    }
    Ok(SquareTable::finish(n, simple, table, Provenance::FromDeck, warnings))
}

/// Squares read directly off computed eigenvectors; the oracle for
/// [`square_table_from_deck`].
pub fn square_table_from_eigenbasis(basis: &EigenBasis) -> SquareTable {
    let n = basis.n();
    let simple = basis.spectrum().simple_indices();
    let mut table = vec![vec![None; n]; n];
    for (m, row) in table.iter_mut().enumerate() {
        for &i in &simple {
            let p = basis.vector(i)[m];
            row[i] = Some(p * p);
        }
    }
    SquareTable::finish(n, simple, table, Provenance::FromEigenbasis, Vec::new())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnComparison {
    pub index: usize,
    /// `max_m |p_{m,i}² − q_{m,i}²|`; `None` when the column is simple in
    /// only one of the tables.
    pub max_deviation: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquareComparison {
    pub tol: f64,
    pub columns: Vec<ColumnComparison>,
    pub pass: bool,
}

/// Column-by-column comparison of two square tables over matched spectra.
///
/// The caller is responsible for checking that the spectra agree; this only
/// compares table cells.
pub fn compare_squares(a: &SquareTable, b: &SquareTable, tol: f64) -> Result<SquareComparison> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let mut indices: Vec<usize> = a.simple.iter().chain(&b.simple).copied().collect();
    indices.sort_unstable();
    indices.dedup();
    let columns: Vec<ColumnComparison> = indices
        .into_iter()
        .map(|i| {
            let both = a.simple.contains(&i) && b.simple.contains(&i);
            let max_deviation = both.then(|| {
                (0..a.n).fold(0.0_f64, |acc, m| {
                    let d = a.table[m][i].unwrap_or(0.0) - b.table[m][i].unwrap_or(0.0);
                    acc.max(d.abs())
                })
            });
            ColumnComparison {
                index: i,
                max_deviation,
                pass: max_deviation.is_some_and(|d| d <= tol),
            }
        })
        .collect();
    let pass = columns.iter().all(|c| c.pass);
    Ok(SquareComparison { tol, columns, pass })
}
