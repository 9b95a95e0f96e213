#![allow(dead_code)]

use eigenrecon::{eigh, SymmetricMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

/// Symmetric matrix with upper-triangle entries uniform in `[-1, 1]`.
pub fn random_symmetric<R: Rng>(n: usize, rng: &mut R) -> SymmetricMatrix {
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.gen_range(-1.0..=1.0);
            e[i * n + j] = x;
            e[j * n + i] = x;
        }
    }
    SymmetricMatrix::from_row_major(n, e).unwrap()
}

/// Resamples until the minimum eigenvalue gap is at least `rel_gap · spread`.
pub fn random_well_separated<R: Rng>(n: usize, rel_gap: f64, rng: &mut R) -> SymmetricMatrix {
    loop {
        let a = random_symmetric(n, rng);
        let b = eigh(&a).unwrap();
        let v = b.spectrum().values();
        let spread = b.spectrum().spread();
        let min_gap = v.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
        if n == 1 || min_gap >= rel_gap * spread {
            return a;
        }
    }
}

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn mat_vec(a: &SymmetricMatrix, v: &[f64]) -> Vec<f64> {
    a.mul_vec(v)
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖M v − µ v‖₂`.
pub fn residual(m: &SymmetricMatrix, v: &[f64], mu: f64) -> f64 {
    let mv = m.mul_vec(v);
    mv.iter()
        .zip(v)
        .map(|(a, b)| (a - mu * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Determinant by Gaussian elimination with partial pivoting; independent of
/// any eigensolver.
pub fn determinant(n: usize, mut a: Vec<f64>) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if a[piv * n + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in (col + 1)..n {
            let f = a[r * n + col] / p;
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
        }
    }
    det
}

/// `det(λI − A)` via elimination.
pub fn char_poly_direct(a: &SymmetricMatrix, lambda: f64) -> f64 {
    let n = a.n();
    let mut m: Vec<f64> = a.as_slice().iter().map(|v| -v).collect();
    for i in 0..n {
        m[i * n + i] += lambda;
    }
    determinant(n, m)
}
