//! Rank-one symmetric updates `A + t·x xᵀ` through the secular function
//!
//! ```text
//! P_t(λ) = 1 + Σ_k t·w_k / (λ_k − λ)
//! ```
//!
//! where the sum runs over the distinct eigenvalue clusters of `A` and
//! `w_k = Σ_{i ∈ cluster k} (p_i, x)²`. Clusters with negligible weight are
//! deflated: their eigenpairs pass through the update unchanged. Each
//! remaining cluster contributes one pole, the roots of `P_t` strictly
//! interlace those poles, and the eigenvector for a root `µ` is
//! `Σ_i p_i·q_i / (λ_i − µ)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eigen::{apply_sign_convention, eigh, EigenBasis};
use crate::error::{Error, Result};
use crate::matrix::{dot, norm, SymmetricMatrix};
use crate::spectrum::{char_poly_eval, Spectrum};

/// Clusters with `w_k ≤ DEFAULT_DEFLATE_TOL · ‖x‖²` are deflated.
pub const DEFAULT_DEFLATE_TOL: f64 = 1e-12;

/// Minimum root-to-pole distance, relative to `max(1, |λ_pole|)`, that
/// counts as strict interlacing.
pub const POLE_OFFSET: f64 = 1e-13;

/// Evaluation closer than this to an active pole is refused.
pub const POLE_GUARD: f64 = 1e-300;

pub const MAX_BISECTIONS: usize = 200;

/// Required final bracket width, relative to `max(1, |µ|)`.
pub const BRACKET_TOL: f64 = 1e-13;

/// Roots this close (relative to the spread of `A`) to a retained eigenvalue
/// are flagged as near-degenerate.
pub const NEAR_DEGENERATE_TOL: f64 = 1e-10;

/// One active pole of the secular function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActivePole {
    /// Index into `lambdas.clusters()`.
    pub cluster: usize,
    /// Cluster mean.
    pub value: f64,
    /// Aggregated weight `Σ q_i²` over the cluster.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecularSystem {
    lambdas: Spectrum,
    q: Vec<f64>,
    t: f64,
    x_norm2: f64,
    deflate_tol: f64,
    active: Vec<ActivePole>,
}

impl SecularSystem {
    pub fn lambdas(&self) -> &Spectrum {
        &self.lambdas
    }

    /// `q_i = (p_i, x)`.
    pub fn weights(&self) -> &[f64] {
        &self.q
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn x_norm2(&self) -> f64 {
        self.x_norm2
    }

    pub fn deflate_tol(&self) -> f64 {
        self.deflate_tol
    }

    /// Active poles, in descending order of value.
    pub fn active(&self) -> &[ActivePole] {
        &self.active
    }

    pub fn l(&self) -> usize {
        self.active.len()
    }

    fn is_active(&self, cluster: usize) -> bool {
        self.active.iter().any(|p| p.cluster == cluster)
    }
}

pub fn build_secular(basis: &EigenBasis, x: &[f64], t: f64, deflate_tol: f64) -> Result<SecularSystem> {
    let n = basis.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if !t.is_finite() || !(deflate_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t = {t}, deflate_tol = {deflate_tol}"
        )));
    }
    let lambdas = basis.spectrum().clone();
    let q: Vec<f64> = basis.vectors().iter().map(|p| dot(p, x)).collect();
    let x_norm2 = dot(x, x);
    let threshold = deflate_tol * x_norm2;
    let active = if t == 0.0 {
        Vec::new()
    } else {
        lambdas
            .clusters()
            .iter()
            .enumerate()
            .filter_map(|(c, range)| {
                let weight: f64 = q[range.clone()].iter().map(|v| v * v).sum();
                (weight > threshold).then(|| ActivePole {
                    cluster: c,
                    value: lambdas.cluster_value(c),
                    weight,
                })
            })
            .collect()
    };
    Ok(SecularSystem {
        lambdas,
        q,
        t,
        x_norm2,
        deflate_tol,
        active,
    })
}

/// `1 + Σ_{k∈S} t·w_k / (λ_k − λ)`.
pub fn secular_eval(sys: &SecularSystem, lambda: f64) -> Result<f64> {
    let mut acc = 1.0;
    for p in &sys.active {
        let d = p.value - lambda;
        if d.abs() <= POLE_GUARD {
            return Err(Error::AtPole { pole: p.value });
        }
        acc += sys.t * p.weight / d;
    }
    Ok(acc)
}

/// A root of the secular function stored relative to its nearest pole, so
/// that `λ_k − µ` can be formed without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularRoot {
    pub value: f64,
    /// Position in `active()` of the pole the root is measured from.
    pub origin: usize,
    /// `µ − origin pole`.
    pub offset: f64,
    /// Final bracket `(lo, hi)` in absolute coordinates.
    pub bracket: (f64, f64),
}

impl SecularRoot {
    /// `λ_k − µ` for active pole `k`, computed in shifted coordinates.
    pub fn gap(&self, sys: &SecularSystem, k: usize) -> f64 {
        (sys.active[k].value - sys.active[self.origin].value) - self.offset
    }
}

/// The shifted secular function around pole `origin`, sign-normalized so
/// that it is increasing in `δ` on every bracket.
struct Shifted<'a> {
    sys: &'a SecularSystem,
    diffs: Vec<f64>,
}

impl<'a> Shifted<'a> {
    fn new(sys: &'a SecularSystem, origin: usize) -> Self {
        let o = sys.active[origin].value;
        let diffs = sys.active.iter().map(|p| p.value - o).collect();
        Self { sys, diffs }
    }

    fn eval(&self, delta: f64) -> f64 {
        let t = self.sys.t;
        let p: f64 = 1.0
            + self
                .sys
                .active
                .iter()
                .zip(&self.diffs)
                .map(|(pole, d)| t * pole.weight / (d - delta))
                .sum::<f64>();
        if t > 0.0 {
            p
        } else {
            -p
        }
    }
}

/// Bisects an increasing function on `(lo, hi)` whose sign is negative at
/// `lo` and positive at `hi` (either possibly only as a limit at a pole).
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, scale: impl Fn(f64) -> f64) -> Result<(f64, f64, f64)> {
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            return Ok((mid, lo, hi));
        }
        let g = f(mid);
        if g == 0.0 {
            return Ok((mid, mid, mid));
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = lo + 0.5 * (hi - lo);
    if hi - lo <= BRACKET_TOL * scale(mid).max(1.0) {
        Ok((mid, lo, hi))
    } else {
        Err(Error::BracketFailure {
            lo,
            hi,
            iterations: MAX_BISECTIONS,
        })
    }
}

/// Spread of the eigenvalues of `A` in `sys`.
fn spread(sys: &SecularSystem) -> f64 {
    sys.lambdas.spread()
}

/// The `l` roots of `P_t`, in descending order.
///
/// For `t < 0` root `j` lies in `(λ_{j+1}, λ_j)` of the active poles, the
/// last one below the smallest pole. For `t > 0` root `j` lies in
/// `(λ_j, λ_{j−1})`, the first one above the largest pole. `P_t` is
/// monotone on every bracket, so each holds exactly one root.
pub fn secular_roots(sys: &SecularSystem) -> Result<Vec<SecularRoot>> {
    let l = sys.active.len();
    if sys.t == 0.0 || l == 0 {
        return Err(Error::InvalidParameter(
            "secular roots need t != 0 and at least one active pole".into(),
        ));
    }
    let cap = sys.t.abs() * sys.x_norm2 + spread(sys);
    let d: Vec<f64> = sys.active.iter().map(|p| p.value).collect();
    let neg = sys.t < 0.0;
    (0..l)
        .map(|j| {
            // poles bounding the bracket; `None` marks the unbounded side
            let (upper, lower) = if neg {
                (Some(j), (j + 1 < l).then_some(j + 1))
            } else {
                (j.checked_sub(1), Some(j))
            };
            match (lower, upper) {
                (Some(lo_k), Some(hi_k)) => {
                    let mid = 0.5 * (d[lo_k] + d[hi_k]);
                    let g_mid = {
                        let p = secular_eval(sys, mid)?;
                        if neg {
                            -p
                        } else {
                            p
                        }
                    };
                    if g_mid == 0.0 {
                        return Ok(SecularRoot {
                            value: mid,
                            origin: lo_k,
                            offset: mid - d[lo_k],
                            bracket: (mid, mid),
                        });
                    }
                    let (origin, lo, hi) = if g_mid > 0.0 {
                        (lo_k, 0.0, mid - d[lo_k])
                    } else {
                        (hi_k, mid - d[hi_k], 0.0)
                    };
                    solve_shifted(sys, origin, lo, hi)
                }
                (Some(lo_k), None) => solve_shifted(sys, lo_k, 0.0, cap),
                (None, Some(hi_k)) => solve_shifted(sys, hi_k, -cap, 0.0),
                (None, None) => unreachable!(),
            }
        })
        .collect()
}

fn solve_shifted(sys: &SecularSystem, origin: usize, lo: f64, hi: f64) -> Result<SecularRoot> {
    let shifted = Shifted::new(sys, origin);
    let o = sys.active[origin].value;
    // The far end of an unbounded bracket is a regular point and may be the
    // root itself.
    for end in [lo, hi] {
        if end != 0.0 && shifted.eval(end) == 0.0 {
            return Ok(SecularRoot {
                value: o + end,
                origin,
                offset: end,
                bracket: (o + end, o + end),
            });
        }
    }
    let (delta, blo, bhi) = bisect(|x| shifted.eval(x), lo, hi, |x| (o + x).abs())?;
    Ok(SecularRoot {
        value: o + delta,
        origin,
        offset: delta,
        bracket: (o + blo, o + bhi),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum Origin {
    /// Eigenvalue `i` of `A`, unchanged by the update.
    Retained(usize),
    /// Root `j` of the secular function.
    Root(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpdateEntry {
    pub value: f64,
    pub origin: Origin,
    /// Root within `NEAR_DEGENERATE_TOL · spread` of a retained eigenvalue.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub near_degenerate: bool,
}

/// Eigen-decomposition of `A + t·x xᵀ` assembled from that of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpdateResult {
    spectrum: Spectrum,
    entries: Vec<UpdateEntry>,
    vectors: Vec<Vec<f64>>,
    roots: Vec<SecularRoot>,
    active: Vec<ActivePole>,
}

impl UpdateResult {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Per-eigenvalue records, aligned with `spectrum().values()`.
    pub fn entries(&self) -> &[UpdateEntry] {
        &self.entries
    }

    /// Unit eigenvectors aligned with `entries()`. Root vectors come from the
    /// secular formula; retained vectors are eigenvectors of `A`.
    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Roots in descending order, as returned by [`secular_roots`].
    pub fn roots(&self) -> &[SecularRoot] {
        &self.roots
    }

    /// Active poles the roots interlace.
    pub fn active(&self) -> &[ActivePole] {
        &self.active
    }

    pub fn root_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e.origin, Origin::Root(_)))
            .map(|(k, _)| k)
    }

    pub fn into_basis(self) -> EigenBasis {
        EigenBasis::new(self.spectrum, self.vectors)
    }

    /// Smallest distance between a root and an interlacing pole, signed so
    /// that a negative value means the ordering is violated.
    pub fn interlacing_margin(&self, t: f64) -> f64 {
        let d: Vec<f64> = self.active.iter().map(|p| p.value).collect();
        let mu: Vec<f64> = self.roots.iter().map(|r| r.value).collect();
        let mut margin = f64::INFINITY;
        for j in 0..mu.len() {
            if t < 0.0 {
                margin = margin.min(d[j] - mu[j]);
                if j + 1 < d.len() {
                    margin = margin.min(mu[j] - d[j + 1]);
                }
            } else {
                margin = margin.min(mu[j] - d[j]);
                if j > 0 {
                    margin = margin.min(d[j - 1] - mu[j]);
                }
            }
        }
        margin
    }
}

pub fn rank1_update(basis: &EigenBasis, x: &[f64], t: f64) -> Result<UpdateResult> {
    rank1_update_with(basis, x, t, DEFAULT_DEFLATE_TOL)
}

pub fn rank1_update_with(basis: &EigenBasis, x: &[f64], t: f64, deflate_tol: f64) -> Result<UpdateResult> {
    let sys = build_secular(basis, x, t, deflate_tol)?;
    let n = basis.n();
    let spectrum = basis.spectrum();
    let values = spectrum.values();

    let mut entries: Vec<(UpdateEntry, Vec<f64>)> = Vec::with_capacity(n);
    for (c, range) in spectrum.clusters().iter().enumerate() {
        if !sys.is_active(c) {
            for i in range.clone() {
                entries.push((retained(values[i], i), basis.vector(i).to_vec()));
            }
        } else if range.len() > 1 {
            let complement = cluster_complement(&sys.q[range.clone()]);
            for (k, local) in complement.into_iter().enumerate() {
                let i = range.start + 1 + k;
                let mut v = vec![0.0; n];
                for (coef, idx) in local.iter().zip(range.clone()) {
                    axpy(&mut v, *coef, basis.vector(idx));
                }
                normalize(&mut v);
                apply_sign_convention(&mut v);
                entries.push((retained(values[i], i), v));
            }
        }
    }

    let roots = if sys.active.is_empty() {
        Vec::new()
    } else {
        secular_roots(&sys)?
    };
    let degenerate_tol = NEAR_DEGENERATE_TOL * spectrum.spread();
    let retained_values: Vec<f64> = entries.iter().map(|(e, _)| e.value).collect();
    for (j, root) in roots.iter().enumerate() {
        let mut v = vec![0.0; n];
        for (k, pole) in sys.active.iter().enumerate() {
            let gap = root.gap(&sys, k);
            for i in spectrum.clusters()[pole.cluster].clone() {
                axpy(&mut v, sys.q[i] / gap, basis.vector(i));
            }
        }
        normalize(&mut v);
        apply_sign_convention(&mut v);
        let near_degenerate = retained_values
            .iter()
            .any(|r| (r - root.value).abs() <= degenerate_tol);
        entries.push((
            UpdateEntry {
                value: root.value,
                origin: Origin::Root(j),
                near_degenerate,
            },
            v,
        ));
    }

    entries.sort_by(|(a, _), (b, _)| {
        b.value
            .total_cmp(&a.value)
            .then_with(|| origin_key(a.origin).cmp(&origin_key(b.origin)))
    });
    let (entries, vectors): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    let spectrum = Spectrum::from_unsorted(entries.iter().map(|e| e.value).collect());
    Ok(UpdateResult {
        spectrum,
        entries,
        vectors,
        roots,
        active: sys.active,
    })
}

fn retained(value: f64, i: usize) -> UpdateEntry {
    UpdateEntry {
        value,
        origin: Origin::Retained(i),
        near_degenerate: false,
    }
}

fn origin_key(o: Origin) -> (u8, usize) {
    match o {
        Origin::Retained(i) => (0, i),
        Origin::Root(j) => (1, j),
    }
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}

fn normalize(v: &mut [f64]) {
    let s = norm(v);
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
}

/// Orthonormal basis (in cluster-local coordinates) of the complement of `c`,
/// taken from the columns of the Householder reflector that maps `c` onto
/// the first axis.
fn cluster_complement(c: &[f64]) -> Vec<Vec<f64>> {
    let s = c.len();
    let cn = norm(c);
    let mut w: Vec<f64> = c.iter().map(|v| v / cn).collect();
    let sigma = if w[0] >= 0.0 { 1.0 } else { -1.0 };
    w[0] += sigma;
    let ww = dot(&w, &w);
    (1..s)
        .map(|j| {
            (0..s)
                .map(|r| {
                    let e = if r == j { 1.0 } else { 0.0 };
                    e - 2.0 * w[r] * w[j] / ww
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetProbe {
    pub lambda: f64,
    /// `det(λI − A − t·x xᵀ)` from the spectrum of the updated matrix.
    pub updated: f64,
    /// `det(λI − A) · P_t(λ)`.
    pub factored: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetReport {
    pub probes: Vec<DetProbe>,
    pub max_relative_deviation: f64,
}

/// Checks `det(A + t·x xᵀ − λI) = det(A − λI)·P_t(λ)` at `probes` random
/// points kept at least `1e-3 · spread` away from every eigenvalue of `A`
/// and of the updated matrix.
///
/// The left side uses the Jacobi spectrum of the explicitly formed update;
/// the right side uses only the spectrum and eigenvectors of `A`.
pub fn verify_det_identity(a: &SymmetricMatrix, x: &[f64], t: f64, probes: usize, seed: u64) -> Result<DetReport> {
    let basis = eigh(a)?;
    let sys = build_secular(&basis, x, t, DEFAULT_DEFLATE_TOL)?;
    let updated = eigh(&a.rank_one_update(x, t)?)?;
    let (s_a, s_u) = (basis.spectrum(), updated.spectrum());
    let lo = s_a.min().min(s_u.min());
    let hi = s_a.max().max(s_u.max());
    let scale = (hi - lo).max(1e-12);
    let sep = 1e-3 * scale;
    let forbidden: Vec<f64> = s_a.values().iter().chain(s_u.values()).copied().collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(probes);
    let mut attempts = 0usize;
    while out.len() < probes {
        attempts += 1;
        if attempts > 1000 * (probes + 1) {
            return Err(Error::InvalidParameter(
                "could not place probe points away from the spectrum".into(),
            ));
        }
        let lambda = rng.gen_range(lo - scale..hi + scale);
        if forbidden.iter().any(|v| (v - lambda).abs() < sep) {
            continue;
        }
        let lhs = char_poly_eval(s_u, lambda);
        let rhs = char_poly_eval(s_a, lambda) * secular_eval(&sys, lambda)?;
        let denom = lhs.abs().max(rhs.abs());
        let relative_deviation = if denom == 0.0 { 0.0 } else { (lhs - rhs).abs() / denom };
        out.push(DetProbe {
            lambda,
            updated: lhs,
            factored: rhs,
            relative_deviation,
        });
    }
    let max_relative_deviation = out.iter().fold(0.0_f64, |m, p| m.max(p.relative_deviation));
    Ok(DetReport {
        probes: out,
        max_relative_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_of(rows: &[Vec<f64>]) -> EigenBasis {
        eigh(&SymmetricMatrix::from_rows(rows).unwrap()).unwrap()
    }

    const GOLDEN: f64 = 0.618_033_988_749_894_8;

    #[test]
    fn build_diag_unit_vector() {
        let b = basis_of(&[vec![2.0, 0.0], vec![0.0, 0.0]]);
        let sys = build_secular(&b, &[1.0, 0.0], -1.0, DEFAULT_DEFLATE_TOL).unwrap();
        assert_eq!(sys.weights(), &[1.0, 0.0]);
        assert_eq!(sys.l(), 1);
        assert_eq!(sys.active()[0].value, 2.0);
    }

    #[test]
    fn build_aggregates_repeated_cluster() {
        let b = eigh(&SymmetricMatrix::zeros(2)).unwrap();
        let sys = build_secular(&b, &[1.0, 1.0], 1.0, DEFAULT_DEFLATE_TOL).unwrap();
        assert_eq!(sys.l(), 1);
        assert!((sys.active()[0].weight - 2.0).abs() < 1e-15);
    }

    #[test]
    fn build_deflates_orthogonal_cluster() {
        // x = (1, 1, 0) is orthogonal to the eigenvector (1, -1, 0)/√2 of -1
        let b = basis_of(&[
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ]);
        let sys = build_secular(&b, &[1.0, 1.0, 0.0], -1.0, DEFAULT_DEFLATE_TOL).unwrap();
        assert_eq!(sys.l(), 1);
        assert!((sys.active()[0].value - 1.0).abs() < 1e-15);
        let sys0 = build_secular(&b, &[1.0, 1.0, 0.0], 0.0, DEFAULT_DEFLATE_TOL).unwrap();
        assert_eq!(sys0.l(), 0);
        assert!(build_secular(&b, &[1.0], 1.0, DEFAULT_DEFLATE_TOL).is_err());
    }

    fn swap_system(t: f64) -> SecularSystem {
        let b = basis_of(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        // x = e1 gives q = (1/√2, 1/√2)
        build_secular(&b, &[1.0, 0.0], t, DEFAULT_DEFLATE_TOL).unwrap()
    }

    #[test]
    fn eval_values() {
        let sys = swap_system(0.0);
        assert_eq!(secular_eval(&sys, 123.0).unwrap(), 1.0);
        let sys = swap_system(-1.0);
        let q = sys.weights();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((q[0] - h).abs() < 1e-15 && (q[1] - h).abs() < 1e-15);
        assert!((secular_eval(&sys, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(secular_eval(&sys, GOLDEN).unwrap().abs() < 1e-15);
        assert!(matches!(secular_eval(&sys, 1.0), Err(Error::AtPole { .. })));
    }

    #[test]
    fn roots_of_golden_system() {
        let sys = swap_system(-1.0);
        let roots = secular_roots(&sys).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value - GOLDEN).abs() < 1e-14);
        assert!((roots[1].value - (-1.0 - GOLDEN)).abs() < 1e-14);
        assert!(1.0 > roots[0].value && roots[0].value > -1.0 && -1.0 > roots[1].value);
        for r in &roots {
            assert!(r.bracket.1 - r.bracket.0 <= BRACKET_TOL * r.value.abs().max(1.0));
        }
    }

    #[test]
    fn single_root_diag() {
        let b = basis_of(&[vec![2.0, 0.0], vec![0.0, 0.0]]);
        let sys = build_secular(&b, &[1.0, 0.0], -1.0, DEFAULT_DEFLATE_TOL).unwrap();
        let roots = secular_roots(&sys).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn roots_need_active_poles() {
        let sys = swap_system(0.0);
        assert!(secular_roots(&sys).is_err());
    }

    #[test]
    fn update_of_zero_by_ones() {
        let b = eigh(&SymmetricMatrix::zeros(2)).unwrap();
        let r = rank1_update(&b, &[1.0, 1.0], 1.0).unwrap();
        assert_eq!(r.spectrum().len(), 2);
        assert!((r.spectrum().values()[0] - 2.0).abs() < 1e-15);
        assert_eq!(r.spectrum().values()[1], 0.0);
        assert_eq!(r.entries()[0].origin, Origin::Root(0));
        assert_eq!(r.entries()[1].origin, Origin::Retained(1));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.vectors()[0][0] - h).abs() < 1e-15 && (r.vectors()[0][1] - h).abs() < 1e-15);
        // retained vector spans the complement of (1,1)
        assert!(dot(&r.vectors()[1], &[1.0, 1.0]).abs() < 1e-15);
    }

    #[test]
    fn update_of_swap_by_ones() {
        let b = basis_of(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        for t in [0.1, 1.0, 7.5] {
            let r = rank1_update(&b, &[1.0, 1.0], t).unwrap();
            let v = r.spectrum().values();
            assert!((v[0] - (1.0 + 2.0 * t)).abs() < 1e-12);
            assert!((v[1] + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_t_returns_input() {
        let b = basis_of(&[vec![1.0, 2.0], vec![2.0, -3.0]]);
        let r = rank1_update(&b, &[1.0, 1.0], 0.0).unwrap();
        assert_eq!(r.spectrum().values(), b.spectrum().values());
        assert_eq!(r.vectors(), b.vectors());
        assert!(r.entries().iter().all(|e| matches!(e.origin, Origin::Retained(_))));
    }

    #[test]
    fn repeated_cluster_keeps_one_copy() {
        // J_3 + t J_3 = (1 + t) J_3: eigenvalues (3(1+t), 0, 0)
        let b = eigh(&SymmetricMatrix::ones(3)).unwrap();
        let r = rank1_update(&b, &[1.0, 1.0, 1.0], -0.5).unwrap();
        let v = r.spectrum().values();
        assert!((v[0] - 1.5).abs() < 1e-13);
        assert!(v[1].abs() < 1e-13 && v[2].abs() < 1e-13);

        // diag(1,1,0) + t e1 e1ᵀ: one copy of 1 stays, the other moves to 1+t
        let b = eigh(&SymmetricMatrix::diagonal(&[1.0, 1.0, 0.0])).unwrap();
        let r = rank1_update(&b, &[1.0, 0.0, 0.0], 2.0).unwrap();
        let v = r.spectrum().values();
        assert!((v[0] - 3.0).abs() < 1e-13);
        assert_eq!(v[1], 1.0);
        assert_eq!(v[2], 0.0);
        assert!(matches!(r.entries()[1].origin, Origin::Retained(_)));
        assert!(r.vectors()[1][0].abs() < 1e-15);
    }

    #[test]
    fn det_identity_trivial_cases() {
        let a = SymmetricMatrix::path_graph(2);
        let rep = verify_det_identity(&a, &[1.0, 1.0], 0.0, 10, 1).unwrap();
        assert!(rep.max_relative_deviation <= 1e-12);
        for t in [-1.0, 0.5, 3.0] {
            let rep = verify_det_identity(&a, &[1.0, 1.0], t, 10, 2).unwrap();
            assert_eq!(rep.probes.len(), 10);
            assert!(rep.max_relative_deviation <= 1e-12);
            for p in &rep.probes {
                let l = p.lambda;
                // (λ - (1+2t))(λ + 1)
                let exact = (l - (1.0 + 2.0 * t)) * (l + 1.0);
                assert!((p.factored - exact).abs() <= 1e-12 * exact.abs().max(1.0));
            }
        }
    }
}
