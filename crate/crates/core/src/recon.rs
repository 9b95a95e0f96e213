//! Pairwise comparison of two symmetric matrices that are expected to share
//! their spectrum and deck.
//!
//! [`verify_gm`] checks, for a candidate pair `(A, B)`:
//!
//! * equal spectra, and equal card spectra (index-aligned, or as multisets),
//! * equal squared eigenvector entries for every simple eigenvalue,
//! * equal orthogonal projections of `1` onto each eigenspace,
//! * equal eigenvectors, up to sign, for simple eigenvalues not orthogonal
//!   to `1`,
//! * equal lowest eigenpairs of `A + tJ` and `B + tJ` over sampled `t`.
//!
//! [`probe_permutation_conjecture`] searches exhaustively, for small `n`, for
//! a coordinate permutation carrying one simple eigenvector onto the other.

use std::ops::Range;

use serde::Serialize;

use crate::deck::{deck, SpectralDeck};
use crate::eigen::{eigh, EigenBasis};
use crate::error::{Error, Result};
use crate::matrix::{dot, norm, SymmetricMatrix};
use crate::secular::rank1_update;
use crate::squares::{compare_squares, square_table_from_deck, SquareComparison};

/// Maximum principal angle between eigenspaces that counts as equal.
pub const ANGLE_TOL: f64 = 1e-8;

/// Default comparison tolerance for [`verify_gm`].
pub const DEFAULT_TOL: f64 = 1e-8;

/// `(v, 1)` must exceed `SIGN_TOL · √n` in magnitude to fix a sign.
pub const SIGN_TOL: f64 = 1e-10;

pub const UNIT_TOL: f64 = 1e-8;

pub const DEFAULT_PERMUTATION_CAP: usize = 8;

/// Distance criterion `‖τ·p ∓ u‖ ≤ PERMUTATION_TOL` for the permutation probe.
pub const PERMUTATION_TOL: f64 = 1e-8;

/// `Σ_{i ∈ cluster} p_i (p_i, 1)`: the orthogonal projection of the all-ones
/// vector onto the span of the cluster's eigenvectors.
pub fn projection_of_ones(basis: &EigenBasis, cluster: Range<usize>) -> Vec<f64> {
    let n = basis.n();
    let mut out = vec![0.0; n];
    for i in cluster {
        let p = basis.vector(i);
        let c: f64 = p.iter().sum();
        out.iter_mut().zip(p).for_each(|(o, x)| *o += c * x);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignStatus {
    /// `(v, 1) > 0` already.
    Kept,
    /// `v` was negated.
    Flipped,
    /// `|(v, 1)|` is within the sign tolerance; `v` is returned unchanged.
    OrthogonalToOnes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalVector {
    pub vector: Vec<f64>,
    pub status: SignStatus,
}

/// Picks the sign of a unit vector that makes `(v, 1)` positive.
pub fn canonicalize_sign_along_ones(v: &[f64]) -> Result<CanonicalVector> {
    let nv = norm(v);
    if !((nv - 1.0).abs() <= UNIT_TOL) {
        return Err(Error::NotUnit { norm: nv });
    }
    let tol = SIGN_TOL * (v.len() as f64).sqrt();
    let s: f64 = v.iter().sum();
    Ok(if s > tol {
        CanonicalVector {
            vector: v.to_vec(),
            status: SignStatus::Kept,
        }
    } else if s < -tol {
        CanonicalVector {
            vector: v.iter().map(|x| -x).collect(),
            status: SignStatus::Flipped,
        }
    } else {
        CanonicalVector {
            vector: v.to_vec(),
            status: SignStatus::OrthogonalToOnes,
        }
    })
}

/// Principal angle between the lines spanned by unit vectors `u` and `v`.
///
/// Uses `2·asin(‖u ∓ v‖ / 2)`, which stays accurate for tiny angles where
/// `acos(|u·v|)` does not.
pub fn principal_angle(u: &[f64], v: &[f64]) -> f64 {
    let s = if dot(u, v) >= 0.0 { 1.0 } else { -1.0 };
    let d: f64 = u
        .iter()
        .zip(v)
        .map(|(a, b)| (a - s * b).powi(2))
        .sum::<f64>()
        .sqrt();
    2.0 * (0.5 * d).min(1.0).asin()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// `count` points spaced uniformly in `(lo, hi]`, ending at `hi`.
pub fn t_samples(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    (1..=count)
        .map(|k| lo + (hi - lo) * k as f64 / count as f64)
        .collect()
}

/// Sixteen points in `(−1, −1/16]`.
pub fn default_t_samples() -> Vec<f64> {
    t_samples(16, -1.0, -1.0 / 16.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    /// Difference in `λ_n(A + tJ)` between the secular and direct paths.
    pub value_deviation: f64,
    /// Angle between the two lowest eigenvectors; `None` when `λ_n` is not
    /// simple.
    pub angle: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremMainSample {
    pub t: f64,
    pub lowest_a: f64,
    pub lowest_b: f64,
    /// `|λ_n(A + tJ) − λ_n(B + tJ)|`.
    pub deviation: f64,
    pub simple_a: bool,
    pub simple_b: bool,
    /// Angle between the lowest eigenvectors, when both are simple.
    pub angle: Option<f64>,
    pub cross_check: CrossCheck,
}

impl TheoremMainSample {
    /// Samples where `λ_n` is repeated in either matrix say nothing about
    /// the interval on which the lowest eigenspaces agree.
    pub fn outside_interval(&self) -> bool {
        !(self.simple_a && self.simple_b)
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.deviation <= tol && self.angle.is_some_and(|a| a <= ANGLE_TOL)
    }
}

/// Compares the lowest eigenpairs of `A + tJ` and `B + tJ` for each `t`, and
/// cross-checks the lowest eigenpair of `A + tJ` against the rank-one
/// secular update of `A`.
pub fn verify_theorem_main(a: &SymmetricMatrix, b: &SymmetricMatrix, t_samples: &[f64]) -> Result<Vec<TheoremMainSample>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.n(),
        });
    }
    if t_samples.is_empty() {
        return Err(Error::InvalidParameter("t_samples is empty".into()));
    }
    let basis_a = eigh(a)?;
    let ones = vec![1.0; n];
    let last = n - 1;
    t_samples
        .iter()
        .map(|&t| {
            let ea = eigh(&a.plus_ones(t))?;
            let eb = eigh(&b.plus_ones(t))?;
            let (sa, sb) = (ea.spectrum(), eb.spectrum());
            let simple_a = sa.is_simple(last);
            let simple_b = sb.is_simple(last);
            let angle = (simple_a && simple_b)
                .then(|| principal_angle(ea.vector(last), eb.vector(last)));

            let update = rank1_update(&basis_a, &ones, t)?;
            let value_deviation = (update.spectrum().values()[last] - sa.values()[last]).abs();
            let cross_angle = simple_a.then(|| principal_angle(&update.vectors()[last], ea.vector(last)));
            let value_tol = 1e-9 * sa.spread().max(1.0);
            let pass = value_deviation <= value_tol && cross_angle.is_none_or(|x| x <= ANGLE_TOL);

            Ok(TheoremMainSample {
                t,
                lowest_a: sa.values()[last],
                lowest_b: sb.values()[last],
                deviation: (sa.values()[last] - sb.values()[last]).abs(),
                simple_a,
                simple_b,
                angle,
                cross_check: CrossCheck {
                    value_deviation,
                    angle: cross_angle,
                    pass,
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectraCheck {
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CardCheck {
    pub index: usize,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeckCheck {
    /// `"index-aligned"` or `"multiset"`: which comparison decides `pass`.
    pub mode: &'static str,
    pub cards: Vec<CardCheck>,
    pub max_deviation: f64,
    /// Whether the cards of `B` can be matched one-to-one to cards of `A`.
    pub multiset_pass: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquaresCheck {
    pub comparison: Option<SquareComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionRecord {
    pub start: usize,
    pub end: usize,
    pub eigenvalue: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub distance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionsCheck {
    pub clusters: Vec<ProjectionRecord>,
    /// The cluster partitions of the two spectra differ; no comparison made.
    pub structure_mismatch: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignResolution {
    /// Canonical eigenvectors coincide within tolerance.
    Match,
    Mismatch,
    /// `u_i` is orthogonal to `1` although `p_i` is not.
    OnesMismatch,
    /// `λ_i` is simple in `A` but not in `B`.
    NotSimpleInB,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignRecord {
    pub index: usize,
    pub resolution: SignResolution,
    pub distance: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignsCheck {
    pub entries: Vec<SignRecord>,
    /// Simple eigenvalues of `A` skipped because `p_i ⊥ 1`.
    pub orthogonal_to_ones: Vec<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremMainCheck {
    pub samples: Vec<TheoremMainSample>,
    pub outside_interval: usize,
    pub pass: bool,
}

/// Everything [`verify_gm`] found about a pair of matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub n: usize,
    pub tol: f64,
    pub spectra_equal: SpectraCheck,
    pub deck: DeckCheck,
    pub squares: SquaresCheck,
    pub projections: ProjectionsCheck,
    pub signs: SignsCheck,
    pub theorem_main: TheoremMainCheck,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GmOptions {
    pub tol: f64,
    /// Decide deck equality by matching cards as a multiset instead of by
    /// index.
    pub multiset_deck: bool,
    pub t_samples: Vec<f64>,
}

impl Default for GmOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            multiset_deck: false,
            t_samples: default_t_samples(),
        }
    }
}

pub fn verify_gm(a: &SymmetricMatrix, b: &SymmetricMatrix, opts: &GmOptions) -> Result<PairReport> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.n(),
        });
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {}", opts.tol)));
    }
    let tol = opts.tol;
    let ea = eigh(a)?;
    let eb = eigh(b)?;
    let (sa, sb) = (ea.spectrum(), eb.spectrum());

    let spec_dev = sa.max_deviation(sb);
    let spectra_equal = SpectraCheck {
        max_deviation: spec_dev,
        pass: spec_dev <= tol,
    };

    let (deck_check, decks) = if n >= 2 {
        let (da, db) = (deck(a)?, deck(b)?);
        (compare_decks(&da, &db, tol, opts.multiset_deck), Some((da, db)))
    } else {
        (
            DeckCheck {
                mode: deck_mode(opts.multiset_deck),
                cards: Vec::new(),
                max_deviation: 0.0,
                multiset_pass: Some(true),
                pass: true,
            },
            None,
        )
    };

    let squares = match (&decks, spectra_equal.pass) {
        (_, false) => SquaresCheck {
            comparison: None,
            note: Some("spectra differ; squared entries not compared".into()),
            pass: false,
        },
        (None, true) => SquaresCheck {
            comparison: None,
            note: Some("n = 1 has no deck".into()),
            pass: true,
        },
        (Some((da, db)), true) => {
            let ta = square_table_from_deck(sa, da)?;
            let tb = square_table_from_deck(sb, db)?;
            let cmp = compare_squares(&ta, &tb, tol)?;
            let consistent = ta.is_consistent() && tb.is_consistent();
            SquaresCheck {
                pass: cmp.pass && consistent,
                note: (!consistent).then(|| "reconstructed squares failed consistency checks".into()),
                comparison: Some(cmp),
            }
        }
    };

    let projections = compare_projections(&ea, &eb, tol);
    let signs = compare_signs(&ea, &eb, tol)?;

    let samples = verify_theorem_main(a, b, &opts.t_samples)?;
    let outside_interval = samples.iter().filter(|s| s.outside_interval()).count();
    let tm_pass = samples
        .iter()
        .all(|s| s.cross_check.pass && (s.outside_interval() || s.agrees(tol)));
    let theorem_main = TheoremMainCheck {
        samples,
        outside_interval,
        pass: tm_pass,
    };

    let pass = spectra_equal.pass
        && deck_check.pass
        && squares.pass
        && projections.pass
        && signs.pass
        && theorem_main.pass;
    Ok(PairReport {
        n,
        tol,
        spectra_equal,
        deck: deck_check,
        squares,
        projections,
        signs,
        theorem_main,
        pass,
    })
}

fn deck_mode(multiset: bool) -> &'static str {
    if multiset {
        "multiset"
    } else {
        "index-aligned"
    }
}

fn compare_decks(da: &SpectralDeck, db: &SpectralDeck, tol: f64, multiset: bool) -> DeckCheck {
    let cards: Vec<CardCheck> = da
        .cards()
        .iter()
        .zip(db.cards())
        .enumerate()
        .map(|(index, (ca, cb))| {
            let max_deviation = ca.max_deviation(cb);
            CardCheck {
                index,
                max_deviation,
                pass: max_deviation <= tol,
            }
        })
        .collect();
    let max_deviation = cards.iter().fold(0.0_f64, |m, c| m.max(c.max_deviation));
    let aligned = cards.iter().all(|c| c.pass);
    let multiset_pass = cards_match_as_multiset(da, db, tol);
    DeckCheck {
        mode: deck_mode(multiset),
        cards,
        max_deviation,
        multiset_pass: Some(multiset_pass),
        pass: if multiset { multiset_pass } else { aligned },
    }
}

/// Bipartite matching of cards whose spectra agree within `tol`.
fn cards_match_as_multiset(da: &SpectralDeck, db: &SpectralDeck, tol: f64) -> bool {
    let n = da.len();
    if db.len() != n {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| da.card(i).max_deviation(db.card(j)) <= tol)
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    (0..n).all(|i| {
        let mut seen = vec![false; n];
        augment(i, &adj, &mut seen, &mut owner)
    })
}

fn compare_projections(ea: &EigenBasis, eb: &EigenBasis, tol: f64) -> ProjectionsCheck {
    let (sa, sb) = (ea.spectrum(), eb.spectrum());
    if sa.clusters() != sb.clusters() {
        return ProjectionsCheck {
            clusters: Vec::new(),
            structure_mismatch: true,
            pass: false,
        };
    }
    let clusters: Vec<ProjectionRecord> = sa
        .clusters()
        .iter()
        .enumerate()
        .map(|(c, range)| {
            let pa = projection_of_ones(ea, range.clone());
            let pb = projection_of_ones(eb, range.clone());
            let d = distance(&pa, &pb);
            ProjectionRecord {
                start: range.start,
                end: range.end,
                eigenvalue: sa.cluster_value(c),
                a: pa,
                b: pb,
                distance: d,
                pass: d <= 10.0 * tol,
            }
        })
        .collect();
    let pass = clusters.iter().all(|c| c.pass);
    ProjectionsCheck {
        clusters,
        structure_mismatch: false,
        pass,
    }
}

fn compare_signs(ea: &EigenBasis, eb: &EigenBasis, tol: f64) -> Result<SignsCheck> {
    let mut entries = Vec::new();
    let mut orthogonal_to_ones = Vec::new();
    for i in ea.spectrum().simple_indices() {
        let p = canonicalize_sign_along_ones(ea.vector(i))?;
        if p.status == SignStatus::OrthogonalToOnes {
            orthogonal_to_ones.push(i);
            continue;
        }
        let record = if !eb.spectrum().is_simple(i) {
            SignRecord {
                index: i,
                resolution: SignResolution::NotSimpleInB,
                distance: None,
                pass: false,
            }
        } else {
            let u = canonicalize_sign_along_ones(eb.vector(i))?;
            let d = distance(&p.vector, &u.vector);
            let resolution = if u.status == SignStatus::OrthogonalToOnes {
                SignResolution::OnesMismatch
            } else if d <= tol {
                SignResolution::Match
            } else {
                SignResolution::Mismatch
            };
            SignRecord {
                index: i,
                resolution,
                distance: Some(d),
                pass: resolution == SignResolution::Match,
            }
        };
        entries.push(record);
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(SignsCheck {
        entries,
        orthogonal_to_ones,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ProbeOutcome {
    /// `u[k] = sign · p[permutation[k]]` for every `k`, within tolerance.
    Found {
        permutation: Vec<usize>,
        sign: f64,
        distance: f64,
    },
    /// No permutation meets the tolerance; `min_distance` is the best
    /// achievable `‖τ·p ∓ u‖` over all permutations and both signs.
    Exhausted { min_distance: f64 },
}

/// Exhaustive search for a permutation `τ` with `‖τ·p_i ∓ u_i‖ ≤ 1e-8`,
/// where `p_i` and `u_i` are the unit eigenvectors of the simple eigenvalue
/// `λ_i` of `A` and `B`, and `(τ·p)[k] = p[τ[k]]`.
///
/// The lexicographically first qualifying `τ` is returned. Candidates are
/// pruned as soon as the partial distance exceeds the tolerance, and the
/// whole search is skipped when the sorted magnitudes of the two vectors
/// already disagree.
pub fn probe_permutation_conjecture(a: &SymmetricMatrix, b: &SymmetricMatrix, i: usize, n_cap: usize) -> Result<ProbeOutcome> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.n(),
        });
    }
    if n > n_cap {
        return Err(Error::SearchTooLarge { n, cap: n_cap });
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let (ea, eb) = (eigh(a)?, eigh(b)?);
    for e in [&ea, &eb] {
        if !e.spectrum().is_simple(i) {
            let s = e.spectrum();
            return Err(Error::NotSimple {
                index: i,
                cluster_size: s.clusters()[s.cluster_of(i)].len(),
            });
        }
    }
    Ok(search_permutation(ea.vector(i), eb.vector(i), PERMUTATION_TOL))
}

pub(crate) fn search_permutation(p: &[f64], u: &[f64], tol: f64) -> ProbeOutcome {
    let sorted = |v: &[f64], f: fn(f64) -> f64| {
        let mut s: Vec<f64> = v.iter().map(|&x| f(x)).collect();
        s.sort_by(f64::total_cmp);
        s
    };
    let min_distance = [1.0, -1.0]
        .iter()
        .map(|&s| {
            let sp = sorted(p, |x| x);
            let su = sorted(u, if s > 0.0 { |x| x } else { |x: f64| -x });
            sp.iter().zip(&su).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
        })
        .fold(f64::INFINITY, f64::min);

    let abs_p = sorted(p, f64::abs);
    let abs_u = sorted(u, f64::abs);
    if abs_p.iter().zip(&abs_u).any(|(a, b)| (a - b).abs() > tol) {
        return ProbeOutcome::Exhausted { min_distance };
    }

    let mut best: Option<(Vec<usize>, f64)> = None;
    for sign in [1.0, -1.0] {
        let mut perm = Vec::with_capacity(p.len());
        let mut used = vec![false; p.len()];
        if extend(p, u, sign, tol * tol, 0.0, &mut perm, &mut used)
            && best.as_ref().is_none_or(|(b, _)| perm < *b)
        {
            best = Some((perm, sign));
        }
    }
    match best {
        Some((permutation, sign)) => {
            let d = permutation
                .iter()
                .zip(u)
                .map(|(&j, &uk)| (p[j] - sign * uk).powi(2))
                .sum::<f64>()
                .sqrt();
            ProbeOutcome::Found {
                permutation,
                sign,
                distance: d,
            }
        }
        None => ProbeOutcome::Exhausted { min_distance },
    }
}

fn extend(p: &[f64], u: &[f64], sign: f64, budget: f64, spent: f64, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let k = perm.len();
    if k == p.len() {
        return true;
    }
    for j in 0..p.len() {
        if used[j] {
            continue;
        }
        let cost = spent + (p[j] - sign * u[k]).powi(2);
        if cost > budget {
            continue;
        }
        used[j] = true;
        perm.push(j);
        if extend(p, u, sign, budget, cost, perm, used) {
            return true;
        }
        perm.pop();
        used[j] = false;
    }
    false
}
