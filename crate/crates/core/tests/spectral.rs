mod common;

use common::{char_poly_direct, random_permutation, random_symmetric, random_well_separated};
use eigenrecon::squares::Provenance;
use eigenrecon::{
    char_poly_derivative, char_poly_eval, compare_squares, deck, eigh, square_table_from_deck,
    square_table_from_eigenbasis, SymmetricMatrix,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn seeded_five_by_five_residual() {
    let a = random_symmetric(5, &mut rng(5));
    let b = eigh(&a).unwrap();
    assert!(b.reconstruction_error(&a) <= 1e-10 * 5.0 * a.max_abs().max(1.0));
    assert!(b.orthogonality_error() <= 1e-10 * 5.0);
}

#[test]
fn char_poly_matches_elimination_determinant() {
    let mut r = rng(11);
    for n in 1..=9 {
        let a = random_symmetric(n, &mut r);
        let spec = eigh(&a).unwrap().spectrum().clone();
        for lambda in [-1.7, -0.2, 0.45, 1.3, 2.9] {
            let via_spectrum = char_poly_eval(&spec, lambda);
            let direct = char_poly_direct(&a, lambda);
            assert!(
                (via_spectrum - direct).abs() <= 1e-9 * direct.abs(),
                "n={n} λ={lambda}: {via_spectrum} vs {direct}"
            );
        }
    }
}

#[test]
fn seeded_six_by_six_deck_identity() {
    let a = random_symmetric(6, &mut rng(6));
    let parent = eigh(&a).unwrap();
    let d = deck(&a).unwrap();
    assert!(d.interlaces(parent.spectrum()));
    assert!(d.cards().iter().all(|c| c.len() == 5));
    for lambda in [-2.0, -0.5, 0.1, 0.8, 2.4] {
        let lhs = char_poly_derivative(parent.spectrum(), lambda);
        let rhs: f64 = d.cards().iter().map(|c| char_poly_eval(c, lambda)).sum();
        assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs());
    }
}

#[test]
fn seeded_eight_by_eight_squares_match_eigenvectors() {
    let a = random_well_separated(8, 1e-6, &mut rng(8));
    let basis = eigh(&a).unwrap();
    let from_deck = square_table_from_deck(basis.spectrum(), &deck(&a).unwrap()).unwrap();
    let oracle = square_table_from_eigenbasis(&basis);
    assert_eq!(from_deck.provenance(), Provenance::FromDeck);
    assert_eq!(oracle.provenance(), Provenance::FromEigenbasis);
    assert_eq!(from_deck.simple(), &[0, 1, 2, 3, 4, 5, 6, 7]);
    for m in 0..8 {
        for i in 0..8 {
            let d = (from_deck.get(m, i).unwrap() - oracle.get(m, i).unwrap()).abs();
            assert!(d <= 1e-8, "cell ({m}, {i}) off by {d}");
        }
    }
}

/// Weighted path on five vertices that is invariant under reversal but has a
/// simple spectrum.
fn reversal_symmetric() -> SymmetricMatrix {
    let d = [0.3, -0.7, 1.1, -0.7, 0.3];
    let off = [0.5, 1.2, 1.2, 0.5];
    let mut e = vec![0.0; 25];
    for i in 0..5 {
        e[i * 5 + i] = d[i];
    }
    for i in 0..4 {
        e[i * 5 + i + 1] = off[i];
        e[(i + 1) * 5 + i] = off[i];
    }
    SymmetricMatrix::from_row_major(5, e).unwrap()
}

#[test]
fn automorphism_preserves_squares() {
    let a = reversal_symmetric();
    let b = a.permuted(&[4, 3, 2, 1, 0]).unwrap();
    assert_eq!(a, b);
    let ea = eigh(&a).unwrap();
    assert_eq!(ea.spectrum().simple_indices().len(), 5);
    let ta = square_table_from_deck(ea.spectrum(), &deck(&a).unwrap()).unwrap();
    let eb = eigh(&b).unwrap();
    let tb = square_table_from_deck(eb.spectrum(), &deck(&b).unwrap()).unwrap();
    let cmp = compare_squares(&ta, &tb, 1e-10).unwrap();
    assert!(cmp.pass);
}

#[test]
fn relabeling_permutes_rows() {
    let mut r = rng(21);
    for n in [3, 5, 7] {
        let a = random_well_separated(n, 1e-6, &mut r);
        let perm = random_permutation(n, &mut r);
        let b = a.permuted(&perm).unwrap();
        let ta = square_table_from_deck(eigh(&a).unwrap().spectrum(), &deck(&a).unwrap()).unwrap();
        let tb = square_table_from_deck(eigh(&b).unwrap().spectrum(), &deck(&b).unwrap()).unwrap();
        for m in 0..n {
            for i in 0..n {
                let x = tb.get(m, i).unwrap();
                let y = ta.get(perm[m], i).unwrap();
                assert!((x - y).abs() <= 1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigh_invariants(n in 1usize..14, seed in any::<u64>()) {
        let a = random_symmetric(n, &mut rng(seed));
        let b = eigh(&a).unwrap();
        let nf = n as f64;
        prop_assert!(b.orthogonality_error() <= 1e-10 * nf);
        prop_assert!(b.reconstruction_error(&a) <= 1e-10 * nf * a.max_abs().max(1.0));
        prop_assert_eq!(&b, &eigh(&a).unwrap());
    }

    #[test]
    fn deck_interlaces(n in 2usize..11, seed in any::<u64>()) {
        let a = random_symmetric(n, &mut rng(seed));
        let d = deck(&a).unwrap();
        prop_assert!(d.interlaces(eigh(&a).unwrap().spectrum()));
    }

    #[test]
    fn squares_from_deck_equal_oracle(n in 2usize..13, seed in any::<u64>()) {
        let a = random_well_separated(n, 1e-6, &mut rng(seed));
        let basis = eigh(&a).unwrap();
        let table = square_table_from_deck(basis.spectrum(), &deck(&a).unwrap()).unwrap();
        let oracle = square_table_from_eigenbasis(&basis);
        prop_assert!(table.is_consistent());
        for m in 0..n {
            for &i in table.simple() {
                let d = (table.get(m, i).unwrap() - oracle.get(m, i).unwrap()).abs();
                prop_assert!(d <= 1e-8);
                let cell = table.get(m, i).unwrap();
                prop_assert!((0.0..=1.0).contains(&cell));
            }
            prop_assert!(table.row_sum(m) <= 1.0 + 1e-8);
        }
        for &i in table.simple() {
            prop_assert!((table.column_sum(i).unwrap() - 1.0).abs() <= 1e-8);
        }
    }
}
