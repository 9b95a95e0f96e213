//! Spectra of vertex-deleted principal submatrices.

use serde::Serialize;

use crate::eigen::eigh;
use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;
use crate::spectrum::Spectrum;

/// Slack allowed when checking Cauchy interlacing of a computed deck.
pub const INTERLACING_SLACK: f64 = 1e-8;

/// `cards[m]` is the spectrum of `A` with row and column `m` removed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralDeck {
    cards: Vec<Spectrum>,
}

impl SpectralDeck {
    pub fn from_cards(cards: Vec<Spectrum>) -> Self {
        Self { cards }
    }

    pub fn cards(&self) -> &[Spectrum] {
        &self.cards
    }

    pub fn card(&self, m: usize) -> &Spectrum {
        &self.cards[m]
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    /// Largest violation of `λ_k(A) ≥ λ_k(A_m) ≥ λ_{k+1}(A)` over all cards;
    /// zero when every card interlaces exactly.
    pub fn interlacing_violation(&self, parent: &Spectrum) -> f64 {
        let p = parent.values();
        let mut worst: f64 = 0.0;
        for card in &self.cards {
            if card.len() + 1 != p.len() {
                return f64::INFINITY;
            }
            for (k, &mu) in card.values().iter().enumerate() {
                worst = worst.max(mu - p[k]).max(p[k + 1] - mu);
            }
        }
        worst
    }

    pub fn interlaces(&self, parent: &Spectrum) -> bool {
        self.interlacing_violation(parent) <= INTERLACING_SLACK
    }
}

/// Computes the deck of `a` with the Jacobi solver, card by card in index
/// order.
pub fn deck(a: &SymmetricMatrix) -> Result<SpectralDeck> {
    let n = a.n();
    if n < 2 {
        return Err(Error::DeckTooSmall(n));
    }
    let cards = (0..n)
        .map(|m| eigh(&a.delete_vertex(m)).map(|b| b.spectrum().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralDeck { cards })
}
