//! Eigenvector data of real symmetric matrices recovered from the spectra of
//! the matrix and its vertex-deleted principal submatrices, together with
//! rank-one updates solved through the secular equation.
//!
//! * [`eigen`]: cyclic Jacobi eigensolver, the reference for everything else.
//! * [`deck`]: spectra of the principal submatrices `A_1 … A_n`.
//! * [`squares`]: squared eigenvector entries from a spectrum and its deck.
//! * [`secular`]: eigenpairs of `A + t·x xᵀ` with interlacing brackets.
//! * [`recon`]: pairwise comparison harness for matrices with matching decks.

pub mod deck;
pub mod eigen;
pub mod error;
pub mod format;
pub mod json;
pub mod matrix;
pub mod recon;
pub mod secular;
pub mod spectrum;
pub mod squares;

pub use deck::{deck, SpectralDeck};
pub use eigen::{eigh, eigh_with_cluster_tol, EigenBasis};
pub use error::{Error, Result};
pub use format::{emit_matrix, emit_vector, parse_matrix, parse_vector};
pub use matrix::SymmetricMatrix;
pub use secular::{build_secular, rank1_update, secular_eval, secular_roots, verify_det_identity, SecularSystem, UpdateResult};
pub use spectrum::{char_poly_derivative, char_poly_eval, cluster_spectrum, Spectrum};
pub use squares::{compare_squares, reconstruct_square, square_table_from_deck, square_table_from_eigenbasis, SquareTable};
