//! Exact Kauffman bracket and Jones polynomial of braid closures through the
//! Temperley-Lieb algebra, and the Fibonacci-model unitary representation of
//! the braid group.
//!
//! - [`laurent`]: sparse Laurent polynomials over big integers.
//! - [`braid`]: braid words, writhe, closure permutation.
//! - [`tl`]: diagrammatic `TL_n`, its Markov trace, and the braid image.
//! - [`bracket`]: state-sum and trace evaluators, normalization, Jones.
//! - [`fibrep`]: Fibonacci sequences, generator matrices, relation checks.
//! - [`golden`]: exact arithmetic in `Z[φ][b]` for the golden-ratio matrices.
//! - [`cli`]: the `tlknot` command-line front end.

pub mod braid;
pub mod bracket;
pub mod cli;
pub mod error;
pub mod fibrep;
pub mod golden;
pub mod laurent;
pub mod tl;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use laurent::{JonesPoly, LaurentPoly};
pub use tl::{PlanarPairing, TLElement};
