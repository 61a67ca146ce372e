//! Minimum-entropy bounded-factor parsing.
//!
//! Given a text `S` and a bound `m`, the parsers in [`parsing`] split `S`
//! into phrases of length at most `m` so that the surrogate coding cost
//! `-log p(y)` summed over the phrases is minimal, where `p` is derived from
//! substring occurrence counts. The resulting parsings have lower zeroth
//! (or first) order entropy than fixed-length block parsings, which makes
//! them a better base for entropy-coded text representations.
//!
//! The crate is organised bottom-up:
//!
//! - [`corpus`]: byte texts with a dense alphabet.
//! - [`substring_index`]: constant-time occurrence counts for short substrings.
//! - [`entropy`]: empirical entropies of texts and parsings.
//! - [`parsing`]: phrase costs, the two dynamic programs and the naive baselines.
//! - [`codec`]: Elias Delta, canonical Huffman codes and the archive format.
//! - [`random_access`]: `access(i)` over an H0 archive with sampled indexes.
//! - [`analysis`]: the per-`m` comparison rows printed by the CLI.

pub mod analysis;
pub mod codec;
pub mod corpus;
pub mod entropy;
mod error;
pub mod parsing;
pub mod random_access;
pub mod substring_index;

pub use corpus::{load_text, Alphabet, Text};
pub use error::{Error, Result};
pub use parsing::{Order, Parsing, Phrase};
