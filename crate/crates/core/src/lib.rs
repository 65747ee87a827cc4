//! Perfect m-shuffles of a deck of cards and the permutation groups they generate.
//!
//! Permutations use destination maps and compose left to right; see [`perm`].

pub mod cayley;
pub mod error;
pub mod group;
pub mod perm;
pub mod shuffles;
pub mod structure;

pub use error::{Error, Result};
pub use perm::{Parity, Perm};
pub use shuffles::{DeckParams, DigitVector, PowerDeckParams, ShuffleKind};
