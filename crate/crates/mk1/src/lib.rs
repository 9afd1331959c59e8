//! Thompson-Higman monoids of right-ideal homomorphisms over a finite
//! alphabet, with decision procedures for the R- and L-preorders.
//!
//! Elements are finite tables between prefix codes, identified up to maximal
//! essentially-equal extension. On top of the table algebra the crate builds:
//! prefix-code congruences with their rewriting calculus, the Green R/L
//! order deciders and multiplier constructions, density witnesses for both
//! strict orders, bounded brute-force deciders for elements presented as
//! words over a circuit-like generating set, and truth-table gadgets tying
//! surjectivity and injectivity of boolean functions to the monoid orders.

pub mod circuits;
pub mod code;
pub mod congruence;
pub mod density;
pub mod error;
pub mod genwords;
pub mod green;
pub mod hom;
pub mod oracle;
pub mod suite;
pub mod words;

#[cfg(test)]
pub(crate) mod test_util;

pub use code::PrefixCode;
pub use congruence::{Congruence, Pick};
pub use error::{Error, Result};
pub use hom::{Hom, MonoidElem};
pub use words::{Alphabet, Word};
