//! Shorthand constructors shared by the unit tests.

use crate::code::PrefixCode;
use crate::congruence::Congruence;
use crate::hom::Hom;
use crate::words::{Alphabet, Word};

pub fn ab() -> Alphabet {
    Alphabet::new(2).unwrap()
}

pub fn w(s: &str) -> Word {
    Word::parse(ab(), s).unwrap()
}

pub fn pc(s: &str) -> PrefixCode {
    PrefixCode::parse(ab(), s).unwrap()
}

/// `hom("a->aa b->a")`; `hom("")` is the zero element.
pub fn hom(spec: &str) -> Hom {
    hom_k(ab(), spec)
}

pub fn hom_k(alphabet: Alphabet, spec: &str) -> Hom {
    let entries = spec.split_whitespace().map(|part| {
        let (l, r) = part.split_once("->").unwrap();
        (
            Word::parse(alphabet, l).unwrap(),
            Word::parse(alphabet, r).unwrap(),
        )
    });
    Hom::new(alphabet, entries).unwrap()
}

/// `cong("a ba | bb")`: blocks separated by `|`.
pub fn cong(spec: &str) -> Congruence {
    let blocks = spec
        .split('|')
        .map(|b| b.split_whitespace().map(w).collect::<Vec<_>>())
        .filter(|b| !b.is_empty());
    Congruence::new(ab(), blocks).unwrap()
}
