//! Alphabets and finite words.
//!
//! Words over a fixed `k`-letter alphabet are the vertices of the infinite
//! `k`-ary tree; everything else in the crate is built on top of them.
//! Letters are stored as indices `0..k` and rendered `'a'..'z'`. The empty
//! word prints as `"-"`.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A `k`-letter alphabet, `2 <= k <= 26`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    k: u8,
}

impl Alphabet {
    pub fn new(k: usize) -> Result<Alphabet> {
        if !(2..=26).contains(&k) {
            return Err(Error::BadArity(k));
        }
        Ok(Alphabet { k: k as u8 })
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Letter indices `0..k`.
    pub fn letters(&self) -> impl Iterator<Item = u8> {
        0..self.k
    }

    pub fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.k(), other.k()))
        }
    }

    pub fn letter_to_char(letter: u8) -> char {
        (b'a' + letter) as char
    }

    pub fn char_to_letter(&self, c: char) -> Result<u8> {
        let idx = (c as u32).wrapping_sub('a' as u32);
        if idx < self.k as u32 {
            Ok(idx as u8)
        } else {
            Err(Error::Parse(format!(
                "character {c:?} is not a letter of a {}-letter alphabet",
                self.k()
            )))
        }
    }

    /// All words of exactly length `n`, in dictionary order.
    pub fn words_of_len(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.k().pow(n as u32));
        let mut current = vec![0u8; n];
        loop {
            out.push(Word {
                alphabet: *self,
                letters: current.clone(),
            });
            // increment base-k counter
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if current[i] + 1 < self.k {
                    current[i] += 1;
                    for x in &mut current[i + 1..] {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }

    /// All words of length `0..=n`, in dictionary order.
    pub fn words_up_to_len(&self, n: usize) -> Vec<Word> {
        let mut out: Vec<Word> = (0..=n).flat_map(|l| self.words_of_len(l)).collect();
        out.sort();
        out
    }
}

/// A finite word over an [`Alphabet`]. The empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Word {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(alphabet: Alphabet, letters: Vec<u8>) -> Result<Word> {
        for &l in &letters {
            if l >= alphabet.k() as u8 {
                return Err(Error::BadLetter {
                    letter: l,
                    k: alphabet.k(),
                });
            }
        }
        Ok(Word { alphabet, letters })
    }

    /// Parses the ASCII rendering; `"-"` denotes the empty word.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Word> {
        if s == "-" {
            return Ok(Word::empty(alphabet));
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(alphabet.char_to_letter(c)?);
        }
        Ok(Word { alphabet, letters })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn last(&self) -> Option<u8> {
        self.letters.last().copied()
    }

    /// The word with one extra letter appended.
    pub fn child(&self, letter: u8) -> Word {
        debug_assert!(letter < self.alphabet.k() as u8);
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// The word with the last letter removed; `None` for the empty word.
    pub fn parent(&self) -> Option<Word> {
        if self.letters.is_empty() {
            return None;
        }
        Some(Word {
            alphabet: self.alphabet,
            letters: self.letters[..self.letters.len() - 1].to_vec(),
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet
            && other.letters.len() >= self.letters.len()
            && other.letters[..self.letters.len()] == self.letters[..]
    }

    pub fn is_strict_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    pub fn prefix_comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// `other` with the prefix `self` removed; `None` if `self` is not a prefix.
    pub fn suffix_after(&self, other: &Word) -> Option<Word> {
        if !self.is_prefix_of(other) {
            return None;
        }
        Some(Word {
            alphabet: self.alphabet,
            letters: other.letters[self.letters.len()..].to_vec(),
        })
    }

    /// Dictionary order with mismatched-alphabet detection.
    ///
    /// Lexicographic by letter index; of two prefix-comparable words the
    /// shorter one is smaller.
    pub fn dict_leq(&self, other: &Word) -> Result<bool> {
        self.alphabet.check_same(&other.alphabet)?;
        Ok(self <= other)
    }
}

// Comparison ignores the (always equal in practice) alphabet tag: plain
// lexicographic order on letter sequences, prefixes first.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "-");
        }
        for &l in &self.letters {
            write!(f, "{}", Alphabet::letter_to_char(l))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(ab(), s).unwrap()
    }

    #[test]
    fn arity_bounds() {
        assert!(Alphabet::new(1).is_err());
        assert!(Alphabet::new(27).is_err());
        assert_eq!(Alphabet::new(26).unwrap().k(), 26);
    }

    #[test]
    fn dict_order_examples() {
        assert!(w("a").dict_leq(&w("ba")).unwrap());
        assert!(w("ab").dict_leq(&w("ab")).unwrap());
        assert!(!w("bb").dict_leq(&w("ba")).unwrap());
        // shorter prefix-comparable word is smaller
        assert!(w("a").dict_leq(&w("ab")).unwrap());
        assert!(!w("ab").dict_leq(&w("a")).unwrap());
    }

    #[test]
    fn dict_order_alphabet_mismatch() {
        let x = Word::parse(Alphabet::new(3).unwrap(), "c").unwrap();
        assert_eq!(
            w("a").dict_leq(&x),
            Err(Error::AlphabetMismatch(2, 3))
        );
    }

    #[test]
    fn roundtrip_display_parse() {
        for s in ["-", "a", "b", "abba", "bbb"] {
            assert_eq!(Word::parse(ab(), s).unwrap().to_string(), s);
        }
        assert!(Word::parse(ab(), "c").is_err());
    }

    #[test]
    fn prefix_and_suffix() {
        assert!(w("a").is_prefix_of(&w("ab")));
        assert!(!w("b").is_prefix_of(&w("ab")));
        assert_eq!(w("a").suffix_after(&w("abb")).unwrap(), w("bb"));
        assert_eq!(w("ab").parent().unwrap(), w("a"));
        assert!(w("-").parent().is_none());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(ab().words_of_len(3).len(), 8);
        assert_eq!(ab().words_up_to_len(3).len(), 15);
        let tri = Alphabet::new(3).unwrap();
        assert_eq!(tri.words_of_len(2).len(), 9);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..2, 0..6)
            .prop_map(|ls| Word::from_letters(ab(), ls).unwrap())
    }

    proptest! {
        #[test]
        fn dict_order_is_total(u in arb_word(), v in arb_word()) {
            prop_assert!(u.dict_leq(&v).unwrap() || v.dict_leq(&u).unwrap());
            if u.dict_leq(&v).unwrap() && v.dict_leq(&u).unwrap() {
                prop_assert_eq!(u, v);
            }
        }

        #[test]
        fn concat_then_strip(u in arb_word(), v in arb_word()) {
            let uv = u.concat(&v);
            prop_assert!(u.is_prefix_of(&uv));
            prop_assert_eq!(u.suffix_after(&uv).unwrap(), v);
        }
    }
}
