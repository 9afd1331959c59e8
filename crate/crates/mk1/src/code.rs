//! Finite prefix codes and the right ideals they generate.
//!
//! A prefix code is a finite antichain of words under the prefix order; it is
//! the unique minimal generating set of the right ideal `PA*`. The empty code
//! is legal and generates the empty ideal. Comparisons between the ideals
//! (`ends_subset`, `ends_equal`) are decided on the generating codes.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};
use num_bigint::BigUint;
use std::collections::BTreeSet;
use std::fmt;

/// A finite antichain of words; generates the right ideal `PA*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixCode {
    alphabet: Alphabet,
    words: Vec<Word>, // sorted in dictionary order, pairwise prefix-incomparable
}

impl PrefixCode {
    pub fn empty(alphabet: Alphabet) -> PrefixCode {
        PrefixCode {
            alphabet,
            words: Vec::new(),
        }
    }

    /// The code `{e}` generating all of `A*`.
    pub fn root(alphabet: Alphabet) -> PrefixCode {
        PrefixCode {
            alphabet,
            words: vec![Word::empty(alphabet)],
        }
    }

    /// The full level `A^n`.
    pub fn full_level(alphabet: Alphabet, n: usize) -> PrefixCode {
        PrefixCode {
            alphabet,
            words: alphabet.words_of_len(n),
        }
    }

    /// Builds a code from the given words, failing if they are not an antichain.
    pub fn new<I: IntoIterator<Item = Word>>(alphabet: Alphabet, words: I) -> Result<PrefixCode> {
        let mut ws: Vec<Word> = Vec::new();
        for word in words {
            alphabet.check_same(&word.alphabet())?;
            ws.push(word);
        }
        ws.sort();
        ws.dedup();
        for pair in ws.windows(2) {
            // after sorting, a prefix immediately precedes its extensions
            if pair[0].is_prefix_of(&pair[1]) {
                return Err(Error::NotAntichain(
                    pair[0].to_string(),
                    pair[1].to_string(),
                ));
            }
        }
        Ok(PrefixCode {
            alphabet,
            words: ws,
        })
    }

    /// Minimal generating set of `SA*`: keeps the words with no strict prefix
    /// in the set.
    pub fn prune<I: IntoIterator<Item = Word>>(alphabet: Alphabet, words: I) -> Result<PrefixCode> {
        let mut ws: Vec<Word> = Vec::new();
        for word in words {
            alphabet.check_same(&word.alphabet())?;
            ws.push(word);
        }
        ws.sort();
        ws.dedup();
        let mut kept: Vec<Word> = Vec::new();
        for w in ws {
            match kept.last() {
                Some(prev) if prev.is_prefix_of(&w) => continue,
                _ => kept.push(w),
            }
        }
        Ok(PrefixCode {
            alphabet,
            words: kept,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Length of the longest member (0 for the empty code).
    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// The member that is a prefix of `w`, if any (unique in an antichain).
    pub fn member_prefix_of(&self, w: &Word) -> Option<&Word> {
        self.words.iter().find(|p| p.is_prefix_of(w))
    }

    /// Membership of `w` in the right ideal `PA*`.
    pub fn ideal_contains(&self, w: &Word) -> bool {
        self.member_prefix_of(w).is_some()
    }

    /// Maximality via tree saturation: no infinite path from the root escapes
    /// the code. The empty code is not maximal.
    pub fn is_maximal(&self) -> bool {
        if self.words.is_empty() {
            return false;
        }
        // internal vertices = strict prefixes of members
        let mut internal: BTreeSet<Word> = BTreeSet::new();
        for w in &self.words {
            let mut p = w.parent();
            while let Some(v) = p {
                p = v.parent();
                if !internal.insert(v) {
                    break;
                }
            }
        }
        if internal.is_empty() {
            // single-vertex tree: saturated iff the root itself is in the code
            return self.contains(&Word::empty(self.alphabet));
        }
        if !internal.contains(&Word::empty(self.alphabet)) {
            return false;
        }
        internal.iter().all(|v| {
            self.alphabet.letters().all(|l| {
                let c = v.child(l);
                internal.contains(&c) || self.contains(&c)
            })
        })
    }

    /// Maximality via the exact Kraft sum: `sum k^(-|p|) == 1`, computed in
    /// integers over the common denominator `k^max_len`.
    pub fn kraft_sum_is_one(&self) -> bool {
        if self.words.is_empty() {
            return false;
        }
        let k = BigUint::from(self.alphabet.k());
        let ell = self.max_len() as u32;
        let mut sum = BigUint::from(0u32);
        for w in &self.words {
            sum += k.pow(ell - w.len() as u32);
        }
        sum == k.pow(ell)
    }

    /// A code generating `PA* ∩ QA*`; always a subset of `P ∪ Q`.
    pub fn ideal_intersection(&self, other: &PrefixCode) -> Result<PrefixCode> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut gen: Vec<Word> = Vec::new();
        for p in &self.words {
            if other.ideal_contains(p) {
                gen.push(p.clone());
            }
        }
        for q in &other.words {
            if self.ideal_contains(q) {
                gen.push(q.clone());
            }
        }
        PrefixCode::prune(self.alphabet, gen)
    }

    /// A complement of `self` within `QA*`: a code `C` with
    /// `CA* ∩ PA* = {}` and `CA* ∪ PA*` end-equal to `QA*`.
    ///
    /// Construction: all words of length `max(max_len(P), max_len(Q))` inside
    /// `QA*` but outside `PA*`, then reduced to the extension normal form.
    pub fn complement_in(&self, q: &PrefixCode) -> Result<PrefixCode> {
        self.alphabet.check_same(&q.alphabet)?;
        if self.is_empty() {
            return Err(Error::Domain(
                "complement of the empty code is not defined".into(),
            ));
        }
        for p in &self.words {
            if !q.ideal_contains(p) {
                return Err(Error::Domain(format!(
                    "word {p} lies outside the enclosing ideal"
                )));
            }
        }
        let ell = self.max_len().max(q.max_len());
        let mut c: Vec<Word> = Vec::new();
        for q_word in &q.words {
            // extensions of q_word at depth ell (q_word never exceeds ell)
            for tail in self.alphabet.words_of_len(ell - q_word.len()) {
                let x = q_word.concat(&tail);
                if !self.ideal_contains(&x) {
                    c.push(x);
                }
            }
        }
        Ok(PrefixCode::new(self.alphabet, c)?.reduce())
    }

    /// Rule: replace `c` by its `k` children. Preserves the ends.
    pub fn restrict_step(&self, c: &Word) -> Result<PrefixCode> {
        if !self.contains(c) {
            return Err(Error::RuleNotApplicable(format!("{c} is not a member")));
        }
        let mut words: Vec<Word> = self.words.iter().filter(|w| *w != c).cloned().collect();
        words.extend(self.alphabet.letters().map(|l| c.child(l)));
        PrefixCode::new(self.alphabet, words)
    }

    /// Rule: replace the full child set `cA` by `c`. Preserves the ends.
    pub fn extend_step(&self, c: &Word) -> Result<PrefixCode> {
        let children: Vec<Word> = self.alphabet.letters().map(|l| c.child(l)).collect();
        if !children.iter().all(|w| self.contains(w)) {
            return Err(Error::RuleNotApplicable(format!(
                "not all children of {c} are members"
            )));
        }
        let mut words: Vec<Word> = self
            .words
            .iter()
            .filter(|w| !children.contains(w))
            .cloned()
            .collect();
        words.push(c.clone());
        PrefixCode::new(self.alphabet, words)
    }

    /// Applies `extend_step` to a fixed point; the unique normal form among
    /// codes generating the same ends.
    pub fn reduce(&self) -> PrefixCode {
        let mut words: BTreeSet<Word> = self.words.iter().cloned().collect();
        loop {
            let mut candidate: Option<Word> = None;
            for w in &words {
                if let Some(parent) = w.parent() {
                    if self
                        .alphabet
                        .letters()
                        .all(|l| words.contains(&parent.child(l)))
                    {
                        candidate = Some(parent);
                        break;
                    }
                }
            }
            match candidate {
                Some(parent) => {
                    for l in self.alphabet.letters() {
                        words.remove(&parent.child(l));
                    }
                    words.insert(parent);
                }
                None => break,
            }
        }
        PrefixCode {
            alphabet: self.alphabet,
            words: words.into_iter().collect(),
        }
    }

    /// Decides `ends(self A*) ⊆ ends(P A*)`.
    ///
    /// For each member `y`: either `P` contains a prefix of `y`, or the
    /// subtree rooted at `y` with leaf set `yA* ∩ P` must be saturated (a
    /// root with no leaves below it is unsaturated).
    pub fn ends_subset(&self, p: &PrefixCode) -> Result<bool> {
        self.alphabet.check_same(&p.alphabet)?;
        for y in &self.words {
            if p.member_prefix_of(y).is_some() {
                continue;
            }
            let leaves: Vec<&Word> = p.words.iter().filter(|w| y.is_prefix_of(w)).collect();
            if leaves.is_empty() {
                return Ok(false);
            }
            let mut internal: BTreeSet<Word> = BTreeSet::new();
            for leaf in &leaves {
                let mut v = leaf.parent();
                while let Some(x) = v {
                    if x.len() < y.len() {
                        break;
                    }
                    v = x.parent();
                    if !internal.insert(x) {
                        break;
                    }
                }
            }
            for x in &internal {
                for l in self.alphabet.letters() {
                    let c = x.child(l);
                    if !internal.contains(&c) && !p.contains(&c) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// End-equality of the generated ideals.
    pub fn ends_equal(&self, other: &PrefixCode) -> Result<bool> {
        Ok(self.ends_subset(other)? && other.ends_subset(self)?)
    }

    /// Parses `{aa,ab,b}`; `{}` is the empty code.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<PrefixCode> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {s:?}")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(PrefixCode::empty(alphabet));
        }
        let words = inner
            .split(',')
            .map(|part| Word::parse(alphabet, part.trim()))
            .collect::<Result<Vec<_>>>()?;
        PrefixCode::new(alphabet, words)
    }
}

// Display is used in file formats, so keep it canonical: sorted members,
// comma separated, braces.
impl fmt::Display for PrefixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}
