//! Right-ideal homomorphisms as finite tables, and their normal forms.
//!
//! A table maps each word of a prefix code (the domain code) to an arbitrary
//! word; it acts on the generated right ideal by `f(x w) = f(x) w`. Two
//! tables denote the same monoid element iff they have the same maximal
//! essentially-equal extension, which is the canonical representative.

use crate::code::PrefixCode;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A finite table `x_i -> y_i` whose domain words form a prefix code.
/// The empty table is the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hom {
    alphabet: Alphabet,
    entries: Vec<(Word, Word)>, // sorted by domain word; domain words form an antichain
}

impl Hom {
    pub fn new<I: IntoIterator<Item = (Word, Word)>>(alphabet: Alphabet, entries: I) -> Result<Hom> {
        let mut es: Vec<(Word, Word)> = Vec::new();
        for (x, y) in entries {
            alphabet.check_same(&x.alphabet())?;
            alphabet.check_same(&y.alphabet())?;
            es.push((x, y));
        }
        es.sort();
        es.dedup();
        for pair in es.windows(2) {
            if pair[0].0.is_prefix_of(&pair[1].0) {
                return Err(Error::NotAntichain(
                    pair[0].0.to_string(),
                    pair[1].0.to_string(),
                ));
            }
        }
        Ok(Hom {
            alphabet,
            entries: es,
        })
    }

    /// The zero element: the empty map.
    pub fn zero(alphabet: Alphabet) -> Hom {
        Hom {
            alphabet,
            entries: Vec::new(),
        }
    }

    /// The identity in normal form, `[- -> -]`.
    pub fn one(alphabet: Alphabet) -> Hom {
        let e = Word::empty(alphabet);
        Hom {
            alphabet,
            entries: vec![(e.clone(), e)],
        }
    }

    /// The partial identity on `PA*`.
    pub fn partial_identity(code: &PrefixCode) -> Hom {
        Hom {
            alphabet: code.alphabet(),
            entries: code.iter().map(|w| (w.clone(), w.clone())).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn entries(&self) -> &[(Word, Word)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::new(self.alphabet, self.entries.iter().map(|(x, _)| x.clone()))
            .expect("domain words are an antichain by construction")
    }

    /// The raw image words, repetitions and prefix-comparable words included.
    pub fn image_words(&self) -> Vec<Word> {
        self.entries.iter().map(|(_, y)| y.clone()).collect()
    }

    /// Minimal generating code of the image ideal.
    pub fn image_code(&self) -> PrefixCode {
        PrefixCode::prune(self.alphabet, self.image_words())
            .expect("image words share the table's alphabet")
    }

    /// Length of a longest word anywhere in the table.
    pub fn table_depth(&self) -> usize {
        self.entries
            .iter()
            .map(|(x, y)| x.len().max(y.len()))
            .max()
            .unwrap_or(0)
    }

    /// Applies the table: if some `x_i` is a prefix of `w`, returns
    /// `y_i (w - x_i)`; otherwise `None`.
    pub fn evaluate(&self, w: &Word) -> Option<Word> {
        for (x, y) in &self.entries {
            if let Some(s) = x.suffix_after(w) {
                return Some(y.concat(&s));
            }
        }
        None
    }

    /// Replaces the entry at `x` by its `k` child entries.
    pub fn restrict_step(&self, x: &Word) -> Result<Hom> {
        let pos = self
            .entries
            .iter()
            .position(|(u, _)| u == x)
            .ok_or_else(|| Error::RuleNotApplicable(format!("{x} is not a domain word")))?;
        let (_, y) = self.entries[pos].clone();
        let mut entries = self.entries.clone();
        entries.remove(pos);
        for l in self.alphabet.letters() {
            entries.push((x.child(l), y.child(l)));
        }
        Hom::new(self.alphabet, entries)
    }

    /// The unique maximal essentially-equal extension: while some `(x,y)` has
    /// all `k` child entries `(x a_i, y a_i)` present, merge them.
    pub fn max_extend(&self) -> MonoidElem {
        let mut map: BTreeMap<Word, Word> = self.entries.iter().cloned().collect();
        loop {
            let mut found: Option<(Word, Word)> = None;
            'scan: for (u, v) in &map {
                let (Some(x), Some(y)) = (u.parent(), v.parent()) else {
                    continue;
                };
                if u.last() != v.last() {
                    continue;
                }
                for l in self.alphabet.letters() {
                    if map.get(&x.child(l)) != Some(&y.child(l)) {
                        continue 'scan;
                    }
                }
                found = Some((x, y));
                break;
            }
            match found {
                Some((x, y)) => {
                    for l in self.alphabet.letters() {
                        map.remove(&x.child(l));
                    }
                    map.insert(x, y);
                }
                None => break,
            }
        }
        MonoidElem(Hom {
            alphabet: self.alphabet,
            entries: map.into_iter().collect(),
        })
    }

    /// The composite table for `self . other` (apply `other` first), without
    /// the final extension.
    pub fn compose_table(&self, other: &Hom) -> Result<Hom> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut entries: Vec<(Word, Word)> = Vec::new();
        for (x, y) in &other.entries {
            if let Some((p, q)) = self.entries.iter().find(|(p, _)| p.is_prefix_of(y)) {
                let s = p.suffix_after(y).unwrap();
                entries.push((x.clone(), q.concat(&s)));
            } else {
                for (p, q) in &self.entries {
                    if let Some(t) = y.suffix_after(p) {
                        entries.push((x.concat(&t), q.clone()));
                    }
                }
            }
        }
        Hom::new(self.alphabet, entries)
    }

    /// Multiplication in the monoid: composition followed by maximal
    /// extension. `other` is applied first.
    pub fn compose(&self, other: &Hom) -> Result<MonoidElem> {
        Ok(self.compose_table(other)?.max_extend())
    }

    /// Equality as monoid elements. Tables over different alphabets are
    /// never equal.
    pub fn eq_in_m(&self, other: &Hom) -> bool {
        self.alphabet == other.alphabet && self.max_extend() == other.max_extend()
    }

    /// Whether the image words form a prefix code (as a set; repetitions are
    /// fine).
    pub fn is_pc_preserving(&self) -> bool {
        let distinct: BTreeSet<&Word> = self.entries.iter().map(|(_, y)| y).collect();
        let ws: Vec<&Word> = distinct.into_iter().collect();
        ws.windows(2).all(|p| !p[0].is_prefix_of(p[1]))
    }

    /// Essentially-equal restriction levelling every image word to the
    /// length of the longest one; the result is prefix-code preserving.
    pub fn restrict_to_pc_preserving(&self) -> Hom {
        let ell = self.entries.iter().map(|(_, y)| y.len()).max().unwrap_or(0);
        let mut entries: Vec<(Word, Word)> = Vec::new();
        for (x, y) in &self.entries {
            for tail in self.alphabet.words_of_len(ell - y.len()) {
                entries.push((x.concat(&tail), y.concat(&tail)));
            }
        }
        Hom::new(self.alphabet, entries).expect("levelling keeps the domain an antichain")
    }

    /// Fibers of the table: domain words grouped by image word, sorted.
    pub(crate) fn fibers(&self) -> BTreeMap<Word, BTreeSet<Word>> {
        let mut fibers: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
        for (x, y) in &self.entries {
            fibers.entry(y.clone()).or_default().insert(x.clone());
        }
        fibers
    }

    /// Class-wise extension normal form, defined on prefix-code preserving
    /// tables: while some full family of fibers `{C a_i -> y a_i}` exists,
    /// merge it to `{C -> y}`.
    pub fn max_extend_classwise(&self) -> Result<Hom> {
        if !self.is_pc_preserving() {
            return Err(Error::Domain(
                "class-wise extension needs a prefix-code preserving table".into(),
            ));
        }
        let mut entries: Vec<(Word, Word)> = self.entries.clone();
        loop {
            let hom = Hom::new(self.alphabet, entries.clone())?;
            let fibers = hom.fibers();
            let mut replacement: Option<(BTreeSet<Word>, Word)> = None;
            'scan: for (v, fiber) in &fibers {
                let Some(y) = v.parent() else { continue };
                let i = v.last().unwrap();
                let mut class: BTreeSet<Word> = BTreeSet::new();
                for u in fiber {
                    if u.last() != Some(i) {
                        continue 'scan;
                    }
                    class.insert(u.parent().unwrap());
                }
                for l in self.alphabet.letters() {
                    let expected: BTreeSet<Word> = class.iter().map(|c| c.child(l)).collect();
                    if fibers.get(&y.child(l)) != Some(&expected) {
                        continue 'scan;
                    }
                }
                replacement = Some((class, y));
                break;
            }
            match replacement {
                Some((class, y)) => {
                    entries.retain(|(x, _)| {
                        !x.parent().is_some_and(|p| class.contains(&p))
                    });
                    for c in class {
                        entries.push((c, y.clone()));
                    }
                }
                None => return Ok(hom),
            }
        }
    }

    /// Idempotency by definition: the square equals the element.
    pub fn is_idempotent(&self) -> bool {
        match self.compose(self) {
            Ok(sq) => sq.hom().eq_in_m(self),
            Err(_) => false,
        }
    }

    /// The fast idempotency route: the table fixes every word of its image
    /// ideal, checked at padding depth `max_len(domain code)`.
    pub fn idempotent_fixes_image(&self) -> bool {
        let pad = self.domain_code().max_len();
        for y in self.image_code().iter() {
            for tail in self.alphabet.words_of_len(pad) {
                let w = y.concat(&tail);
                if self.evaluate(&w) != Some(w) {
                    return false;
                }
            }
        }
        true
    }

    /// An inverse table `g` with `f g f = f`, `g f g = g` and
    /// `f . g = id` on the image ideal: each image-code word is sent to its
    /// dictionary-minimal preimage.
    pub fn inverse(&self) -> Result<Hom> {
        if self.is_zero() {
            return Err(Error::Domain("the zero element has no inverse table".into()));
        }
        let mut entries: Vec<(Word, Word)> = Vec::new();
        for y in self.image_code().iter() {
            let preimage = self
                .entries
                .iter()
                .filter_map(|(x, v)| v.suffix_after(y).map(|s| x.concat(&s)))
                .min()
                .expect("image-code words have preimages");
            entries.push((y.clone(), preimage));
        }
        Hom::new(self.alphabet, entries)
    }

    /// Serializes to the `.hom` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet k={}\n", self.alphabet.k());
        for (x, y) in &self.entries {
            out.push_str(&format!("map {x} -> {y}\n"));
        }
        out
    }

    /// Parses the `.hom` text format: an `alphabet k=<n>` line, then one
    /// `map <word> -> <word>` line per entry. Blank lines and lines starting
    /// with `#` are ignored; `-` denotes the empty word.
    pub fn from_text(text: &str) -> Result<Hom> {
        let mut alphabet: Option<Alphabet> = None;
        let mut entries: Vec<(Word, Word)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet") {
                let rest = rest.trim();
                let k = rest
                    .strip_prefix("k=")
                    .and_then(|v| v.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad alphabet line: {line:?}")))?;
                alphabet = Some(Alphabet::new(k)?);
            } else if let Some(rest) = line.strip_prefix("map") {
                let a = alphabet
                    .ok_or_else(|| Error::Parse("map line before alphabet line".into()))?;
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| Error::Parse(format!("bad map line: {line:?}")))?;
                entries.push((Word::parse(a, lhs.trim())?, Word::parse(a, rhs.trim())?));
            } else {
                return Err(Error::Parse(format!("unrecognized line: {line:?}")));
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Parse("missing alphabet line".into()))?;
        Hom::new(alphabet, entries)
    }
}

impl fmt::Display for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (x, y)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "]")
    }
}

/// A table in normal form; structural equality is equality in the monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidElem(Hom);

impl MonoidElem {
    pub fn hom(&self) -> &Hom {
        &self.0
    }

    pub fn into_hom(self) -> Hom {
        self.0
    }
}

impl fmt::Display for MonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{ab, hom, w};

    #[test]
    fn evaluate_examples() {
        let f = hom("a->aa b->a");
        assert_eq!(f.evaluate(&w("ba")).unwrap(), w("aa"));
        assert_eq!(f.evaluate(&w("-")), None);
        assert_eq!(Hom::one(ab()).evaluate(&w("abb")).unwrap(), w("abb"));
    }

    #[test]
    fn max_extend_examples() {
        assert_eq!(hom("aa->ba ab->bb").max_extend().hom(), &hom("a->b"));
        assert_eq!(hom("a->a b->b").max_extend().hom(), &Hom::one(ab()));
        assert_eq!(
            hom("a->aa ba->aa bb->ab").max_extend().hom(),
            &hom("a->aa b->a")
        );
        assert!(Hom::zero(ab()).max_extend().hom().is_zero());
    }

    #[test]
    fn restrict_step_examples() {
        assert_eq!(
            hom("a->aa b->a").restrict_step(&w("b")).unwrap(),
            hom("a->aa ba->aa bb->ab")
        );
        assert_eq!(Hom::one(ab()).restrict_step(&w("-")).unwrap(), hom("a->a b->b"));
        assert!(hom("a->b").restrict_step(&w("b")).is_err());
    }

    #[test]
    fn compose_examples() {
        let f = hom("a->aa b->a");
        let g = hom("a->b b->a");
        assert_eq!(f.compose(&g).unwrap().hom(), &hom("a->a b->aa"));
        assert!(Hom::zero(ab()).compose(&g).unwrap().hom().is_zero());
        assert_eq!(Hom::one(ab()).compose(&g).unwrap(), g.max_extend());
    }

    #[test]
    fn compose_agrees_pointwise() {
        let f = hom("a->aa b->a");
        let g = hom("a->b b->a");
        let fg = f.compose(&g).unwrap();
        for z in ab().words_of_len(3) {
            let direct = g.evaluate(&z).and_then(|m| f.evaluate(&m));
            assert_eq!(fg.hom().evaluate(&z), direct, "at {z}");
        }
    }

    #[test]
    fn eq_in_m_examples() {
        assert!(hom("a->a b->b").eq_in_m(&Hom::one(ab())));
        let f = hom("a->aa b->a");
        assert!(f.eq_in_m(&f.restrict_step(&w("a")).unwrap()));
        assert!(f.eq_in_m(&hom("a->aa ba->aa bb->ab")));
        assert!(!f.eq_in_m(&hom("a->aa b->b")));
    }

    #[test]
    fn image_code_examples() {
        assert_eq!(
            hom("a->aa b->a").image_code(),
            PrefixCode::parse(ab(), "{a}").unwrap()
        );
        assert_eq!(
            Hom::one(ab()).image_code(),
            PrefixCode::parse(ab(), "{-}").unwrap()
        );
        assert_eq!(
            hom("a->ba b->bb").image_code(),
            PrefixCode::parse(ab(), "{ba,bb}").unwrap()
        );
    }

    #[test]
    fn pc_preserving_examples() {
        assert!(!hom("a->aa b->a").is_pc_preserving());
        assert!(hom("a->aa ba->aa bb->ab").is_pc_preserving());
        assert!(Hom::zero(ab()).is_pc_preserving());
        // repeated image words are fine
        assert!(hom("a->b b->b").is_pc_preserving());
    }

    #[test]
    fn restrict_to_pc_preserving_examples() {
        assert_eq!(
            hom("a->aa b->a").restrict_to_pc_preserving(),
            hom("a->aa ba->aa bb->ab")
        );
        assert_eq!(Hom::one(ab()).restrict_to_pc_preserving(), Hom::one(ab()));
        let f = hom("a->b b->ab");
        let levelled = f.restrict_to_pc_preserving();
        assert_eq!(levelled, hom("aa->ba ab->bb b->ab"));
        assert!(levelled.is_pc_preserving());
        assert!(levelled.eq_in_m(&f));
    }

    #[test]
    fn classwise_extension_examples() {
        let f = hom("a->aa ba->aa bb->ab");
        assert_eq!(f.max_extend_classwise().unwrap(), f);
        assert_eq!(hom("aa->ba ab->bb").max_extend_classwise().unwrap(), hom("a->b"));
        assert_eq!(Hom::one(ab()).max_extend_classwise().unwrap(), Hom::one(ab()));
        assert!(hom("a->aa b->a").max_extend_classwise().is_err());
    }

    #[test]
    fn idempotent_examples() {
        let idp = Hom::partial_identity(&PrefixCode::parse(ab(), "{aa,b}").unwrap());
        assert!(idp.is_idempotent());
        assert!(idp.idempotent_fixes_image());
        assert!(!hom("a->b b->a").is_idempotent());
        // fixes the image ideal pointwise, so idempotent
        assert!(hom("a->ba b->b").is_idempotent());
        assert!(hom("a->ba b->b").idempotent_fixes_image());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(hom("a->aa b->a").inverse().unwrap(), hom("a->b"));
        assert_eq!(Hom::one(ab()).inverse().unwrap(), Hom::one(ab()));
        assert_eq!(hom("a->ba b->bb").inverse().unwrap(), hom("ba->a bb->b"));
        assert!(Hom::zero(ab()).inverse().is_err());
    }

    #[test]
    fn inverse_contracts_on_worked_table() {
        let f = hom("a->aa b->a");
        let g = f.inverse().unwrap();
        let fgf = f.compose(&g).unwrap().hom().compose_table(&f).unwrap();
        assert!(fgf.eq_in_m(&f));
        let gfg = g.compose(&f).unwrap().hom().compose_table(&g).unwrap();
        assert!(gfg.eq_in_m(&g));
        let fg = f.compose(&g).unwrap();
        assert!(fg
            .hom()
            .eq_in_m(&Hom::partial_identity(&f.image_code())));
    }

    #[test]
    fn text_roundtrip() {
        for f in [hom("a->aa b->a"), Hom::zero(ab()), Hom::one(ab())] {
            let text = f.to_text();
            assert_eq!(Hom::from_text(&text).unwrap(), f);
        }
        let parsed = Hom::from_text("# comment\nalphabet k=2\n\nmap a -> -\nmap b -> ba\n").unwrap();
        assert_eq!(parsed, hom("a->- b->ba"));
    }
}
