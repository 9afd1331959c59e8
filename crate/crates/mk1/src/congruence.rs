//! Prefix-code congruences: right congruences on a right ideal generated by
//! an equivalence on its prefix code.
//!
//! A congruence is stored as the partition of its domain code into blocks;
//! the classes on the ideal are the block translates `B w`. The rewriting
//! calculus (block restriction and extension) yields a unique maximal
//! extension, which canonicalizes essential equality. The end-refinement
//! preorder [`end_leq`] characterizes the monoid's L-preorder.

use crate::code::PrefixCode;
use crate::error::{Error, Result};
use crate::hom::Hom;
use crate::words::{Alphabet, Word};
use std::fmt;

/// Which representative a block selector picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pick {
    DictMin,
    DictMax,
}

/// A partition of a prefix code into nonempty blocks. The empty congruence
/// (no blocks) is the congruence of the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    alphabet: Alphabet,
    blocks: Vec<Vec<Word>>, // each block sorted; blocks sorted by first member
}

impl Congruence {
    pub fn new<I, B>(alphabet: Alphabet, blocks: I) -> Result<Congruence>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = Word>,
    {
        let mut bs: Vec<Vec<Word>> = Vec::new();
        let mut all: Vec<Word> = Vec::new();
        for block in blocks {
            let mut b: Vec<Word> = block.into_iter().collect();
            if b.is_empty() {
                return Err(Error::Domain("empty block in congruence".into()));
            }
            b.sort();
            b.dedup();
            all.extend(b.iter().cloned());
            bs.push(b);
        }
        // the union must be an antichain with no duplicates across blocks
        let code = PrefixCode::new(alphabet, all.clone())?;
        if code.len() != all.len() {
            return Err(Error::Domain("blocks are not disjoint".into()));
        }
        bs.sort();
        Ok(Congruence {
            alphabet,
            blocks: bs,
        })
    }

    pub fn empty(alphabet: Alphabet) -> Congruence {
        Congruence {
            alphabet,
            blocks: Vec::new(),
        }
    }

    /// The discrete congruence on `PA*`: singleton blocks.
    pub fn discrete(code: &PrefixCode) -> Congruence {
        Congruence {
            alphabet: code.alphabet(),
            blocks: code.iter().map(|w| vec![w.clone()]).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn blocks(&self) -> &[Vec<Word>] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::new(
            self.alphabet,
            self.blocks.iter().flatten().cloned(),
        )
        .expect("blocks partition an antichain")
    }

    /// Index of the block containing `w` exactly (not as an ideal member).
    pub fn block_index_of(&self, w: &Word) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(w).is_ok())
    }

    /// Block and suffix decomposition of an ideal member: `u = p s` with `p`
    /// in the domain code.
    fn decompose(&self, u: &Word) -> Option<(usize, Word)> {
        for (i, block) in self.blocks.iter().enumerate() {
            for p in block {
                if let Some(s) = p.suffix_after(u) {
                    return Some((i, s));
                }
            }
        }
        None
    }

    /// Whether `u` and `v` are congruent: both decompose over the same block
    /// with a common suffix. `None` if either lies outside the domain.
    pub fn trace(&self, u: &Word, v: &Word) -> Option<bool> {
        let (bu, su) = self.decompose(u)?;
        let (bv, sv) = self.decompose(v)?;
        Some(bu == bv && su == sv)
    }

    /// Rule: replace the block `B` by the `k` blocks `B a_i`.
    pub fn restrict_step(&self, block: &[Word]) -> Result<Congruence> {
        let mut target: Vec<Word> = block.to_vec();
        target.sort();
        target.dedup();
        let pos = self
            .blocks
            .iter()
            .position(|b| *b == target)
            .ok_or_else(|| Error::RuleNotApplicable("not a block of the congruence".into()))?;
        let mut blocks = self.blocks.clone();
        blocks.remove(pos);
        for l in self.alphabet.letters() {
            blocks.push(target.iter().map(|w| w.child(l)).collect());
        }
        Congruence::new(self.alphabet, blocks)
    }

    /// Rule: if `B a_1, ..., B a_k` are all blocks, replace them by `B`.
    pub fn extend_step(&self, block: &[Word]) -> Result<Congruence> {
        let mut base: Vec<Word> = block.to_vec();
        base.sort();
        base.dedup();
        let mut blocks = self.blocks.clone();
        for l in self.alphabet.letters() {
            let child: Vec<Word> = base.iter().map(|w| w.child(l)).collect();
            let pos = blocks.iter().position(|b| *b == child).ok_or_else(|| {
                Error::RuleNotApplicable(format!(
                    "missing child block for letter {}",
                    Alphabet::letter_to_char(l)
                ))
            })?;
            blocks.remove(pos);
        }
        blocks.push(base);
        Congruence::new(self.alphabet, blocks)
    }

    /// Applies `extend_step` to a fixed point; the unique maximal
    /// essentially-equal extension.
    pub fn max_extend(&self) -> Congruence {
        let mut current = self.clone();
        loop {
            let mut candidate: Option<Vec<Word>> = None;
            for block in &current.blocks {
                // a mergeable family is spotted at its first-letter block
                let Some(first_last) = block[0].last() else { continue };
                if !block.iter().all(|w| w.last() == Some(first_last)) {
                    continue;
                }
                let base: Vec<Word> = block.iter().map(|w| w.parent().unwrap()).collect();
                let applicable = self.alphabet.letters().all(|l| {
                    let child: Vec<Word> = base.iter().map(|w| w.child(l)).collect();
                    current.blocks.contains(&child)
                });
                if applicable {
                    candidate = Some(base);
                    break;
                }
            }
            match candidate {
                Some(base) => current = current.extend_step(&base).unwrap(),
                None => return current,
            }
        }
    }

    /// Essential equality: equal maximal extensions.
    pub fn ess_equal(&self, other: &Congruence) -> Result<bool> {
        self.alphabet.check_same(&other.alphabet)?;
        Ok(self.max_extend() == other.max_extend())
    }

    /// The fiber congruence of a table: blocks are the sets of domain words
    /// sharing an image word. Tables that are not prefix-code preserving are
    /// levelled first; the zero table has the empty congruence.
    pub fn fibers(f: &Hom) -> Congruence {
        if f.is_zero() {
            return Congruence::empty(f.alphabet());
        }
        let levelled;
        let g = if f.is_pc_preserving() {
            f
        } else {
            levelled = f.restrict_to_pc_preserving();
            &levelled
        };
        Congruence::new(g.alphabet(), g.fibers().into_values())
            .expect("fibers partition the domain code")
    }

    /// The idempotent selecting the dict-minimal or dict-maximal member of
    /// each block: `x -> rep([x])`.
    pub fn selector(&self, pick: Pick) -> Hom {
        let mut entries: Vec<(Word, Word)> = Vec::new();
        for block in &self.blocks {
            let rep = match pick {
                Pick::DictMin => block.first(),
                Pick::DictMax => block.last(),
            }
            .expect("blocks are nonempty");
            for x in block {
                entries.push((x.clone(), rep.clone()));
            }
        }
        Hom::new(self.alphabet, entries).expect("selector reuses the domain code")
    }

    /// Serializes to the `.cong` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet k={}\n", self.alphabet.k());
        for block in &self.blocks {
            let words: Vec<String> = block.iter().map(|w| w.to_string()).collect();
            out.push_str(&format!("block {}\n", words.join(", ")));
        }
        out
    }

    /// Parses the `.cong` text format: an `alphabet k=<n>` line, then one
    /// `block w1, w2, ...` line per block.
    pub fn from_text(text: &str) -> Result<Congruence> {
        let mut alphabet: Option<Alphabet> = None;
        let mut blocks: Vec<Vec<Word>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet") {
                let k = rest
                    .trim()
                    .strip_prefix("k=")
                    .and_then(|v| v.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad alphabet line: {line:?}")))?;
                alphabet = Some(Alphabet::new(k)?);
            } else if let Some(rest) = line.strip_prefix("block") {
                let a = alphabet
                    .ok_or_else(|| Error::Parse("block line before alphabet line".into()))?;
                let words = rest
                    .split(',')
                    .map(|part| Word::parse(a, part.trim()))
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(words);
            } else {
                return Err(Error::Parse(format!("unrecognized line: {line:?}")));
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Parse("missing alphabet line".into()))?;
        Congruence::new(alphabet, blocks)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, w) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{w}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Decides the end-refinement preorder `lo <=_end hi` ("hi end-refines lo").
///
/// Characterization on the ends: the domain ends of `lo` are contained in
/// those of `hi`, and every `hi`-class of ends within them is contained in a
/// `lo`-class. Finitely: for every pair `p, p'` in one `hi`-block and every
/// tail `v` one letter deeper than the `lo` domain code, the words `p v` and
/// `p' v` are either both outside `Dom(lo)` or `lo`-congruent. The
/// truncation depth suffices because a congruence relates `p v` to `p' v`
/// iff it relates their extensions, and every witness decomposition of an
/// aperiodic end is visible within `max_len(domC(lo))` letters of tail.
pub fn end_leq(lo: &Congruence, hi: &Congruence) -> Result<bool> {
    lo.alphabet.check_same(&hi.alphabet)?;
    let lo_code = lo.domain_code();
    if !lo_code.ends_subset(&hi.domain_code())? {
        return Ok(false);
    }
    let depth = lo_code.max_len() + 1;
    let tails = lo.alphabet.words_of_len(depth);
    for block in &hi.blocks {
        for (i, p) in block.iter().enumerate() {
            for p2 in &block[i + 1..] {
                for v in &tails {
                    let u1 = p.concat(v);
                    let u2 = p2.concat(v);
                    match (lo_code.ideal_contains(&u1), lo_code.ideal_contains(&u2)) {
                        (false, false) => {}
                        (true, true) => {
                            if lo.trace(&u1, &u2) != Some(true) {
                                return Ok(false);
                            }
                        }
                        _ => return Ok(false),
                    }
                }
            }
        }
    }
    Ok(true)
}

/// End-equivalence of congruences: mutual end-refinement.
pub fn end_equiv(a: &Congruence, b: &Congruence) -> Result<bool> {
    Ok(end_leq(a, b)? && end_leq(b, a)?)
}

/// Meet for the end-refinement lattice preorder: on the intersection of the
/// domains, congruent iff congruent in both. Canonicalized by `max_extend`.
pub fn meet(c1: &Congruence, c2: &Congruence) -> Result<Congruence> {
    c1.alphabet.check_same(&c2.alphabet)?;
    let code = c1.domain_code().ideal_intersection(&c2.domain_code())?;
    let words: Vec<Word> = code.words().to_vec();
    let blocks = group_by_relation(&words, |u, v| {
        c1.trace(u, v) == Some(true) && c2.trace(u, v) == Some(true)
    });
    Ok(Congruence::new(c1.alphabet, blocks)?.max_extend())
}

/// Join for the end-refinement lattice preorder: on the union of the
/// domains, the transitive closure of the two congruences, computed on a
/// common refined code. Canonicalized by `max_extend`.
///
/// The true join of two prefix-code congruences can have unbounded classes;
/// this finite surrogate merges exactly the pairs visible on the refined
/// code.
pub fn join(c1: &Congruence, c2: &Congruence) -> Result<Congruence> {
    c1.alphabet.check_same(&c2.alphabet)?;
    let p1 = c1.domain_code();
    let p2 = c2.domain_code();
    let mut code: Vec<Word> = PrefixCode::prune(
        c1.alphabet,
        p1.iter().chain(p2.iter()).cloned(),
    )?
    .words()
    .to_vec();
    // refine until every code word's subtree lies inside or outside each domain
    loop {
        let split = code.iter().position(|d| {
            [&p1, &p2].iter().any(|p| {
                !p.ideal_contains(d) && p.iter().any(|w| d.is_strict_prefix_of(w))
            })
        });
        match split {
            Some(i) => {
                let d = code.remove(i);
                code.extend(c1.alphabet.letters().map(|l| d.child(l)));
            }
            None => break,
        }
    }
    let blocks = group_by_closure(&code, |u, v| {
        c1.trace(u, v) == Some(true) || c2.trace(u, v) == Some(true)
    });
    Ok(Congruence::new(c1.alphabet, blocks)?.max_extend())
}

/// Groups words by an equivalence relation given as a pairwise test.
fn group_by_relation<F: Fn(&Word, &Word) -> bool>(words: &[Word], related: F) -> Vec<Vec<Word>> {
    let mut blocks: Vec<Vec<Word>> = Vec::new();
    for w in words {
        match blocks.iter_mut().find(|b| related(&b[0], w)) {
            Some(block) => block.push(w.clone()),
            None => blocks.push(vec![w.clone()]),
        }
    }
    blocks
}

/// Groups words by the transitive closure of an arbitrary symmetric pairwise
/// relation (union-find).
fn group_by_closure<F: Fn(&Word, &Word) -> bool>(words: &[Word], related: F) -> Vec<Vec<Word>> {
    let n = words.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (i, left) in words.iter().enumerate() {
        for (j, right) in words.iter().enumerate().skip(i + 1) {
            if related(left, right) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Word>> = Default::default();
    for (i, word) in words.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(word.clone());
    }
    groups.into_values().collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{cong, hom, w};

    #[test]
    fn trace_examples() {
        let c = cong("a ba | bb");
        assert_eq!(c.trace(&w("abb"), &w("babb")), Some(true));
        assert_eq!(c.trace(&w("bba"), &w("aa")), Some(false));
        assert_eq!(c.trace(&w("-"), &w("a")), None);
    }

    #[test]
    fn rewrite_step_examples() {
        let c = cong("a | b");
        assert_eq!(c.restrict_step(&[w("a")]).unwrap(), cong("aa | ab | b"));
        assert_eq!(
            cong("aa | ab | b").extend_step(&[w("a")]).unwrap(),
            cong("a | b")
        );
        assert!(cong("aa | b").extend_step(&[w("a")]).is_err());
    }

    #[test]
    fn max_extend_examples() {
        assert_eq!(cong("aa | ab | b").max_extend(), cong("-"));
        assert_eq!(cong("a ba | bb").max_extend(), cong("a ba | bb"));
        assert_eq!(cong("aa ba | ab bb").max_extend(), cong("a b"));
    }

    #[test]
    fn ess_equal_examples() {
        assert!(cong("aa | ab | b").ess_equal(&cong("-")).unwrap());
        assert!(cong("aa ba | ab bb").ess_equal(&cong("a b")).unwrap());
        assert!(!cong("a ba | bb").ess_equal(&cong("a | ba | bb")).unwrap());
    }

    #[test]
    fn end_leq_examples() {
        assert!(end_leq(&cong("a b"), &cong("a | b")).unwrap());
        assert!(!end_leq(&cong("a | b"), &cong("a b")).unwrap());
        assert!(end_leq(&cong("a ba | bb"), &cong("aa | ab | ba | bb")).unwrap());
    }

    #[test]
    fn end_leq_accepts_unaligned_letter_splits() {
        // the fine side splits the a-children but not the b-children; the
        // coarse-side class {a,b} still decomposes into its classes on ends
        let fine = cong("aa | ba | ab bb");
        assert_eq!(fine.max_extend(), fine);
        assert!(end_leq(&cong("a b"), &fine).unwrap());
        assert!(!end_leq(&fine, &cong("a b")).unwrap());
    }

    #[test]
    fn end_leq_sees_cross_level_classes() {
        // the fine side merges words of different lengths; the coarse side
        // does not, so refinement fails
        assert!(!end_leq(&cong("a | ba"), &cong("a ba")).unwrap());
        assert!(end_leq(&cong("a ba"), &cong("a | ba")).unwrap());
        // reflexivity on a mixed-length congruence
        assert!(end_leq(&cong("a ba"), &cong("a ba")).unwrap());
    }

    #[test]
    fn empty_congruence_cases() {
        let empty = Congruence::empty(crate::test_util::ab());
        assert!(end_leq(&empty, &cong("a b")).unwrap());
        assert!(!end_leq(&cong("a b"), &empty).unwrap());
        assert!(end_leq(&empty, &empty).unwrap());
    }

    #[test]
    fn meet_examples() {
        let c = cong("a ba | bb");
        assert_eq!(meet(&c, &c).unwrap(), c.max_extend());
        assert_eq!(
            meet(&cong("a b"), &cong("a | b")).unwrap(),
            cong("a | b").max_extend()
        );
    }

    #[test]
    fn join_examples() {
        assert_eq!(
            join(&cong("a ba"), &cong("a | ba bb")).unwrap(),
            cong("a ba bb")
        );
        let c = cong("a ba | bb");
        assert_eq!(join(&c, &c).unwrap(), c.max_extend());
        assert_eq!(
            join(&c, &Congruence::empty(crate::test_util::ab())).unwrap(),
            c.max_extend()
        );
    }

    #[test]
    fn fibers_examples() {
        assert_eq!(Congruence::fibers(&hom("a->aa ba->aa bb->ab")), cong("a ba | bb"));
        assert_eq!(Congruence::fibers(&Hom::one(crate::test_util::ab())), cong("-"));
        // levelled automatically when the image set is not a prefix code
        assert_eq!(Congruence::fibers(&hom("a->aa b->a")), cong("a ba | bb"));
        assert!(Congruence::fibers(&Hom::zero(crate::test_util::ab())).is_empty());
    }

    #[test]
    fn selector_examples() {
        let c = cong("a ba | bb");
        assert_eq!(c.selector(Pick::DictMax), hom("a->ba ba->ba bb->bb"));
        assert_eq!(c.selector(Pick::DictMin), hom("a->a ba->a bb->bb"));
        assert_eq!(cong("-").selector(Pick::DictMin), Hom::one(crate::test_util::ab()));
        for pick in [Pick::DictMin, Pick::DictMax] {
            assert!(c.selector(pick).is_idempotent());
        }
    }

    #[test]
    fn selector_fibers_roundtrip() {
        for spec in ["a ba | bb", "aa ab | b", "-", "a | b"] {
            let c = cong(spec);
            assert_eq!(Congruence::fibers(&c.selector(Pick::DictMin)), c);
            assert_eq!(Congruence::fibers(&c.selector(Pick::DictMax)), c);
        }
    }

    #[test]
    fn text_roundtrip() {
        for spec in ["a ba | bb", "-", "a | b"] {
            let c = cong(spec);
            assert_eq!(Congruence::from_text(&c.to_text()).unwrap(), c);
        }
        let empty = Congruence::empty(crate::test_util::ab());
        assert_eq!(Congruence::from_text(&empty.to_text()).unwrap(), empty);
    }
}
