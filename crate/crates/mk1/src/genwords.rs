//! Elements presented as words over a circuit-like generating set: a finite
//! set of named tables plus all adjacent-position letter transpositions.
//!
//! A generator word denotes the composite of its atoms, applied right to
//! left. `apply` realizes the unextended composite, which is what the
//! membership procedures quantify over; the expanded table is the
//! authority for monoid-level questions and the two agree on all words at
//! and below the composite's table depth.

use crate::error::{Error, Result};
use crate::hom::{Hom, MonoidElem};
use crate::words::{Alphabet, Word};
use std::collections::BTreeMap;
use std::fmt;

/// A named finite generating set; all member tables share one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    alphabet: Alphabet,
    named: BTreeMap<String, Hom>,
}

impl Generators {
    pub fn new(alphabet: Alphabet) -> Generators {
        Generators {
            alphabet,
            named: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: &str, table: Hom) -> Result<()> {
        self.alphabet.check_same(&table.alphabet())?;
        if self.named.contains_key(name) {
            return Err(Error::Domain(format!("generator {name} already defined")));
        }
        self.named.insert(name.to_string(), table);
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn get(&self, name: &str) -> Result<&Hom> {
        self.named
            .get(name)
            .ok_or_else(|| Error::Domain(format!("unknown generator {name}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.named.keys().map(String::as_str)
    }

    /// The constant `c`: the largest table depth among the members (0 for
    /// an empty set).
    pub fn max_table_depth(&self) -> usize {
        self.named.values().map(Hom::table_depth).max().unwrap_or(0)
    }

    /// The depth constant used in the bounded formulas: at least 1 so that
    /// transposition atoms are covered by `c * word_length`.
    pub fn depth_constant(&self) -> usize {
        self.max_table_depth().max(1)
    }
}

/// One atom of a generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// A named member of the generating set; length 1.
    Gen(String),
    /// The transposition of positions `i` and `i+1` (1-based); length `i+1`.
    Tau(usize),
}

/// A word over the generating set, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenWord {
    pub atoms: Vec<Atom>,
}

impl GenWord {
    pub fn new(atoms: Vec<Atom>) -> GenWord {
        GenWord { atoms }
    }

    /// Total length: named atoms count 1, `Tau(i)` counts `i + 1`.
    pub fn word_length(&self) -> usize {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Gen(_) => 1,
                Atom::Tau(i) => i + 1,
            })
            .sum()
    }

    pub fn validate(&self, gens: &Generators) -> Result<()> {
        for atom in &self.atoms {
            match atom {
                Atom::Gen(name) => {
                    gens.get(name)?;
                }
                Atom::Tau(i) if *i >= 1 => {}
                Atom::Tau(i) => {
                    return Err(Error::Domain(format!("transposition index {i} must be >= 1")))
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Gen(name) => write!(f, "{name}"),
            Atom::Tau(i) => write!(f, "\u{3c4}{i}"),
        }
    }
}

/// The table of the transposition swapping positions `i` and `i+1`:
/// domain and image code `A^(i+1)`.
pub fn tau_hom(alphabet: Alphabet, i: usize) -> Hom {
    let entries = alphabet.words_of_len(i + 1).into_iter().map(|w| {
        let mut letters = w.letters().to_vec();
        letters.swap(i - 1, i);
        let image = Word::from_letters(alphabet, letters).unwrap();
        (w, image)
    });
    Hom::new(alphabet, entries).expect("a full level is a prefix code")
}

/// Applies the word to `z`, atom by atom from the right; `None` as soon as
/// any step is undefined. This is the unextended composite's action.
pub fn apply(gens: &Generators, word: &GenWord, z: &Word) -> Result<Option<Word>> {
    let mut current = z.clone();
    for atom in word.atoms.iter().rev() {
        match atom {
            Atom::Gen(name) => match gens.get(name)?.evaluate(&current) {
                Some(next) => current = next,
                None => return Ok(None),
            },
            Atom::Tau(i) => {
                if current.len() < i + 1 {
                    return Ok(None);
                }
                let mut letters = current.letters().to_vec();
                letters.swap(i - 1, *i);
                current = Word::from_letters(gens.alphabet(), letters)?;
            }
        }
    }
    Ok(Some(current))
}

fn check_budget(needed: u64, budget: u64) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// `k^exp`, saturating.
fn pow_sat(k: usize, exp: usize) -> u64 {
    let mut out: u64 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(k as u64);
    }
    out
}

/// Expands the word to its table by folding composition; the result is the
/// maximally extended element. The depth of the unextended composite is
/// checked against the `c * word_length` bound.
pub fn expand_to_table(gens: &Generators, word: &GenWord, budget: u64) -> Result<MonoidElem> {
    word.validate(gens)?;
    let bound = gens.depth_constant() * word.word_length();
    check_budget(pow_sat(gens.alphabet().k(), bound), budget)?;
    let mut acc = Hom::one(gens.alphabet());
    for atom in word.atoms.iter().rev() {
        let table = match atom {
            Atom::Gen(name) => gens.get(name)?.clone(),
            Atom::Tau(i) => tau_hom(gens.alphabet(), *i),
        };
        let composite = table.compose_table(&acc)?;
        assert!(
            composite.table_depth() <= bound,
            "table depth exceeded the c * word_length bound"
        );
        acc = composite;
    }
    Ok(acc.max_extend())
}

/// Membership of `z` in the domain of the unextended composite.
pub fn dom_member(gens: &Generators, word: &GenWord, z: &Word) -> Result<bool> {
    Ok(apply(gens, word, z)?.is_some())
}

/// Membership of `z` in the domain code of the unextended composite: `z`
/// is in the domain but its parent is not.
pub fn domc_member(gens: &Generators, word: &GenWord, z: &Word) -> Result<bool> {
    if !dom_member(gens, word, z)? {
        return Ok(false);
    }
    match z.parent() {
        Some(parent) => Ok(!dom_member(gens, word, &parent)?),
        None => Ok(true),
    }
}

/// Domain membership after maximal extension; can hold strictly more often
/// than [`dom_member`].
pub fn dom_member_extended(
    gens: &Generators,
    word: &GenWord,
    z: &Word,
    budget: u64,
) -> Result<bool> {
    Ok(expand_to_table(gens, word, budget)?.hom().evaluate(z).is_some())
}

/// Bounded existential search: is `z` a value of the composite? The guess
/// is bounded by `|z| + c * word_length`.
pub fn image_member_bruteforce(
    gens: &Generators,
    word: &GenWord,
    z: &Word,
    budget: u64,
) -> Result<bool> {
    word.validate(gens)?;
    let k = gens.alphabet().k();
    let bound = z.len() + gens.depth_constant() * word.word_length();
    check_budget(pow_sat(k, bound + 1), budget)?;
    for len in 0..=bound {
        for x in gens.alphabet().words_of_len(len) {
            if apply(gens, word, &x)? == Some(z.clone()) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The enumerated domain code of the unextended composite, with values.
fn bounded_domain_table(
    gens: &Generators,
    word: &GenWord,
    budget: u64,
) -> Result<Vec<(Word, Word)>> {
    word.validate(gens)?;
    let k = gens.alphabet().k();
    let bound = gens.depth_constant() * word.word_length();
    check_budget(pow_sat(k, bound + 1), budget)?;
    let mut table = Vec::new();
    for len in 0..=bound {
        for x in gens.alphabet().words_of_len(len) {
            if domc_member(gens, word, &x)? {
                let y = apply(gens, word, &x)?.expect("domain-code word");
                table.push((x, y));
            }
        }
    }
    Ok(table)
}

/// The bounded surjectivity formula: every word of length `N` has a value
/// of the composite as a prefix, `N = c * word_length`. Values and
/// domain-code words are no longer than `N`, so the witness search over
/// `x` in `A^{<=N}` is complete.
pub fn is_surjective_program(gens: &Generators, word: &GenWord, budget: u64) -> Result<bool> {
    word.validate(gens)?;
    let k = gens.alphabet().k();
    let n = gens.depth_constant() * word.word_length();
    check_budget(pow_sat(k, n).saturating_mul(pow_sat(k, n + 1)), budget)?;
    'targets: for y in gens.alphabet().words_of_len(n) {
        for len in 0..=n {
            for x in gens.alphabet().words_of_len(len) {
                if let Some(v) = apply(gens, word, &x)? {
                    if v.is_prefix_of(&y) {
                        continue 'targets;
                    }
                }
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// The bounded two-quantifier-block formula for `lo <=_R hi` on composite
/// words: for every low domain-code word with value `y`, either some high
/// value is a prefix of `y`, or the subtree of high values below `y` is
/// nonempty and saturated. A vertex already carrying a whole value above it
/// is covered and exempt.
pub fn r_leq_pi2(gens: &Generators, lo: &GenWord, hi: &GenWord, budget: u64) -> Result<bool> {
    let lo_table = bounded_domain_table(gens, lo, budget)?;
    let hi_table = bounded_domain_table(gens, hi, budget)?;
    let hi_values: Vec<&Word> = hi_table.iter().map(|(_, v)| v).collect();
    let imax = hi_values.iter().map(|v| v.len()).max().unwrap_or(0);
    let k = gens.alphabet().k();
    check_budget(
        (lo_table.len() as u64).saturating_mul(pow_sat(k, imax + 1)),
        budget,
    )?;
    for (_, y) in &lo_table {
        if hi_values.iter().any(|v| v.is_prefix_of(y)) {
            continue;
        }
        if !hi_values.iter().any(|v| y.is_prefix_of(v)) {
            // no value above or below: the subtree at y is empty
            return Ok(false);
        }
        // walk the vertices strictly between y and the values below it
        let mut frontier = vec![y.clone()];
        while let Some(z) = frontier.pop() {
            let internal = hi_values.iter().any(|v| z.is_strict_prefix_of(v));
            let plugged = hi_values.iter().any(|v| v.is_prefix_of(&z));
            if !internal || plugged {
                continue;
            }
            for l in gens.alphabet().letters() {
                let child = z.child(l);
                let covered = hi_values
                    .iter()
                    .any(|v| child.is_prefix_of(v) || v.is_prefix_of(&child));
                if !covered {
                    return Ok(false);
                }
                frontier.push(child);
            }
        }
    }
    Ok(true)
}

/// The bounded upper-bound formula `composite <=_R bound`: every length-`N`
/// domain word maps into the image ideal of `bound`, where
/// `N = max |domain-code word| + max_len(imC(bound))`.
pub fn r_upper_bound_check(
    gens: &Generators,
    word: &GenWord,
    bound: &Hom,
    budget: u64,
) -> Result<bool> {
    gens.alphabet().check_same(&bound.alphabet())?;
    let dom_table = bounded_domain_table(gens, word, budget)?;
    let ell_dom = dom_table.iter().map(|(x, _)| x.len()).max().unwrap_or(0);
    let target = bound.image_code();
    let n = ell_dom + target.max_len();
    let k = gens.alphabet().k();
    check_budget(pow_sat(k, n), budget)?;
    for x in gens.alphabet().words_of_len(n) {
        if let Some(v) = apply(gens, word, &x)? {
            if !target.ideal_contains(&v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The parsed structure of a `.gen` file: generator table references, the
/// optional alphabet, and the word itself.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenFileSpec {
    pub k: Option<usize>,
    /// `(hom file path, generator name)` pairs from `gamma` lines.
    pub gammas: Vec<(String, String)>,
    pub atoms: Vec<Atom>,
}

impl GenFileSpec {
    /// Parses the `.gen` text format:
    /// an optional `alphabet k=<n>` line, `gamma <file.hom> as <NAME>`
    /// lines, an `apply-order: right-to-left` line, and a single
    /// `word: ATOM ATOM ...` line where `ATOM` is a generator name or a
    /// transposition token `τ<i>` (also accepted as `t<i>`).
    pub fn parse(text: &str) -> Result<GenFileSpec> {
        let mut spec = GenFileSpec::default();
        let mut saw_word = false;
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
                spec.k = Some(k);
            } else if let Some(rest) = line.strip_prefix("gamma") {
                let (path, name) = rest
                    .trim()
                    .split_once(" as ")
                    .ok_or_else(|| Error::Parse(format!("bad gamma line: {line:?}")))?;
                spec.gammas
                    .push((path.trim().to_string(), name.trim().to_string()));
            } else if let Some(order) = line.strip_prefix("apply-order:") {
                if order.trim() != "right-to-left" {
                    return Err(Error::Parse(format!(
                        "unsupported apply order {:?}",
                        order.trim()
                    )));
                }
            } else if let Some(rest) = line.strip_prefix("word:") {
                if saw_word {
                    return Err(Error::Parse("multiple word lines".into()));
                }
                saw_word = true;
                for token in rest.split_whitespace() {
                    let tau = token
                        .strip_prefix('\u{3c4}')
                        .or_else(|| token.strip_prefix('t'));
                    match tau.and_then(|v| v.parse::<usize>().ok()) {
                        Some(i) if i >= 1 => spec.atoms.push(Atom::Tau(i)),
                        _ => spec.atoms.push(Atom::Gen(token.to_string())),
                    }
                }
            } else {
                return Err(Error::Parse(format!("unrecognized line: {line:?}")));
            }
        }
        Ok(spec)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(k) = self.k {
            out.push_str(&format!("alphabet k={k}\n"));
        }
        for (path, name) in &self.gammas {
            out.push_str(&format!("gamma {path} as {name}\n"));
        }
        out.push_str("apply-order: right-to-left\n");
        let tokens: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        out.push_str(&format!("word: {}\n", tokens.join(" ")));
        out
    }
}
