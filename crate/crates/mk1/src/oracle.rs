//! Brute-force reference implementations, exhaustive corpora, and random
//! generators. Everything here is deliberately independent of the decision
//! procedures it is used to check: the functions enumerate words and paths
//! directly from the definitions.

use crate::circuits::{Formula, Node};
use crate::code::PrefixCode;
use crate::congruence::Congruence;
use crate::error::Result;
use crate::hom::Hom;
use crate::words::{Alphabet, Word};
use rand::Rng;

/// Path oracle for end inclusion: every word at depth
/// `max(max_len(P), max_len(Q))` with a prefix in `Q` has a prefix in `P`.
pub fn ends_subset_paths(q: &PrefixCode, p: &PrefixCode) -> Result<bool> {
    q.alphabet().check_same(&p.alphabet())?;
    let depth = p.max_len().max(q.max_len());
    Ok(q
        .alphabet()
        .words_of_len(depth)
        .into_iter()
        .all(|w| !q.ideal_contains(&w) || p.ideal_contains(&w)))
}

/// Pointwise equality oracle for monoid elements: the two tables evaluate
/// identically (including undefinedness) on every word one letter deeper
/// than both tables.
pub fn eq_pointwise(f: &Hom, g: &Hom) -> bool {
    if f.alphabet() != g.alphabet() {
        return false;
    }
    let depth = f.table_depth().max(g.table_depth()) + 1;
    f.alphabet()
        .words_of_len(depth)
        .into_iter()
        .all(|w| f.evaluate(&w) == g.evaluate(&w))
}

/// All prefix codes whose words have length at most `depth` (the empty
/// code included). There are 677 of them for `k = 2, depth = 3`.
pub fn all_prefix_codes(alphabet: Alphabet, depth: usize) -> Vec<PrefixCode> {
    subtree_codes(alphabet, depth, &Word::empty(alphabet))
        .into_iter()
        .map(|ws| PrefixCode::new(alphabet, ws).expect("construction yields antichains"))
        .collect()
}

fn subtree_codes(alphabet: Alphabet, depth: usize, root: &Word) -> Vec<Vec<Word>> {
    let mut out = vec![vec![], vec![root.clone()]];
    if depth == 0 {
        return out;
    }
    out.pop(); // re-add {root} last to keep the empty set first
    let mut combos: Vec<Vec<Word>> = vec![vec![]];
    for l in alphabet.letters() {
        let child_codes = subtree_codes(alphabet, depth - 1, &root.child(l));
        combos = combos
            .into_iter()
            .flat_map(|acc| {
                child_codes.iter().map(move |c| {
                    let mut next = acc.clone();
                    next.extend(c.iter().cloned());
                    next
                })
            })
            .collect();
    }
    combos.remove(0); // the all-empty combination duplicates the empty set
    out.extend(combos);
    out.push(vec![root.clone()]);
    out
}

/// All maximal prefix codes of depth at most `depth`.
pub fn maximal_codes(alphabet: Alphabet, depth: usize) -> Vec<PrefixCode> {
    maximal_subtree_codes(alphabet, depth, &Word::empty(alphabet))
        .into_iter()
        .map(|ws| PrefixCode::new(alphabet, ws).expect("construction yields antichains"))
        .collect()
}

fn maximal_subtree_codes(alphabet: Alphabet, depth: usize, root: &Word) -> Vec<Vec<Word>> {
    let mut out = vec![vec![root.clone()]];
    if depth == 0 {
        return out;
    }
    let mut combos: Vec<Vec<Word>> = vec![vec![]];
    for l in alphabet.letters() {
        let child_codes = maximal_subtree_codes(alphabet, depth - 1, &root.child(l));
        combos = combos
            .into_iter()
            .flat_map(|acc| {
                child_codes.iter().map(move |c| {
                    let mut next = acc.clone();
                    next.extend(c.iter().cloned());
                    next
                })
            })
            .collect();
    }
    out.extend(combos);
    out
}

/// All set partitions of `items` (the empty slice has one partition: none).
pub fn set_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let mut out: Vec<Vec<Vec<T>>> = vec![Vec::new()];
    for item in items {
        let mut next = Vec::new();
        for partition in &out {
            for i in 0..partition.len() {
                let mut grown = partition.clone();
                grown[i].push(item.clone());
                next.push(grown);
            }
            let mut fresh = partition.clone();
            fresh.push(vec![item.clone()]);
            next.push(fresh);
        }
        out = next;
    }
    out
}

/// All prefix-code congruences with domain code inside `A^{<= depth}`.
pub fn all_congruences(alphabet: Alphabet, depth: usize) -> Vec<Congruence> {
    let mut out = Vec::new();
    for code in all_prefix_codes(alphabet, depth) {
        for partition in set_partitions(code.words()) {
            out.push(
                Congruence::new(alphabet, partition).expect("partitions of an antichain"),
            );
        }
    }
    out
}

pub fn random_word(rng: &mut impl Rng, alphabet: Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(
        alphabet,
        (0..len)
            .map(|_| rng.gen_range(0..alphabet.k()) as u8)
            .collect(),
    )
    .unwrap()
}

/// A random maximal prefix code built by recursive splitting.
pub fn random_maximal_code(
    rng: &mut impl Rng,
    alphabet: Alphabet,
    max_depth: usize,
) -> PrefixCode {
    fn build(rng: &mut impl Rng, alphabet: Alphabet, prefix: &Word, depth_left: usize, out: &mut Vec<Word>) {
        if depth_left == 0 || rng.gen_bool(0.45) {
            out.push(prefix.clone());
            return;
        }
        for l in alphabet.letters() {
            build(rng, alphabet, &prefix.child(l), depth_left - 1, out);
        }
    }
    let mut words = Vec::new();
    build(rng, alphabet, &Word::empty(alphabet), max_depth, &mut words);
    PrefixCode::new(alphabet, words).unwrap()
}

/// A random prefix code: a random maximal code thinned out; may be empty.
pub fn random_code(rng: &mut impl Rng, alphabet: Alphabet, max_depth: usize) -> PrefixCode {
    let maximal = random_maximal_code(rng, alphabet, max_depth);
    PrefixCode::new(
        alphabet,
        maximal
            .iter()
            .filter(|_| rng.gen_bool(0.85))
            .cloned()
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// A random table: random domain code, arbitrary image words.
pub fn random_hom(
    rng: &mut impl Rng,
    alphabet: Alphabet,
    max_depth: usize,
    max_image_len: usize,
) -> Hom {
    let code = random_code(rng, alphabet, max_depth);
    let entries: Vec<(Word, Word)> = code
        .iter()
        .map(|x| (x.clone(), random_word(rng, alphabet, max_image_len)))
        .collect();
    Hom::new(alphabet, entries).unwrap()
}

/// A random prefix-code congruence: a random code with a random partition.
pub fn random_congruence(
    rng: &mut impl Rng,
    alphabet: Alphabet,
    max_depth: usize,
) -> Congruence {
    let code = random_code(rng, alphabet, max_depth);
    let mut blocks: Vec<Vec<Word>> = Vec::new();
    for w in code.iter() {
        let pick = rng.gen_range(0..=blocks.len());
        if pick == blocks.len() {
            blocks.push(vec![w.clone()]);
        } else {
            blocks[pick].push(w.clone());
        }
    }
    Congruence::new(alphabet, blocks).unwrap()
}

/// A random boolean formula over `x1..x_arity`.
pub fn random_formula(rng: &mut impl Rng, arity: usize, depth: usize) -> Formula {
    fn build(rng: &mut impl Rng, arity: usize, depth: usize) -> Node {
        if depth == 0 || rng.gen_bool(0.3) {
            return match rng.gen_range(0..8) {
                0 => Node::Const(rng.gen_bool(0.5)),
                _ => Node::Var(rng.gen_range(1..=arity)),
            };
        }
        let fanin = rng.gen_range(2..=3);
        let args: Vec<Node> = (0..fanin).map(|_| build(rng, arity, depth - 1)).collect();
        match rng.gen_range(0..4) {
            0 => Node::Not(Box::new(build(rng, arity, depth - 1))),
            1 => Node::And(args),
            2 => Node::Or(args),
            _ => Node::Xor(args),
        }
    }
    Formula::new(arity, build(rng, arity.max(1), depth)).unwrap()
}
