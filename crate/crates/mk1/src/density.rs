//! Constructive density witnesses: for each strict pair in the R- or
//! L-order (optionally within an L- or R-class) an element strictly between
//! the two is built. Every output is meant to be checked against the order
//! deciders; the test suites do exactly that.

use crate::code::PrefixCode;
use crate::congruence::{Congruence, Pick};
use crate::error::{Error, Result};
use crate::green;
use crate::hom::Hom;
use crate::words::{Alphabet, Word};
use std::collections::BTreeMap;

/// Dict-minimal word of length `len` inside `inside A*` and outside
/// `outside A*`.
fn escape_word(
    alphabet: Alphabet,
    inside: &PrefixCode,
    outside: &PrefixCode,
    len: usize,
) -> Option<Word> {
    alphabet
        .words_of_len(len)
        .into_iter()
        .find(|w| inside.ideal_contains(w) && !outside.ideal_contains(w))
}

/// An element strictly between a strict R-pair: a partial identity on the
/// low image code extended by one escape word one level deeper than both
/// image codes.
pub fn r_between(hi: &Hom, lo: &Hom) -> Result<Hom> {
    if !(green::r_leq(lo, hi)? && !green::r_leq(hi, lo)?) {
        return Err(Error::OrderViolation(
            "r_between needs a strict R-pair".into(),
        ));
    }
    let alphabet = lo.alphabet();
    let p = hi.image_code();
    let q = lo.image_code();
    let len = p.max_len().max(q.max_len()) + 1;
    let w = escape_word(alphabet, &p, &q, len)
        .expect("a strict R-pair always has an escape word one level deep");
    let d = PrefixCode::prune(alphabet, q.iter().cloned().chain([w]))?;
    Ok(Hom::partial_identity(&d))
}

/// Finds a class piece of `hi_cong` whose whole subtree, shifted by `u`,
/// avoids the ends of `dom A*`: returns `(block index, u)`, searching `u`
/// by length then dictionary order.
fn escaping_class_piece(
    hi_cong: &Congruence,
    dom: &PrefixCode,
    max_extra: usize,
) -> Option<(usize, Word)> {
    let alphabet = hi_cong.alphabet();
    for extra in 0..=max_extra {
        for u in alphabet.words_of_len(extra) {
            for (bi, block) in hi_cong.blocks().iter().enumerate() {
                let all_escape = block.iter().all(|c| {
                    let cu = c.concat(&u);
                    !dom.ideal_contains(&cu) && !dom.iter().any(|x| cu.is_strict_prefix_of(x))
                });
                if all_escape {
                    return Some((bi, u));
                }
            }
        }
    }
    None
}

/// Finds a block of `lo_cong` that, pushed down some branch `t`, splits
/// into at least two shifted `hi_cong`-classes. Returns the block index,
/// the branch, and the piece partition of `block . t`.
fn finer_split(
    lo_cong: &Congruence,
    hi_cong: &Congruence,
) -> Option<(usize, Word, Vec<Vec<Word>>)> {
    let alphabet = lo_cong.alphabet();
    let hi_code = hi_cong.domain_code();
    for extra in 0..=hi_code.max_len() + 1 {
        for t in alphabet.words_of_len(extra) {
            for (bi, block) in lo_cong.blocks().iter().enumerate() {
                let mut groups: BTreeMap<(usize, Word), Vec<Word>> = BTreeMap::new();
                let mut all_decomposed = true;
                for x in block {
                    let xt = x.concat(&t);
                    match hi_code.member_prefix_of(&xt) {
                        Some(p) => {
                            let shift = p.suffix_after(&xt).unwrap();
                            let key = (hi_cong.block_index_of(p).unwrap(), shift);
                            groups.entry(key).or_default().push(xt);
                        }
                        None => {
                            all_decomposed = false;
                            break;
                        }
                    }
                }
                if all_decomposed && groups.len() >= 2 {
                    return Some((bi, t, groups.into_values().collect()));
                }
            }
        }
    }
    None
}

/// A congruence strictly between two congruences in the end-refinement
/// order (`m_lo <_end c <_end m_hi`, both inputs maximally extended).
fn between_congruence(m_lo: &Congruence, m_hi: &Congruence) -> Result<Congruence> {
    let alphabet = m_lo.alphabet();
    let lo_code = m_lo.domain_code();
    if !m_hi.domain_code().ends_subset(&lo_code)? {
        // more domain ends above: adjoin all but the first branch of an
        // escaping class piece
        let (bi, u) = escaping_class_piece(m_hi, &lo_code, lo_code.max_len() + 1)
            .expect("a domain-strict L-pair has an escaping class piece");
        let block = &m_hi.blocks()[bi];
        let mut blocks: Vec<Vec<Word>> = m_lo.blocks().to_vec();
        for l in alphabet.letters().skip(1) {
            blocks.push(block.iter().map(|c| c.concat(&u).child(l)).collect());
        }
        Congruence::new(alphabet, blocks)
    } else {
        // equal domain ends: split one block along one branch
        let (bi, t, pieces) = finer_split(m_lo, m_hi)
            .expect("a partition-strict L-pair has a splittable block");
        let block = m_lo.blocks()[bi].clone();
        let mut blocks: Vec<Vec<Word>> = m_lo
            .blocks()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != bi)
            .map(|(_, b)| b.clone())
            .collect();
        for t2 in alphabet.words_of_len(t.len()) {
            if t2 != t {
                blocks.push(block.iter().map(|x| x.concat(&t2)).collect());
            }
        }
        let branch: Vec<Word> = pieces.iter().flatten().cloned().collect();
        let first_piece = &pieces[0];
        let rest: Vec<Word> = branch
            .iter()
            .filter(|x| !first_piece.contains(x))
            .cloned()
            .collect();
        blocks.push(first_piece.iter().map(|x| x.child(0)).collect());
        blocks.push(rest.iter().map(|x| x.child(0)).collect());
        for l in alphabet.letters().skip(1) {
            blocks.push(branch.iter().map(|x| x.child(l)).collect());
        }
        Congruence::new(alphabet, blocks)
    }
}

/// An element strictly between a strict L-pair.
pub fn l_between(hi: &Hom, lo: &Hom) -> Result<Hom> {
    if !(green::l_leq(lo, hi)? && !green::l_leq(hi, lo)?) {
        return Err(Error::OrderViolation(
            "l_between needs a strict L-pair".into(),
        ));
    }
    let m_lo = Congruence::fibers(lo).max_extend();
    let m_hi = Congruence::fibers(hi).max_extend();
    Ok(between_congruence(&m_lo, &m_hi)?.selector(Pick::DictMin))
}

/// An element strictly between a strict L-pair inside their common R-class:
/// the witness keeps the image ends.
pub fn l_between_in_r_class(hi: &Hom, lo: &Hom) -> Result<Hom> {
    if !(green::r_equiv(hi, lo)? && green::l_leq(lo, hi)? && !green::l_leq(hi, lo)?) {
        return Err(Error::OrderViolation(
            "l_between_in_r_class needs R-equivalent inputs with a strict L-pair".into(),
        ));
    }
    let alphabet = lo.alphabet();
    let lo_t = if lo.is_pc_preserving() {
        lo.clone()
    } else {
        lo.restrict_to_pc_preserving()
    };
    let lo_cong = Congruence::fibers(&lo_t);
    let lo_code = lo_cong.domain_code();
    let m_hi = Congruence::fibers(hi).max_extend();

    if !m_hi.domain_code().ends_subset(&lo_code)? {
        // adjoin the non-first branches of an escaping class piece; the
        // image cylinder of the dict-minimal value is re-partitioned into
        // its child cylinders so that the new classes get disjoint values
        // inside the old image and the value words stay a prefix code
        let (bi, u) = escaping_class_piece(&m_hi, &lo_code, lo_code.max_len() + 1)
            .expect("a domain-strict L-pair has an escaping class piece");
        let block = &m_hi.blocks()[bi];
        let z0 = lo_t.image_code().words()[0].clone();
        let mut entries: Vec<(Word, Word)> = lo_t
            .entries()
            .iter()
            .map(|(x, y)| {
                if *y == z0 {
                    (x.clone(), z0.child(0))
                } else {
                    (x.clone(), y.clone())
                }
            })
            .collect();
        for l in alphabet.letters().skip(1) {
            for c in block {
                entries.push((c.concat(&u).child(l), z0.child(l)));
            }
        }
        Hom::new(alphabet, entries)
    } else {
        let (bi, t, pieces) = finer_split(&lo_cong, &m_hi)
            .expect("a partition-strict L-pair has a splittable block");
        let block = lo_cong.blocks()[bi].clone();
        let y = lo_t
            .entries()
            .iter()
            .find(|(x, _)| x == &block[0])
            .map(|(_, y)| y.clone())
            .expect("block words are domain words");
        let mut entries: Vec<(Word, Word)> = lo_t
            .entries()
            .iter()
            .filter(|(x, _)| block.binary_search(x).is_err())
            .cloned()
            .collect();
        for t2 in alphabet.words_of_len(t.len()) {
            if t2 != t {
                for x in &block {
                    entries.push((x.concat(&t2), y.concat(&t2)));
                }
            }
        }
        let base = y.concat(&t);
        let branch: Vec<Word> = pieces.iter().flatten().cloned().collect();
        // split the first piece off the rest on the first k-1 letter
        // branches and keep the last branch whole: that makes 2k-1 classes
        // under the base cylinder, which is exactly the number of parts a
        // cylinder can be cut into (part counts are 1 mod k-1). The values
        // are the k children of base.a1 followed by base.a2 .. base.ak;
        // every class stays inside one translate of the old block and is a
        // union of shifted fine classes.
        let first_piece: &Vec<Word> = &pieces[0];
        let rest: Vec<&Word> = branch
            .iter()
            .filter(|x| !first_piece.contains(x))
            .collect();
        let mut pool: Vec<Word> = alphabet
            .letters()
            .map(|j| base.child(0).child(j))
            .chain(alphabet.letters().skip(1).map(|l| base.child(l)))
            .collect();
        pool.reverse();
        let k = alphabet.k() as u8;
        for l in 0..k - 1 {
            let value = pool.pop().expect("pool holds 2k-1 values");
            for x in first_piece {
                entries.push((x.child(l), value.clone()));
            }
            let value = pool.pop().expect("pool holds 2k-1 values");
            for x in &rest {
                entries.push((x.child(l), value.clone()));
            }
        }
        let value = pool.pop().expect("pool holds 2k-1 values");
        for x in &branch {
            entries.push((x.child(k - 1), value.clone()));
        }
        Hom::new(alphabet, entries)
    }
}

/// Essentially-equal restrictions of an L-equivalent pair onto a common
/// domain code with identical fiber partitions.
fn common_fiber_tables(lo_t: &Hom, hi_t: &Hom) -> Result<(Hom, Hom)> {
    let alphabet = lo_t.alphabet();
    let c_star = Congruence::fibers(lo_t).max_extend();
    debug_assert_eq!(c_star, Congruence::fibers(hi_t).max_extend());
    let star_code = c_star.domain_code();
    let n = c_star.blocks().len();

    // suffix codes of both fiber partitions relative to the maximal blocks
    let suffixes = |table: &Hom| -> Result<Vec<Vec<Word>>> {
        let mut out: Vec<Vec<Word>> = vec![Vec::new(); n];
        for block in Congruence::fibers(table).blocks() {
            let d0 = &block[0];
            let b0 = star_code
                .member_prefix_of(d0)
                .expect("fiber blocks sit below the maximal code");
            let v = b0.suffix_after(d0).unwrap();
            let sbi = c_star.block_index_of(b0).unwrap();
            debug_assert_eq!(
                block.clone(),
                {
                    let mut shifted: Vec<Word> = c_star.blocks()[sbi]
                        .iter()
                        .map(|b| b.concat(&v))
                        .collect();
                    shifted.sort();
                    shifted
                },
                "fiber blocks are shifted maximal blocks"
            );
            out[sbi].push(v);
        }
        Ok(out)
    };
    let v_lo = suffixes(lo_t)?;
    let v_hi = suffixes(hi_t)?;

    let split = |table: &Hom, own: &[Vec<Word>], target: &[PrefixCode]| -> Result<Hom> {
        let own_cong = Congruence::fibers(table);
        let mut entries: Vec<(Word, Word)> = Vec::new();
        for (x, y) in table.entries() {
            let bi = own_cong.block_index_of(x).unwrap();
            let d0 = &own_cong.blocks()[bi][0];
            let b0 = star_code.member_prefix_of(d0).unwrap();
            let sbi = c_star.block_index_of(b0).unwrap();
            let v = b0.suffix_after(d0).unwrap();
            debug_assert!(own[sbi].contains(&v));
            for vbar in target[sbi].iter() {
                if let Some(s) = v.suffix_after(vbar) {
                    entries.push((x.concat(&s), y.concat(&s)));
                }
            }
        }
        Hom::new(alphabet, entries)
    };

    let mut targets: Vec<PrefixCode> = Vec::new();
    for i in 0..n {
        let a = PrefixCode::new(alphabet, v_lo[i].iter().cloned())?;
        let b = PrefixCode::new(alphabet, v_hi[i].iter().cloned())?;
        targets.push(a.ideal_intersection(&b)?);
    }
    Ok((split(lo_t, &v_lo, &targets)?, split(hi_t, &v_hi, &targets)?))
}

/// An element strictly between a strict R-pair inside their common L-class:
/// the witness keeps the domain ends and the fiber partition.
pub fn r_between_in_l_class(hi: &Hom, lo: &Hom) -> Result<Hom> {
    if !(green::l_equiv(hi, lo)? && green::r_leq(lo, hi)? && !green::r_leq(hi, lo)?) {
        return Err(Error::OrderViolation(
            "r_between_in_l_class needs L-equivalent inputs with a strict R-pair".into(),
        ));
    }
    let alphabet = lo.alphabet();
    let lo_t = if lo.is_pc_preserving() {
        lo.clone()
    } else {
        lo.restrict_to_pc_preserving()
    };
    let hi_t = if hi.is_pc_preserving() {
        hi.clone()
    } else {
        hi.restrict_to_pc_preserving()
    };
    let (lo2, hi2) = common_fiber_tables(&lo_t, &hi_t)?;
    let lo_fibers = Congruence::fibers(&lo2);
    debug_assert_eq!(lo_fibers, Congruence::fibers(&hi2));

    let len = lo2.image_code().max_len().max(hi2.image_code().max_len()) + 1;
    let q = escape_word(alphabet, &hi2.image_code(), &lo2.image_code(), len)
        .expect("a strict R-pair always has an escape word one level deep");

    let split_block = lo_fibers.blocks()[0].clone();
    let v1 = lo2
        .entries()
        .iter()
        .find(|(x, _)| x == &split_block[0])
        .map(|(_, y)| y.clone())
        .unwrap();
    let mut entries: Vec<(Word, Word)> = lo2
        .entries()
        .iter()
        .filter(|(x, _)| split_block.binary_search(x).is_err())
        .cloned()
        .collect();
    // the first k-1 branches take distinct children of the escape word (so
    // the image word multiset stays a prefix code and no fibers merge on
    // levelling); the last branch keeps the whole old value cylinder
    let k = alphabet.k() as u8;
    for x in &split_block {
        for j in 0..k - 1 {
            entries.push((x.child(j), q.child(j)));
        }
        entries.push((x.child(k - 1), v1.clone()));
    }
    Hom::new(alphabet, entries)
}
