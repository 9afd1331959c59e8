//! The verification suite: ten independent campaigns cross-checking the
//! decision procedures against brute-force oracles, exhaustive small
//! corpora, and randomized algebra. The acceptance test target and the
//! command-line `selftest` both run these.

use crate::circuits::{self, Formula};
use crate::code::PrefixCode;
use crate::congruence::{self, Congruence, Pick};
use crate::density;
use crate::genwords::{self, Atom, GenWord, Generators};
use crate::green;
use crate::hom::Hom;
use crate::oracle;
use crate::words::{Alphabet, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub type CheckResult = Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub run: fn(u64) -> CheckResult,
}

/// The ten checks of the verification suite.
pub fn all_checks() -> Vec<Check> {
    vec![
        Check { name: "r-order-oracle-agreement", run: check_r_order_oracle },
        Check { name: "normal-form-confluence-associativity", run: check_confluence },
        Check { name: "worked-example", run: check_worked_example },
        Check { name: "constructive-multipliers", run: check_multipliers },
        Check { name: "l-order-two-method-agreement", run: check_l_two_methods },
        Check { name: "fibers-selector-roundtrip", run: check_roundtrip },
        Check { name: "density-witnesses", run: check_density },
        Check { name: "gadget-chains", run: check_gadgets },
        Check { name: "genword-consistency", run: check_genwords },
        Check { name: "maximality-dual-check", run: check_maximality },
    ]
}

/// Runs every check, printing one line per check; returns overall success.
pub fn run_all(seed: u64, mut out: impl std::io::Write) -> std::io::Result<bool> {
    let mut ok = true;
    for check in all_checks() {
        match (check.run)(seed) {
            Ok(summary) => writeln!(out, "PASS {}: {}", check.name, summary)?,
            Err(failure) => {
                ok = false;
                writeln!(out, "FAIL {}: {}", check.name, failure)?;
            }
        }
    }
    Ok(ok)
}

fn binary() -> Alphabet {
    Alphabet::new(2).unwrap()
}

fn hom_from_spec(alphabet: Alphabet, spec: &str) -> Hom {
    let entries = spec.split_whitespace().map(|part| {
        let (l, r) = part.split_once("->").expect("entry shaped like x->y");
        (
            Word::parse(alphabet, l).unwrap(),
            Word::parse(alphabet, r).unwrap(),
        )
    });
    Hom::new(alphabet, entries).unwrap()
}

fn fail<T>(message: String) -> Result<T, String> {
    Err(message)
}

// 1. EndInclusion agrees with the depth-bounded path oracle on all ordered
//    pairs of prefix codes with words of length <= 3 over two letters.
fn check_r_order_oracle(_seed: u64) -> CheckResult {
    let codes = oracle::all_prefix_codes(binary(), 3);
    let mut pairs = 0u64;
    for q in &codes {
        for p in &codes {
            let fast = q.ends_subset(p).map_err(|e| e.to_string())?;
            let slow = oracle::ends_subset_paths(q, p).map_err(|e| e.to_string())?;
            if fast != slow {
                return fail(format!("mismatch at Q={q} P={p}: {fast} vs {slow}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} code pairs agree with the path oracle"))
}

/// Applies extension steps in a random order; the result must match the
/// deterministic normal form.
fn max_extend_randomized(rng: &mut impl Rng, f: &Hom) -> Hom {
    let alphabet = f.alphabet();
    let mut map: BTreeMap<Word, Word> = f.entries().iter().cloned().collect();
    loop {
        let mut candidates: Vec<(Word, Word)> = Vec::new();
        'scan: for (u, v) in &map {
            let (Some(x), Some(y)) = (u.parent(), v.parent()) else { continue };
            if u.last() != v.last() {
                continue;
            }
            for l in alphabet.letters() {
                if map.get(&x.child(l)) != Some(&y.child(l)) {
                    continue 'scan;
                }
            }
            if !candidates.contains(&(x.clone(), y.clone())) {
                candidates.push((x, y));
            }
        }
        let Some((x, y)) = candidates.choose(rng).cloned() else {
            break;
        };
        for l in alphabet.letters() {
            map.remove(&x.child(l));
        }
        map.insert(x, y);
    }
    Hom::new(alphabet, map).unwrap()
}

// 2. Confluence of the extension rewriting under randomized orders, and
//    associativity of the multiplication, on random tables over two and
//    three letters.
fn check_confluence(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
    let mut homs = 0u64;
    let mut triples = 0u64;
    for k in [2usize, 3] {
        let alphabet = Alphabet::new(k).unwrap();
        for _ in 0..600 {
            // deep tables extended back up give the rewriting work to do
            let f = oracle::random_hom(&mut rng, alphabet, 3, 3);
            let f = match f.entries().len() {
                0 => f,
                _ => {
                    let mut g = f.clone();
                    for _ in 0..2 {
                        let pick = rng.gen_range(0..g.entries().len());
                        let x = g.entries()[pick].0.clone();
                        g = g.restrict_step(&x).unwrap();
                    }
                    g
                }
            };
            let deterministic = f.max_extend().into_hom();
            for _ in 0..2 {
                let randomized = max_extend_randomized(&mut rng, &f);
                if randomized != deterministic {
                    return fail(format!(
                        "rewrite orders disagree on {f}: {randomized} vs {deterministic}"
                    ));
                }
            }
            homs += 1;
        }
        for _ in 0..600 {
            let f = oracle::random_hom(&mut rng, alphabet, 2, 2);
            let g = oracle::random_hom(&mut rng, alphabet, 2, 2);
            let h = oracle::random_hom(&mut rng, alphabet, 2, 2);
            let left = f
                .compose(&g)
                .and_then(|fg| fg.hom().compose(&h))
                .map_err(|e| e.to_string())?;
            let right = g
                .compose(&h)
                .and_then(|gh| f.compose(gh.hom()))
                .map_err(|e| e.to_string())?;
            if left != right {
                return fail(format!("associativity fails on {f}, {g}, {h}"));
            }
            // and the pointwise oracle agrees with the composite
            if !oracle::eq_pointwise(left.hom(), right.hom()) {
                return fail(format!("pointwise oracle disagrees on {f}, {g}, {h}"));
            }
            triples += 1;
        }
    }
    Ok(format!(
        "{homs} randomized rewrites and {triples} associativity triples agree"
    ))
}

// 3. The worked table: levelling and fiber blocks come out exactly.
fn check_worked_example(_seed: u64) -> CheckResult {
    let alphabet = binary();
    let parse = |s: &str| Word::parse(alphabet, s).unwrap();
    let f = Hom::new(
        alphabet,
        [(parse("a"), parse("aa")), (parse("b"), parse("a"))],
    )
    .unwrap();
    if f.is_pc_preserving() {
        return fail("the worked table should not preserve prefix codes".into());
    }
    let levelled = f.restrict_to_pc_preserving();
    let expected = Hom::new(
        alphabet,
        [
            (parse("a"), parse("aa")),
            (parse("ba"), parse("aa")),
            (parse("bb"), parse("ab")),
        ],
    )
    .unwrap();
    if levelled != expected {
        return fail(format!("levelled to {levelled}, expected {expected}"));
    }
    let blocks = Congruence::new(
        alphabet,
        [vec![parse("a"), parse("ba")], vec![parse("bb")]],
    )
    .unwrap();
    if Congruence::fibers(&f) != blocks {
        return fail(format!("fibers {} differ", Congruence::fibers(&f)));
    }
    Ok("levelling and fiber blocks match the worked table".into())
}

struct Elem {
    hom: Hom,
    img: PrefixCode,
    cong: Congruence,
}

impl Elem {
    fn new(hom: Hom) -> Elem {
        let img = hom.image_code();
        let cong = Congruence::fibers(&hom);
        Elem { hom, img, cong }
    }
}

/// Small structured element corpus: partial identities over depth-2 codes,
/// block selectors of every depth-2 congruence, and every table with a
/// depth-1 domain code and images of length at most 2.
fn element_corpus() -> Vec<Elem> {
    let alphabet = binary();
    let mut by_normal_form: BTreeMap<String, Hom> = BTreeMap::new();
    let mut add = |h: Hom| {
        let key = h.max_extend().hom().to_string();
        by_normal_form.entry(key).or_insert(h);
    };
    for code in oracle::all_prefix_codes(alphabet, 2) {
        add(Hom::partial_identity(&code));
    }
    for cong in oracle::all_congruences(alphabet, 2) {
        add(cong.selector(Pick::DictMin));
        add(cong.selector(Pick::DictMax));
    }
    let images = alphabet.words_up_to_len(2);
    for code in oracle::all_prefix_codes(alphabet, 1) {
        let n = code.len();
        let mut odometer = vec![0usize; n];
        loop {
            let entries: Vec<(Word, Word)> = code
                .iter()
                .cloned()
                .zip(odometer.iter().map(|&i| images[i].clone()))
                .collect();
            add(Hom::new(alphabet, entries).unwrap());
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                odometer[pos] += 1;
                if odometer[pos] < images.len() {
                    break;
                }
                odometer[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    by_normal_form.into_values().map(Elem::new).collect()
}

// 4. Wherever the deciders answer yes, the constructed multipliers verify.
fn check_multipliers(seed: u64) -> CheckResult {
    let corpus = element_corpus();
    let mut r_yes = 0u64;
    let mut l_yes = 0u64;
    for lo in &corpus {
        for hi in &corpus {
            if lo.img.ends_subset(&hi.img).map_err(|e| e.to_string())? {
                r_yes += 1;
                let m = green::r_multiplier(&lo.hom, &hi.hom).map_err(|e| e.to_string())?;
                let back = hi.hom.compose(&m).map_err(|e| e.to_string())?;
                if !back.hom().eq_in_m(&lo.hom) {
                    return fail(format!("right multiplier fails: lo={} hi={}", lo.hom, hi.hom));
                }
            }
            if congruence::end_leq(&lo.cong, &hi.cong).map_err(|e| e.to_string())? {
                l_yes += 1;
                let m = green::l_multiplier(&lo.hom, &hi.hom).map_err(|e| e.to_string())?;
                let back = m.compose(&hi.hom).map_err(|e| e.to_string())?;
                if !back.hom().eq_in_m(&lo.hom) {
                    return fail(format!("left multiplier fails: lo={} hi={}", lo.hom, hi.hom));
                }
            }
        }
    }
    // randomized pairs, half of them related by construction
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
    let alphabet = binary();
    let mut random_checked = 0u64;
    for i in 0..10_000u64 {
        let f = oracle::random_hom(&mut rng, alphabet, 3, 3);
        let g = oracle::random_hom(&mut rng, alphabet, 2, 2);
        let (lo_r, lo_l);
        let (lo, hi) = if i % 2 == 0 {
            lo_r = f.compose(&g).map_err(|e| e.to_string())?;
            (lo_r.hom().clone(), f.clone())
        } else {
            lo_l = g.compose(&f).map_err(|e| e.to_string())?;
            (lo_l.hom().clone(), f.clone())
        };
        if green::r_leq(&lo, &hi).map_err(|e| e.to_string())? {
            let m = green::r_multiplier(&lo, &hi).map_err(|e| e.to_string())?;
            if !hi.compose(&m).map_err(|e| e.to_string())?.hom().eq_in_m(&lo) {
                return fail(format!("right multiplier fails: lo={lo} hi={hi}"));
            }
            random_checked += 1;
        }
        if green::l_leq(&lo, &hi).map_err(|e| e.to_string())? {
            let m = green::l_multiplier(&lo, &hi).map_err(|e| e.to_string())?;
            if !m.compose(&hi).map_err(|e| e.to_string())?.hom().eq_in_m(&lo) {
                return fail(format!("left multiplier fails: lo={lo} hi={hi}"));
            }
            random_checked += 1;
        }
    }
    if r_yes == 0 || l_yes == 0 || random_checked < 5_000 {
        return fail("multiplier corpus did not exercise enough ordered pairs".into());
    }
    Ok(format!(
        "{r_yes} right and {l_yes} left corpus multipliers plus {random_checked} random ones verify"
    ))
}

// 5. The congruence decider for the L-order agrees with the
//    inverse-idempotent route and with the idempotent-order embedding.
fn check_l_two_methods(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
    let alphabet = binary();
    let mut pairs = 0u64;
    let mut positives = 0u64;
    for i in 0..10_000u64 {
        let f = oracle::random_hom(&mut rng, alphabet, 3, 3);
        let g = oracle::random_hom(&mut rng, alphabet, 2, 2);
        let lo_store;
        let (lo, hi) = if i % 2 == 0 {
            (f.clone(), g.clone())
        } else {
            lo_store = g.compose(&f).map_err(|e| e.to_string())?;
            (lo_store.hom().clone(), f.clone())
        };
        let by_congruence = green::l_leq(&lo, &hi).map_err(|e| e.to_string())?;
        let by_inverses = green::l_leq_via_inverses(&lo, &hi).map_err(|e| e.to_string())?;
        if by_congruence != by_inverses {
            return fail(format!(
                "L-deciders disagree on lo={lo} hi={hi}: {by_congruence} vs {by_inverses}"
            ));
        }
        if i % 5 == 0 {
            for pick in [Pick::DictMin, Pick::DictMax] {
                let e_lo = Congruence::fibers(&lo).selector(pick);
                let e_hi = Congruence::fibers(&hi).selector(pick);
                let embedded =
                    green::idempotent_leq(&e_lo, &e_hi).map_err(|e| e.to_string())?;
                if by_congruence != embedded {
                    return fail(format!(
                        "idempotent embedding disagrees on lo={lo} hi={hi}"
                    ));
                }
            }
        }
        positives += u64::from(by_congruence);
        pairs += 1;
    }
    if positives < 1_000 {
        return fail(format!("only {positives} positive pairs; corpus too thin"));
    }
    Ok(format!(
        "{pairs} random pairs agree across both routes ({positives} positive)"
    ))
}

// 6. fibers(selector(c)) returns every depth-2 congruence exactly.
fn check_roundtrip(_seed: u64) -> CheckResult {
    let mut count = 0u64;
    for cong in oracle::all_congruences(binary(), 2) {
        for pick in [Pick::DictMin, Pick::DictMax] {
            let back = Congruence::fibers(&cong.selector(pick));
            if back != cong {
                return fail(format!("roundtrip fails on {cong}: got {back}"));
            }
        }
        count += 1;
    }
    Ok(format!("{count} congruences roundtrip through both selectors"))
}

// 7. Density witnesses verify on every strict pair of the corpus that
//    meets each constructor's precondition.
fn check_density(_seed: u64) -> CheckResult {
    let corpus = element_corpus();
    let mut counts = [0u64; 4];
    for lo in &corpus {
        for hi in &corpus {
            let r_lo_hi = lo.img.ends_subset(&hi.img).map_err(|e| e.to_string())?;
            let r_hi_lo = hi.img.ends_subset(&lo.img).map_err(|e| e.to_string())?;
            let l_lo_hi = congruence::end_leq(&lo.cong, &hi.cong).map_err(|e| e.to_string())?;
            let l_hi_lo = congruence::end_leq(&hi.cong, &lo.cong).map_err(|e| e.to_string())?;

            if r_lo_hi && !r_hi_lo {
                let mid = density::r_between(&hi.hom, &lo.hom).map_err(|e| e.to_string())?;
                verify_strict_r(&hi.hom, &mid, &lo.hom)?;
                counts[0] += 1;
            }
            if l_lo_hi && !l_hi_lo {
                let mid = density::l_between(&hi.hom, &lo.hom).map_err(|e| e.to_string())?;
                verify_strict_l(&hi.hom, &mid, &lo.hom)?;
                counts[1] += 1;
            }
            if r_lo_hi && r_hi_lo && l_lo_hi && !l_hi_lo {
                let mid =
                    density::l_between_in_r_class(&hi.hom, &lo.hom).map_err(|e| e.to_string())?;
                verify_strict_l(&hi.hom, &mid, &lo.hom)?;
                if !green::r_equiv(&mid, &hi.hom).map_err(|e| e.to_string())? {
                    return fail(format!(
                        "L-witness leaves the R-class: lo={} hi={}",
                        lo.hom, hi.hom
                    ));
                }
                counts[2] += 1;
            }
            if l_lo_hi && l_hi_lo && r_lo_hi && !r_hi_lo {
                let mid =
                    density::r_between_in_l_class(&hi.hom, &lo.hom).map_err(|e| e.to_string())?;
                verify_strict_r(&hi.hom, &mid, &lo.hom)?;
                if !green::l_equiv(&mid, &lo.hom).map_err(|e| e.to_string())? {
                    return fail(format!(
                        "R-witness leaves the L-class: lo={} hi={}",
                        lo.hom, hi.hom
                    ));
                }
                counts[3] += 1;
            }
        }
    }
    if counts.contains(&0) {
        return fail(format!("a constructor was never exercised: {counts:?}"));
    }
    Ok(format!(
        "witnesses verified: {} R, {} L, {} L-in-R-class, {} R-in-L-class",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn verify_strict_r(hi: &Hom, mid: &Hom, lo: &Hom) -> Result<(), String> {
    let ok = green::r_leq(lo, mid).map_err(|e| e.to_string())?
        && !green::r_leq(mid, lo).map_err(|e| e.to_string())?
        && green::r_leq(mid, hi).map_err(|e| e.to_string())?
        && !green::r_leq(hi, mid).map_err(|e| e.to_string())?;
    if ok {
        Ok(())
    } else {
        Err(format!("R-witness fails: lo={lo} mid={mid} hi={hi}"))
    }
}

fn verify_strict_l(hi: &Hom, mid: &Hom, lo: &Hom) -> Result<(), String> {
    let ok = green::l_leq(lo, mid).map_err(|e| e.to_string())?
        && !green::l_leq(mid, lo).map_err(|e| e.to_string())?
        && green::l_leq(mid, hi).map_err(|e| e.to_string())?
        && !green::l_leq(hi, mid).map_err(|e| e.to_string())?;
    if ok {
        Ok(())
    } else {
        Err(format!("L-witness fails: lo={lo} mid={mid} hi={hi}"))
    }
}

// 8. The gadget chains: quantified truth, truth-table predicates, element
//    predicates, and program-level surjectivity all agree; the printed
//    injectivity gadget demonstrably fails where the corrected one works.
fn check_gadgets(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x08);
    let budget = 1u64 << 22;
    let mut formulas = 0u64;
    for _ in 0..500 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=2);
        let base = oracle::random_formula(&mut rng, m + n, 3);
        let lifted = base.qbf1_transform();
        let truth = base.forall_exists_eval(n, m).map_err(|e| e.to_string())?;
        if truth != lifted.forall_exists_eval(n + 1, m).map_err(|e| e.to_string())? {
            return fail(format!("qbf1 transform changes truth of {base}"));
        }
        if !lifted.eval(&vec![true; m + n + 1]).map_err(|e| e.to_string())? {
            return fail(format!("qbf1 transform misses the all-ones guarantee: {lifted}"));
        }
        let gadget = circuits::surjectivity_gadget(&lifted, m, n + 1).map_err(|e| e.to_string())?;
        if gadget.is_surjective() != truth {
            return fail(format!("surjectivity gadget disagrees on {base}"));
        }
        let elem = gadget.to_element();
        if green::is_surjective_elem(&elem) != truth {
            return fail(format!("element surjectivity disagrees on {base}"));
        }
        let mut gens = Generators::new(binary());
        gens.insert("C", elem).map_err(|e| e.to_string())?;
        let word = GenWord::new(vec![Atom::Gen("C".into())]);
        if genwords::is_surjective_program(&gens, &word, budget).map_err(|e| e.to_string())?
            != truth
        {
            return fail(format!("program surjectivity disagrees on {base}"));
        }

        let arity = rng.gen_range(1..=4);
        let check = oracle::random_formula(&mut rng, arity, 3);
        let taut = check.is_tautology().map_err(|e| e.to_string())?;
        let inj = circuits::injectivity_gadget(&check).map_err(|e| e.to_string())?;
        if inj.is_injective() != taut {
            return fail(format!("injectivity gadget disagrees on {check}"));
        }
        if green::is_monomorphism(&inj.to_element()) != taut {
            return fail(format!("monomorphism bridge disagrees on {check}"));
        }
        if circuits::zero_word_check(&check).map_err(|e| e.to_string())? != taut {
            return fail(format!("zero-word check disagrees on {check}"));
        }
        formulas += 1;
    }
    // the documented counterexample family: false only on the zero row
    for n in 1..=5 {
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let b = Formula::parse(&format!("(or {})", vars.join(" "))).unwrap();
        let printed = circuits::injectivity_gadget_printed(&b).map_err(|e| e.to_string())?;
        let corrected = circuits::injectivity_gadget(&b).map_err(|e| e.to_string())?;
        if !printed.is_injective() || corrected.is_injective() {
            return fail(format!(
                "counterexample family misbehaves at {n} variables"
            ));
        }
    }
    Ok(format!(
        "{formulas} random formulas agree along all gadget chains; counterexample family behaves"
    ))
}

// 9. Generator words: application agrees with expansion pointwise, depth
//    bounds hold, and all three bounded deciders match the table routes.
fn check_genwords(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x09);
    let alphabet = binary();
    let parse = |s: &str| hom_from_spec(alphabet, s);
    let mut gens = Generators::new(alphabet);
    gens.insert("NOT", parse("a->b b->a")).unwrap();
    gens.insert("SHIFT", parse("a->aa b->ab")).unwrap();
    gens.insert("DOWN", parse("aa->a ab->b b->ba")).unwrap();
    gens.insert("JOIN", parse("a->a b->a")).unwrap();
    gens.insert("HALF", parse("a->a")).unwrap();
    gens.insert("ID", Hom::one(alphabet)).unwrap();
    let names: Vec<String> = gens.names().map(String::from).collect();
    let budget = 1u64 << 24;

    let atom_depth = |gens: &Generators, a: &Atom| match a {
        Atom::Gen(name) => gens.get(name).unwrap().table_depth(),
        Atom::Tau(i) => i + 1,
    };
    let random_word = |rng: &mut ChaCha8Rng, max_total: usize| loop {
        let len = rng.gen_range(0..=8);
        let atoms: Vec<Atom> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Atom::Tau(rng.gen_range(1..=3))
                } else {
                    Atom::Gen(names.choose(rng).unwrap().clone())
                }
            })
            .collect();
        let word = GenWord::new(atoms);
        let total: usize = word.atoms.iter().map(|a| atom_depth(&gens, a)).sum();
        if total <= max_total {
            return (word, total);
        }
    };

    let mut words = 0u64;
    for _ in 0..1_000 {
        let (word, total) = random_word(&mut rng, 9);
        let table = genwords::expand_to_table(&gens, &word, budget).map_err(|e| e.to_string())?;
        let bound = gens.depth_constant() * word.word_length();
        if table.hom().table_depth() > bound {
            return fail(format!("depth bound violated by {word:?}"));
        }
        let depth = total + 1;
        for z in alphabet.words_of_len(depth) {
            let direct = genwords::apply(&gens, &word, &z).map_err(|e| e.to_string())?;
            if direct != table.hom().evaluate(&z) {
                return fail(format!("apply/expand disagree on {word:?} at {z}"));
            }
        }
        words += 1;
    }

    // a corpus of short words keeps the bounded formulas enumerable
    let mut small_words: Vec<(GenWord, Hom)> = Vec::new();
    while small_words.len() < 240 {
        let (word, _) = random_word(&mut rng, 6);
        if word.word_length() > 4 {
            continue;
        }
        let table = genwords::expand_to_table(&gens, &word, budget).map_err(|e| e.to_string())?;
        small_words.push((word, table.into_hom()));
    }

    let mut surjective_checked = 0u64;
    let mut pi2_checked = 0u64;
    let mut upper_checked = 0u64;
    let id_a = Hom::partial_identity(&PrefixCode::parse(alphabet, "{a}").unwrap());
    let bounds = [Hom::one(alphabet), id_a, parse("a->b b->ba"), Hom::zero(alphabet)];
    for (i, (word, table)) in small_words.iter().enumerate() {
        let fast = genwords::is_surjective_program(&gens, word, budget).map_err(|e| e.to_string())?;
        if fast != green::is_surjective_elem(table) {
            return fail(format!("program surjectivity disagrees on {word:?}"));
        }
        surjective_checked += 1;
        let bound = &bounds[i % bounds.len()];
        let upper = genwords::r_upper_bound_check(&gens, word, bound, budget)
            .map_err(|e| e.to_string())?;
        if upper != green::r_leq(table, bound).map_err(|e| e.to_string())? {
            return fail(format!("upper-bound formula disagrees on {word:?} vs {bound}"));
        }
        upper_checked += 1;
    }
    for pair in small_words.chunks(2) {
        if let [(w1, t1), (w2, t2)] = pair {
            let formula = genwords::r_leq_pi2(&gens, w1, w2, budget).map_err(|e| e.to_string())?;
            if formula != green::r_leq(t1, t2).map_err(|e| e.to_string())? {
                return fail(format!("bounded R-formula disagrees on {w1:?} vs {w2:?}"));
            }
            pi2_checked += 1;
        }
    }
    if small_words.len() < 100 {
        return fail("too few small words in the corpus".into());
    }
    Ok(format!(
        "{words} words agree pointwise; {surjective_checked} surjectivity, {pi2_checked} R-formula, {upper_checked} upper-bound checks match the table deciders"
    ))
}

// 10. Kraft sums and tree saturation decide maximality identically.
fn check_maximality(seed: u64) -> CheckResult {
    let mut checked = 0u64;
    for code in oracle::all_prefix_codes(binary(), 3) {
        if code.is_maximal() != code.kraft_sum_is_one() {
            return fail(format!("maximality routes disagree on {code}"));
        }
        checked += 1;
    }
    let tri = Alphabet::new(3).unwrap();
    for code in oracle::all_prefix_codes(tri, 2) {
        if code.is_maximal() != code.kraft_sum_is_one() {
            return fail(format!("maximality routes disagree on {code}"));
        }
        checked += 1;
    }
    for code in oracle::maximal_codes(tri, 3) {
        if !(code.is_maximal() && code.kraft_sum_is_one()) {
            return fail(format!("a saturated tree was not recognized: {code}"));
        }
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0a);
    for _ in 0..200_000 {
        let code = oracle::random_code(&mut rng, tri, 3);
        if code.is_maximal() != code.kraft_sum_is_one() {
            return fail(format!("maximality routes disagree on {code}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} codes agree across both maximality routes"))
}
