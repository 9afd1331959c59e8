//! Boolean formulas and truth tables, the surjectivity and injectivity
//! gadgets, and the bridge from boolean functions into the binary monoid.
//!
//! Bit conventions: an assignment is a `&[bool]` indexed by variable number
//! minus one; a truth-table row index reads the input bits with the first
//! variable as the most significant bit, matching the word encoding
//! `0 -> a, 1 -> b` read left to right.

use crate::error::{Error, Result};
use crate::hom::Hom;
use crate::words::{Alphabet, Word};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Var(usize), // 1-based
    Const(bool),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Xor(Vec<Node>),
}

impl Node {
    fn eval(&self, bits: &[bool]) -> bool {
        match self {
            Node::Var(i) => bits[i - 1],
            Node::Const(b) => *b,
            Node::Not(inner) => !inner.eval(bits),
            Node::And(args) => args.iter().all(|a| a.eval(bits)),
            Node::Or(args) => args.iter().any(|a| a.eval(bits)),
            Node::Xor(args) => args.iter().fold(false, |acc, a| acc ^ a.eval(bits)),
        }
    }

    fn max_var(&self) -> usize {
        match self {
            Node::Var(i) => *i,
            Node::Const(_) => 0,
            Node::Not(inner) => inner.max_var(),
            Node::And(args) | Node::Or(args) | Node::Xor(args) => {
                args.iter().map(Node::max_var).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Var(i) => write!(f, "x{i}"),
            Node::Const(b) => write!(f, "{}", u8::from(*b)),
            Node::Not(inner) => write!(f, "(not {inner})"),
            Node::And(args) | Node::Or(args) | Node::Xor(args) => {
                let op = match self {
                    Node::And(_) => "and",
                    Node::Or(_) => "or",
                    _ => "xor",
                };
                write!(f, "({op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A boolean formula over variables `x1..x_arity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    arity: usize,
    root: Node,
}

impl Formula {
    pub fn new(arity: usize, root: Node) -> Result<Formula> {
        if root.max_var() > arity {
            return Err(Error::Domain(format!(
                "variable x{} exceeds declared arity {arity}",
                root.max_var()
            )));
        }
        Ok(Formula { arity, root })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Same formula, more variables.
    pub fn with_arity(&self, arity: usize) -> Result<Formula> {
        Formula::new(arity, self.root.clone())
    }

    /// Parses an s-expression over `x<i>` variables, e.g.
    /// `(and (or x1 (not x2)) x3)`. The arity is the largest index used.
    pub fn parse(text: &str) -> Result<Formula> {
        Self::parse_xy(text, 0).map(|(f, _)| f)
    }

    /// Parses an s-expression over an existential block `x1..` and a
    /// universal block `y1..`; `y_j` maps to variable `x_count + j`.
    /// Returns the formula and the number of `y` variables seen.
    pub fn parse_xy(text: &str, x_count: usize) -> Result<(Formula, usize)> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let mut max_y = 0;
        let node = parse_node(&tokens, &mut pos, x_count, &mut max_y)?;
        if pos != tokens.len() {
            return Err(Error::Parse("trailing tokens after formula".into()));
        }
        let arity = node.max_var();
        Ok((Formula { arity, root: node }, max_y))
    }

    pub fn eval(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.arity {
            return Err(Error::Domain(format!(
                "assignment length {} does not match arity {}",
                bits.len(),
                self.arity
            )));
        }
        Ok(self.root.eval(bits))
    }

    pub fn is_tautology(&self) -> Result<bool> {
        for row in 0..1u64 << self.arity {
            if !self.eval(&row_bits(row, self.arity))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Truth of `forall y in {0,1}^n_forall exists x in {0,1}^m_exists:
    /// f(x, y)`, with the existential block first in the variable list.
    pub fn forall_exists_eval(&self, n_forall: usize, m_exists: usize) -> Result<bool> {
        if n_forall + m_exists != self.arity {
            return Err(Error::Domain(format!(
                "block sizes {m_exists}+{n_forall} do not match arity {}",
                self.arity
            )));
        }
        'outer: for y in 0..1u64 << n_forall {
            let y_bits = row_bits(y, n_forall);
            for x in 0..1u64 << m_exists {
                let mut bits = row_bits(x, m_exists);
                bits.extend_from_slice(&y_bits);
                if self.eval(&bits)? {
                    continue 'outer;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Adds one universal variable `b` and returns `b or f`: the new
    /// formula is satisfied on the all-ones assignment and has the same
    /// forall-exists truth value (with `n_forall + 1` universal variables).
    pub fn qbf1_transform(&self) -> Formula {
        Formula {
            arity: self.arity + 1,
            root: Node::Or(vec![Node::Var(self.arity + 1), self.root.clone()]),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

fn tokenize(text: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' | ')' => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                tokens.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty formula".into()));
    }
    Ok(tokens)
}

fn parse_node(
    tokens: &[String],
    pos: &mut usize,
    x_count: usize,
    max_y: &mut usize,
) -> Result<Node> {
    let token = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of formula".into()))?;
    *pos += 1;
    match token.as_str() {
        "(" => {
            let op = tokens
                .get(*pos)
                .ok_or_else(|| Error::Parse("missing operator".into()))?
                .clone();
            *pos += 1;
            let mut args = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                args.push(parse_node(tokens, pos, x_count, max_y)?);
                if *pos >= tokens.len() {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
            }
            *pos += 1; // consume ")"
            if args.is_empty() {
                return Err(Error::Parse(format!("operator {op} needs arguments")));
            }
            match op.as_str() {
                "not" if args.len() == 1 => Ok(Node::Not(Box::new(args.pop().map(Ok).unwrap()?))),
                "not" => Err(Error::Parse("not takes exactly one argument".into())),
                "and" => Ok(Node::And(args)),
                "or" => Ok(Node::Or(args)),
                "xor" => Ok(Node::Xor(args)),
                other => Err(Error::Parse(format!("unknown operator {other:?}"))),
            }
        }
        ")" => Err(Error::Parse("unexpected closing parenthesis".into())),
        "0" | "false" => Ok(Node::Const(false)),
        "1" | "true" => Ok(Node::Const(true)),
        sym => {
            if let Some(i) = sym.strip_prefix('x').and_then(|v| v.parse::<usize>().ok()) {
                if i == 0 {
                    return Err(Error::Parse("variable indices start at 1".into()));
                }
                return Ok(Node::Var(i));
            }
            if let Some(j) = sym.strip_prefix('y').and_then(|v| v.parse::<usize>().ok()) {
                if j == 0 {
                    return Err(Error::Parse("variable indices start at 1".into()));
                }
                *max_y = (*max_y).max(j);
                return Ok(Node::Var(x_count + j));
            }
            Err(Error::Parse(format!("unrecognized token {sym:?}")))
        }
    }
}

fn row_bits(row: u64, width: usize) -> Vec<bool> {
    (0..width).map(|j| (row >> (width - 1 - j)) & 1 == 1).collect()
}

fn bits_row(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, b| (acc << 1) | u64::from(*b))
}

/// A total boolean function `{0,1}^inputs -> {0,1}^outputs` as an explicit
/// table of `2^inputs` output rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthFun {
    inputs: usize,
    outputs: usize,
    rows: Vec<u64>,
}

impl TruthFun {
    pub fn new(inputs: usize, outputs: usize, rows: Vec<u64>) -> Result<TruthFun> {
        if inputs >= 24 || outputs >= 63 {
            return Err(Error::Domain("truth table dimensions too large".into()));
        }
        if rows.len() != 1 << inputs {
            return Err(Error::Domain(format!(
                "expected {} rows, got {}",
                1u64 << inputs,
                rows.len()
            )));
        }
        if rows.iter().any(|r| *r >= 1 << outputs) {
            return Err(Error::Domain("row value out of output range".into()));
        }
        Ok(TruthFun {
            inputs,
            outputs,
            rows,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// The unary-output table of a formula.
    pub fn from_formula(f: &Formula) -> Result<TruthFun> {
        let rows = (0..1u64 << f.arity())
            .map(|row| f.eval(&row_bits(row, f.arity())).map(u64::from))
            .collect::<Result<Vec<_>>>()?;
        TruthFun::new(f.arity(), 1, rows)
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; 1 << self.outputs];
        for &r in &self.rows {
            seen[r as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; 1 << self.outputs];
        for &r in &self.rows {
            if seen[r as usize] {
                return false;
            }
            seen[r as usize] = true;
        }
        true
    }

    /// The element of the binary monoid computing this function: domain
    /// code `A^inputs`, each input word mapped to its output word under
    /// `0 -> a, 1 -> b`.
    pub fn to_element(&self) -> Hom {
        let alphabet = Alphabet::new(2).unwrap();
        let entries = (0..self.rows.len()).map(|row| {
            let x = word_from_bits(alphabet, &row_bits(row as u64, self.inputs));
            let y = word_from_bits(alphabet, &row_bits(self.rows[row], self.outputs));
            (x, y)
        });
        Hom::new(alphabet, entries).expect("a full level is a prefix code")
    }

    /// Serializes to the text dump: dimensions then one hex row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("inputs {}\noutputs {}\n", self.inputs, self.outputs);
        for r in &self.rows {
            out.push_str(&format!("row {r:x}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TruthFun> {
        let mut inputs: Option<usize> = None;
        let mut outputs: Option<usize> = None;
        let mut rows: Vec<u64> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("inputs") {
                inputs = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad inputs line: {line:?}")))?,
                );
            } else if let Some(v) = line.strip_prefix("outputs") {
                outputs = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad outputs line: {line:?}")))?,
                );
            } else if let Some(v) = line.strip_prefix("row") {
                rows.push(
                    u64::from_str_radix(v.trim(), 16)
                        .map_err(|_| Error::Parse(format!("bad row line: {line:?}")))?,
                );
            } else {
                return Err(Error::Parse(format!("unrecognized line: {line:?}")));
            }
        }
        let inputs = inputs.ok_or_else(|| Error::Parse("missing inputs line".into()))?;
        let outputs = outputs.ok_or_else(|| Error::Parse("missing outputs line".into()))?;
        TruthFun::new(inputs, outputs, rows)
    }
}

fn word_from_bits(alphabet: Alphabet, bits: &[bool]) -> Word {
    Word::from_letters(alphabet, bits.iter().map(|&b| u8::from(b)).collect()).unwrap()
}

/// The surjectivity gadget `C(x, y) = y` if `f(x, y)` holds, else all-ones:
/// `C` is surjective iff `forall y exists x: f`. Requires the all-ones
/// assignment to satisfy `f`.
pub fn surjectivity_gadget(f: &Formula, m: usize, n: usize) -> Result<TruthFun> {
    if m + n != f.arity() {
        return Err(Error::Domain(format!(
            "block sizes {m}+{n} do not match arity {}",
            f.arity()
        )));
    }
    if !f.eval(&vec![true; m + n])? {
        return Err(Error::Domain(
            "the gadget needs a formula satisfied by the all-ones assignment".into(),
        ));
    }
    let ones = (1u64 << n) - 1;
    let rows = (0..1u64 << (m + n))
        .map(|row| {
            let bits = row_bits(row, m + n);
            let y = bits_row(&bits[m..]);
            f.eval(&bits).map(|sat| if sat { y } else { ones })
        })
        .collect::<Result<Vec<_>>>()?;
    TruthFun::new(m + n, n, rows)
}

/// The injectivity gadget: `F(x, b) = (x, b)` when `f(x)` holds or `b = 0`,
/// else the all-zero row. `F` is injective iff `f` is a tautology.
pub fn injectivity_gadget(f: &Formula) -> Result<TruthFun> {
    injectivity_gadget_with(f, 0)
}

/// The printed variant of the injectivity gadget with else-output
/// `(0, ..., 0, 1)`. When `f` fails only on the all-zero assignment this
/// variant degenerates to the identity and misclassifies `f`.
pub fn injectivity_gadget_printed(f: &Formula) -> Result<TruthFun> {
    injectivity_gadget_with(f, 1)
}

fn injectivity_gadget_with(f: &Formula, else_row: u64) -> Result<TruthFun> {
    let n = f.arity();
    let rows = (0..1u64 << (n + 1))
        .map(|row| {
            let bits = row_bits(row, n + 1);
            let b = bits[n];
            Ok(if f.eval(&bits[..n])? || !b {
                row
            } else {
                else_row
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TruthFun::new(n + 1, n + 1, rows)
}

/// Decides whether composing the element of a unary-output formula with the
/// partial identity on `a A*` yields the zero element; this holds iff the
/// formula is a tautology (all image words start with `b`).
pub fn zero_word_check(f: &Formula) -> Result<bool> {
    let alphabet = Alphabet::new(2).unwrap();
    let element = TruthFun::from_formula(f)?.to_element();
    let id_a = Hom::partial_identity(&crate::code::PrefixCode::new(
        alphabet,
        [Word::parse(alphabet, "a")?],
    )?);
    Ok(id_a.compose(&element)?.hom().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green;
    use crate::test_util::hom;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(f("(or x1 (not x1))").eval(&[false]).unwrap());
        assert!(!f("(and x1 x2)").eval(&[true, false]).unwrap());
        assert!(!f("(xor x1 x2)").eval(&[true, true]).unwrap());
        assert!(f("(xor x1 x2)").eval(&[true, false]).unwrap());
        assert!(f("(and x1 x2)").eval(&[true]).is_err());
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "(and (or x1 (not x2)) x3)",
            "x1",
            "(xor x1 x2 x3)",
            "(or 0 1)",
        ] {
            assert_eq!(f(s).to_string(), s);
        }
        assert!(Formula::parse("(nand x1 x2)").is_err());
        assert!(Formula::parse("x0").is_err());
    }

    #[test]
    fn parse_xy_blocks() {
        let (g, ys) = Formula::parse_xy("(or x1 y1)", 1).unwrap();
        assert_eq!(ys, 1);
        assert_eq!(g.arity(), 2);
        assert!(g.forall_exists_eval(1, 1).unwrap());
    }

    #[test]
    fn forall_exists_examples() {
        let (or_xy, _) = Formula::parse_xy("(or x1 y1)", 1).unwrap();
        assert!(or_xy.forall_exists_eval(1, 1).unwrap());
        let (just_y, _) = Formula::parse_xy("y1", 1).unwrap();
        let just_y = just_y.with_arity(2).unwrap();
        assert!(!just_y.forall_exists_eval(1, 1).unwrap());
        assert!(f("1").with_arity(2).unwrap().forall_exists_eval(1, 1).unwrap());
    }

    #[test]
    fn qbf1_transform_examples() {
        let base = f("(and x1 x2)");
        let lifted = base.qbf1_transform();
        assert_eq!(lifted.to_string(), "(or x3 (and x1 x2))");
        assert!(lifted.eval(&[true, true, true]).unwrap());
        // truth is preserved with one more universal variable
        for (n_forall, m_exists) in [(1, 1), (0, 2)] {
            assert_eq!(
                base.forall_exists_eval(n_forall, m_exists).unwrap(),
                lifted.forall_exists_eval(n_forall + 1, m_exists).unwrap()
            );
        }
        let one = f("1").qbf1_transform();
        assert_eq!(one.to_string(), "(or x1 1)");
    }

    #[test]
    fn surjectivity_gadget_examples() {
        // f = y1: forall y exists x fails, the gadget is constant one
        let (just_y, _) = Formula::parse_xy("y1", 1).unwrap();
        let just_y = just_y.with_arity(2).unwrap();
        let c = surjectivity_gadget(&just_y, 1, 1).unwrap();
        assert_eq!(c.rows(), &[1, 1, 1, 1]);
        assert!(!c.is_surjective());
        assert_eq!(c.to_element(), hom("aa->b ab->b ba->b bb->b"));

        let (or_xy, _) = Formula::parse_xy("(or x1 y1)", 1).unwrap();
        let c2 = surjectivity_gadget(&or_xy, 1, 1).unwrap();
        assert!(c2.is_surjective());

        let c3 = surjectivity_gadget(&f("1").with_arity(2).unwrap(), 1, 1).unwrap();
        assert!(c3.is_surjective());

        assert!(surjectivity_gadget(&f("(and x1 (not x2))"), 1, 1).is_err());
    }

    #[test]
    fn injectivity_gadget_examples() {
        let taut = f("(or x1 (not x1))");
        let id = injectivity_gadget(&taut).unwrap();
        assert!(id.is_injective());
        assert_eq!(id.rows(), &[0, 1, 2, 3]);

        let not_taut = f("x1");
        let g = injectivity_gadget(&not_taut).unwrap();
        assert!(!g.is_injective());
    }

    #[test]
    fn printed_gadget_fails_on_zero_only_falsifier() {
        // or(x1..xn) is false only on the all-zero assignment
        for n in 1..=4 {
            let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let b = f(&format!("(or {})", vars.join(" ")));
            assert!(!b.is_tautology().unwrap());
            let printed = injectivity_gadget_printed(&b).unwrap();
            assert!(printed.is_injective(), "printed gadget degenerates");
            let corrected = injectivity_gadget(&b).unwrap();
            assert!(!corrected.is_injective(), "corrected gadget detects it");
        }
    }

    #[test]
    fn to_element_examples() {
        let identity = TruthFun::new(1, 1, vec![0, 1]).unwrap();
        assert_eq!(identity.to_element(), hom("a->a b->b"));
        let not = TruthFun::new(1, 1, vec![1, 0]).unwrap();
        assert_eq!(not.to_element(), hom("a->b b->a"));
        assert!(green::is_surjective_elem(&not.to_element()));
        assert!(green::is_monomorphism(&not.to_element()));
    }

    #[test]
    fn fun_predicates() {
        let identity = TruthFun::new(2, 2, vec![0, 1, 2, 3]).unwrap();
        assert!(identity.is_surjective() && identity.is_injective());
        let constant = TruthFun::new(2, 1, vec![1, 1, 1, 1]).unwrap();
        assert!(!constant.is_surjective() && !constant.is_injective());
        let not = TruthFun::new(1, 1, vec![1, 0]).unwrap();
        assert!(not.is_surjective() && not.is_injective());
    }

    #[test]
    fn zero_word_examples() {
        assert!(zero_word_check(&f("(or x1 (not x1))")).unwrap());
        assert!(!zero_word_check(&f("x1")).unwrap());
        assert!(!zero_word_check(&f("(and x1 (not x1))")).unwrap());
        // cross-check against the direct tautology test
        for s in ["(or x1 x2)", "(or x1 (not x1) x2)", "(xor x1 x1)"] {
            assert_eq!(
                zero_word_check(&f(s)).unwrap(),
                f(s).is_tautology().unwrap()
            );
        }
    }

    #[test]
    fn truth_table_text_roundtrip() {
        let t = TruthFun::new(2, 2, vec![3, 1, 2, 0]).unwrap();
        assert_eq!(TruthFun::from_text(&t.to_text()).unwrap(), t);
    }
}
