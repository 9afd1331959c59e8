//! Command-line front end: table algebra, order deciders, multiplier and
//! density constructions, generator-word deciders, boolean gadgets, and the
//! verification selftest.
//!
//! Decision subcommands print `yes` or `no` and exit with status 0 or 1;
//! constructive subcommands write their result to `-o FILE` or stdout;
//! parse and domain errors print one line to stderr and exit with status 2.

use clap::{Parser, Subcommand};
use mk1::circuits::{self, Formula, TruthFun};
use mk1::congruence::{self, Congruence, Pick};
use mk1::genwords::{self, GenFileSpec, GenWord, Generators};
use mk1::{density, green, suite, Alphabet, Hom, Word};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mk1", version, about = "Tables between prefix codes: normal forms, R/L orders, density witnesses, generator words, and circuit gadgets")]
struct Cli {
    /// Alphabet arity for inputs that do not carry one (formulas, gadgets)
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    /// Evaluation budget for the bounded brute-force deciders
    #[arg(long, global = true, default_value_t = 1 << 20)]
    budget: u64,
    /// Emit structured JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized parts of the selftest
    #[arg(long, global = true, default_value_t = 0x6d6b31)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a table to its maximal extension (the canonical form)
    Normalize { table: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// Multiply two tables: SECOND is applied first, FIRST second
    Compose { first: PathBuf, second: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// Equality of two tables as monoid elements
    Eq { a: PathBuf, b: PathBuf },
    /// Does LO lie below HI in the R-preorder?
    RLeq { lo: PathBuf, hi: PathBuf },
    /// Does LO lie below HI in the L-preorder?
    LLeq { lo: PathBuf, hi: PathBuf },
    /// Are the two tables R-equivalent?
    REquiv { a: PathBuf, b: PathBuf },
    /// Are the two tables L-equivalent?
    LEquiv { a: PathBuf, b: PathBuf },
    /// A right multiplier M with HI . M = LO (needs LO <=R HI)
    RMult { lo: PathBuf, hi: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// A left multiplier M with M . HI = LO (needs LO <=L HI)
    LMult { lo: PathBuf, hi: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// An inverse table G with F G F = F and G F G = G
    Inverse { table: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// The fiber congruence of a table
    Part { table: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// The block-selector idempotent of a congruence (j = 0 min, 1 max)
    Func { cong: PathBuf, #[arg(long, default_value_t = 0)] j: u8, #[arg(short, long)] out: Option<PathBuf> },
    /// Rewrite a congruence to its maximal extension
    CongMax { cong: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// Does HI end-refine LO (LO <=end HI)?
    CongRefines { lo: PathBuf, hi: PathBuf },
    /// Meet of two congruences in the end-refinement order
    CongMeet { a: PathBuf, b: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// Join of two congruences in the end-refinement order
    CongJoin { a: PathBuf, b: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// An element strictly between a strict R-pair (HI above LO)
    DensityR { hi: PathBuf, lo: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// An element strictly between a strict L-pair (HI above LO)
    DensityL { hi: PathBuf, lo: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// A strict L-between witness staying in the common R-class
    DensityLInR { hi: PathBuf, lo: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// A strict R-between witness staying in the common L-class
    DensityRInL { hi: PathBuf, lo: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// Apply a generator word to a word; prints the value or "undefined"
    GenApply { gen: PathBuf, word: String },
    /// Expand a generator word to its canonical table
    GenExpand { gen: PathBuf, #[arg(short, long)] out: Option<PathBuf> },
    /// Bounded surjectivity of a generator word
    GenSurjective { gen: PathBuf },
    /// Bounded R-order formula between two generator words
    GenRleqPi2 { lo: PathBuf, hi: PathBuf },
    /// Bounded upper-bound check: generator word <=R bound table
    GenUpperBound { gen: PathBuf, bound: PathBuf },
    /// Build the surjectivity gadget of a formula over x/y variable blocks
    GadgetSurj { formula: String, #[arg(long)] m: usize, #[arg(long)] n: usize, #[arg(short, long)] out: Option<PathBuf> },
    /// Build the injectivity gadget of a formula (--printed for the
    /// uncorrected variant)
    GadgetInj { formula: String, #[arg(long)] printed: bool, #[arg(short, long)] out: Option<PathBuf> },
    /// Add a guard variable so the all-ones assignment satisfies the formula
    Qbf1 { formula: String },
    /// Evaluate a forall-exists quantified formula (existential block first)
    QbfEval { formula: String, #[arg(long)] forall: usize, #[arg(long)] exists: usize },
    /// Is the formula a tautology, via composition with the zero test?
    ZeroWord { formula: String },
    /// Is the truth-table dump surjective?
    IsSurjective { table: PathBuf },
    /// Is the truth-table dump injective?
    IsInjective { table: PathBuf },
    /// Run the verification suite
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_hom(path: &Path) -> Result<Hom, String> {
    Hom::from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_cong(path: &Path) -> Result<Congruence, String> {
    Congruence::from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Loads a `.gen` file, resolving `gamma` table paths relative to it.
fn load_gen(path: &Path, default_k: usize) -> Result<(Generators, GenWord), String> {
    let spec = GenFileSpec::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tables = Vec::new();
    for (rel, name) in &spec.gammas {
        tables.push((name.clone(), load_hom(&dir.join(rel))?));
    }
    let alphabet = match (spec.k, tables.first()) {
        (Some(k), _) => Alphabet::new(k).map_err(|e| e.to_string())?,
        (None, Some((_, h))) => h.alphabet(),
        (None, None) => Alphabet::new(default_k).map_err(|e| e.to_string())?,
    };
    let mut gens = Generators::new(alphabet);
    for (name, table) in tables {
        gens.insert(&name, table).map_err(|e| e.to_string())?;
    }
    let word = GenWord::new(spec.atoms);
    word.validate(&gens).map_err(|e| e.to_string())?;
    Ok((gens, word))
}

fn decision(cli: &Cli, value: bool) -> ExitCode {
    if cli.json {
        println!("{}", serde_json::json!({ "result": if value { "yes" } else { "no" } }));
    } else {
        println!("{}", if value { "yes" } else { "no" });
    }
    ExitCode::from(u8::from(!value))
}

fn emit(cli: &Cli, out: &Option<PathBuf>, text: String) -> Result<ExitCode, String> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            if cli.json {
                println!("{}", serde_json::json!({ "file": path.display().to_string() }));
            }
        }
        None => {
            if cli.json {
                println!("{}", serde_json::json!({ "output": text }));
            } else {
                print!("{text}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pick_from_flag(j: u8) -> Result<Pick, String> {
    match j {
        0 => Ok(Pick::DictMin),
        1 => Ok(Pick::DictMax),
        other => Err(format!("selector index {other} must be 0 or 1")),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let fallible = |e: mk1::Error| e.to_string();
    match &cli.command {
        Command::Normalize { table, out } => {
            let h = load_hom(table)?;
            emit(cli, out, h.max_extend().hom().to_text())
        }
        Command::Compose { first, second, out } => {
            let f = load_hom(first)?;
            let g = load_hom(second)?;
            let fg = f.compose(&g).map_err(fallible)?;
            emit(cli, out, fg.hom().to_text())
        }
        Command::Eq { a, b } => {
            let x = load_hom(a)?;
            let y = load_hom(b)?;
            Ok(decision(cli, x.eq_in_m(&y)))
        }
        Command::RLeq { lo, hi } => {
            let value = green::r_leq(&load_hom(lo)?, &load_hom(hi)?).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::LLeq { lo, hi } => {
            let value = green::l_leq(&load_hom(lo)?, &load_hom(hi)?).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::REquiv { a, b } => {
            let value = green::r_equiv(&load_hom(a)?, &load_hom(b)?).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::LEquiv { a, b } => {
            let value = green::l_equiv(&load_hom(a)?, &load_hom(b)?).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::RMult { lo, hi, out } => {
            let m = green::r_multiplier(&load_hom(lo)?, &load_hom(hi)?).map_err(fallible)?;
            emit(cli, out, m.to_text())
        }
        Command::LMult { lo, hi, out } => {
            let m = green::l_multiplier(&load_hom(lo)?, &load_hom(hi)?).map_err(fallible)?;
            emit(cli, out, m.to_text())
        }
        Command::Inverse { table, out } => {
            let g = load_hom(table)?.inverse().map_err(fallible)?;
            emit(cli, out, g.to_text())
        }
        Command::Part { table, out } => {
            let c = Congruence::fibers(&load_hom(table)?);
            emit(cli, out, c.to_text())
        }
        Command::Func { cong, j, out } => {
            let c = load_cong(cong)?;
            let h = c.selector(pick_from_flag(*j)?);
            emit(cli, out, h.to_text())
        }
        Command::CongMax { cong, out } => {
            let c = load_cong(cong)?.max_extend();
            emit(cli, out, c.to_text())
        }
        Command::CongRefines { lo, hi } => {
            let value = congruence::end_leq(&load_cong(lo)?, &load_cong(hi)?).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::CongMeet { a, b, out } => {
            let c = congruence::meet(&load_cong(a)?, &load_cong(b)?).map_err(fallible)?;
            emit(cli, out, c.to_text())
        }
        Command::CongJoin { a, b, out } => {
            let c = congruence::join(&load_cong(a)?, &load_cong(b)?).map_err(fallible)?;
            emit(cli, out, c.to_text())
        }
        Command::DensityR { hi, lo, out } => {
            let mid = density::r_between(&load_hom(hi)?, &load_hom(lo)?).map_err(fallible)?;
            emit(cli, out, mid.to_text())
        }
        Command::DensityL { hi, lo, out } => {
            let mid = density::l_between(&load_hom(hi)?, &load_hom(lo)?).map_err(fallible)?;
            emit(cli, out, mid.to_text())
        }
        Command::DensityLInR { hi, lo, out } => {
            let mid = density::l_between_in_r_class(&load_hom(hi)?, &load_hom(lo)?)
                .map_err(fallible)?;
            emit(cli, out, mid.to_text())
        }
        Command::DensityRInL { hi, lo, out } => {
            let mid = density::r_between_in_l_class(&load_hom(hi)?, &load_hom(lo)?)
                .map_err(fallible)?;
            emit(cli, out, mid.to_text())
        }
        Command::GenApply { gen, word } => {
            let (gens, gen_word) = load_gen(gen, cli.k)?;
            let z = Word::parse(gens.alphabet(), word).map_err(fallible)?;
            let value = genwords::apply(&gens, &gen_word, &z).map_err(fallible)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "result": value.as_ref().map(|w| w.to_string()) })
                );
            } else {
                match &value {
                    Some(w) => println!("{w}"),
                    None => println!("undefined"),
                }
            }
            Ok(ExitCode::from(u8::from(value.is_none())))
        }
        Command::GenExpand { gen, out } => {
            let (gens, word) = load_gen(gen, cli.k)?;
            let table = genwords::expand_to_table(&gens, &word, cli.budget).map_err(fallible)?;
            emit(cli, out, table.hom().to_text())
        }
        Command::GenSurjective { gen } => {
            let (gens, word) = load_gen(gen, cli.k)?;
            let value =
                genwords::is_surjective_program(&gens, &word, cli.budget).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::GenRleqPi2 { lo, hi } => {
            let (lo_gens, lo_word) = load_gen(lo, cli.k)?;
            let (hi_gens, hi_word) = load_gen(hi, cli.k)?;
            let mut gens = lo_gens;
            for name in hi_gens.names().map(String::from).collect::<Vec<_>>() {
                let table = hi_gens.get(&name).map_err(fallible)?;
                match gens.get(&name) {
                    Ok(existing) if existing == table => {}
                    Ok(_) => return Err(format!("generator {name} defined twice differently")),
                    Err(_) => gens.insert(&name, table.clone()).map_err(fallible)?,
                }
            }
            let value =
                genwords::r_leq_pi2(&gens, &lo_word, &hi_word, cli.budget).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::GenUpperBound { gen, bound } => {
            let (gens, word) = load_gen(gen, cli.k)?;
            let alpha = load_hom(bound)?;
            let value = genwords::r_upper_bound_check(&gens, &word, &alpha, cli.budget)
                .map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::GadgetSurj { formula, m, n, out } => {
            let (f, _) = Formula::parse_xy(formula, *m).map_err(fallible)?;
            let f = f.with_arity(m + n).map_err(fallible)?;
            let gadget = circuits::surjectivity_gadget(&f, *m, *n).map_err(fallible)?;
            emit(cli, out, gadget.to_text())
        }
        Command::GadgetInj { formula, printed, out } => {
            let f = Formula::parse(formula).map_err(fallible)?;
            let gadget = if *printed {
                circuits::injectivity_gadget_printed(&f).map_err(fallible)?
            } else {
                circuits::injectivity_gadget(&f).map_err(fallible)?
            };
            emit(cli, out, gadget.to_text())
        }
        Command::Qbf1 { formula } => {
            let f = Formula::parse(formula).map_err(fallible)?;
            let lifted = f.qbf1_transform();
            if cli.json {
                println!("{}", serde_json::json!({ "output": lifted.to_string() }));
            } else {
                println!("{lifted}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::QbfEval { formula, forall, exists } => {
            let (f, _) = Formula::parse_xy(formula, *exists).map_err(fallible)?;
            let f = f.with_arity(forall + exists).map_err(fallible)?;
            let value = f.forall_exists_eval(*forall, *exists).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::ZeroWord { formula } => {
            let f = Formula::parse(formula).map_err(fallible)?;
            let value = circuits::zero_word_check(&f).map_err(fallible)?;
            Ok(decision(cli, value))
        }
        Command::IsSurjective { table } => {
            let t = TruthFun::from_text(&read(table)?).map_err(fallible)?;
            Ok(decision(cli, t.is_surjective()))
        }
        Command::IsInjective { table } => {
            let t = TruthFun::from_text(&read(table)?).map_err(fallible)?;
            Ok(decision(cli, t.is_injective()))
        }
        Command::Selftest => {
            let ok = suite::run_all(cli.seed, std::io::stdout().lock())
                .map_err(|e| e.to_string())?;
            Ok(ExitCode::from(u8::from(!ok)))
        }
    }
}
