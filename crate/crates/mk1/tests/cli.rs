//! End-to-end checks of the command-line interface: exit codes mirror the
//! library deciders, and every emitted file re-parses to an equal value.

use mk1::circuits::TruthFun;
use mk1::congruence::Congruence;
use mk1::{Alphabet, Hom};
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mk1"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

const PHI: &str = "alphabet k=2\nmap a -> aa\nmap b -> a\n";
const PSI: &str = "alphabet k=2\nmap a -> b\n";
const HI: &str = "alphabet k=2\nmap a -> ba\nmap b -> bb\n";

#[test]
fn decision_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let psi = write(dir.path(), "psi.hom", PSI);
    let hi = write(dir.path(), "hi.hom", HI);
    let one = write(dir.path(), "one.hom", "alphabet k=2\nmap - -> -\n");

    let yes = run(&["r-leq", psi.to_str().unwrap(), hi.to_str().unwrap()]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "yes");

    let no = run(&["r-leq", one.to_str().unwrap(), psi.to_str().unwrap()]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no).trim(), "no");

    let missing = run(&["r-leq", "nope.hom", psi.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn emitted_files_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write(dir.path(), "phi.hom", PHI);
    let psi = write(dir.path(), "psi.hom", PSI);
    let hi = write(dir.path(), "hi.hom", HI);
    let out = dir.path().join("result.hom");

    // normalize
    let status = bin()
        .args(["normalize", phi.to_str().unwrap(), "-o", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let parsed = Hom::from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let phi_lib = Hom::from_text(PHI).unwrap();
    assert_eq!(parsed, phi_lib.max_extend().into_hom());

    // right multiplier verifies through the library
    let status = bin()
        .args([
            "r-mult",
            psi.to_str().unwrap(),
            hi.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let mult = Hom::from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let hi_lib = Hom::from_text(HI).unwrap();
    let psi_lib = Hom::from_text(PSI).unwrap();
    assert!(hi_lib.compose(&mult).unwrap().hom().eq_in_m(&psi_lib));

    // fiber congruence file
    let cong_out = dir.path().join("part.cong");
    let status = bin()
        .args(["part", phi.to_str().unwrap(), "-o", cong_out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let cong = Congruence::from_text(&std::fs::read_to_string(&cong_out).unwrap()).unwrap();
    assert_eq!(cong, Congruence::fibers(&phi_lib));
}

#[test]
fn density_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let one = write(dir.path(), "one.hom", "alphabet k=2\nmap - -> -\n");
    let low = write(dir.path(), "low.hom", "alphabet k=2\nmap b -> b\n");
    let mid = dir.path().join("mid.hom");
    let status = bin()
        .args([
            "density-r",
            one.to_str().unwrap(),
            low.to_str().unwrap(),
            "-o",
            mid.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    // strictness through the CLI deciders
    for (lo, hi) in [
        (low.to_str().unwrap(), mid.to_str().unwrap()),
        (mid.to_str().unwrap(), one.to_str().unwrap()),
    ] {
        assert_eq!(run(&["r-leq", lo, hi]).status.code(), Some(0));
        assert_eq!(run(&["r-leq", hi, lo]).status.code(), Some(1));
    }
}

#[test]
fn genword_commands() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "not.hom", "alphabet k=2\nmap a -> b\nmap b -> a\n");
    let gen = write(
        dir.path(),
        "prog.gen",
        "alphabet k=2\ngamma not.hom as NOT\napply-order: right-to-left\nword: NOT \u{3c4}1\n",
    );

    let applied = run(&["gen-apply", gen.to_str().unwrap(), "ab"]);
    assert_eq!(applied.status.code(), Some(0));
    assert_eq!(stdout(&applied).trim(), "aa");

    let undef = run(&["gen-apply", gen.to_str().unwrap(), "a"]);
    assert_eq!(undef.status.code(), Some(1));
    assert_eq!(stdout(&undef).trim(), "undefined");

    assert_eq!(
        run(&["gen-surjective", gen.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let expanded = dir.path().join("expanded.hom");
    let status = bin()
        .args([
            "gen-expand",
            gen.to_str().unwrap(),
            "-o",
            expanded.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let table = Hom::from_text(&std::fs::read_to_string(&expanded).unwrap()).unwrap();
    let ab = Alphabet::new(2).unwrap();
    for z in ab.words_of_len(3) {
        // swap the first two letters, then flip the first
        let mut letters = z.letters().to_vec();
        letters.swap(0, 1);
        letters[0] = 1 - letters[0];
        let expected = mk1::Word::from_letters(ab, letters).unwrap();
        assert_eq!(table.evaluate(&z).unwrap(), expected);
    }
}

#[test]
fn gadget_commands_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let table_path = dir.path().join("gadget.tt");
    let status = bin()
        .args([
            "gadget-surj",
            "(or x1 y1)",
            "--m",
            "1",
            "--n",
            "1",
            "-o",
            table_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let parsed = TruthFun::from_text(&std::fs::read_to_string(&table_path).unwrap()).unwrap();
    assert!(parsed.is_surjective());
    assert_eq!(
        run(&["is-surjective", table_path.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let json = run(&["--json", "qbf-eval", "(or x1 y1)", "--forall", "1", "--exists", "1"]);
    assert_eq!(json.status.code(), Some(0));
    assert_eq!(stdout(&json).trim(), "{\"result\":\"yes\"}");

    assert_eq!(run(&["zero-word", "(or x1 (not x1))"]).status.code(), Some(0));
    assert_eq!(run(&["zero-word", "x1"]).status.code(), Some(1));
}
