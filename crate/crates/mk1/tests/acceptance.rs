//! The acceptance suite: one test per verification campaign, each printing
//! a PASS line with its summary (visible with `--nocapture`). The same
//! campaigns run from the command line via `mk1 selftest`.

use mk1::suite;

const SEED: u64 = 0x6d6b31;

fn run(name: &str) {
    let check = suite::all_checks()
        .into_iter()
        .find(|c| c.name == name)
        .expect("check exists");
    match (check.run)(SEED) {
        Ok(summary) => println!("PASS {}: {}", name, summary),
        Err(failure) => panic!("FAIL {name}: {failure}"),
    }
}

#[test]
fn criterion_01_r_order_oracle_agreement() {
    run("r-order-oracle-agreement");
}

#[test]
fn criterion_02_normal_form_confluence_associativity() {
    run("normal-form-confluence-associativity");
}

#[test]
fn criterion_03_worked_example() {
    run("worked-example");
}

#[test]
fn criterion_04_constructive_multipliers() {
    run("constructive-multipliers");
}

#[test]
fn criterion_05_l_order_two_method_agreement() {
    run("l-order-two-method-agreement");
}

#[test]
fn criterion_06_fibers_selector_roundtrip() {
    run("fibers-selector-roundtrip");
}

#[test]
fn criterion_07_density_witnesses() {
    run("density-witnesses");
}

#[test]
fn criterion_08_gadget_chains() {
    run("gadget-chains");
}

#[test]
fn criterion_09_genword_consistency() {
    run("genword-consistency");
}

#[test]
fn criterion_10_maximality_dual_check() {
    run("maximality-dual-check");
}
