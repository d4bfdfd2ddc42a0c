//! Acceptance gate: one test per verification criterion, printing the
//! per-criterion pass/fail line (run with `--nocapture` to see all lines).

use formlab::verify;

fn run(id: u8) {
    let result = verify::run_one(id).expect("criterion exists");
    println!("{}", result.line());
    for d in &result.details {
        println!("    {d}");
    }
    assert!(
        result.passed,
        "{}\n{}",
        result.line(),
        result.details.join("\n")
    );
}

#[test]
fn criterion_01_orbifold_cohomology() {
    run(1);
}

#[test]
fn criterion_02_orbifold_abc_massey() {
    run(2);
}

#[test]
fn criterion_03_nakamura_tables() {
    run(3);
}

#[test]
fn criterion_04_nakamura_negative_verdicts() {
    run(4);
}

#[test]
fn criterion_05_nakamura_deformed_fibers() {
    run(5);
}

#[test]
fn criterion_06_solv_dolbeault_massey() {
    run(6);
}

#[test]
fn criterion_07_structure_equation_rederivation() {
    run(7);
}

#[test]
fn criterion_08_lattice_combinatorics() {
    run(8);
}

#[test]
fn criterion_09_property_suites() {
    run(9);
}

#[test]
fn criterion_10_sweep_narrative() {
    run(10);
}
