//! End-to-end checks of the formlab binary: output shapes and the exit-code
//! contract (0 success, 1 verification mismatch, 2 input error, 3 math
//! precondition failure).

use std::process::{Command, Output};

fn formlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn cohom_csv_has_sixteen_nonzero_cells() {
    let out = formlab(&["cohom", "nakamura_hp", "--theory", "bc", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let nonzero: usize = text
        .lines()
        .skip(1)
        .flat_map(|l| l.split(',').skip(1))
        .filter(|v| v.trim().parse::<usize>().map(|d| d > 0).unwrap_or(false))
        .count();
    assert_eq!(nonzero, 16);
}

#[test]
fn cohom_orbifold_dolbeault_dims() {
    let out = formlab(&[
        "cohom",
        "iwasawa_orbifold",
        "--theory",
        "dolbeault",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0,1,0,0,1"));
    assert!(text.contains("1,0,4,0,0"));
    assert!(text.contains("3,1,0,0,1"));
}

#[test]
fn cohom_family_requires_parameter() {
    let out = formlab(&["cohom", "nakamura_family", "--theory", "bc"]);
    assert_eq!(out.status.code(), Some(2));
    let out = formlab(&[
        "cohom",
        "nakamura_family",
        "--theory",
        "bc",
        "--param",
        "t=1/2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1,1,3,3,1"));
}

#[test]
fn unknown_model_is_an_input_error() {
    let out = formlab(&["cohom", "nope", "--theory", "bc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn massey_abc_orbifold_reports_non_vanishing() {
    let out = formlab(&[
        "massey", "abc", "iwasawa_orbifold", "--a", "e1^E1", "--b", "e2^E2", "--c", "e2^E2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("nonVanishing"));
    assert!(text.contains("indeterminacy  : dimension 0"));
}

#[test]
fn massey_nakamura_and_solv_examples() {
    let out = formlab(&[
        "massey",
        "abc",
        "nakamura_hp",
        "--a",
        "e1^e2",
        "--b",
        "x(-1,1)*e3^E1",
        "--c",
        "E1^E2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("nonVanishing"));

    let out = formlab(&[
        "massey",
        "dolbeault",
        "solv_family",
        "--param",
        "t1=1",
        "--param",
        "t2=0",
        "--a",
        "e3",
        "--b",
        "e3",
        "--c",
        "E3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("nonVanishing"));
}

#[test]
fn massey_with_undefined_product_exits_three() {
    // pairwise product not vanishing in cohomology
    let out = formlab(&[
        "massey",
        "dolbeault",
        "solv_family",
        "--param",
        "t1=1",
        "--param",
        "t2=0",
        "--a",
        "e3",
        "--b",
        "e2",
        "--c",
        "e3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn massey_parse_error_exits_two() {
    let out = formlab(&[
        "massey", "abc", "nakamura_hp", "--a", "e9", "--b", "e1", "--c", "e1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ddbar_verdicts() {
    let out = formlab(&["ddbar", "iwasawa_orbifold"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ddbar-lemma: TRUE"));
    let out = formlab(&["ddbar", "nakamura_hp"]);
    assert!(stdout(&out).contains("ddbar-lemma: FALSE"));
    let out = formlab(&["ddbar", "nakamura_family", "--param", "t=1/2"]);
    assert!(stdout(&out).contains("ddbar-lemma: TRUE"));
}

#[test]
fn formality_witness_is_shown() {
    let out = formlab(&["formality", "nakamura_hp", "--flavor", "bc"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("FALSE"));
    assert!(text.contains("witness pair"));
}

#[test]
fn fixed_points_counts() {
    let out = formlab(&["fixed-points", "iwasawa", "--action", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("fixed points of sigma: 16"));
    let out = formlab(&["fixed-points", "iwasawa", "--action", "psi"]);
    assert!(stdout(&out).contains("fixed curves of psi: 8"));
    let out = formlab(&["fixed-points", "iwasawa", "--action", "identity"]);
    assert!(stdout(&out).contains("not isolated"));
}

#[test]
fn invariant_dimension_sixteen() {
    let out = formlab(&["invariant", "iwasawa", "--action", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension 16"));
}

#[test]
fn sweep_shows_flip_at_zero() {
    let out = formlab(&[
        "sweep",
        "nakamura_family",
        "--param",
        "t=0,1/2,i/3,3/5",
        "--checks",
        "ddbar,bc-formality,abc-massey",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let zero_row = text
        .lines()
        .find(|l| l.trim_start().starts_with("0 "))
        .expect("row for t = 0");
    assert!(zero_row.contains("FALSE"));
    assert!(zero_row.contains("nonVanishing"));
    for value in ["1/2", "i/3", "3/5"] {
        let row = text.lines().find(|l| l.contains(value)).unwrap();
        assert!(row.contains("TRUE"), "{row}");
        assert!(row.contains("undefined") || row.contains("vanishes"), "{row}");
    }
}

#[test]
fn sweep_empty_value_list_is_ok() {
    let out = formlab(&["sweep", "nakamura_family", "--param", "t=", "--checks", "ddbar"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_inadmissible_parameter_exits_two() {
    let out = formlab(&["sweep", "nakamura_family", "--param", "t=2", "--checks", "ddbar"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn model_show_save_load_round_trip() {
    let dir = std::env::temp_dir().join("formlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nakamura.json");
    let out = formlab(&["model", "show", "nakamura_hp"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, stdout(&out)).unwrap();
    let out = formlab(&["model", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // the loaded file computes the same table as the builtin
    let a = formlab(&["cohom", path.to_str().unwrap(), "--theory", "bc", "--format", "csv"]);
    let b = formlab(&["cohom", "nakamura_hp", "--theory", "bc", "--format", "csv"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn cohom_expected_diff_drives_exit_code() {
    let dir = std::env::temp_dir().join("formlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("orbifold-dolbeault.json");
    std::fs::write(
        &good,
        serde_json::json!({
            "theory": "dolbeault",
            "dims": {"0,0": 1, "1,1": 4, "2,2": 4, "3,0": 1, "0,3": 1, "3,3": 1},
            "reps": {"3,0": ["e1^e2^e3"]}
        })
        .to_string(),
    )
    .unwrap();
    let out = formlab(&[
        "cohom",
        "iwasawa_orbifold",
        "--theory",
        "dolbeault",
        "--expected",
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("expected table matches"));

    let bad = dir.join("orbifold-bad.json");
    std::fs::write(
        &bad,
        serde_json::json!({
            "theory": "dolbeault",
            "dims": {"0,0": 1, "1,1": 5, "2,2": 4, "3,0": 1, "0,3": 1, "3,3": 1}
        })
        .to_string(),
    )
    .unwrap();
    let out = formlab(&[
        "cohom",
        "iwasawa_orbifold",
        "--theory",
        "dolbeault",
        "--expected",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH (1,1)"));
}

#[test]
fn verify_filtered_subsets_pass() {
    for tag in ["orbifold", "lattice", "deformations", "solv"] {
        let out = formlab(&["verify", "--only", tag]);
        assert_eq!(out.status.code(), Some(0), "verify --only {tag}:\n{}", stdout(&out));
        assert!(stdout(&out).contains("PASS"));
    }
}

#[test]
fn model_validate_rejects_corrupt_file() {
    let dir = std::env::temp_dir().join("formlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    let out = formlab(&["model", "show", "iwasawa"]);
    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // corrupt integrability: give dη¹ a (0,2) term
    doc["d_eta"][0] = serde_json::json!([{"coeff": "1", "holo": [], "anti": [1, 2]}]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = formlab(&["model", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}
