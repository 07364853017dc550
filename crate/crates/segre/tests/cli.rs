use std::process::Command;

use proptest::prelude::*;
use segre::cli::run_args;
use segre::errata::EXPECTED_ERRATA;
use segre::json::{table_from_json, table_to_json};
use segre_core::engine::sheaf_syzygies;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_args(std::iter::once("segre").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn betti_text_segre_2_3() {
    let (code, out, _) = run(&["betti", "--m", "2", "--n", "3", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 → O(−3)^2 → O(−2)^3 → O → O_X → 0"));
    assert!(out.contains("Σ(1,1) ⊗ Σ(1,1)"));
    assert!(out.contains("Σ(2,1) ⊗ Σ(1,1,1)"));
}

#[test]
fn betti_json_and_latex() {
    let (code, out, _) = run(&["betti", "--m", "2", "--n", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let table = table_from_json(&out).unwrap();
    let dims: Vec<_> = table.betti_numbers().into_iter().collect();
    assert_eq!(dims, [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
    assert_eq!(table_to_json(&table), out);

    let (code, out, _) = run(&["betti", "--m", "3", "--n", "4", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("\\[\n  0 \\to \\mathcal{O}(-8)^{3}"));
}

#[test]
fn range_and_usage_errors_exit_2() {
    let (code, _, err) = run(&["betti", "--m", "2", "--n", "3", "--a", "-3", "--b", "0"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("twist out of range"));
    assert_eq!(run(&["betti", "--m", "0", "--n", "3"]).0, 2);
    assert_eq!(run(&["verify", "--m", "2", "--n", "3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn boundary_twist_prints_banner() {
    let (code, _, err) = run(&["betti", "--m", "2", "--n", "3", "--a", "-2", "--b", "1"]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning:"));
}

#[test]
fn verify_sheaf_matches() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["verify", "--m", "2", "--n", "3", "--a", "-1", "--b", "1", "--max-t", "5"])
        .env("SEGRE_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches(" MATCH ").count(), 5);
    assert!(dir.path().join("oracle/m2n3a-1b1/t5.json").exists());

    let again = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["verify", "--m", "2", "--n", "3", "--a", "-1", "--b", "1", "--max-t", "5", "--recheck"])
        .env("SEGRE_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);

    let stats = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["cache", "stats"])
        .env("SEGRE_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert!(String::from_utf8(stats.stdout).unwrap().contains("6 entries"));
    let clear = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["cache", "clear"])
        .env("SEGRE_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(clear.status.code(), Some(0));
    assert!(!dir.path().join("oracle").exists());
}

#[test]
fn corrupted_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle/m2n2a0b0/t2.json");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(&path, "{ not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["verify", "--m", "2", "--n", "2", "--max-t", "3"])
        .env("SEGRE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let no_cache = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["verify", "--m", "2", "--n", "2", "--max-t", "3", "--no-cache", "--exact", "--jobs", "1"])
        .env("SEGRE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(no_cache.status.code(), Some(0));
}

#[test]
fn errata_flag_prints_fixture() {
    let (code, out, _) = run(&["--show-errata"]);
    assert_eq!(code, 0);
    assert_eq!(out, EXPECTED_ERRATA);
}

#[test]
fn mult_tables() {
    let (code, out, _) = run(&["mult", "--m", "2", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "zero multiplication\n");
    let (_, out, _) = run(&["mult", "--m", "3", "--n", "4"]);
    assert!(out.contains("R_{1,2} × R_{3,4} → R_{4,6}  (1) · (2,1) → (2,2)"));
    assert!(out.lines().all(|l| !l.contains("R_{2,4}")));
}

#[test]
fn components_command() {
    let (code, out, _) = run(&["components", "--m", "2", "--n", "2", "--a", "1", "--b", "1", "--p", "1", "--t", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert_eq!(out.matches("Clipped").count(), 2);
    assert_eq!(out.matches("ZeroCube").count(), 1);
    let (_, out, _) = run(&["components", "--m", "2", "--n", "3", "--p", "1", "--t", "3"]);
    assert_eq!(out, "R_{1,3} = 0\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["betti", "--m", "3", "--n", "3", "--a", "1", "--b", "-1", "--format", "json"];
    assert_eq!(run(&args), run(&args));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn json_round_trip(m in 1usize..=3, n in 1usize..=3, da in 0i64..=4, db in 0i64..=4, max_t in 0usize..=8) {
        let (a, b) = (da - m as i64, db - n as i64);
        let table = sheaf_syzygies(m, n, a, b, max_t).unwrap();
        let text = table_to_json(&table);
        prop_assert_eq!(table_to_json(&table_from_json(&text).unwrap()), text);
    }
}
