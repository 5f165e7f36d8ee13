use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradecat"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("spawn gradecat");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    (code, v)
}

fn category_files() -> Vec<String> {
    let mut out: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .filter(|n| {
            let v: Value =
                serde_json::from_str(&std::fs::read_to_string(fixtures().join(n)).unwrap())
                    .unwrap();
            v.get("objects").is_some()
        })
        .collect();
    out.sort();
    out
}

#[test]
fn validate_category_exit_codes() {
    let files = category_files();
    assert!(files.len() > 10);
    for f in &files {
        let (code, r) = report(&["validate-category", "--category", f]);
        if f == "malformed.json" {
            assert_eq!(code, 2, "{f}");
            assert_eq!(r["status"], "error");
            assert_eq!(r["payload"]["pointer"], "/identity/u/0/1");
        } else {
            assert_eq!(code, 0, "{f}: {r}");
            assert_eq!(r["payload"]["valid"], true);
        }
    }
}

#[test]
fn roundtrip_is_identity_on_corpus() {
    for f in category_files() {
        if f == "malformed.json" {
            continue;
        }
        let (code, text) = run(&["roundtrip", "--category", &f]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(
            text,
            std::fs::read_to_string(fixtures().join(&f)).unwrap(),
            "{f}"
        );
    }
    let (code, text) = run(&[
        "roundtrip",
        "--category",
        "e4.json",
        "--grading",
        "e4_gZ.json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        std::fs::read_to_string(fixtures().join("e4_gZ.json")).unwrap()
    );
}

#[test]
fn walk_group_of_e4() {
    let (code, r) = report(&[
        "walk-group",
        "--category",
        "e4.json",
        "--grading",
        "e4_gZ.json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "walk-group");
    assert_eq!(r["payload"]["subgroup"]["free_rank"], 1);
    assert_eq!(r["payload"]["subgroup"]["is_whole"], true);
}

#[test]
fn extend_convex_matches_golden() {
    let golden = |name: &str| -> Value {
        let p = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../core/tests/golden")
            .join(name);
        serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
    };
    let (code, r) = report(&[
        "extend-convex",
        "--category",
        "e3.json",
        "--sub",
        "u",
        "--grading",
        "e3_u_gC2.json",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "invalid");
    assert_eq!(r["payload"], golden("e3_extension.json"));
    let v = &r["payload"]["violations"][0];
    assert_eq!((v["f"].as_str(), v["g"].as_str()), (Some("t"), Some("f")));

    let (code, r) = report(&[
        "extend-convex",
        "--category",
        "e4.json",
        "--sub",
        "u",
        "--grading",
        "e4_u_gZ.json",
    ]);
    assert_eq!(code, 0);
    let mut p = r["payload"].clone();
    assert_eq!(p["connected"], true);
    p.as_object_mut().unwrap().remove("connected");
    assert_eq!(p, golden("e4_extension.json"));
}

#[test]
fn convex_check_finds_witness() {
    let (code, r) = report(&["convex-check", "--category", "a3.json", "--sub", "x,z"]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["witness"], json!({"f": "a", "g": "b"}));
    let (code, _) = report(&["convex-check", "--category", "a3_zero.json", "--sub", "x,z"]);
    assert_eq!(code, 0);
}

#[test]
fn pi1_of_kc2_diagram() {
    let (code, r) = report(&["pi1", "--diagram", "kc2_diagram.json"]);
    assert_eq!(code, 0);
    let inv = &r["payload"]["limit"]["invariant_factors"];
    assert_eq!(inv["free_rank"], 1);
    assert_eq!(inv["torsion"], json!([2]));
    assert!(r["warnings"][0]
        .as_str()
        .unwrap()
        .contains("relative to the supplied gradings"));
}

#[test]
fn kappa_on_e4_is_injective() {
    let (code, r) = report(&[
        "kappa",
        "--diagram",
        "e4_diagram.json",
        "--sub",
        "u",
        "--sub-diagram",
        "e4_u_diagram.json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["injective"], true);
    assert_eq!(r["payload"]["criterion_holds"], true);
}

#[test]
fn kronecker_morphisms() {
    let base = [
        "--category",
        "kronecker.json",
        "--source",
        "kronecker_g01.json",
        "--target",
        "kronecker_g10.json",
    ];
    let (code, r) = report(&[&["find-morphism"][..], &base].concat());
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["morphism"]["mu"]["identity"], false);
    let (code, r) = report(&[&["mu"][..], &base, &["--j", "kronecker_swap_J.json"]].concat());
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["mu"]["identity"], true);
    // a disconnected target violates the search precondition
    let (code, r) = report(&[
        "mu",
        "--category",
        "kronecker.json",
        "--source",
        "kronecker_g01.json",
        "--target",
        "kronecker_g02.json",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["error"], "precondition");
}

#[test]
fn galois_and_choice_independence() {
    let (code, r) = report(&[
        "verify-galois",
        "--category",
        "kc3.json",
        "--grading",
        "kc3_gZ3.json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["galois"], true);
    let (code, r) = report(&[
        "choice-independence",
        "--category",
        "cycle3.json",
        "--grading",
        "cycle3_g001.json",
        "--seed",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["trees_differ"], true);
}

#[test]
fn io_and_domain_errors_exit_2() {
    let (code, r) = report(&[
        "validate-grading",
        "--category",
        "e4.json",
        "--grading",
        "missing.json",
    ]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["error"], "io");
    let (code, r) = report(&["convex-check", "--category", "a3.json", "--sub", "nowhere"]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["error"], "domain");
}

#[test]
fn human_format() {
    let (code, text) = run(&[
        "--format",
        "human",
        "walk-group",
        "--category",
        "e4.json",
        "--grading",
        "e4_gZ.json",
    ]);
    assert_eq!(code, 0);
    assert!(text.starts_with("walk-group: ok\n"));
}

#[test]
fn output_is_canonical() {
    let (_, text) = run(&["pi1", "--diagram", "kronecker_diagram.json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        text,
        format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
    );
}

#[test]
fn roundtrip_normalizes_then_is_fixed() {
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("a3.json")).unwrap())
            .unwrap();
    v["compose"][0]["result"][0][1] = json!("2/4");
    let dir = std::env::temp_dir().join(format!("gradecat-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("a3_half.json");
    // compact serialization keeps keys but drops the canonical layout
    std::fs::write(&first, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, once) = run(&["roundtrip", "--category", first.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(once.contains("\"1/2\"") && !once.contains("2/4"));
    let second = dir.join("a3_half_canonical.json");
    std::fs::write(&second, &once).unwrap();
    let (code, twice) = run(&["roundtrip", "--category", second.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(once, twice);
    std::fs::remove_dir_all(&dir).unwrap();
}
