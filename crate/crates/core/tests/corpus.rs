//! The shipped fixture corpus matches the in-code fixtures, every file is a
//! canonical fixed point, and the malformed file is rejected with a pointer.

use std::path::PathBuf;
use std::sync::Arc;

use gradecat::error::Error;
use gradecat::fixtures::corpus;
use gradecat::schema;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn corpus_files_match_fixtures() {
    let update = std::env::var_os("GRADECAT_UPDATE_GOLDEN").is_some();
    for (name, text) in corpus() {
        let path = dir().join(name);
        if update {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{name}");
    }
}

#[test]
fn categories_are_fixed_points() {
    for (name, text) in corpus() {
        let v = schema::parse_json(&text).unwrap();
        if v.get("objects").is_some() && name != "malformed.json" {
            assert_eq!(schema::roundtrip_category(&text).unwrap(), text, "{name}");
        }
    }
}

#[test]
fn gradings_are_fixed_points() {
    let pairs = [
        ("kc2.json", "kc2_gC2.json"),
        ("kc3.json", "kc3_gC3.json"),
        ("kronecker3.json", "kronecker3_gS3.json"),
        ("e3_u.json", "e3_u_gC2.json"),
        ("e4.json", "e4_gZ.json"),
    ];
    for (c, g) in pairs {
        let cat = Arc::new(schema::read_category(&dir().join(c)).unwrap());
        let text = std::fs::read_to_string(dir().join(g)).unwrap();
        assert_eq!(schema::roundtrip_grading(&text, &cat).unwrap(), text, "{g}");
    }
}

#[test]
fn malformed_category_points_at_the_field() {
    match schema::read_category(&dir().join("malformed.json")) {
        Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/identity/u/0/1"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unsorted_input_is_reordered_then_stable() {
    let text = r#"{"objects":["a"],"identity":{"a":[["1a","4/2"]]},"homs":{"a->a":["1a"]},"field":{"p":3,"type":"Fp"}}"#;
    let once = schema::roundtrip_category(text).unwrap();
    assert!(once.starts_with("{\n  \"compose\""));
    assert_eq!(schema::roundtrip_category(&once).unwrap(), once);
}
