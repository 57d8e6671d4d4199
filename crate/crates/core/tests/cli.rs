mod common;

use common::{fixture_dir, fixture_path};
use gkm_fibrations::budget::Budget;
use gkm_fibrations::cli::document::{parse, serialize};
use gkm_fibrations::cli::{run, Outcome};
use gkm_fibrations::Error;
use std::path::{Path, PathBuf};
use std::process::Command;

fn gkm(args: &[&str]) -> Outcome {
    let mut full = vec!["gkm"];
    full.extend_from_slice(args);
    run(full, &Budget::default())
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compares against `tests/golden/<name>`; set `GKM_UPDATE_GOLDEN=1` to rewrite.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("GKM_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {name} differs");
}

// Absolute fixture paths vary between checkouts; goldens store them relative.
fn relative(s: &str) -> String {
    s.replace(&format!("{}/", fixture_dir().display()), "fixtures/")
}

fn write_temp(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn classify_and_delta_text() {
    let out = gkm(&["classify", &fx("tolman")]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "[1,-1,-1] eta=1\n"));
    let out = gkm(&["classify", &fx("flag")]);
    assert_eq!(out.stdout, "[1,-1,1] eta=1\n");
    assert_eq!(gkm(&["delta", &fx("tolman")]).stdout, "5\n");
    assert_eq!(gkm(&["delta", &fx("flag")]).stdout, "-3\n");
}

#[test]
fn enumerate_shows_several_deltas() {
    let out = gkm(&["enumerate", "--base", &fx("cp2"), "--max-k", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let json = gkm(&["--json", "enumerate", "--base", &fx("cp2"), "--max-k", "2"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    let classes = v["classes"].as_array().unwrap();
    let deltas: std::collections::BTreeSet<i64> = classes.iter().map(|c| c["delta"].as_i64().unwrap()).collect();
    assert!(deltas.len() >= 2);
    // Δ = (k_1 + k_2 + k_3)² − 4ηk_1k_3 per class representative.
    for c in classes {
        let rep = &c["representative"];
        let ks: Vec<i64> = rep["k"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        let eta = rep["eta"].as_i64().unwrap();
        let s = ks.iter().sum::<i64>();
        assert_eq!(c["delta"].as_i64().unwrap(), s * s - 4 * eta * ks[0] * ks[2]);
    }
    let total: usize = classes.iter().map(|c| c["members"].as_array().unwrap().len()).sum();
    // K and −K are one vector: 2·4³ sign patterns, halved.
    assert_eq!(total, 4 * 4 * 4);
    assert!(out.stdout.contains(&format!("distinct delta values: {}", deltas.len())));
}

#[test]
fn golden_outputs() {
    let cases: [(&str, Vec<String>); 10] = [
        ("classify_tolman.json", vec!["--json".into(), "classify".into(), fx("tolman")]),
        ("delta_tolman.json", vec!["--json".into(), "delta".into(), fx("tolman")]),
        ("validate_flag.json", vec!["--json".into(), "validate".into(), fx("flag")]),
        ("realize_flag.json", vec!["--json".into(), "realize".into(), fx("flag")]),
        ("cohomology_flag.json", vec!["--json".into(), "cohomology".into(), fx("flag")]),
        ("signed_structures_tolman.json", vec!["--json".into(), "signed-structures".into(), fx("tolman")]),
        ("kaehler_check_tolman.json", vec!["--json".into(), "kaehler-check".into(), fx("tolman")]),
        ("enumerate_cp2_1.json", vec!["--json".into(), "enumerate".into(), "--base".into(), fx("cp2"), "--max-k".into(), "1".into()]),
        ("kaehler_check_tolman.txt", vec!["kaehler-check".into(), fx("tolman")]),
        ("realize_square_delzant.txt", vec!["realize".into(), fx("square_product"), "--delzant-lift".into()]),
    ];
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = gkm(&args);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        check_golden(name, &relative(&out.stdout));
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["--json", "signed-structures"],
        vec!["--json", "cohomology"],
        vec!["kaehler-check"],
        vec!["realize"],
    ] {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full.push(fx("tolman"));
        let full: Vec<&str> = full.iter().map(String::as_str).collect();
        assert_eq!(gkm(&full), gkm(&full));
    }
    let e = ["--json", "enumerate", "--base", &fx("square"), "--max-k", "1"];
    assert_eq!(gkm(&e), gkm(&e));
}

#[test]
fn build_output_classifies_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("built.json");
    let out_s = out.to_string_lossy().into_owned();
    let r = gkm(&["build", "--base", &fx("pentagon"), "--k", "2,-1,1,3,-1", "--eta", "1", "--out", &out_s]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = gkm(&["classify", &out_s]);
    assert_eq!(r.stdout, "[2,-1,1,3,-1] eta=1\n");
    assert_eq!(gkm(&["validate", &out_s]).code, 0);
    // Without --out the document goes to stdout and parses.
    let r = gkm(&["build", "--base", &fx("cp2"), "--k", "1,-1,-1", "--eta", "1"]);
    let doc = parse(&r.stdout).unwrap();
    assert_eq!(doc.vertices.len(), 6);
}

#[test]
fn fixtures_round_trip_byte_identically() {
    for entry in std::fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(serialize(&doc), text, "{}", path.display());
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let text = std::fs::read_to_string(fixture_path("cp2")).unwrap();
    let cut = &text[..text.len() / 2];
    match parse(cut) {
        Err(Error::Parse { line, column, .. }) => {
            assert_eq!(line, cut.lines().count());
            assert!(column > 0);
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    match parse("{\n  \"format_version\": \"1\",\n  \"mode\": \"signed\" \"vertices\": []\n}") {
        Err(Error::Parse { line: 3, .. }) => {}
        other => panic!("expected a parse error on line 3, got {other:?}"),
    }
    let zero = text.replacen("\"weight\": [\n        1,\n        0\n      ]", "\"weight\": [\n        0,\n        0\n      ]", 1);
    assert_ne!(zero, text);
    assert!(matches!(parse(&zero), Err(Error::Semantic(_))));
    let dangling = text.replacen("\"dst\": \"v2\"", "\"dst\": \"v9\"", 1);
    assert!(matches!(parse(&dangling), Err(Error::Semantic(_))));
    let unknown = text.replacen("\"mode\"", "\"colour\": 1, \"mode\"", 1);
    assert!(matches!(parse(&unknown), Err(Error::Parse { .. })));
}

#[test]
fn json_errors_report_exit_codes() {
    let out = gkm(&["--json", "delta", &fx("square_product")]);
    assert_eq!(out.code, 3);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["exit_code"], 3);
    assert_eq!(gkm(&["delta", &fx("square")]).code, 4);
    assert!(out.stderr.starts_with("error: "));
}

#[test]
fn render_draws_each_edge() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let svg_s = svg.to_string_lossy().into_owned();
    assert_eq!(gkm(&["render", &fx("tolman"), "--out", &svg_s]).code, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<line").count(), 9);
    // Abstract graphs have no positions.
    let built = write_temp(dir.path(), "b.json", &gkm(&["build", "--base", &fx("cp2"), "--k", "1,1,1", "--eta", "0"]).stdout);
    assert_eq!(gkm(&["render", &built, "--out", &svg_s]).code, 3);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gkm");
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str], budget: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args);
        if let Some(b) = budget {
            c.env("GKM_SEARCH_BUDGET", b);
        }
        c.output().unwrap()
    };
    let ok = code(&["classify", &fx("tolman")], None);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "[1,-1,-1] eta=1\n");

    // γ_3 = (1,1) breaks the congruences on the triangle.
    let cp2 = std::fs::read_to_string(fixture_path("cp2")).unwrap();
    let broken = cp2.replacen("\"weight\": [\n        -1,\n        1\n      ]", "\"weight\": [\n        1,\n        1\n      ]", 1);
    assert_ne!(broken, cp2);
    let broken = write_temp(dir.path(), "broken.json", &broken);
    assert_eq!(code(&["validate", &broken], None).status.code(), Some(2));

    assert_eq!(code(&["delta", &fx("square_product")], None).status.code(), Some(3));
    let truncated = write_temp(dir.path(), "cut.json", &cp2[..40]);
    let out = code(&["validate", &truncated], None);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(code(&["frobnicate"], None).status.code(), Some(4));
    assert_eq!(code(&["signed-structures", &fx("tolman")], Some("3")).status.code(), Some(5));
    assert_eq!(code(&["validate", &dir.path().join("missing.json").to_string_lossy()], None).status.code(), Some(1));
}

// Structural check of every serialized document against the shipped schema:
// required keys present and no keys outside `properties`, recursively.
fn conforms(doc: &serde_json::Value, schema: &serde_json::Value, root: &serde_json::Value) -> Result<(), String> {
    let schema = match schema.get("$ref").and_then(|r| r.as_str()) {
        Some("#") => root,
        Some(r) => {
            let name = r.trim_start_matches("#/$defs/");
            &root["$defs"][name]
        }
        None => schema,
    };
    if let Some(obj) = doc.as_object() {
        for key in schema["required"].as_array().into_iter().flatten() {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("missing {key}"));
            }
        }
        for (key, value) in obj {
            let sub = match schema["properties"].get(key) {
                Some(s) => s,
                None if schema["additionalProperties"].is_object() => &schema["additionalProperties"],
                None => return Err(format!("unexpected key {key}")),
            };
            conforms(value, sub, root).map_err(|e| format!("{key}: {e}"))?;
        }
    }
    if let Some(items) = doc.as_array() {
        if let Some(n) = schema["minItems"].as_u64() {
            if items.len() < n as usize || items.len() > schema["maxItems"].as_u64().unwrap() as usize {
                return Err(format!("{} items", items.len()));
            }
        }
        for item in items {
            conforms(item, &schema["items"], root)?;
        }
    }
    Ok(())
}

#[test]
fn documents_match_the_shipped_schema() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("docs").join("graph-document.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let built = gkm(&["build", "--base", &fx("hexagon"), "--k", "1,2,-1,1,-2,3", "--eta", "1"]).stdout;
    let mut texts = vec![("built".to_string(), built)];
    for entry in std::fs::read_dir(fixture_dir()).unwrap() {
        let p = entry.unwrap().path();
        texts.push((p.display().to_string(), std::fs::read_to_string(&p).unwrap()));
    }
    for (name, text) in texts {
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        conforms(&doc, &schema, &schema).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let bad: serde_json::Value = serde_json::json!({ "format_version": "1", "mode": "signed", "vertices": [], "edges": [] });
    assert!(conforms(&bad, &schema, &schema).is_err());
}
