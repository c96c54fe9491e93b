use std::path::Path;
use std::process::Command;

use holomat::format::write_spec;
use holomat::holo::StandardFormSpec;
use holomat::random::{random_similarity, RandomModel};
use holomat::{Complex64, ComplexMatrix};
use serde_json::Value;

fn holomat(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_holomat")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, text)
}

fn write(dir: &Path, name: &str, lambdas: &[f64], s: ComplexMatrix, transpose: bool) -> String {
    let spec = StandardFormSpec::new(lambdas.iter().map(|&l| Complex64::new(l, 0.0)).collect(), s, transpose, 1.0).unwrap();
    let path = dir.join(name);
    write_spec(&path, &spec).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_identity_function() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "id.json", &[1.0], ComplexMatrix::identity(3), false);
    let (code, v, _) = holomat(&["classify", &spec]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tag"], "Standard");
    assert!((v["result"]["lambdas"][0][0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["input"]["spec"]["lambdas"][0][0], 1.0);
}

#[test]
fn classify_gallery_nilpotent_range() {
    let (code, v, _) = holomat(&["classify", "nilpotent-range"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tag"], "ZeroTraceRange");
}

#[test]
fn classify_transpose_spec_embeds_witness() {
    let dir = tempfile::tempdir().unwrap();
    let s = random_similarity(&mut RandomModel::new(3), 3, 20.0);
    let spec = write(dir.path(), "t.json", &[1.0, 0.5], s, true);
    let (code, v, _) = holomat(&["classify", &spec, "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tag"], "TransposeStandard");
    let zp = &v["result"]["report"]["zero_product"];
    assert_eq!(zp["passed"], false);
    assert!(zp["witness"]["a"]["re"].is_array());
}

#[test]
fn classify_direct_sum_is_mixed() {
    let (code, v, _) = holomat(&["classify", "direct-sum:3"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["kind"], "mixed_form");
}

#[test]
fn test_standard_form_passes_everything() {
    let dir = tempfile::tempdir().unwrap();
    let s = random_similarity(&mut RandomModel::new(8), 4, 50.0);
    let spec = write(dir.path(), "s.json", &[1.0, 1.0], s, false);
    let (code, v, _) = holomat(&["test", &spec, "--trials", "100"]);
    assert_eq!(code, 0);
    for key in ["orthogonal_additivity", "orthogonal_multiplicativity", "zero_product_preservation", "component_cross_orthogonality"] {
        assert_eq!(v["result"][key]["passed"], true, "{key}");
    }
}

#[test]
fn test_embed_is_multiplicative_but_not_classifiable() {
    let (code, v, _) = holomat(&["test", "embed-k2"]);
    assert_eq!(v["result"]["orthogonal_multiplicativity"]["passed"], true);
    assert_eq!(v["result"]["classification_applicable"], false);
    assert_eq!(code, 0);
}

#[test]
fn zero_trials_is_usage_error() {
    let (code, v, _) = holomat(&["test", "embed-k2", "--trials", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "usage_error");
}

#[test]
fn extract_reports_active_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "c.json", &[1.0, 0.0, 0.25], ComplexMatrix::identity(2), false);
    let (code, v, _) = holomat(&["extract", &spec]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["active_degrees"], serde_json::json!([1, 3]));
    assert_eq!(v["result"]["linearizations"][1]["images"].as_array().unwrap().len(), 4);

    let zero = write(dir.path(), "z.json", &[], ComplexMatrix::identity(2), false);
    let (_, v, _) = holomat(&["extract", &zero]);
    assert_eq!(v["result"]["active_degrees"], serde_json::json!([]));

    let (_, v, _) = holomat(&["extract", &spec, "--nodes", "3", "--nmax", "4"]);
    let warnings = v["result"]["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w["kind"] == "aliasing_risk" && w["nodes"] == 3));
}

#[test]
fn parse_errors_name_field_and_offset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = "{\"lambdas\": [[1.0, 0.0]], \"S\": {\"rows\": 1, \"cols\": 1, \"re\": [[true]], \"im\": [[0.0]]}, \"transpose\": false, \"radius\": 1.0}";
    std::fs::write(&path, text).unwrap();
    let (code, v, _) = holomat(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["kind"], "parse");
    assert!(v["result"]["field"].as_str().unwrap().starts_with("S.re"));
    let offset = v["result"]["offset"].as_u64().unwrap() as usize;
    let token = text.find("true").unwrap();
    assert!((token..=token + 4).contains(&offset), "{offset} vs {token}");
}

#[test]
fn out_flag_writes_identical_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (_, _, stdout) = holomat(&["gallery", "all", "--seed", "3"]);
    let (code, _, quiet) = holomat(&["gallery", "all", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(quiet.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout);
}

#[test]
fn unknown_subcommand_exits_with_usage_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_holomat")).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
