use std::process::Command;

use affine_cc::fixtures;
use affine_cc::modrep::rigid_module;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn affcc(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_affcc")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("affcc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn classify_b3tilde() {
    let (code, v, err) = affcc(&["--fixture", "b3tilde", "classify"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "Affine");
    assert_eq!(v["null_root"], serde_json::json!([1, 1, 1, 1]));
    assert!(err.contains("seed 1"));
}

#[test]
fn rank_two_roots_have_no_tubes() {
    let (code, v, _) = affcc(&["--fixture", "kronecker", "roots", "--depth", "2"]);
    assert_eq!(code, 0);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 12);
    assert!(roots.iter().all(|r| r["orbit"] == "infinite"));
    assert_eq!(v["tube_periods"], serde_json::json!([]));
}

#[test]
fn decompose_null_root() {
    let (code, v, _) = affcc(&["--fixture", "b3tilde", "decompose", "--rank", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"m": 1, "parts": []}));
}

#[test]
fn verify_b3tilde_depth_three() {
    let (code, v, _) = affcc(&["--fixture", "b3tilde", "verify", "--depth", "3"]);
    assert_eq!(code, 0);
    let recs = v["records"].as_array().unwrap();
    assert!(!recs.is_empty() && recs.iter().all(|r| r["equal"] == true));
}

#[test]
fn ccvar_by_path_and_label_agree() {
    let (code, by_path, _) = affcc(&["--fixture", "b3tilde", "ccvar", "--path", "1 2"]);
    assert_eq!(code, 0);
    assert_eq!(by_path["d"], serde_json::json!([2, 1, 0, 0]));
    let (code, by_label, _) = affcc(&["--fixture", "b3tilde", "ccvar", "--root", "P2:0"]);
    assert_eq!(code, 0);
    assert_eq!(by_label["rank"], by_path["d"]);
    assert_eq!(by_label["f"], by_path["f"]);
    assert_eq!(by_label["g"], by_path["g"]);
}

#[test]
fn generic_eta_is_deterministic() {
    let args = ["--fixture", "b3tilde", "--seed", "9", "generic", "--gvec", "-1 0 0 1 0 0 0 0"];
    let (code, v, _) = affcc(&args);
    assert_eq!(code, 0);
    assert_eq!(v["f"].as_array().unwrap().len(), 5);
    assert_eq!(v["decomposition"]["m"], 1);
    let (_, again, _) = affcc(&args);
    assert_eq!(v, again);
}

#[test]
fn oracle_on_module_file() {
    let t = fixtures::b3tilde();
    let m = rigid_module(&t, &[0, 1, 1, 0], 3, 500, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let path = scratch("tube.json", &m.to_json().to_string());
    let (code, v, _) = affcc(&["oracle", "--fixture", "b3tilde", "--module", &path, "--grassmannian"]);
    assert_eq!(code, 0);
    let counts = v["counts"].as_array().unwrap();
    assert_eq!(counts.len(), 4);
    assert!(counts.iter().any(|c| c["e"] == serde_json::json!([0, 0, 0, 0]) && c["count"] == 1));
    assert!(counts.iter().any(|c| c["e"] == serde_json::json!([0, 1, 1, 0]) && c["count"] == 1));
}

#[test]
fn input_file_is_relabeled() {
    let path = scratch(
        "a2.json",
        r#"{"cartan": [[2,-1,-1],[-1,2,-1],[-1,-1,2]], "symmetrizer": [1,1,1], "orientation": [[3,2],[2,1],[3,1]]}"#,
    );
    let (code, v, err) = affcc(&["--input", &path, "classify"]);
    assert_eq!(code, 0);
    assert_eq!(v["labels"], serde_json::json!([3, 2, 1]));
    assert!(err.contains("relabeled"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(affcc(&["--fixture", "nope", "classify"]).0, 2);
    assert_eq!(affcc(&["--fixture", "b3tilde", "decompose", "--rank", "1 1"]).0, 2);
    assert_eq!(affcc(&["--fixture", "b3tilde", "ccvar", "--root", "Q1:0"]).0, 2);
    let finite = scratch("a2fin.json", r#"{"cartan": [[2,-1],[-1,2]], "symmetrizer": [1,1], "orientation": [[1,2]]}"#);
    assert_eq!(affcc(&["--input", &finite, "roots"]).0, 2);
    assert_eq!(affcc(&["--fixture", "b3tilde", "--qlist", "2,4", "oracle", "--rank", "1 0 0 0"]).0, 2);
}
