use std::path::Path;
use std::process::{Command, Output};

use cliffspin::json::{bundle_matrices, matrix_to_value, parse_matrix};
use cliffspin_core::any::AnyMatrix;
use cliffspin_core::spin_catalog::{catalog, embed22, Signature};
use cliffspin_core::Matrix;
use serde_json::Value;

fn spin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin"))
        .args(args)
        .env("SPIN_SEED", "7")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_passes_for_3_2() {
    let out = spin(&["verify", "--pq", "3,2", "--samples", "20"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["passed"], Value::Bool(true));
}

#[test]
fn concentric_element_is_a_member_of_spin_2_2() {
    let g1 = Matrix::from_ints(&[[2, 1], [1, 1]]);
    let g2 = Matrix::from_ints(&[[1, 3], [0, 1]]);
    let x = matrix_to_value(&AnyMatrix::Rational(embed22(&g1, &g2)));
    let dir = tempfile::tempdir().unwrap();
    let out = spin(&[
        "member",
        "--pq",
        "2,2",
        "--matrix",
        &write(dir.path(), "x.json", &x),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["member"], Value::Bool(true));

    let doubled = matrix_to_value(&AnyMatrix::Rational(
        embed22(&g1, &g2).scale(&cliffspin_core::scalar::qi(2)),
    ));
    let out = spin(&["member", "--pq", "2,2", "--matrix", &doubled.to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout_json(&out)["failed"],
        serde_json::json!(["involution"])
    );
}

#[test]
fn exponential_of_zero_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let zero = serde_json::json!({"ring": "float64", "rows": 5, "cols": 5, "data": vec![0.0; 25]});
    let path = write(dir.path(), "zero.json", &zero);
    for method in ["spin", "oracle"] {
        let out = spin(&["expm", "--pq", "3,2", "--input", &path, "--method", method]);
        assert_eq!(out.status.code(), Some(0));
        let m = parse_matrix(&stdout_json(&out)["result"].to_string()).unwrap();
        assert_eq!(m, AnyMatrix::Float64(Matrix::identity(5)));
    }
}

#[test]
fn catalog_show_round_trips() {
    for sig in ["2,1", "4,1", "1,5"] {
        let out = spin(&["catalog-show", "--pq", sig]);
        assert_eq!(out.status.code(), Some(0));
        let parsed = bundle_matrices(&stdout_json(&out)).unwrap();
        let entry = catalog(Signature::parse(sig).unwrap()).unwrap();
        let gens: Vec<AnyMatrix> = match &entry {
            cliffspin_core::spin_catalog::AnyEntry::Real(e) => e
                .rep
                .generators()
                .iter()
                .cloned()
                .map(AnyMatrix::Rational)
                .collect(),
            cliffspin_core::spin_catalog::AnyEntry::Complex(e) => e
                .rep
                .generators()
                .iter()
                .cloned()
                .map(AnyMatrix::Complex)
                .collect(),
            cliffspin_core::spin_catalog::AnyEntry::Quaternionic(e) => e
                .rep
                .generators()
                .iter()
                .cloned()
                .map(AnyMatrix::Quaternion)
                .collect(),
        };
        assert_eq!(&parsed[..gens.len()], &gens[..]);
    }
}

#[test]
fn output_is_deterministic() {
    let a = spin(&["verify", "--pq", "2,1", "--samples", "10"]);
    let b = spin(&["verify", "--pq", "2,1", "--samples", "10"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn errors_are_single_line_json_with_exit_2() {
    for args in [
        vec!["catalog-show", "--pq", "9,9"],
        vec![
            "member",
            "--pq",
            "3,2",
            "--matrix",
            "{\"ring\":\"octonion\"}",
        ],
        vec!["frobnicate"],
    ] {
        let out = spin(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        let v: Value = serde_json::from_str(err.trim_end()).unwrap();
        assert!(v["error"]["kind"].is_string());
    }
}

#[test]
fn liealg32_table_flags_rows() {
    let out = spin(&["table", "--name", "liealg32"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out);
    let bad: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["matches_paper"] == Value::Bool(false))
        .map(|r| r["row"].as_u64().unwrap())
        .collect();
    assert_eq!(bad, [7, 9, 10]);
}

#[test]
fn liealg_inverse_round_trips() {
    let x = serde_json::json!({"ring": "rational", "rows": 3, "cols": 3,
        "data": [[0, 1, 0], [-1, 0, 2], [0, 2, 0]]});
    let out = spin(&[
        "liealg",
        "--pq",
        "2,1",
        "--matrix",
        &x.to_string(),
        "--inverse",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let y = stdout_json(&out);
    let y = y.as_object().unwrap().values().next().unwrap().to_string();
    let out = spin(&["liealg", "--pq", "2,1", "--matrix", &y]);
    assert_eq!(out.status.code(), Some(0));
    let back = parse_matrix(&stdout_json(&out)["matrix"].to_string()).unwrap();
    assert_eq!(back, parse_matrix(&x.to_string()).unwrap());
}
