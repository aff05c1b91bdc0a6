use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn fermitomo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermitomo"))
        .args(args)
        .output()
        .expect("spawn fermitomo")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn algebra_prints_single_mode_matrices() {
    let out = fermitomo(&["algebra", "--modes", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["annihilators"][0]["re"],
        serde_json::json!([0.0, 1.0, 0.0, 0.0])
    );
    assert_eq!(
        v["creators"][0]["re"],
        serde_json::json!([0.0, 0.0, 1.0, 0.0])
    );
    assert_eq!(v["max_residual"], 0.0);
}

#[test]
fn modes_out_of_range_is_a_usage_error() {
    let out = fermitomo(&["verify", "--modes", "11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside the supported range"));
    assert_eq!(fermitomo(&["symbol", "--op", "b7"]).status.code(), Some(2));
    assert_eq!(fermitomo(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_fails_with_impossible_tolerance() {
    let out = fermitomo(&[
        "verify",
        "--modes",
        "1",
        "--tolerance",
        "1e-30",
        "--suite",
        "star",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["first_failure"], "star");
}

#[test]
fn verify_output_depends_only_on_seed() {
    let a = fermitomo(&["verify", "--seed", "5", "--suite", "reconstruction"]);
    let b = fermitomo(&["verify", "--seed", "5", "--suite", "reconstruction"]);
    let c = fermitomo(&["verify", "--seed", "6", "--suite", "reconstruction"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn vacuum_tomogram_in_degrees() {
    let out = fermitomo(&[
        "tomogram",
        "--state",
        "vac",
        "--modes",
        "2",
        "--angle-unit",
        "degrees",
        "--angles",
        "90,0;180,45",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let probs = &v["points"][0]["probs"];
    let p = |k: &str| probs[k].as_f64().unwrap();
    assert!((p("00") - 0.0).abs() < 1e-15);
    assert!((p("01") - 0.5).abs() < 1e-15);
    assert!((p("11") - 0.5).abs() < 1e-15);
    assert_eq!(
        v["points"][0]["angles"][1],
        serde_json::json!([180.0, 45.0])
    );
}

#[test]
fn tomogram_accepts_pure_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plus.json");
    fs::write(
        &path,
        r#"{"rows": 2, "cols": 1, "re": [1.0, 1.0], "im": [0.0, 0.0]}"#,
    )
    .unwrap();
    let out = fermitomo(&[
        "tomogram",
        "--state",
        path.to_str().unwrap(),
        "--modes",
        "1",
        "--angles",
        "1.5707963267948966,0",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let p = json(&out)["points"][0]["probs"]["0"].as_f64().unwrap();
    assert!((p - 1.0).abs() < 1e-14);

    fs::write(
        &path,
        r#"{"rows": 2, "cols": 2, "re": [2.0, 0.0, 0.0, -1.0], "im": [0.0, 0.0, 0.0, 0.0]}"#,
    )
    .unwrap();
    let out = fermitomo(&[
        "tomogram",
        "--state",
        path.to_str().unwrap(),
        "--modes",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symbol_csv_has_closed_form_columns() {
    let out = fermitomo(&["symbol", "--op", "a1", "--modes", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(
        lines.next().unwrap(),
        "theta_1,psi_1,theta_2,psi_2,m_bits,matrix_re,matrix_im,closed_re,closed_im"
    );
    assert_eq!(lines.count(), 144);
}

#[test]
fn star_then_reconstruct_recovers_the_product() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("star.csv");
    let out = fermitomo(&[
        "star",
        "--left",
        "a1+",
        "--right",
        "a1",
        "--modes",
        "2",
        "--check-oracle",
        "--format",
        "csv",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let alg = fermitomo(&["algebra", "--modes", "2"]);
    let n1 = {
        let v = json(&alg);
        let a = &v["annihilators"][0];
        let re: Vec<f64> = a["re"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        let mut number = vec![0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                number[r * 4 + c] = (0..4).map(|k| re[k * 4 + r] * re[k * 4 + c]).sum();
            }
        }
        number
    };
    let reference = dir.path().join("n1.json");
    fs::write(
        &reference,
        serde_json::json!({"rows": 4, "cols": 4, "re": n1, "im": vec![0.0; 16]}).to_string(),
    )
    .unwrap();

    let out = fermitomo(&[
        "reconstruct",
        "--symbol",
        csv.to_str().unwrap(),
        "--modes",
        "2",
        "--reference",
        reference.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(json(&out)["reference_deviation"].as_f64().unwrap() < 1e-12);

    let out = fermitomo(&[
        "reconstruct",
        "--symbol",
        csv.to_str().unwrap(),
        "--modes",
        "2",
        "--degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn star_refuses_large_products_by_default() {
    let out = fermitomo(&["star", "--left", "a1", "--right", "a1+", "--modes", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("default limit"));
}
