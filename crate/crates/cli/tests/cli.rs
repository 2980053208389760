use std::path::{Path, PathBuf};
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use so3five_core::examples::{self, StructureData};
use so3five_core::matrix::Matrix;
use so3five_core::multilinear::{blades, mask_indices};
use so3five_core::representation::{Frame, SO3Element};
use so3five_core::sampling::rand_ratio;
use so3five_core::structure::CurvatureMap;
use so3five_core::structure::TorsionTensor;
use so3five_core::{Field, KVector, QuadSurd, Scalar};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn so3five(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_so3five"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).expect("golden file")
}

fn write_json(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.display().to_string()
}

fn scalar_text<F: Field>(x: &F) -> String {
    Scalar::from_field(x).to_string()
}

/// The structure file that encodes `d` in the standard frame.
fn serialize<F: Field>(d: &StructureData<F>) -> Value {
    let torsion: Vec<Value> = blades(3)
        .iter()
        .zip(d.torsion.form().coeffs())
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| {
            let ix = mask_indices(*m);
            json!({"i": ix[0] + 1, "j": ix[1] + 1, "k": ix[2] + 1, "value": scalar_text(c)})
        })
        .collect();
    let m = d.curvature.matrix();
    let rows: Vec<Vec<String>> = (0..10)
        .map(|a| (0..10).map(|b| scalar_text(&m[(a, b)])).collect())
        .collect();
    json!({
        "scalar_mode": F::MODE.name(),
        "torsion": torsion,
        "curvature": {"kind": "matrix", "rows": rows},
    })
}

fn builtins<F: Field>() -> Vec<(Vec<&'static str>, StructureData<F>)> {
    vec![
        (vec!["flat"], examples::flat()),
        (vec!["symmetric"], examples::symmetric(&F::one())),
        (vec!["symmetric", "--lambda", "2/3"], examples::symmetric(&F::ratio(2, 3))),
        (vec!["so12"], examples::so12(&F::one()).unwrap()),
        (vec!["so12", "--t", "-3/2"], examples::so12(&F::ratio(-3, 2)).unwrap()),
    ]
}

fn analyze_matches_example<F: Field>() {
    let dir = tempfile::tempdir().unwrap();
    let mode = F::MODE.name();
    for (args, d) in builtins::<F>() {
        let path = write_json(&dir, "in.json", &serialize(&d));
        let from_file = so3five(&["analyze", &path]);
        let mut ex = vec!["example", "--mode", mode];
        ex.extend(args.iter().copied());
        let from_example = so3five(&ex);
        assert_eq!(from_file.code, 0, "{args:?}: {}", from_file.stderr);
        assert_eq!(from_example.code, 0);
        assert_eq!(from_file.stdout, from_example.stdout, "{args:?} in {mode} mode");
    }
}

#[test]
fn analyze_of_a_serialized_builtin_is_byte_identical_exact() {
    analyze_matches_example::<QuadSurd>();
}

#[test]
fn analyze_of_a_serialized_builtin_is_byte_identical_float() {
    analyze_matches_example::<f64>();
}

#[test]
fn parameterized_file_matches_the_example() {
    let a = so3five(&["analyze", &data("so12.json")]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, so3five(&["example", "so12", "--t", "1"]).stdout);
    assert_eq!(a.stdout, golden("so12_exact.json"));
}

#[test]
fn reports_match_golden_files() {
    assert_eq!(so3five(&["example", "so12"]).stdout, golden("so12_exact.json"));
    assert_eq!(so3five(&["example", "flat"]).stdout, golden("flat_exact.json"));
    assert_eq!(
        so3five(&["example", "symmetric", "--lambda", "1/2"]).stdout,
        golden("symmetric_half_exact.json")
    );
    assert_eq!(so3five(&["example", "so12", "--mode", "float"]).stdout, golden("so12_float.json"));
    assert_eq!(
        so3five(&["decompose", &data("so12.json")]).stdout,
        golden("so12_decompose_exact.json")
    );
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["example", "so12"],
        vec!["example", "so12", "--mode", "float"],
        vec!["analyze", &data("so12.json")],
        vec!["decompose", &data("so12.json")],
    ] {
        let a = so3five(&args);
        let b = so3five(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.contains('\r'));
        assert!(a.stdout.ends_with("}\n"));
    }
}

#[test]
fn so12_report_carries_the_anchors() {
    let v: Value = serde_json::from_str(&so3five(&["example", "so12"]).stdout).unwrap();
    assert_eq!(v["verdict"]["normal"], false);
    assert_eq!(v["verdict"]["cr_integrable"], true);
    assert_eq!(v["verdict"]["failing_condition"], "Q");
    assert_eq!(v["verdict"]["chi_killing_t"], Value::Null);
    assert_eq!(v["conditions"]["q_vanishes"]["witness"]["value"], "-18*r3");
    assert_eq!(v["conditions"]["q_vanishes"]["witness"]["x"], json!(["1/2*r3", "0", "0", "1/2", "0"]));
    assert_eq!(v["star_t"]["24"], "-2");
    assert_eq!(v["star_t"]["35"], "-1");
    assert_eq!(v["nijenhuis_probe"]["agrees"], true);
}

#[test]
fn flat_and_symmetric_verdicts() {
    let v: Value = serde_json::from_str(&so3five(&["example", "flat"]).stdout).unwrap();
    assert_eq!(v["verdict"]["normal"], true);
    assert_eq!(v["verdict"]["cr_integrable"], true);
    let v: Value = serde_json::from_str(&so3five(&["example", "symmetric"]).stdout).unwrap();
    assert_eq!(v["verdict"]["normal"], true);
    assert_eq!(v["verdict"]["chi_killing_t"], "1");
    let v: Value = serde_json::from_str(&so3five(&["example", "symmetric", "--lambda", "1/2"]).stdout).unwrap();
    assert_eq!(v["verdict"]["chi_killing_t"], "2");
}

#[test]
fn decompose_so12_anchors() {
    let v: Value = serde_json::from_str(&so3five(&["decompose", &data("so12.json")]).stdout).unwrap();
    let d = &v["decomposition"];
    assert_eq!(d["s"], "20");
    assert_eq!(d["a"]["2345"], "-4/3");
    assert_eq!(d["a"]["1235"], "0");
    let diag: Vec<Value> = (0..5).map(|i| d["eta"][i][i].clone()).collect();
    assert_eq!(diag, [json!("-4"), json!("4"), json!("-2"), json!("4"), json!("-2")]);
    assert!(d["rho_minus"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == "0"));
    assert_eq!(v["reconstruction_residual"], "0");
}

#[test]
fn decompose_zero_curvature_is_zero() {
    let v: Value = serde_json::from_str(&so3five(&["decompose", &data("flat.json")]).stdout).unwrap();
    fn all_zero(v: &Value) -> bool {
        match v {
            Value::Object(m) => m.values().all(all_zero),
            Value::Array(a) => a.iter().all(all_zero),
            x => x == "0",
        }
    }
    assert!(all_zero(&v["decomposition"]), "{v}");
}

fn random_curvature<F: Field>(rng: &mut ChaCha8Rng) -> CurvatureMap<F> {
    let m = Matrix::from_fn(10, 10, |_, _| rand_ratio::<F, _>(rng));
    let p = CurvatureMap::<F>::projection();
    CurvatureMap::from_map(|b| p.apply(&KVector::from_coeffs(2, m.mul_vec(b.coeffs())).unwrap()))
}

#[test]
fn decompose_random_curvature_reconstructs_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let d = StructureData {
            torsion: TorsionTensor::<QuadSurd>::zero(),
            curvature: random_curvature(&mut rng),
        };
        let path = write_json(&dir, "k.json", &serialize(&d));
        let out = so3five(&["decompose", &path]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["reconstruction_residual"], "0");
    }
    let d = StructureData {
        torsion: TorsionTensor::<f64>::zero(),
        curvature: random_curvature(&mut rng),
    };
    let path = write_json(&dir, "k.json", &serialize(&d));
    let v: Value = serde_json::from_str(&so3five(&["decompose", &path]).stdout).unwrap();
    assert!(v["reconstruction_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn frame_override_gives_an_equivalent_structure() {
    let dir = tempfile::tempdir().unwrap();
    let h = SO3Element::<QuadSurd>::rot_phi(QuadSurd::ratio(3, 5), QuadSurd::ratio(4, 5), 0.0)
        .unwrap()
        .compose(&SO3Element::rot_theta(QuadSurd::ratio(5, 13), QuadSurd::ratio(12, 13), 0.0).unwrap());
    let frame = Frame::<QuadSurd>::standard().rotated(&h, 0.0);
    let rows: Vec<Vec<String>> = frame
        .vectors()
        .iter()
        .map(|v| v.coeffs().iter().map(scalar_text).collect())
        .collect();
    let mut input: Value = serde_json::from_str(&std::fs::read_to_string(data("so12.json")).unwrap()).unwrap();
    input["frame"] = json!(rows);
    let path = write_json(&dir, "framed.json", &input);
    let out = so3five(&["analyze", &path]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["normal"], false);
    assert_eq!(v["verdict"]["cr_integrable"], true);
    let d: Value = serde_json::from_str(&so3five(&["decompose", &path]).stdout).unwrap();
    assert_eq!(d["decomposition"]["s"], "20");
    assert_eq!(d["reconstruction_residual"], "0");

    input["frame"] = json!([
        ["1", "0", "0", "0", "0"],
        ["0", "0", "1", "0", "0"],
        ["0", "1", "0", "0", "0"],
        ["0", "0", "0", "1", "0"],
        ["0", "0", "0", "0", "1"]
    ]);
    let path = write_json(&dir, "bad.json", &input);
    let out = so3five(&["analyze", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("adapted"), "{}", out.stderr);
}

#[test]
fn non_l23_curvature_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = vec![vec!["0".to_string(); 10]; 10];
    rows[0][0] = "1".into();
    let path = write_json(
        &dir,
        "k.json",
        &json!({"scalar_mode": "exact", "curvature": {"kind": "matrix", "rows": rows}}),
    );
    let out = so3five(&["analyze", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("curvature not Λ²₃-valued"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let so12: Value = serde_json::from_str(&std::fs::read_to_string(data("so12.json")).unwrap()).unwrap();

    let mut bad_scalar = so12.clone();
    bad_scalar["torsion"][0]["value"] = json!("2*t +");
    let mut bad_index = so12.clone();
    bad_index["torsion"][0]["j"] = json!(1);
    let mut unknown_param = so12.clone();
    unknown_param["curvature"]["coefficient"] = json!("1.5*s");
    let cases = [
        (write_json(&dir, "a.json", &bad_scalar), "position"),
        (write_json(&dir, "b.json", &bad_index), "1 <= i < j < k <= 5"),
        (write_json(&dir, "c.json", &unknown_param), "unknown identifier"),
    ];
    for (path, needle) in &cases {
        let out = so3five(&["analyze", path]);
        assert_eq!(out.code, 2, "{path}");
        assert!(out.stderr.contains(needle), "{}", out.stderr);
    }

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"scalar_mode\": \"exact\",\n  \"torsion\": [\n").unwrap();
    let out = so3five(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line"), "{}", out.stderr);

    let out = so3five(&["analyze", &data("so12.json"), "--mode", "float"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("mixed scalar modes"));

    let out = so3five(&["example", "so12", "--tolerance", "1e-6"]);
    assert_eq!(out.code, 2);
    assert_eq!(so3five(&["example", "so12", "--t", "0"]).code, 2);
    assert_eq!(so3five(&["analyze", "/nonexistent/so3five.json"]).code, 2);
    assert_eq!(so3five(&["example", "nowhere"]).code, 2);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = so3five(&["example", "so12", "--out", p.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(p).unwrap(), golden("so12_exact.json"));
}

#[test]
fn verify_identities_exact() {
    let out = so3five(&["verify-identities"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out
        .stdout
        .lines()
        .any(|l| l == "spectrum {7,-8,14,-3,4} multiplicities (3,7,1,5,9): PASS"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn verify_identities_float_reports_the_max_residual() {
    let out = so3five(&["verify-identities", "--mode", "float"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("max residual"));
}

#[test]
fn injected_sign_error_exits_with_one() {
    let out = so3five(&["verify-identities", "--mode", "float", "--inject-sign-error"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
    assert!(out.stderr.contains("first failure: twistor fibre"), "{}", out.stderr);
}
