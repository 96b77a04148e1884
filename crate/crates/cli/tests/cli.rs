use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use torsionlab_cli::commands::{example_document, EXAMPLES};
use torsionlab_cli::{run, ComplexDocument, EXIT_INVARIANT, EXIT_MALFORMED, EXIT_UNSUPPORTED};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("torsionlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn example_file(name: &str) -> PathBuf {
    scratch(&format!("{name}.json"), &example_document(name).unwrap().to_json())
}

fn ok(args: &[&str]) -> String {
    let mut full = vec!["torsionlab"];
    full.extend_from_slice(args);
    match run(full) {
        Ok(out) => out,
        Err(f) => panic!("{args:?} failed with {}: {}", f.code, f.message),
    }
}

fn ok_json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["torsionlab"];
    full.extend_from_slice(args);
    run(full).err().map(|f| f.code).unwrap_or(0)
}

fn ranks(v: &Value) -> Vec<u64> {
    v["ranks"].as_array().unwrap().iter().map(|r| r.as_u64().unwrap()).collect()
}

#[test]
fn examples_round_trip_byte_identically() {
    for name in EXAMPLES {
        let text = ok(&["example", name]);
        let doc = ComplexDocument::parse(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{name}");
        let path = scratch(&format!("rt-{name}.json"), &text);
        let report = ok_json(&["verify", path.to_str().unwrap()]);
        assert_eq!(report["canonical"], true);
    }
    assert_eq!(code(&["example", "klein-bottle"]), EXIT_MALFORMED);
}

#[test]
fn intersection_ranks_of_cones_and_suspensions() {
    let t2 = example_file("cone-over-T2");
    let v = ok_json(&["homology", t2.to_str().unwrap(), "--intersection", "--perversity", "m"]);
    assert_eq!(ranks(&v), [1, 2, 0, 0]);

    let s = example_file("suspension-T2");
    let m = ok_json(&["homology", s.to_str().unwrap(), "--intersection", "--perversity", "m"]);
    let mc = ok_json(&["homology", s.to_str().unwrap(), "--intersection", "--perversity", "mc"]);
    assert_eq!(ranks(&m), [1, 2, 0, 1]);
    assert_eq!(ranks(&mc), [1, 0, 2, 1]);

    let s1 = example_file("suspension-S1");
    let m = ok_json(&["homology", s1.to_str().unwrap(), "--intersection", "--perversity", "m"]);
    let mc = ok_json(&["homology", s1.to_str().unwrap(), "--intersection", "--perversity", "mc"]);
    assert_eq!(ranks(&m), ranks(&mc));
    let custom = ok_json(&["homology", s1.to_str().unwrap(), "--intersection", "--perversity", "0"]);
    assert_eq!(ranks(&custom), ranks(&m));
}

#[test]
fn ordinary_homology_of_disc() {
    let disc = example_file("disc");
    assert_eq!(ranks(&ok_json(&["homology", disc.to_str().unwrap()])), [1, 0, 0]);
    assert_eq!(ranks(&ok_json(&["homology", disc.to_str().unwrap(), "--relative"])), [0, 0, 1]);
}

#[test]
fn closed_form_at_scale_two_vanishes() {
    let s1 = example_file("cone-over-S1");
    let v = ok_json(&[
        "torsion",
        s1.to_str().unwrap(),
        "--scale",
        "2",
        "--closed-form",
        "--section-log-torsion",
        "0",
    ]);
    for flavor in ["absolute", "relative"] {
        let e = &v["closed_form"][flavor];
        assert_eq!(e["rational"], "0");
        assert_eq!(e["coeff_log_2"], "0");
        assert_eq!(e["float"], 0.0);
    }
}

#[test]
fn both_paths_agree_on_the_circle_cone() {
    let s1 = example_file("cone-over-S1");
    for l in ["1", "2", "5"] {
        for p in ["m", "mc"] {
            let v = ok_json(&[
                "torsion",
                s1.to_str().unwrap(),
                "--scale",
                l,
                "--perversity",
                p,
                "--closed-form",
                "--chain-level",
                "--duality",
            ]);
            assert!(v["residual"].as_f64().unwrap() < 1e-12);
            assert_eq!(v["residual_exact_zero"], true);
            assert_eq!(v["duality"]["sign"], -1);
            let a = v["chain_level"]["absolute"]["float"].as_f64().unwrap();
            let r = v["chain_level"]["relative"]["float"].as_f64().unwrap();
            assert_eq!(a + r, 0.0);
        }
    }
}

#[test]
fn even_section_duality_and_unsupported_chain_level() {
    let t2 = example_file("cone-over-T2");
    let v = ok_json(&["torsion", t2.to_str().unwrap(), "--duality"]);
    assert_eq!(v["duality"]["sign"], 1);
    assert_eq!(v["duality"]["holds"], true);
    assert_eq!(code(&["torsion", t2.to_str().unwrap(), "--chain-level"]), EXIT_UNSUPPORTED);
    let susp = example_file("suspension-S1");
    assert_eq!(code(&["torsion", susp.to_str().unwrap()]), EXIT_UNSUPPORTED);
}

#[test]
fn flavor_filter() {
    let s1 = example_file("cone-over-S1");
    let v = ok_json(&["torsion", s1.to_str().unwrap(), "--flavor", "rel"]);
    assert!(v["closed_form"].get("absolute").is_none());
    assert_eq!(v["closed_form"]["relative"]["symbols"]["log_tau_section"], "-1/2");
}

#[test]
fn half_order_zeros_as_csv() {
    let out = ok(&["zeta", "--nu", "0.5", "--k-max", "5"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("index,value,residual_bound"));
    for (k, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0].parse::<usize>().unwrap(), k + 1);
        let x: f64 = cols[1].parse().unwrap();
        assert!((x - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        assert!(cols[2].parse::<f64>().unwrap() < 1e-12);
    }
}

#[test]
fn zq_and_zeta_values() {
    let v = ok_json(&["zeta", "--zq", "--p", "3", "--q", "1"]);
    let row = &v["zq"][0];
    assert_eq!(row["value"]["rational"], "-1/2");
    assert_eq!(row["derivative"]["coeff_log_2"], "2");
    assert!((row["derivative_extracted"].as_f64().unwrap() - 4f64.ln()).abs() < 1e-10);

    let all = ok_json(&["zeta", "--zq", "--p", "4"]);
    assert_eq!(all["zq"].as_array().unwrap().len(), 4);

    let z = ok_json(&["zeta", "--nu", "1", "--values"]);
    assert_eq!(z["zeta"]["value"]["rational"], "-3/4");
    assert!((z["zeta"]["value_extracted"].as_f64().unwrap() + 0.75).abs() < 1e-10);
}

#[test]
fn product_check() {
    let v = ok_json(&["zeta", "--product-check", "--nu", "2", "--c", "1", "--z", "1"]);
    assert!(v["product_check"]["residual"].as_f64().unwrap() < 1e-6);
    let v = ok_json(&["zeta", "--product-check", "--nu", "2", "--c", "-1", "--z", "0.5", "--zeros", "100"]);
    assert!(v["product_check"]["residual"].as_f64().unwrap() < 1e-3);
}

#[test]
fn numeric_flags_are_named_in_errors() {
    let mut args = vec!["torsionlab", "zeta", "--nu", "-1", "--values"];
    let f = run(args.clone()).unwrap_err();
    assert_eq!(f.code, EXIT_MALFORMED);
    assert!(f.message.contains("--nu"));
    args = vec!["torsionlab", "zeta", "--nu", "1", "--mode", "hatted", "--values"];
    assert!(run(args).unwrap_err().message.contains("--c"));
    let f = run(["torsionlab", "zeta", "--nu", "1", "--c", "-3", "--values"]).unwrap_err();
    assert_eq!(f.code, EXIT_UNSUPPORTED);
    assert_eq!(code(&["zeta", "--nu", "1"]), EXIT_MALFORMED);
    assert_eq!(code(&["zeta", "--zq", "--p", "2", "--q", "2"]), EXIT_MALFORMED);
    assert_eq!(code(&["zeta", "--nu", "1", "--no-such-flag"]), EXIT_MALFORMED);
}

#[test]
fn malformed_documents_exit_two() {
    let cases = [
        ("trunc.json", "{\"format_version\": 1,"),
        ("unknown.json", r#"{"format_version":1,"vertices":["a","b"],"simplices":[["a","q"]]}"#),
        ("extra.json", r#"{"format_version":1,"vertices":["a"],"simplices":[["a"]],"colour":"red"}"#),
        ("repeat.json", r#"{"format_version":1,"vertices":["a","a"],"simplices":[["a"]]}"#),
    ];
    for (name, text) in cases {
        let path = scratch(name, text);
        assert_eq!(code(&["homology", path.to_str().unwrap()]), EXIT_MALFORMED, "{name}");
    }
    assert_eq!(code(&["homology", "/nonexistent/file.json"]), EXIT_MALFORMED);
    let t2 = example_file("cone-over-T2");
    assert_eq!(code(&["homology", t2.to_str().unwrap(), "--intersection", "--perversity", "0,2"]), EXIT_MALFORMED);
    assert_eq!(code(&["homology", t2.to_str().unwrap(), "--intersection", "--perversity", "0"]), EXIT_MALFORMED);
}

#[test]
fn invariant_violations_exit_three() {
    let mut doc = example_document("disc").unwrap();
    doc.boundary = Some(vec![vec![doc.vertices[0].clone(), doc.vertices[1].clone()]]);
    let path = scratch("bad-boundary.json", &doc.to_json());
    let f = run(["torsionlab", "homology", path.to_str().unwrap()]).unwrap_err();
    assert_eq!(f.code, EXIT_INVARIANT);
    assert!(f.message.contains("boundary"));

    let mut cone = example_document("cone-over-S1").unwrap();
    cone.betti = Some(vec![1, 3]);
    let path = scratch("bad-betti.json", &cone.to_json());
    let f = run(["torsionlab", "torsion", path.to_str().unwrap()]).unwrap_err();
    assert_eq!(f.code, EXIT_INVARIANT);
    assert!(f.message.contains("duality"));
}

#[test]
fn document_scale_is_used() {
    let mut cone = example_document("cone-over-S1").unwrap();
    cone.scale = Some("2".into());
    let path = scratch("scaled.json", &cone.to_json());
    let v = ok_json(&["torsion", path.to_str().unwrap(), "--section-log-torsion", "0"]);
    assert_eq!(v["scale"], "2");
    assert_eq!(v["closed_form"]["absolute"]["float"], 0.0);
    assert_eq!(code(&["torsion", path.to_str().unwrap(), "--scale", "x"]), EXIT_MALFORMED);
}

#[test]
fn circle_spectrum_and_scaling() {
    let one = ok_json(&["spectrum", "--circle", "--degree", "1", "--n-max", "2", "--k-max", "3"]);
    let two = ok_json(&["spectrum", "--circle", "--degree", "1", "--n-max", "2", "--k-max", "3", "--scale", "2"]);
    let a = one["eigenvalues"].as_array().unwrap();
    let b = two["eigenvalues"].as_array().unwrap();
    assert!(!a.is_empty());
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert_eq!(x["value"].as_f64().unwrap() / 4.0, y["value"].as_f64().unwrap());
    }
    let t1 = ok_json(&["spectrum", "--circle", "--torsion-zeta", "1.5", "--n-max", "2", "--k-max", "20"]);
    let t2 = ok_json(&["spectrum", "--circle", "--torsion-zeta", "1.5", "--n-max", "2", "--k-max", "20", "--scale", "2"]);
    let (r1, r2) = (t1["value"][0].as_f64().unwrap(), t2["value"][0].as_f64().unwrap());
    assert!((r2 - 8.0 * r1).abs() <= 1e-14 * r2.abs());
    assert_eq!(code(&["spectrum", "--circle", "--torsion-zeta", "0.5"]), EXIT_MALFORMED);
    assert_eq!(code(&["spectrum"]), EXIT_MALFORMED);
}

#[test]
fn spectrum_from_file() {
    let input = r#"{"m":1,"l":1.0,"coexact":[[{"lambda":1.0,"coexact":0}],[{"lambda":1.0,"coexact":1}]],"harmonic":[1,1]}"#;
    let path = scratch("section.json", input);
    let v = ok_json(&["spectrum", path.to_str().unwrap(), "--bc", "rel", "--degree", "2"]);
    assert!(v["eigenvalues"].as_array().unwrap().iter().all(|e| e["value"].as_f64().unwrap() > 0.0));
    let bad = scratch("bad-section.json", r#"{"m":1}"#);
    assert_eq!(code(&["spectrum", bad.to_str().unwrap()]), EXIT_MALFORMED);
}

#[test]
fn builtin_checks_pass() {
    let v = ok_json(&["verify"]);
    assert!(v.as_array().unwrap().iter().all(|row| row["pass"] == true));
}

#[test]
fn commands_are_deterministic() {
    let t2 = example_file("cone-over-T2");
    let args = ["torsion", t2.to_str().unwrap(), "--duality"];
    assert_eq!(ok(&args), ok(&args));
    assert_eq!(ok(&["zeta", "--nu", "2", "--k-max", "8"]), ok(&["zeta", "--nu", "2", "--k-max", "8"]));
}

#[test]
fn binary_exit_codes_and_precision() {
    let exe = env!("CARGO_BIN_EXE_torsionlab");
    let out = Command::new(exe).args(["zeta", "--nu", "0.5", "--values"]).env("TORSIONLAB_PRECISION", "40").output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["zeta"]["derivative_extracted"].as_f64().unwrap() + 2f64.ln()).abs() < 1e-10);

    let bad = scratch("bin-bad.json", "[]");
    let out = Command::new(exe).args(["homology", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_MALFORMED));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    let t2 = scratch("bin-t2.json", &example_document("cone-over-T2").unwrap().to_json());
    let out = Command::new(exe).args(["torsion", t2.to_str().unwrap(), "--chain-level"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_UNSUPPORTED));
    let out = Command::new(exe).arg("--help").output().unwrap();
    assert!(out.status.success());
}
