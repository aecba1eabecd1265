use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hwcyclic")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

/// Every key of `want` is present in `got` with the same value.
fn includes(got: &Value, want: &Value) -> bool {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => w.iter().all(|(k, v)| g.get(k).is_some_and(|x| includes(x, v))),
        _ => got == want,
    }
}

#[test]
fn invariants_of_the_connected_example() {
    let v = ok_json(&["invariants", &data("connected_f2.json")]);
    let want = serde_json::json!({"h": 1, "a_number": 1, "i0": 2, "connected": true, "ordinary": false, "etale_height": 0, "connected_height": 3});
    assert!(includes(&v, &want), "{v}");
}

#[test]
fn strata_lists_the_special_polygon() {
    let v = ok_json(&["strata", "--c", "2", "--d", "2"]);
    let want = serde_json::json!({"beta": [[1, 3], [1, 3], [1, 3], [1, 1]], "dim": 2});
    let polys = v["polygons"].as_array().unwrap();
    assert!(polys.contains(&want));
    assert_eq!(polys[v["special"].as_u64().unwrap() as usize], want);
    let open = ok_json(&["strata", "--c", "2", "--d", "2", "--open-slopes"]);
    assert_eq!(open["polygons"].as_array().unwrap().len(), 1);
    assert!(open["special"].is_null());
}

#[test]
fn gl_generation_example() {
    let v = ok_json(&["gl", "--check", "lemma65", "--n", "2", "--p", "3"]);
    let want = serde_json::json!({"counting": true, "intersection_trivial": true, "generates": true, "order": 48});
    assert!(includes(&v, &want), "{v}");
    assert_eq!(v, ok_json(&["gl", "--check", "cartan-mirabolic", "--n", "2", "--p", "3"]));
}

#[test]
fn roots_and_certificates() {
    let v = ok_json(&["roots", &data("igusa_x4.json")]);
    assert_eq!(v["roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["generator"]["order"], 3);
    assert_eq!(v["cartan"]["in_nonsplit_cartan"], true);
    let c = ok_json(&["certificate", &data("witness_f4.json")]);
    assert_eq!(c["witness"]["value"], serde_json::json!([1, 1]));
    assert!(c["certificate"]["ram_divisors"].as_array().unwrap().contains(&Value::from(2)));
    let w = ok_json(&["certificate", &data("wild_f2.json")]);
    assert_eq!(w["certificate"]["tame"], false);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["invariants", r#"{"c":1,"d":1,"base":{"kind":"series","field":{"p":2,"deg":1}},"entries":[[{"ord":0,"terms":"x"}]]}"#]);
    assert_eq!(code, 1);
    assert!(err.contains("entries[0][0].terms"), "{err}");
    let (code, _, err) = run(&["invariants", r#"{"c":1,"d":1,"base":{"kind":"field","field":{"p":2,"deg":3}},"entries":[[7, 1]]}"#]);
    assert_eq!(code, 1, "{err}");
    let (code, _, err) = run(&["invariants", "/nonexistent/input.json"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, err) = run(&["roots", &data("wild_f2.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("wild"), "{err}");
    let (code, _, err) = run(&["invariants", r#"{"c":1,"d":1,"base":{"kind":"series","field":{"p":2,"deg":1},"prec":4},"entries":[[{"ord":0,"terms":[],"prec":3}]]}"#]);
    assert_eq!(code, 2);
    assert!(err.contains("Hasse invariant") && err.contains("precision"), "{err}");
    let (code, _, err) = run(&["gl", "--check", "lemma65", "--n", "3", "--p", "3", "--budget", "100"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");
    assert_eq!(run(&["strata", "--c", "2"]).0, 1);
    assert_eq!(run(&["nosuch"]).0, 1);
    assert_eq!(run(&["strata", "--c", "1", "--d", "1", "--prec", "0"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    for args in golden_jobs() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, a, _) = run(&args);
        let (c2, b, _) = run(&args);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert_eq!(a, b, "{args:?}");
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(hwcyclic::json::render(&v), a, "{args:?}");
    }
}

/// The normalized matrix echoed by `invariants` is itself valid input
/// and yields the same document.
#[test]
fn echoed_matrix_is_a_fixed_point() {
    let v = ok_json(&["invariants", &data("connected_f2.json")]);
    let again = ok_json(&["invariants", &v["matrix"].to_string()]);
    assert_eq!(v, again);
}

fn golden_jobs() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        s(&["invariants", &data("connected_f2.json")]),
        s(&["roots", &data("igusa_x4.json")]),
        s(&["certificate", &data("witness_f4.json")]),
        s(&["certificate", &data("wild_f2.json")]),
        s(&["strata", "--c", "2", "--d", "2"]),
        s(&["strata", "--c", "3", "--d", "2", "--open-slopes"]),
        s(&["gl", "--check", "cartan-mirabolic", "--n", "2", "--p", "3"]),
        s(&["gl", "--check", "graded-lift", &data("graded_gl2_mod8.json")]),
        s(&["gl", "--check", "order", "--n", "2", "--p", "2", "--m", "3"]),
        s(&["igusa", "--p", "2", "--levels", "3"]),
        s(&["cartan", "--n", "2", "--p", "3"]),
        s(&["versality", &data("universal_c2.json")]),
    ]
}

fn golden_path(args: &[String]) -> PathBuf {
    let name: Vec<String> = args
        .iter()
        .map(|a| Path::new(a).file_stem().map_or(a.clone(), |s| s.to_string_lossy().into_owned()))
        .map(|a| a.trim_start_matches('-').to_string())
        .collect();
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.json", name.join("_")))
}

/// Outputs match the checked-in files; `HWCYCLIC_BLESS=1` rewrites them.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("HWCYCLIC_BLESS").is_some();
    for args in golden_jobs() {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = run(&a);
        assert_eq!(code, 0, "{args:?}: {err}");
        let path = golden_path(&args);
        if bless {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(out, want, "{}", path.display());
    }
}
