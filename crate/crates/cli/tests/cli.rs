use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn sdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdr")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(bytes)))
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = sdr(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn oracle_on_tight_family_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(dir.path(), "hv.json", &["hv_tight", "n=3"]);
    let o = sdr(&["solve", f.to_str().unwrap(), "--algorithm", "oracle"]);
    assert_eq!(code(&o), 2);
    let v = json(&o.stdout);
    assert_eq!(v["size"], 2);
    assert_eq!(v["verified"], true);
}

#[test]
fn two_sweep_reaches_n() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2", "3"] {
        let f = generate(dir.path(), "ts.json", &["random-two-sweep", "--param", "n=3", "--seed", seed]);
        let out = dir.path().join("out.json");
        let o = sdr(&[
            "solve",
            f.to_str().unwrap(),
            "-a",
            "two-sweep",
            "--verify",
            "--trace",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v = json(&std::fs::read(&out).unwrap());
        assert_eq!(v["size"], 3);
        assert_eq!(v["verified"], true);
        assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
        let o = sdr(&["solve", f.to_str().unwrap(), "-a", "oracle"]);
        assert_eq!(code(&o), 0);
        assert!(json(&o.stdout)["size"].as_u64().unwrap() >= 3);
    }
}

#[test]
fn errors_are_json_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(dir.path(), "hv.json", &["hv_tight", "n=3"]);
    let o = sdr(&["solve", f.to_str().unwrap(), "-a", "bogus"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o.stderr)["error"], "invalid_parameters");

    // hv_tight has 2n - 2 blocks, one short of what two-sweep needs.
    let o = sdr(&["solve", f.to_str().unwrap(), "-a", "two-sweep"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o.stderr)["error"], "precondition");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"version":1,"n":2,"context":{"kind":"graph"},"members":[{"id":"v0","kind":"vertex"}],"blocks":[{"label":"A","member_ids":["v0"]}]}"#).unwrap();
    let o = sdr(&["solve", bad.to_str().unwrap(), "-a", "oracle"]);
    assert_eq!(code(&o), 1);
    let e = json(&o.stderr);
    assert_eq!(e["error"], "invalid_instance");
    assert!(e["message"].as_str().unwrap().contains('A'));

    let o = sdr(&["gen", "no_such_family"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn bounds() {
    let v = json(&sdr(&["bound", "M", "--n", "2", "--k", "2", "--t", "1"]).stdout);
    assert_eq!(v["integer_upper_bound"], "12");
    assert_eq!(v["exact_exponent"], "1");
    let v = json(&sdr(&["bound", "N", "--n", "5", "--k", "1"]).stdout);
    assert_eq!(v["integer_upper_bound"], "5");
    let v = json(&sdr(&["bound", "few-lines", "--n", "5", "--m", "2"]).stdout);
    assert_eq!(v["integer_upper_bound"], "7");
    let v = json(&sdr(&["bound", "intersections", "--composition", "1,3"]).stdout);
    assert_eq!(v["exact"], "9");
    assert_eq!(code(&sdr(&["bound", "few-lines", "--n", "2", "--m", "2"])), 1);
}

#[test]
fn render_and_graph() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(dir.path(), "cp.json", &["cycle_power", "n=3", "q=2"]);
    let svg = dir.path().join("out.svg");
    assert_eq!(code(&sdr(&["render", f.to_str().unwrap(), "--svg", svg.to_str().unwrap()])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"member\"").count(), 6);
    let dot = dir.path().join("out.dot");
    assert_eq!(code(&sdr(&["graph", f.to_str().unwrap(), "--dot", dot.to_str().unwrap()])), 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    // C_6 itself: six edges.
    assert_eq!(text.matches(" -- ").count(), 6);
}

#[test]
fn experiment_writes_stable_results() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"name":"ql","algorithm":"oracle","family":"quadratic_lower","grid":{"n":[8]},"params":{"m":4}}"#,
    )
    .unwrap();
    let run = |out: &Path| {
        let o = sdr(&[
            "experiment",
            "--spec",
            spec.to_str().unwrap(),
            "--trials",
            "2",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o.stdout);
        assert_eq!(v["rows"], 2);
        let csv = std::fs::read_to_string(v["csv"].as_str().unwrap()).unwrap();
        let manifest = json(&std::fs::read(v["manifest"].as_str().unwrap()).unwrap());
        assert_eq!(manifest["spec"]["name"], "ql");
        assert!(Path::new(v["timings"].as_str().unwrap()).exists());
        csv
    };
    let a = run(&dir.path().join("a"));
    let b = run(&dir.path().join("b"));
    assert_eq!(a, b);
    let rows: Vec<&str> = a.lines().collect();
    assert_eq!(rows.len(), 3);
    let header: Vec<&str> = rows[0].split(',').collect();
    let col = header.iter().position(|h| *h == "oracle_size").unwrap();
    for row in &rows[1..] {
        assert_eq!(row.split(',').nth(col), Some("7"));
    }
}
