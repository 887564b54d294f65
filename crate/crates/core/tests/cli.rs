use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn cdgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdgl")).args(args).env_remove("CDGL_MAX_TRUNC").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn last_json(out: &Output) -> serde_json::Value {
    let text = stdout(out);
    serde_json::from_str(text.lines().last().expect("some output")).unwrap()
}

#[test]
fn bch_golden() {
    let out = cdgl(&["bch", "x", "y", "--trunc", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x + y + 1/2*[x,y]\n");
    assert_eq!(stdout(&cdgl(&["bch", "x", "0"])), "x\n");
    // 1/12 [x,[x,y]] − 1/12 [y,[x,y]]
    assert_eq!(stdout(&cdgl(&["bch", "x", "y", "--trunc", "3"])), "x + y + 1/2*[x,y] + 1/12*[x,[x,y]] + 1/12*[[x,y],y]\n");
}

#[test]
fn gauge_golden() {
    assert_eq!(stdout(&cdgl(&["gauge", "0", "a"])), "a\n");
    // the interval generator carries b to a
    assert_eq!(stdout(&cdgl(&["gauge", "x", "b", "--trunc", "6"])), "a\n");
    let out = cdgl(&["gauge", "x", "q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bernoulli_golden() {
    assert_eq!(stdout(&cdgl(&["bernoulli", "1"])), "-1/2\n");
    assert_eq!(stdout(&cdgl(&["bernoulli", "12"])), "-691/2730\n");
    assert_eq!(stdout(&cdgl(&["bernoulli", "3"])), "0\n");
}

#[test]
fn pi0_summaries() {
    for (file, summary) in [
        ("two_segments.json", "components: 2, MC classes: 3, PASS"),
        ("point.json", "components: 1, MC classes: 2, PASS"),
        ("empty.json", "components: 0, MC classes: 1, PASS"),
        ("circle1.json", "components: 1, MC classes: 2, PASS"),
    ] {
        let out = cdgl(&["pi0", &data(file)]);
        assert!(out.status.success(), "{file}");
        assert_eq!(last_json(&out)["summary"], summary, "{file}");
    }
}

#[test]
fn model_outputs() {
    let out = cdgl(&["model", &data("path3.json")]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["generators"].as_array().unwrap().len(), 5);
    assert_eq!(doc["d_squared"]["clean"], true);

    let out = cdgl(&["model", &data("triangle.json"), "--trunc", "5"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["generators"].as_array().unwrap().len(), 7);
    assert_eq!(doc["d_squared"]["clean"], true);

    let bad = cdgl(&["model", &data("bad_facet.json")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn truncation_is_capped() {
    assert_eq!(cdgl(&["bch", "x", "y", "--trunc", "9"]).status.code(), Some(2));
    assert_eq!(cdgl(&["bch", "x", "y", "--trunc", "0"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_cdgl"))
        .args(["bch", "x", "y", "--trunc", "4"])
        .env("CDGL_MAX_TRUNC", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn check_builtins_and_corruption() {
    let out = cdgl(&["check", "ls-interval", "--trunc", "5"]);
    assert!(out.status.success());
    assert_eq!(last_json(&out)["pass"], true);

    let model = cdgl(&["model", &data("path3.json"), "--trunc", "4"]);
    let mut doc: serde_json::Value = serde_json::from_slice(&model.stdout).unwrap();
    let dir = std::env::temp_dir().join(format!("cdgl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, serde_json::to_string(&doc).unwrap()).unwrap();
    assert!(cdgl(&["check", good.to_str().unwrap()]).status.success());

    // drop the quadratic term of one vertex: d∘d no longer vanishes
    doc["differential"]["s1"] = serde_json::Value::String("0".into());
    let bad = dir.join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = cdgl(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(last_json(&out)["pass"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_with_fuzz() {
    let out = cdgl(&["classify", &data("two_segments.json"), "s3", "--fuzz", "3", "--seed", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = last_json(&out);
    assert_eq!(summary["stable"], true);
    assert_eq!(summary["cases"], 4);
    let again = cdgl(&["classify", &data("two_segments.json"), "s3", "--fuzz", "3", "--seed", "5"]);
    assert_eq!(out.stdout, again.stdout);

    let not_mc = cdgl(&["classify", &data("point.json"), "2*s0"]);
    assert_eq!(not_mc.status.code(), Some(2));
}
