use std::process::{Command, Output};

fn a4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = a4(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn count_values() {
    assert_eq!(stdout(&a4(&["count", "ssl", "36"])).trim(), "66");
    assert_eq!(stdout(&a4(&["count", "ssl", "2"])).trim(), "0");
    assert_eq!(stdout(&a4(&["count", "soc", "11"])).trim(), "144 (rotations: 17280)");
    let v = json(&["count", "soc", "11"]);
    assert_eq!((v["value"].as_u64(), v["rotations"].as_u64()), (Some(144), Some(17280)));
    assert_eq!(a4(&["count", "ssl", "0"]).status.code(), Some(2));
}

#[test]
fn series_tables() {
    let v = json(&["series", "soc", "--max", "11"]);
    let coeffs: Vec<u64> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(coeffs, vec![1, 5, 10, 20, 30, 50, 50, 80, 90, 150, 144]);
    assert_eq!((v["name"].as_str(), v["N"].as_u64()), (Some("f_SOC"), Some(11)));
    let v = json(&["series", "ssl", "--max", "36"]);
    let c = v["coeffs"].as_array().unwrap();
    for (m, want) in [(4, 6), (5, 6), (9, 11), (11, 24), (36, 66)] {
        assert_eq!(c[m - 1].as_u64(), Some(want));
    }
    let text = stdout(&a4(&["series", "soc", "--max", "3"]));
    assert_eq!(text, "1   1\n2   5\n3  10\n");
    assert_eq!(a4(&["series", "ssl", "--max", "0"]).status.code(), Some(2));
}

#[test]
fn csl_command() {
    let v = json(&["csl", "1,0,0,0,0,0,0,0"]);
    assert_eq!(v["sigma"], 1);
    assert_eq!(v["hnf"], serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
    let v = json(&["csl", "1,1,0,0,0,0,0,0"]);
    assert_eq!(v["sigma"], 2);
    assert_eq!(v["q"], serde_json::json!([1, 1, 0, 0, 0, 0, 0, 0]));
    assert_eq!(v["rotation"].as_array().unwrap().len(), 4);
    // (τ, 1, 0, 0) has nr = τ + 2 of norm 5
    let o = a4(&["csl", "0,1,0,0,1,0,0,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("N(nr q) = 5"));
    let o = a4(&["csl", "2,0,0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not primitive"));
    assert_eq!(a4(&["csl", "1,2,3"]).status.code(), Some(2));
    assert_eq!(a4(&["csl", "-1,0,0,0,0,0,0,0"]).status.code(), Some(0));
}

#[test]
fn ssl_and_enumeration() {
    let v = json(&["ssl", "1,1,0,0,0,0,0,0"]);
    assert_eq!((v["index"].as_u64(), v["m"].as_u64()), (Some(16), Some(4)));
    let v = json(&["enumerate-icosians", "--trace-norm", "2"]);
    assert_eq!(v["count"], 120);
    assert_eq!(v["icosians"].as_array().unwrap().len(), 120);
}

#[test]
fn verify_smoke_is_deterministic() {
    let a = a4(&["verify", "--profile", "smoke", "--format", "json", "--threads", "1"]);
    let b = a4(&["verify", "--profile", "smoke", "--format", "json", "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["all_match"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    let text = stdout(&a4(&["verify", "--profile", "smoke"]));
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() == 4, "{text}");
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("a4-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.json");
    let o = a4(&["count", "ssl", "36", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"], 66);
    std::fs::remove_dir_all(&dir).unwrap();
}
