use std::process::Command;

fn aflaz(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_aflaz"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn bounds_csv_has_weighted_row_and_benchmark() {
    let (ok, out, _) = aflaz(&[
        "bounds", "--N", "64", "--M", "2", "--zx", "16", "--zy", "4", "--D", "auto",
    ]);
    assert!(ok);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "bound,N,M,Zx,Zy,D,q,value,applicable");
    assert!(lines
        .iter()
        .any(|l| l.starts_with("weighted_laz,64,2,16,4,")));
    assert!(lines.iter().any(|l| l.starts_with("benchmark,")));
}

#[test]
fn bounds_json_parses() {
    let (ok, out, _) = aflaz(&[
        "bounds", "--N", "16", "--M", "1", "--zx", "16", "--zy", "2", "--family", "c", "--json",
    ]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["name"], "WeightedFullDelay");
}

#[test]
fn bad_parameters_fail_with_message() {
    let (ok, _, err) = aflaz(&["bounds", "--N", "4", "--M", "1", "--zx", "9", "--zy", "2"]);
    assert!(!ok);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn chu_round_trips_through_af() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (ok, out, _) = aflaz(&["chu", "--N", "101", "--roots", "3,2", "--out", d]);
    assert!(ok);
    let meta: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(meta["Zy"], 2);
    let a3 = dir.path().join("chu_N101_a3.csv");
    let surf = dir.path().join("s.csv");
    let (ok, out, _) = aflaz(&[
        "af",
        "--in",
        a3.to_str().unwrap(),
        "--laz",
        "5,3",
        "--out",
        surf.to_str().unwrap(),
    ]);
    assert!(ok);
    let text = std::fs::read_to_string(&surf).unwrap();
    assert_eq!(text.lines().next(), Some("tau,nu,abs_sq"));
    assert_eq!(text.lines().count(), 1 + 9 * 5);
    let theta: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(theta["theta_max_sq"].as_f64().unwrap() < 101.0 * 101.0);
}

#[test]
fn chu_sweep_csv() {
    let (ok, out, _) = aflaz(&["chu", "--roots", "2", "--sweep", "1000,2000"]);
    assert!(ok);
    assert_eq!(out.lines().next(), Some("N,a,ratio,target"));
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn verify_emits_passing_json_lines() {
    let (ok, out, _) = aflaz(&["verify", "--seed", "5"]);
    assert!(ok);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true, "{line}");
    }
}

#[test]
fn repro_custom_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"points": [{"n": 32, "m": 2, "zx": 8, "zy": 4}], "d_policy": "optimal"}"#,
    )
    .unwrap();
    let (ok, out, _) = aflaz(&[
        "repro",
        "custom",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(ok, "{out}");
    let csv = std::fs::read_to_string(dir.path().join("custom.csv")).unwrap();
    assert!(csv.lines().count() >= 3);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"nope": 1}"#).unwrap();
    let (ok, _, err) = aflaz(&["repro", "table1", "--config", cfg.to_str().unwrap()]);
    assert!(!ok);
    assert!(err.contains("nope"), "{err}");
}
