use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn partineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partineq"))
        .args(args)
        .env_remove("PARTINEQ_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn with_cache(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partineq"))
        .args(args)
        .env("PARTINEQ_CACHE_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn count_examples() {
    let o = partineq(&["count", "--kind", "gap", "--d", "2", "--a", "1", "--n", "9"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "5"));
    let o = partineq(&[
        "count",
        "--kind",
        "residue",
        "--d",
        "2",
        "--b",
        "2",
        "--variant",
        "dash",
        "--n",
        "7",
    ]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1"));
    let o = partineq(&[
        "count", "--kind", "gap", "--d", "2", "--a", "1", "--n", "9", "--engine", "series",
    ]);
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn count_rejects_bad_input() {
    let o = partineq(&["count", "--kind", "gap", "--d", "0", "--a", "1", "--n", "5"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("d must be at least 1"));
    assert_eq!(
        code(&partineq(&[
            "count", "--kind", "gap", "--d", "2", "--n", "5"
        ])),
        2
    );
    assert_eq!(
        code(&partineq(&[
            "count", "--kind", "nope", "--d", "2", "--n", "5"
        ])),
        2
    );
}

#[test]
fn sweep_theorem_grid_is_nonnegative() {
    let o = partineq(&[
        "sweep",
        "--variant",
        "dash",
        "--a",
        "2",
        "--b",
        "2",
        "--d-from",
        "62",
        "--d-to",
        "64",
        "--n-max",
        "200",
    ]);
    assert_eq!(code(&o), 0);
    let line = stdout(&o);
    let min: i64 = line
        .trim()
        .strip_prefix("min=")
        .and_then(|s| s.split(' ').next())
        .and_then(|s| s.parse().ok())
        .expect("summary line");
    assert!(min >= 0, "{line}");
}

#[test]
fn sweep_staircase_cell_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let o = partineq(&[
        "sweep",
        "--variant",
        "plain",
        "--a",
        "4",
        "--b",
        "4",
        "--d-from",
        "2",
        "--d-to",
        "2",
        "--n-max",
        "20",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("d,n,q_count,Q_count,delta\n"));
    assert_eq!(csv.lines().count(), 21);
    let row = csv.lines().find(|l| l.starts_with("2,9,")).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2], "1");
    assert!(fields[4].starts_with('-'));
}

#[test]
fn sweep_errors() {
    let o = partineq(&[
        "sweep", "--a", "1", "--d-from", "3", "--d-to", "2", "--n-max", "5",
    ]);
    assert_eq!(code(&o), 2);
    let o = partineq(&[
        "sweep",
        "--a",
        "1",
        "--d-from",
        "1",
        "--d-to",
        "2",
        "--n-max",
        "5",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(code(&o), 4);
}

#[test]
fn sweep_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = partineq(&[
            "sweep",
            "--variant",
            "dashdash",
            "--a",
            "3",
            "--d-from",
            "1",
            "--d-to",
            "8",
            "--n-max",
            "120",
            "--format",
            "json",
            "--jobs",
            "3",
            "--cross-check-rate",
            "0.2",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        fs::read(out).unwrap()
    };
    let first = run("a.json");
    assert_eq!(first, run("b.json"));
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["summary"]["cells"], 8 * 120);
    assert!(v["cells"][0]["q_count"].is_string());
}

#[test]
fn cache_is_reused_and_sound() {
    let cache = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let run = |extra: &[&str], name: &str| {
        let path = out.path().join(name);
        let mut args = vec![
            "sweep",
            "--variant",
            "dash",
            "--a",
            "2",
            "--d-from",
            "5",
            "--d-to",
            "9",
            "--n-max",
            "150",
            "--out",
        ];
        let p = path.to_str().unwrap().to_string();
        args.push(&p);
        args.extend_from_slice(extra);
        let o = with_cache(cache.path(), &args);
        (o, fs::read(&path).unwrap_or_default())
    };
    let (cold, cold_csv) = run(&[], "cold.csv");
    assert_eq!(code(&cold), 0);
    assert!(String::from_utf8_lossy(&cold.stderr).contains("0 hits, 10 misses"));
    assert_eq!(fs::read_dir(cache.path()).unwrap().count(), 10);

    let (warm, warm_csv) = run(&["--verify-cache"], "warm.csv");
    assert_eq!(code(&warm), 0);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("10 hits, 0 misses"));
    assert_eq!(cold_csv, warm_csv);

    let (_, plain_csv) = run(&["--no-cache"], "plain.csv");
    assert_eq!(cold_csv, plain_csv);

    // A truncated entry is evicted and recomputed.
    let victim = fs::read_dir(cache.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let text = fs::read_to_string(&victim).unwrap();
    fs::write(&victim, &text[..text.len() / 2]).unwrap();
    let (again, again_csv) = run(&[], "again.csv");
    assert_eq!(code(&again), 0);
    assert!(String::from_utf8_lossy(&again.stderr).contains("1 evicted"));
    assert_eq!(cold_csv, again_csv);
}

#[test]
fn tampered_cache_fails_verification() {
    let cache = tempfile::tempdir().unwrap();
    let args = [
        "sweep", "--a", "1", "--d-from", "3", "--d-to", "3", "--n-max", "40",
    ];
    assert_eq!(code(&with_cache(cache.path(), &args)), 0);
    for entry in fs::read_dir(cache.path()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let (header, body) = text.split_once('\n').unwrap();
        let mut series: serde_json::Value = serde_json::from_str(body).unwrap();
        series["coefficients"][30] = "123456789".into();
        fs::write(&path, format!("{header}\n{series}\n")).unwrap();
    }
    let mut verify = args.to_vec();
    verify.push("--verify-cache");
    assert_eq!(code(&with_cache(cache.path(), &verify)), 3);
}

#[test]
fn verify_examples() {
    let o = partineq(&["verify", "--check", "rr2", "--n-max", "300"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS rr2"));
    let o = partineq(&[
        "verify",
        "--check",
        "de-duality",
        "--d",
        "15",
        "--k",
        "0",
        "--l",
        "4",
        "--n-max",
        "120",
    ]);
    assert_eq!(code(&o), 0);
    let o = partineq(&[
        "verify",
        "--check",
        "involution",
        "--a",
        "3",
        "--d",
        "16",
        "--n-max",
        "120",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_exit_codes() {
    let o = partineq(&["verify", "--check", "kp-theorem", "--d", "20"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("d >= 62"));
    assert_eq!(code(&partineq(&["verify", "--check", "no-such-check"])), 2);
    // The literal branch tables break at t = 2 for a = 1, d = 24.
    let o = partineq(&[
        "verify",
        "--check",
        "involution",
        "--a",
        "1",
        "--d",
        "24",
        "--n-max",
        "112",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL involution"));
    let o = partineq(&[
        "verify",
        "--check",
        "involution",
        "--a",
        "1",
        "--d",
        "24",
        "--n-max",
        "112",
        "--reading",
        "consistent",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = partineq(&[
        "verify",
        "--check",
        "alder",
        "--d-to",
        "4",
        "--n-max",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checked"], 200);
    let list = stdout(&partineq(&["verify", "--list"]));
    assert!(list.lines().any(|l| l == "psi-map"));
}

#[test]
fn asymptotic_records() {
    let o = partineq(&["asymptotic", "--d", "1", "--a", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alpha"], "0.5");
    assert!(v["n_d"].is_null());
    let o = partineq(&["asymptotic", "--d", "2", "--a", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["alpha"].as_str().unwrap().starts_with("0.6180339887"));
    let o = partineq(&["asymptotic", "--d", "10", "--a", "2", "--find-crossover"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["n_d"].as_u64().is_some());
    assert_eq!(
        code(&partineq(&[
            "asymptotic",
            "--d",
            "4",
            "--a",
            "5",
            "--find-crossover"
        ])),
        2
    );
}

#[test]
fn trace_emits_json_lines() {
    let o = partineq(&[
        "trace", "--map", "qstar", "--d", "5", "--a", "3", "--n", "40",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(!text.is_empty());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["branch"].is_string());
    }
    let o = partineq(&["trace", "--map", "parity", "--d", "7", "--n", "9"]);
    assert_eq!(code(&o), 2);
}
