use std::path::PathBuf;
use std::process::Command;

use warehouse_advisor::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn base_args() -> Vec<String> {
    vec![
        "advisor".into(),
        "--schema".into(),
        fixture("sales_catalog.toml"),
        "--workload".into(),
        fixture("sales_workload.sql"),
        "--candidates".into(),
        fixture("sales_candidates.toml"),
    ]
}

fn invoke(extra: &[&str]) -> (i32, String, String) {
    let mut args = base_args();
    args.extend(extra.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn zero_budget_report_is_empty_config() {
    let (code, out, _) = invoke(&["--budget", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("configuration (0 of 0 bytes)"));
    assert!(out.contains("(empty)"));
    assert!(out.contains("total      384325"));
    golden("budget_0.txt", &out);
}

#[test]
fn full_budget_simultaneous_not_worse_than_isolated() {
    let total = |mode: &str| {
        let (code, out, _) = invoke(&["--budget", "100%", "--mode", mode, "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        v["total_after"].as_u64().unwrap()
    };
    let sim = total("simultaneous");
    assert!(sim <= total("view-only"));
    assert!(sim <= total("index-only"));
    assert!(sim <= total("none"));
}

#[test]
fn reports_are_deterministic() {
    for format in ["text", "json"] {
        let a = invoke(&[
            "--budget",
            "300000000",
            "--format",
            format,
            "--refresh-ratio",
            "0.2",
        ]);
        let b = invoke(&[
            "--budget",
            "300000000",
            "--format",
            format,
            "--refresh-ratio",
            "0.2",
        ]);
        assert_eq!(a, b);
    }
}

#[test]
fn sweep_csv_golden() {
    let (code, out, err) = invoke(&["--sweep", "0.1,0.5,1"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("budget_fraction,strategy,total_cost_blocks,used_bytes,objects\n"));
    assert_eq!(out.lines().count(), 1 + 3 * 4);
    golden("sweep.csv", &out);
}

#[test]
fn out_file_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_string_lossy().into_owned();
    let (code, out, err) = invoke(&[
        "--budget", "50%", "--format", "json", "--out", &p, "--trace",
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(err.contains("step 1: v1"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["used_bytes"].as_u64().unwrap() <= v["budget_bytes"].as_u64().unwrap());
    assert_eq!(v["trace"].as_array().unwrap().len(), err.lines().count());
}

#[test]
fn generated_candidates_when_file_omitted() {
    let args = vec![
        "advisor".to_string(),
        "--schema".into(),
        fixture("sales_catalog.toml"),
        "--workload".into(),
        fixture("sales_workload.sql"),
        "--budget".into(),
        "100%".into(),
        "--min-support".into(),
        "2".into(),
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(args, &mut out, &mut err), 0);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("candidate views"));
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["--budget", "-1"]).0, 2);
    assert_eq!(invoke(&["--budget", "1000", "--mode", "exhaustive"]).0, 2);
    assert_eq!(invoke(&["--budget", "ten"]).0, 1);
    assert_eq!(invoke(&["--budget", "10", "--mode", "bogus"]).0, 1);
    assert_eq!(invoke(&["--sweep", "0,1"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sql");
    std::fs::write(
        &bad,
        "select sales.nope, sum(amount_sold) from sales group by sales.nope;",
    )
    .unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        [
            "advisor",
            "--schema",
            &fixture("sales_catalog.toml"),
            "--workload",
            bad.to_str().unwrap(),
            "--budget",
            "0",
        ],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 1);
    let msg = String::from_utf8(err).unwrap();
    assert!(msg.contains("bad.sql") && msg.contains("line 1"), "{msg}");
}

#[test]
fn binary_runs() {
    let bin = env!("CARGO_BIN_EXE_advisor");
    let status = Command::new(bin)
        .arg("--workload")
        .arg("x")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let output = Command::new(bin)
        .args(&base_args()[1..])
        .args(["--budget", "0"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let output = Command::new(bin)
        .args(&base_args()[1..])
        .args(["--budget", "-5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}
