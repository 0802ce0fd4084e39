use std::path::Path;
use std::process::{Command, Output};

fn kregret(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kregret"))
        .args(args)
        .env("KREGRET_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_select_evaluate_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("anti.csv");
    let out = kregret(&[
        "generate",
        "anticorrelated",
        "--n",
        "500",
        "--d",
        "3",
        "--seed",
        "2",
        "--out",
        path_str(&data),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&data).unwrap();
    assert!(text.starts_with("id,c0,c1,c2\n"));
    assert_eq!(text.lines().count(), 501);

    let out = kregret(&[
        "select",
        "--data",
        path_str(&data),
        "--algorithm",
        "minvar",
        "--k",
        "10",
    ]);
    assert!(out.status.success());
    let listing = stdout(&out);
    let ids: Vec<&str> = listing
        .lines()
        .skip(2)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(ids.len(), 10);
    assert!(listing.contains("apex(0)"));
    assert!(listing.contains("bucket(t=2;"));

    let out = kregret(&[
        "evaluate",
        "--data",
        path_str(&data),
        "--ids",
        &ids.join(","),
        "--num-functions",
        "2000",
    ]);
    assert!(out.status.success());
    let report = stdout(&out);
    let max_ratio: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("max_ratio="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(max_ratio <= 1.5f64.ln());
}

#[test]
fn bounds_table() {
    let out = kregret(&["bounds", "--k", "3,20", "--d", "2", "--b", "0.1,0.9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,d,t,muf_upper,ces_upper_b0.1,ces_upper_b0.9,muf_lower_scale"
    );
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(&first[..3], &[3.0, 2.0, 2.0]);
    assert!((first[3] - 1.5f64.ln()).abs() < 1e-12);
    assert!((first[4] - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn bench_writes_csv_and_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# small run\ndataset = anticorrelated\nn = 800\nd = 3\nalgorithms = minvar, random\nk = 10, 12\nnum_functions = 300\nseed = 4\n",
    )
    .unwrap();
    let results = dir.path().join("out.csv");
    let run = || {
        let out = kregret(&[
            "bench",
            "--config",
            path_str(&cfg),
            "--set",
            "seed=5",
            "--out",
            path_str(&results),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        kregret_bench::strip_timing(&std::fs::read_to_string(&results).unwrap())
    };
    let first = run();
    assert_eq!(first.lines().count(), 5);
    assert!(first.lines().skip(1).all(|l| l.contains(",5,")));
    assert_eq!(first, run());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(
        &cfg,
        "dataset = anticorrelated\nn = 100\nd = 3\nalgorithms = minvar\nk = 1\n",
    )
    .unwrap();
    let out = kregret(&["bench", "--config", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`k`"));

    assert_eq!(
        kregret(&["bench", "--config", "/nonexistent/run.cfg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kregret(&["frobnicate"]).status.code(), Some(2));

    let missing = dir.path().join("missing.csv");
    let out = kregret(&["select", "--data", path_str(&missing), "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));

    let bad_threads = Command::new(env!("CARGO_BIN_EXE_kregret"))
        .args(["bounds", "--k", "3"])
        .env("KREGRET_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}
