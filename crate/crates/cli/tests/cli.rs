use std::path::Path;
use std::process::{Command, Output};

fn pclique(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pclique")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_recover_by_degree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.pcg");
    let o = pclique(&["gen", "--n", "17", "--k", "5", "--seed", "7", "--out", path_arg(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(&std::fs::read(&file).unwrap()[..4], b"PCG1");

    let o = pclique(&["recover", "--algo", "degree", "--in", path_arg(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<usize> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    assert!(ids.iter().all(|&v| (1..=17).contains(&v)));

    let o = pclique(&["recover", "--algo", "degree", "--in", path_arg(&file), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["k"], 5);
    let listed: Vec<usize> =
        doc["recovered"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    assert_eq!(listed, ids);
}

#[test]
fn gen_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.pcg"), dir.path().join("b.pcg"));
    for f in [&a, &b] {
        assert_eq!(pclique(&["gen", "--n", "100", "--seed", "3", "--out", path_arg(f)]).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn exhaustive_over_cap_is_infeasible() {
    let o = pclique(&["detect", "--algo", "exhaustive", "--n", "4096", "--epsilon", "0.1", "--cap", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("26"));
}

#[test]
fn pipeline_below_scale_is_infeasible() {
    let o = pclique(&["recover", "--algo", "pipeline", "--n", "16", "--k", "4", "--constant-c", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn oracle_check_passes() {
    let o = pclique(&["oracle-check", "--n", "64", "--k", "24", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("mismatches=0"));
}

#[test]
fn edge_count_detect_json() {
    let o = pclique(&["detect", "--n", "256", "--k", "128", "--seed", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["verdict"], "H1");
}

#[test]
fn bad_arguments() {
    assert_eq!(pclique(&["gen", "--n", "0", "--out", "/dev/null"]).status.code(), Some(1));
    assert_eq!(pclique(&["recover", "--n", "10", "--k", "11"]).status.code(), Some(1));
    assert_eq!(pclique(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(pclique(&["detect", "--n", "10"]).status.code(), Some(1));
    assert_eq!(pclique(&["--help"]).status.code(), Some(0));
}

#[test]
fn unreadable_input() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.pcg");
    assert_eq!(pclique(&["recover", "--algo", "degree", "--in", path_arg(&missing)]).status.code(), Some(3));
    let junk = dir.path().join("junk.pcg");
    std::fs::write(&junk, b"PCG2....").unwrap();
    assert_eq!(pclique(&["recover", "--algo", "degree", "--in", path_arg(&junk)]).status.code(), Some(3));
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = pclique(&[
            "sweep",
            "--n",
            "64,128",
            "--k",
            "4sqrtn",
            "--algo",
            "degree,edge-count",
            "--trials",
            "3",
            "--seed",
            "9",
            "--no-timing",
            "--out",
            path_arg(&out),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read_to_string(out).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("algo,n,k,trials,success_rate,mean_peak_bits,max_peak_bits,mean_ms"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn sweep_without_feasible_points_warns() {
    let o = pclique(&["sweep", "--n", "16", "--k", "4", "--algo", "pipeline", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}
