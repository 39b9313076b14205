//! End-to-end checks of the binary: flags, file formats, determinism, and
//! exit codes (0 ok, 1 verification failure, 2 usage error).

use std::path::Path;
use std::process::{Command, Output};

use matuso::instance::InstanceFile;

fn matuso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matuso"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn gen_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = matuso(&[
            "gen",
            "--n",
            "9",
            "--class",
            "realizable",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let different = matuso(&[
        "gen",
        "--n",
        "9",
        "--class",
        "realizable",
        "--seed",
        "43",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(different.status.success());
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn generated_realizable_instances_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let out = matuso(&[
        "gen",
        "--n",
        "8",
        "--class",
        "realizable",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = InstanceFile::load(&path).unwrap();
    assert!(matuso::dig::is_realizable_dig(file.to_uso().unwrap().matrix()).unwrap());

    let verify = matuso(&["verify", path.to_str().unwrap()]);
    assert!(verify.status.success(), "{}", stdout(&verify));
}

#[test]
fn solve_verifies_the_answer_and_respects_budgets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    assert!(matuso(&[
        "gen", "--n", "10", "--class", "general", "--seed", "3", "--out",
        path.to_str().unwrap(),
    ])
    .status
    .success());
    for solver in ["jump-antipodal", "naive-recover"] {
        let out = matuso(&["solve", path.to_str().unwrap(), "--solver", solver]);
        assert!(out.status.success(), "{solver}: {}", stdout(&out));
        let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(parsed["verified"], serde_json::Value::Bool(true));
        let queries = parsed["queries_used"].as_u64().unwrap();
        let bound = parsed["bound"].as_u64().unwrap();
        assert!(queries <= bound, "{solver} used {queries} > bound {bound}");
    }
}

#[test]
fn realizable_solver_rejects_general_instances() {
    // A legal but non-realizable graph: two roots both influencing vertex 3.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diamond.json");
    let json = r#"{ "n": 3, "matrix": ["100", "010", "111"], "sink": "000" }"#;
    std::fs::write(&path, json).unwrap();
    let out = matuso(&[
        "solve",
        path.to_str().unwrap(),
        "--solver",
        "realizable-log2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("realizable"));
}

#[test]
fn verify_locates_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // A zero diagonal entry breaks legality at load time.
    std::fs::write(
        &path,
        r#"{ "n": 2, "matrix": ["10", "00"], "sink": "00" }"#,
    )
    .unwrap();
    let out = matuso(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_exhaustive_counts_instances() {
    let out = matuso(&["verify", "--exhaustive", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("200 instances verified"));
}

#[test]
fn count_reports_formula_agreement() {
    let out = matuso(&["count", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["branchings"], 3);
    assert_eq!(parsed["realizable_usos"], 12);
    assert_eq!(parsed["formula_matches"], serde_json::Value::Bool(true));
}

#[test]
fn duel_reports_audits_and_bounds() {
    let out = matuso(&[
        "duel",
        "--n",
        "6",
        "--solver",
        "naive-recover",
        "--adversary",
        "general",
        "--trials",
        "3",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for verdict in parsed.as_array().unwrap() {
        assert_eq!(verdict["answer_correct"], serde_json::Value::Bool(true));
        assert_eq!(verdict["audits_passed"], serde_json::Value::Bool(true));
        assert!(verdict["queries"].as_u64().unwrap() >= 5);
    }
}

#[test]
fn bench_csv_round_trips_and_handles_empty_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = matuso(&[
        "bench",
        "--n-range",
        "2..5",
        "--solver",
        "jump-antipodal",
        "--class",
        "general",
        "--trials",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = matuso_cli::bench::read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.bound_respected));

    // An empty dimension list still prints the header.
    let empty = matuso_cli::bench::csv_string(&[]).unwrap();
    assert_eq!(
        empty.trim(),
        "n,solver,class,trials,min_queries,mean_queries,max_queries,bound,bound_respected"
    );
}

#[test]
fn duel_bench_shows_the_exact_general_bound() {
    // Against the adaptive general adversary, antipodal jumping spends
    // exactly n evaluations at every dimension.
    let out = matuso(&[
        "bench",
        "--n-range",
        "2..10",
        "--solver",
        "jump-antipodal",
        "--adversary",
        "general",
        "--trials",
        "10",
    ]);
    assert!(out.status.success());
    let rows = matuso_cli::bench::read_csv(stdout(&out).as_bytes()).unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        assert_eq!(row.min_queries, row.n);
        assert_eq!(row.max_queries, row.n);
        assert!(row.bound_respected);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown_solver = matuso(&["solve", "nope.json", "--solver", "does-not-exist"]);
    assert_eq!(unknown_solver.status.code(), Some(2));
    let missing_args = matuso(&["gen"]);
    assert_eq!(missing_args.status.code(), Some(2));
    let unknown_command = matuso(&["frobnicate"]);
    assert_eq!(unknown_command.status.code(), Some(2));
}

#[test]
fn instance_files_round_trip_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    assert!(matuso(&[
        "gen", "--n", "6", "--class", "realizable", "--seed", "5", "--out",
        path.to_str().unwrap(),
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&path).unwrap();
    let file = InstanceFile::from_json(&text).unwrap();
    assert_eq!(file.to_json(), text);
    assert_eq!(Path::new(path.to_str().unwrap()), path.as_path());
}
