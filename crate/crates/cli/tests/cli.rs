use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clique-ext"))
        .args(args)
        .env_remove("CLIQUE_EXT_TIME_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn counts_linear_families() {
    let o = run(&["count", "--what", "linear", "-n", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn oracle_agreement_on_intersecting() {
    let o = run(&["count", "--what", "intersecting", "-n", "3", "--oracle"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "12\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("agrees"));
}

#[test]
fn every_count_kind_against_oracle() {
    for (what, n, want) in [
        ("linear", "3", "19"),
        ("scarce", "4", "81"),
        ("antichains", "3", "20"),
        ("intersecting", "4", "81"),
    ] {
        let o = run(&["count", "--what", what, "-n", n, "--oracle"]);
        assert_eq!(code(&o), 0, "{what} n={n}");
        assert_eq!(stdout(&o).trim(), want, "{what} n={n}");
    }
}

#[test]
fn triple_suite_passes() {
    let o = run(&["verify", "--suite", "triples", "-n", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn full_suite_at_three() {
    let o = run(&["verify", "--suite", "all", "-n", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        5
    );
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(code(&run(&["count", "--what", "nothing", "-n", "2"])), 2);
    assert_eq!(code(&run(&["count", "--what", "linear"])), 2);
    // input
    assert_eq!(code(&run(&["count", "--what", "linear", "-n", "0"])), 2);
    assert_eq!(
        code(&run(&[
            "report", "--n-min", "5", "--n-max", "3", "--format", "csv"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "--threads",
            "0",
            "count",
            "--what",
            "linear",
            "-n",
            "2"
        ])),
        2
    );
    // caps
    assert_eq!(code(&run(&["count", "--what", "linear", "-n", "6"])), 3);
    assert_eq!(
        code(&run(&["count", "--what", "linear", "-n", "2", "--oracle"])),
        0
    );
    assert_eq!(
        code(&run(&["count", "--what", "linear", "-n", "5", "--oracle"])),
        3
    );
    assert_eq!(code(&run(&["extend", "-n", "5"])), 3);
    assert_eq!(code(&run(&["verify", "--suite", "triples", "-n", "8"])), 3);
    assert_eq!(
        code(&run(&["--force", "count", "--what", "linear", "-n", "7"])),
        3
    );
}

#[test]
fn zero_time_budget_reports_partial_progress() {
    let o = Command::new(env!("CARGO_BIN_EXE_clique-ext"))
        .args(["count", "--what", "linear", "-n", "5"])
        .env("CLIQUE_EXT_TIME_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("partial progress"));
    assert!(o.stdout.is_empty());
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.txt");
    let o = run(&[
        "enumerate",
        "--what",
        "linear",
        "-n",
        "2",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["enumerate", "--what", "linear", "-n", "4"],
        &["enumerate", "--what", "scarce", "-n", "4"],
        &["extend", "-n", "3"],
        &["report", "--n-min", "1", "--n-max", "8", "--format", "json"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let mut seen: Option<Vec<u8>> = None;
        for threads in ["1", "4", "16", "4"] {
            let path = dir.path().join(format!("{i}-{threads}"));
            let mut args = vec!["--threads", threads];
            args.extend_from_slice(case);
            args.extend_from_slice(&["--out", path.to_str().unwrap()]);
            let o = run(&args);
            assert_eq!(code(&o), 0, "{case:?}");
            let bytes = std::fs::read(&path).unwrap();
            match &seen {
                None => seen = Some(bytes),
                Some(first) => assert_eq!(first, &bytes, "{case:?} threads={threads}"),
            }
        }
    }
}

#[test]
fn counts_do_not_depend_on_threads() {
    for what in ["linear", "scarce", "antichains", "intersecting"] {
        let outs: Vec<String> = ["1", "4", "16"]
            .iter()
            .map(|t| stdout(&run(&["--threads", t, "count", "--what", what, "-n", "5"])))
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{what}: {outs:?}");
    }
}

#[test]
fn enumerated_file_has_header_and_count() {
    let o = run(&["enumerate", "--what", "linear", "-n", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("# linear families over [3]\n# count=19\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 19);
}

#[test]
fn extension_json_shape() {
    let o = run(&["extend", "-n", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 5);
    for r in records {
        assert_eq!(r["scale"], 2);
        assert_eq!(r["rank_table_hash"].as_str().unwrap().len(), 16);
        assert!(["loop", "coloop", "ordinary"].contains(&r["e_class"].as_str().unwrap()));
    }
    assert_eq!(records.iter().filter(|r| r["e_class"] == "loop").count(), 1);
}

#[test]
fn report_marks_uncomputed_rows() {
    let o = run(&["report", "--n-min", "5", "--n-max", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("5,10,10,12,11,2646,3708,"));
    assert!(lines[2].ends_with("uncomputed,uncomputed,uncomputed,uncomputed"));
}

#[test]
fn help_names_the_clique() {
    let o = run(&["extend", "--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("M(K_{n+1})"));
}
