use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_trilo");

fn trilo(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn trilo")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
        .to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bounds_for_two_generators_five_relators() {
    let o = trilo(&["bounds", "--n", "2", "--m", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "q"), "3/7 = 0.42857142857142855");
    let ub: f64 = field(&out, "union_bound").parse().unwrap();
    assert!((ub - 4.0 * (3.0f64 / 7.0).powi(5)).abs() < 1e-15);
    let json = trilo(&[
        "bounds", "--n", "150", "--p", "0.0001", "--alpha", "0.1", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(v["quotient"]["survivor_bound"].as_f64().unwrap() <= 1.0);
}

#[test]
fn encode_then_solve_cube_relator() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("r.txt");
    let cnf = dir.path().join("r.cnf");
    fs::write(&pres, "n=1\n+1 +1 +1\n").unwrap();
    assert!(trilo(&["encode", "--in", p(&pres), "--out", p(&cnf)])
        .status
        .success());
    let o = trilo(&["solve", "--dimacs", p(&cnf)]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "status"), "unsatisfiable");

    let nae = dir.path().join("nae.cnf");
    assert!(
        trilo(&["encode", "--in", p(&pres), "--nae", "--out", p(&nae)])
            .status
            .success()
    );
    let o = trilo(&["solve", "--dimacs", p(&nae), "--engine", "cdcl"]);
    assert_eq!(field(&stdout(&o), "status"), "unsatisfiable");
}

#[test]
fn sample_writes_a_parseable_reproducible_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = trilo(&[
            "sample",
            "--n",
            "12",
            "--c",
            "1.5",
            "--seed",
            "9",
            "--out",
            p(out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("# "), "header records the invocation");
    assert!(text.contains("seed=9"));
    let body = |t: &str| {
        t.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(body(&text), body(&fs::read_to_string(&b).unwrap()));
    let pres = trilo::Presentation::parse(&text).unwrap();
    assert_eq!(pres, trilo::sample_binomial(12, 1.5 / 144.0, 9).unwrap());

    let u = dir.path().join("u.txt");
    let o = trilo(&[
        "sample",
        "--n",
        "5",
        "--model",
        "uniform-m",
        "--m",
        "7",
        "--seed",
        "1",
        "--out",
        p(&u),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&u).unwrap().contains("m=7"));

    let s = trilo(&["solve", "--in", p(&a), "--engine", "cdcl"]);
    assert!(s.status.success());
}

fn sweep(out: &Path, jobs: &str) -> Output {
    trilo(&[
        "sweep",
        "--n",
        "25",
        "--c-min",
        "0.1",
        "--c-max",
        "0.5",
        "--c-step",
        "0.2",
        "--trials",
        "15",
        "--seed",
        "77",
        "--jobs",
        jobs,
        "--out",
        p(out),
    ])
}

#[test]
fn sweep_outputs_are_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<_> = ["1", "1", "3"]
        .iter()
        .enumerate()
        .map(|(i, jobs)| {
            let out = dir.path().join(format!("run{i}"));
            let o = sweep(&out, jobs);
            assert!(o.status.success(), "{}", stderr(&o));
            out
        })
        .collect();
    let read = |d: &Path, f: &str| fs::read(d.join(f)).unwrap();
    for r in &runs[1..] {
        assert_eq!(read(&runs[0], "trials.jsonl"), read(r, "trials.jsonl"));
        assert_eq!(read(&runs[0], "summary.csv"), read(r, "summary.csv"));
    }

    let jsonl = String::from_utf8(read(&runs[0], "trials.jsonl")).unwrap();
    let lines: Vec<serde_json::Value> = jsonl
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["record_type"], "config");
    assert_eq!(lines[0]["master_seed"], 77);
    assert_eq!(lines.len(), 1 + 3 * 16);
    let trial = &lines[1];
    for key in [
        "record_type",
        "n",
        "c",
        "p",
        "m",
        "seed",
        "trial_index",
        "status",
        "decisions",
        "elapsed_ms",
    ] {
        assert!(trial.get(key).is_some(), "missing {key}");
    }
    assert!(trial["elapsed_ms"].is_null());

    let csv = String::from_utf8(read(&runs[0], "summary.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "n,c,p,trials,sat,unsat,indeterminate,estimate,ci_low,ci_high,union_bound"
    );
    let config: serde_json::Value = serde_json::from_slice(&read(&runs[2], "config.json")).unwrap();
    assert_eq!(config["jobs"], 3);
    assert!(config["invocation"].as_array().unwrap().len() > 5);

    // `report` re-tallies the trial records into the same table.
    let o = trilo(&["report", "--in", p(&runs[0]), "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), csv);
    let o = trilo(&["report", "--in", p(&runs[0]), "--format", "tsv"]);
    assert_eq!(stdout(&o), csv.replace(',', "\t"));
}

#[test]
fn timeouts_fail_unless_allowed() {
    let dir = tempfile::tempdir().unwrap();
    let base = [
        "sweep",
        "--n",
        "150",
        "--c-min",
        "0.26",
        "--c-max",
        "0.26",
        "--c-step",
        "1",
        "--trials",
        "2",
        "--seed",
        "1",
        "--budget-ms",
        "0",
    ];
    let strict = dir.path().join("strict");
    let o = trilo(&[&base[..], &["--out", p(&strict)]].concat());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("indeterminate"));
    let summary = fs::read_to_string(strict.join("summary.csv")).unwrap();
    assert!(
        summary.lines().nth(1).unwrap().contains(",0,0,2,"),
        "{summary}"
    );

    let lenient = dir.path().join("lenient");
    let o = trilo(&[&base[..], &["--out", p(&lenient), "--allow-timeouts"]].concat());
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn threshold_and_quotient_batches() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t");
    let o = trilo(&[
        "threshold",
        "--n",
        "30",
        "--c-lo",
        "0.02",
        "--c-hi",
        "1.0",
        "--trials",
        "20",
        "--seed",
        "3",
        "--width",
        "0.05",
        "--engine",
        "cdcl",
        "--out",
        p(&t),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let est: f64 = field(&stdout(&o), "estimate").parse().unwrap();
    assert!(est > 0.02 && est < 1.0);
    assert!(stdout(&o).contains("trace: c=0.02"));
    assert!(t.join("trials.jsonl").exists());

    let q = dir.path().join("q");
    let o = trilo(&[
        "quotient",
        "--n",
        "20",
        "--c",
        "6",
        "--alpha",
        "0.2",
        "--strategy",
        "survivor",
        "--trials",
        "6",
        "--seed",
        "5",
        "--engine",
        "cdcl",
        "--out",
        p(&q),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let jsonl = fs::read_to_string(q.join("trials.jsonl")).unwrap();
    let last: serde_json::Value = serde_json::from_str(jsonl.lines().last().unwrap()).unwrap();
    assert_eq!(last["record_type"], "quotient_summary");
    assert_eq!(last["trials"], 6);
    let report = trilo(&["report", "--in", p(&q), "--format", "csv"]);
    assert!(report.status.success());
}

#[test]
fn single_presentation_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("r.txt");
    fs::write(&pres, "n=1\n+1 +1 +1\n").unwrap();
    for strategy in ["exhaustive", "survivor"] {
        let o = trilo(&[
            "quotient",
            "--in",
            p(&pres),
            "--alpha",
            "0.5",
            "--strategy",
            strategy,
        ]);
        assert!(o.status.success());
        assert_eq!(field(&stdout(&o), "verdict"), "certified");
    }
    let o = trilo(&[
        "quotient",
        "--in",
        p(&pres),
        "--alpha",
        "0.5",
        "--strategy",
        "sampled",
    ]);
    assert!(!o.status.success(), "sampled strategy needs a seed");

    fs::write(&pres, "n=4\n+1 +2 -3\n").unwrap();
    let o = trilo(&[
        "quotient",
        "--in",
        p(&pres),
        "--alpha",
        "0.5",
        "--strategy",
        "exhaustive",
    ]);
    let out = stdout(&o);
    assert_eq!(field(&out, "verdict"), "refuted");
    assert!(field(&out, "model").ends_with(" 0"));
}

#[test]
fn bad_inputs_give_one_line_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "n=2\n+1 -1 +2\n").unwrap();
    let bad_cnf = dir.path().join("bad.cnf");
    fs::write(&bad_cnf, "p cnf 2 1\n1 3 0\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["solve", "--in", p(&bad)],
        vec!["solve", "--dimacs", p(&bad_cnf)],
        vec!["solve", "--in", "/definitely/not/here"],
        vec!["encode", "--in", p(&bad), "--out", "/tmp/never-written.cnf"],
        vec!["bounds", "--n", "0", "--m", "3"],
        vec![
            "sweep",
            "--n",
            "5",
            "--c-min",
            "0.5",
            "--c-max",
            "0.1",
            "--c-step",
            "0.1",
            "--trials",
            "2",
            "--seed",
            "1",
            "--out",
            "/tmp/never-written",
        ],
    ];
    for args in cases {
        let o = trilo(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
    }
    let o = trilo(&["bounds", "--n", "2", "--m", "5", "--frobnicate"]);
    assert!(!o.status.success());
    let o = trilo(&["sweep", "--n", "5"]);
    assert!(!o.status.success(), "missing --seed must be rejected");
}
