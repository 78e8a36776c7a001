use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mset-ekr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn verify_star_bound_exits_zero() {
    let out = run(&["verify", "--theorem", "T1.4", "--m", "4", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for key in [
        "analytic_bound  10",
        "constructed     10",
        "search_optimum  10",
        "matched         true",
    ] {
        assert!(text.contains(key), "missing '{key}' in\n{text}");
    }
}

#[test]
fn verify_json_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--theorem",
        "T3.4",
        "--m",
        "7",
        "--k",
        "2",
        "--s",
        "2",
        "--json",
        p(&json),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    for field in [
        "theorem",
        "params",
        "analytic_bound",
        "constructed_family",
        "constructed_size",
        "search_optimum",
        "status",
        "uniqueness_verdict",
        "isomorphism_classes",
        "witness_isomorphic_to_construction",
        "hypothesis_met",
        "matched",
        "nodes_explored",
        "elapsed_ms",
        "notes",
    ] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["theorem"], "T3.4");
    assert_eq!(v["analytic_bound"], 13);
    assert_eq!(v["search_optimum"], 13);
    assert_eq!(v["status"], "proved_optimal");
    assert_eq!(v["params"]["s"], 2);
}

#[test]
fn verify_uniqueness_at_boundary_reports_multiple_classes() {
    let out = run(&["verify", "--theorem", "t1.4", "--m", "4", "--k", "3", "--uniqueness"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("multiple_classes"));
}

#[test]
fn isomorphic_relabeling_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    fs::write(&a, "m=4 k=2 kind=multiset\n1 1\n1 2\n1 3\n2 3\n").unwrap();
    // Swap 1 <-> 4 and 2 <-> 3.
    fs::write(&b, "m=4 k=2 kind=multiset\n# relabelled\n4 4\n3 4\n2 4\n2 3\n").unwrap();
    let out = run(&["isomorphic", p(&a), p(&b)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "isomorphic");
}

#[test]
fn non_isomorphic_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    fs::write(&a, "m=3 k=2 kind=multiset\n1 1\n1 2\n").unwrap();
    fs::write(&b, "m=3 k=2 kind=multiset\n1 2\n1 3\n").unwrap();
    let out = run(&["isomorphic", p(&a), p(&b)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_file_exits_two_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "m=3 k=2 kind=multiset\n1 2\n\n2 1\n").unwrap();
    let out = run(&["isomorphic", p(&bad), p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    fs::write(&bad, "m=3 k=2 kind=multiset\n1 2\n1 2\n").unwrap();
    let out = run(&["compress", "-i", p(&bad), "-t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--theorem", "T9.9", "--m", "4", "--k", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["size", "--family", "star", "--k", "3"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "search",
            "--kind",
            "multiset",
            "--m",
            "5",
            "--k",
            "2",
            "--constraint",
            "clique-free"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn scale_and_node_limit_exit_three() {
    let big = run(&["search", "--kind", "multiset", "--m", "30", "--k", "5"]);
    assert_eq!(big.status.code(), Some(3));
    let limited = run(&[
        "search",
        "--kind",
        "multiset",
        "--m",
        "6",
        "--k",
        "3",
        "--constraint",
        "empty-common",
        "--node-limit",
        "5",
    ]);
    assert_eq!(limited.status.code(), Some(3));
    assert!(stdout(&limited).contains("node_limit_hit"));
}

#[test]
fn construct_size_and_search_agree() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    let out = run(&[
        "construct",
        "--family",
        "frankl_multiset",
        "--m",
        "5",
        "--k",
        "4",
        "--t",
        "2",
        "--r",
        "1",
        "-o",
        p(&f),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("m=5 k=4 kind=multiset\n"));
    assert_eq!(text.lines().count(), 18);

    let size = run(&[
        "size",
        "--family",
        "frankl_multiset",
        "--m",
        "5",
        "--k",
        "4",
        "--t",
        "2",
        "--r",
        "1",
    ]);
    assert_eq!(size.status.code(), Some(0));
    assert!(stdout(&size).contains("17           17"), "{}", stdout(&size));

    let json = dir.path().join("s.json");
    let search = run(&[
        "search",
        "--kind",
        "multiset-t",
        "--m",
        "5",
        "--k",
        "4",
        "--t",
        "2",
        "--json",
        p(&json),
    ]);
    assert_eq!(search.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["optimum"], 17);
    assert_eq!(v["vertices"], 70);
    assert_eq!(v["witness"].as_array().unwrap().len(), 17);
}

#[test]
fn constrained_searches() {
    let cases: [(&[&str], &str); 3] = [
        (
            &[
                "--kind",
                "multiset",
                "--m",
                "6",
                "--k",
                "3",
                "--constraint",
                "empty-common",
            ],
            "optimum     16",
        ),
        (
            &[
                "--kind",
                "multiset",
                "--m",
                "7",
                "--k",
                "2",
                "--s",
                "2",
                "--constraint",
                "clique-free",
            ],
            "optimum     13",
        ),
        (
            &[
                "--kind",
                "multiset",
                "--m",
                "5",
                "--k",
                "2",
                "--constraint",
                "bipartite",
            ],
            "optimum     9",
        ),
    ];
    for (args, expect) in cases {
        let mut full = vec!["search"];
        full.extend_from_slice(args);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).contains(expect), "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn map_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let sets = dir.path().join("sets.txt");
    let multis = dir.path().join("multis.txt");
    assert_eq!(
        run(&[
            "construct",
            "--family",
            "hm_set",
            "--n",
            "7",
            "--k",
            "3",
            "-o",
            p(&sets)
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(run(&["map", "-i", p(&sets), "-o", p(&multis)]).status.code(), Some(0));
    let mapped = fs::read_to_string(&multis).unwrap();
    assert!(mapped.starts_with("m=5 k=3 kind=multiset"));
    let back = run(&["map", "-i", p(&multis), "--direction", "inverse"]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back), fs::read_to_string(&sets).unwrap());
    // A multiset file cannot be mapped forward.
    assert_eq!(run(&["map", "-i", p(&multis)]).status.code(), Some(2));
}

#[test]
fn compress_writes_family_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.txt");
    let output = dir.path().join("c.txt");
    let trace = dir.path().join("trace.jsonl");
    run(&[
        "construct",
        "--family",
        "fixed_multiset",
        "--m",
        "6",
        "--k",
        "4",
        "--core",
        "1,1",
        "-o",
        p(&input),
    ]);
    let out = run(&[
        "compress",
        "-i",
        p(&input),
        "-t",
        "2",
        "-o",
        p(&output),
        "--trace",
        p(&trace),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("support_t_intersecting  true"));
    assert!(stdout(&out).contains("passes                  6"));
    let lines: Vec<serde_json::Value> = fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    for rec in &lines {
        for field in ["pass", "i", "s", "j", "member_before", "member_after"] {
            assert!(rec.get(field).is_some());
        }
    }
    let compressed = fs::read_to_string(&output).unwrap();
    assert_eq!(compressed.lines().count(), 1 + 21);

    // Outside the regime only with the opt-in.
    run(&[
        "construct",
        "--family",
        "fixed_multiset",
        "--m",
        "5",
        "--k",
        "4",
        "--core",
        "1,1",
        "-o",
        p(&input),
    ]);
    assert_eq!(run(&["compress", "-i", p(&input), "-t", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["compress", "-i", p(&input), "-t", "2", "--allow-outside-regime"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn text_output_is_deterministic() {
    let args = ["verify", "--theorem", "T4.1", "--m", "5", "--k", "4", "--t", "2"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn quick_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("suite.json");
    let out = run(&["suite", "--profile", "quick", "--json", p(&json)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for id in ["AC-1", "AC-6"] {
        assert!(text.contains(id));
    }
    assert!(!text.contains("AC-7"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}
