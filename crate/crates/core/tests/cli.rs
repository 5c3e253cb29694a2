use std::path::PathBuf;
use std::process::{Command, Output};

use clustereval::aggregate::EvaluationReport;
use clustereval::testkit::{gen_clustering, GenSpec};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustereval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn evaluate_single_overlapping_pair() {
    let (sys, exp) = (fixture("overlap_pair_system.json"), fixture("overlap_pair_expert.json"));
    let o = run(&["evaluate", "--system", &sys, "--expert", &exp]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let summary = text.lines().last().unwrap();
    let fields: Vec<&str> = summary.split_whitespace().collect();
    assert_eq!(fields, ["expert", "75.00", "54.55", "0.63"]);
    assert!(text.contains("overall: yy=6 yn=2 ny=5"));
}

#[test]
fn evaluate_self_comparison() {
    let sys = fixture("vet_system.json");
    let o = run(&["evaluate", "--system", &sys, "--expert", &sys]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert_eq!(last.split_whitespace().skip(1).collect::<Vec<_>>(), ["100.00", "100.00", "1.00"]);
}

#[test]
fn missing_or_invalid_expert_exits_2() {
    let sys = fixture("overlap_pair_system.json");
    let o = run(&["evaluate", "--system", &sys, "--expert", "/no/such/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"classes": [{"label": "A", "members": ["x", "x"]}]}"#).unwrap();
    let o = run(&["evaluate", "--system", &sys, "--expert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("classes[0].members[1]"), "{err}");

    let o = run(&["evaluate", "--system", &sys, "--expert", &sys, "--threshold", "1.5"]);
    assert_eq!(o.status.code(), Some(2));

    // System files may not carry children.
    let o = run(&["evaluate", "--system", &fixture("vet_expert_a.json"), "--expert", &sys]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_single_pair() {
    let (sys, exp) = (fixture("overlap_pair_system.json"), fixture("overlap_pair_expert.json"));
    let text = stdout(&run(&["table", "--system", &sys, "--expert", &exp]));
    assert!(text.contains("0.6316"), "{text}");
    assert!(text.contains("A -> B  0.6316"));
}

#[test]
fn table_disjoint_vocabularies() {
    let o = run(&[
        "table", "--system", &fixture("disjoint_system.json"), "--expert", &fixture("disjoint_expert.json"),
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let t = &v[0];
    assert_eq!(t["cells"], serde_json::json!([[0.0, 0.0], [0.0, 0.0]]));
    assert_eq!(t["mapping"], serde_json::json!([]));
    assert_eq!(t["unmapped_rows"], serde_json::json!(["S1", "S2"]));
}

#[test]
fn table_trace_shows_conflict() {
    let args = [
        "table", "--system", &fixture("conflict_system.json"), "--expert", &fixture("conflict_expert.json"),
        "--trace",
    ];
    let text = stdout(&run(&args));
    assert!(text.contains("re-map trace: 1 events"), "{text}");
    assert!(text.contains("S2: E1 -> E2  loss 0.0500"), "{text}");
    assert!(text.contains("* S2 -> E2"));
    assert!(text.contains("  S1 -> E1"));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&run(&json_args).stdout).unwrap();
    let trace = v[0]["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 1);
    assert!((trace[0]["loss"].as_f64().unwrap() - 0.05).abs() < 1e-12);
    assert_eq!(v[0]["mapping"][1]["remapped"], true);
}

#[test]
fn sweep_edges_and_consistency() {
    let sys = fixture("vet_system.json");
    let exp = fixture("vet_expert_a.json");

    let o = run(&["sweep", "--system", &sys, "--expert", &sys, "--thresholds", "0.0"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "expert,threshold,mapped_pairs,precision,recall,f_measure");
    assert_eq!(csv_rows(&text)[0][5], "1");

    let rows = csv_rows(&stdout(&run(&["sweep", "--system", &sys, "--expert", &exp, "--thresholds", "1.0"])));
    assert_eq!(rows[0][2], "0");
    assert_eq!(rows[0][5], "0");

    let rows = csv_rows(&stdout(&run(&["sweep", "--system", &sys, "--expert", &exp, "--thresholds", "0.2"])));
    let o = run(&["evaluate", "--system", &sys, "--expert", &exp, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let s = &v["summary"][0];
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), s["precision"].as_f64().unwrap());
    assert_eq!(rows[0][4].parse::<f64>().unwrap(), s["recall"].as_f64().unwrap());
    assert_eq!(rows[0][5].parse::<f64>().unwrap(), s["f_measure"].as_f64().unwrap());
    assert_eq!(rows[0][2].parse::<usize>().unwrap(), v["reports"][0]["per_pair"].as_array().unwrap().len());

    let o = run(&["sweep", "--system", &sys, "--expert", &exp, "--expert", &sys, "--thresholds", "0.5,0.1"]);
    let order: Vec<(String, String)> = csv_rows(&stdout(&o)).into_iter().map(|r| (r[0].clone(), r[1].clone())).collect();
    assert_eq!(
        order,
        [
            ("expert-a".to_string(), "0.5".to_string()),
            ("expert-a".into(), "0.1".into()),
            ("vet-system".into(), "0.5".into()),
            ("vet-system".into(), "0.1".into())
        ]
    );
}

#[test]
fn baseline_outputs() {
    let o = run(&["baseline", "--system", &fixture("ab_c_expert.json"), "--expert", &fixture("ab_c_expert.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f-measure=1.00"));
    assert!(o.stderr.is_empty());

    let o = run(&["baseline", "--system", &fixture("abc_system.json"), "--expert", &fixture("ab_c_expert.json")]);
    let text = stdout(&o);
    assert!(text.contains("yy=1 yn=2 ny=0"));
    assert!(text.contains("precision=0.33 recall=1.00"), "{text}");

    let o = run(&["baseline", "--system", &fixture("overlap_system.json"), "--expert", &fixture("ab_c_expert.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("system clustering is not a partition"));

    let o = run(&[
        "baseline", "--system", &fixture("overlap_system.json"), "--expert", &fixture("ab_c_expert.json"),
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);

    let o = run(&["baseline", "--system", &fixture("abc_system.json"), "--expert", &fixture("vet_expert_a.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hierarchies are not supported"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let sys = fixture("vet_system.json");
    let (a, b) = (fixture("vet_expert_a.json"), fixture("vet_expert_b.json"));
    for args in [
        vec!["evaluate", "--system", &sys, "--expert", &a, "--expert", &b, "--trace"],
        vec!["evaluate", "--system", &sys, "--expert", &a, "--expert", &b, "--format", "json", "--trace"],
        vec!["table", "--system", &sys, "--expert", &b, "--trace"],
        vec!["sweep", "--system", &sys, "--expert", &a, "--thresholds", "0,0.1,0.2,0.4,0.8"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty());
    }
}

#[test]
fn json_report_recovers_text_numbers() {
    let sys = fixture("vet_system.json");
    let (a, b) = (fixture("vet_expert_a.json"), fixture("vet_expert_b.json"));
    let text = stdout(&run(&["evaluate", "--system", &sys, "--expert", &a, "--expert", &b]));
    let json = run(&["evaluate", "--system", &sys, "--expert", &a, "--expert", &b, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    for r in v["reports"].as_array().unwrap() {
        let report: EvaluationReport = serde_json::from_value(r.clone()).unwrap();
        let o = report.overall;
        let s = report.overall_scores;
        assert!(text.contains(&format!("overall: yy={} yn={} ny={}", o.yy, o.yn, o.ny)));
        assert!(text.contains(&format!(
            "precision={:.2} recall={:.2} f-measure={:.2}",
            s.precision * 100.0,
            s.recall * 100.0,
            s.f_measure
        )));
        for p in &report.per_pair {
            assert!(text.contains(&format!(
                "{} -> {}  yy={} yn={} ny={}",
                p.system_label, p.expert_path, p.table.yy, p.table.yn, p.table.ny
            )));
        }
    }
}

#[test]
fn generated_gold_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let gold = gen_clustering(&GenSpec { seed: 42, overlap_rate: 0.2, ..GenSpec::default() }).unwrap();
    let path = dir.path().join("gold.json");
    std::fs::write(&path, gold.to_json()).unwrap();
    let p = path.to_str().unwrap();
    let rows = csv_rows(&stdout(&run(&["sweep", "--system", p, "--expert", p, "--thresholds", "0.2"])));
    assert_eq!(rows[0][2], gold.classes.len().to_string());
    assert_eq!((rows[0][3].as_str(), rows[0][4].as_str(), rows[0][5].as_str()), ("1", "1", "1"));
}
