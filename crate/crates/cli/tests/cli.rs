//! End-to-end tests driving the reduction-scope binary: output formats,
//! exit codes, artifact round-trips, cache behavior, and the bundled
//! reproductions at reduced bounds.

use std::path::Path;
use std::process::{Command, Output};

use reduction_core::cm::ReductionType;
use reduction_core::density::{summarize, ScanRow};
use reduction_core::numfield::SplitClass;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reduction-scope"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, cache: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .env("REDUCTION_SCOPE_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout_ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_ok(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_ok(out)).expect("valid JSON")
}

#[test]
fn density_prints_exact_group_densities() {
    let text = stdout_ok(&run(&["density", "--group", "D4"]));
    assert!(text.contains("hw=3/8 ord=1/8"), "got {text:?}");
    let value = json_ok(&run(&["density", "--group", "D4", "--json"]));
    assert_eq!(value["hodge_witt_density"], "3/8");
    assert_eq!(value["ordinary_density"], "1/8");
    assert_eq!(value["order"], 8);
}

#[test]
fn fermat_densities_and_verdicts() {
    let text = stdout_ok(&run(&["fermat", "--n", "2", "--m", "7", "--densities"]));
    assert!(text.contains("ord=1/6"), "got {text:?}");
    assert!(text.contains("hw=1/2"), "got {text:?}");
    let v = json_ok(&run(&["fermat", "--n", "2", "--m", "7", "--prime", "29", "--json"]));
    assert_eq!(v["reduction_type"], "ordinary");
    let v = json_ok(&run(&["fermat", "--n", "2", "--m", "7", "--prime", "3", "--json"]));
    assert_eq!(v["reduction_type"], "non-hodge-witt");
    // p | m is an excluded prime: exit code 3
    let out = run(&["fermat", "--n", "2", "--m", "7", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ec_ap_and_exit_codes() {
    let v = json_ok(&run(&["ec-ap", "--curve", "0,0,0,-1,0", "--prime", "5", "--json"]));
    assert_eq!(v["ap"], -2);
    assert_eq!(v["supersingular"], false);
    // p = 2 is excluded from elliptic operations
    let out = run(&["ec-ap", "--curve", "0,0,0,-1,0", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(3));
    // bad reduction is an excluded prime as well
    let out = run(&["ec-ap", "--curve", "0,0,1,-1,0", "--prime", "37"]);
    assert_eq!(out.status.code(), Some(3));
    // composite p is a usage error
    let out = run(&["ec-ap", "--curve", "0,0,0,-1,0", "--prime", "15"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error code=2 kind="), "got {err:?}");
}

#[test]
fn supersingular_searches() {
    let v = json_ok(&run(&[
        "ss-search", "--curve", "0,0,0,-1,0", "--bound", "50", "--json",
    ]));
    assert_eq!(
        v["primes"],
        serde_json::json!([7, 11, 19, 23, 31, 43, 47])
    );
    let v = json_ok(&run(&[
        "ss-common",
        "--curve1",
        "0,0,1,-1,0",
        "--curve2",
        "0,1,1,-23,-50",
        "--bound",
        "300",
        "--json",
    ]));
    assert_eq!(v["primes"], serde_json::json!([]));
    assert_eq!(v["skipped"], serde_json::json!([37]));
}

#[test]
fn product_surface_verdicts() {
    for (p, expected) in [
        ("13", "ordinary"),
        ("7", "almost-ordinary"),
        ("11", "non-hodge-witt"),
    ] {
        let v = json_ok(&run(&[
            "product",
            "--curve1",
            "0,0,0,-1,0",
            "--curve2",
            "0,0,0,0,1",
            "--prime",
            p,
            "--json",
        ]));
        assert_eq!(v["reduction_type"], expected, "p = {p}");
    }
}

#[test]
fn split_and_cm_classify() {
    let v = json_ok(&run(&[
        "split", "--poly", "1,1,1,1,1", "--prime", "7", "--json",
    ]));
    assert_eq!(v["degrees"], serde_json::json!([4]));
    assert_eq!(v["split_class"], "other");

    let v = json_ok(&run(&[
        "cm-classify",
        "--poly",
        "89,0,134,0,1",
        "--k0",
        "-11,0,1",
        "--prime",
        "7",
        "--json",
    ]));
    assert_eq!(v["split_class"], "almost-not-completely");
    assert_eq!(v["inert_count"], 1);
    assert_eq!(v["reduction_type"], "almost-ordinary");

    // the galois rule refines Other to non-Hodge-Witt
    let v = json_ok(&run(&[
        "cm-classify",
        "--poly",
        "1,1,1,1,1",
        "--galois",
        "--galois-rule",
        "--prime",
        "7",
        "--json",
    ]));
    assert_eq!(v["reduction_type"], "non-hodge-witt");
}

#[test]
fn polygon_comparisons() {
    let v = json_ok(&run(&[
        "polygon", "--newton", "0,inf,1", "--hodge", "1,1", "--json",
    ]));
    assert_eq!(v["above"], true);
    assert_eq!(v["same_endpoints"], true);
    assert_eq!(v["newton"], serde_json::json!([["1/2", 2]]));
    // rational valuations parse
    let v = json_ok(&run(&["polygon", "--newton", "0,1/2,1", "--json"]));
    assert_eq!(v["newton"], serde_json::json!([["1/2", 2]]));
    // width mismatch is a domain error
    let out = run(&["polygon", "--newton", "0,0,1", "--hodge", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

fn parse_csv_rows(text: &str) -> Vec<ScanRow> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,degrees,split_class,inert_count,reduction_type"
    );
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 5, "row {line:?}");
            ScanRow {
                p: f[0].parse().unwrap(),
                degrees: if f[1].is_empty() {
                    vec![]
                } else {
                    f[1].split('-').map(|d| d.parse().unwrap()).collect()
                },
                split_class: f[2].parse::<SplitClass>().unwrap(),
                inert_count: if f[3].is_empty() {
                    None
                } else {
                    Some(f[3].parse().unwrap())
                },
                reduction: if f[4].is_empty() {
                    None
                } else {
                    Some(f[4].parse::<ReductionType>().unwrap())
                },
            }
        })
        .collect()
}

#[test]
fn scan_artifacts_round_trip_byte_for_byte() {
    let work = tempfile::tempdir().unwrap();
    let cache = tempfile::tempdir().unwrap();
    let args = [
        "scan", "--poly", "89,0,134,0,1", "--k0", "-11,0,1", "--bound", "20000", "--workers",
        "3", "--out", "out",
    ];
    stdout_ok(&run_in(work.path(), cache.path(), &args));
    let csv = std::fs::read_to_string(work.path().join("out/field.csv")).unwrap();
    let summary = std::fs::read_to_string(work.path().join("out/field.summary.json")).unwrap();

    // re-reading the CSV and re-summarizing reproduces the summary exactly
    let rows = parse_csv_rows(&csv);
    let report = summarize(&rows, 2, 20000);
    let expected = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(summary, expected);

    // the d4 discriminant primes are excluded
    assert_eq!(report.excluded, vec![2, 5, 11, 89]);
    assert_eq!(report.scanned + 4, rows.len() as u64);
}

#[test]
fn scan_is_deterministic_and_cache_extends() {
    let work_a = tempfile::tempdir().unwrap();
    let work_b = tempfile::tempdir().unwrap();
    let cache_a = tempfile::tempdir().unwrap();
    let cache_b = tempfile::tempdir().unwrap();
    let scan_args = |bound: &'static str, workers: &'static str| {
        vec![
            "scan".to_string(),
            "--poly".into(),
            "1,1,1,1,1".into(),
            "--galois".into(),
            "--galois-rule".into(),
            "--bound".into(),
            bound.into(),
            "--workers".into(),
            workers.into(),
            "--out".into(),
            "out".into(),
        ]
    };
    // different worker counts, fresh caches: identical artifacts
    let args1 = scan_args("6000", "1");
    let args4 = scan_args("6000", "4");
    stdout_ok(&run_in(
        work_a.path(),
        cache_a.path(),
        &args1.iter().map(String::as_str).collect::<Vec<_>>(),
    ));
    stdout_ok(&run_in(
        work_b.path(),
        cache_b.path(),
        &args4.iter().map(String::as_str).collect::<Vec<_>>(),
    ));
    let csv_a = std::fs::read(work_a.path().join("out/field.csv")).unwrap();
    let csv_b = std::fs::read(work_b.path().join("out/field.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    let sum_a = std::fs::read(work_a.path().join("out/field.summary.json")).unwrap();
    let sum_b = std::fs::read(work_b.path().join("out/field.summary.json")).unwrap();
    assert_eq!(sum_a, sum_b);

    // extending a cached scan matches a fresh full scan
    let work_c = tempfile::tempdir().unwrap();
    let cache_c = tempfile::tempdir().unwrap();
    let small = scan_args("2000", "2");
    stdout_ok(&run_in(
        work_c.path(),
        cache_c.path(),
        &small.iter().map(String::as_str).collect::<Vec<_>>(),
    ));
    let grown = scan_args("6000", "2");
    stdout_ok(&run_in(
        work_c.path(),
        cache_c.path(),
        &grown.iter().map(String::as_str).collect::<Vec<_>>(),
    ));
    let csv_c = std::fs::read(work_c.path().join("out/field.csv")).unwrap();
    assert_eq!(csv_c, csv_a);
    // cache directory actually holds the keyed artifacts
    let entries: Vec<_> = std::fs::read_dir(cache_c.path()).unwrap().collect();
    assert_eq!(entries.len(), 2); // rows + meta
}

#[test]
fn config_driven_lookups() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.toml");
    std::fs::write(
        &config_path,
        r#"
bound = 4000
workers = 2

[[field]]
label = "zeta5"
poly = [1, 1, 1, 1, 1]
galois = true
galois_non_hodge_witt_rule = true

[[curve]]
label = "37a1"
coeffs = [0, 0, 1, -1, 0]
"#,
    )
    .unwrap();
    let cfg = config_path.to_str().unwrap();
    let v = json_ok(&run(&[
        "split", "--config", cfg, "--field", "zeta5", "--prime", "11", "--json",
    ]));
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 1, 1]));
    let v = json_ok(&run(&["ec-ap", "--curve", "37a1", "--config", cfg, "--prime", "5", "--json"]));
    assert_eq!(v["ap"], -2);
    // scan picks bound/workers from the config
    let cache = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        cache.path(),
        &["scan", "--config", cfg, "--field", "zeta5", "--out", "out"],
    );
    let text = stdout_ok(&out);
    assert!(text.contains("up to 4000"), "got {text:?}");

    // malformed config is exit code 2
    std::fs::write(&config_path, "bound = ").unwrap();
    let out = run(&["split", "--config", cfg, "--field", "zeta5", "--prime", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repro_reduced_bounds_pass() {
    // reduced bounds keep runtimes small; margins were checked against the
    // full-bound runs in the acceptance suite
    for (name, bound) in [
        ("zeta5", "100000"),
        ("d4-field", "200000"),
        ("fermat-2-7", "100000"),
        ("e-times-eprime", "10000"),
    ] {
        let out = run(&["repro", name, "--bound", bound]);
        let text = stdout_ok(&out);
        assert!(text.contains(&format!("repro {name}: PASS")), "{text}");
    }
    let out = run(&["repro", "unknown-example"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repro_j0_37_checks_the_claimed_prime() {
    // the two a_p evaluations at p = 18489743 dominate; a reduced bound
    // keeps the common-supersingular sweep short
    let out = run(&["repro", "j0-37", "--bound", "2000"]);
    let text = stdout_ok(&out);
    assert!(text.contains("repro j0-37: PASS"), "{text}");
    assert!(text.contains("37a1 supersingular at 18489743"), "{text}");
}
