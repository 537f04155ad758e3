use std::process::Command;

use ultrashort::cli::run;
use ultrashort::validation::CSV_COLUMNS;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("ultrashort").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bounds_table_reports_cap_and_both_constants() {
    let (code, out, _) = call(&["bounds", "--dx", "5", "--mass", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("17.4%"));
    assert!(out.contains("1.282329 meV"));
    assert!(out.contains("0.435427 meV"));
    assert!(out.contains("2.944994"));
    assert!(out.contains("printed") && out.contains("recomputed"));
}

#[test]
fn bounds_json_quarter_at_double_width() {
    let value = |dx: &str| -> serde_json::Value {
        let (code, out, _) = call(&["bounds", "--dx", dx, "--mass", "1", "--format", "json"]);
        assert_eq!(code, 0);
        serde_json::from_str(&out).unwrap()
    };
    let (a, b) = (value("5"), value("10"));
    for key in ["e_bound_paper_mev", "e_bound_recomputed_mev"] {
        let ratio = b[key].as_f64().unwrap() / a[key].as_f64().unwrap();
        assert!((ratio - 0.25).abs() < 1e-15);
    }
    assert_eq!(a["p_max_percent"], "17.4%");
}

#[test]
fn bounds_csv_has_header_and_row() {
    let (code, out, _) = call(&["bounds", "--dx", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn invalid_numerics_exit_one() {
    for args in [
        &["bounds", "--dx", "0"][..],
        &["bounds", "--dx", "-1"],
        &["bounds", "--dx", "5", "--mass", "0"],
        &["bounds", "--dx", "abc"],
        &["bounds"],
        &["frobnicate"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // depth·dx²/(ħ²/2m) = 1 at dx = 5 nm.
    let depth = 0.038_099_821_114_859_61 / 25.0;
    let well = write_file(
        &dir,
        "well.json",
        &format!(
            r#"{{"dx_nm": 5.0, "segments": [{{"width_nm": 5.0, "value_eV": {}}}]}}"#,
            -depth
        ),
    );
    for backend in ["tm", "fd"] {
        let (code, out, _) = call(&[
            "solve",
            "--potential",
            &well,
            "--mass",
            "1",
            "--backend",
            backend,
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2, "{out}");
        let z: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
        assert!((z - 0.43513).abs() < 1e-4, "{backend}: z = {z}");
    }

    let flat = write_file(
        &dir,
        "flat.json",
        r#"{"dx_nm": 2.0, "segments": [{"width_nm": 2.0, "value_eV": 0.0}]}"#,
    );
    assert_eq!(call(&["solve", "--potential", &flat]).0, 2);
    assert_eq!(
        call(&["solve", "--potential", &flat, "--backend", "fd"]).0,
        2
    );

    let bad = write_file(&dir, "bad.json", r#"{"dx_nm": 2.0, "segmentz": []}"#);
    let (code, _, err) = call(&["solve", "--potential", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("segmentz"), "{err}");

    let (code, _, err) = call(&[
        "solve",
        "--potential",
        &dir.path().join("missing.json").to_string_lossy(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.json"));
}

#[test]
fn validate_writes_documented_csv_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &std::path::Path| {
        call(&[
            "validate",
            "--family",
            "square-well",
            "--dx",
            "5",
            "--depth-range",
            "1e-4:1:log:20",
            "--mass",
            "1",
            "--out",
            out.to_str().unwrap(),
        ])
    };
    let (code, summary, _) = args(&a);
    assert_eq!(code, 0);
    assert!(summary.contains("records: 20"));
    assert!(summary.contains("z* = 0.769639"), "{summary}");
    assert_eq!(args(&b).0, 0);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());

    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_COLUMNS);
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.len() == 15));
}

#[test]
fn validate_shallow_range_and_bad_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("shallow.csv");
    let (code, summary, _) = call(&[
        "validate",
        "--dx",
        "5",
        "--depth-range",
        "1e-5:1e-4:lin:4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(summary.contains("boundary outside sweep"));

    let unwritable = dir.path().join("no/such/dir/x.csv");
    let (code, _, err) = call(&["validate", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot write"));

    assert_eq!(
        call(&[
            "validate",
            "--depth-range",
            "1:2:cubic:3",
            "--out",
            out.to_str().unwrap()
        ])
        .0,
        1
    );
}

#[test]
fn binary_forwards_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ultrashort");
    let ok = Command::new(bin)
        .args(["bounds", "--dx", "5", "--mass", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("17.4%"));
    let bad = Command::new(bin)
        .args(["bounds", "--dx", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
