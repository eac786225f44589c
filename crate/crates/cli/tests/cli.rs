use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinrevival"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(path: &Path) -> (csv::StringRecord, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().clone();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {report}"))
}

#[test]
fn evolve_sx_repeats_after_pi_over_k() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("evolve.csv");
    let p = path.to_str().unwrap();
    // 2000 samples over [0, 200] has step 200/1999; sample the period directly instead.
    let t_rep = std::f64::consts::PI / 0.05;
    let t_end = format!("{}", 2.0 * t_rep);
    stdout(&[
        "evolve",
        "--spin",
        "3/2",
        "--bz",
        "1/2",
        "--k",
        "1/20",
        "--t-end",
        &t_end,
        "--samples",
        "201",
        "--out",
        p,
    ]);
    let (header, rows) = csv_rows(&path);
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        [
            "t", "sx", "sy", "sz", "norm", "re_m+3/2", "im_m+3/2", "re_m+1/2", "im_m+1/2",
            "re_m-1/2", "im_m-1/2", "re_m-3/2", "im_m-3/2"
        ]
    );
    assert_eq!(rows.len(), 201);
    for i in 0..=100 {
        assert!((rows[i][1] - rows[i + 100][1]).abs() < 1e-9, "sample {i}");
    }
    // the period is not halved
    assert!((rows[0][1] - rows[50][1]).abs() > 0.1);
    assert!(rows.iter().all(|r| (r[4] - 1.0).abs() < 1e-12));
}

#[test]
fn evolve_reports_predicted_revival_for_exact_input() {
    let out = run(&[
        "evolve",
        "--spin",
        "3/2",
        "--bz",
        "1/2",
        "--k",
        "1/20",
        "--t-end",
        "200",
        "--samples",
        "2000",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("EVRT 1 pi hbar/K = 62.8318530718"), "{err}");
    assert!(err.contains("QRT 8 pi hbar/K = 502.654824574"), "{err}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2001);
    assert!(!text.contains('\r'));
}

#[test]
fn evolve_is_byte_deterministic() {
    let args = [
        "evolve",
        "--spin",
        "5/2",
        "--bz",
        "0.3",
        "--k",
        "0.07",
        "--state",
        "1,2i,0,-1,0.5+0.5i,3",
        "--t-end",
        "321",
        "--samples",
        "300",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn evolve_rejects_bad_input() {
    let base = ["evolve", "--spin", "1", "--bz", "1/2", "--k", "1/20"];
    let zero = [&base[..], &["--t-end", "0", "--samples", "2"]].concat();
    assert!(!run(&zero).status.success());
    let few = [&base[..], &["--t-end", "10", "--samples", "1"]].concat();
    assert!(!run(&few).status.success());
    let bad_state = [&base[..], &["--t-end", "10", "--state", "1,0"]].concat();
    let out = run(&bad_state);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("state"));
    let unwritable = [
        &base[..],
        &["--t-end", "10", "--out", "/nonexistent/dir/x.csv"],
    ]
    .concat();
    assert!(!run(&unwritable).status.success());
}

#[test]
fn spectrum_rows() {
    let half = stdout(&["spectrum", "--spin", "1/2", "--bz", "1/2", "--k", "1/20"]);
    assert_eq!(
        half.lines().filter(|l| !l.starts_with(['i', '#'])).count(),
        1
    );
    let one = stdout(&["spectrum", "--spin", "1", "--bz", "1/2", "--k", "1/20"]);
    assert_eq!(
        one.lines().filter(|l| !l.starts_with(['i', '#'])).count(),
        2
    );
    let three_half = stdout(&["spectrum", "--spin", "3/2", "--bz", "1/2", "--k", "1/20"]);
    let omegas: Vec<&str> = three_half
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(omegas, ["-0.6", "-0.5", "-0.4"]);
    assert!(three_half.ends_with("# constant_sz=0\n"));
}

#[test]
fn revival_reports() {
    let r = stdout(&["revival", "--spin", "3/2", "--n", "10", "--k", "1/20"]);
    assert_eq!(field(&r, "class"), "integer");
    assert_eq!(field(&r, "evrt"), "1 pi hbar/K = 62.8318530718");
    assert_eq!(field(&r, "qrt"), "8 pi hbar/K = 502.654824574");
    assert_eq!(field(&r, "alpha"), "8");

    let r = stdout(&["revival", "--spin", "1", "--n", "3/5", "--k", "1/20"]);
    assert_eq!(field(&r, "evrt"), "5 pi hbar/K = 314.159265359");

    let r = stdout(&["revival", "--spin", "1", "--bz", "3/100", "--k", "1/20"]);
    assert_eq!(field(&r, "n"), "3/5");

    let r = stdout(&["revival", "--spin", "3/2", "--k", "0.05", "--irrational"]);
    assert_eq!(field(&r, "evrt"), "inf");
    assert_eq!(field(&r, "qrt"), "inf");
}

#[test]
fn revival_demands_exact_input() {
    let out = run(&["revival", "--spin", "1", "--bz", "0.5", "--k", "1/20"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact"));
    assert!(
        !run(&["revival", "--spin", "1", "--bz", "1/2", "--k", "0.05"])
            .status
            .success()
    );
    assert!(!run(&["revival", "--spin", "1", "--k", "1/20"])
        .status
        .success());
    // spin 1/2 at N = 0 has no dynamics at all
    assert!(
        !run(&["revival", "--spin", "1/2", "--n", "0", "--k", "1/20"])
            .status
            .success()
    );
}

#[test]
fn sweep_integer_rows_revive_sooner() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    stdout(&[
        "sweep",
        "--spin",
        "1",
        "--k",
        "1/5",
        "--bz",
        "1/5,3/10,2/5,1/2,3/5,7/10,4/5",
        "--out",
        path.to_str().unwrap(),
    ]);
    let mut r = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        r.headers().unwrap(),
        vec!["bz", "n", "class", "evrt", "qrt", "alpha"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    let evrt = |i: usize| rows[i][3].parse::<f64>().unwrap();
    let pi_over_k = std::f64::consts::PI / 0.2;
    for i in (0..7).step_by(2) {
        assert_eq!(&rows[i][2], "integer");
        let ratio = evrt(i) / pi_over_k;
        assert!((ratio - 1.0).abs() < 1e-10 || (ratio - 2.0).abs() < 1e-10);
        for j in [i.wrapping_sub(1), i + 1] {
            if j < 7 {
                assert_eq!(&rows[j][2], "rational");
                assert!(evrt(i) < evrt(j), "row {i} vs {j}");
            }
        }
    }
    for row in &rows {
        assert!(row[3].parse::<f64>().unwrap() <= row[4].parse::<f64>().unwrap());
    }

    let single = stdout(&["sweep", "--spin", "1", "--k", "1/5", "--bz", "1/5"]);
    assert_eq!(single.lines().count(), 2);
}

#[test]
fn tunnel_reproduces_transfer_time() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("t.csv");
    let report_path = dir.path().join("r.json");
    stdout(&[
        "tunnel",
        "--spin",
        "1",
        "--bz",
        "0.1",
        "--k",
        "0.1",
        "--bx",
        "0.001",
        "--t-end",
        "10000",
        "--dt",
        "0.01",
        "--out",
        csv_path.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let obj = report.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "minima_gap",
            "ratio_mqt_over_validity",
            "ratio_q_evrt_over_mqt",
            "t_mqt_measured",
            "t_mqt_predicted",
            "t_q_evrt",
            "validity_t"
        ]
    );
    let get = |k: &str| obj[k].as_f64().unwrap();
    assert!((get("t_mqt_measured") / 2221.4 - 1.0).abs() < 0.05);
    assert!((get("ratio_q_evrt_over_mqt") / 2.0 - 1.0).abs() < 0.1);
    let (header, rows) = csv_rows(&csv_path);
    assert_eq!(header.len(), 5 + 6);
    // 10^6 steps recorded every 10th, plus the initial state
    assert_eq!(rows.len(), 100_001);
}

#[test]
fn tunnel_failures() {
    let base = ["tunnel", "--spin", "1", "--bz", "0.1", "--k", "0.1"];
    let zero = [&base[..], &["--bx", "0", "--t-end", "10"]].concat();
    assert!(!run(&zero).status.success());
    let short = [&base[..], &["--bx", "0.001", "--t-end", "100"]].concat();
    let out = run(&short);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        ["minimum", "maximum", "extremum"]
            .iter()
            .any(|f| err.contains(f)),
        "{err}"
    );
}
