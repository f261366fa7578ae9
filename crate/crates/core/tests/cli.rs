//! End-to-end behaviour of the `pauli-discrim` command line.

use std::process::Command;

use pauli_discrimination::cli;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("pauli-discrim").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

const COPLANAR: [&str; 4] = ["--rates1", "1,1,0", "--rates2", "0.2,0.2,0"];

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pauli-discrim");
    let ok = Command::new(bin)
        .args(["curve", "--rates1", "0,0,1", "--rates2", "0,0,0.25"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin)
        .args(["curve", "--rates1", "0,0"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let degenerate = Command::new(bin)
        .args(["scenario", "same_axis_dephasing", "1", "1"])
        .output()
        .unwrap();
    assert_eq!(degenerate.status.code(), Some(2));
}

#[test]
fn curve_csv_layout() {
    let (code, out, _) = run(&[
        "curve", "--rates1", "0,0,1", "--rates2", "0,0,0.25", "--t-max", "4", "--points", "50",
    ]);
    assert_eq!(code, 0);
    assert!(!out.contains('\r'));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,p_no_ent,p_ent"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 50);
    assert!((rows[49][0] - 4.0).abs() < 1e-12);
    // same-axis dephasing: no advantage at any time
    assert!(rows.iter().all(|r| r[1] == r[2]));
}

#[test]
fn first_row_near_zero_is_one_half() {
    let (_, out, _) = run(&["curve", "--t-min", "1e-12", "--points", "3"]
        .iter()
        .copied()
        .chain(COPLANAR)
        .collect::<Vec<_>>());
    let first: Vec<f64> = out
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((first[1] - 0.5).abs() < 1e-10 && (first[2] - 0.5).abs() < 1e-10);
}

#[test]
fn csv_and_json_agree_bitwise() {
    let base: Vec<&str> = ["curve", "--points", "37", "--spacing", "linear"]
        .iter()
        .copied()
        .chain(COPLANAR)
        .collect();
    let (_, csv, _) = run(&base);
    let v = json(&[base.as_slice(), &["--format", "json"]].concat());
    let cols = [
        floats(&v["times"]),
        floats(&v["p_no_ent"]),
        floats(&v["p_ent"]),
    ];
    for (i, line) in csv.lines().skip(1).enumerate() {
        for (j, cell) in line.split(',').enumerate() {
            assert_eq!(cell.parse::<f64>().unwrap().to_bits(), cols[j][i].to_bits());
        }
    }
    assert_eq!(v["config"]["spacing"], "linear");
    // coplanar: entanglement strictly better at every t > 0
    assert!(cols[2].iter().zip(&cols[1]).all(|(e, s)| e < s));
}

#[test]
fn json_reserialises_identically() {
    let (_, out, _) = run(&["optimize", "--rates1", "1,1,1", "--rates2", "0.2,0.2,0.2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    let t: Vec<f64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["t_star"].as_f64().unwrap())
        .collect();
    assert!((t[0] - 0.502_949_347_635_656_4).abs() < 1e-9 && (t[1] - t[0]).abs() < 1e-9);
}

#[test]
fn optimize_reports_infinity_and_ties() {
    let v = json(&["optimize", "--rates1", "0,0,1", "--rates2", "0.5,0,0"]);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["t_star"], "infinity");
        assert_eq!(r["p_star"].as_f64(), Some(0.25));
    }
    let v = json(&[&["optimize", "--mode", "separable"], &COPLANAR[..]].concat());
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["minima"].as_array().unwrap().len(), 2);
}

#[test]
fn config_file_matches_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "# coplanar pair\nrates1 = 1,1,0\nrates2=0.2,0.2,0\nt_max = 3\npoints=20\n",
    )
    .unwrap();
    let path = path.to_str().unwrap();
    let (_, from_file, _) = run(&["curve", "--config", path]);
    let (_, from_flags, _) =
        run(&[&["curve", "--t-max", "3", "--points", "20"], &COPLANAR[..]].concat());
    assert_eq!(from_file, from_flags);
    let (_, overridden, _) = run(&["curve", "--config", path, "--points", "5"]);
    assert_eq!(overridden.lines().count(), 6);
    std::fs::write(dir.path().join("bad.conf"), "colour = blue\n").unwrap();
    let bad = dir.path().join("bad.conf");
    assert_eq!(run(&["curve", "--config", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let (code, stdout, _) =
        run(&[&["curve", "--out", path.to_str().unwrap()], &COPLANAR[..]].concat());
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("t,p_no_ent,p_ent\n"));
}

#[test]
fn gnuplot_script_inlines_data() {
    let (code, out, _) = run(&[&["curve", "--gnuplot", "--points", "10"], &COPLANAR[..]].concat());
    assert_eq!(code, 0);
    assert!(out.starts_with("$data << EOD\n"));
    assert_eq!(out.lines().take_while(|l| *l != "EOD").count(), 11);
    assert!(out.contains("plot $data"));
}

#[test]
fn scenario_cross_check() {
    let v = json(&["scenario", "coplanar", "1", "0.2"]);
    assert!((v["solution"]["p_star_ent"].as_f64().unwrap() - 0.308).abs() < 1e-3);
    for key in ["p_no_ent", "p_ent"] {
        assert!(v["deviation"][key].as_f64().unwrap() < 1e-9);
    }
    for key in ["t_no_ent", "t_ent"] {
        assert!(v["deviation"][key].as_f64().unwrap() < 1e-6);
    }
    let v = json(&["scenario", "depol_vs_dephasing", "1", "0.5"]);
    assert_eq!(v["solution"]["advantage_regime"], false);
    assert_eq!(v["solution"]["t_star_ent"], "infinity");
    assert_eq!(run(&["scenario", "helical", "1", "0.5"]).0, 2);
}

#[test]
fn threshold_is_deterministic() {
    let (code, first, _) = run(&["threshold", "--tol", "5e-4"]);
    assert_eq!(code, 0);
    let (_, second, _) = run(&["threshold", "--tol", "5e-4"]);
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 0.3785).abs() <= 5e-4);
    let fine = json(&["threshold", "--tol", "1e-5"]);
    let bracket = floats(&fine["bracket"]);
    assert!(bracket[1] - bracket[0] <= 1e-5);
    assert_eq!(
        fine["iterations"].as_u64().unwrap() as usize,
        fine["trace"].as_array().unwrap().len()
    );
}

#[test]
fn verify_passes_fails_and_repeats() {
    let small = [
        "verify",
        "--pairs",
        "20",
        "--grid",
        "2000",
        "--samples",
        "100",
        "--seed",
        "7",
    ];
    let (code, first, _) = run(&small);
    assert_eq!(code, 0, "{first}");
    assert!(first.lines().skip(2).all(|l| l.contains("PASS")));
    let (_, second, _) = run(&small);
    assert_eq!(first, second);
    let (code, out, err) = run(&[&small[..], &["--tol", "0"]].concat());
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    assert!(err.contains("verification failed: "));
}
