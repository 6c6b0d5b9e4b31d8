use std::io::Cursor;

use almost_hilbert::report::{Check, Status, VerificationReport};
use almost_hilbert::sbasis::grid_io::{read_binary, read_csv, write_binary, write_csv};
use almost_hilbert::sbasis::{GridFunction, Interval};
use almost_hilbert::Error;
use num_complex::Complex64;

fn small_report() -> VerificationReport {
    let mut r = VerificationReport::new("demo", 7);
    r.push(Check::assert("alpha", 1.5e-12, 1e-10, 3).param("n", 4usize));
    r.push(Check::measured("beta", 0.5, 2));
    r.push(Check::assert("gamma", 2.0, 1.0, 1));
    r
}

fn grid() -> GridFunction {
    GridFunction::from_fn(vec![Interval::new(-0.5, 1.5)], 33, |x| Complex64::new(x[0].exp(), -x[0] / 7.0)).unwrap()
}

#[test]
fn text_report_matches_fixture() {
    let expected = include_str!("fixtures/report.txt");
    assert_eq!(small_report().to_text(), expected);
}

#[test]
fn json_report_shape() {
    let v: serde_json::Value = serde_json::from_str(&small_report().to_json()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "demo");
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
    assert_eq!(v["checks"][1]["status"], "measured");
    assert!(v["checks"][1]["tolerance"].is_null());
    assert_eq!(v["checks"][0]["params"]["n"], 4);
    assert!(v.get("duration").is_none());
}

#[test]
fn empty_report_is_valid_json() {
    let r = VerificationReport::new("empty", 0);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert!(v["checks"].as_array().unwrap().is_empty());
    assert!(r.passed());
    assert_eq!(r.to_csv().lines().count(), 1);
}

#[test]
fn csv_has_one_row_per_check() {
    let csv = small_report().to_csv();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "suite,check,status,worst_violation,tolerance,samples,params");
    assert_eq!(rows.len(), 4);
    assert!(rows[2].starts_with("demo,beta,measured,"));
    assert!(rows[3].contains(",fail,"));
}

#[test]
fn tolerance_override_flips_status() {
    let c = Check::assert("x", 1e-6, 1e-9, 1).with_tolerance(1e-3);
    assert_eq!(c.status, Status::Pass);
    let m = Check::measured("m", 1e9, 1).with_tolerance(0.0);
    assert_eq!(m.status, Status::Measured);
}

#[test]
fn grid_csv_round_trip_is_exact() {
    let g = grid();
    let mut buf = Vec::new();
    write_csv(&g, &mut buf).unwrap();
    assert_eq!(read_csv(Cursor::new(buf)).unwrap(), g);
}

#[test]
fn grid_binary_round_trip_is_exact() {
    let g = grid();
    let mut buf = Vec::new();
    write_binary(&g, &mut buf).unwrap();
    assert_eq!(buf.len(), 4 + 4 + 4 + 16 + 8 + 33 * 16);
    assert_eq!(read_binary(Cursor::new(buf)).unwrap(), g);
}

#[test]
fn grid_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.bin");
    let g = grid();
    write_binary(&g, std::fs::File::create(&path).unwrap()).unwrap();
    assert_eq!(read_binary(std::fs::File::open(&path).unwrap()).unwrap(), g);
}

#[test]
fn malformed_grids_are_rejected() {
    let g = grid();
    let mut bin = Vec::new();
    write_binary(&g, &mut bin).unwrap();
    let truncated = &bin[..bin.len() - 3];
    assert!(matches!(read_binary(Cursor::new(truncated)), Err(Error::Format(_))));
    let mut bad = bin.clone();
    bad[0] = b'X';
    assert!(matches!(read_binary(Cursor::new(bad)), Err(Error::Format(_))));
    let mut trailing = bin;
    trailing.push(0);
    assert!(matches!(read_binary(Cursor::new(trailing)), Err(Error::Format(_))));

    let mut csv = Vec::new();
    write_csv(&g, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let short: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
    assert!(read_csv(Cursor::new(short)).is_err());
    let garbled = text.replacen("re,im\n", "re,im\nfoo,bar\n", 1);
    assert!(matches!(read_csv(Cursor::new(garbled)), Err(Error::Format(_))));
    assert!(read_csv(Cursor::new("no header\n")).is_err());
}
