use std::process::{Command, Output};

use molqubit::{classify, EncodingClass, InteractionKind, XxzCouplings, DEFAULT_TOL};

fn molqubit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_molqubit")).args(args).output().expect("run molqubit")
}

fn stdout(args: &[&str]) -> String {
    let out = molqubit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn stark_map_zero_field_rows() {
    let csv = stdout(&["stark-map", "--eta-range", "0:1:3"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("eta,N_label,M_N,energy_Be"));
    assert_eq!(lines.next(), Some("0.000000000000,0,0,0.000000000000"));
    assert!(csv.contains("0.000000000000,1,0,2.000000000000\n"));
    assert_eq!(rows(&csv).len(), 3 * 9);
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
}

#[test]
fn default_grid_has_nine_curves() {
    let csv = stdout(&["stark-map"]);
    assert_eq!(rows(&csv).len(), 121 * 9);
}

#[test]
fn elements_examples() {
    let csv = stdout(&["elements", "--encoding", "0,0:2,0", "--eta", "0"]);
    assert!(rows(&csv)[0][1..].iter().all(|v| v == "0.000000000000"));

    let csv = stdout(&["elements", "--encoding", "0,0:2,0", "--kind", "quadrupole", "--eta", "0"]);
    assert_eq!(rows(&csv)[0][3], "0.447213595500");

    for m in ["2", "-2"] {
        let csv = stdout(&["elements", "--encoding", &format!("0,0:2,{m}"), "--eta-range", "0:6:13"]);
        for row in rows(&csv) {
            assert!(row[3..].iter().all(|v| v == "0.000000000000"), "{row:?}");
        }
    }
}

#[test]
fn couplings_examples() {
    let csv = stdout(&["couplings", "--encoding", "0,0:2,0", "--eta", "0"]);
    assert_eq!(csv.lines().next(), Some("eta,J_z,J_perp,W,V,class"));
    let row = &rows(&csv)[0];
    assert!(row[..5].iter().all(|v| v == "0.000000000000"));
    assert_eq!(row[5], "0/0");

    let csv = stdout(&["couplings", "--encoding", "0,0:2,0", "--kind", "quadrupole", "--eta", "0"]);
    let row = &rows(&csv)[0];
    assert_eq!(row[1], "0.081632653061");
    assert_eq!(row[2], "2.400000000000");

    let csv = stdout(&["couplings", "--encoding", "0,0:2,-1", "--eta-range", "0.5:6:12"]);
    for row in rows(&csv) {
        assert!(row[2].parse::<f64>().unwrap() < 0.0, "{row:?}");
    }
}

#[test]
fn class_column_matches_couplings() {
    let csv = stdout(&["couplings", "--encoding", "0,0,A:1,0,A", "--eta-range", "0:3:31"]);
    for row in rows(&csv) {
        let v: Vec<f64> = row[1..5].iter().map(|x| x.parse().unwrap()).collect();
        let c = XxzCouplings::new(InteractionKind::Dipole, v[0], v[1], v[2], v[3]);
        let class: EncodingClass = classify(&c, DEFAULT_TOL).unwrap();
        assert_eq!(row[5], class.code(), "{row:?}");
    }
}

#[test]
fn quadrupole_default_grid() {
    let csv = stdout(&["couplings", "--encoding", "0,0:2,1", "--kind", "quadrupole"]);
    let r = rows(&csv);
    assert_eq!(r.len(), 201);
    assert_eq!(r[200][0], "10.000000000000");
}

#[test]
fn classify_report() {
    let text = stdout(&["classify", "--encoding", "0,0,A:0,0,B", "--eta", "1"]);
    assert!(text.contains("class: 0/0 interactionless"));
    let stanza = text.split("[classification]\n").nth(1).unwrap();
    assert!(stanza.lines().all(|l| l.contains(" = ")));
    assert!(stanza.contains("class = 0/0\n"));
    assert!(stanza.contains("Z = 0\n") && stanza.contains("X = 0\n"));

    let text = stdout(&["classify", "--encoding", "0,0,A:1,0,A", "--eta", "0"]);
    assert!(text.contains("table row: 0/1 (spin-exchange)"));
}

#[test]
fn lattice_matrix() {
    let csv = stdout(&["lattice", "--encoding", "0,0:1,0", "--eta", "1", "--positions", "0,0,0;1,0,0;2,0,0"]);
    let m: Vec<Vec<f64>> = csv.lines().map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(m.len(), 8);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), 8);
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x, m[j][i]);
        }
    }
}

#[test]
fn convert_field_unit_point() {
    let text = stdout(&["convert-field", "--dipole-debye", "1", "--be-mhz", "503.4", "--field-kv-cm", "1"]);
    let eta: f64 = text.lines().nth(1).unwrap().parse().unwrap();
    assert!((eta - 1.0).abs() < 1e-3);
}

#[test]
fn convert_field_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("krb.conf");
    std::fs::write(&path, "name = KRb\nB_e = 1113.95 MHz\nd = 0.574 debye\n").unwrap();
    let a = stdout(&["convert-field", "--config", path.to_str().unwrap(), "--field-kv-cm", "2"]);
    let b = stdout(&["convert-field", "--dipole-debye", "0.574", "--be-mhz", "1113.95", "--field-kv-cm", "2"]);
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.csv");
    let out = molqubit(&["stark-map", "--eta", "0.5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&["stark-map", "--eta", "0.5"]));
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 8] = [
        &["couplings", "--encoding", "0,0"],
        &["couplings", "--encoding", "0,0:3,4"],
        &["couplings", "--encoding", "0,0:1,0", "--kind", "octupole"],
        &["couplings", "--encoding", "0,0:1,0", "--eta-range", "2:1:5"],
        &["couplings", "--encoding", "0,0:1,0", "--eta", "-1"],
        &["couplings", "--encoding", "0,0:1,0", "--tol", "-1"],
        &["stark-map", "--bogus"],
        &["lattice", "--encoding", "0,0:1,0", "--positions", "0,0,0;0,0,0"],
    ];
    for args in cases {
        assert_eq!(molqubit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.conf");
    std::fs::write(&path, "name = dipole-only\nd = 1\nq = 0\n").unwrap();
    let p = path.to_str().unwrap();
    let out = molqubit(&["couplings", "--config", p, "--encoding", "0,0:2,0", "--kind", "quadrupole", "--eta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = molqubit(&["couplings", "--config", p, "--encoding", "0,0:2,0", "--eta", "0"]);
    assert!(out.status.success());

    std::fs::write(&path, "B_e = -3\n").unwrap();
    assert_eq!(molqubit(&["stark-map", "--config", p]).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(molqubit(&["stark-map", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn convergence_failure_exit_3() {
    let out = molqubit(&["couplings", "--encoding", "0,0:1,0", "--eta", "40", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let out = molqubit(&["classify", "--encoding", "0,0:1,0", "--eta", "40", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_nmax_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.conf");
    std::fs::write(&path, "n_max = 3\n").unwrap();
    let out = molqubit(&["couplings", "--config", path.to_str().unwrap(), "--encoding", "0,0:1,0", "--eta", "40"]);
    assert_eq!(out.status.code(), Some(3));
}
