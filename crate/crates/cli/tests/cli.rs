use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

type Row = HashMap<String, String>;

fn read_csv(text: &str) -> Vec<Row> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            headers
                .iter()
                .map(String::from)
                .zip(r.iter().map(String::from))
                .collect()
        })
        .collect()
}

fn meta(text: &str) -> HashMap<String, f64> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .map(|l| {
            let (k, v) = l.split_once('=').unwrap();
            (k.to_string(), v.parse().unwrap())
        })
        .collect()
}

fn f(row: &Row, key: &str) -> f64 {
    row[key].parse().unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn spectrum_to(dir: &Path, name: &str, extra: &[&str]) -> String {
    let path = dir.join(name);
    let mut args = vec!["spectrum", "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = dspec(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    fs::read_to_string(path).unwrap()
}

#[test]
fn reference_ground_level() {
    let out = dspec(&[
        "spectrum",
        "--mass",
        "1",
        "--omega",
        "0.1",
        "--zeta",
        "0",
        "--k-axial",
        "0",
        "--l-min",
        "0",
        "--l-max",
        "0",
        "--n-max",
        "0",
        "--spin",
        "+1",
    ]);
    assert_eq!(code(&out), 0);
    let rows = read_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows.len(), 1);
    assert!((f(&rows[0], "E_exact") + 0.021084070185266076).abs() < 1e-12);
    assert_eq!(rows[0]["asymptotic_unreliable"], "true");
}

#[test]
fn csv_round_trip_reproduces_derived_columns() {
    let dir = tempfile::tempdir().unwrap();
    let text = spectrum_to(
        dir.path(),
        "t.csv",
        &[
            "--omega",
            "0.3",
            "--zeta",
            "0.7",
            "--k-axial",
            "1.3",
            "--mass",
            "2",
            "--l-min",
            "-2",
            "--l-max",
            "3",
            "--n-max",
            "6",
        ],
    );
    assert!(text.ends_with('\n') && !text.contains('\r'));
    let rows = read_csv(&text);
    assert_eq!(rows.len(), 6 * 2 * 7);
    for r in &rows {
        let (m, w, z, k) = (f(r, "mass"), f(r, "omega"), f(r, "zeta"), f(r, "k_axial"));
        let (l, s): (f64, f64) = (f(r, "l"), f(r, "s"));
        let rho0 = (1.0 - z * z * w * w).sqrt() / w;
        assert!(close(f(r, "rho0"), rho0, 1e-12));
        let rel = (f(r, "eta_asym") / f(r, "eta_exact") - 1.0).abs();
        assert!(close(f(r, "rel_err_eta"), rel, 1e-12));
        assert!(close(f(r, "eta_rho0"), f(r, "eta_exact") * rho0, 1e-12));
        assert!(close(f(r, "nu"), l + 0.5 * (1.0 - s) - z * k, 1e-12));
        let eta = f(r, "eta_exact");
        let e = eta * eta / (2.0 * m) + k * k / (2.0 * m) - w * (l + 0.5);
        assert!(close(f(r, "E_exact"), e, 1e-12));
        assert_eq!(r["asymptotic_unreliable"] == "true", f(r, "eta_rho0") < 5.0);
    }
    let energies: Vec<f64> = rows.iter().map(|r| f(r, "E_exact")).collect();
    assert!(energies.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn json_matches_csv() {
    let dir = tempfile::tempdir().unwrap();
    let flags = [
        "--l-min",
        "-1",
        "--l-max",
        "1",
        "--n-max",
        "3",
        "--zeta",
        "0.4",
        "--k-axial",
        "0.5",
    ];
    let csv = read_csv(&spectrum_to(dir.path(), "a.csv", &flags));
    let mut json_flags = flags.to_vec();
    json_flags.extend_from_slice(&["--format", "json"]);
    let json: serde_json::Value =
        serde_json::from_str(&spectrum_to(dir.path(), "a.json", &json_flags)).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.len());
    for (j, c) in rows.iter().zip(&csv) {
        for key in [
            "eta_exact",
            "E_exact",
            "E_asym",
            "rel_err_eta",
            "rho0",
            "nu",
        ] {
            assert_eq!(j[key].as_f64().unwrap(), f(c, key), "{key}");
        }
        assert_eq!(j["n"].as_i64().unwrap().to_string(), c["n"]);
        assert_eq!(
            j["asymptotic_unreliable"].as_bool().unwrap().to_string(),
            c["asymptotic_unreliable"]
        );
    }
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let flags = [
        "--l-min",
        "-4",
        "--l-max",
        "4",
        "--n-max",
        "8",
        "--zeta",
        "0.3",
        "--k-axial",
        "2",
    ];
    let a = spectrum_to(dir.path(), "1.csv", &flags);
    let b = spectrum_to(dir.path(), "2.csv", &flags);
    assert_eq!(a, b);
    // the worker count must not change a byte
    let single = Command::new(env!("CARGO_BIN_EXE_dspec"))
        .env("DSPEC_THREADS", "1")
        .args(["spectrum"])
        .args(flags)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(single.stdout).unwrap(), a);
}

#[test]
fn config_file_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(
        &cfg,
        r#"{"mass": 1, "omega": 0.1, "zeta": 0, "k_axial": 0, "l_min": 0, "l_max": 0, "n_max": 0, "spin": "+1", "format": "csv"}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = read_csv(&spectrum_to(dir.path(), "f.csv", &["--config", c]));
    assert_eq!(from_file.len(), 1);
    assert!((f(&from_file[0], "E_exact") + 0.021084070185266076).abs() < 1e-12);

    let overridden = read_csv(&spectrum_to(
        dir.path(),
        "o.csv",
        &["--config", c, "--omega", "0.2", "--spin=-1"],
    ));
    assert_eq!(f(&overridden[0], "omega"), 0.2);
    assert_eq!(overridden[0]["s"], "-1");

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"omgea": 0.1}"#).unwrap();
    assert_eq!(
        code(&dspec(&["spectrum", "--config", bad.to_str().unwrap()])),
        3
    );
    fs::write(&bad, "not json").unwrap();
    assert_eq!(
        code(&dspec(&["spectrum", "--config", bad.to_str().unwrap()])),
        3
    );
}

#[test]
fn exit_codes() {
    let region = dspec(&["spectrum", "--omega", "0.1", "--zeta", "12"]);
    assert_eq!(code(&region), 2);
    assert!(String::from_utf8_lossy(&region.stderr).contains("zeta*omega"));
    assert_eq!(
        code(&dspec(&["spectrum", "--config", "/nonexistent/run.json"])),
        3
    );
    assert_eq!(
        code(&dspec(&["spectrum", "--out", "/nonexistent/dir/t.csv"])),
        3
    );
    assert_eq!(code(&dspec(&["spectrum", "--mass", "-1"])), 3);
    assert_eq!(
        code(&dspec(&["spectrum", "--l-min", "2", "--l-max", "1"])),
        3
    );
    assert_eq!(code(&dspec(&["spectrum", "--spin", "3"])), 3);
    assert_eq!(code(&dspec(&["frobnicate"])), 3);
    assert_eq!(code(&dspec(&["--help"])), 0);
    assert_eq!(code(&dspec(&["verify"])), 0);
    assert_eq!(code(&dspec(&["verify", "--inject-fault"])), 1);
}

#[test]
fn sweep_rho0_column() {
    let out = dspec(&[
        "sweep", "--param", "omega", "--from", "0.05", "--to", "0.5", "--steps", "10", "--spin",
        "+1",
    ]);
    assert_eq!(code(&out), 0);
    let rows = read_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows.len(), 10);
    for r in &rows {
        assert!(close(f(r, "rho0"), 1.0 / f(r, "omega"), 1e-15));
    }
    assert_eq!(f(&rows[9], "omega"), 0.5);

    let out = dspec(&[
        "sweep", "--param", "zeta", "--from", "0", "--to", "0.9", "--steps", "4", "--omega", "1",
        "--spin", "+1",
    ]);
    let rows = read_csv(std::str::from_utf8(&out.stdout).unwrap());
    let rho0: Vec<f64> = rows.iter().map(|r| f(r, "rho0")).collect();
    assert_eq!(rho0[0], 1.0);
    assert!((rho0[3] - 0.19_f64.sqrt()).abs() < 1e-15);
    assert!(rho0.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn sweep_endpoints_match_standalone_runs() {
    let common = [
        "--l-min",
        "-1",
        "--l-max",
        "2",
        "--n-max",
        "3",
        "--zeta",
        "0.5",
        "--k-axial",
        "0.7",
    ];
    let mut args = vec![
        "sweep", "--param", "omega", "--from", "0.05", "--to", "0.3", "--steps", "7",
    ];
    args.extend_from_slice(&common);
    let out = dspec(&args);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let body: Vec<&str> = lines.collect();
    for (value, take) in [
        ("0.05", &body[..body.len() / 7]),
        ("0.3", &body[body.len() - body.len() / 7..]),
    ] {
        let mut single = vec!["spectrum", "--omega", value];
        single.extend_from_slice(&common);
        let out = dspec(&single);
        let expected = String::from_utf8(out.stdout).unwrap();
        let mut got = format!("{header}\n");
        for l in take {
            got.push_str(l);
            got.push('\n');
        }
        assert_eq!(got, expected, "endpoint omega = {value}");
    }
}

#[test]
fn sweep_crossing_the_boundary_is_rejected() {
    let out = dspec(&[
        "sweep", "--param", "zeta", "--from", "0", "--to", "12", "--steps", "7", "--omega", "0.1",
    ]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("10") && err.contains("12"), "{err}");
    assert!(!err.contains(" 8,"));
    assert!(out.stdout.is_empty());
    assert_eq!(
        code(&dspec(&[
            "sweep", "--param", "zeta", "--from", "0", "--to", "1", "--steps", "1"
        ])),
        3
    );
    assert_eq!(code(&dspec(&["sweep", "--param", "zeta"])), 3);
}

#[test]
fn wavefunction_file_reloads_normalized() {
    let dir = tempfile::tempdir().unwrap();
    for n in [0u32, 3] {
        let path = dir.path().join(format!("psi{n}.csv"));
        let out = dspec(&[
            "wavefunction",
            "--n",
            &n.to_string(),
            "--l",
            "0",
            "--spin",
            "+1",
            "--samples",
            "2048",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        let text = fs::read_to_string(&path).unwrap();
        let m = meta(&text);
        assert_eq!(m["rho0"], 10.0);
        assert_eq!(m["nu"], 0.0);
        let rows = read_csv(&text);
        let rho: Vec<f64> = rows.iter().map(|r| f(r, "rho")).collect();
        let psi: Vec<f64> = rows.iter().map(|r| f(r, "R")).collect();
        assert!(psi.last().unwrap().abs() < 1e-9);
        let changes = psi[..psi.len() - 1]
            .windows(2)
            .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
            .count();
        assert_eq!(changes, n as usize);
        // trapezoid from the origin, where rho R^2 vanishes
        let mut norm = 0.5 * rho[0] * rho[0] * psi[0] * psi[0];
        for i in 1..rho.len() {
            let a = rho[i - 1] * psi[i - 1] * psi[i - 1];
            let b = rho[i] * psi[i] * psi[i];
            norm += 0.5 * (rho[i] - rho[i - 1]) * (a + b);
        }
        assert!((norm - 1.0).abs() < 1e-6, "n={n}: {norm}");
        let eta = m["eta"];
        assert!((m["E_exact"] - (eta * eta / 2.0 - 0.05)).abs() < 1e-15);
    }
    assert_eq!(code(&dspec(&["wavefunction", "--samples", "63"])), 3);
    assert_eq!(code(&dspec(&["wavefunction", "--spin", "both"])), 3);
}

#[test]
fn ground_mode_profile_is_monotone() {
    let out = dspec(&["wavefunction", "--n", "0", "--samples", "512"]);
    let rows = read_csv(std::str::from_utf8(&out.stdout).unwrap());
    let psi: Vec<f64> = rows.iter().map(|r| f(r, "R")).collect();
    assert!(psi.windows(2).all(|w| w[1] <= w[0]));
    let (wall, inside) = psi.split_last().unwrap();
    assert!(inside.iter().all(|&v| v > 0.0));
    assert!(wall.abs() < 1e-9);
}

#[test]
fn geometry_report() {
    let out = dspec(&[
        "geometry", "--rho", "2.5", "--omega", "0.3", "--zeta", "0.7", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &json["rows"][0];
    assert!(row["structure_residual"].as_f64().unwrap() < 1e-12);
    assert!(row["tetrad_residual"].as_f64().unwrap() < 1e-14);
    let rho0 = row["rho0"].as_f64().unwrap();
    let out = dspec(&[
        "geometry",
        "--rho",
        &rho0.to_string(),
        "--omega",
        "0.3",
        "--zeta",
        "0.7",
    ]);
    let rows = read_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert!(f(&rows[0], "g_tt").abs() < 1e-14);
    assert_eq!(
        code(&dspec(&["geometry", "--rho", "0", "--omega", "0.3"])),
        3
    );
}
