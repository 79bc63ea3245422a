use std::fs;
use std::process::{Command, Output};

fn wigfid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wigfid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wigfid(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Header and numeric rows of a CSV table, metadata dropped.
struct Csv {
    meta: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Csv {
        let (meta, body): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.starts_with('#'));
        let split = |l: &str| l.split(',').map(str::to_string).collect::<Vec<_>>();
        Csv {
            meta: meta.into_iter().map(str::to_string).collect(),
            header: split(body[0]),
            rows: body[1..].iter().map(|l| split(l)).collect(),
        }
    }

    fn col(&self, name: &str) -> usize {
        self.header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name}"))
    }

    fn num(&self, row: usize, name: &str) -> f64 {
        self.rows[row][self.col(name)].parse().unwrap()
    }

    fn rows_where(&self, name: &str, value: f64) -> Vec<usize> {
        (0..self.rows.len()).filter(|&r| self.num(r, name) == value).collect()
    }
}

#[test]
fn default_fidelity_covers_every_field_and_agrees_with_quadrature() {
    let csv = Csv::parse(&stdout(&["fidelity", "--quad-order", "8"]));
    assert_eq!(csv.header, ["B0", "τ", "F_closed", "F_quad", "F_printed", "abs_diff"]);
    assert_eq!(csv.rows.len(), 4 * 201);
    for b in [0.0, 0.1, 0.5, 1.0] {
        assert_eq!(csv.rows_where("B0", b).len(), 201);
    }
    for r in 0..csv.rows.len() {
        assert!(csv.num(r, "abs_diff") <= 1e-6);
        assert!(!csv.rows[r][csv.col("F_printed")].is_empty());
    }
    assert!(csv.meta.iter().any(|m| m == "# entropy_convention_tag = RAW_BOX"));
    assert!(csv.meta.iter().any(|m| m.starts_with("# epsilon_12 = +1")));
    assert!(csv
        .meta
        .iter()
        .any(|m| m.starts_with("# fidelity_variant = exact flow")));
}

#[test]
fn free_particle_fidelity_returns_to_one_after_half_a_cyclotron_period() {
    // ω = 0.25: period π/ω = 4π
    let period = 4.0 * std::f64::consts::PI;
    let end = format!("{}", 2.0 * period);
    let csv = Csv::parse(&stdout(&[
        "fidelity",
        "--system",
        "free",
        "--b0",
        "0.5",
        "--t-end",
        &end,
        "--t-steps",
        "9",
    ]));
    for r in [0, 4, 8] {
        assert!((csv.num(r, "F_closed") - 1.0).abs() < 1e-10);
    }
    assert!(csv.num(2, "F_closed") < 0.5);
    assert!(csv.rows.iter().all(|row| row[csv.col("F_printed")].is_empty()));
}

#[test]
fn well_fidelity_falls_with_field() {
    let csv = Csv::parse(&stdout(&[
        "fidelity",
        "--system",
        "gqw-b",
        "--t-end",
        "1",
        "--t-steps",
        "5",
    ]));
    for r in 1..5 {
        let at = |b: f64| csv.num(csv.rows_where("B0", b)[r], "F_closed");
        assert!(at(0.0) > at(0.1) && at(0.1) > at(0.5) && at(0.5) > at(1.0));
    }
    // the field-free baseline coincides with the ballistic system
    let ballistic = Csv::parse(&stdout(&[
        "fidelity",
        "--system",
        "gqw",
        "--t-end",
        "1",
        "--t-steps",
        "5",
    ]));
    for r in 0..5 {
        assert!((ballistic.num(r, "F_closed") - csv.num(r, "F_closed")).abs() < 1e-12);
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.{format}"))).collect();
        for p in &paths {
            let out = wigfid(&[
                "fidelity",
                "--t-steps",
                "21",
                "--format",
                format,
                "--out",
                p.to_str().unwrap(),
                "--quad-order",
                "8",
            ]);
            assert!(out.status.success());
            assert!(out.stdout.is_empty());
        }
        let a = fs::read(&paths[0]).unwrap();
        let b = fs::read(&paths[1]).unwrap();
        assert!(!a.is_empty());
        // the echoed `out` differs, everything else must match
        let strip = |bytes: &[u8]| {
            String::from_utf8(bytes.to_vec())
                .unwrap()
                .lines()
                .filter(|l| !l.contains("run0") && !l.contains("run1"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(&a), strip(&b));
    }
}

#[test]
fn json_carries_config_and_rows() {
    let text = stdout(&["spectrum", "--b0", "1", "--levels", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["system"], "ho");
    assert_eq!(v["columns"][3], "energy");
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn oscillator_levels_split_by_twice_the_coupling() {
    // B0 = 1 gives ω = 0.5
    let csv = Csv::parse(&stdout(&["spectrum", "--b0", "1", "--omega0", "1", "--levels", "1"]));
    let level = |n1: f64, n2: f64| {
        let r = (0..csv.rows.len())
            .find(|&r| csv.num(r, "n1") == n1 && csv.num(r, "n2") == n2)
            .unwrap();
        csv.num(r, "energy")
    };
    assert!((level(1.0, 0.0) - level(0.0, 1.0) - 1.0).abs() < 1e-10);
}

#[test]
fn well_and_landau_spectra() {
    let csv = Csv::parse(&stdout(&["spectrum", "--system", "gqw", "--levels", "3"]));
    assert_eq!(csv.rows.len(), 3);
    assert!((csv.num(0, "energy") - 2.945_830_743).abs() < 1e-8);
    let csv = Csv::parse(&stdout(&["spectrum", "--system", "free", "--b0", "1", "--levels", "2"]));
    let e: Vec<f64> = (0..3).map(|r| csv.num(r, "energy")).collect();
    assert_eq!(e, vec![0.5, 1.5, 2.5]);
}

#[test]
fn ncmap_auxiliary_parameter() {
    let csv = Csv::parse(&stdout(&[
        "ncmap", "--theta", "0.2", "--eta", "0.3", "--mu", "2,1", "--nu", "0.25",
    ]));
    assert_eq!(csv.rows.len(), 2);
    assert_eq!(csv.num(0, "s"), 1.0);
    assert_eq!(csv.num(1, "s"), 3.0);
    assert!((csv.num(0, "B0") - 0.5).abs() < 1e-12);
    assert_eq!(csv.rows[0][csv.col("invertible")], "true");
    let singular = Csv::parse(&stdout(&["ncmap", "--theta", "2", "--eta", "0.5"]));
    assert_eq!(singular.rows[0][singular.col("invertible")], "false");
}

#[test]
fn trajectory_starts_at_the_initial_point_and_keeps_its_energy() {
    let csv = Csv::parse(&stdout(&[
        "trajectory",
        "--system",
        "gqw-b",
        "--b0",
        "0.5",
        "--x0",
        "0.3",
        "--y0",
        "-1.5",
        "--px0",
        "2",
        "--py0",
        "0.25",
    ]));
    assert_eq!(csv.num(0, "τ"), 0.0);
    assert_eq!(
        [csv.num(0, "x"), csv.num(0, "y"), csv.num(0, "px"), csv.num(0, "py")],
        [0.3, -1.5, 2.0, 0.25]
    );
    let e0 = csv.num(0, "energy");
    for r in 0..csv.rows.len() {
        assert!((csv.num(r, "energy") - e0).abs() < 1e-9 * e0.abs().max(1.0));
    }
}

#[test]
fn entropy_table_is_tagged_with_its_convention() {
    let csv = Csv::parse(&stdout(&["entropy", "--system", "free", "--b0", "0,0.1,0.5"]));
    assert_eq!(csv.rows.len(), 3);
    assert!(csv.rows.iter().all(|r| r[csv.col("convention")] == "RAW_BOX"));
    assert_eq!(csv.num(0, "entropy"), 0.0);
    assert!(csv.num(2, "entropy") > csv.num(1, "entropy"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, "# Landau levels\nsystem = free\nb0 = 0.2, 0.4\nlevels = 1\n").unwrap();
    let csv = Csv::parse(&stdout(&["spectrum", "--config", path.to_str().unwrap(), "--b0", "1"]));
    assert!(csv.meta.iter().any(|m| m == "# system = free"));
    assert!(csv.meta.iter().any(|m| m == "# b0 = 1"));
    assert_eq!(csv.rows.len(), 2);
}

#[test]
fn configuration_errors_exit_with_two() {
    let out = wigfid(&["fidelity", "--mass", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_RANGE at --mass"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    fs::write(&path, "mass = 1\nmomentum = 3\n").unwrap();
    let out = wigfid(&["fidelity", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E_PARSE at line 2") && err.contains("momentum"), "{err}");

    let out = wigfid(&["fidelity", "--system", "free", "--fidelity-form", "paper"]);
    assert_eq!(out.status.code(), Some(2));

    let out = wigfid(&["fidelity", "--t-steps", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_three() {
    let out = wigfid(&[
        "entropy",
        "--system",
        "free",
        "--b0",
        "0",
        "--entropy-convention",
        "normalized",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_NUMERIC"));
}

#[test]
fn printed_form_matches_its_own_column() {
    let csv = Csv::parse(&stdout(&[
        "fidelity",
        "--fidelity-form",
        "paper",
        "--t-steps",
        "41",
        "--quad-order",
        "8",
    ]));
    for r in 0..csv.rows.len() {
        assert!((csv.num(r, "F_closed") - csv.num(r, "F_printed")).abs() < 1e-10);
    }
    assert!(csv.meta.iter().any(|m| m.contains("printed oscillator form")));
}
