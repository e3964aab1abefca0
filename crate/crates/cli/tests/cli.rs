use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cvf(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvf"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn cvf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvf(&["verify", "--level", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).contains("FAIL"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["level"], 3);
    assert_eq!(report["config"]["bump"], "quintic-plateau");
    assert_eq!(report["version"], "0.1.0");
    let first = &report["residuals"][0];
    for key in ["selection", "test_function_id", "grid_level", "residual", "closed_form"] {
        assert!(!first[key].is_null(), "{key}");
    }
}

#[test]
fn zero_tolerance_fails_with_check_name() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvf(&["verify", "--level", "2", "--tol", "0"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("boundary_w"));
}

#[test]
fn noncompliant_bump_fails_at_bump_suite() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvf(&["verify", "--bump", "steep"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`bump`"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["first_failure"], "bump");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cvf(&["verify", "--bump", "gaussian"], dir.path()).status.code(), Some(2));
    assert_eq!(cvf(&["verify", "--level", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(cvf(&["verify", "--level", "many"], dir.path()).status.code(), Some(2));
    assert_eq!(cvf(&["converge", "--levels", "3"], dir.path()).status.code(), Some(2));
    assert_eq!(cvf(&["export-mesh", "--window", "0"], dir.path()).status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    fs::write(&file, "x").unwrap();
    let o = cvf(&["enumerate"], &file.join("sub"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_prints_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvf(&["enumerate"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("boundary-free:")).count(), 4);
    assert_eq!(text.lines().last(), Some("components: Z1, Z2; unique decomposition"));
    assert!(dir.path().join("classification.json").exists());
}

#[test]
fn export_mesh_has_six_objects_with_planar_heights() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvf(&["export-mesh", "--level", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let obj = fs::read_to_string(dir.path().join("sheets.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("o ")).count(), 6);
    let mut checked = 0;
    let mut current = String::new();
    for line in obj.lines() {
        if let Some(name) = line.strip_prefix("o ") {
            current = name.to_string();
        } else if let Some(v) = line.strip_prefix("v ") {
            if current != "sheet_1" {
                continue;
            }
            let c: Vec<f64> = v.split(' ').map(|t| t.parse().unwrap()).collect();
            if c[0] > 0.0 && c[1].abs() > c[0] + 1e-9 {
                assert!((c[2].abs() - c[0] / 3f64.sqrt()).abs() < 1e-8, "{v}");
                assert_eq!(c[2].signum(), c[1].signum());
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn converge_writes_decreasing_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvf(&["converge", "--levels", "2,3", "--level", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("converge.csv")).unwrap();
    let errors: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(errors.len(), 2);
    assert!(errors[1] < errors[0]);
    let cutoff = fs::read_to_string(dir.path().join("cutoff.csv")).unwrap();
    assert_eq!(cutoff.lines().count(), 5);
}

#[test]
fn reports_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["verify", "--level", "2", "--tol", "1e-2"];
    assert_eq!(cvf(&args, a.path()).status.code(), Some(0));
    assert_eq!(cvf(&args, b.path()).status.code(), Some(0));
    let read = |d: &Path| fs::read(d.join("verify.json")).unwrap();
    let (ra, rb) = (read(a.path()), read(b.path()));
    // The output directory is part of the embedded config.
    let strip = |r: Vec<u8>, d: &Path| String::from_utf8(r).unwrap().replace(&*d.to_string_lossy(), "OUT");
    assert_eq!(strip(ra, a.path()), strip(rb, b.path()));
}
