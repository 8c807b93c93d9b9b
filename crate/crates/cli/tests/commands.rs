use std::fs;
use std::process::{Command, Output};

fn bour(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bour"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn list_shows_the_catalog() {
    let o = bour(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows.iter().filter(|r| r.contains(" spacelike ")).count(),
        11
    );
    assert_eq!(
        rows.iter()
            .filter(|r| r.contains(" timelike ") && !r.contains("cartesian"))
            .count(),
        6
    );
    assert!(rows
        .iter()
        .any(|r| r.contains(" 1/2 ") && r.contains("(ζ^{-3/2}, ζ)")));
    assert!(rows
        .iter()
        .any(|r| r.starts_with("T_5 ") && r.contains("r ∈ [-0.003, 0.003]")));
}

#[test]
fn eval_points() {
    let o = bour(&["eval", "--family", "spacelike", "--m", "3", "0.5", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "K: 50.5679012"));

    let o = bour(&[
        "eval",
        "--family",
        "timelike",
        "--m",
        "3",
        "--cartesian",
        "1",
        "1",
    ]);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "position: (0, 0.5, 1.33333333)"));
    assert!(stdout(&o).lines().any(|l| l == "K: -0.0625"));

    let o = bour(&["eval", "--family", "spacelike", "--m", "1/2", "-0.5", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("BranchDomain"));
}

#[test]
fn verify_single_surface() {
    let o = bour(&[
        "verify",
        "--family",
        "spacelike",
        "--m",
        "3",
        "--grid",
        "32x64",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("max|H| < 1e-6: yes"));
    assert!(text.contains("adjudication:"));

    let o = bour(&["verify", "--family", "spacelike", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ExcludedExponent"));

    let o = bour(&[
        "verify",
        "--family",
        "timelike",
        "--m",
        "3",
        "--conjugate",
        "--grid",
        "16x16",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("surface: T_3-conjugate"));
}

#[test]
fn verify_failure_exits_one() {
    // far too tight for any surface
    let o = bour(&[
        "verify",
        "--family",
        "spacelike",
        "--m",
        "3",
        "--grid",
        "8x8",
        "--tolerance",
        "1e-30",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result: FAIL"));
}

#[test]
fn verify_all_has_a_row_per_surface() {
    let o = bour(&["verify", "--all", "--grid", "8x8"]);
    let text = stdout(&o);
    let table: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.starts_with("surface "))
        .skip(1)
        .take_while(|l| !l.starts_with("passed"))
        .collect();
    assert_eq!(table.len(), 17);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
}

#[test]
fn mesh_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("b3.obj");
    let o = bour(&[
        "mesh",
        "--family",
        "spacelike",
        "--m",
        "3",
        "--format",
        "obj",
        "--grid",
        "64x64",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vertices: 4096"));
    let text = fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4096);

    let csv = dir.path().join("t4.csv");
    let o = bour(&[
        "mesh",
        "--family",
        "timelike",
        "--m",
        "4",
        "--format",
        "csv",
        "--grid",
        "16x16",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("s,t,x,y,z,K,flag"));
    for row in text.lines().skip(1) {
        let cols: Vec<&str> = row.split(',').collect();
        if cols[6] == "ok" {
            assert!(cols[5].parse::<f64>().unwrap().is_finite(), "{row}");
        }
    }

    assert_eq!(bour(&["mesh", "--m", "0"]).status.code(), Some(2));
    let o = bour(&[
        "mesh",
        "--m",
        "3",
        "--grid",
        "4x4",
        "--out",
        "/nonexistent-dir/x.obj",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("IoFailure"));
}

#[test]
fn figures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = bour(&["figure", "5", "--out", out, "--grid", "8x8"]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig05.json")).unwrap()).unwrap();
    assert_eq!(manifest["surface"], "Enneper");
    assert_eq!(manifest["domain"], "r ∈ [-1, 1], θ ∈ [0, π]");

    bour(&["figure", "20", "--out", out, "--grid", "8x8"]);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig20.json")).unwrap()).unwrap();
    assert_eq!(manifest["m"], "5");
    assert_eq!(manifest["domain"], "r ∈ [-0.003, 0.003], θ ∈ [0, π]");

    bour(&["figure", "2", "--out", out, "--grid", "8x8"]);
    for p in ["xy", "xz", "yz"] {
        assert!(dir.path().join(format!("fig02-{p}.svg")).exists());
    }

    let o = bour(&["figure", "99", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_setting() {
    let o = Command::new(env!("CARGO_BIN_EXE_bour"))
        .args([
            "verify", "--family", "timelike", "--m", "3", "--grid", "8x8",
        ])
        .env("BOUR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_bour"))
        .arg("list")
        .env("BOUR_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bour(&[]).status.code(), Some(2));
    assert_eq!(
        bour(&["verify", "--grid", "1x5", "--m", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(bour(&["eval", "--m", "3"]).status.code(), Some(2));
    assert_eq!(bour(&["--help"]).status.code(), Some(0));
}
