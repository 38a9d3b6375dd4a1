use std::path::Path;
use std::process::{Command, Output};

fn stasurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stasurf")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn analyze_catenoid() {
    let o = stasurf(&["analyze", "gallery:catenoid-r3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["classification"]["class"]["type"], "elliptic");
}

#[test]
fn coincident_gauss_maps_fail_regularity() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "flat.json",
        r#"{"name": "coincident", "psi1": {"num": [[0, 0], [1, 0]]}, "psi2": {"num": [[0, 0], [1, 0]]},
            "dh": {"num": [[1, 0]]}, "domain": {"kind": "Plane"}}"#,
    );
    let o = stasurf(&["analyze", &path]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["regularity"]["pass"], false);
}

#[test]
fn unknown_field_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\n  \"name\": \"x\",\n  \"psi_one\": 1\n}\n");
    let o = stasurf(&["analyze", &path]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(code(&stasurf(&["analyze"])), 2);
    assert_eq!(code(&stasurf(&["sample", "gallery:enneper-like", "--grid", "3by3"])), 2);
    assert_eq!(code(&stasurf(&["analyze", "gallery:enneper-like", "--format", "obj"])), 2);
    assert_eq!(code(&stasurf(&["analyze", "gallery:no-such-entry"])), 2);
}

#[test]
fn sample_enneper_csv() {
    let o = stasurf(&["sample", "gallery:enneper-like"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 21 * 21);
}

#[test]
fn sample_formats() {
    let obj = String::from_utf8(stasurf(&["sample", "gallery:enneper-like", "--grid", "3x3", "--format", "obj"]).stdout).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 9);
    let json = stasurf(&["sample", "gallery:enneper-like", "--grid", "3x3", "--format", "json"]);
    assert!(serde_json::from_slice::<serde_json::Value>(&json.stdout).is_ok());
}

#[test]
fn sampling_only_a_puncture_warns() {
    let o = stasurf(&["sample", "gallery:catenoid-r3", "--grid", "1x1", "--domain-window", "0,0,0,0"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 1);
}

#[test]
fn share_identical_surfaces() {
    let o = stasurf(&["share", "gallery:parabolic-graph", "gallery:parabolic-graph"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["shared"]["identical"], true);
}

#[test]
fn gallery_list_names_every_entry() {
    let o = stasurf(&["gallery", "list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 9);
}

#[test]
fn gallery_run_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = stasurf(&["gallery", "run", "--out", d.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 27);
    for n in names {
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
}
