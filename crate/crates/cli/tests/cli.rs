use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_monopole-vdim"));
    cmd.env_remove("MONOPOLE_VDIM_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn meshes() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/meshes")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const SPHERE: &str = r#"{
  "schema": "monopole-vdim/1",
  "components": [{"charge": 1, "metric": {"sphere": {"radius": 1.0}}}],
  "alpha": -0.5
}"#;

const TORUS: &str = r#"{
  "schema": "monopole-vdim/1",
  "components": [{"genus": 1, "charge": 1, "metric": {"torus": {"lattice": [[6.283185307179586, 0.0], [0.0, 6.283185307179586]]}}}],
  "alpha": -0.3
}"#;

fn setup() -> (TempDir, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let sphere = write_config(dir.path(), "sphere.json", SPHERE);
    let torus = write_config(dir.path(), "torus.json", TORUS);
    (dir, sphere, torus)
}

#[test]
fn roots_of_the_sphere_are_integers() {
    let (_dir, sphere, _) = setup();
    let out = run(&["roots", "--config", sphere.to_str().unwrap(), "--cutoff", "3.5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let values: Vec<&str> = text.lines().skip(1).take_while(|l| l.contains(',')).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(values, ["-3", "-2", "-1", "1", "2", "3"]);
    assert!(text.contains("O topological"));
}

#[test]
fn roots_of_the_torus_include_the_golden_ratio() {
    let (_dir, _, torus) = setup();
    let out = run(&["roots", "--config", torus.to_str().unwrap(), "--cutoff", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let values: Vec<f64> = v["roots"].as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(values, [-1.0, -0.61803398875, 0.0, 0.61803398875, 1.0]);
    let line = run(&["roots", "--config", torus.to_str().unwrap(), "--cutoff", "1"]);
    let picture = stdout(&line);
    let axis = picture.lines().find(|l| l.starts_with('O')).unwrap();
    assert_eq!(axis.matches('o').count(), 2);
}

#[test]
fn empty_components_and_bad_configs_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let empty = write_config(dir.path(), "empty.json", r#"{"schema": "monopole-vdim/1", "components": []}"#);
    let out = run(&["roots", "--config", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let schema = write_config(dir.path(), "schema.json", &SPHERE.replace("monopole-vdim/1", "monopole-vdim/0"));
    assert_eq!(run(&["roots", "--config", schema.to_str().unwrap()]).status.code(), Some(2));

    let unknown = write_config(dir.path(), "unknown.json", &SPHERE.replace("\"alpha\"", "\"alfa\""));
    let out = run(&["roots", "--config", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown.json:4:"), "{}", stderr(&out));

    let cutoff = write_config(dir.path(), "cutoff.json", &SPHERE.replace("\"alpha\": -0.5", "\"root_cutoff\": 1.0"));
    assert_eq!(run(&["roots", "--config", cutoff.to_str().unwrap()]).status.code(), Some(2));

    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["vdim", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn vdim_on_sphere_and_torus() {
    let (_dir, sphere, torus) = setup();
    let out = run(&["vdim", "--config", sphere.to_str().unwrap(), "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vdim"], 4);

    let out = run(&["vdim", "--config", torus.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vdim"], 5);
    assert_eq!(v["u0_order"], 1.0);

    let out = run(&["vdim", "--config", torus.to_str().unwrap(), "--alpha", "0.3"]);
    assert!(stdout(&out).lines().any(|l| l.starts_with("vdim") && l.ends_with(" 3")), "{}", stdout(&out));
}

#[test]
fn alpha_at_a_root_exits_three() {
    let (_dir, sphere, _) = setup();
    let out = run(&["vdim", "--config", sphere.to_str().unwrap(), "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("root 1"), "{}", stderr(&out));
}

#[test]
fn missing_alpha_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", &SPHERE.replace(",\n  \"alpha\": -0.5", ""));
    assert_eq!(run(&["vdim", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn spectrum_tables() {
    let (_dir, sphere, torus) = setup();
    let out = run(&["spectrum", "--config", sphere.to_str().unwrap(), "--cutoff", "12"]);
    assert_eq!(stdout(&out), "component,eigenvalue,multiplicity\n0,0,1\n0,2,3\n0,6,5\n0,12,7\n");
    let out = run(&["spectrum", "--config", torus.to_str().unwrap(), "--cutoff", "2"]);
    assert_eq!(stdout(&out), "component,eigenvalue,multiplicity\n0,0,1\n0,1,4\n0,2,4\n");
}

#[test]
fn mesh_paths_are_relative_to_the_config() {
    let dir = TempDir::new().unwrap();
    std::fs::create_dir(dir.path().join("m")).unwrap();
    std::fs::copy(meshes().join("icosphere_2.off"), dir.path().join("m/ico.off")).unwrap();
    let body = r#"{"schema": "monopole-vdim/1", "components": [{"genus": 0, "charge": 1, "metric": {"mesh": {"path": "m/ico.off"}}}]}"#;
    let cfg = write_config(dir.path(), "mesh.json", body);
    let out = bin().current_dir("/").args(["spectrum", "--config", cfg.to_str().unwrap(), "--cutoff", "3"]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: Vec<String> = stdout(&out).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].ends_with(",3"));

    let no_genus = write_config(dir.path(), "g.json", &body.replace("\"genus\": 0, ", ""));
    assert_eq!(run(&["spectrum", "--config", no_genus.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_mesh_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.off"), "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n").unwrap();
    let body = r#"{"schema": "monopole-vdim/1", "components": [{"genus": 0, "charge": 1, "metric": {"mesh": {"path": "bad.off"}}}]}"#;
    let cfg = write_config(dir.path(), "bad.json", body);
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.off"), "{}", stderr(&out));
}

#[test]
fn output_prefix_and_csv_flag() {
    let dir = TempDir::new().unwrap();
    let body = SPHERE.replace("\"alpha\": -0.5", "\"alpha\": 0.5, \"output\": \"out/run\"");
    let cfg = write_config(dir.path(), "s.json", &body);
    let csv = dir.path().join("roots.csv");
    assert!(run(&["roots", "--config", cfg.to_str().unwrap(), "--csv", csv.to_str().unwrap()]).status.success());
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("value,multiplicity,origins\n"));
    assert!(dir.path().join("out/run.roots.csv").exists());
    assert!(run(&["vdim", "--config", cfg.to_str().unwrap()]).status.success());
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/run.vdim.json")).unwrap()).unwrap();
    assert_eq!(saved["vdim"], 4);
}

#[test]
fn json_output_is_deterministic() {
    let (_dir, _, torus) = setup();
    let a = run(&["vdim", "--config", torus.to_str().unwrap(), "--json"]);
    let b = run(&["vdim", "--config", torus.to_str().unwrap(), "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify-bps", "--points", "17", "--levels", "1", "--json"];
    let c = bin().args(args).env("MONOPOLE_VDIM_SEED", "9").output().unwrap();
    let d = bin().args(args).env("MONOPOLE_VDIM_SEED", "9").output().unwrap();
    assert!(c.status.success(), "{}", stderr(&c));
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_bps_default_run() {
    let out = run(&["verify-bps", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["grid", "h", "bogomolny_residual", "chain_residual", "weitzenbock_residual0", "coulomb_selfcheck", "convergence_rates"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let ratio = v["convergence_rates"]["bogomolny"][0].as_f64().unwrap();
    assert!((3.5..=4.5).contains(&ratio));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_bps_rejects_bad_grids_and_seeds() {
    assert_eq!(run(&["verify-bps", "--points", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify-bps", "--radius", "0.5"]).status.code(), Some(2));
    let out = bin().args(["verify-bps", "--points", "17", "--levels", "1"]).env("MONOPOLE_VDIM_SEED", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vtk_dump() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("phi.vtk");
    let out = run(&["verify-bps", "--points", "17", "--levels", "1", "--vtk", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("DIMENSIONS 17 17 17"));
    assert_eq!(text.lines().count(), 10 + 17 * 17 * 17);
}

#[test]
fn verify_clifford() {
    let out = run(&["verify-clifford"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.lines().count() >= 10);
    let five = run(&["verify-clifford", "--dim", "5", "--json", "--samples", "4"]);
    assert!(five.status.success());
    let even = run(&["verify-clifford", "--dim", "4"]);
    assert_eq!(even.status.code(), Some(2));
    assert!(stderr(&even).contains("n odd required"));
}
