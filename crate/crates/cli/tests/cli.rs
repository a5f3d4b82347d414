use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgforge")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("dgforge-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn residue_field_of_dual_numbers_is_not_perfect() {
    let out = run(&["perfect", "--algebra", &data("dual_numbers.dga"), "--module", &data("k.dgm"), "--stages", "8"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("periodic"));
}

#[test]
fn module_file_names_its_algebra() {
    let out = run(&["betti", "--module", &data("k.dgm"), "--stages", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn koszul_json_report() {
    let out = run(&["koszul", "--algebra", "builtin:dual_numbers", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "koszul");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["inputs"][0]["source"], "builtin:dual_numbers");
    assert!(v.get("wall_time").is_none());
}

#[test]
fn selftest_passes() {
    assert_eq!(code(&run(&["selftest"])), 0);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["resolve", "--window", "oops"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn missing_unit_is_an_input_error() {
    let f = temp_file("nounit.dga", "dgforge/1 algebra\nfield: Q\nbasis: 1:0, x:0\n");
    let out = run(&["validate", "--algebra", &f]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stdout).contains("unit required"));
}

#[test]
fn degree_mismatch_names_the_pair() {
    let f = temp_file("deg.dga", "dgforge/1 algebra\nfield: Q\nbasis: 1:0, x:1, y:0\nunit: 1\nmul:\n  x*x = y\n");
    let out = run(&["validate", "--algebra", &f, "--json"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("x·x"), "{text}");
}

#[test]
fn path_algebra_file_validates() {
    assert_eq!(code(&run(&["validate", "--algebra", &data("a2_path.dga")])), 0);
}
