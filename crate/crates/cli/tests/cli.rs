use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn locdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locdim")).args(args).env_remove("LOCDIM_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_glued_triangles() {
    let o = locdim(&["gen", "--family", "gtw", "--t", "2", "--omega", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "D{c\n");
    let o = locdim(&["gen", "--family", "knr", "--n", "5", "--r", "1"]);
    assert!(o.status.success());
    assert_eq!(locdim(&["gen", "--family", "knr", "--n", "5"]).status.code(), Some(2));
    assert_eq!(locdim(&["gen", "--family", "knr", "--n", "5", "--r", "9"]).status.code(), Some(2));
}

#[test]
fn verify_flags_equality() {
    let dir = tempfile::tempdir().unwrap();
    let g24 = stdout(&locdim(&["gen", "--family", "gtw", "--t", "2", "--omega", "4"]));
    let f = write(dir.path(), "g24.g6", &g24);
    let o = locdim(&["verify", "--in", &f]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["dim_al"], 4);
    assert_eq!(rows[0]["bound"], 4);
    assert_eq!(rows[0]["checks"]["main_bound"], "pass");
    assert_eq!(rows[0]["checks"]["equality"], "yes");
}

#[test]
fn empty_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.g6", "");
    assert_eq!(locdim(&["dims", "--in", &f]).status.code(), Some(2));
    assert_eq!(locdim(&["dims", "--in", "/nonexistent.g6"]).status.code(), Some(2));
    assert_eq!(locdim(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn dims_csv() {
    let dir = tempfile::tempdir().unwrap();
    // K_5 and P_4
    let f = write(dir.path(), "g.g6", "D~{\nCh\n");
    let o = locdim(&["dims", "--in", &f, "--variants", "local,local-adj,metric,adj", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "id,n,omega,bound,dim,dim_l,dim_a,dim_al,s_faithful,s_pruned,checks,ms");
    assert!(lines[1].starts_with("D~{,5,5,,4,4,4,4,"), "{}", lines[1]);
    assert!(lines[2].starts_with("Ch,4,2,,1,1,"), "{}", lines[2]);
}

#[test]
fn construct_modes_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    // K_4 with four pendants on vertex 0
    let f = write(dir.path(), "p.g6", "G~aCC?\n");
    let o = locdim(&["construct", "--in", &f, "--mode", "faithful"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["size"], 6);
    assert_eq!(v["bound"], 5);
    assert_eq!(v["overshoot"], true);
    assert_eq!(v["valid"], true);

    let o = locdim(&["construct", "--in", &f, "--mode", "pruned", "--trace"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["size"].as_u64().unwrap() <= 3);
    assert!(v["log"]["entries"].is_array());

    let k5 = write(dir.path(), "k5.g6", "D~{\n");
    assert_eq!(locdim(&["construct", "--in", &k5]).status.code(), Some(2));
}

#[test]
fn sweep_reports_are_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let o = locdim(&["sweep", "--builtin-n", "5", "--jobs", "1", "--report", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("violations: 0"));
    let o = Command::new(env!("CARGO_BIN_EXE_locdim"))
        .args(["sweep", "--builtin-n", "5", "--report", b.to_str().unwrap()])
        .env("LOCDIM_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn sweep_random_json_is_reproducible() {
    let args = ["sweep", "--random-n", "8", "--p", "0.5", "--seed", "7", "--count", "20", "--format", "json"];
    let a = locdim(&args);
    let b = locdim(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let rows: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["id"].as_str().unwrap().starts_with("s7i")));
}

#[test]
fn sweep_corpus_with_bad_line() {
    let dir = tempfile::tempdir().unwrap();
    let mut body = String::new();
    for (t, w) in [("2", "3"), ("2", "4"), ("3", "3")] {
        body += &stdout(&locdim(&["gen", "--family", "gtw", "--t", t, "--omega", w]));
    }
    body += "not graph6 at all\n";
    let f = write(dir.path(), "c.g6", &body);
    let o = locdim(&["sweep", "--in", &f, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("equality cases: 3"), "{err}");
}

#[test]
fn counting_table() {
    let o = locdim(&["counting", "--omega", "4", "--tmax", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("10/3"));
    assert_eq!(locdim(&["counting", "--omega", "3"]).status.code(), Some(2));
}
