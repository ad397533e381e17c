use std::io::Write;
use std::process::{Command, Output};

fn hamindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamindex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn index_reports_w_and_h() {
    // K5 as graph6, P4 as an edge list.
    let k5 = file("D~{\n");
    let p4 = file("4 3\n0 1\n1 2\n2 3\n");
    let o = hamindex(&["--format", "csv", "index", k5.path().to_str().unwrap(), p4.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "file,index,n,e,min_degree,diameter,W,H,reason");
    assert!(rows[1].ends_with(",5,10,4,1,10,10/1,"), "{}", rows[1]);
    assert!(rows[2].ends_with(",4,3,1,3,10,13/3,"), "{}", rows[2]);
}

#[test]
fn index_marks_disconnected_graphs() {
    let g = file("5 4\n0 1\n1 2\n0 2\n3 4\n");
    let o = hamindex(&["--format", "csv", "index", g.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("undefined,undefined,undefined,disconnected"));
}

#[test]
fn parse_errors_name_file_and_line() {
    let g = file("D~{\nnot graph6!\n");
    let o = hamindex(&["index", g.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(&format!("{}:2:", g.path().display())), "{err}");
}

#[test]
fn gen_examples() {
    let o = hamindex(&["--format", "json", "gen", "N:n=9,k=2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e"], 25);
    assert_eq!(v["wiener"], 47);
    assert_eq!(v["harary"], "61/2");
    let o = hamindex(&["--format", "json", "gen", "G1:n=7,i=1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e"], 15);
    assert!(v["name"].as_str().unwrap().contains("K3 v 4K1"));
    let o = hamindex(&["--format", "json", "gen", "B:n=3,k=1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e"], 7);
}

#[test]
fn gen_round_trips_through_index() {
    let o = hamindex(&["--format", "json", "gen", "Nbar:n=10,k=1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let g = file(&format!("{}\n", v["graph6"].as_str().unwrap()));
    let o = hamindex(&["--format", "json", "index", g.path().to_str().unwrap()]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[0]["wiener"], 60);
    assert_eq!(rows[0]["harary"], "75/2");
    assert_eq!(rows[0]["e"], 30);
}

#[test]
fn check_certificates() {
    // C5, Petersen, Nbar^1_10.
    let nbar = hamindex(&["--format", "json", "gen", "Nbar:n=10,k=1"]);
    let nbar: serde_json::Value = serde_json::from_slice(&nbar.stdout).unwrap();
    let g = file(&format!("Dhc\nIheA@GUAo\n{}\n", nbar["graph6"].as_str().unwrap()));
    let o = hamindex(&["--format", "json", "check", g.path().to_str().unwrap(), "--budget", "1000000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["hamiltonian"]["answer"], true);
    assert_eq!(v[0]["hamiltonian"]["cert"]["kind"], "cycle");
    assert_eq!(v[1]["hamiltonian"]["answer"], false);
    assert_eq!(v[1]["traceable"]["answer"], true);
    assert_eq!(v[2]["traceable"]["answer"], false);
    assert_eq!(v[2]["traceable"]["cert"]["kind"], "cut_witness");
}

#[test]
fn budget_env_is_honoured() {
    let g = file("IheA@GUAo\n");
    let o = Command::new(env!("CARGO_BIN_EXE_hamindex"))
        .args(["check", g.path().to_str().unwrap()])
        .env("HAMINDEX_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let args = ["--format", "json", "verify", "dense-traceable", "--n", "4..7"];
    let a = hamindex(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = hamindex(&["--jobs", "2", "--format", "json", "verify", "dense-traceable", "--n", "4..7"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[2]["theorem"], "dense-traceable");
    // The three-graph list misses K_{2,4} at n = 6: a violation.
    let o = hamindex(&["verify", "wiener-traceable", "--n", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_out_of_range_needs_exploratory() {
    let o = hamindex(&["verify", "edge-hamiltonian-min-degree", "--n", "9", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = hamindex(&["verify", "edge-hamiltonian-min-degree", "--n", "9", "--k", "1", "--exploratory"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("true"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hamindex(&["verify", "Thm4.3", "--n", "11"]).status.code(), Some(1));
    assert_eq!(hamindex(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hamindex(&["gen", "Q:n=3"]).status.code(), Some(1));
    assert_eq!(hamindex(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_and_audit() {
    let o = hamindex(&["--format", "json", "search", "min-wiener/bipartite-non-hamiltonian", "--n", "3", "--k", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reference"]["value"], 25);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("audit.json");
    let o = hamindex(&["--format", "json", "--out", out.to_str().unwrap(), "audit"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["members"].as_array().unwrap().len(), 30);
    assert!(!v["findings"].as_array().unwrap().is_empty());
}
