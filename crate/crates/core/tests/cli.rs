use std::fs;
use std::process::{Command, Output};

fn semireg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semireg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn edge_set(text: &str) -> (String, Vec<String>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default().to_string();
    (header, lines.map(str::to_string).collect())
}

#[test]
fn build_writes_edges_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g1.txt");
    let o = semireg(&["build", "-m", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("108 162"));
    assert_eq!(text.lines().count(), 163);
    let labels: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("g1.txt.labels.json")).unwrap()).unwrap();
    assert_eq!(labels["labels"].as_array().unwrap().len(), 108);
    assert_eq!(labels["m"], 1);

    // identical invocations give identical bytes
    let again = dir.path().join("again.txt");
    assert!(semireg(&["build", "-m", "1", "--out", again.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn build_m2_to_stdout() {
    let o = semireg(&["build", "-m", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("1944 2916"));
}

#[test]
fn bad_parameters_exit_with_usage_code() {
    let o = semireg(&["build", "-m", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
    assert_eq!(semireg(&["build"]).status.code(), Some(2));
    assert_eq!(semireg(&["verify", "-m", "1", "--lemma", "nonsense"]).status.code(), Some(2));
    assert_eq!(semireg(&["ppd", "1", "3"]).status.code(), Some(2));
}

#[test]
fn ppd_output() {
    assert_eq!(stdout(&semireg(&["ppd", "2", "6"])).trim(), "none (exception: 2^6−1)");
    assert_eq!(stdout(&semireg(&["ppd", "2", "4"])).trim(), "5");
    let json: serde_json::Value = serde_json::from_str(&stdout(&semireg(&["ppd", "7", "2", "--json"]))).unwrap();
    assert_eq!(json["exception"], "mersenne_f2");
    assert_eq!(json["exists"], false);
}

#[test]
fn quotient_by_v_orbits_is_a_square() {
    let o = semireg(&["quotient", "-m", "1", "--by", "V"]);
    assert!(o.status.success());
    let (header, edges) = edge_set(&stdout(&o));
    assert_eq!(header, "4 4");
    assert_eq!(edges, ["0 1", "0 3", "1 2", "2 3"]);
}

#[test]
fn quotient_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c6.txt");
    fs::write(&g, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    let p = dir.path().join("blocks.txt");
    fs::write(&p, "0 3\n1 4\n2 5\n").unwrap();
    let o = semireg(&["quotient", "--input", g.to_str().unwrap(), "--partition", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(edge_set(&stdout(&o)).0, "3 3");
    fs::write(&p, "0 3\n1 4\n").unwrap();
    let o = semireg(&["quotient", "--input", g.to_str().unwrap(), "--partition", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cayley_from_permutations_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let perm = dir.path().join("c6.perm");
    fs::write(&perm, "1 2 3 4 5 0\n").unwrap();
    let o = semireg(&["cayley", "--group", perm.to_str().unwrap(), "--conn", "1,5"]);
    assert!(o.status.success());
    let (header, edges) = edge_set(&stdout(&o));
    assert_eq!(header, "6 6");
    assert_eq!(edges, ["0 1", "0 5", "1 2", "2 3", "3 4", "4 5"]);

    let table = dir.path().join("c4.table");
    fs::write(&table, "table 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let o = semireg(&["cayley", "--group", table.to_str().unwrap(), "--conn", "1,3"]);
    assert_eq!(edge_set(&stdout(&o)).0, "4 4");

    // a connection set that is not inverse-closed is rejected
    let o = semireg(&["cayley", "--group", perm.to_str().unwrap(), "--conn", "1"]);
    assert_ne!(o.status.code(), Some(0));
    fs::write(&perm, "1 2 x\n").unwrap();
    assert_eq!(semireg(&["cayley", "--group", perm.to_str().unwrap(), "--conn", "1"]).status.code(), Some(2));
}

#[test]
fn verify_selected_lemmas() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = semireg(&["verify", "-m", "1", "--lemma", "figure1", "--out", cert.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(json["lemma_results"]["figure1"]["status"], "pass");
    assert_eq!(json["vertex_count"], 108);

    let o = semireg(&["verify", "-m", "2", "--all", "--json"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["aut_order"], 3888);
    assert_eq!(json["semiregular_spectrum"], serde_json::json!([1, 2, 3, 6]));
}

#[test]
fn verify_reports_failures_with_exit_code_one() {
    // Aut(Γ_1) is twice as large as G, so the automorphism check fails
    let o = semireg(&["verify", "-m", "1", "--all"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4"));
    assert!(stdout(&o).contains("aut_order: 432"));
}

#[test]
fn verify_m3_skips_what_does_not_fit() {
    let o = semireg(&["verify", "-m", "3", "--lemma", "semireg,4", "--json"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["lemma_results"]["semireg"]["status"], "pass");
    assert_eq!(json["lemma_results"]["4"]["status"], "skipped");
    assert!(json["lemma_results"]["4"]["reason"].as_str().unwrap().starts_with("capacity"));
}
