use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::io::Write;

use serde_json::Value;

fn homlor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlor"))
        .current_dir(dir)
        .env("HOMLOR_THREADS", "1")
        .args(args)
        .output()
        .expect("spawn homlor")
}

fn with_stdin(dir: &Path, args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_homlor"))
        .current_dir(dir)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn homlor");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stdout);
    serde_json::from_str(text.lines().next().expect("one line")).expect("json")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn fixtures() -> tempfile::TempDir {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    fs::write(p.join("k3.json"), r#"{"n":3,"weights":[["0","1","1"],["1","0","1"],["1","1","0"]]}"#).unwrap();
    fs::write(p.join("edge.json"), r#"{"n":2,"weights":[["0","1"],["1","0"]]}"#).unwrap();
    fs::write(p.join("g0.json"), r#"{"n":3,"weights":[["0","0","1"],["0","0","2"],["1","2","0"]]}"#).unwrap();
    let tt = r#"{"n":6,"weights":[
        ["0","1","1","0","0","0"],["1","0","1","0","0","0"],["1","1","0","0","0","0"],
        ["0","0","0","0","1","1"],["0","0","0","1","0","1"],["0","0","0","1","1","0"]]}"#;
    fs::write(p.join("two_triangles.json"), tt).unwrap();
    fs::write(p.join("k5.json"), {
        let row = |i: usize| (0..5).map(|j| if i == j { "\"0\"" } else { "\"1\"" }).collect::<Vec<_>>().join(",");
        format!(r#"{{"n":5,"weights":[{}]}}"#, (0..5).map(|i| format!("[{}]", row(i))).collect::<Vec<_>>().join(","))
    })
    .unwrap();
    fs::write(p.join("c4.g6"), "Cl\n").unwrap();
    fs::write(p.join("k3.g6"), "Bw\n").unwrap();
    fs::write(p.join("k4.g6"), "C~\n").unwrap();
    fs::write(p.join("k33.g6"), "EFz_\n").unwrap();
    d
}

#[test]
fn hom_examples() {
    let d = fixtures();
    let p = d.path();
    assert_eq!(json(&homlor(p, &["hom", "--H", "k3.json", "--G", "k3.json"]))["hom"], "6");
    assert_eq!(json(&homlor(p, &["hom", "--H", "c4.g6", "--G", "k3.json"]))["hom"], "18");
    assert_eq!(json(&homlor(p, &["hom", "--H", "edge.json", "--G", "g0.json"]))["hom"], "6");
    assert_eq!(json(&homlor(p, &["hom", "--H", "cycle:4", "--G", "kq:3"]))["hom"], "18");
}

#[test]
fn hom_reads_graph6_from_stdin() {
    let d = fixtures();
    let o = with_stdin(d.path(), &["hom", "--H", "-", "--G", "k3.json"], "Cl\n");
    assert!(o.status.success());
    assert_eq!(json(&o)["hom"], "18");
}

#[test]
fn hom_bipartite_and_volume_modes() {
    let d = fixtures();
    let p = d.path();
    // Single edge into K_3 with sides {0,1} and {1,2}: pairs (x,y), x != y.
    let o = homlor(p, &["hom", "--H", "path:1", "--G", "kq:3", "--A", "0,1", "--B", "1,2"]);
    assert_eq!(json(&o)["bipartite_hom"], "3");
    fs::write(p.join("vec.json"), r#"[["1","2","0"],["1/2","1","1"]]"#).unwrap();
    let o = homlor(p, &["hom", "--H", "path:1", "--G", "kq:3", "--vectors", "vec.json"]);
    // sum over x != y of u_x w_y = (1+2)(1/2+1+1) - (1*1/2 + 2*1) = 15/2 - 5/2
    assert_eq!(json(&o)["volume"], "5");
}

#[test]
fn malformed_input_exits_2() {
    let d = fixtures();
    let o = homlor(d.path(), &["hom", "--H", "nope.json", "--G", "k3.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = homlor(d.path(), &["hom", "--H", "cycle:2", "--G", "k3.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_examples() {
    let d = fixtures();
    let p = d.path();
    let o = homlor(p, &["certify", "afm", "--G", "g0.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["positive_eigenvalue_count"], 1);

    let o = homlor(p, &["certify", "lorentzian", "--chromatic", "k33.g6", "k3.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["failure_witness"].is_object());

    let o = homlor(p, &["certify", "lorentzian", "--chromatic", "k4.g6", "k5.json"]);
    assert_eq!(o.status.code(), Some(0));

    let o = homlor(p, &["certify", "afm", "--G", "two_triangles.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_examples() {
    let d = fixtures();
    let p = d.path();
    let o = homlor(p, &["verify", "bipartite-swap", "--H", "k3.g6", "--G", "k3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["lhs"].as_str(), v["rhs"].as_str()), (Some("36"), Some("66")));

    let o = homlor(p, &["verify", "bipartite-swap", "--H", "k3.g6", "--G", "two_triangles.json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!((v["lhs"].as_str(), v["rhs"].as_str()), (Some("144"), Some("132")));
    assert!(v["witness"].is_object());

    let o = homlor(p, &["verify", "cross-bipartite", "--H", "path:3", "--Kq", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let vs = lines(&o);
    assert!(!vs.is_empty() && vs.iter().all(|v| v["holds"] == true));

    let o = homlor(p, &["verify", "cross-bipartite", "--H", "k3.g6", "--G", "k3.json", "--out", "x.jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(p.join("x.jsonl")).unwrap().lines().count(), 64);
}

#[test]
fn verify_random_checks_are_seed_deterministic() {
    let d = fixtures();
    let p = d.path();
    let a = homlor(p, &["verify", "corollary", "--G", "g0.json", "--t", "3", "--trials", "20", "--seed", "5"]);
    let b = homlor(p, &["--threads", "2", "verify", "corollary", "--G", "g0.json", "--trials", "20", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = homlor(p, &["verify", "af-inequality", "--chromatic", "k3.g6", "kq:4", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o).len(), 10);
    // h_{P2}(x;G0) is not Lorentzian and some sampled triple breaks AF.
    let o = homlor(p, &["verify", "af-inequality", "--chromatic", "path:2", "g0.json", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(1));
    // h_{K3}(x;G0) vanishes: G0 has no triangle.
    let o = homlor(p, &["verify", "af-inequality", "--chromatic", "k3.g6", "g0.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = homlor(p, &["verify", "weighted-cross-bipartite", "--H", "path:2", "--G", "g0.json", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn formulas_examples() {
    let d = fixtures();
    let p = d.path();
    let o = homlor(p, &["formulas", "cycle", "--d", "2", "--a", "3", "--b", "3", "--oracle"]);
    let v = json(&o);
    assert_eq!((v["value"].as_str(), v["delta"].as_str()), (Some("18"), Some("0")));
    let v = json(&homlor(p, &["formulas", "multipartite", "--parts", "2,1", "--a", "3", "--oracle"]));
    assert_eq!((v["value"].as_str(), v["delta"].as_str()), (Some("12"), Some("0")));
    let o = homlor(p, &["formulas", "path-odd", "--d", "1", "--a", "2", "--b", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], "4");
    let v = json(&homlor(p, &["formulas", "stirling", "--r", "5", "--l", "2"]));
    assert_eq!(v["value"], "15");
    let v = json(&homlor(p, &["formulas", "cycle-chromatic", "--l", "5", "--a", "3", "--oracle"]));
    assert_eq!((v["value"].as_str(), v["delta"].as_str()), (Some("30"), Some("0")));
    let o = homlor(p, &["formulas", "path-even", "--d", "1", "--a", "3", "--b", "4", "--orientation", "ba", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(homlor(p, &["formulas", "cycle", "--d", "1", "--a", "3", "--b", "3"]).status.code(), Some(2));
}

#[test]
fn search_examples() {
    let d = fixtures();
    let p = d.path();
    let o = homlor(p, &["search", "zhao", "--n-max", "5", "--q", "2..4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(lines(&o).iter().all(|v| v["holds"] == true));

    let o = homlor(p, &["search", "cross-bipartite", "--family", "cycles", "--q", "2..5"]);
    assert_eq!(o.status.code(), Some(0));

    let sources = "Bw\nCl\nC~\n";
    let o = with_stdin(p, &["search", "afm-swap", "--H-g6", "-", "--afm-seed", "7", "--budget", "1000"], sources);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(lines(&o).len(), 48);
}

#[test]
fn search_resume_matches_uninterrupted_run() {
    let d = fixtures();
    let p = d.path();
    let full = homlor(p, &["search", "zhao", "--n-max", "4", "--q", "2..4", "--out", "full.jsonl"]);
    assert_eq!(full.status.code(), Some(0));
    let part = homlor(p, &["search", "zhao", "--n-max", "4", "--q", "2..4", "--out", "part.jsonl", "--budget", "5"]);
    assert_eq!(part.status.code(), Some(0));
    assert_eq!(fs::read_to_string(p.join("part.jsonl")).unwrap().lines().count(), 5);
    let ck: Value = serde_json::from_str(&fs::read_to_string(p.join("part.jsonl.ckpt")).unwrap()).unwrap();
    assert_eq!(ck["cursor"], 5);
    let rest = homlor(p, &["search", "zhao", "--n-max", "4", "--q", "2..4", "--out", "part.jsonl", "--resume"]);
    assert_eq!(rest.status.code(), Some(0));
    assert_eq!(fs::read(p.join("part.jsonl")).unwrap(), fs::read(p.join("full.jsonl")).unwrap());
}

#[test]
fn lorentzian_converse_exploration_runs() {
    let d = fixtures();
    let o = homlor(d.path(), &["search", "lorentzian-converse", "--n-max", "3", "--targets", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let records = lines(&o);
    // K1, K2, P3, K3
    assert_eq!(records.len(), 4);
    assert_eq!(records[2]["lorentzian_on_all"], false);
    assert!(records[2]["witness"].is_object());
}
