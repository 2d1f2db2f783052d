use std::path::PathBuf;

use twistalg::cli::run;

fn tmp(name: &str, text: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("twistalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn ok(args: &[&str]) -> String {
    let mut full = vec!["twistalg"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stdout);
    out.stdout
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["twistalg"];
    full.extend_from_slice(args);
    run(full).code
}

#[test]
fn gen_is_deterministic() {
    assert_eq!(ok(&["gen", "diagram", "--seed", "9"]), ok(&["gen", "diagram", "--seed", "9"]));
    assert_ne!(ok(&["gen", "finite", "--seed", "1"]), ok(&["gen", "finite", "--seed", "2"]));
}

#[test]
fn q_pipeline() {
    let d = tmp("d.json", &ok(&["gen", "diagram", "--seed", "3"]));
    let report = ok(&["q", "check", &d]);
    assert!(!report.contains("fail"), "{report}");
    let c = tmp("c.json", &ok(&["q", "build", &d]));
    let back = tmp("d2.json", &ok(&["q", "invert", &c]));
    assert!(ok(&["q", "check", &back]).contains("\"roundtrip\": \"pass\""));
    let a = tmp("a.json", &ok(&["unsplit", &c]));
    assert!(ok(&["split", &a]).contains("C2p2-B"));
    assert!(ok(&["cohomology", &c, "--out", "ascii"]).contains("H^0"));
    let d2 = tmp("d3.json", &ok(&["gen", "diagram", "--seed", "4"]));
    assert!(ok(&["hom", "assemble", &d, &d2]).contains("\"M_matches_chain_maps\": true"));
}

#[test]
fn ext_and_chart() {
    let m = tmp("m.json", &ok(&["gen", "finite", "--seed", "5"]));
    let report: serde_json::Value = serde_json::from_str(&ok(&["ext", &m, &m, "--s", "1"])).unwrap();
    assert_eq!(report["groups"][0]["s"], 1);
    let s = tmp("s.json", &ok(&["gen", "sphere"]));
    let chart = ok(&["e2chart", &s, &s, "--window", "-2:13", "--out", "ascii"]);
    assert!(chart.contains("vanishing pattern: pass"));
    let report: serde_json::Value = serde_json::from_str(&ok(&["e2chart", &s, &s, "--window", "12"])).unwrap();
    assert_eq!(report["cells"].as_array().unwrap().len(), 39);
    assert_eq!(report["vanishing"]["holds"], true);
}

#[test]
fn ladders_report_decisions() {
    let l = tmp("l.json", &ok(&["gen", "ladder-obstructed", "--seed", "2"]));
    assert!(ok(&["check", &l]).contains("\"liftable\": false"));
    let l = tmp("l2.json", &ok(&["gen", "ladder-liftable", "--seed", "2"]));
    assert!(ok(&["check", &l]).contains("\"liftable\": true"));
}

#[test]
fn exit_codes() {
    let bad = tmp("bad.json", "{ not json");
    assert_eq!(code(&["check", &bad]), 1);
    let v2 = tmp("v2.json", r#"{"schema_version":"2","context":{"p":3,"g":2},"kind":"bobject","payload":{}}"#);
    assert_eq!(code(&["check", &v2]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    // ψ = 3 is not invertible
    let noninv = tmp(
        "noninv.json",
        r#"{"schema_version":"1","context":{"p":3,"g":2},"kind":"bobject",
            "payload":{"module":{"ngens":1,"relations":{"rows":1,"cols":0,"entries":[[]]}},
                       "psi":{"rows":1,"cols":1,"entries":[["3"]]},"weights":[0]}}"#,
    );
    assert_eq!(code(&["check", &noninv]), 2);
    let m = tmp("m2.json", &ok(&["gen", "finite", "--seed", "1"]));
    assert_eq!(code(&["check", &m, "--prime", "5"]), 2);
    assert_eq!(code(&["ext", &m, &m, "--s", "3"]), 2);
    let d = tmp("d4.json", &ok(&["gen", "diagram", "--seed", "1"]));
    assert_eq!(code(&["split", &d]), 2);
    assert_eq!(code(&["check", "/nonexistent/file.json"]), 1);
}
