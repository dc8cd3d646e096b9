use std::path::Path;
use std::process::{Command, Output};

use regulus_core::io::load_structure;

fn regulus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regulus"))
        .args(args)
        .env_remove("REGULUS_THREADS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn build(dir: &Path, q: u32) -> String {
    let path = dir.join(format!("pg3{q}.json"));
    let p = path.to_str().unwrap().to_owned();
    let out = regulus(&["build", "--q", &q.to_string(), "--out", &p]);
    assert_eq!(code(&out), 0);
    p
}

#[test]
fn build_reports_counts_and_rejects_bad_orders() {
    let dir = tempfile::tempdir().unwrap();
    let out = regulus(&[
        "build",
        "--q",
        "2",
        "--out",
        dir.path().join("a.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("15 points, 35 lines, 15 planes"));
    let (s, file) = load_structure(&dir.path().join("a.json")).unwrap();
    assert_eq!((s.len(), file.q), (35, Some(2)));
    for q in ["6", "1", "17", "32"] {
        let out = regulus(&[
            "build",
            "--q",
            q,
            "--out",
            dir.path().join("b.json").to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 2, "q={q}");
    }
    assert!(!dir.path().join("b.json").exists());
    let out = regulus(&[
        "build",
        "--q",
        "2",
        "--out",
        dir.path().join("no/dir/c.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn audit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pg = build(dir.path(), 2);
    let report = dir.path().join("r.json");
    let out = regulus(&[
        "audit",
        &pg,
        "--profile",
        "full",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["overall"], "PASS");
    assert_eq!(json["format_version"], 1);

    let corpus = dir.path().join("m");
    let out = regulus(&[
        "mutate",
        &pg,
        "--seed",
        "1",
        "--count",
        "3",
        "--out-dir",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mutant = corpus.join("mutant_0000.json");
    let out = regulus(&["audit", mutant.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["overall"], "FAIL");
    let failed = json["items"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["status"] == "FAIL")
        .unwrap();
    assert!(failed["witness"].is_array());

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"format_version\": 1, \"labels\": [\"a\"]}").unwrap();
    assert_eq!(code(&regulus(&["audit", garbage.to_str().unwrap()])), 2);
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(code(&regulus(&["audit", garbage.to_str().unwrap()])), 2);
    std::fs::write(
        &garbage,
        r#"{"format_version": 1, "labels": ["a", "b"], "incidence_rows": ["3", "2"]}"#,
    )
    .unwrap();
    let out = regulus(&["audit", garbage.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("symmetric"));
    assert_eq!(
        code(&regulus(&[
            "audit",
            dir.path().join("missing.json").to_str().unwrap()
        ])),
        3
    );
    assert_eq!(code(&regulus(&["audit", &pg, "--seed", "4"])), 2);
    assert_eq!(
        code(&regulus(&[
            "audit",
            &pg,
            "--profile",
            "fast",
            "--seed",
            "4"
        ])),
        0
    );
    assert_eq!(code(&regulus(&["audit", &pg, "--profile", "partial"])), 2);
}

#[test]
fn regulus_query() {
    let dir = tempfile::tempdir().unwrap();
    let pg = build(dir.path(), 2);
    let (s, _) = load_structure(Path::new(&pg)).unwrap();
    let [u, v, w] = s.first_skew_triple(&s.all()).unwrap();
    let lines = format!("{},{},{}", s.label(u), s.label(v), s.label(w));
    let out = regulus(&["regulus", &pg, "--lines", &lines]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let expected: Vec<_> = s
        .perp_of(&[u, v, w])
        .iter()
        .map(|l| s.label(l).to_owned())
        .collect();
    assert_eq!(expected.len(), 3);
    assert!(text.contains(&format!("regulus: {}", expected.join(" "))));
    let conj_line = text.lines().find(|l| l.starts_with("conjugate: ")).unwrap();
    for d in [u, v, w] {
        assert!(conj_line.split_whitespace().any(|x| x == s.label(d)));
    }
    assert_eq!(stdout(&regulus(&["regulus", &pg, "--lines", &lines])), text);

    let (a, b) = s.incident_pairs()[0];
    let lines = format!("{},{},{}", s.label(a), s.label(b), s.label(w));
    let out = regulus(&["regulus", &pg, "--lines", &lines]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(
        err.contains(s.label(a)) && err.contains(s.label(b)),
        "{err}"
    );
    assert_eq!(
        code(&regulus(&["regulus", &pg, "--lines", "L0,L1,nope"])),
        2
    );
    assert_eq!(code(&regulus(&["regulus", &pg, "--lines", "L0,L1"])), 2);
}

#[test]
fn theorems_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let pg = build(dir.path(), 2);
    let out = regulus(&["theorems", &pg]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("unique_transversal"));
    for (what, count, size) in [("points", 15, 7), ("planes", 15, 7), ("reguli", 560, 3)] {
        let out = regulus(&["export", &pg, "--what", what]);
        assert_eq!(code(&out), 0);
        let sets: Vec<Vec<String>> = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(sets.len(), count, "{what}");
        assert!(sets.iter().all(|s| s.len() == size));
    }
}

#[test]
fn mutate_writes_a_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let pg = build(dir.path(), 2);
    let corpus = dir.path().join("corpus");
    let out = regulus(&[
        "mutate",
        &pg,
        "--seed",
        "1",
        "--count",
        "100",
        "--out-dir",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let files = std::fs::read_dir(&corpus).unwrap().count();
    assert_eq!(files, 101);
    for i in [0, 57, 99] {
        assert!(load_structure(&corpus.join(format!("mutant_{i:04}.json"))).is_ok());
    }
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = regulus(&[
        "mutate",
        &pg,
        "--seed",
        "1",
        "--count",
        "2",
        "--out-dir",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn thread_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let pg = build(dir.path(), 2);
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_regulus"))
            .args(["audit", &pg])
            .env("REGULUS_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let two = run("2");
    assert_eq!(code(&one), 0);
    assert_eq!(code(&two), 0);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("many")), 2);
}
