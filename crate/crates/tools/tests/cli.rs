use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pillar_core::graph::prism_layout;
use tempfile::TempDir;

fn pillar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pillar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = path(dir, name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&out)]);
    let o = pillar(&full);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

fn edge_lines(p: &Path) -> Vec<String> {
    std::fs::read_to_string(p)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

#[test]
fn generate_sizes() {
    let dir = TempDir::new().unwrap();
    let prism = gen(&dir, "prism.el", &["prism", "--s", "4"]);
    let text = std::fs::read_to_string(&prism).unwrap();
    assert!(text.starts_with("# n 8\n"));
    assert_eq!(edge_lines(&prism).len(), 12);
    let sub = gen(
        &dir,
        "sub.el",
        &["subdivided-prism", "--s", "6", "--ell", "3"],
    );
    assert!(std::fs::read_to_string(&sub)
        .unwrap()
        .starts_with("# n 24\n"));
}

#[test]
fn random_generation_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["random-regular", "--n", "1000", "--d", "10", "--seed", "7"];
    let a = gen(&dir, "a.el", &args);
    let b = gen(&dir, "b.el", &args);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn random_generation_needs_a_seed() {
    let o = pillar(&["generate", "random-regular", "--n", "100", "--d", "4"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--seed"));
}

#[test]
fn find_pillar_on_cube_then_verify() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "q3.el", &["hypercube", "--dim", "3"]);
    let cert = path(&dir, "p.json");
    let o = pillar(&["find", "pillar", "--graph", s(&g), "--out", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(
        (v["kind"].as_str(), v["s"].as_u64(), v["ell"].as_u64()),
        (Some("pillar"), Some(4), Some(1))
    );
    let o = pillar(&["verify", "pillar", "--graph", s(&g), "--cert", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn find_pillar_on_cycle_reports_a_stage() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "c.el", &["cycle", "--n", "100"]);
    let o = pillar(&["find", "pillar", "--graph", s(&g)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("failed at"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn find_kraken_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "rr.el",
        &["random-regular", "--n", "10000", "--d", "8", "--seed", "3"],
    );
    let config = path(&dir, "relaxed.toml");
    std::fs::write(&config, "mode = \"relaxed\"\nd = 8\nseed = 11\n").unwrap();
    let cert = path(&dir, "k.json");
    let o = pillar(&[
        "find",
        "kraken",
        "--graph",
        s(&g),
        "--config",
        s(&config),
        "--out",
        s(&cert),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = pillar(&["verify", "kraken", "--graph", s(&g), "--cert", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // Same seed, same certificate.
    let again = path(&dir, "k2.json");
    pillar(&[
        "find",
        "kraken",
        "--graph",
        s(&g),
        "--config",
        s(&config),
        "--out",
        s(&again),
    ]);
    assert_eq!(
        std::fs::read(&cert).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn find_q3_reports_absence() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "p.el", &["prism", "--s", "6"]);
    let o = pillar(&["find", "q3", "--graph", s(&g)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("Q3-free"));
    let cube = gen(&dir, "q4.el", &["hypercube", "--dim", "4"]);
    let cert = path(&dir, "c.json");
    assert_eq!(
        code(&pillar(&[
            "find",
            "q3",
            "--graph",
            s(&cube),
            "--out",
            s(&cert)
        ])),
        0
    );
    assert_eq!(
        code(&pillar(&[
            "verify",
            "q3",
            "--graph",
            s(&cube),
            "--cert",
            s(&cert)
        ])),
        0
    );
}

fn prism_cert(dir: &TempDir) -> (PathBuf, serde_json::Value) {
    let g = gen(dir, "prism.el", &["prism", "--s", "4"]);
    let lay = prism_layout(4, 1).unwrap();
    let v = serde_json::json!({
        "kind": "pillar",
        "version": 1,
        "s": 4,
        "ell": 1,
        "cycle1": lay.cycle1,
        "cycle2": lay.cycle2,
        "paths": lay.paths,
    });
    (g, v)
}

#[test]
fn verify_prism_certificate_and_a_mutation() {
    let dir = TempDir::new().unwrap();
    let (g, mut v) = prism_cert(&dir);
    let cert = path(&dir, "p.json");
    std::fs::write(&cert, v.to_string()).unwrap();
    assert_eq!(
        code(&pillar(&[
            "verify",
            "pillar",
            "--graph",
            s(&g),
            "--cert",
            s(&cert)
        ])),
        0
    );

    // Path 0 now ends on the wrong cycle vertex.
    v["paths"][0][1] = serde_json::json!(5);
    std::fs::write(&cert, v.to_string()).unwrap();
    let o = pillar(&["verify", "pillar", "--graph", s(&g), "--cert", s(&cert)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("path 0"), "{}", stdout(&o));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let (g, v) = prism_cert(&dir);
    let cert = path(&dir, "p.json");
    let text = v.to_string();
    std::fs::write(&cert, &text[..text.len() / 2]).unwrap();
    assert_eq!(
        code(&pillar(&[
            "verify",
            "pillar",
            "--graph",
            s(&g),
            "--cert",
            s(&cert)
        ])),
        2
    );

    // A pillar certificate offered as a kraken.
    std::fs::write(&cert, &text).unwrap();
    assert_eq!(
        code(&pillar(&[
            "verify",
            "kraken",
            "--graph",
            s(&g),
            "--cert",
            s(&cert)
        ])),
        2
    );

    let bad = path(&dir, "bad.el");
    std::fs::write(&bad, "0 1\n1 2\n2 two\n").unwrap();
    let o = pillar(&["find", "pillar", "--graph", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    std::fs::write(&bad, "0 1\n4 4\n").unwrap();
    let o = pillar(&["verify", "pillar", "--graph", s(&bad), "--cert", s(&cert)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("self-loop"));

    let missing = path(&dir, "missing.el");
    assert_eq!(code(&pillar(&["find", "q3", "--graph", s(&missing)])), 2);
    assert_eq!(code(&pillar(&["find", "triangle", "--graph", s(&g)])), 2);

    let config = path(&dir, "c.toml");
    std::fs::write(&config, "separtion = 3\n").unwrap();
    assert_eq!(
        code(&pillar(&[
            "find",
            "pillar",
            "--graph",
            s(&g),
            "--config",
            s(&config)
        ])),
        2
    );
}

fn bench_counts(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').take(4).map(str::to_owned).collect())
        .collect()
}

#[test]
fn bench_csv_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "rr.el",
        &[
            "random-regular",
            "--n",
            "100000",
            "--d",
            "10",
            "--seed",
            "1",
        ],
    );
    let run = |workers: &str| {
        let o = pillar(&[
            "bench",
            "--graph",
            s(&g),
            "--seed",
            "4",
            "--runs",
            "4",
            "--trials",
            "20",
            "--workers",
            workers,
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        stdout(&o)
    };
    let one = run("1");
    let lines: Vec<&str> = one.lines().collect();
    assert_eq!(lines[0], "operation,runs,work,successes,micros");
    assert_eq!(lines.len(), 4);
    assert_eq!(bench_counts(&one), bench_counts(&run("1")));
    assert_eq!(bench_counts(&one), bench_counts(&run("3")));
}

#[test]
fn bench_on_empty_graph() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "empty.el");
    std::fs::write(&g, "").unwrap();
    let o = pillar(&["bench", "--graph", s(&g)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = bench_counts(&stdout(&o));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[1] == "0" && r[2] == "0"));
}
