use std::path::PathBuf;
use std::process::{Command, Output};

fn butterfly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_butterfly"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_statuses() {
    for (name, code) in [
        ("lemma1.scn", 0),
        ("circle_butterfly.scn", 0),
        ("hyperbola_cutl.scn", 0),
        ("circle_midpoint.scn", 0),
        ("circle_butterfly_corrupted.scn", 1),
        ("circle_butterfly_degenerate.scn", 2),
    ] {
        let o = butterfly(&["verify", &fixture(name)]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", stdout(&o));
    }
    assert_eq!(
        butterfly(&["verify", "/nonexistent.scn"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports() {
    let o = butterfly(&["verify", &fixture("lemma1.scn")]);
    let out = stdout(&o);
    assert!(out.contains("\"p\":\"(1 : 1/2 : 1/2)\""), "{out}");
    assert!(out.contains("\"cr(p,y,m,y')\":\"-1\""), "{out}");

    let o = butterfly(&["verify", &fixture("circle_butterfly.scn")]);
    assert!(stdout(&o).contains("\"cr(p,j,m,i)\":\"-1\""));

    let o = butterfly(&["verify", &fixture("circle_butterfly_corrupted.scn")]);
    assert!(stdout(&o).contains("\"VIOLATED\""));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.jsonl");
    let o = butterfly(&[
        "verify",
        &fixture("lemma1.scn"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(out).unwrap().contains("HOLDS"));
}

#[test]
fn fuzz_is_deterministic_across_workers() {
    let run = |workers: &str| {
        let o = butterfly(&[
            "fuzz",
            "--seed",
            "11",
            "--count",
            "30",
            "--height",
            "20",
            "--checks",
            "damn,pascal,sack,cutl",
            "--workers",
            workers,
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one.lines().count(), 31);
    assert!(
        one.lines().last().unwrap().contains("\"HOLDS\":30"),
        "{one}"
    );
}

#[test]
fn fuzz_rejects_unknown_checks() {
    let o = butterfly(&["fuzz", "--checks", "damn,nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn demo_prints_the_worked_example() {
    let o = butterfly(&["demo", "lemma1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for needle in [
        "x - 2z = 0",
        "x - 2y = 0",
        "(1 : 1/2 : 1/2)",
        "cr(p,y,m,y')  -1",
    ] {
        assert!(out.contains(needle), "{needle}\n{out}");
    }
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    let o = butterfly(&[
        "render",
        &fixture("hyperbola_cutl.scn"),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"conic\"").count(), 2);

    let complex = dir.path().join("complex.scn");
    let doc = std::fs::read_to_string(fixture("circle_butterfly.scn"))
        .unwrap()
        .replace("(4 : 3 : 5)", "(5 : 4i : 3)");
    std::fs::write(&complex, doc).unwrap();
    let o = butterfly(&[
        "render",
        complex.to_str().unwrap(),
        "--out",
        dir.path().join("x.svg").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not real"));
}
