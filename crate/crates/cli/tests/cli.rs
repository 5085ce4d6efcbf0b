use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const PATH5: &str = "p tw 5 4\n1 2\n2 3\n3 4\n4 5\n";
const STAR4: &str = "p tw 5 4\n1 2\n1 3\n1 4\n1 5\n";
const C4: &str = "p tw 4 4\n1 2\n2 3\n3 4\n4 1\n";
const C5: &str = "p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n";
const K4: &str = "p tw 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

fn starchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starchrom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_reports_both_verdicts() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "p5.gr", PATH5);
    let no = starchrom(&["decide", s(&g), "--c", "2"]);
    assert_eq!(no.status.code(), Some(1));
    let report = json(&no);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["status"], "not_colorable");

    for engine in ["dp", "brute"] {
        let yes = starchrom(&["decide", s(&g), "--c", "3", "--engine", engine]);
        assert_eq!(yes.status.code(), Some(0), "{engine}");
        let report = json(&yes);
        assert_eq!(report["status"], "colorable");
        assert_eq!(report["coloring"].as_array().unwrap().len(), 4);
        assert_eq!(report["engine"], engine);
    }
    let stats = &json(&starchrom(&["decide", s(&g), "--c", "3"]))["stats"]["components"][0];
    assert_eq!(stats["width"], 1);
    assert!(!stats["table_sizes"].as_array().unwrap().is_empty());
}

#[test]
fn decide_writes_a_coloring_that_checks() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k4.gr", K4);
    let col = dir.path().join("k4.col");
    let out = starchrom(&["decide", s(&g), "--c", "5", "--out", s(&col)]);
    assert_eq!(out.status.code(), Some(0));
    let check = starchrom(&["check", s(&g), s(&col)]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["valid"], true);
}

#[test]
fn malformed_input_exits_with_3() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.gr", "1 2\np tw 2 1\n");
    let out = starchrom(&["decide", s(&bad), "--c", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());

    let missing = starchrom(&["decide", "/nonexistent/graph.gr", "--c", "3"]);
    assert_eq!(missing.status.code(), Some(3));

    let usage = starchrom(&["decide"]);
    assert_eq!(usage.status.code(), Some(3));
}

#[test]
fn index_of_small_graphs() {
    let dir = TempDir::new().unwrap();
    for (name, text, expected) in [
        ("star4.gr", STAR4, 4),
        ("p5.gr", PATH5, 3),
        ("k4.gr", K4, 5),
    ] {
        let g = file(&dir, name, text);
        for engine in ["dp", "brute"] {
            let out = starchrom(&["index", s(&g), "--engine", engine]);
            assert_eq!(out.status.code(), Some(0), "{name} {engine}");
            assert_eq!(json(&out)["index"], expected, "{name} {engine}");
        }
    }
    let k4 = file(&dir, "k4.gr", K4);
    let capped = starchrom(&["solve", s(&k4), "--c-max", "4"]);
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(json(&capped)["status"], "above_max");

    let star = file(&dir, "star4.gr", STAR4);
    let below_degree = starchrom(&["index", s(&star), "--c-max", "3"]);
    assert_eq!(below_degree.status.code(), Some(3));
}

#[test]
fn exhausted_budgets_are_indeterminate() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k4.gr", K4);
    let out = starchrom(&[
        "decide",
        s(&g),
        "--c",
        "4",
        "--engine",
        "brute",
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "indeterminate");
}

#[test]
fn check_rejects_bicolored_paths() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "p5.gr", PATH5);
    let col = file(&dir, "p5.col", "1 2 1\n2 3 2\n3 4 1\n4 5 2\n");
    let out = starchrom(&["check", s(&g), s(&col)]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["valid"], false);
    assert!(report["violation"].as_str().unwrap().contains("bicolored"));

    let partial = file(&dir, "partial.col", "1 2 1\n");
    let out = starchrom(&["check", s(&g), s(&partial)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["uncolored_edges"], 3);
}

#[test]
fn gen_is_deterministic_and_decomposition_is_usable() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for prefix in [&a, &b] {
        let out = starchrom(&[
            "gen",
            "--n",
            "12",
            "--k",
            "2",
            "--p",
            "0.7",
            "--seed",
            "9",
            "--out",
            s(prefix),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["width"], 2);
    }
    let read = |p: &Path, ext: &str| fs::read_to_string(p.with_extension(ext)).unwrap();
    assert_eq!(read(&a, "gr"), read(&b, "gr"));
    assert_eq!(read(&a, "td"), read(&b, "td"));

    let gr = a.with_extension("gr");
    let td = a.with_extension("td");
    let dp = starchrom(&["index", s(&gr), "--td", s(&td), "--symmetry"]);
    let brute = starchrom(&["index", s(&gr), "--engine", "brute"]);
    assert_eq!(dp.status.code(), Some(0));
    assert_eq!(json(&dp)["index"], json(&brute)["index"]);
}

#[test]
fn decompose_emits_a_parseable_td() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "two.gr", "p tw 6 4\n1 2\n2 3\n4 5\n5 6\n");
    let out = starchrom(&["decompose", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("s td "));

    let td = file(&dir, "two.td", &text);
    let solved = starchrom(&["decide", s(&g), "--c", "3", "--td", s(&td)]);
    assert_eq!(solved.status.code(), Some(0));

    let summary = starchrom(&["decompose", s(&g), "--json", "--method", "min-degree"]);
    assert_eq!(json(&summary)["width"], 1);
}

#[test]
fn bench_prints_one_row_per_size_and_engine() {
    let out = starchrom(&["bench", "--family", "path", "--sizes", "10,20,40"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,n,c,engine,millis,peak_states");
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 6));

    let out = starchrom(&[
        "bench",
        "--family",
        "cycle",
        "--sizes",
        "6",
        "--engines",
        "dp",
        "--json",
    ]);
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["c"], 3);
}

#[test]
fn compare_agrees_and_catches_a_disabled_condition() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    let empty = starchrom(&["compare", s(&corpus)]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json(&empty)["instances"], 0);

    fs::write(corpus.join("p5.gr"), PATH5).unwrap();
    fs::write(corpus.join("k4.gr"), K4).unwrap();
    let clean = starchrom(&["compare", s(&corpus), "--c-range", "2..6"]);
    assert_eq!(clean.status.code(), Some(0));
    let report = json(&clean);
    assert_eq!(report["checks"], 10);
    assert_eq!(report["disagreements"].as_array().unwrap().len(), 0);

    let fixtures = dir.path().join("fixtures");
    let broken = starchrom(&[
        "compare",
        s(&corpus),
        "--c-range",
        "2..6",
        "--disable-condition",
        "iv",
        "--out",
        s(&fixtures),
    ]);
    assert_eq!(broken.status.code(), Some(1));
    let found = json(&broken)["disagreements"].as_array().unwrap().len();
    assert!(found > 0);
    assert_eq!(fs::read_dir(&fixtures).unwrap().count(), found);
}
