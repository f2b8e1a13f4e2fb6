use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use revsynth_cli::bench::{fit_constant, random_with_support, trial_permutation, BenchRecord};
use revsynth_cli::parse_range;
use revsynth_core::{Circuit, Permutation, RestStrategy};
use tempfile::TempDir;

fn revsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_table(dir: &TempDir, name: &str, p: &Permutation) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, p.to_truth_table()).unwrap();
    path
}

fn example_f() -> Permutation {
    let images = (0..256)
        .map(|x| match x {
            0 => 0,
            254 => 1,
            255 => 2,
            x => x + 2,
        })
        .collect();
    Permutation::from_images(8, images).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn identity_gives_empty_circuit() {
    let dir = TempDir::new().unwrap();
    let tt = write_table(&dir, "id.tt", &Permutation::identity(4).unwrap());
    let out = dir.path().join("id.circ");
    let o = revsynth(&["synth", path_str(&tt), "-o", path_str(&out), "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let c: Circuit = std::fs::read_to_string(&out).unwrap().parse().unwrap();
    assert!(c.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("id.circ.json")).unwrap())
            .unwrap();
    assert_eq!(report["gate_count"], 0);
}

#[test]
fn example_function_round_trip() {
    let dir = TempDir::new().unwrap();
    let tt = write_table(&dir, "f.tt", &example_f());
    let out = dir.path().join("f.circ");
    let report = dir.path().join("report.json");
    for rest in ["naive", "improved"] {
        let o = revsynth(&[
            "synth",
            path_str(&tt),
            "-o",
            path_str(&out),
            "--report",
            path_str(&report),
            "--rest",
            rest,
            "--verify",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let r: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(r["support_initial"], 255);
        let o = revsynth(&["verify", path_str(&out), path_str(&tt)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
}

#[test]
fn deleted_gate_is_reported() {
    let dir = TempDir::new().unwrap();
    let tt = write_table(&dir, "f.tt", &example_f());
    let out = dir.path().join("f.circ");
    assert!(revsynth(&["synth", path_str(&tt), "-o", path_str(&out)])
        .status
        .success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(1);
    std::fs::write(&out, lines.join("\n")).unwrap();
    let o = revsynth(&["verify", path_str(&out), path_str(&tt)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mismatch at input"), "{}", stderr(&o));
}

#[test]
fn short_truth_table_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.tt");
    let mut text = String::from("n 3\n");
    for x in 0..7 {
        writeln!(text, "{x}").unwrap();
    }
    std::fs::write(&path, text).unwrap();
    let o = revsynth(&[
        "synth",
        path_str(&path),
        "-o",
        path_str(&dir.path().join("x")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn width_caps() {
    let dir = TempDir::new().unwrap();
    let wide = dir.path().join("wide.tt");
    std::fs::write(&wide, "n 29\n").unwrap();
    let o = revsynth(&[
        "synth",
        path_str(&wide),
        "-o",
        path_str(&dir.path().join("x")),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    let p21 = Permutation::identity(21).unwrap();
    let tt = write_table(&dir, "p21.tt", &p21);
    let o = revsynth(&[
        "synth",
        path_str(&tt),
        "-o",
        path_str(&dir.path().join("y")),
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn bench_rows_and_determinism() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = revsynth(&[
            "bench",
            "--n",
            "3..6",
            "--trials",
            "5",
            "--seed",
            "9",
            "--csv",
            path_str(path),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).starts_with("fit: cost ~ "));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,trial,strategy,gate_count,elementary_estimate,iterations,wall_time_ms,verified")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.ends_with(",0,true")));
}

#[test]
fn bench_both_reports_rest_totals() {
    let o = revsynth(&["bench", "--n", "5", "--trials", "2", "--rest", "both"]);
    assert!(o.status.success());
    let csv = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(stderr(&o).contains("rest n=5: naive "));
}

#[test]
fn cost_command() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c.circ");
    std::fs::write(&path, "# width 12\nt 12 q1 q2 q3 q4 q5\n").unwrap();
    let o = revsynth(&["cost", path_str(&path)]);
    assert!(o.status.success());
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("elementary_estimate 38"), "{out}");
    let o = revsynth(&["cost", path_str(&path), "--model-mct", "14m22"]);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("elementary_estimate 48"));

    std::fs::write(&path, "# width 3\n").unwrap();
    let o = revsynth(&["cost", path_str(&path)]);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("elementary_estimate 0"));

    std::fs::write(&path, "t 1\n").unwrap();
    assert_eq!(revsynth(&["cost", path_str(&path)]).status.code(), Some(1));
}

#[test]
fn bad_usage_exits_1() {
    assert_eq!(revsynth(&["bench", "--n", "6..3"]).status.code(), Some(1));
    assert_eq!(revsynth(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn range_parsing() {
    assert_eq!(parse_range("3..6"), Ok((3, 6)));
    assert_eq!(parse_range("3..=6"), Ok((3, 6)));
    assert_eq!(parse_range("7"), Ok((7, 7)));
    assert!(parse_range("0..3").is_err());
    assert!(parse_range("a..3").is_err());
}

#[test]
fn trial_permutations_are_stable() {
    let p = trial_permutation(5, 6, 2);
    assert_eq!(p, trial_permutation(5, 6, 2));
    assert_ne!(p, trial_permutation(5, 6, 3));
    assert_ne!(p, trial_permutation(6, 6, 2));
}

#[test]
fn support_generator() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for size in [0, 2, 3, 32] {
        let p = random_with_support(8, size, &mut rng);
        assert_eq!(p.support_size(), size);
        assert_eq!(p.apply(0), 0);
    }
}

#[test]
fn fit_recovers_constant() {
    let rows: Vec<BenchRecord> = (4..10)
        .map(|n| BenchRecord {
            n,
            trial: 0,
            strategy: RestStrategy::Naive,
            gate_count: 0,
            elementary_estimate: (3.0 * revsynth_cli::bench::scaling_term(n)).round() as u64,
            iterations: 0,
            wall_time_ms: 0,
            verified: false,
            rest_elementary: 0,
        })
        .collect();
    assert!((fit_constant(&rows).unwrap() - 3.0).abs() < 1e-3);
    assert!(fit_constant(&[]).is_none());
}
