use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coarseness::geom::{in_convex_position, in_general_position};
use coarseness::{Color, ColoredPointSet, Point};
use coarseness_cli::instance::{emit_instance, parse_instance};
use coarseness_cli::report::ReportRecord;
use proptest::prelude::*;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarseness")).args(args).output().unwrap()
}

fn cli_ok(args: &[&str]) -> String {
    let out = cli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn cli_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_coarseness"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(args: &[&str]) -> ReportRecord {
    let mut rec = ReportRecord::from_json(&cli_ok(args)).unwrap();
    rec.timing_ms = 0;
    rec
}

fn without_timing(text: &str) -> String {
    text.lines().filter(|l| !l.contains("\"timing_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn golden_reports() {
    let sq = golden("square.txt");
    let sq = sq.to_str().unwrap();
    for cmd in ["d1", "d2", "coarse-exact", "coarse-approx"] {
        let got = without_timing(&cli_ok(&[cmd, sq]));
        let want = std::fs::read_to_string(golden(&format!("square.{cmd}.json"))).unwrap();
        assert_eq!(got, without_timing(&want), "{cmd}");
    }
}

#[test]
fn square_values() {
    let sq = golden("square.txt");
    let sq = sq.to_str().unwrap();
    let d1 = report(&["d1", sq]);
    assert_eq!((d1.n, d1.r, d1.b, d1.disc, d1.d1), (4, 2, 2, 0, Some(1)));
    assert_eq!(report(&["d2", sq]).d2, Some(2));
    assert_eq!(report(&["dk", "--k", "3", sq]).dk.map(|d| d.value), Some(2));
    let exact = report(&["coarse-exact", sq]);
    assert_eq!((exact.coarseness, exact.partitions_examined), (Some(1), Some(14)));
    let approx = report(&["coarse-approx", sq]);
    assert_eq!(approx.upper, Some(32));
    assert_eq!(approx.lower.map(|f| (f.numerator, f.denominator)), Some((1, 2)));
}

#[test]
fn gen_is_deterministic_and_valid() {
    let a = cli_ok(&["gen", "grid", "16", "--seed", "7"]);
    assert_eq!(a, cli_ok(&["gen", "grid", "16", "--seed", "7"]));
    assert_ne!(a, cli_ok(&["gen", "grid", "16", "--seed", "8"]));
    let gon = parse_instance(&cli_ok(&["gen", "convex-gon", "6"])).unwrap();
    assert_eq!(gon.len(), 6);
    assert!(in_convex_position(gon.points()));
    let disc = parse_instance(&cli_ok(&["gen", "random-disc", "100"])).unwrap();
    assert!(in_general_position(disc.points()));
    let red = parse_instance(&cli_ok(&["gen", "grid", "9", "--coloring", "red"])).unwrap();
    assert_eq!(red.red_count(), 9);
    let balanced = parse_instance(&cli_ok(&["gen", "random-disc", "9", "--coloring", "balanced"])).unwrap();
    assert_eq!(balanced.imbalance(), 1);
}

#[test]
fn reads_stdin() {
    let text = std::fs::read_to_string(golden("square.txt")).unwrap();
    let out = cli_stdin(&["d2"], &text);
    assert!(out.status.success());
    assert_eq!(ReportRecord::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap().d2, Some(2));
}

#[test]
fn exit_codes() {
    let bad = cli_stdin(&["d1"], "0 0 R\n1 1 B\n2 2 R\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("collinear"));
    let syntax = cli_stdin(&["disc"], "0 0 R\n1 2\n");
    assert_eq!(syntax.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("line 2"));
    let sq = golden("square.txt");
    assert_eq!(cli(&["dk", "--k", "2", "--budget", "10", sq.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(cli(&["dk", "--k", "9", sq.to_str().unwrap()]).status.code(), Some(2));
    let big = cli_ok(&["gen", "random-disc", "13"]);
    assert_eq!(cli_stdin(&["coarse-exact"], &big).status.code(), Some(3));
    assert_eq!(cli_stdin(&["coarse-exact", "--max-points", "5"], &cli_ok(&["gen", "grid", "6"])).status.code(), Some(3));
    assert_eq!(cli(&["d1", "/nonexistent/instance.txt"]).status.code(), Some(1));
}

#[test]
fn witness_partitions_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.txt");
    std::fs::write(&inst, cli_ok(&["gen", "random-disc", "9", "--seed", "2"])).unwrap();
    let inst = inst.to_str().unwrap();
    for cmd in ["coarse-exact", "coarse-approx"] {
        let rep = dir.path().join(format!("{cmd}.json"));
        let text = cli_ok(&[cmd, inst]);
        std::fs::write(&rep, &text).unwrap();
        let first = ReportRecord::from_json(&text).unwrap();
        let check = report(&["check-partition", "--blocks", rep.to_str().unwrap(), inst]);
        assert_eq!(check.valid, Some(true), "{cmd}");
        assert_eq!(check.witness_disc, first.witness_disc);
        assert_eq!(check.witness, first.witness);
    }
    let blocks = dir.path().join("bad.txt");
    std::fs::write(&blocks, "0 1 2\n2 3 4 5 6 7 8\n").unwrap();
    let check = report(&["check-partition", "--blocks", blocks.to_str().unwrap(), inst]);
    assert_eq!(check.valid, Some(false));
    assert!(check.violation.is_some());
}

#[test]
fn color_modes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.txt");
    let out = dir.path().join("o.txt");
    std::fs::write(&inst, cli_ok(&["gen", "grid", "25", "--seed", "3"])).unwrap();
    let (inst, out_s) = (inst.to_str().unwrap(), out.to_str().unwrap());
    let balanced = report(&["color", "--mode", "balanced", "--seed", "1", inst]);
    assert_eq!(balanced.disc, 1);
    let min = report(&["color", "--mode", "minimize", "--seed", "1", "--out", out_s, inst]);
    let written = parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let colors: String = written.colors().iter().map(|c| c.letter()).collect();
    assert_eq!(min.colors.as_deref(), Some(colors.as_str()));
    assert_eq!(min.upper, min.d2.map(|d| 16 * d as u64));
    assert!(min.d2 <= balanced.d2);
    let d1_run = report(&["color", "--mode", "minimize", "--objective", "d1", "--max-flips", "0", "--seed", "1", inst]);
    assert_eq!(d1_run.colors, balanced.colors);
}

#[test]
fn shatter_report() {
    let gon = cli_ok(&["gen", "convex-gon", "20", "--seed", "4"]);
    let out = cli_stdin(&["shatter", "--k", "2", "--m", "6", "--seed", "1"], &gon);
    let rec = ReportRecord::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let sh = rec.shatter.unwrap();
    assert!(sh.convex_position);
    assert_eq!((sh.k, sh.m, sh.convex_bound, sh.general_bound), (2, 6, 48, 432));
    assert!(sh.classes >= 1 && sh.classes <= sh.convex_bound);
}

#[test]
fn scaling_rows_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, svg) = (dir.path().join("s.csv"), dir.path().join("s.svg"));
    let stdout = cli_ok(&["experiment", "scaling", "--sizes", "64", "--seeds", "1"]);
    assert_eq!(stdout.lines().count(), 1 + 3);
    assert!(stdout.starts_with("n,seed,kind,d1,d2,certified_upper,elapsed_ms,status\n"));
    let summary = cli_ok(&[
        "experiment", "scaling", "--sizes", "64", "--seeds", "1", "--with-control", "--objective", "d1",
        "--csv", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    assert!(summary.contains("monochrome"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let control = text.lines().find(|l| l.contains("monochrome")).unwrap();
    assert!(control.starts_with("64,1,monochrome,64,64,1024,"));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("slope 1/4"));
}

#[test]
fn svg_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.svg");
    let sq = golden("square.txt");
    let rec = report(&["svg", "--out", out.to_str().unwrap(), sq.to_str().unwrap()]);
    assert_eq!(rec.d2, Some(2));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("<circle").count(), 4);
    assert!(svg.contains("<polygon") && svg.contains("<line"));
}

fn colored_set() -> impl Strategy<Value = ColoredPointSet> {
    prop::collection::vec(((-1000i64..1000, -1000i64..1000), any::<bool>()), 0..30)
        .prop_map(|v| {
            let pts: Vec<Point> = v.iter().map(|&(p, _)| p.into()).collect();
            let colors = v.iter().map(|&(_, r)| if r { Color::Red } else { Color::Blue }).collect();
            (pts, colors)
        })
        .prop_filter_map("general position", |(p, c)| ColoredPointSet::new(p, c).ok())
}

proptest! {
    #[test]
    fn instance_parse_emit_identity(ps in colored_set()) {
        let text = emit_instance(&ps);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &ps);
        prop_assert_eq!(emit_instance(&back), text);
    }

    #[test]
    fn report_json_identity(n in 0usize..50, d in 0u32..50, blocks in prop::collection::vec(prop::collection::vec(0usize..50, 0..5), 0..5), t in any::<u64>()) {
        let rec = ReportRecord {
            command: "x".into(), n, r: n / 2, b: n - n / 2, disc: d, d2: Some(d), upper: Some(16 * d as u64),
            witness: Some(blocks), timing_ms: t, ..Default::default()
        };
        let text = rec.to_json();
        let back = ReportRecord::from_json(&text).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(back.to_json(), text);
    }
}
