#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ktors::batch::{read_records, run_batch, BatchOptions};
use ktors::engine::Engine;
use ktors::input::{format_line, parse_curves, parse_line, CurveRecord};
use ktors::record::ResultRecord;
use ktors::stats::{compute, profile};
use ktors::CliError;
use kummer_torsion::torsion::TorsionConfig;
use proptest::prelude::*;

const EXTORS3: &str = "1,2,7,8,9,4,3,2,1";

fn ktors(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ktors"))
        .args(args)
        .env_remove("KTORS_PACK_DIR")
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn xline_pack() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../packs/genus1-xline.pack")
}

fn corpus(curves: &[(i64, i64)]) -> String {
    curves.iter().map(|(a, b)| format!("E_{a}_{b} ; 1 ; {b},{a},0,1\n")).collect()
}

#[test]
fn plain_lines() {
    let rec = parse_line("c1 ; 3 ; 1,2,7,8,9,4,3,2,1   # extors3", 1).unwrap().unwrap();
    assert_eq!(rec.id, "c1");
    assert_eq!(rec.genus, 3);
    assert_eq!(rec.f.len(), 9);
    let rec = parse_line("half ; ; 1/2,0,0,-3/4", 1).unwrap().unwrap();
    assert_eq!(rec.genus, 1);
    assert_eq!(rec.f, ["1/2", "0", "0", "-3/4"]);
    assert!(parse_line("   # nothing", 1).unwrap().is_none());
    assert!(parse_line("", 1).unwrap().is_none());
}

#[test]
fn bracket_lines() {
    let rec = parse_line("[1,2,7,8,9,4,3,2,1]", 7).unwrap().unwrap();
    assert_eq!((rec.id.as_str(), rec.genus), ("7", 3));
    // y² + x·y = x³ + 1 is y² = 4x³ + x² + 4
    let rec = parse_line("e1: [[1,0,0,1],[0,1]]", 2).unwrap().unwrap();
    assert_eq!(rec.id, "e1");
    assert_eq!(rec.f, ["4", "0", "1", "4"]);
    let rec = parse_line("[[0,1,0,0,0,1],[1,1]]", 3).unwrap().unwrap();
    assert_eq!(rec.genus, 2);
}

#[test]
fn bad_lines() {
    let err = |s: &str| match parse_curves(s) {
        Err(CliError::Input(m)) => m,
        other => panic!("{other:?}"),
    };
    assert!(err("a ; 1 ; 1,0,0,1\na ; 1 ; 2,0,0,1\n").contains("duplicate id"));
    assert!(err("a ; 1 ; 1,0,x,1\n").starts_with("line 1"));
    assert!(err("a ; 1 ; 0,0,0,1\n").contains("squarefree"));
    assert!(err("a ; 2 ; 1,0,0,1\n").contains("degree"));
    assert!(err("just words\n").contains("unrecognised"));
    assert!(err("[1,2,3\n").contains("unbalanced"));
}

proptest! {
    #[test]
    fn curve_lines_round_trip(c in prop::collection::vec(-9i64..9, 4), lead in 1i64..5, den in 1i64..4) {
        let f: Vec<String> = c.iter().map(|x| format!("{x}/{den}")).chain([lead.to_string()]).collect();
        let line = format!("x ; 2 ; {},0", f.join(","));
        if let Ok(Some(rec)) = parse_line(&line, 1) {
            let back = parse_line(&format_line(&rec), 1).unwrap().unwrap();
            prop_assert_eq!(back, rec);
        }
    }
}

#[test]
fn records_round_trip() {
    let curves = parse_curves("a ; 1 ; 1,0,0,1\nb ; 1 ; 0,-1,0,1\nbad ; 3 ; 1,2,7,8,9,4,3,2,1\n").unwrap();
    let engine = Engine::new(TorsionConfig::default());
    for c in &curves {
        let rec = ktors::batch::run_one(&engine, c);
        assert_eq!(ResultRecord::from_line(&rec.to_line()).unwrap(), rec);
        if c.id == "bad" {
            assert!(rec.error.as_deref().unwrap().contains("formula pack"));
            assert!(rec.report().is_none());
        } else {
            let direct = engine.torsion(&c.curve().unwrap()).unwrap();
            assert_eq!(rec.report().unwrap(), direct);
        }
    }
}

#[test]
fn count_and_bound_commands() {
    let v = json(&ktors(&["count", "--curve", EXTORS3, "--genus", "3", "--p", "5"]));
    assert_eq!(v["order"], "180");
    assert_eq!(v["structure"], serde_json::json!(["3", "60"]));
    let v = json(&ktors(&["count", "--curve", EXTORS3, "--p", "7"]));
    assert_eq!(v["order"], "666");
    let v = json(&ktors(&["bound", "--curve", EXTORS3, "--primes-bound", "10"]));
    assert_eq!(v["order"], "18");
    assert_eq!(v["structure"], serde_json::json!(["6"]));
}

#[test]
fn two_torsion_command() {
    let v = json(&ktors(&["two-torsion", "--curve", "0,-1,0,1"]));
    assert_eq!(v["order"], 4);
    assert_eq!(v["rank"], 2);
}

#[test]
fn torsion_command_with_and_without_pack() {
    let builtin = json(&ktors(&["torsion", "--curve", "166,-43,0,1"]));
    assert_eq!(builtin["invariants"], serde_json::json!(["7"]));
    let pack = xline_pack();
    let packed = json(&ktors(&["torsion", "--curve", "166,-43,0,1", "--formula-pack", pack.to_str().unwrap()]));
    assert_eq!(packed["invariants"], builtin["invariants"]);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| ktors(args).status.code().unwrap();
    assert_eq!(code(&["count", "--curve", "1,0,0,1", "--p", "5"]), 0);
    // math-path failure: the precision cap is below what the height bound needs
    assert_eq!(code(&["torsion", "--curve", "166,-43,0,1", "--max-precision", "1"]), 1);
    assert_eq!(code(&["count", "--curve", "1,0,0,1", "--p", "3"]), 2);
    assert_eq!(code(&["count", "--curve", "1,0,x,1", "--p", "5"]), 2);
    assert_eq!(code(&["torsion", "--curve", EXTORS3]), 2);
    assert_eq!(code(&["no-such-command"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let good = xline_pack();
    assert_eq!(code(&["validate-pack", good.to_str().unwrap(), "--trials", "8"]), 0);
    let text = std::fs::read_to_string(&good).unwrap();
    let broken = dir.path().join("broken.pack");
    std::fs::write(&broken, text.replacen("[table delta", "[table deltaa", 1)).unwrap();
    assert_eq!(code(&["validate-pack", broken.to_str().unwrap()]), 2);
    let wrong = dir.path().join("wrong.pack");
    std::fs::write(&wrong, perturb_delta(&text)).unwrap();
    assert_eq!(code(&["validate-pack", wrong.to_str().unwrap(), "--trials", "8"]), 3);
    assert_eq!(code(&["torsion", "--curve", "1,0,0,1", "--formula-pack", wrong.to_str().unwrap()]), 3);
}

/// Changes the first monomial coefficient of the first delta polynomial.
fn perturb_delta(text: &str) -> String {
    let start = text.find("[table delta").unwrap();
    let brace = start + text[start..].find("{\n").unwrap() + 2;
    let end = brace + text[brace..].find('\n').unwrap();
    let line = &text[brace..end];
    let (c, rest) = line.trim_start().split_once(' ').unwrap();
    let bumped = if c == "1" { "2" } else { "1" };
    format!("{}{bumped} {rest}{}", &text[..brace], &text[end..])
}

#[test]
fn validate_pack_fills_trusted_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("trusted");
    let pack = xline_pack();
    let v = json(&ktors(&["validate-pack", pack.to_str().unwrap(), "--trials", "4", "--trusted-cache", cache.to_str().unwrap()]));
    assert_eq!(v["trusted"], true);
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.contains(v["checksum"].as_str().unwrap()));
}

#[test]
fn empty_batch() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.jsonl");
    std::fs::write(&input, "# nothing here\n").unwrap();
    let v = json(&ktors(&["batch", input.to_str().unwrap(), "-o", output.to_str().unwrap()]));
    assert_eq!(v["curves"], 0);
    assert!(v["profiles"].as_object().unwrap().is_empty());
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "");
}

#[test]
fn mini_corpus_stats_match_oracle() {
    let sample = common::sample_curves(30, 11);
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.jsonl");
    std::fs::write(&input, corpus(&sample)).unwrap();
    let curves = parse_curves(&corpus(&sample)).unwrap();
    let engine = Engine::new(TorsionConfig::default());
    let first = run_batch(&engine, &curves, &output, &BatchOptions { jobs: 4, resume: false }).unwrap();
    assert_eq!(first.computed, 30);

    let mut expected = std::collections::BTreeMap::new();
    for (a, b) in &sample {
        let inv: Vec<String> = common::brute_torsion(*a, *b).iter().map(|d| d.to_string()).collect();
        *expected.entry(profile(&inv)).or_insert(0usize) += 1;
    }
    assert_eq!(first.stats.profiles, expected);
    assert_eq!(first.stats.failed, 0);
    assert_eq!(first.stats.trivial, expected.get("[]").copied().unwrap_or(0));

    let again = run_batch(&engine, &curves, &output, &BatchOptions { jobs: 2, resume: true }).unwrap();
    assert_eq!(again.computed, 0);
    assert_eq!(again.skipped, 30);
    assert_eq!(again.stats, first.stats);
    assert_eq!(read_records(&output).unwrap().len(), 30);
}

#[test]
fn resume_after_torn_write() {
    let curves = parse_curves(&corpus(&[(0, 1), (-1, 0), (0, 2), (-43, 166)])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("out.jsonl");
    let engine = Engine::new(TorsionConfig::default());
    let full = run_batch(&engine, &curves, &output, &BatchOptions { jobs: 1, resume: false }).unwrap();

    // keep two complete lines and half of the third
    let text = std::fs::read_to_string(&output).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let torn = format!("{}\n{}\n{}", lines[0], lines[1], &lines[2][..lines[2].len() / 2]);
    std::fs::write(&output, torn).unwrap();
    assert_eq!(read_records(&output).unwrap().len(), 2);

    let resumed = run_batch(&engine, &curves, &output, &BatchOptions { jobs: 2, resume: true }).unwrap();
    assert_eq!((resumed.computed, resumed.skipped), (2, 2));
    assert_eq!(resumed.stats, full.stats);
    assert_eq!(read_records(&output).unwrap().len(), 4);
}

#[test]
fn disjoint_shards_give_the_same_stats() {
    let sample = common::sample_curves(16, 5);
    let dir = tempfile::tempdir().unwrap();
    let whole = dir.path().join("whole.txt");
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&whole, corpus(&sample)).unwrap();
    std::fs::write(&a, corpus(&sample[..7])).unwrap();
    std::fs::write(&b, corpus(&sample[7..])).unwrap();
    let out = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let spawn = |input: &Path, o: String| {
        Command::new(env!("CARGO_BIN_EXE_ktors"))
            .args(["batch", input.to_str().unwrap(), "-o", &o, "--jobs", "2"])
            .output()
    };
    let (ra, rb) = std::thread::scope(|s| {
        let ha = s.spawn(|| spawn(&a, out("a.jsonl")));
        let hb = s.spawn(|| spawn(&b, out("b.jsonl")));
        (ha.join().unwrap().unwrap(), hb.join().unwrap().unwrap())
    });
    assert!(ra.status.success() && rb.status.success());
    let single = json(&ktors(&["batch", whole.to_str().unwrap(), "-o", &out("whole.jsonl")]));
    let merged = json(&ktors(&["stats", &out("a.jsonl"), &out("b.jsonl")]));
    assert_eq!(merged, single);
}

#[test]
fn batch_id_filter_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.jsonl");
    std::fs::write(&input, format!("g3 ; 3 ; {EXTORS3}\ne ; 1 ; 1,0,0,1\nf ; 1 ; 2,0,0,1\n")).unwrap();
    let v = json(&ktors(&["batch", input.to_str().unwrap(), "-o", output.to_str().unwrap(), "--id", "g3", "--id", "e"]));
    assert_eq!(v["curves"], 2);
    assert_eq!(v["failed"], 1);
    assert_eq!(v["profiles"]["[6]"], 1);
    let recs = read_records(&output).unwrap();
    let failed = recs.iter().find(|r| r.id == "g3").unwrap();
    assert!(failed.error.is_some() && failed.pack_checksum.is_none());
}

#[test]
fn record_engine_metadata() {
    let c = CurveRecord::new("x", Some(1), &parse_curves("x ; 1 ; 1,0,0,1").unwrap()[0].coefficients().unwrap()).unwrap();
    let pack = kummer_torsion::pack::load_pack(xline_pack()).unwrap();
    let v = kummer_torsion::pack::ValidatedPack::new(pack.clone(), None, 4, 0).unwrap();
    let engine = Engine::new(TorsionConfig::default()).with_pack(v);
    let rec = ktors::batch::run_one(&engine, &c);
    assert_eq!(rec.pack_checksum, Some(kummer_torsion::pack::pack_checksum(&pack)));
    assert_eq!(rec.engine_version, env!("CARGO_PKG_VERSION"));
    assert_eq!(compute([&rec]).profiles.get("[6]"), Some(&1));
}
