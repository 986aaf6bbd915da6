use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ucf_core::{ucf, ElementSet, SetFamily};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn ucf_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucf")).args(args).output().expect("run ucf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_base_case() {
    let o = ucf_bin(&["check", path_str(&data("base.ucf"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("size: 2\n"));
    assert!(out.contains("length: 1\n"));
    assert!(out.contains("theorem1: 2 (tight)\n"));
}

#[test]
fn check_top_layers_golden() {
    let o = ucf_bin(&["check", path_str(&data("top_3_1.ucf")), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("check_top_3_1.json"));
}

#[test]
fn check_rejects_bad_input() {
    let o = ucf_bin(&["check", path_str(&data("duplicate.ucf"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate.ucf:3:"), "{}", stderr(&o));

    let o = ucf_bin(&["check", path_str(&data("unsorted.ucf"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2:"));

    let o = ucf_bin(&["check", "/nonexistent/family.ucf"]);
    assert_eq!(o.status.code(), Some(2));

    let o = ucf_bin(&["check", path_str(&data("base.ucf")), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_reports_open_family() {
    let o = ucf_bin(&["check", path_str(&data("open.ucf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("union-closed: no ({1} ∪ {2} is missing)"));
}

#[test]
fn decompose_outputs() {
    let o = ucf_bin(&["decompose", path_str(&data("top_3_1.ucf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("decompose_top_3_1.txt"));

    let o = ucf_bin(&["decompose", path_str(&data("top_3_1.ucf")), "--format", "json"]);
    assert_eq!(stdout(&o), golden("decompose_top_3_1.json"));

    let o = ucf_bin(&["decompose", path_str(&data("base.ucf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("decompose_base.txt"));
    assert!(stdout(&o).contains("closure check skipped for block 1"));

    let o = ucf_bin(&["decompose", path_str(&data("pair.ucf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size: 1 + 2 = 3"));

    let o = ucf_bin(&["decompose", path_str(&data("open.ucf"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_exit_codes() {
    let o = ucf_bin(&["enumerate", "--n", "3", "--exhaustive", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("enumerate_3.json"));

    let o = ucf_bin(&["enumerate", "--n", "5", "--samples", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result: PASS\n"));

    assert_eq!(ucf_bin(&["enumerate", "--n", "9", "--exhaustive"]).status.code(), Some(2));
    assert_eq!(ucf_bin(&["enumerate", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        ucf_bin(&["enumerate", "--n", "3", "--exhaustive", "--samples", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_is_thread_independent() {
    let args = |t: &'static str| ["enumerate", "--n", "5", "--samples", "500", "--seed", "3", "--threads", t, "--format", "csv"];
    let one = stdout(&ucf_bin(&args("1")));
    let four = stdout(&ucf_bin(&args("4")));
    assert_eq!(one, four);
    assert!(one.starts_with("n,mode,seed,families_checked,"));
    assert!(one.lines().nth(1).unwrap().starts_with("5,sampled,3,500,0,"));

    let ex1 = stdout(&ucf_bin(&["enumerate", "--n", "4", "--exhaustive", "--threads", "1"]));
    let ex3 = stdout(&ucf_bin(&["enumerate", "--n", "4", "--exhaustive", "--threads", "3"]));
    assert_eq!(ex1, ex3);
}

#[test]
fn theta_table_rows() {
    let o = ucf_bin(&["theta-table", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out, golden("theta_table_12.csv"));
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    for r in &rows {
        let (n, k): (u32, u32) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        if k == 1 {
            assert_eq!(r[2], (n + 1).to_string());
            assert_eq!((r[4], r[5], r[6]), (r[2], "0", "1.0"));
        }
        if k == n {
            assert_eq!(r[2], (1u64 << n).to_string());
            assert_eq!(r[4], r[2]);
        }
    }
    let row = rows.iter().find(|r| r[0] == "10" && r[1] == "2").unwrap();
    assert_eq!((row[2], row[3]), ("56", "6"));

    let o = ucf_bin(&["theta-table", "--n-min", "10", "--n-max", "10", "--k", "2..3"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert_eq!(ucf_bin(&["theta-table", "--n-max", "1001"]).status.code(), Some(2));
    assert_eq!(ucf_bin(&["theta-table", "--n-max", "5", "--k", "0"]).status.code(), Some(2));
}

#[test]
fn extremal_and_closure_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("top.ucf");
    let o = ucf_bin(&["extremal", "--n", "3", "--ell", "1", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(ucf::parse(&text).unwrap(), SetFamily::top_layers(3, 1).unwrap());

    let o = ucf_bin(&["closure", path_str(&data("open.ucf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n2\n1 2\n");

    assert_eq!(ucf_bin(&["extremal", "--n", "25", "--ell", "1"]).status.code(), Some(2));
    assert_eq!(ucf_bin(&["extremal", "--n", "3", "--ell", "4"]).status.code(), Some(2));
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ucf_cli::run(["ucf", "check", path_str(&data("base.ucf"))], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, ucf_bin(&["check", path_str(&data("base.ucf"))]).stdout);
}

#[test]
fn emitted_families_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8u32);
        let picks: std::collections::BTreeSet<u64> =
            (0..rng.gen_range(1..20)).map(|_| rng.gen_range(1..(1u64 << n))).collect();
        let f = SetFamily::new(picks.into_iter().map(|b| ElementSet::from_bits(b).unwrap()))
            .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.ucf");
        std::fs::write(&input, ucf::write(&f)).unwrap();
        let o = ucf_bin(&["closure", path_str(&input)]);
        assert_eq!(o.status.code(), Some(0));
        let closed = ucf::parse(&stdout(&o)).unwrap();
        assert_eq!(closed, ucf_core::union_closure(&f));
        assert_eq!(ucf::write(&closed), stdout(&o));
    }
}
