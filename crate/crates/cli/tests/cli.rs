use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ascentlab::io::{decomposition_from_json, instance_from_json};
use ascentlab::{build_family, check_path_decomposition, f_max, Assignment, Family, IntRange};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value as Json;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ascentlab"))
        .args(args)
        .env_remove("ASCENTLAB_INT_RANGE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn summary(o: &Output) -> Json {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in Family::ALL {
        let out = dir.path().join(format!("{}.json", family.name()));
        let o = run(&[
            "gen",
            "--family",
            family.name(),
            "--n",
            "6",
            "--out",
            path_str(&out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let parsed =
            instance_from_json(&fs::read_to_string(&out).unwrap(), IntRange::Wide).unwrap();
        let built = build_family(family, 6, IntRange::Wide).unwrap().instance;
        for _ in 0..1000 {
            let x: Assignment = built
                .domains
                .iter()
                .map(|d| rng.gen_range(0..d.size()))
                .collect::<Vec<_>>()
                .into();
            assert_eq!(
                parsed.evaluate_fitness(&x).unwrap(),
                built.evaluate_fitness(&x).unwrap()
            );
        }
    }
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("small.json");
    assert!(run(&[
        "gen",
        "--family",
        "2by3",
        "--n",
        "2",
        "--out",
        path_str(&out)
    ])
    .status
    .success());
    let inst = instance_from_json(&fs::read_to_string(&out).unwrap(), IntRange::Wide).unwrap();
    let values: Vec<_> = inst
        .assignments()
        .map(|x| inst.evaluate_fitness(&x).unwrap())
        .collect();
    assert_eq!((values.len(), values.iter().max()), (6, Some(&5)));

    let out = dir.path().join("pw4.json");
    let o = run(&[
        "gen",
        "--family",
        "bool-pw4",
        "--n",
        "4",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(
        (
            summary(&o)["variables"].as_u64(),
            summary(&o)["max_arity"].as_u64()
        ),
        (Some(10), Some(5))
    );
    let inst = instance_from_json(&fs::read_to_string(&out).unwrap(), IntRange::Wide).unwrap();
    let d = decomposition_from_json(
        &fs::read_to_string(dir.path().join("pw4.decomposition.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(check_path_decomposition(&inst, &d), Ok(4));
    let codec: Json =
        serde_json::from_str(&fs::read_to_string(dir.path().join("pw4.codec.json")).unwrap())
            .unwrap();
    assert!(codec.to_string().contains("sigma_AB"));

    let o = run(&[
        "gen",
        "--family",
        "2by3",
        "--n",
        "1",
        "--out",
        path_str(&dir.path().join("bad.json")),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ascend_examples() {
    let o = run(&[
        "ascend", "--family", "2by3", "--n", "4", "--engine", "ordered",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = summary(&o);
    assert_eq!(
        (s["steps"].as_u64(), s["terminal"].as_bool()),
        (Some(22), Some(true))
    );
    assert_eq!(s["final_fitness"], "22");

    let o = run(&[
        "ascend", "--family", "3by5", "--n", "4", "--engine", "steepest",
    ]);
    assert_eq!(summary(&o)["steps"].as_u64(), Some(44));
}

#[test]
fn ascend_from_file_with_traces() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("pw4.json");
    assert!(run(&[
        "gen",
        "--family",
        "bool-pw4",
        "--n",
        "5",
        "--out",
        path_str(&inst)
    ])
    .status
    .success());
    let csv = dir.path().join("t.csv");
    let o = run(&["ascend", path_str(&inst), "--trace", path_str(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let want = 2 * f_max(5).unwrap() as usize;
    assert_eq!(summary(&o)["steps"].as_u64(), Some(want as u64));
    let lines: Vec<String> = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines[0], "step,var,from,to,fitness");
    assert_eq!(lines.len(), want + 1);

    let json = dir.path().join("t.json");
    assert!(
        run(&["ascend", path_str(&inst), "--trace", path_str(&json)])
            .status
            .success()
    );
    let t: Json = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(t["steps"].as_array().unwrap().len(), want);
}

#[test]
fn ascend_from_start_file() {
    let dir = tempfile::tempdir().unwrap();
    let start = dir.path().join("start.json");
    fs::write(&start, "[1, 2]").unwrap();
    let o = run(&[
        "ascend",
        "--family",
        "2by3",
        "--n",
        "2",
        "--start",
        path_str(&start),
    ]);
    assert_eq!(summary(&o)["steps"].as_u64(), Some(0));
    fs::write(&start, "[2, 2]").unwrap();
    let o = run(&[
        "ascend",
        "--family",
        "2by3",
        "--n",
        "2",
        "--start",
        path_str(&start),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn step_limit_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let o = run(&[
        "ascend",
        "--family",
        "2by3",
        "--n",
        "6",
        "--step-limit",
        "1",
        "--trace",
        path_str(&csv),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(summary(&o)["terminal"].as_bool(), Some(false));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 2);
}

#[test]
fn first_improvement_is_reproducible() {
    let args = [
        "ascend", "--family", "3by5", "--n", "6", "--engine", "first", "--seed", "5",
    ];
    let (a, b) = (summary(&run(&args)), summary(&run(&args)));
    assert_eq!(a["steps"], b["steps"]);
    assert_eq!(a["final_fitness"], b["final_fitness"]);
    assert_eq!(a["seed"].as_u64(), Some(5));
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--check", "rank1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = summary(&o);
    assert_eq!(r["verdict"], "pass");
    assert!(r["notes"].to_string().contains("P: infeasible"));

    let o = run(&["verify", "--check", "all", "--cap", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);

    assert_eq!(run(&["verify", "--check", "nope"]).status.code(), Some(2));
}

#[test]
fn bench_examples() {
    let o = run(&["bench", "--family", "2by3", "--n", "2..=20"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,steps,seconds,steps_per_sec"));
    for (n, line) in (2..=20).zip(lines) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(
            cols[..3],
            ["2by3", &n.to_string(), &f_max(n).unwrap().to_string()]
        );
    }

    let o = run(&["bench", "--family", "bool-pw4", "--n", "2-12"]);
    for (n, line) in (2..=12).zip(stdout(&o).lines().skip(1)) {
        assert_eq!(
            line.split(',').nth(2).unwrap(),
            (2 * f_max(n).unwrap()).to_string()
        );
    }

    let o = run(&["bench", "--family", "3by5", "--n", ""]);
    assert_eq!(stdout(&o), "family,n,steps,seconds,steps_per_sec\n");
    assert_eq!(
        run(&["bench", "--family", "3by5", "--n", "x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn int_range_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_ascentlab"))
        .args(["ascend", "--family", "2by3", "--n", "4"])
        .env("ASCENTLAB_INT_RANGE", "64")
        .output()
        .unwrap();
    assert_eq!(summary(&o)["steps"].as_u64(), Some(22));
    let o = Command::new(env!("CARGO_BIN_EXE_ascentlab"))
        .args(["ascend", "--family", "2by3", "--n", "4"])
        .env("ASCENTLAB_INT_RANGE", "32")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
