use std::process::Command as Process;

use clap::Parser;
use serde_json::Value;
use snort_cli::cli::{run, Cli, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use snort_core::Family;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("snort").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli.command, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str]) -> (i32, String) {
    let output = Process::new(env!("CARGO_BIN_EXE_snort")).args(args).output().unwrap();
    (output.status.code().unwrap(), String::from_utf8(output.stdout).unwrap())
}

#[test]
fn solve_reports_path_six() {
    let (code, out, _) = run_args(&["solve", "--family", "path", "--n", "6"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "N");
    assert!(v["best_first_moves"]["Left"].as_array().unwrap().contains(&"g3_1".into()));
    assert!(v["stats"]["nodes_expanded"].as_u64().unwrap() > 0);
}

#[test]
fn no_memo_agrees_with_default_on_small_graphs() {
    let mut checked = 0;
    for family in Family::ALL {
        for n in (1..).take_while(|&n| family.vertex_count(n) <= 12) {
            let n = n.to_string();
            let base = ["solve", "--family", family.name(), "--n", &n];
            let (c1, memo, _) = run_args(&base);
            let (c2, plain, _) = run_args(&[&base[..], &["--no-memo"]].concat());
            let (c3, greedy, _) = run_args(&[&base[..], &["--order", "greedy"]].concat());
            assert_eq!((c1, c2, c3), (0, 0, 0));
            let outcome = |s: &str| serde_json::from_str::<Value>(s).unwrap()["outcome"].clone();
            assert_eq!(outcome(&memo), outcome(&plain), "{family} n={n}");
            assert_eq!(outcome(&memo), outcome(&greedy), "{family} n={n}");
            checked += 1;
        }
    }
    assert!(checked >= 20, "only {checked} graphs checked");
}

#[test]
fn table_of_two_row_family() {
    let (code, out, _) = run_args(&["table", "--families", "t2", "--n-min", "3", "--n-max", "10", "--json"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["report"]["outcome"] == "N" && r["flagged"] == false));
}

#[test]
fn empty_family_list_gives_empty_table() {
    let (code, out, _) = run_args(&["table", "--families", "", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Vec<Value>>(&out).unwrap().len(), 0);
}

#[test]
fn verify_renderings() {
    let (code, out, _) = run_args(&["verify", "--family", "bothaddone3", "--n", "5", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "win");
    assert_eq!(v["method"], "copycat");

    let (code, out, _) = run_args(&["verify", "--family", "t2", "--n", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["method"], "solver_check");

    let (code, out, _) = run_args(&["verify", "--family", "rightminusonly3", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("no proven strategy"), "{out}");
}

#[test]
fn export_formats() {
    let (_, dot, _) = run_args(&["export", "--family", "t2", "--n", "3"]);
    assert!(dot.starts_with("graph t2_3 {"));
    // two rows of 2 edges, 3 verticals, 2 diagonals
    assert_eq!(dot.matches(" -- ").count(), 9);
    let (_, json, _) = run_args(&["export", "--family", "t3", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn errors_map_to_exit_codes() {
    let (code, _, err) = run_args(&["solve", "--family", "t2", "--n", "40"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    let (code, _, err) = run_args(&["solve", "--family", "t3", "--n", "8", "--node-cap", "100"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
    let (code, _, _) = run_args(&["table", "--families", "t2", "--n-min", "4", "--n-max", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(Cli::try_parse_from(["snort", "solve", "--family", "t7", "--n", "2"]).is_err());
}

#[test]
fn binary_exit_statuses() {
    assert_eq!(binary(&["solve", "--family", "t2", "--n", "3"]).0, EXIT_OK);
    assert_eq!(binary(&["solve", "--family", "t2", "--n", "0"]).0, EXIT_USAGE);
    assert_eq!(binary(&["solve", "--family", "nope", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(binary(&["solve", "--family", "t3", "--n", "8", "--node-cap", "100"]).0, EXIT_BUDGET);
    let (code, out) = binary(&["verify", "--family", "t3", "--n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("win"));
}
