use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cherednik(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(args)
        .current_dir(dir)
        .env_remove("CHEREDNIK_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_lines(path: &Path) -> Vec<Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn no_command_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(cherednik(dir.path(), &[]).status.code(), Some(2));
    assert_eq!(cherednik(dir.path(), &["no-such-command"]).status.code(), Some(2));
    assert_eq!(cherednik(dir.path(), &["--only", "2"]).status.code(), Some(2));
}

#[test]
fn bad_inputs_exit_two_without_artifact() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["support", "--group", "E9", "--table"][..],
        &["verma", "type-a", "--n", "3", "--r", "3"],
        &["cm-sim", "--x", "0,0", "--p", "1,1"],
        &["mm", "--group", "A2", "--k", "-1", "--seed", "1"],
        &["hecke", "dim", "--n", "4", "--q", "2"],
        &["dunkl-check", "--group", "B2", "--c", "1,2,3"],
    ] {
        let o = cherednik(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn invalid_worker_count_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(["poincare", "--group", "A2"])
        .current_dir(dir.path())
        .env("CHEREDNIK_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CHEREDNIK_WORKERS"));
}

#[test]
fn failed_assertion_exits_one() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["kz", "--group", "A1", "--c", "0.3", "--tol", "1e-18"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
    assert!(dir.path().join("kz.jsonl").exists());
}

#[test]
fn compute_failure_writes_a_witness() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["hecke", "rewrite", "--group", "A2", "--word", "1,2,1,2,1,2", "--move-cap", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let lines = json_lines(&dir.path().join("hecke.jsonl"));
    assert_eq!(lines[0]["schema"], "cherednik.hecke");
    assert_eq!(lines[1]["status"], "fail");
    assert!(lines[1]["error"].as_str().unwrap().contains("moves"));
}

#[test]
fn e7_support_table() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["support", "--group", "E7", "--table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("{2, 6, 14, 18}"));
    let text = fs::read_to_string(dir.path().join("support.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema: cherednik.support v1"));
    assert_eq!(
        lines.next(),
        Some("group,c,m,stratum,deg_count_W,deg_count_Wa,in_support,finite_dim")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let mut finite: Vec<&str> = rows.iter().filter(|r| r[7] == "true").map(|r| r[2]).collect();
    finite.dedup();
    assert_eq!(finite, ["2", "6", "14", "18"]);
    // there the support is the origin alone
    for r in rows.iter().filter(|r| r[7] == "true") {
        assert_eq!(r[6] == "true", r[3] == "E7", "{r:?}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let runs = [
        (&["cm-sim", "--n", "3", "--x", "-1,0,1", "--p", "0.3,0,-0.3", "--t0", "0", "--t1", "1", "--steps", "200", "--seed", "7"][..], "cm-sim.csv"),
        (&["mm", "--group", "A2", "--sweep", "0.5,1", "--samples", "20000", "--seed", "1"], "mm.jsonl"),
        (&["cm-check", "--n", "3", "--samples", "20", "--seed", "4"], "cm-check.jsonl"),
    ];
    for (args, file) in runs {
        assert_eq!(cherednik(dir.path(), args).status.code(), Some(0), "{args:?}");
        let first = fs::read(dir.path().join(file)).unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_cherednik"))
            .args(args)
            .current_dir(dir.path())
            .env("CHEREDNIK_WORKERS", "2")
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(first, fs::read(dir.path().join(file)).unwrap(), "{args:?}");
    }
}

#[test]
fn colliding_example_reports_the_collision() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(
        dir.path(),
        &["cm-sim", "--n", "3", "--x", "-1,0,1", "--p", "0.3,0,-0.3", "--t0", "0", "--t1", "1", "--steps", "200", "--seed", "7"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("stopped at t = 0.27"));
    let text = fs::read_to_string(dir.path().join("cm-sim.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# schema: cherednik.cm-sim v1");
    assert_eq!(lines[1], "t,x1,x2,x3,p1,p2,p3,H1,H2,H3");
    assert_eq!(lines.len(), 2 + 201);
    assert!(lines[2].starts_with("0,-1,0,1,"));
    // past the collision the positions are a complex conjugate pair
    assert!(lines.last().unwrap().starts_with("1,") && lines.last().unwrap().contains('i'));
}

#[test]
fn out_flag_and_no_leftover_temp_files() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["poincare", "--group", "B3", "--out", "sub/p.jsonl"]);
    assert_eq!(o.status.code(), Some(2), "missing parent directory is reported");
    fs::create_dir(dir.path().join("sub")).unwrap();
    let o = cherednik(dir.path(), &["poincare", "--group", "B3", "-o", "sub/p.jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = fs::read_dir(dir.path().join("sub"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, ["p.jsonl"]);
    let lines = json_lines(&dir.path().join("sub/p.jsonl"));
    assert_eq!(lines[0]["schema"], "cherednik.poincare");
    assert_eq!(lines[0]["version"], 1);
    assert_eq!(lines[1]["order"], 48);
    assert_eq!(lines[1]["degrees"], serde_json::json!([2, 4, 6]));
}

#[test]
fn mehta_monte_carlo_matches_at_k_one() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["mm", "--group", "A2", "--k", "1", "--samples", "100000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = json_lines(&dir.path().join("mm.jsonl"));
    let rec = &lines[1];
    assert!((rec["rhs"].as_f64().unwrap() - 12.0).abs() < 1e-9);
    assert!(rec["z"].as_f64().unwrap().abs() <= 3.0);
}

#[test]
fn selftest_subset() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["--selftest", "--only", "2,4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("criterion 2 PASS"));
    assert!(out.contains("criterion 4 PASS"));
    assert!(out.contains("2/2 criteria passed"));
    let lines = json_lines(&dir.path().join("selftest.jsonl"));
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2]["id"], 4);
    assert!(lines[1].get("seconds").is_none());
    assert_eq!(cherednik(dir.path(), &["--selftest", "--only", "10"]).status.code(), Some(2));
}

#[test]
fn rewrite_reports_the_deformed_braid_move() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["hecke", "rewrite", "--group", "A2", "--word", "2,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&dir.path().join("hecke.jsonl"));
    let rec = &lines[1];
    assert_eq!(rec["terms"].as_array().unwrap().len(), 3);
    assert_eq!(rec["legend"]["c6"], "e_3(t_21)");
    assert_eq!(rec["classical_ok"], true);
}

#[test]
fn kz_sweep_keeps_order() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["kz", "--group", "A1", "--sweep", "0.4,0.1,0.25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let cs: Vec<f64> = json_lines(&dir.path().join("kz.jsonl"))[1..]
        .iter()
        .map(|r| r["c"][0].as_f64().unwrap())
        .collect();
    assert_eq!(cs, [0.4, 0.1, 0.25]);
}

#[test]
fn verma_and_dunkl_commands_pass() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["verma", "rank1", "--m", "2", "--c", "3/2"][..],
        &["verma", "type-a", "--n", "3", "--r", "2", "--point", "0,1,2"],
        &["verma", "singular", "--group", "A2", "--c", "1/3", "--degree", "1"],
        &["verma", "gram", "--group", "B2", "--c", "1/2", "--degree", "2"],
        &["dunkl-check", "--group", "B2", "--c", "1/3,1/2", "--max-degree", "3"],
        &["hecke", "dim", "--n", "3", "--q", "3/7"],
        &["hecke", "classical", "--group", "I2(4)"],
    ] {
        let o = cherednik(dir.path(), args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
    let rank1 = json_lines(&dir.path().join("verma.jsonl"));
    assert_eq!(rank1[0]["schema"], "cherednik.verma");
}

#[test]
fn kz_on_a_cyclic_group() {
    let dir = TempDir::new().unwrap();
    let o = cherednik(dir.path(), &["kz", "--group", "Zm:3", "--c", "0.2,0.1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rec = &json_lines(&dir.path().join("kz.jsonl"))[1];
    assert_eq!(rec["eigenvalues"].as_array().unwrap().len(), 3);
    assert!(rec["eigenvalue_error"].as_f64().unwrap() < 1e-6);
    let o = cherednik(dir.path(), &["kz", "--group", "Zm:4", "--c", "0.2,0.1"]);
    assert_eq!(o.status.code(), Some(2));
}
