//! End-to-end tests of the `irrk3` binary: exit codes, envelope shape,
//! determinism, format agreement, config overrides, and cache behavior.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn irrk3_in(dir: Option<&Path>, args: &[&str]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_irrk3"));
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    let out = cmd.args(args).output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn irrk3(args: &[&str]) -> (i32, String, String) {
    irrk3_in(None, args)
}

fn envelope(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is one JSON envelope")
}

#[test]
fn bound_six_succeeds_with_known_exact_value() {
    let (code, out, _) = irrk3(&["bound", "6"]);
    assert_eq!(code, 0);
    let env = envelope(&out);
    assert_eq!(env["schema_version"], "1");
    assert_eq!(env["command"], "bound");
    assert_eq!(env["inputs"]["genus"], 6);
    assert_eq!(env["payload"]["closed_form"], 3);
    assert_eq!(env["payload"]["optimized"]["degree"], 3);
    assert_eq!(env["payload"]["improved"], false);
    assert_eq!(env["payload"]["known_exact"], 3);
    assert_eq!(env["error"], Value::Null);
    assert_eq!(env["provenance"]["known_exact"], "reported");
}

#[test]
fn bound_one_is_a_domain_error_envelope() {
    let (code, out, _) = irrk3(&["bound", "1"]);
    assert_eq!(code, 2);
    let env = envelope(&out);
    assert_eq!(env["payload"], Value::Null);
    assert_eq!(env["error"]["kind"], "genus_too_small");
    assert_eq!(env["error"]["exit_code"], 2);
}

#[test]
fn bn_seven_exits_two() {
    let (code, out, _) = irrk3(&["bn", "--genus", "7"]);
    assert_eq!(code, 2);
    assert_eq!(envelope(&out)["error"]["kind"], "unsupported_case_study");
}

#[test]
fn catalog_lists_five_entries() {
    let (code, out, _) = irrk3(&["catalog"]);
    assert_eq!(code, 0);
    let env = envelope(&out);
    assert_eq!(env["payload"]["entries"].as_array().unwrap().len(), 5);
    assert_eq!(env["provenance"]["entries.claimed_bound"], "reported");
}

#[test]
fn verify_reruns_are_byte_identical() {
    let args = ["verify", "--bundle", "2,2", "--seed", "7", "--targets", "6"];
    let (code_a, out_a, _) = irrk3(&args);
    let (code_b, out_b, _) = irrk3(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(out_a, out_b, "same seed must reproduce the envelope bytes");
    let env = envelope(&out_a);
    assert_eq!(env["payload"]["status"], "verified");
    assert_eq!(env["payload"]["expected_degree"], 4);
    assert_eq!(env["payload"]["measured_degree"], 4);
}

#[test]
fn verify_distinct_seeds_still_agree_on_the_degree() {
    let (_, out_a, _) = irrk3(&["verify", "--bundle", "2,3", "--seed", "1"]);
    let (_, out_b, _) = irrk3(&["verify", "--bundle", "2,3", "--seed", "2"]);
    assert_ne!(out_a, out_b, "inputs echo differs, so bytes must differ");
    let a = envelope(&out_a);
    let b = envelope(&out_b);
    assert_eq!(a["payload"]["measured_degree"], 6);
    assert_eq!(b["payload"]["measured_degree"], 6);
}

#[test]
fn verify_mismatching_sections_exit_three() {
    // Every section of this triple is tangent to the line x = 0 at the
    // planned simple base point [0:0:1], so the shared tangent raises the
    // local intersection multiplicity above the planned 1, and the
    // measured degree falls below the prediction c2 - 1 = 3.
    let dir = tempfile::tempdir().unwrap();
    let sections = "\
# p0 = xz + y^2
1 0 1 1
0 2 0 1

# q0 = x^2
2 0 0 1

# p1 = x^2
2 0 0 1

# q1 = xz
1 0 1 1

# p2 = xy
1 1 0 1

# q2 = y^2 + xz
0 2 0 1
1 0 1 1
";
    std::fs::write(dir.path().join("sections.txt"), sections).unwrap();
    std::fs::write(dir.path().join("base.txt"), "0 0 1 1\n").unwrap();
    let (code, out, _) = irrk3_in(
        Some(dir.path()),
        &[
            "verify",
            "--bundle",
            "2,2",
            "--base-points",
            "base.txt",
            "--sections",
            "sections.txt",
        ],
    );
    assert_eq!(code, 3);
    let env = envelope(&out);
    assert_eq!(env["payload"]["status"], "mismatch");
    assert_eq!(env["payload"]["expected_degree"], 3);
    assert_eq!(env["payload"]["measured_degree"], 2);
    // The echo carries content, not paths, so the run is replayable.
    assert!(env["inputs"]["sections"].as_str().unwrap().contains("2 0 0 1"));
    assert_eq!(env["inputs"]["base_points"][0]["mult"], 1);
}

#[test]
fn verify_rejects_nonprime_field() {
    let (code, out, _) = irrk3(&["verify", "--bundle", "1,1", "--q", "100"]);
    assert_eq!(code, 2);
    assert_eq!(envelope(&out)["error"]["kind"], "not_prime");
}

#[test]
fn table_formats_carry_identical_numbers() {
    let (code, json_out, _) = irrk3(&["table", "--from", "6", "--to", "12"]);
    assert_eq!(code, 0);
    let rows = envelope(&json_out)["payload"]["rows"].clone();
    let rows = rows.as_array().unwrap();

    let (code, csv, _) = irrk3(&["table", "--from", "6", "--to", "12", "--format", "csv"]);
    assert_eq!(code, 0);
    let csv_lines: Vec<&str> = csv.lines().collect();
    assert_eq!(csv_lines[0], "genus,n,k,closed_form,optimized");
    assert_eq!(csv_lines.len(), rows.len() + 1);

    let (code, md, _) = irrk3(&["table", "--from", "6", "--to", "12", "--format", "md"]);
    assert_eq!(code, 0);
    let md_lines: Vec<&str> = md.lines().collect();
    assert_eq!(md_lines.len(), rows.len() + 2);

    for (i, row) in rows.iter().enumerate() {
        let want: Vec<u64> = ["genus", "n", "k", "closed_form", "optimized"]
            .iter()
            .map(|k| row[*k].as_u64().unwrap())
            .collect();
        let from_csv: Vec<u64> = csv_lines[i + 1]
            .split(',')
            .map(|c| c.parse().unwrap())
            .collect();
        assert_eq!(from_csv, want);
        let from_md: Vec<u64> = md_lines[i + 2]
            .split('|')
            .filter(|c| !c.trim().is_empty())
            .map(|c| c.trim().parse().unwrap())
            .collect();
        assert_eq!(from_md, want);
    }
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "field_size = 1009\nseed = 5\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let (code, out, _) = irrk3(&["verify", "--bundle", "1,1", "--config", cfg]);
    assert_eq!(code, 0);
    let env = envelope(&out);
    assert_eq!(env["inputs"]["q"], 1009);
    assert_eq!(env["inputs"]["seed"], 5);

    let (code, out, _) = irrk3(&["verify", "--bundle", "1,1", "--config", cfg, "--q", "997"]);
    assert_eq!(code, 0);
    assert_eq!(envelope(&out)["inputs"]["q"], 997);
}

#[test]
fn bad_config_is_reported_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "sede = 7\n").unwrap();
    let (code, out, _) = irrk3(&["bound", "6", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    let env = envelope(&out);
    assert_eq!(env["error"]["kind"], "config_error");
    assert!(env["inputs"]["config_file"].as_str().unwrap().contains("run.cfg"));
}

#[test]
fn cache_is_a_pure_memo() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo");
    let cache = cache.to_str().unwrap();
    let args = [
        "verify", "--bundle", "2,2", "--seed", "3", "--cache", cache,
    ];
    let (code_a, out_a, _) = irrk3(&args);
    assert_eq!(code_a, 0);
    let entries: Vec<_> = std::fs::read_dir(cache).unwrap().collect();
    assert_eq!(entries.len(), 1, "first run populates one entry");

    let (code_b, out_b, _) = irrk3(&args);
    assert_eq!(code_b, 0);
    assert_eq!(out_a, out_b, "a cache hit must not change the output");

    let (code_c, out_c, _) = irrk3(&args[..args.len() - 2]);
    assert_eq!(code_c, 0);
    assert_eq!(out_a, out_c, "cache absence must not change the output");
}

#[test]
fn missing_base_point_file_is_an_io_error() {
    let (code, out, _) = irrk3(&["verify", "--bundle", "1,1", "--base-points", "/nonexistent/x.txt"]);
    assert_eq!(code, 2);
    let env = envelope(&out);
    assert_eq!(env["error"]["kind"], "io_error");
    // The echo falls back to the path when the content could not be read.
    assert!(env["inputs"]["base_points"]
        .as_str()
        .unwrap()
        .contains("nonexistent"));
}

#[test]
fn optimize_exhaustive_beats_greedy_at_genus_82() {
    let (code, out, _) = irrk3(&["optimize", "82", "--exhaustive"]);
    assert_eq!(code, 0);
    let exact = envelope(&out)["payload"]["certificate"]["degree"]
        .as_u64()
        .unwrap();
    let (code, out, _) = irrk3(&["optimize", "82"]);
    assert_eq!(code, 0);
    let env = envelope(&out);
    let greedy = env["payload"]["certificate"]["degree"].as_u64().unwrap();
    assert_eq!(env["payload"]["certificate"]["heuristic"], true);
    assert!(exact < greedy, "exhaustive search improves genus 82");
}
