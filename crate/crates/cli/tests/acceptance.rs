//! The acceptance gate: one test per criterion, each printing a single
//! `acceptance NN <slug>: PASS` line (visible with `--nocapture`) once its
//! pinned expectations hold. Values are exact; time limits are pinned
//! wall-clock bounds measured around the relevant computation.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use serde_json::Value;

use irrk3::arith::{
    euler_char_abelian_surface, euler_char_k3, minimal_mukai_vector,
};
use irrk3::bound::{closed_form_bound, known_exact_values, optimize_range, TABLE_GENERA};
use irrk3::brill_noether::{case_study, relative_grassmannian_dim};
use irrk3::catalog::{catalog, validate_catalog, CatalogStatus};
use irrk3::oracle::{
    verify_formula, BasePoint, ExperimentStatus, PrimeFieldConfig, SplitBundle,
};

const REFERENCE_BOUNDS: [u64; 13] = [3, 4, 4, 5, 4, 5, 5, 6, 6, 7, 5, 6, 7];

fn pass(number: u32, slug: &str) {
    println!("acceptance {number:02} {slug}: PASS");
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_irrk3"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8"),
    )
}

#[test]
fn acceptance_01_table_reproduction() {
    let start = Instant::now();
    let (code, out) = run_cli(&["table"]);
    let elapsed = start.elapsed();
    assert_eq!(code, 0);
    let env: Value = serde_json::from_str(&out).unwrap();
    let rows = env["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), TABLE_GENERA.len());
    for ((row, &genus), &bound) in rows.iter().zip(&TABLE_GENERA).zip(&REFERENCE_BOUNDS) {
        assert_eq!(row["genus"].as_u64().unwrap(), genus);
        assert_eq!(
            row["closed_form"].as_u64().unwrap(),
            bound,
            "closed-form bound at genus {genus}"
        );
        assert_eq!(
            row["optimized"].as_u64().unwrap(),
            bound,
            "optimized bound at genus {genus}"
        );
    }
    assert!(
        elapsed < Duration::from_secs(1),
        "table took {elapsed:?}, limit 1 s"
    );
    pass(1, "table-reproduction");
}

#[test]
fn acceptance_02_closed_form_family() {
    let start = Instant::now();
    for n in 0u64..=100 {
        let genus = 2 + 2 * n * (n + 1);
        let bound = closed_form_bound(genus).unwrap();
        assert_eq!(
            bound.to_u64(),
            Some(2 + n),
            "closed form at genus {genus} (block start n = {n})"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "closed-form family took {elapsed:?}, limit 1 s"
    );
    pass(2, "closed-form-family");
}

#[test]
fn acceptance_03_optimizer_soundness() {
    let start = Instant::now();
    let certificates = optimize_range(2, 2000, true).unwrap();
    let mut improvements = Vec::new();
    for cert in &certificates {
        cert.check().unwrap();
        let closed = closed_form_bound(cert.genus).unwrap().to_u64().unwrap();
        assert!(
            cert.degree <= closed,
            "optimizer exceeded the closed form at genus {}",
            cert.genus
        );
        if cert.degree < closed {
            improvements.push(cert.genus);
        }
    }
    for (&genus, &bound) in TABLE_GENERA.iter().zip(&REFERENCE_BOUNDS) {
        let cert = &certificates[(genus - 2) as usize];
        assert_eq!(cert.genus, genus);
        assert_eq!(cert.degree, bound, "tabulated genus {genus} must match");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "sweep took {elapsed:?}, limit 30 s"
    );
    // Strict improvements are reports, not failures: the CLI must flag the
    // first one rather than erroring out.
    if let Some(&genus) = improvements.first() {
        let (code, out) = run_cli(&["bound", &genus.to_string()]);
        assert_eq!(code, 0);
        let env: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(env["payload"]["improved"], true);
        println!(
            "acceptance 03 note: optimizer strictly improves {} genera up to 2000 (first: {genus})",
            improvements.len()
        );
    }
    pass(3, "optimizer-soundness");
}

#[test]
fn acceptance_04_euler_characteristic_anchors() {
    assert_eq!(euler_char_k3(2, 10, 4).unwrap().to_i64(), Some(5));
    assert_eq!(euler_char_k3(2, 8, 4).unwrap().to_i64(), Some(4));
    assert_eq!(
        euler_char_abelian_surface(2, 12, 3).unwrap().to_i64(),
        Some(3)
    );
    pass(4, "euler-characteristic-anchors");
}

#[test]
fn acceptance_05_mukai_parity() {
    for genus in 2u64..=2000 {
        let v = minimal_mukai_vector(genus).unwrap();
        let square = v.mukai_square().to_i64().unwrap();
        let expected = if genus % 2 == 0 { -2 } else { 0 };
        assert_eq!(square, expected, "Mukai square at genus {genus}");
    }
    pass(5, "mukai-parity");
}

#[test]
fn acceptance_06_dimension_case_studies() {
    let five = case_study(5).unwrap();
    let w23 = &five.loci[0];
    assert!(w23.empty, "degree-3 locus in genus 5 must be empty");
    let w24 = &five.loci[1];
    let dims: Vec<u64> = w24.components.iter().map(|c| c.dimension).collect();
    assert_eq!(dims, vec![2, 5]);
    // The 5 must come out of the dimension formulas, not a stored constant.
    let v = minimal_mukai_vector(5u32).unwrap();
    let recomputed = relative_grassmannian_dim(&v, 2).unwrap().to_u64().unwrap();
    assert_eq!(dims[1], recomputed);

    let six = case_study(6).unwrap();
    assert_eq!(six.loci[0].components[0].dimension, 2);
    pass(6, "dimension-case-studies");
}

#[test]
fn acceptance_07_catalog_validation() {
    let entries = catalog();
    assert_eq!(entries.len(), 5);
    let report = validate_catalog().unwrap();
    let by_name = |n: &str| &report.iter().find(|(name, _)| name == n).unwrap().1;
    assert_eq!(
        by_name("AB2-(1,6)"),
        &CatalogStatus::Validated {
            derived_bound: 3,
            h0_from_euler: Some(3),
        }
    );
    assert_eq!(
        by_name("Hilb2-g6"),
        &CatalogStatus::Validated {
            derived_bound: 6,
            h0_from_euler: Some(5),
        }
    );
    pass(7, "catalog-validation");
}

#[test]
fn acceptance_08_oracle_full_degree() {
    let start = Instant::now();
    for (a, b) in [(1u32, 1u32), (1, 2), (2, 2), (2, 3)] {
        let bundle = SplitBundle::new(a, b).unwrap();
        for seed in 0..3u64 {
            let field = PrimeFieldConfig::new(997, seed).unwrap();
            let exp = verify_formula(bundle, &[], field, 5).unwrap();
            assert_eq!(
                exp.status,
                ExperimentStatus::Verified,
                "({a},{b}) seed {seed}"
            );
            assert_eq!(
                exp.measured_degree,
                Some(bundle.c2()),
                "({a},{b}) seed {seed} must measure the full intersection count"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "full-degree suite took {elapsed:?}, limit 60 s"
    );
    pass(8, "oracle-full-degree");
}

#[test]
fn acceptance_09_oracle_fat_point_drop() {
    let start = Instant::now();
    let corner = [0u64, 0, 1];
    for seed in 0..3u64 {
        let field = PrimeFieldConfig::new(997, seed).unwrap();

        let simple = BasePoint {
            point: corner,
            mult: 1,
        };
        let exp = verify_formula(SplitBundle::new(2, 2).unwrap(), &[simple], field, 5).unwrap();
        assert_eq!(exp.status, ExperimentStatus::Verified, "(2,2) seed {seed}");
        assert_eq!(exp.expected_degree, 3);
        assert_eq!(exp.measured_degree, Some(3), "4 - 1 with a simple point");

        let double = BasePoint {
            point: corner,
            mult: 2,
        };
        let exp = verify_formula(SplitBundle::new(2, 3).unwrap(), &[double], field, 5).unwrap();
        assert_eq!(exp.status, ExperimentStatus::Verified, "(2,3) seed {seed}");
        assert_eq!(exp.expected_degree, 2);
        assert_eq!(exp.measured_degree, Some(2), "6 - 4 with a double point");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "fat-point suite took {elapsed:?}, limit 60 s"
    );
    pass(9, "oracle-fat-point-drop");
}

#[test]
fn acceptance_10_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.txt");
    std::fs::write(&base, "0 0 1 2\n").unwrap();
    let base = base.to_str().unwrap();
    let args = [
        "verify", "--bundle", "2,3", "--base-points", base, "--seed", "11", "--targets", "6",
    ];
    let (code_a, out_a) = run_cli(&args);
    let (code_b, out_b) = run_cli(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert!(!out_a.is_empty());
    assert_eq!(
        out_a, out_b,
        "rerunning with the same seed must reproduce the envelope byte for byte"
    );
    pass(10, "determinism");
}

#[test]
fn acceptance_11_recorded_constants() {
    // Existence, stability, global generation, and sharpness are proofs,
    // not desk-scale computations. They enter as recorded constants, and
    // the tool must label them as such instead of pretending to re-derive
    // them.
    assert_eq!(known_exact_values(), &[(3, 3), (4, 3), (5, 4), (6, 3)]);
    let claims: Vec<(&str, u64)> = catalog()
        .iter()
        .map(|e| (e.name, e.claimed_bound))
        .collect();
    assert_eq!(
        claims,
        vec![
            ("GM3", 3),
            ("AB2-(1,6)", 3),
            ("Hilb2-g6", 6),
            ("AB3-(1,3,12)", 8),
            ("Hilb3-g10", 20),
        ]
    );
    for genus in [3u64, 4, 5, 6] {
        let (code, out) = run_cli(&["bound", &genus.to_string()]);
        assert_eq!(code, 0);
        let env: Value = serde_json::from_str(&out).unwrap();
        let exact = env["payload"]["known_exact"].as_u64().unwrap();
        let upper = env["payload"]["optimized"]["degree"].as_u64().unwrap();
        assert_eq!(env["provenance"]["known_exact"], "reported");
        assert!(
            exact <= upper,
            "recorded exact value must respect the computed upper bound at genus {genus}"
        );
    }
    pass(11, "recorded-constants");
}
