//! One function per subcommand, each producing the echoed inputs, the
//! payload, per-value provenance, and the process exit code.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use irrk3::arith::decompose_genus;
use irrk3::bound::{
    closed_form_certificate, known_exact_values, optimize_bound, TABLE_GENERA,
};
use irrk3::brill_noether::case_study;
use irrk3::catalog::{catalog, validate_catalog};
use irrk3::oracle::{
    parse_section_triple, verify_formula, verify_formula_with, BasePoint, ExperimentStatus,
    PrimeFieldConfig, SplitBundle,
};

use crate::cache;
use crate::config::{OutputFormat, RunConfig};
use crate::envelope::{Failure, Provenance};
use crate::formats::{self, TableRow};

/// Targets measured per verification attempt when the flag is absent.
pub const DEFAULT_TARGETS: u32 = 8;

/// A finished command, ready to be wrapped in an envelope.
#[derive(Debug)]
pub struct CommandRun {
    pub name: &'static str,
    pub inputs: Value,
    pub outcome: Result<Success, Failure>,
}

/// The successful half of a command run. `rendered` replaces the JSON
/// envelope on stdout when a plain-text document format was requested.
#[derive(Debug)]
pub struct Success {
    pub payload: Value,
    pub provenance: BTreeMap<String, Provenance>,
    pub exit_code: i32,
    pub rendered: Option<String>,
}

impl Success {
    fn json(payload: Value, provenance: BTreeMap<String, Provenance>) -> Self {
        Self {
            payload,
            provenance,
            exit_code: 0,
            rendered: None,
        }
    }
}

fn provenance(entries: &[(&str, Provenance)]) -> BTreeMap<String, Provenance> {
    entries
        .iter()
        .map(|(k, p)| (k.to_string(), *p))
        .collect()
}

/// `bound <g>`: the closed-form bound next to the certified optimum, with
/// the recorded exact value where one is known.
pub fn run_bound(genus: u64) -> CommandRun {
    let inputs = json!({ "genus": genus });
    let outcome = (|| {
        let closed = closed_form_certificate(genus)?;
        let optimized = optimize_bound(genus, true)?;
        let known = known_exact_values()
            .iter()
            .find(|&&(g, _)| g == genus)
            .map(|&(_, v)| v);
        let improved = optimized.degree < closed.degree;
        let payload = json!({
            "genus": genus,
            "closed_form": closed.degree,
            "closed_form_certificate": serde_json::to_value(&closed).expect("serializes"),
            "optimized": serde_json::to_value(&optimized).expect("serializes"),
            "improved": improved,
            "known_exact": known,
        });
        Ok(Success::json(
            payload,
            provenance(&[
                ("closed_form", Provenance::Derived),
                ("closed_form_certificate", Provenance::Derived),
                ("optimized", Provenance::Computed),
                ("improved", Provenance::Computed),
                ("known_exact", Provenance::Reported),
            ]),
        ))
    })();
    CommandRun {
        name: "bound",
        inputs,
        outcome,
    }
}

fn table_row(genus: u64) -> Result<TableRow, Failure> {
    let d = decompose_genus(genus)?;
    let n = d.n().to_u64().expect("n fits in u64 for u64 genus");
    let k = d.k().to_u64().expect("k fits in u64 for u64 genus");
    let closed_form = closed_form_certificate(genus)?.degree;
    let optimized = optimize_bound(genus, true)?.degree;
    Ok(TableRow {
        genus,
        n,
        k,
        closed_form,
        optimized,
    })
}

/// `table`: the reference genera by default, or `--from/--to` stepping by
/// 2, emitted as JSON, CSV, or Markdown.
pub fn run_table(
    from: Option<u64>,
    to: Option<u64>,
    format: Option<OutputFormat>,
    cfg: &RunConfig,
) -> CommandRun {
    let format = format.unwrap_or(cfg.output_format);
    let format_name = match format {
        OutputFormat::Json => "json",
        OutputFormat::Csv => "csv",
        OutputFormat::Markdown => "markdown",
    };
    let inputs = json!({ "from": from, "to": to, "format": format_name });
    let outcome = (|| {
        let genera: Vec<u64> = if from.is_none() && to.is_none() {
            TABLE_GENERA.to_vec()
        } else {
            let (min, max) = cfg.genus_range;
            let lo = from.unwrap_or(min);
            let hi = to.unwrap_or(max);
            if hi < lo {
                return Err(Failure::config(format!(
                    "table range is empty: --from {lo} exceeds --to {hi}"
                )));
            }
            if lo < min || hi > max {
                return Err(Failure::config(format!(
                    "table range {lo}..={hi} lies outside the configured genus range {min}..={max}"
                )));
            }
            (lo..=hi).step_by(2).collect()
        };
        let rows = genera
            .iter()
            .map(|&g| table_row(g))
            .collect::<Result<Vec<_>, Failure>>()?;
        let payload = json!({
            "genera": genera,
            "rows": serde_json::to_value(&rows).expect("rows serialize"),
        });
        let rendered = match format {
            OutputFormat::Json => None,
            OutputFormat::Csv => Some(formats::to_csv(&rows)),
            OutputFormat::Markdown => Some(formats::to_markdown(&rows)),
        };
        Ok(Success {
            payload,
            provenance: provenance(&[
                ("genera", Provenance::Derived),
                ("rows.n", Provenance::Derived),
                ("rows.k", Provenance::Derived),
                ("rows.closed_form", Provenance::Derived),
                ("rows.optimized", Provenance::Computed),
            ]),
            exit_code: 0,
            rendered,
        })
    })();
    CommandRun {
        name: "table",
        inputs,
        outcome,
    }
}

/// `optimize <g>`: the plan optimizer alone; `--exhaustive` searches the
/// full plan table, otherwise the fast greedy packer runs and the
/// certificate carries a `heuristic` flag.
pub fn run_optimize(genus: u64, exhaustive: bool) -> CommandRun {
    let inputs = json!({ "genus": genus, "exhaustive": exhaustive });
    let outcome = (|| {
        let certificate = optimize_bound(genus, exhaustive)?;
        let closed_form = closed_form_certificate(genus)?.degree;
        let improved = certificate.degree < closed_form;
        let payload = json!({
            "certificate": serde_json::to_value(&certificate).expect("serializes"),
            "closed_form": closed_form,
            "improved": improved,
        });
        Ok(Success::json(
            payload,
            provenance(&[
                ("certificate", Provenance::Computed),
                ("closed_form", Provenance::Derived),
                ("improved", Provenance::Computed),
            ]),
        ))
    })();
    CommandRun {
        name: "optimize",
        inputs,
        outcome,
    }
}

/// `bn --genus <g>`: the worked dimension case study for that genus.
pub fn run_bn(genus: u64) -> CommandRun {
    let inputs = json!({ "genus": genus });
    let outcome = (|| {
        let study = case_study(genus)?;
        let payload = json!({
            "case_study": serde_json::to_value(&study).expect("serializes"),
        });
        Ok(Success::json(
            payload,
            provenance(&[
                ("case_study.component_structure", Provenance::Reported),
                ("case_study.dimensions", Provenance::Derived),
                ("case_study.emptiness", Provenance::Computed),
            ]),
        ))
    })();
    CommandRun {
        name: "bn",
        inputs,
        outcome,
    }
}

/// `catalog`: the recorded higher-dimensional estimates, revalidated.
pub fn run_catalog() -> CommandRun {
    let inputs = json!({});
    let outcome = (|| {
        let entries = catalog();
        let validation: Vec<Value> = validate_catalog()?
            .into_iter()
            .map(|(name, status)| {
                json!({
                    "name": name,
                    "label": status.label(),
                    "check": serde_json::to_value(&status).expect("serializes"),
                })
            })
            .collect();
        let payload = json!({
            "entries": serde_json::to_value(&entries).expect("serializes"),
            "validation": validation,
        });
        Ok(Success::json(
            payload,
            provenance(&[
                ("entries.claimed_bound", Provenance::Reported),
                ("entries.top_chern", Provenance::Reported),
                ("entries.h0", Provenance::Reported),
                ("validation", Provenance::Derived),
            ]),
        ))
    })();
    CommandRun {
        name: "catalog",
        inputs,
        outcome,
    }
}

/// Flags of `verify` after defaulting against the config.
#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub bundle: (u32, u32),
    pub base_points: Option<PathBuf>,
    pub q: Option<u64>,
    pub seed: Option<u64>,
    pub targets: Option<u32>,
    pub sections: Option<PathBuf>,
}

/// Parses the base-point file format: one `x y z mult` line per point,
/// whitespace-separated, `#` comments allowed.
fn parse_base_points(text: &str) -> Result<Vec<BasePoint>, Failure> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Failure::parse(
                "parse_base_points",
                format!(
                    "line {}: expected `x y z mult`, found {} field(s)",
                    idx + 1,
                    fields.len()
                ),
            ));
        }
        let coord = |s: &str| -> Result<u64, Failure> {
            s.parse().map_err(|_| {
                Failure::parse(
                    "parse_base_points",
                    format!("line {}: {s:?} is not a nonnegative integer", idx + 1),
                )
            })
        };
        let mult: u32 = fields[3].parse().map_err(|_| {
            Failure::parse(
                "parse_base_points",
                format!(
                    "line {}: multiplicity {:?} is not a nonnegative integer",
                    idx + 1,
                    fields[3]
                ),
            )
        })?;
        out.push(BasePoint {
            point: [coord(fields[0])?, coord(fields[1])?, coord(fields[2])?],
            mult,
        });
    }
    Ok(out)
}

fn verify_provenance() -> BTreeMap<String, Provenance> {
    provenance(&[
        ("base_plan", Provenance::Derived),
        ("expected_degree", Provenance::Derived),
        ("measured_degree", Provenance::Computed),
        ("measurements", Provenance::Computed),
        ("status", Provenance::Computed),
    ])
}

fn verify_outcome(
    bundle: (u32, u32),
    points: &[BasePoint],
    sections: Option<&str>,
    q: u64,
    seed: u64,
    targets: u32,
    cache_dir: Option<&Path>,
    inputs: &Value,
) -> Result<Success, Failure> {
    let key = cache::cache_key("verify", inputs);
    if let Some(dir) = cache_dir {
        if let Some(payload) = cache::lookup(dir, &key) {
            let exit_code = exit_for_status(&payload);
            return Ok(Success {
                payload,
                provenance: verify_provenance(),
                exit_code,
                rendered: None,
            });
        }
    }
    let bundle = SplitBundle::new(bundle.0, bundle.1)?;
    let field = PrimeFieldConfig::new(q, seed)?;
    let experiment = match sections {
        None => verify_formula(bundle, points, field, targets)?,
        Some(text) => {
            let triple = parse_section_triple(bundle, q, text)?;
            verify_formula_with(&triple, points, field, targets)?
        }
    };
    let exit_code = if experiment.status == ExperimentStatus::Verified {
        0
    } else {
        3
    };
    let payload = serde_json::to_value(&experiment).expect("experiment serializes");
    if let Some(dir) = cache_dir {
        // A cache write failure must not change the result; warn and move on.
        if let Err(f) = cache::store(dir, &key, &payload) {
            eprintln!("warning: {}", f.message);
        }
    }
    Ok(Success {
        payload,
        provenance: verify_provenance(),
        exit_code,
        rendered: None,
    })
}

/// `verify --bundle a,b [...]`: measure fiber degrees of a (possibly
/// constrained) projection over GF(q) and compare with the predicted
/// degree. Inputs are echoed by content, not by path, so the cache key and
/// replayability survive file moves.
pub fn run_verify(args: &VerifyArgs, cfg: &RunConfig, cache_dir: Option<&Path>) -> CommandRun {
    const NAME: &str = "verify";
    let q = args.q.unwrap_or(cfg.field_size);
    let seed = args.seed.unwrap_or(cfg.seed);
    let targets = args.targets.unwrap_or(DEFAULT_TARGETS);
    let path_inputs = json!({
        "bundle": [args.bundle.0, args.bundle.1],
        "q": q,
        "seed": seed,
        "targets": targets,
        "base_points": args.base_points.as_ref().map(|p| p.display().to_string()),
        "sections": args.sections.as_ref().map(|p| p.display().to_string()),
    });
    let fail = |f: Failure| CommandRun {
        name: NAME,
        inputs: path_inputs.clone(),
        outcome: Err(f),
    };

    let base_text = match &args.base_points {
        None => String::new(),
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => return fail(Failure::io(&format!("reading {}", p.display()), &e)),
        },
    };
    let points = match parse_base_points(&base_text) {
        Ok(p) => p,
        Err(f) => return fail(f),
    };
    let sections_text = match &args.sections {
        None => None,
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => Some(t),
            Err(e) => return fail(Failure::io(&format!("reading {}", p.display()), &e)),
        },
    };

    let inputs = json!({
        "bundle": [args.bundle.0, args.bundle.1],
        "q": q,
        "seed": seed,
        "targets": targets,
        "base_points": serde_json::to_value(&points).expect("points serialize"),
        "sections": sections_text,
    });
    let outcome = verify_outcome(
        args.bundle,
        &points,
        sections_text.as_deref(),
        q,
        seed,
        targets,
        cache_dir,
        &inputs,
    );
    CommandRun {
        name: NAME,
        inputs,
        outcome,
    }
}

fn exit_for_status(payload: &Value) -> i32 {
    if payload.get("status").and_then(Value::as_str) == Some("verified") {
        0
    } else {
        3
    }
}
