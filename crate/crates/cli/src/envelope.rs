//! The uniform JSON envelope every subcommand prints to stdout.
//!
//! An envelope echoes its full inputs so any run can be replayed from its
//! own output, and tags each payload value with where the number came
//! from: a recorded constant, a closed-form derivation, or a runtime
//! computation.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Bumped only when the envelope layout changes incompatibly.
pub const SCHEMA_VERSION: &str = "1";

/// Where a reported value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A recorded constant taken from the source results, not re-derivable
    /// by this tool (sharpness values, catalog claims).
    Reported,
    /// Follows from recorded data by exact closed-form arithmetic.
    Derived,
    /// Produced at runtime by search or finite-field measurement.
    Computed,
}

/// Failure report carried inside the envelope instead of a payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

/// One command's complete output.
#[derive(Debug, Clone, Serialize)]
pub struct ResultEnvelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Value,
    pub payload: Option<Value>,
    pub error: Option<ErrorReport>,
    pub provenance: BTreeMap<String, Provenance>,
}

impl ResultEnvelope {
    pub fn success(
        command: &'static str,
        inputs: Value,
        payload: Value,
        provenance: BTreeMap<String, Provenance>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            payload: Some(payload),
            error: None,
            provenance,
        }
    }

    pub fn failure(command: &'static str, inputs: Value, report: ErrorReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            payload: None,
            error: Some(report),
            provenance: BTreeMap::new(),
        }
    }

    /// Pretty JSON plus a trailing newline; the exact bytes written to
    /// stdout, so byte-identity of reruns can be asserted on this string.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

/// A failed command: a stable machine-readable kind, a human message, and
/// the process exit code (2 for domain errors, 3 for verification
/// failures).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            kind: "config_error".into(),
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn io(context: &str, err: &std::io::Error) -> Self {
        Self {
            kind: "io_error".into(),
            message: format!("{context}: {err}"),
            exit_code: 2,
        }
    }

    pub fn parse(kind: &str, message: impl Into<String>) -> Self {
        Self {
            kind: kind.into(),
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport {
            kind: self.kind.clone(),
            message: self.message.clone(),
            exit_code: self.exit_code,
        }
    }
}

/// Stable kind string for every library error.
fn error_kind(err: &irrk3::Error) -> &'static str {
    use irrk3::Error::*;
    match err {
        GenusTooSmall { .. } => "genus_too_small",
        OddChernSquare(_) => "odd_chern_square",
        RankTooSmall(_) => "rank_too_small",
        NegativeC2(_) => "negative_c2",
        CurveDegreeTooSmall { .. } => "curve_degree_too_small",
        ZeroMultiplicity => "zero_multiplicity",
        PlanTooLarge => "plan_too_large",
        InadmissiblePlan { .. } => "inadmissible_plan",
        BudgetTooLarge { .. } => "budget_too_large",
        NoStableObject(_) => "no_stable_object",
        EmptyStratum { .. } => "empty_stratum",
        UnsupportedCaseStudy(_) => "unsupported_case_study",
        QueryOutOfRange { .. } => "query_out_of_range",
        FixedPartTooBig { .. } => "fixed_part_too_big",
        CatalogMismatch { .. } => "catalog_mismatch",
        CatalogSectionMismatch { .. } => "catalog_section_mismatch",
        NotPrime(_) => "not_prime",
        FieldTooSmall { .. } => "field_too_small",
        FieldTooSmallForDegree { .. } => "field_too_small_for_degree",
        BadBundleDegrees { .. } => "bad_bundle_degrees",
        ZeroPoint => "zero_point",
        DuplicateBasePoint => "duplicate_base_point",
        InfeasiblePlan { .. } => "infeasible_plan",
        SamplingFailed(_) => "sampling_failed",
        DependentSections => "dependent_sections",
        DegenerateWedge => "degenerate_wedge",
        FieldMismatch { .. } => "field_mismatch",
        PlanNotSatisfied => "plan_not_satisfied",
        DegenerateFiber(_) => "degenerate_fiber",
        TooFewTargets { .. } => "too_few_targets",
        BookkeepingCheck(_) => "bookkeeping_check",
        ParseForm(_) => "parse_form",
        WrongFormDegree { .. } => "wrong_form_degree",
    }
}

/// Exit code 3 marks failures of the verification run itself (the
/// experiment could not be carried out or contradicted its bookkeeping);
/// everything else is a domain error (2).
fn error_exit_code(err: &irrk3::Error) -> i32 {
    use irrk3::Error::*;
    match err {
        SamplingFailed(_) | DegenerateFiber(_) | BookkeepingCheck(_) => 3,
        _ => 2,
    }
}

impl From<irrk3::Error> for Failure {
    fn from(err: irrk3::Error) -> Self {
        Self {
            kind: error_kind(&err).into(),
            message: err.to_string(),
            exit_code: error_exit_code(&err),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn success_envelope_shape() {
        let mut prov = BTreeMap::new();
        prov.insert("x".to_string(), Provenance::Derived);
        let env = ResultEnvelope::success("bound", json!({"genus": 6}), json!({"x": 3}), prov);
        let v: Value = serde_json::from_str(&env.render()).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["command"], "bound");
        assert_eq!(v["inputs"]["genus"], 6);
        assert_eq!(v["payload"]["x"], 3);
        assert_eq!(v["error"], Value::Null);
        assert_eq!(v["provenance"]["x"], "derived");
    }

    #[test]
    fn failure_envelope_has_null_payload() {
        let f = Failure::from(irrk3::Error::UnsupportedCaseStudy(7));
        assert_eq!(f.kind, "unsupported_case_study");
        assert_eq!(f.exit_code, 2);
        let env = ResultEnvelope::failure("bn", json!({"genus": 7}), f.report());
        let v: Value = serde_json::from_str(&env.render()).unwrap();
        assert_eq!(v["payload"], Value::Null);
        assert_eq!(v["error"]["exit_code"], 2);
        assert_eq!(v["error"]["kind"], "unsupported_case_study");
    }

    #[test]
    fn verification_failures_exit_three() {
        for err in [
            irrk3::Error::SamplingFailed(16),
            irrk3::Error::DegenerateFiber(8),
            irrk3::Error::BookkeepingCheck("x".into()),
        ] {
            assert_eq!(Failure::from(err).exit_code, 3);
        }
        for err in [
            irrk3::Error::NotPrime(10),
            irrk3::Error::PlanNotSatisfied,
            irrk3::Error::ZeroPoint,
        ] {
            assert_eq!(Failure::from(err).exit_code, 2);
        }
    }

    #[test]
    fn render_ends_with_single_newline() {
        let env = ResultEnvelope::failure("catalog", json!({}), Failure::config("x").report());
        let s = env.render();
        assert!(s.ends_with('\n'));
        assert!(!s.ends_with("\n\n"));
    }
}
