//! Error type shared by all modules.

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus {genus} is out of range (minimum {min})")]
    GenusTooSmall { genus: BigInt, min: u32 },

    #[error("c1^2 = {0} must be even")]
    OddChernSquare(BigInt),

    #[error("rank {0} must be at least 1")]
    RankTooSmall(BigInt),

    #[error("c2 = {0} must be nonnegative")]
    NegativeC2(BigInt),

    #[error("curve degree {degree} must be at least genus + 1 = {genus} + 1")]
    CurveDegreeTooSmall { genus: BigInt, degree: BigInt },

    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,

    #[error("plan cost overflows the supported range")]
    PlanTooLarge,

    #[error("plan drops the degree by {degree_drop} but c2 = {c2}")]
    InadmissiblePlan { c2: u64, degree_drop: u64 },

    #[error("exhaustive search budget {budget} exceeds the supported maximum {max}")]
    BudgetTooLarge { budget: u64, max: u64 },

    #[error("no stable object: Mukai square {0} is below -2")]
    NoStableObject(BigInt),

    #[error("empty stratum: expected section count {h0} is below the requested subspace dimension {subspace}")]
    EmptyStratum { h0: BigInt, subspace: BigInt },

    #[error("no case-study data for genus {0}")]
    UnsupportedCaseStudy(u64),

    #[error("projection query needs r + 1 <= g + 1; got r = {r} in genus {genus}")]
    QueryOutOfRange { genus: u64, r: u32 },

    #[error("fixed part of degree {fixed_drop} exceeds the top Chern number {top_chern}")]
    FixedPartTooBig { top_chern: u64, fixed_drop: u64 },

    #[error("catalog entry {name}: derived bound {derived} != recorded bound {claimed}")]
    CatalogMismatch {
        name: String,
        derived: u64,
        claimed: u64,
    },

    #[error("catalog entry {name}: recorded h0 = {recorded} != Euler characteristic {derived}")]
    CatalogSectionMismatch {
        name: String,
        recorded: u64,
        derived: BigInt,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field size {q} is below the minimum {min}")]
    FieldTooSmall { q: u64, min: u64 },

    #[error("field size {q} cannot interpolate a resultant of degree {degree}")]
    FieldTooSmallForDegree { q: u64, degree: u64 },

    #[error("split bundle degrees must lie in 1..={max}; got ({a}, {b})")]
    BadBundleDegrees { a: u32, b: u32, max: u32 },

    #[error("projective point must have a nonzero coordinate mod q")]
    ZeroPoint,

    #[error("base points must be pairwise distinct")]
    DuplicateBasePoint,

    #[error("plan imposes {cost} conditions but the section space has dimension {h0}; a net needs {h0} - {cost} >= 3")]
    InfeasiblePlan { cost: u64, h0: u64 },

    #[error("failed to sample an independent section triple after {0} attempts")]
    SamplingFailed(u32),

    #[error("the three section pairs are linearly dependent")]
    DependentSections,

    #[error("the wedge images of the section pairs are linearly dependent")]
    DegenerateWedge,

    #[error("section triple lives over GF({got}) but the run requested GF({expected})")]
    FieldMismatch { got: u64, expected: u64 },

    #[error("sections do not vanish to the required orders at the base points")]
    PlanNotSatisfied,

    #[error("degenerate fiber measurement after {0} coordinate changes")]
    DegenerateFiber(u32),

    #[error("too few targets: {got} < {min}")]
    TooFewTargets { got: u32, min: u32 },

    #[error("internal bookkeeping check failed: {0}")]
    BookkeepingCheck(String),

    #[error("form parse error: {0}")]
    ParseForm(String),

    #[error("form has degree {got}, expected {expected}")]
    WrongFormDegree { got: u32, expected: u32 },
}
