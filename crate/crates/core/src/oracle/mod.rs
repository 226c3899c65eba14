//! Finite-field verification of the degree-drop formula on split bundles.
//!
//! The toy model replaces the surface by the projective plane and the
//! kernel bundle by `O(a) + O(b)`. Three sections of the bundle span a
//! net; the induced map to the plane sends a point to the cross product of
//! the section-value rows. The fiber over a target `t` sits inside the
//! vanishing locus of the contracted section `sigma_t`, so the fiber
//! degree is the full intersection number `a * b` minus the local
//! multiplicities that the planned base points absorb. This module
//! samples constrained section triples, measures fiber degrees through a
//! resultant after a random coordinate change, and compares the result
//! against the combinatorial degree bound.
//!
//! Everything is deterministic for a fixed seed: every random choice is
//! drawn from a stream cipher keyed only by the run seed and the work
//! item's own coordinates, so parallel and sequential runs agree bit for
//! bit.

mod gf;
pub(crate) mod linalg;
pub mod poly;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bound::{degree_bound, MultiplicityPlan};
use crate::error::{Error, Result};
use gf::Fp;
use linalg::MatFp;
use poly::{monomial_count, resultant, Form, Poly1};

pub use gf::is_prime;

/// Smallest field size accepted for experiments.
pub const MIN_FIELD: u64 = 101;

/// Field size used when the caller does not pick one.
pub const DEFAULT_FIELD: u64 = 997;

/// Largest degree accepted for either split summand.
pub const MAX_SPLIT_DEGREE: u32 = 12;

/// Attempts at drawing an independent triple from the constrained space.
pub const SECTION_SAMPLE_ATTEMPTS: u32 = 16;

/// Attempts at finding a coordinate change that keeps the resultant
/// non-degenerate.
pub const COORDINATE_CHANGE_ATTEMPTS: u32 = 8;

/// Minimum number of fiber targets per experiment.
pub const MIN_TARGETS: u32 = 5;

/// Triple draws per experiment: one initial plus four resamples.
pub const TRIPLE_ATTEMPTS: u32 = 5;

/// Non-degenerate measurements needed before a verdict is accepted.
pub const MIN_QUORUM: u32 = 3;

const STREAM_TRIPLE: u64 = 1;
const STREAM_TARGET: u64 = 2;
const STREAM_FIBER: u64 = 3;

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a run seed with a list of tags into a fresh generator seed.
/// Distinct tag lists give statistically independent streams.
pub(crate) fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    let mut acc = splitmix64(seed);
    for &t in tags {
        acc = splitmix64(acc ^ t);
    }
    acc
}

/// Field size and run seed shared by every operation of one experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeFieldConfig {
    pub q: u64,
    pub seed: u64,
}

impl PrimeFieldConfig {
    /// Requires `q` prime and at least [`MIN_FIELD`].
    pub fn new(q: u64, seed: u64) -> Result<Self> {
        Fp::new_checked(q, MIN_FIELD)?;
        Ok(Self { q, seed })
    }
}

/// The split bundle `O(a) + O(b)` on the plane, with `1 <= a, b <= 12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitBundle {
    a: u32,
    b: u32,
}

impl SplitBundle {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if !(1..=MAX_SPLIT_DEGREE).contains(&a) || !(1..=MAX_SPLIT_DEGREE).contains(&b) {
            return Err(Error::BadBundleDegrees {
                a,
                b,
                max: MAX_SPLIT_DEGREE,
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Second Chern number `a * b`, the full intersection count.
    pub fn c2(&self) -> u64 {
        self.a as u64 * self.b as u64
    }

    /// Dimension of the section space.
    pub fn h0(&self) -> u64 {
        let plane_forms = |d: u64| (d + 1) * (d + 2) / 2;
        plane_forms(self.a as u64) + plane_forms(self.b as u64)
    }

    /// Degree of the determinant line bundle.
    pub fn det_degree(&self) -> u32 {
        self.a + self.b
    }
}

/// A planned base point: projective coordinates plus the vanishing order
/// imposed on every section of the net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasePoint {
    pub point: [u64; 3],
    pub mult: u32,
}

/// Scales a projective point so its first nonzero coordinate is 1.
fn normalize_point(fp: Fp, p: [u64; 3]) -> Result<[u64; 3]> {
    let mut r = [fp.reduce(p[0]), fp.reduce(p[1]), fp.reduce(p[2])];
    let Some(lead) = r.iter().position(|&c| c != 0) else {
        return Err(Error::ZeroPoint);
    };
    let inv = fp.inv(r[lead]);
    for c in r.iter_mut() {
        *c = fp.mul(*c, inv);
    }
    Ok(r)
}

/// Normalizes base points and rejects duplicates; multiplicity checks are
/// left to plan construction.
fn validate_base_points(fp: Fp, base_points: &[BasePoint]) -> Result<Vec<([u64; 3], u32)>> {
    let mut out = Vec::with_capacity(base_points.len());
    for bp in base_points {
        let norm = normalize_point(fp, bp.point)?;
        if out.iter().any(|&(p, _)| p == norm) {
            return Err(Error::DuplicateBasePoint);
        }
        out.push((norm, bp.mult));
    }
    Ok(out)
}

/// The multiplicity plan spanned by a list of base points.
pub fn plan_of(base_points: &[BasePoint]) -> Result<MultiplicityPlan> {
    MultiplicityPlan::new(base_points.iter().map(|bp| bp.mult).collect())
}

/// Rows expressing "vanishes to order `mult` at `point`" as linear
/// conditions on the coefficient vector of a degree-`degree` form. The
/// point must be normalized. One row per local expansion coefficient
/// `t^alpha s^beta` with `alpha + beta < mult`, where `t, s` move along
/// the two coordinate directions complementary to the leading one.
fn jet_rows(fp: Fp, degree: u32, point: [u64; 3], mult: u32) -> Vec<Vec<u64>> {
    let lead = point
        .iter()
        .position(|&c| c != 0)
        .expect("normalized point has a unit coordinate");
    debug_assert_eq!(point[lead], 1);
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let (u, v) = (others[0], others[1]);

    let d = degree as usize;
    let pow_table = |base: u64| {
        let mut t = vec![1 % fp.q; d + 1];
        for e in 1..=d {
            t[e] = fp.mul(t[e - 1], base);
        }
        t
    };
    let pu = pow_table(point[u]);
    let pv = pow_table(point[v]);

    // Pascal's triangle; entries stay below 2^32 for degrees up to 12.
    let mut binom = vec![vec![0u64; d + 1]; d + 1];
    for n in 0..=d {
        binom[n][0] = 1;
        for k in 1..=n {
            binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
        }
    }

    let mut rows = Vec::new();
    for total in 0..mult {
        for alpha in 0..=total as usize {
            let beta = total as usize - alpha;
            let mut row = vec![0u64; monomial_count(degree)];
            for (i, j, k) in poly::monomials(degree) {
                let e = [i as usize, j as usize, k as usize];
                let (eu, ev) = (e[u], e[v]);
                if alpha > eu || beta > ev {
                    continue;
                }
                let cu = fp.mul(fp.reduce(binom[eu][alpha]), pu[eu - alpha]);
                let cv = fp.mul(fp.reduce(binom[ev][beta]), pv[ev - beta]);
                row[poly::monomial_index(degree, i, j)] = fp.mul(cu, cv);
            }
            rows.push(row);
        }
    }
    rows
}

fn dot(fp: Fp, a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| fp.add(acc, fp.mul(x, y)))
}

/// Three sections of a split bundle, each a pair of forms of degrees
/// `(a, b)`, linearly independent and with independent wedge images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionTriple {
    bundle: SplitBundle,
    q: u64,
    sections: [(Form, Form); 3],
    solution_dim: Option<u32>,
}

impl SectionTriple {
    /// Wraps user-supplied forms after checking degrees, field agreement,
    /// linear independence, and wedge independence.
    pub fn from_forms(bundle: SplitBundle, q: u64, sections: [(Form, Form); 3]) -> Result<Self> {
        Self::validated(bundle, q, sections, None)
    }

    fn validated(
        bundle: SplitBundle,
        q: u64,
        sections: [(Form, Form); 3],
        solution_dim: Option<u32>,
    ) -> Result<Self> {
        let fp = Fp::new_checked(q, MIN_FIELD)?;
        for (p, s) in &sections {
            for form in [p, s] {
                if form.q() != q {
                    return Err(Error::FieldMismatch {
                        got: form.q(),
                        expected: q,
                    });
                }
            }
            if p.degree() != bundle.a() {
                return Err(Error::WrongFormDegree {
                    got: p.degree(),
                    expected: bundle.a(),
                });
            }
            if s.degree() != bundle.b() {
                return Err(Error::WrongFormDegree {
                    got: s.degree(),
                    expected: bundle.b(),
                });
            }
        }
        let width = monomial_count(bundle.a()) + monomial_count(bundle.b());
        let rows: Vec<Vec<u64>> = sections
            .iter()
            .map(|(p, s)| {
                let mut row = Vec::with_capacity(width);
                row.extend_from_slice(p.coeffs());
                row.extend_from_slice(s.coeffs());
                row
            })
            .collect();
        if MatFp::from_rows(fp, rows, width).rank() != 3 {
            return Err(Error::DependentSections);
        }
        let triple = Self {
            bundle,
            q,
            sections,
            solution_dim,
        };
        let wedges = wedge_map(&triple);
        let wrows: Vec<Vec<u64>> = wedges.iter().map(|w| w.coeffs().to_vec()).collect();
        if MatFp::from_rows(fp, wrows, monomial_count(bundle.det_degree())).rank() != 3 {
            return Err(Error::DegenerateWedge);
        }
        Ok(triple)
    }

    pub fn bundle(&self) -> SplitBundle {
        self.bundle
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sections(&self) -> &[(Form, Form); 3] {
        &self.sections
    }

    /// Dimension of the constrained section space the triple was drawn
    /// from; `None` for user-supplied triples.
    pub fn solution_dim(&self) -> Option<u32> {
        self.solution_dim
    }
}

/// The three wedge coordinates of the induced map to the plane: at every
/// point they form the cross product of the section-value rows, so the
/// fiber over `t` lies in the zero locus of `sum(t_i * section_i)`.
pub fn wedge_map(triple: &SectionTriple) -> [Form; 3] {
    let s = &triple.sections;
    let w = |i: usize, j: usize| s[i].0.mul(&s[j].1).sub(&s[j].0.mul(&s[i].1));
    [w(1, 2), w(0, 2).neg(), w(0, 1)]
}

/// Draws a section triple vanishing to the planned orders at the base
/// points, uniformly from the solution space of the jet conditions.
pub fn sample_sections(
    bundle: SplitBundle,
    base_points: &[BasePoint],
    field: PrimeFieldConfig,
) -> Result<SectionTriple> {
    let fp = Fp::new_checked(field.q, MIN_FIELD)?;
    let pts = validate_base_points(fp, base_points)?;
    sample_sections_inner(bundle, &pts, field, 0)
}

fn sample_sections_inner(
    bundle: SplitBundle,
    pts: &[([u64; 3], u32)],
    field: PrimeFieldConfig,
    attempt: u64,
) -> Result<SectionTriple> {
    let fp = Fp::new_checked(field.q, MIN_FIELD)?;
    let plan = MultiplicityPlan::new(pts.iter().map(|&(_, m)| m).collect())?;
    let cost = plan.condition_cost();
    let h0 = bundle.h0();
    if cost + 3 > h0 {
        return Err(Error::InfeasiblePlan { cost, h0 });
    }

    let na = monomial_count(bundle.a());
    let nb = monomial_count(bundle.b());
    let width = na + nb;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &(pt, m) in pts {
        for ra in jet_rows(fp, bundle.a(), pt, m) {
            let mut row = vec![0u64; width];
            row[..na].copy_from_slice(&ra);
            rows.push(row);
        }
        for rb in jet_rows(fp, bundle.b(), pt, m) {
            let mut row = vec![0u64; width];
            row[na..].copy_from_slice(&rb);
            rows.push(row);
        }
    }
    debug_assert_eq!(rows.len() as u64, cost);

    let basis: Vec<Vec<u64>> = if rows.is_empty() {
        (0..width)
            .map(|i| {
                let mut v = vec![0u64; width];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        MatFp::from_rows(fp, rows, width).nullspace()
    };
    let dim = basis.len() as u32;

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(
        field.seed,
        &[STREAM_TRIPLE, attempt, bundle.a() as u64, bundle.b() as u64],
    ));
    for _ in 0..SECTION_SAMPLE_ATTEMPTS {
        let mut combos = Vec::with_capacity(3);
        for _ in 0..3 {
            let mut vec = vec![0u64; width];
            for bvec in &basis {
                let s = fp.rand(&mut rng);
                for (slot, &c) in vec.iter_mut().zip(bvec) {
                    *slot = fp.add(*slot, fp.mul(c, s));
                }
            }
            combos.push(vec);
        }
        let sections: [(Form, Form); 3] = [0, 1, 2].map(|i| {
            let v: &Vec<u64> = &combos[i];
            (
                Form::from_dense(field.q, bundle.a(), v[..na].to_vec()),
                Form::from_dense(field.q, bundle.b(), v[na..].to_vec()),
            )
        });
        match SectionTriple::validated(bundle, field.q, sections, Some(dim)) {
            Ok(triple) => return Ok(triple),
            Err(Error::DependentSections | Error::DegenerateWedge) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailed(SECTION_SAMPLE_ATTEMPTS))
}

fn mat3_det(fp: Fp, m: &[[u64; 3]; 3]) -> u64 {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        fp.sub(fp.mul(m[r0][c0], m[r1][c1]), fp.mul(m[r0][c1], m[r1][c0]))
    };
    let t0 = fp.mul(m[0][0], minor(1, 2, 1, 2));
    let t1 = fp.mul(m[0][1], minor(1, 2, 0, 2));
    let t2 = fp.mul(m[0][2], minor(1, 2, 0, 1));
    fp.add(fp.sub(t0, t1), t2)
}

fn mat3_inverse(fp: Fp, m: &[[u64; 3]; 3], det: u64) -> [[u64; 3]; 3] {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        fp.sub(fp.mul(m[r0][c0], m[r1][c1]), fp.mul(m[r0][c1], m[r1][c0]))
    };
    let adj = [
        [cof(1, 2, 1, 2), cof(0, 2, 2, 1), cof(0, 1, 1, 2)],
        [cof(1, 2, 2, 0), cof(0, 2, 0, 2), cof(0, 1, 2, 0)],
        [cof(1, 2, 0, 1), cof(0, 2, 1, 0), cof(0, 1, 0, 1)],
    ];
    let dinv = fp.inv(det);
    adj.map(|row| row.map(|e| fp.mul(e, dinv)))
}

fn mat3_apply(fp: Fp, m: &[[u64; 3]; 3], v: [u64; 3]) -> [u64; 3] {
    [0, 1, 2].map(|r| dot(fp, &m[r], &v))
}

fn random_invertible(fp: Fp, rng: &mut ChaCha8Rng) -> Option<([[u64; 3]; 3], [[u64; 3]; 3])> {
    for _ in 0..64 {
        let m = [0; 3].map(|_| [0; 3].map(|_| fp.rand(rng)));
        let det = mat3_det(fp, &m);
        if det != 0 {
            return Some((m, mat3_inverse(fp, &m, det)));
        }
    }
    None
}

fn sample_projective_point(fp: Fp, rng: &mut ChaCha8Rng) -> [u64; 3] {
    loop {
        let p = [fp.rand(rng), fp.rand(rng), fp.rand(rng)];
        if p.iter().any(|&c| c != 0) {
            return normalize_point(fp, p).expect("nonzero point normalizes");
        }
    }
}

/// Everything one fiber measurement reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberMeasurement {
    /// Moving intersection count: `a * b` minus the base contributions.
    pub degree: u64,
    /// Resultant root multiplicity absorbed by each base point, in input
    /// order.
    pub base_multiplicities: Vec<u32>,
    /// Coordinate changes consumed before a non-degenerate one appeared.
    pub coordinate_changes: u32,
}

/// Degree of the fiber of the wedge map over `target`, measured as the
/// Bezout number minus the multiplicities absorbed at the base points.
pub fn fiber_degree(
    triple: &SectionTriple,
    base_points: &[BasePoint],
    target: [u64; 3],
    field: PrimeFieldConfig,
) -> Result<u64> {
    fiber_degree_detailed(triple, base_points, target, field).map(|m| m.degree)
}

/// As [`fiber_degree`], but reports the per-point bookkeeping too.
///
/// The measurement pipeline: contract the triple against the target to
/// get one section `(P, Q)`; apply a random coordinate change keeping the
/// vertical direction off both curves; interpolate the resultant in `y`
/// from `a * b + 1` column evaluations; read off the base contributions as
/// root multiplicities at the base columns. Rational points of the moving
/// part are then cross-checked in both coordinate systems.
pub fn fiber_degree_detailed(
    triple: &SectionTriple,
    base_points: &[BasePoint],
    target: [u64; 3],
    field: PrimeFieldConfig,
) -> Result<FiberMeasurement> {
    let fp = Fp::new_checked(field.q, MIN_FIELD)?;
    if triple.q != field.q {
        return Err(Error::FieldMismatch {
            got: triple.q,
            expected: field.q,
        });
    }
    let ab = triple.bundle.c2();
    if ab + 1 > field.q {
        return Err(Error::FieldTooSmallForDegree {
            q: field.q,
            degree: ab,
        });
    }
    let pts = validate_base_points(fp, base_points)?;
    let t = normalize_point(fp, target)?;

    let s = &triple.sections;
    let p_t = Form::linear_combination(&t, &[&s[0].0, &s[1].0, &s[2].0]);
    let q_t = Form::linear_combination(&t, &[&s[0].1, &s[1].1, &s[2].1]);
    if p_t.is_zero() || q_t.is_zero() {
        return Err(Error::DegenerateFiber(0));
    }

    let mut rng =
        ChaCha8Rng::seed_from_u64(derive_seed(field.seed, &[STREAM_FIBER, t[0], t[1], t[2]]));
    for attempt in 1..=COORDINATE_CHANGE_ATTEMPTS {
        let Some((m, m_inv)) = random_invertible(fp, &mut rng) else {
            continue;
        };
        let p2 = p_t.substitute(&m);
        let q2 = q_t.substitute(&m);
        if p2.pure_y_coeff() == 0 || q2.pure_y_coeff() == 0 {
            continue;
        }

        let mut cols: Vec<u64> = Vec::with_capacity(pts.len());
        let mut usable = true;
        for &(bp, _) in &pts {
            let img = mat3_apply(fp, &m_inv, bp);
            if img[2] == 0 {
                usable = false;
                break;
            }
            let c = fp.mul(img[0], fp.inv(img[2]));
            if cols.contains(&c) {
                usable = false;
                break;
            }
            cols.push(c);
        }
        if !usable {
            continue;
        }

        let samples: Vec<(u64, u64)> = (0..=ab)
            .map(|x| {
                (
                    x,
                    resultant(&p2.univariate_in_y(x), &q2.univariate_in_y(x)),
                )
            })
            .collect();
        let r = Poly1::interpolate(field.q, &samples);
        if r.is_zero() {
            // The contracted components share a factor; no coordinate
            // change can repair that.
            return Err(Error::DegenerateFiber(attempt));
        }
        if r.degree() != Some(ab as usize) {
            continue;
        }

        let mut moving = r.clone();
        let mut base_multiplicities = Vec::with_capacity(pts.len());
        let mut absorbed = 0u64;
        for (j, &c) in cols.iter().enumerate() {
            let mu = r.root_multiplicity(c);
            let order = pts[j].1 as u64;
            if (mu as u64) < order * order {
                return Err(Error::BookkeepingCheck(format!(
                    "base point {j} absorbs multiplicity {mu}, below the square of its order {order}"
                )));
            }
            let lin = Poly1::new(field.q, vec![fp.neg(c), 1]);
            for _ in 0..mu {
                let (quot, rem) = moving.divrem(&lin);
                debug_assert!(rem.is_zero());
                moving = quot;
            }
            base_multiplicities.push(mu);
            absorbed += mu as u64;
        }
        let degree = ab - absorbed;
        debug_assert_eq!(moving.degree(), Some(degree as usize));

        for (j, &(bp, _)) in pts.iter().enumerate() {
            if p_t.eval(bp) != 0 || q_t.eval(bp) != 0 {
                return Err(Error::BookkeepingCheck(format!(
                    "base point {j} is not on both fiber curves"
                )));
            }
        }
        for &x0 in &moving.rational_roots(&mut rng)? {
            if moving.root_multiplicity(x0) != 1 {
                continue;
            }
            let common = Poly1::gcd(&p2.univariate_in_y(x0), &q2.univariate_in_y(x0));
            let ys = common.rational_roots(&mut rng)?;
            let Some(&y0) = ys.first() else {
                return Err(Error::BookkeepingCheck(format!(
                    "no rational fiber point above column {x0}"
                )));
            };
            if p2.eval([x0, y0, 1]) != 0 || q2.eval([x0, y0, 1]) != 0 {
                return Err(Error::BookkeepingCheck(
                    "fiber point misses the transformed curves".into(),
                ));
            }
            let original = mat3_apply(fp, &m, [x0, y0, 1]);
            if p_t.eval(original) != 0 || q_t.eval(original) != 0 {
                return Err(Error::BookkeepingCheck(
                    "fiber point fails the original-coordinate check".into(),
                ));
            }
        }

        return Ok(FiberMeasurement {
            degree,
            base_multiplicities,
            coordinate_changes: attempt,
        });
    }
    Err(Error::DegenerateFiber(COORDINATE_CHANGE_ATTEMPTS))
}

/// Measures `count` random targets; degenerate targets come back as
/// `None`, real failures abort. Targets are keyed by `(attempt, index)`,
/// so each resampling round sees fresh ones.
fn measure_targets(
    triple: &SectionTriple,
    base_points: &[BasePoint],
    field: PrimeFieldConfig,
    count: u32,
    attempt: u64,
) -> Result<Vec<Option<u64>>> {
    let fp = Fp::new_checked(field.q, MIN_FIELD)?;
    crate::par::map_indexed(count as usize, |idx| {
        let mut trng = ChaCha8Rng::seed_from_u64(derive_seed(
            field.seed,
            &[STREAM_TARGET, attempt, idx as u64],
        ));
        let target = sample_projective_point(fp, &mut trng);
        match fiber_degree_detailed(triple, base_points, target, field) {
            Ok(m) => Ok(Some(m.degree)),
            Err(Error::DegenerateFiber(_)) => Ok(None),
            Err(e) => Err(e),
        }
    })
    .into_iter()
    .collect()
}

/// Verdict of a fiber experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentStatus {
    /// An agreed quorum of measurements matched the degree bound.
    Verified,
    /// No quorum of non-degenerate measurements ever agreed.
    Degenerate,
    /// Measurements agreed with each other but not with the bound, or a
    /// user-supplied triple produced inconsistent measurements.
    Mismatch,
}

/// Full record of one verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberExperiment {
    pub bundle: SplitBundle,
    pub base_plan: MultiplicityPlan,
    pub field: PrimeFieldConfig,
    /// Targets requested per attempt.
    pub requested_targets: u32,
    /// Degree predicted by the combinatorial bound.
    pub expected_degree: u64,
    /// Agreed measured degree, absent when the run stayed degenerate.
    pub measured_degree: Option<u64>,
    /// Total targets measured across all attempts.
    pub targets_tested: u32,
    /// Targets discarded as degenerate across all attempts.
    pub degenerate_targets: u32,
    /// Triple draws consumed.
    pub triple_attempts: u32,
    /// Dimension of the constrained section space, when sampled.
    pub solution_dim: Option<u32>,
    /// Non-degenerate measurements of the deciding attempt.
    pub measurements: Vec<u64>,
    pub status: ExperimentStatus,
}

/// Samples a constrained triple and checks the measured fiber degree
/// against the combinatorial bound `c2 - sum(m^2)`. Disagreeing
/// measurements trigger a full resample (fresh triple, fresh targets) up
/// to [`TRIPLE_ATTEMPTS`] times; an agreed quorum that contradicts the
/// bound is reported as a mismatch immediately.
pub fn verify_formula(
    bundle: SplitBundle,
    base_points: &[BasePoint],
    field: PrimeFieldConfig,
    targets: u32,
) -> Result<FiberExperiment> {
    if targets < MIN_TARGETS {
        return Err(Error::TooFewTargets {
            got: targets,
            min: MIN_TARGETS,
        });
    }
    let fp = Fp::new_checked(field.q, MIN_FIELD)?;
    let pts = validate_base_points(fp, base_points)?;
    let plan = plan_of(base_points)?;
    let expected = degree_bound(bundle.c2(), &plan)?;

    let mut targets_tested = 0u32;
    let mut degenerate_targets = 0u32;
    let mut attempts_used = 0u32;
    let mut last_good: Vec<u64> = Vec::new();
    let mut last_dim: Option<u32> = None;
    let mut verdict: Option<(u64, ExperimentStatus)> = None;
    for attempt in 0..TRIPLE_ATTEMPTS as u64 {
        attempts_used = attempt as u32 + 1;
        let triple = sample_sections_inner(bundle, &pts, field, attempt)?;
        let outcomes = measure_targets(&triple, base_points, field, targets, attempt)?;
        let good: Vec<u64> = outcomes.iter().flatten().copied().collect();
        targets_tested += targets;
        degenerate_targets += targets - good.len() as u32;
        last_dim = triple.solution_dim;
        last_good = good;
        if (last_good.len() as u32) < MIN_QUORUM {
            continue;
        }
        let first = last_good[0];
        if last_good.iter().all(|&g| g == first) {
            let status = if first == expected {
                ExperimentStatus::Verified
            } else {
                ExperimentStatus::Mismatch
            };
            verdict = Some((first, status));
            break;
        }
    }
    let (measured_degree, status) = match verdict {
        Some((deg, status)) => (Some(deg), status),
        None => (None, ExperimentStatus::Degenerate),
    };
    Ok(FiberExperiment {
        bundle,
        base_plan: plan,
        field,
        requested_targets: targets,
        expected_degree: expected,
        measured_degree,
        targets_tested,
        degenerate_targets,
        triple_attempts: attempts_used,
        solution_dim: last_dim,
        measurements: last_good,
        status,
    })
}

/// As [`verify_formula`], but measures a caller-supplied triple after
/// checking that it satisfies the planned jet conditions. One attempt
/// only: a fixed triple cannot be resampled, so inconsistent measurements
/// already count against it.
pub fn verify_formula_with(
    triple: &SectionTriple,
    base_points: &[BasePoint],
    field: PrimeFieldConfig,
    targets: u32,
) -> Result<FiberExperiment> {
    if triple.q != field.q {
        return Err(Error::FieldMismatch {
            got: triple.q,
            expected: field.q,
        });
    }
    if targets < MIN_TARGETS {
        return Err(Error::TooFewTargets {
            got: targets,
            min: MIN_TARGETS,
        });
    }
    let fp = Fp::new_checked(field.q, MIN_FIELD)?;
    let pts = validate_base_points(fp, base_points)?;
    for &(pt, m) in &pts {
        let rows_a = jet_rows(fp, triple.bundle.a(), pt, m);
        let rows_b = jet_rows(fp, triple.bundle.b(), pt, m);
        for (p, s) in &triple.sections {
            let vanishes = rows_a.iter().all(|row| dot(fp, row, p.coeffs()) == 0)
                && rows_b.iter().all(|row| dot(fp, row, s.coeffs()) == 0);
            if !vanishes {
                return Err(Error::PlanNotSatisfied);
            }
        }
    }
    let plan = plan_of(base_points)?;
    let expected = degree_bound(triple.bundle.c2(), &plan)?;
    let outcomes = measure_targets(triple, base_points, field, targets, 0)?;
    let good: Vec<u64> = outcomes.iter().flatten().copied().collect();
    let degenerate_targets = targets - good.len() as u32;
    let (measured_degree, status) = if (good.len() as u32) < MIN_QUORUM {
        (None, ExperimentStatus::Degenerate)
    } else if good.iter().all(|&g| g == good[0]) {
        let status = if good[0] == expected {
            ExperimentStatus::Verified
        } else {
            ExperimentStatus::Mismatch
        };
        (Some(good[0]), status)
    } else {
        (None, ExperimentStatus::Mismatch)
    };
    Ok(FiberExperiment {
        bundle: triple.bundle,
        base_plan: plan,
        field,
        requested_targets: targets,
        expected_degree: expected,
        measured_degree,
        targets_tested: targets,
        degenerate_targets,
        triple_attempts: 1,
        solution_dim: triple.solution_dim,
        measurements: good,
        status,
    })
}

/// Parses a section triple from text: six blocks separated by blank
/// lines, ordered `p0 q0 p1 q1 p2 q2`, where each block lists monomials
/// as `i j k c` lines (see [`Form::parse`]). The `p` blocks must have
/// degree `a`, the `q` blocks degree `b`.
pub fn parse_section_triple(bundle: SplitBundle, q: u64, text: &str) -> Result<SectionTriple> {
    let mut blocks: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut has_content = false;
    for raw in text.lines() {
        if raw.trim().is_empty() {
            if has_content {
                blocks.push(std::mem::take(&mut current));
            }
            current.clear();
            has_content = false;
            continue;
        }
        current.push_str(raw);
        current.push('\n');
        if !raw.split('#').next().unwrap_or("").trim().is_empty() {
            has_content = true;
        }
    }
    if has_content {
        blocks.push(current);
    }
    if blocks.len() != 6 {
        return Err(Error::ParseForm(format!(
            "expected 6 form blocks (p0 q0 p1 q1 p2 q2), found {}",
            blocks.len()
        )));
    }
    let degrees = [bundle.a(), bundle.b()];
    let mut forms: Vec<Form> = Vec::with_capacity(6);
    for (idx, block) in blocks.iter().enumerate() {
        forms.push(Form::parse(q, degrees[idx % 2], block)?);
    }
    let f = |i: usize| forms[i].clone();
    SectionTriple::from_forms(bundle, q, [(f(0), f(1)), (f(2), f(3)), (f(4), f(5))])
}
