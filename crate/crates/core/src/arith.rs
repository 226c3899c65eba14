//! Exact integer arithmetic underlying the bound computations.
//!
//! Everything here is arbitrary-precision: Euler characteristics, the Mukai
//! pairing, the genus decomposition `g = 2 + 2n(n+1) + k`, and the
//! invariants of the minimal rank-2 bundle. Downstream modules convert to
//! machine integers only at the edges, where sizes are provably small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

fn ensure_genus(genus: &BigInt, min: u32) -> Result<()> {
    if *genus < BigInt::from(min) {
        return Err(Error::GenusTooSmall {
            genus: genus.clone(),
            min,
        });
    }
    Ok(())
}

/// A polarized K3 surface of genus `g >= 2`, carrying an ample line bundle
/// `L` with `L^2 = 2g - 2`. The type records the polarization numerics; it
/// does not verify that `Pic(S) = Z L`, which is an assumption on the
/// surfaces the bounds apply to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedK3 {
    genus: BigInt,
    l_selfint: BigInt,
}

impl PolarizedK3 {
    pub fn new(genus: impl Into<BigInt>) -> Result<Self> {
        let genus = genus.into();
        ensure_genus(&genus, 2)?;
        let l_selfint = &genus * 2 - 2;
        Ok(Self { genus, l_selfint })
    }

    pub fn genus(&self) -> &BigInt {
        &self.genus
    }

    /// `L^2 = 2g - 2`.
    pub fn l_selfint(&self) -> &BigInt {
        &self.l_selfint
    }

    /// `h^0(L) = g + 1`, so `|L|` maps to `P^g`.
    pub fn section_count(&self) -> BigInt {
        &self.genus + 1
    }
}

/// Mukai vector `(r, c1^2, s)` of a sheaf with determinant `L`, where
/// `s = chi - r`. `c1^2` must be even (it is the self-intersection of a
/// divisor class on a surface with even intersection form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVector {
    rank: BigInt,
    c1sq: BigInt,
    s: BigInt,
}

impl MukaiVector {
    pub fn new(
        rank: impl Into<BigInt>,
        c1sq: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Result<Self> {
        let rank = rank.into();
        let c1sq = c1sq.into();
        let s = s.into();
        if rank < BigInt::from(1) {
            return Err(Error::RankTooSmall(rank));
        }
        if c1sq.is_odd() {
            return Err(Error::OddChernSquare(c1sq));
        }
        Ok(Self { rank, c1sq, s })
    }

    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    pub fn c1sq(&self) -> &BigInt {
        &self.c1sq
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    /// Self-pairing `v^2 = c1^2 - 2 r s`. Always even.
    pub fn mukai_square(&self) -> BigInt {
        &self.c1sq - (&self.rank * &self.s) * 2
    }

    /// `chi = r + s`; equals `h^0` when the higher cohomology vanishes.
    pub fn expected_sections(&self) -> BigInt {
        &self.rank + &self.s
    }
}

/// Self-pairing of a Mukai vector; moduli of stable sheaves with vector `v`
/// are nonempty exactly when `v^2 >= -2` and have dimension `v^2 + 2`.
pub fn mukai_square(v: &MukaiVector) -> BigInt {
    v.mukai_square()
}

/// The decomposition `g = 2 + 2n(n+1) + k` with `0 <= k < 4n + 4`, which
/// exists and is unique for every `g >= 2`. `n` is the coarse scale of the
/// genus; `k` the remainder driving the parity corrections in the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusDecomposition {
    n: BigInt,
    k: BigInt,
}

impl GenusDecomposition {
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    /// Reassembles `2 + 2n(n+1) + k`.
    pub fn genus(&self) -> BigInt {
        (&self.n * (&self.n + 1)) * 2 + &self.k + 2
    }
}

fn decomposition_floor(n: &BigInt) -> BigInt {
    (n * (n + 1)) * 2 + 2
}

/// Decomposes `g >= 2` as `g = 2 + 2n(n+1) + k`, `0 <= k < 4n + 4`.
pub fn decompose_genus(genus: impl Into<BigInt>) -> Result<GenusDecomposition> {
    let genus = genus.into();
    ensure_genus(&genus, 2)?;
    // Initial guess n = floor((sqrt(2g - 3) - 1) / 2), then settle by
    // comparison; the guess is off by at most one.
    let mut n = ((&genus * 2i32 - 3i32).sqrt() - 1i32).div_floor(&BigInt::from(2));
    while decomposition_floor(&(&n + 1)) <= genus {
        n += 1;
    }
    while decomposition_floor(&n) > genus {
        n -= 1;
    }
    let k = &genus - decomposition_floor(&n);
    debug_assert!(k >= BigInt::zero() && k < (&n * 4 + 4));
    Ok(GenusDecomposition { n, k })
}

/// Riemann-Roch on a K3 surface: `chi(E) = 2 rank + c1^2 / 2 - c2`.
pub fn euler_char_k3(
    rank: impl Into<BigInt>,
    c1sq: impl Into<BigInt>,
    c2: impl Into<BigInt>,
) -> Result<BigInt> {
    let rank = rank.into();
    let c1sq = c1sq.into();
    let c2 = c2.into();
    if c1sq.is_odd() {
        return Err(Error::OddChernSquare(c1sq));
    }
    Ok(rank * 2 + c1sq / 2 - c2)
}

/// Riemann-Roch on an abelian surface: `chi(E) = c1^2 / 2 - c2`. The rank
/// does not enter because the Todd class is trivial; the parameter is kept
/// so bundle data can be passed through unchanged.
pub fn euler_char_abelian_surface(
    rank: impl Into<BigInt>,
    c1sq: impl Into<BigInt>,
    c2: impl Into<BigInt>,
) -> Result<BigInt> {
    let _ = rank.into();
    let c1sq = c1sq.into();
    let c2 = c2.into();
    if c1sq.is_odd() {
        return Err(Error::OddChernSquare(c1sq));
    }
    Ok(c1sq / 2 - c2)
}

/// Smallest admissible `c2` for the rank-2 bundle of genus `g`:
/// `ceil((g + 2) / 2) = 2 + n(n+1) + ceil(k/2)`.
pub fn minimal_c2(genus: impl Into<BigInt>) -> Result<BigInt> {
    let genus = genus.into();
    ensure_genus(&genus, 2)?;
    Ok((genus + 3i32).div_floor(&BigInt::from(2)))
}

/// Chern and section data of a rank-`r` bundle with `det = L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleInvariants {
    pub rank: BigInt,
    pub c2: BigInt,
    pub chi: BigInt,
    /// `max(chi, 0)`: the sections guaranteed in the generically
    /// non-special situation the bounds operate in.
    pub h0_expected: BigInt,
}

impl BundleInvariants {
    pub fn on_k3(rank: impl Into<BigInt>, surface: &PolarizedK3, c2: impl Into<BigInt>) -> Result<Self> {
        let rank = rank.into();
        let c2 = c2.into();
        if rank < BigInt::from(1) {
            return Err(Error::RankTooSmall(rank));
        }
        if c2 < BigInt::zero() {
            return Err(Error::NegativeC2(c2));
        }
        let chi = euler_char_k3(rank.clone(), surface.l_selfint().clone(), c2.clone())?;
        let h0_expected = chi.clone().max(BigInt::zero());
        Ok(Self {
            rank,
            c2,
            chi,
            h0_expected,
        })
    }

    pub fn on_abelian_surface(
        rank: impl Into<BigInt>,
        l_selfint: impl Into<BigInt>,
        c2: impl Into<BigInt>,
    ) -> Result<Self> {
        let rank = rank.into();
        let c2 = c2.into();
        if rank < BigInt::from(1) {
            return Err(Error::RankTooSmall(rank));
        }
        if c2 < BigInt::zero() {
            return Err(Error::NegativeC2(c2));
        }
        let chi = euler_char_abelian_surface(rank.clone(), l_selfint, c2.clone())?;
        let h0_expected = chi.clone().max(BigInt::zero());
        Ok(Self {
            rank,
            c2,
            chi,
            h0_expected,
        })
    }
}

/// Invariants of the minimal rank-2 bundle on a genus-`g` K3: `c2` as small
/// as a globally generated bundle with a net of sections allows.
pub fn minimal_bundle(genus: impl Into<BigInt>) -> Result<BundleInvariants> {
    let surface = PolarizedK3::new(genus)?;
    let c2 = minimal_c2(surface.genus().clone())?;
    BundleInvariants::on_k3(2, &surface, c2)
}

/// Mukai vector `(2, 2g - 2, chi - 2)` of the minimal bundle.
pub fn minimal_mukai_vector(genus: impl Into<BigInt>) -> Result<MukaiVector> {
    let surface = PolarizedK3::new(genus)?;
    let bundle = minimal_bundle(surface.genus().clone())?;
    MukaiVector::new(
        2,
        surface.l_selfint().clone(),
        bundle.chi - 2,
    )
}

/// Degree of irrationality of a smooth curve of genus `g` embedded with
/// degree `d >= g + 1`: `max(2g + 2 - d, floor((g + 3) / 2))`. The second
/// argument wins once `d >= ceil((3g + 1) / 2)`, after which the value no
/// longer depends on `d`.
pub fn curve_irr(genus: impl Into<BigInt>, degree: impl Into<BigInt>) -> Result<BigInt> {
    let genus = genus.into();
    let degree = degree.into();
    ensure_genus(&genus, 0)?;
    if degree < &genus + 1 {
        return Err(Error::CurveDegreeTooSmall { genus, degree });
    }
    let linear: BigInt = &genus * 2i32 + 2i32 - &degree;
    let floor_term = (&genus + 3i32).div_floor(&BigInt::from(2));
    Ok(linear.max(floor_term))
}
