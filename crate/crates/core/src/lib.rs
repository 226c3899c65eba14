//! Workbench for upper bounds on the polarized degree of irrationality of
//! K3 surfaces.
//!
//! The bounds come from projections induced by rank-2 vector bundles with
//! prescribed vanishing: a bundle `E` with a net of sections defines a
//! rational map to `P^2` whose degree is `c2(E)` minus the contribution of
//! the base locus. Imposing a point of multiplicity `m` on the sections
//! costs `m(m+1)` linear conditions and drops the degree by `m^2`. The
//! crate computes the resulting closed-form bound, optimizes over base-point
//! plans and second Chern classes, records dimension counts for the
//! Brill-Noether loci that control low-degree projections, tabulates known
//! higher-dimensional estimates, and verifies the degree bookkeeping
//! exactly on split bundles over `P^2` over a prime field.
//!
//! Modules:
//!
//! * [`arith`]: exact integer arithmetic (Euler characteristics, Mukai
//!   pairing, genus decomposition, minimal bundle invariants).
//! * [`bound`]: the closed-form bound, base-point plan optimization, and
//!   bound certificates.
//! * [`brill_noether`]: dimension counts for strata of low-degree
//!   projections in genus 5 and 6.
//! * [`catalog`]: recorded degree estimates for higher-dimensional
//!   hyperkaehler and abelian examples, with re-derivation where the
//!   underlying Chern data is known.
//! * [`oracle`]: finite-field verification that measured fiber degrees of
//!   explicit determinant maps match `c2 - sum(m^2)`.
//!
//! With the default `parallel` feature, genus sweeps and per-target oracle
//! measurements run on a rayon pool; results are bit-identical to the
//! sequential fallback (`--no-default-features`) because every parallel
//! work item derives its own seed from the inputs alone.

pub mod arith;
pub mod bound;
pub mod brill_noether;
pub mod catalog;
pub mod error;
pub mod oracle;
mod par;

pub use error::{Error, Result};
