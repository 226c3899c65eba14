//! Property tests tying the arithmetic, bound, stratum, and catalog
//! layers together through the public API.

use irrk3::arith::{
    decompose_genus, euler_char_k3, minimal_bundle, minimal_c2, minimal_mukai_vector,
    curve_irr,
};
use irrk3::bound::{
    closed_form_bound, closed_form_certificate, degree_bound, low_genus_table, optimize_bound,
    optimize_range, MultiplicityPlan, C2_SEARCH_WINDOW,
};
use irrk3::brill_noether::{moduli_dim, relative_grassmannian_dim};
use irrk3::catalog::{catalog, general_degree_bound, validate_catalog};
use irrk3::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

proptest! {
    #[test]
    fn genus_decomposition_round_trips(raw in any::<u128>()) {
        let genus = BigInt::from(raw) + 2u32;
        let d = decompose_genus(genus.clone()).unwrap();
        prop_assert_eq!(d.genus(), genus);
        prop_assert!(*d.k() >= BigInt::from(0));
        prop_assert!(*d.k() < d.n() * 4 + 4);
    }

    #[test]
    fn closed_form_bound_at_block_seams(n in 0u64..1_000_000_000_000) {
        // g = 2 + 2n(n+1) sits at the start of a block, where the bound
        // is exactly n + 2.
        let n = BigInt::from(n);
        let genus = &n * (&n + 1) * 2 + 2;
        prop_assert_eq!(closed_form_bound(genus).unwrap(), &n + 2);
    }

    #[test]
    fn euler_characteristic_is_affine_in_its_arguments(
        rank in 1i64..1_000,
        half_c1sq in -1_000i64..1_000,
        c2 in -1_000i64..1_000,
    ) {
        let base = euler_char_k3(rank, 2 * half_c1sq, c2).unwrap();
        let up_c2 = euler_char_k3(rank, 2 * half_c1sq, c2 + 1).unwrap();
        let up_rank = euler_char_k3(rank + 1, 2 * half_c1sq, c2).unwrap();
        prop_assert_eq!(up_c2, &base - 1);
        prop_assert_eq!(up_rank, &base + 2);
        prop_assert!(matches!(
            euler_char_k3(rank, 2 * half_c1sq + 1, c2),
            Err(Error::OddChernSquare(_))
        ));
    }

    #[test]
    fn curve_irrationality_stabilizes(genus in 0u64..2_000) {
        let floor_term = (genus + 3) / 2;
        let stable_from = (3 * genus + 1).div_ceil(2);
        let mut prev: Option<BigInt> = None;
        for d in genus + 1..stable_from + 3 {
            let val = curve_irr(genus, d).unwrap();
            if d >= stable_from {
                prop_assert_eq!(val.clone(), BigInt::from(floor_term));
            } else {
                prop_assert_eq!(val.clone(), BigInt::from((2 * genus + 2 - d).max(floor_term)));
            }
            if let Some(p) = prev {
                prop_assert!(val <= p, "not monotone at degree {}", d);
            }
            prev = Some(val);
        }
    }

    #[test]
    fn minimal_bundle_budget_is_genus_minus_c2(genus in 2u64..1_000_000) {
        let bundle = minimal_bundle(genus).unwrap();
        let c2 = minimal_c2(genus).unwrap();
        prop_assert_eq!(bundle.c2.clone(), c2.clone());
        // h0 = g + 3 - c2, so the plan budget h0 - 3 equals g - c2.
        let h0 = bundle.h0_expected.to_u64().unwrap();
        let c2 = c2.to_u64().unwrap();
        prop_assert_eq!(h0 - 3, genus - c2);
        prop_assert!(h0 >= 3);
    }

    #[test]
    fn minimal_vector_parity_and_moduli(genus in 2u64..100_000) {
        let v = minimal_mukai_vector(genus).unwrap();
        let square = v.mukai_square();
        if genus % 2 == 0 {
            prop_assert_eq!(square.clone(), BigInt::from(-2));
        } else {
            prop_assert_eq!(square.clone(), BigInt::from(0));
        }
        prop_assert_eq!(moduli_dim(&v).unwrap(), square + 2);
    }

    #[test]
    fn optimizer_certificates_are_internally_consistent(genus in 2u64..1_500) {
        let cert = optimize_bound(genus, true).unwrap();
        cert.check().unwrap();
        let formula = closed_form_bound(genus).unwrap().to_u64().unwrap();
        prop_assert!(cert.degree <= formula);
        let min_c2 = minimal_c2(genus).unwrap().to_u64().unwrap();
        prop_assert!(cert.c2 >= min_c2);
        prop_assert!(cert.c2 <= min_c2 + C2_SEARCH_WINDOW);
        // The closed-form certificate realizes the formula with a plan.
        let closed = closed_form_certificate(genus).unwrap();
        closed.check().unwrap();
        prop_assert_eq!(closed.degree, formula);
    }

    #[test]
    fn range_sweep_matches_pointwise_optimization(lo in 2u64..300, len in 0u64..6) {
        let hi = lo + len;
        let swept = optimize_range(lo, hi, true).unwrap();
        prop_assert_eq!(swept.len() as u64, len + 1);
        for (offset, cert) in swept.iter().enumerate() {
            let single = optimize_bound(lo + offset as u64, true).unwrap();
            prop_assert_eq!(cert, &single);
        }
    }

    #[test]
    fn degree_bound_subtracts_squares(
        mults in proptest::collection::vec(1u32..5, 0..5),
        extra in 0u64..50,
    ) {
        let plan = MultiplicityPlan::new(mults.clone()).unwrap();
        let drop: u64 = mults.iter().map(|&m| (m as u64) * (m as u64)).sum();
        let c2 = drop + extra;
        prop_assert_eq!(degree_bound(c2, &plan).unwrap(), extra);
        if drop > 0 {
            let rejected = matches!(
                degree_bound(drop - 1, &plan),
                Err(Error::InadmissiblePlan { .. })
            );
            prop_assert!(rejected);
        }
    }

    #[test]
    fn full_subspace_stratum_collapses_to_moduli(genus in 2u64..200) {
        let v = minimal_mukai_vector(genus).unwrap();
        let h0 = v.expected_sections().to_u32().unwrap();
        prop_assert_eq!(
            relative_grassmannian_dim(&v, h0 - 1).unwrap(),
            moduli_dim(&v).unwrap()
        );
        let overfull = matches!(
            relative_grassmannian_dim(&v, h0),
            Err(Error::EmptyStratum { .. })
        );
        prop_assert!(overfull);
    }
}

#[test]
fn catalog_claims_follow_from_recorded_data() {
    for entry in catalog() {
        if let Some(h0) = entry.h0 {
            assert!(
                h0 >= entry.ambient_dim as u64 + 1,
                "{} cannot span its ambient space",
                entry.name
            );
        }
        if let Some(tc) = entry.top_chern {
            assert_eq!(
                general_degree_bound(tc, entry.fixed_drop).unwrap(),
                entry.claimed_bound,
                "{}",
                entry.name
            );
        }
    }
}

#[test]
fn catalog_validation_is_idempotent() {
    let first = validate_catalog().unwrap();
    let second = validate_catalog().unwrap();
    assert_eq!(first, second);
    assert_eq!(first.len(), catalog().len());
}

proptest! {
    #[test]
    fn general_degree_bound_is_additive_in_the_drop(
        top in 0u64..1_000_000,
        d1 in 0u64..1_000,
        d2 in 0u64..1_000,
    ) {
        prop_assume!(d1 + d2 <= top);
        let whole = general_degree_bound(top, d1 + d2).unwrap();
        let staged = general_degree_bound(general_degree_bound(top, d1).unwrap(), d2).unwrap();
        prop_assert_eq!(whole, staged);
        prop_assert_eq!(general_degree_bound(top, 0).unwrap(), top);
        prop_assert_eq!(general_degree_bound(top, top).unwrap(), 0);
    }
}

#[test]
fn tabulated_bounds_match_fresh_computation() {
    for (genus, bound) in low_genus_table() {
        assert_eq!(
            closed_form_bound(genus).unwrap().to_u64().unwrap(),
            bound
        );
        let cert = optimize_bound(genus, true).unwrap();
        assert!(cert.degree <= bound);
    }
}
