use std::collections::BTreeSet;

use proptest::prelude::*;

use borel_dual::cli::{parse_ideal, JsonOutput};
use borel_dual::decompose::{
    bpol_decomposition, decompose_oracle, decompose_strongly_stable, intersect_components,
    right_shift_check, GeneralComponent, IrreducibleComponent,
};
use borel_dual::duality::{alexander_dual, ideal_equiv, star_dual};
use borel_dual::homology::{ek_betti, lc_series_via_components, lc_series_via_dual};
use borel_dual::polarize::{
    bpol_ideal, bpol_monomial, default_cols, depolarize, stdpol_ideal, transpose,
    verify_polarization,
};
use borel_dual::{borel_closure, minimalize, Monomial, MonomialIdeal};

const MAX_VARS: usize = 4;
const MAX_DEGREE: usize = 4;

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(1..=n, 1..=MAX_DEGREE)
        .prop_map(move |word| Monomial::from_word(n, &word).unwrap())
}

fn borel_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1..=MAX_VARS)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(monomial(n), 1..=3)))
        .prop_map(|(n, seeds)| borel_closure(seeds, n).unwrap())
        .prop_filter("at most 10 generators", |i| i.len() <= 10)
}

fn squarefree_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1..=6usize).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(1..=n, 1..=n), 1..=5).prop_map(
            move |sets| {
                let gens = sets
                    .into_iter()
                    .map(|s| Monomial::from_word(n, &s.into_iter().collect::<Vec<_>>()).unwrap());
                minimalize(gens, n).unwrap()
            },
        )
    })
}

fn component_set() -> impl Strategy<Value = (Vec<IrreducibleComponent>, usize)> {
    let component =
        prop::collection::vec(1u32..=3, 1..=3).prop_map(|a| IrreducibleComponent::new(a).unwrap());
    prop::collection::vec(component, 1..=4).prop_map(|mut e| {
        e.sort();
        e.dedup();
        let irredundant: Vec<IrreducibleComponent> = e
            .iter()
            .filter(|a| !e.iter().any(|b| b != *a && b.is_contained_in(a)))
            .cloned()
            .collect();
        (irredundant, 3)
    })
}

/// Minimal vertex covers of the generator supports, by brute force.
fn minimal_transversals(ideal: &MonomialIdeal) -> MonomialIdeal {
    let n = ideal.num_vars();
    let edges: Vec<BTreeSet<usize>> = ideal
        .generators()
        .iter()
        .map(|m| m.support().into_iter().collect())
        .collect();
    let covers: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| {
            (1..=n)
                .filter(|i| mask & (1 << (i - 1)) != 0)
                .collect::<Vec<_>>()
        })
        .filter(|set| edges.iter().all(|e| set.iter().any(|v| e.contains(v))))
        .collect();
    minimalize(covers.iter().map(|c| Monomial::from_word(n, c).unwrap()), n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimalize_is_idempotent(i in borel_ideal()) {
        let again = minimalize(i.generators().to_vec(), i.num_vars()).unwrap();
        prop_assert_eq!(&again, &i);
        prop_assert!(i.is_strongly_stable());
    }

    #[test]
    fn bpol_membership_matches_membership(i in borel_ideal(), exps in prop::collection::vec(0u32..3, MAX_VARS)) {
        let n = i.num_vars();
        let m = Monomial::new(exps[..n].to_vec());
        let cols = (m.degree() as usize).max(default_cols(&i));
        let grid = bpol_ideal(&i, cols).unwrap();
        let lifted = bpol_monomial(&m, cols).unwrap();
        prop_assert_eq!(i.contains(&m).unwrap(), grid.contains(&lifted).unwrap());
    }

    #[test]
    fn polarizations_collapse_back(i in borel_ideal()) {
        let cols = default_cols(&i);
        let b = bpol_ideal(&i, cols).unwrap();
        prop_assert_eq!(&depolarize(&b), &i);
        prop_assert!(verify_polarization(&i, &b));
        let p = stdpol_ideal(&i, cols).unwrap();
        prop_assert_eq!(&depolarize(&p), &i);
        prop_assert!(verify_polarization(&i, &p));
    }

    #[test]
    fn transpose_is_an_involution(i in borel_ideal()) {
        let b = bpol_ideal(&i, default_cols(&i)).unwrap();
        prop_assert_eq!(transpose(&transpose(&b)), b);
    }

    #[test]
    fn psi_components_match_oracle(i in borel_ideal()) {
        let cols = default_cols(&i);
        let grid = bpol_ideal(&i, cols).unwrap();
        let mut predicted: Vec<GeneralComponent> =
            bpol_decomposition(&decompose_strongly_stable(&i).unwrap())
                .iter()
                .map(|b| GeneralComponent::prime(b.cells().map(|(r, c)| (r - 1) * cols + c)).unwrap())
                .collect();
        predicted.sort();
        prop_assert_eq!(predicted, decompose_oracle(grid.flat()).unwrap());
    }

    #[test]
    fn right_shift_iff_strongly_stable((e, n) in component_set()) {
        let i = intersect_components(&e, n).unwrap();
        prop_assert_eq!(right_shift_check(&e, n), i.is_strongly_stable());
    }

    #[test]
    fn alexander_dual_is_minimal_transversals(j in squarefree_ideal()) {
        let dual = alexander_dual(&j).unwrap();
        prop_assert_eq!(&dual, &minimal_transversals(&j));
        prop_assert_eq!(alexander_dual(&dual).unwrap(), j);
    }

    #[test]
    fn star_dual_is_an_involution(i in borel_ideal()) {
        let d = default_cols(&i);
        let dual = star_dual(&i, d).unwrap();
        prop_assert!(dual.is_strongly_stable());
        prop_assert!(ideal_equiv(&star_dual(&dual, i.num_vars()).unwrap(), &i));
    }

    #[test]
    fn lc_routes_agree(i in borel_ideal()) {
        let e = decompose_strongly_stable(&i).unwrap();
        prop_assert_eq!(
            lc_series_via_dual(&i, default_cols(&i)).unwrap(),
            lc_series_via_components(&e, i.num_vars())
        );
    }

    #[test]
    fn ek_total_rank_counts_generators(i in borel_ideal()) {
        let table = ek_betti(&i).unwrap();
        let zeroth: u64 = table.entries().iter().filter(|((p, _), _)| *p == 0).map(|(_, v)| v).sum();
        prop_assert_eq!(zeroth as usize, i.len());
    }

    #[test]
    fn parse_inverts_print(i in borel_ideal()) {
        let parsed = parse_ideal(&i.to_string(), Some(i.num_vars())).unwrap();
        prop_assert_eq!(parsed.ideal, i);
        prop_assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn json_round_trips(i in borel_ideal()) {
        let doc = JsonOutput::of_ideal(&i, Some(default_cols(&i)));
        let back: JsonOutput = serde_json::from_str(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.ideal().unwrap(), i);
    }
}
