mod common;

use common::{all_structures, weights_up_to, WeightTally};
use hopf_core::cohomology::{
    admissible_weights, is_admissible, kernel_member, oracle_dimension, section_basis, section_dimension_closed_form,
};
use hopf_core::{EigenvalueStructure, LineBundle, Weight};
use num_integer::binomial;
use proptest::prelude::*;

const BOUND: u32 = 7;

#[test]
fn closed_form_oracle_and_basis_agree_with_the_tally() {
    for n in 3..=4 {
        for s in all_structures(n) {
            for k in 0..=n {
                let tally = WeightTally::new(&s, k, BOUND);
                for b in weights_up_to(s.class_count(), BOUND) {
                    let w = Weight::new(b.clone());
                    let expected = tally.dimension(&b);
                    let closed = section_dimension_closed_form(&s, k, &w).unwrap();
                    let guard = (w.total_degree() - k as i64).max(0) as u32;
                    let basis = section_basis(&s, k, &LineBundle::Monomial(w.clone()), guard).unwrap();
                    let oracle = oracle_dimension(&s, k, &w, w.total_degree() as u32).unwrap();
                    assert_eq!(closed, expected, "{s} k={k} b={w}");
                    assert_eq!(oracle, expected, "{s} k={k} b={w}");
                    assert_eq!(basis.dimension() as u64, expected, "{s} k={k} b={w}");
                    assert!(basis.complete);
                    assert_eq!(is_admissible(&s, k, &w), expected > 0, "{s} k={k} b={w}");
                }
            }
        }
    }
}

#[test]
fn admissible_list_is_the_positive_tally_set() {
    for s in all_structures(5) {
        for k in 1..5 {
            let tally = WeightTally::new(&s, k, 6);
            let mut listed: Vec<Vec<i64>> = admissible_weights(&s, k, 6)
                .unwrap()
                .into_iter()
                .map(|w| w.exponents().to_vec())
                .collect();
            let mut expected: Vec<Vec<i64>> = weights_up_to(s.class_count(), 6)
                .into_iter()
                .filter(|b| tally.dimension(b) > 0)
                .collect();
            listed.sort();
            expected.sort();
            assert_eq!(listed, expected, "{s} k={k}");
        }
    }
}

#[test]
fn classical_count_fixture() {
    let s = EigenvalueStructure::classical(4).unwrap();
    let tally = WeightTally::new(&s, 2, 3);
    assert_eq!(tally.dimension(&[3]), 24);
    let w = Weight::new(vec![3]);
    assert_eq!(section_dimension_closed_form(&s, 2, &w), Ok(24));
    assert_eq!(24, binomial(4u64, 2) * binomial(3 - 2 + 4 - 1, 3));
}

#[test]
fn negative_weights_have_no_sections() {
    for s in all_structures(4) {
        let mut b = vec![1i64; s.class_count()];
        b[0] = -1;
        let w = Weight::new(b);
        for k in 0..=4 {
            assert_eq!(section_dimension_closed_form(&s, k, &w), Ok(0));
            let basis = section_basis(&s, k, &LineBundle::Monomial(w.clone()), 10).unwrap();
            assert_eq!(basis.dimension(), 0);
        }
    }
}

fn arb_case() -> impl Strategy<Value = (EigenvalueStructure, usize, Weight)> {
    (3usize..=5)
        .prop_flat_map(|n| (Just(n), 0..n, 0..=n))
        .prop_flat_map(|(n, pick, k)| {
            let structures = all_structures(n);
            let s = structures[pick % structures.len()];
            (
                Just(s),
                Just(k),
                proptest::collection::vec(0i64..=3, s.class_count()).prop_map(Weight::new),
            )
        })
}

proptest! {
    #[test]
    fn basis_elements_lie_in_the_kernel((s, k, b) in arb_case()) {
        let guard = (b.total_degree() - k as i64).max(0) as u32;
        let space = section_basis(&s, k, &LineBundle::Monomial(b.clone()), guard).unwrap();
        let mut seen = space.basis.clone();
        seen.dedup();
        prop_assert_eq!(seen.len(), space.basis.len());
        for (alpha, index) in &space.basis {
            prop_assert!(kernel_member(&s, alpha, index, &b).unwrap());
            prop_assert_eq!(i64::from(alpha.degree()), b.total_degree() - k as i64);
        }
        prop_assert_eq!(
            space.dimension() as u64,
            section_dimension_closed_form(&s, k, &b).unwrap()
        );
    }

    #[test]
    fn dimension_vanishes_exactly_off_the_admissible_set((s, k, b) in arb_case()) {
        let dim = section_dimension_closed_form(&s, k, &b).unwrap();
        prop_assert_eq!(dim > 0, is_admissible(&s, k, &b));
    }

    #[test]
    fn generic_dimension_is_a_binomial(n in 3usize..=6, k in 0usize..=6, b in proptest::collection::vec(0i64..=2, 6)) {
        prop_assume!(k <= n);
        let s = EigenvalueStructure::generic(n).unwrap();
        let w = Weight::new(b[..n].to_vec());
        let positive = b[..n].iter().filter(|&&x| x > 0).count() as u64;
        prop_assert_eq!(section_dimension_closed_form(&s, k, &w).unwrap(), binomial(positive, k as u64));
    }
}
