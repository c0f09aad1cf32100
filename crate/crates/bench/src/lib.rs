//! Inputs shared by the benchmarks.

use hopf_core::{parse_form, EigenvalueStructure, MultiIndex, PolyKForm, Weight};

/// `(structure, k, b)` triples with section spaces of a few hundred elements.
pub fn section_cases() -> Vec<(&'static str, EigenvalueStructure, usize, Weight)> {
    vec![
        (
            "classical-n5-k2-m6",
            EigenvalueStructure::classical(5).unwrap(),
            2,
            Weight::new(vec![6]),
        ),
        (
            "generic-n6-k3",
            EigenvalueStructure::generic(6).unwrap(),
            3,
            Weight::new(vec![2, 1, 3, 1, 1, 2]),
        ),
        (
            "intermediary-n6-r3-k3",
            EigenvalueStructure::intermediary(6, 3).unwrap(),
            3,
            Weight::new(vec![5, 1, 1, 1]),
        ),
    ]
}

/// A generic-looking 2-form on ℂ⁵ and the contact-type non-decomposable one.
pub fn forms() -> Vec<(&'static str, PolyKForm)> {
    vec![
        (
            "wedge-of-linear-1-forms",
            parse_form(
                "z1 z2 dz1^dz2 - z3^2 dz1^dz3 + 2 z1 z4 dz2^dz4 + z5 dz3^dz5 - z2 z5 dz4^dz5",
                5,
                None,
            )
            .unwrap(),
        ),
        ("symplectic", parse_form("dz1^dz2 + dz3^dz4", 5, None).unwrap()),
    ]
}

/// Monomial families on ℂ⁸ with and without a killed subspace.
pub fn monomial_families() -> Vec<(&'static str, Vec<MultiIndex>)> {
    let pure: Vec<MultiIndex> = (1..=8).map(|i| MultiIndex::pure_power(8, i, 2)).collect();
    let mut mixed = pure.clone();
    mixed.truncate(5);
    mixed.push(MultiIndex::new(vec![0, 0, 0, 0, 0, 1, 1, 0]));
    mixed.push(MultiIndex::new(vec![0, 0, 0, 0, 0, 0, 1, 1]));
    vec![("nonsingular-n8", pure), ("singular-n8", mixed)]
}
