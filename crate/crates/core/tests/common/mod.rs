#![allow(dead_code)]

use std::collections::HashMap;

use hopf_core::{EigenvalueStructure, FormIndex, MultiIndex, PolyKForm, Scalar, StructureKind};
use num_rational::BigRational;
use proptest::prelude::*;

pub fn all_structures(n: usize) -> Vec<EigenvalueStructure> {
    let mut out = vec![
        EigenvalueStructure::classical(n).unwrap(),
        EigenvalueStructure::generic(n).unwrap(),
    ];
    out.extend((2..n).map(|r| EigenvalueStructure::intermediary(n, r).unwrap()));
    out
}

/// 0-based class of the 1-based coordinate `i`, written out independently of
/// the library.
pub fn class(kind: StructureKind, i: usize) -> usize {
    match kind {
        StructureKind::Classical => 0,
        StructureKind::Generic => i - 1,
        StructureKind::Intermediary { r } if i <= r => 0,
        StructureKind::Intermediary { r } => i - r,
    }
}

pub fn class_count(kind: StructureKind, n: usize) -> usize {
    class(kind, n) + 1
}

fn exponent_vectors(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, bound, &mut Vec::new(), &mut out);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// Number of monomials `z^α dz_I`, `|α| ≤ bound`, of each weight.
pub struct WeightTally {
    pub counts: HashMap<Vec<i64>, u64>,
    pub bound: u32,
}

impl WeightTally {
    pub fn new(structure: &EigenvalueStructure, k: usize, bound: u32) -> Self {
        let n = structure.n();
        let kind = structure.kind();
        let classes = class_count(kind, n);
        let mut counts = HashMap::new();
        let index_sets = subsets(n, k);
        for alpha in exponent_vectors(n, bound) {
            for set in &index_sets {
                let mut w = vec![0i64; classes];
                for i in 1..=n {
                    w[class(kind, i)] += i64::from(alpha[i - 1]);
                }
                for &i in set {
                    w[class(kind, i)] += 1;
                }
                *counts.entry(w).or_insert(0) += 1;
            }
        }
        Self { counts, bound }
    }

    /// Reliable for weights of total degree at most `bound`.
    pub fn dimension(&self, b: &[i64]) -> u64 {
        self.counts.get(b).copied().unwrap_or(0)
    }
}

/// Every nonnegative vector with `parts` entries summing to at most `bound`.
pub fn weights_up_to(parts: usize, bound: u32) -> Vec<Vec<i64>> {
    exponent_vectors(parts, bound)
        .into_iter()
        .map(|v| v.into_iter().map(i64::from).collect())
        .collect()
}

/// Whether monomials with these supports have a common zero off the origin:
/// some nonempty set of free coordinates on which every monomial vanishes.
pub fn monomials_singular_brute_force(n: usize, supports: &[u64]) -> bool {
    (1u64..1 << n).any(|free| supports.iter().all(|s| s & !free != 0))
}

pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

pub fn arb_form(n: usize, k: usize, max_degree: u32) -> impl Strategy<Value = PolyKForm> {
    let indices = FormIndex::all(n, k);
    let term = (
        proptest::collection::vec(0..=max_degree, n),
        0..indices.len(),
        arb_scalar(),
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        let mut f = PolyKForm::zero(n, k);
        for (mut alpha, i, c) in terms {
            // Keep the total degree within max_degree.
            while alpha.iter().sum::<u32>() > max_degree {
                let j = alpha.iter().position(|&e| e > 0).unwrap();
                alpha[j] -= 1;
            }
            f.add_term(MultiIndex::new(alpha), indices[i].clone(), c).unwrap();
        }
        f
    })
}

/// A form on ℂⁿ of random degree `0..=n`.
pub fn arb_any_form(n: usize, max_degree: u32) -> impl Strategy<Value = PolyKForm> {
    (0..=n).prop_flat_map(move |k| arb_form(n, k, max_degree))
}
