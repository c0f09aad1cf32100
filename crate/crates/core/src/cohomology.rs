//! Global twisted k-forms `H⁰(X, Ω^k ⊗ L_b)`, computed as the kernel of
//! `p₀ = b·Id − f*` on holomorphic k-forms of `ℂⁿ∖{0}`.
//!
//! `p₀` acts diagonally on the monomial terms `z^α dz_I`: the term is scaled by
//! `b − μ^α μ_I`. Under the no-relation hypothesis that factor vanishes exactly
//! when the weight of the term equals `b`, so the kernel is spanned by the
//! monomial terms of weight `b`. Every such term has `|α| = deg b − k`, which
//! makes each kernel finite-dimensional and lets completeness be certified.

use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{bounded_vectors, compositions};
use crate::error::{Error, Result};
use crate::index::{FormIndex, MultiIndex};
use crate::structure::{EigenvalueStructure, StructureKind};
use crate::weight::{indicator_weight, weight_of_term, LineBundle, Weight};

fn check_degree(structure: &EigenvalueStructure, k: usize) -> Result<()> {
    if k > structure.n() {
        return Err(Error::DegreeTooLarge { k, n: structure.n() });
    }
    Ok(())
}

/// Whether `z^α dz_I` lies in `ker p₀` for the bundle of weight `b`.
pub fn kernel_member(
    structure: &EigenvalueStructure,
    alpha: &MultiIndex,
    index: &FormIndex,
    b: &Weight,
) -> Result<bool> {
    b.check_for(structure)?;
    Ok(weight_of_term(structure, alpha, index)? == *b)
}

/// A monomial basis of `H⁰(X, Ω^k ⊗ L_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSpace {
    pub structure: EigenvalueStructure,
    pub k: usize,
    pub bundle: LineBundle,
    /// Basis monomials `z^α dz_I`, sorted by `(I, α)`.
    pub basis: Vec<(MultiIndex, FormIndex)>,
    /// False only when the degree guard cut off solutions.
    pub complete: bool,
}

impl SectionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn weight(&self) -> Option<&Weight> {
        match &self.bundle {
            LineBundle::Monomial(w) => Some(w),
            LineBundle::NonResonant => None,
        }
    }

    /// Degree of every coefficient monomial, `deg b − k`.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.basis.first().map(|(a, _)| a.degree())
    }
}

/// Enumerates the monomial basis of the section space directly: for each `I`
/// the exponent vector is forced on singleton classes and ranges over the
/// compositions of the residual degree on the block.
pub fn section_basis(
    structure: &EigenvalueStructure,
    k: usize,
    bundle: &LineBundle,
    guard: u32,
) -> Result<SectionSpace> {
    check_degree(structure, k)?;
    let mut space = SectionSpace {
        structure: *structure,
        k,
        bundle: bundle.clone(),
        basis: Vec::new(),
        complete: true,
    };
    let LineBundle::Monomial(b) = bundle else {
        return Ok(space);
    };
    b.check_for(structure)?;
    let coefficient_degree = b.total_degree() - k as i64;
    if coefficient_degree < 0 || !b.is_nonnegative() {
        return Ok(space);
    }
    if coefficient_degree > i64::from(guard) {
        space.complete = false;
        return Ok(space);
    }
    let n = structure.n();
    for index in FormIndex::all(n, k) {
        let residual = b - &indicator_weight(structure, &index)?;
        if !residual.is_nonnegative() {
            continue;
        }
        // Exponents on each class: the block takes any composition of its
        // residual, singleton classes are forced.
        let mut partial: Vec<Vec<u32>> = vec![Vec::with_capacity(n)];
        for class in 0..structure.class_count() {
            let members = structure.class_members(class);
            let size = members.end() - members.start() + 1;
            let options = compositions(residual.exponents()[class] as u32, size);
            partial = partial
                .iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(o);
                        v
                    })
                })
                .collect();
        }
        space
            .basis
            .extend(partial.into_iter().map(|alpha| (MultiIndex::new(alpha), index.clone())));
    }
    space
        .basis
        .sort_by(|(a1, i1), (a2, i2)| i1.cmp(i2).then_with(|| a1.cmp(a2)));
    Ok(space)
}

fn choose(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

/// Closed-form `dim H⁰(X, Ω^k ⊗ L_b)`.
///
/// * classical, `b = (m)`: `C(n,k)·C(m−k+n−1, n−1)`;
/// * generic: `C(s,k)` with `s` the number of positive exponents;
/// * intermediary: `Σ_s C(r,s)·C(t,k−s)·C(m−s+r−1, r−1)` over
///   `0 ≤ s ≤ min(k,r,m)`, where `s` counts block indices in `I` and `t` the
///   positive singleton exponents.
pub fn section_dimension_closed_form(structure: &EigenvalueStructure, k: usize, b: &Weight) -> Result<u64> {
    check_degree(structure, k)?;
    b.check_for(structure)?;
    if !b.is_nonnegative() {
        return Ok(0);
    }
    let n = structure.n() as i64;
    let k = k as i64;
    let e = b.exponents();
    Ok(match structure.kind() {
        StructureKind::Classical => {
            let m = e[0];
            if m < k {
                0
            } else {
                choose(n, k) * choose(m - k + n - 1, n - 1)
            }
        }
        StructureKind::Generic => choose(e.iter().filter(|&&x| x >= 1).count() as i64, k),
        StructureKind::Intermediary { r } => {
            let r = r as i64;
            let m = e[0];
            let t = e[1..].iter().filter(|&&x| x >= 1).count() as i64;
            (0..=k.min(r).min(m))
                .map(|s| choose(r, s) * choose(t, k - s) * choose(m - s + r - 1, r - 1))
                .sum()
        }
    })
}

/// Admissibility of a nonnegative weight: whether sections exist.
///
/// Classical: `m ≥ k`. Generic: at least `k` positive exponents. Intermediary:
/// for some `s ≤ min(k, r, m)` there are `k − s` positive singleton exponents,
/// i.e. `s` of the indices of `I` sit in the block and absorb part of `m`.
pub fn is_admissible(structure: &EigenvalueStructure, k: usize, b: &Weight) -> bool {
    if b.len() != structure.class_count() || !b.is_nonnegative() || k > structure.n() {
        return false;
    }
    let e = b.exponents();
    let k = k as i64;
    match structure.kind() {
        StructureKind::Classical => e[0] >= k,
        StructureKind::Generic => e.iter().filter(|&&x| x >= 1).count() as i64 >= k,
        StructureKind::Intermediary { r } => {
            let t = e[1..].iter().filter(|&&x| x >= 1).count() as i64;
            let most_in_block = k.min(r as i64).min(e[0]);
            t + most_in_block >= k
        }
    }
}

/// All admissible weights of total degree at most `bound`, ordered by total
/// degree and then lexicographically decreasing.
pub fn admissible_weights(structure: &EigenvalueStructure, k: usize, bound: u32) -> Result<Vec<Weight>> {
    check_degree(structure, k)?;
    Ok(bounded_vectors(structure.class_count(), bound)
        .into_iter()
        .map(|v| Weight::new(v.into_iter().map(i64::from).collect()))
        .filter(|w| is_admissible(structure, k, w))
        .collect())
}

/// Brute-force `dim ker p₀`: counts every `(α, I)` with `|α| ≤ bound` whose
/// weight equals `b`. Fails as inconclusive when `bound < deg b`, since then
/// kernel terms could lie beyond the enumeration.
pub fn oracle_dimension(structure: &EigenvalueStructure, k: usize, b: &Weight, bound: u32) -> Result<u64> {
    check_degree(structure, k)?;
    b.check_for(structure)?;
    if b.total_degree() > i64::from(bound) {
        return Err(Error::Inconclusive(format!(
            "degree bound {bound} is below deg b = {}; terms of weight b have |α| = deg b − k",
            b.total_degree()
        )));
    }
    let n = structure.n();
    let indices = FormIndex::all(n, k);
    let index_weights: Vec<Weight> = indices
        .iter()
        .map(|i| indicator_weight(structure, i))
        .collect::<Result<_>>()?;
    let alphas = bounded_vectors(n, bound);
    let hits = alphas
        .par_iter()
        .map(|alpha| {
            let alpha = MultiIndex::new(alpha.clone());
            let w = weight_of_term(structure, &alpha, &FormIndex::empty()).expect("alpha has length n");
            index_weights.iter().filter(|iw| &(&w + iw) == b).count() as u64
        })
        .sum();
    Ok(hits)
}
