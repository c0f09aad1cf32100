//! Exponent vectors of monomials and index sets of basis differentials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `α ∈ ℕⁿ` of the monomial `z^α`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// `d · e_i` for a 1-based coordinate `i`.
    pub fn pure_power(n: usize, coordinate: usize, degree: u32) -> Self {
        let mut e = vec![0; n];
        e[coordinate - 1] = degree;
        Self(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Bitmask of coordinates with a positive exponent (bit `i-1` for `z_i`).
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α - e_i` if the exponent of `z_i` is positive (0-based `i`).
    pub(crate) fn lowered(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Self(e))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Strictly increasing tuple of 1-based coordinates `I = (i₁ < … < i_k)`,
/// naming the basis differential `dz_I = dz_{i₁} ∧ … ∧ dz_{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormIndex(Vec<usize>);

impl FormIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedFormIndex(indices));
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, coordinate: usize) -> bool {
        self.0.binary_search(&coordinate).is_ok()
    }

    pub fn max_index(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&i) if i > n => Err(Error::CoordinateOutOfRange { coordinate: i, n }),
            _ => Ok(()),
        }
    }

    /// All `k`-element index sets over `1..=n` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<FormIndex> {
        crate::enumerate::combinations(n, k)
            .into_iter()
            .map(FormIndex)
            .collect()
    }

    /// `I ∖ J`, preserving order.
    pub fn difference(&self, other: &FormIndex) -> FormIndex {
        FormIndex(self.0.iter().copied().filter(|i| !other.contains(*i)).collect())
    }

    pub fn is_subset_of(&self, other: &FormIndex) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }
}

impl fmt::Display for FormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (p, i) in self.0.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Sign and merged index of `dz_I ∧ dz_J`.
///
/// The sign is 0 when the two index sets meet; otherwise it is the parity of
/// the permutation sorting the concatenation `I ++ J`, and `merged` is the
/// sorted union. `merged` is `None` exactly when the sign is 0.
pub fn wedge_basis_sign(i: &FormIndex, j: &FormIndex) -> (i8, Option<FormIndex>) {
    let (a, b) = (&i.0, &j.0);
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    let mut inversions = 0usize;
    while p < a.len() && q < b.len() {
        match a[p].cmp(&b[q]) {
            std::cmp::Ordering::Less => {
                merged.push(a[p]);
                p += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[q] jumps over every remaining element of I.
                inversions += a.len() - p;
                merged.push(b[q]);
                q += 1;
            }
            std::cmp::Ordering::Equal => return (0, None),
        }
    }
    merged.extend_from_slice(&a[p..]);
    merged.extend_from_slice(&b[q..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    (sign, Some(FormIndex(merged)))
}

/// Sign `ε` with `dz_{i_1} ∧ … ∧ dz_{i_k} = ε · dz_{sorted}` for an arbitrary
/// sequence of 1-based indices; `None` when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(i8, FormIndex)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // Insertion sort counting transpositions; sequences are short.
    for p in 1..v.len() {
        let mut q = p;
        while q > 0 && v[q - 1] > v[q] {
            v.swap(q - 1, q);
            sign = -sign;
            q -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) || v.first() == Some(&0) {
        return None;
    }
    Some((sign, FormIndex(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fi(v: &[usize]) -> FormIndex {
        FormIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_sign_examples() {
        assert_eq!(wedge_basis_sign(&fi(&[1]), &fi(&[2])), (1, Some(fi(&[1, 2]))));
        assert_eq!(wedge_basis_sign(&fi(&[2]), &fi(&[1])), (-1, Some(fi(&[1, 2]))));
        assert_eq!(wedge_basis_sign(&fi(&[1, 2]), &fi(&[2, 3])), (0, None));
        assert_eq!(wedge_basis_sign(&fi(&[3]), &fi(&[1, 2])), (1, Some(fi(&[1, 2, 3]))));
    }

    #[test]
    fn form_index_rejects_unsorted() {
        assert!(FormIndex::new(vec![2, 1]).is_err());
        assert!(FormIndex::new(vec![1, 1]).is_err());
        assert!(FormIndex::new(vec![0, 1]).is_err());
    }

    #[test]
    fn all_form_indices() {
        let all = FormIndex::all(4, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], fi(&[1, 2]));
        assert_eq!(all[5], fi(&[3, 4]));
        assert_eq!(FormIndex::all(3, 0), vec![FormIndex::empty()]);
    }

    fn subset(n: usize) -> impl Strategy<Value = FormIndex> {
        proptest::collection::btree_set(1..=n, 0..=n).prop_map(|s| FormIndex(s.into_iter().collect()))
    }

    proptest! {
        #[test]
        fn wedge_sign_graded_commutes(i in subset(7), j in subset(7)) {
            let (s1, m1) = wedge_basis_sign(&i, &j);
            let (s2, m2) = wedge_basis_sign(&j, &i);
            prop_assert_eq!(&m1, &m2);
            if s1 != 0 {
                let graded = if (i.len() * j.len()) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(s1, graded * s2);
            } else {
                prop_assert_eq!(s2, 0);
            }
        }

        #[test]
        fn wedge_sign_matches_sorting_concatenation(i in subset(6), j in subset(6)) {
            let concat: Vec<usize> = i.indices().iter().chain(j.indices()).copied().collect();
            match (wedge_basis_sign(&i, &j), sort_with_sign(&concat)) {
                ((0, None), None) => {}
                ((s, Some(m)), Some((t, sorted))) => {
                    prop_assert_eq!(s, t);
                    prop_assert_eq!(m, sorted);
                }
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }
    }
}
