use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{FormIndex, MultiIndex};
use crate::structure::EigenvalueStructure;

/// Exponent vector of a product of eigenvalue classes.
///
/// Entry `c` is the exponent of the generator of class `c`. Because distinct
/// classes satisfy no multiplicative relation, two products of eigenvalues are
/// equal exactly when their weights are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self(exponents)
    }

    pub fn zero(classes: usize) -> Self {
        Self(vec![0; classes])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the exponents, i.e. the degree of the corresponding monomial
    /// `μ^α μ_I` counted with multiplicity.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub(crate) fn check_for(&self, structure: &EigenvalueStructure) -> Result<()> {
        if self.len() != structure.class_count() {
            return Err(Error::DimensionMismatch {
                what: "weight length vs class count",
                expected: structure.class_count(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// The parameter `b` of a flat line bundle `L_b`.
///
/// A bundle whose parameter is not a monomial in the eigenvalues is only ever
/// represented by the `NonResonant` marker; such bundles carry no sections, so
/// no transcendental comparison is ever needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineBundle {
    Monomial(Weight),
    NonResonant,
}

impl From<Weight> for LineBundle {
    fn from(w: Weight) -> Self {
        LineBundle::Monomial(w)
    }
}

/// Weight of the term `z^α dz_I` under the contraction: the exponent vector of
/// `μ^α · μ_{i₁} ⋯ μ_{i_k}`.
pub fn weight_of_term(structure: &EigenvalueStructure, alpha: &MultiIndex, index: &FormIndex) -> Result<Weight> {
    let n = structure.n();
    if alpha.n() != n {
        return Err(Error::DimensionMismatch {
            what: "multi-index length",
            expected: n,
            found: alpha.n(),
        });
    }
    index.check_within(n)?;
    let mut w = vec![0i64; structure.class_count()];
    for (i, &e) in alpha.exponents().iter().enumerate() {
        w[structure.class_of_unchecked(i + 1)] += i64::from(e);
    }
    for &i in index.indices() {
        w[structure.class_of_unchecked(i)] += 1;
    }
    Ok(Weight(w))
}

/// Weight of `dz_I` alone, `μ_{i₁} ⋯ μ_{i_k}`.
pub fn indicator_weight(structure: &EigenvalueStructure, index: &FormIndex) -> Result<Weight> {
    weight_of_term(structure, &MultiIndex::zero(structure.n()), index)
}
