//! Eigenvalue patterns of a diagonal contraction `f(z) = (μ₁z₁, …, μₙzₙ)`.
//!
//! Eigenvalues are never stored as numbers. A structure only records which
//! coordinates share an eigenvalue; every class is then treated as a free
//! generator of a multiplicative group, which is exactly the statement that the
//! distinct eigenvalues satisfy no nontrivial monomial relation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coordinates share an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureKind {
    /// All eigenvalues equal.
    Classical,
    /// Pairwise distinct, relation-free eigenvalues.
    Generic,
    /// `μ₁ = … = μ_r`, the rest relation-free.
    Intermediary { r: usize },
}

/// A validated eigenvalue pattern on `ℂⁿ`, `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenvalueStructure {
    n: usize,
    kind: StructureKind,
}

impl EigenvalueStructure {
    pub fn new(n: usize, kind: StructureKind) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall(n));
        }
        if let StructureKind::Intermediary { r } = kind {
            if r < 2 || r > n - 1 {
                return Err(Error::BlockOutOfRange { r, n, max: n - 1 });
            }
        }
        Ok(Self { n, kind })
    }

    pub fn classical(n: usize) -> Result<Self> {
        Self::new(n, StructureKind::Classical)
    }

    pub fn generic(n: usize) -> Result<Self> {
        Self::new(n, StructureKind::Generic)
    }

    pub fn intermediary(n: usize, r: usize) -> Result<Self> {
        Self::new(n, StructureKind::Intermediary { r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    /// Size of the leading (non-singleton) block: `n`, `1` or `r`.
    pub fn block_size(&self) -> usize {
        match self.kind {
            StructureKind::Classical => self.n,
            StructureKind::Generic => 1,
            StructureKind::Intermediary { r } => r,
        }
    }

    /// Number of eigenvalue classes, i.e. the rank of the weight lattice.
    pub fn class_count(&self) -> usize {
        match self.kind {
            StructureKind::Classical => 1,
            StructureKind::Generic => self.n,
            StructureKind::Intermediary { r } => self.n - r + 1,
        }
    }

    /// Class of a 1-based coordinate.
    pub fn class_of(&self, coordinate: usize) -> Result<usize> {
        if coordinate == 0 || coordinate > self.n {
            return Err(Error::CoordinateOutOfRange { coordinate, n: self.n });
        }
        Ok(self.class_of_unchecked(coordinate))
    }

    pub(crate) fn class_of_unchecked(&self, coordinate: usize) -> usize {
        match self.kind {
            StructureKind::Classical => 0,
            StructureKind::Generic => coordinate - 1,
            StructureKind::Intermediary { r } => coordinate.saturating_sub(r),
        }
    }

    /// The 1-based coordinates belonging to `class`.
    pub fn class_members(&self, class: usize) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            StructureKind::Classical => 1..=self.n,
            StructureKind::Generic => class + 1..=class + 1,
            StructureKind::Intermediary { r } if class == 0 => 1..=r,
            StructureKind::Intermediary { r } => class + r..=class + r,
        }
    }
}

impl fmt::Display for EigenvalueStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StructureKind::Classical => write!(f, "classical(n={})", self.n),
            StructureKind::Generic => write!(f, "generic(n={})", self.n),
            StructureKind::Intermediary { r } => write!(f, "intermediary(n={}, r={})", self.n, r),
        }
    }
}
