//! Common zero locus of the coefficients `g_I` of a form on `W = ℂⁿ∖{0}`.
//!
//! A form is nonsingular when its coefficients have no common zero off the
//! origin. The zero set of a family of monomials is a union of coordinate
//! subspaces, which makes the monomial case decidable exactly. Homogeneous
//! linear coefficients are decided by rank. Anything else gets an exact
//! singularity check on coordinate subspaces followed by seeded sampling, and
//! the verdict says which one it is.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::combinations;
use crate::error::{Error, Result};
use crate::form::PolyKForm;
use crate::index::{FormIndex, MultiIndex};
use crate::poly::{scalar, Polynomial, Scalar};

/// Largest `n` for which witnesses and sample subspaces are searched
/// exhaustively.
const EXHAUSTIVE_LIMIT: usize = 16;
const SAMPLE_RANGE: i64 = 50;

/// The coordinate subspace `{z_i = 0 : i ∈ zero_coordinates}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordinateSubspace {
    pub n: usize,
    /// 1-based, increasing.
    pub zero_coordinates: Vec<usize>,
}

impl CoordinateSubspace {
    pub fn dimension(&self) -> usize {
        self.n - self.zero_coordinates.len()
    }

    fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            n,
            zero_coordinates: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
        }
    }
}

impl fmt::Display for CoordinateSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero_coordinates.is_empty() {
            return write!(f, "C^{}", self.n);
        }
        let eqs: Vec<String> = self.zero_coordinates.iter().map(|i| format!("z{i}")).collect();
        write!(f, "{{{} = 0}}", eqs.join(" = "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Singularity {
    Nonsingular,
    /// Every coefficient vanishes identically on this nonzero subspace.
    Singular(CoordinateSubspace),
    /// Every coefficient vanishes at this nonzero point.
    SingularAt(Vec<Scalar>),
    /// No common zero was found by sampling.
    ProbablyNonsingular {
        trials: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityVerdict {
    pub status: Singularity,
    /// True when the verdict is a proof rather than a sampling outcome.
    pub exact: bool,
}

impl SingularityVerdict {
    fn exact(status: Singularity) -> Self {
        Self { status, exact: true }
    }

    pub fn is_nonsingular(&self) -> bool {
        matches!(self.status, Singularity::Nonsingular)
    }

    pub fn is_exact_nonsingular(&self) -> bool {
        self.exact && self.is_nonsingular()
    }

    pub fn is_singular(&self) -> bool {
        matches!(self.status, Singularity::Singular(_) | Singularity::SingularAt(_))
    }
}

/// Regroups a form into `I ↦ g_I`.
pub fn coefficient_polynomials(a: &PolyKForm) -> BTreeMap<FormIndex, Polynomial> {
    a.coefficients().clone()
}

fn masks(n: usize, generators: &[MultiIndex]) -> Result<Vec<u64>> {
    if n > 64 {
        return Err(Error::Precondition(format!(
            "monomial zero-locus analysis supports n <= 64, got {n}"
        )));
    }
    generators
        .iter()
        .map(|g| {
            if g.n() != n {
                Err(Error::DimensionMismatch {
                    what: "generator arity",
                    expected: n,
                    found: g.n(),
                })
            } else {
                Ok(g.support_mask())
            }
        })
        .collect()
}

/// Smallest set of coordinates meeting every support, among sets that leave
/// at least one coordinate free. Lexicographically first among the smallest
/// when the search is exhaustive.
fn largest_killing_subspace(n: usize, supports: &[u64], uncovered: usize) -> u64 {
    let hits_all = |zero: u64| supports.iter().all(|s| s & zero != 0);
    if n <= EXHAUSTIVE_LIMIT {
        for size in 0..n {
            for combo in combinations(n, size) {
                let zero = combo.iter().fold(0u64, |m, i| m | 1 << (i - 1));
                if hits_all(zero) {
                    return zero;
                }
            }
        }
    }
    // Greedy shrink of the axis witness along the uncovered coordinate.
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut zero = full & !(1 << uncovered);
    for i in 0..n {
        let candidate = zero & !(1 << i);
        if candidate != zero && hits_all(candidate) {
            zero = candidate;
        }
    }
    zero
}

/// Exact zero-locus decision for a family of monomials in `n` variables.
///
/// The common zero set is contained in the origin iff every coordinate `z_i`
/// has a generator supported inside `{i}` (a pure power, or a unit).
pub fn monomial_nonsingular(n: usize, generators: &[MultiIndex]) -> Result<SingularityVerdict> {
    let supports = masks(n, generators)?;
    let uncovered = (0..n).find(|&i| !supports.iter().any(|&s| s & !(1 << i) == 0));
    Ok(match uncovered {
        None => SingularityVerdict::exact(Singularity::Nonsingular),
        Some(i) => {
            let zero = largest_killing_subspace(n, &supports, i);
            SingularityVerdict::exact(Singularity::Singular(CoordinateSubspace::from_mask(n, zero)))
        }
    })
}

/// Rank of a rational matrix and, when rank-deficient, a nonzero kernel vector.
fn rank_and_kernel(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (usize, Option<Vec<Scalar>>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Scalar::one() / &rows[rank][col];
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rank == cols {
        return (rank, None);
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).expect("rank < cols");
    let mut v = vec![Scalar::zero(); cols];
    v[free] = Scalar::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[r][free].clone();
    }
    (rank, Some(v))
}

fn linear_verdict(n: usize, coefficients: &[&Polynomial]) -> Option<SingularityVerdict> {
    if !coefficients.iter().all(|g| g.is_homogeneous() && g.degree() == Some(1)) {
        return None;
    }
    let rows = coefficients
        .iter()
        .map(|g| {
            (1..=n)
                .map(|i| g.coefficient(&MultiIndex::pure_power(n, i, 1)))
                .collect()
        })
        .collect();
    Some(match rank_and_kernel(rows, n) {
        (_, None) => SingularityVerdict::exact(Singularity::Nonsingular),
        (_, Some(kernel)) => SingularityVerdict::exact(Singularity::SingularAt(kernel)),
    })
}

enum Branch {
    Clear,
    Singular(u64),
    Unknown,
}

/// Case split on the coordinate subspace `{z_zero = 0}`: once the restricted
/// family contains a monomial, one of its variables must vanish, so the
/// search recurses on each choice. `Clear` means the only common zero in the
/// subspace is the origin.
fn branch(n: usize, coefficients: &[&Polynomial], zero: u64, memo: &mut BTreeMap<u64, bool>) -> Branch {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if zero == full {
        return Branch::Clear;
    }
    if let Some(&clear) = memo.get(&zero) {
        return if clear { Branch::Clear } else { Branch::Unknown };
    }
    let restricted: Vec<Polynomial> = coefficients
        .iter()
        .map(|g| g.restrict(zero))
        .filter(|g| !g.is_zero())
        .collect();
    if restricted.is_empty() {
        return Branch::Singular(zero);
    }
    let pivot = restricted
        .iter()
        .filter_map(|g| g.as_monomial().map(|(a, _)| a.support_mask()))
        .min_by_key(|m| m.count_ones());
    let outcome = match pivot {
        None => Branch::Unknown,
        Some(0) => Branch::Clear,
        Some(support) => {
            let mut outcome = Branch::Clear;
            for i in (0..n).filter(|i| support >> i & 1 == 1) {
                match branch(n, coefficients, zero | 1 << i, memo) {
                    Branch::Clear => {}
                    Branch::Singular(m) => return Branch::Singular(m),
                    Branch::Unknown => outcome = Branch::Unknown,
                }
            }
            outcome
        }
    };
    memo.insert(zero, matches!(outcome, Branch::Clear));
    outcome
}

fn sample_point(rng: &mut ChaCha8Rng, n: usize, free_mask: u64) -> Vec<Scalar> {
    (0..n)
        .map(|i| {
            if free_mask >> i & 1 == 1 {
                let v = rng.random_range(1..=SAMPLE_RANGE);
                scalar(if rng.random_bool(0.5) { v } else { -v })
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

/// Nonsingularity of a form's coefficient family on `ℂⁿ∖{0}`.
///
/// Monomial coefficients are decided exactly. Otherwise `trials` must be
/// positive; the exact checks (killing coordinate subspaces of the support,
/// case splits on monomial coefficients, homogeneous linear rank) run first and
/// seeded sampling on every coordinate subspace runs last.
pub fn is_nonsingular(a: &PolyKForm, trials: usize, seed: u64) -> Result<SingularityVerdict> {
    if a.is_zero() {
        return Err(Error::ZeroForm("nonsingularity"));
    }
    let n = a.n();
    let coefficients: Vec<&Polynomial> = a.coefficients().values().collect();
    let monomials: Vec<MultiIndex> = coefficients
        .iter()
        .filter_map(|g| g.as_monomial().map(|(alpha, _)| alpha.clone()))
        .collect();
    if monomials.len() == coefficients.len() {
        return monomial_nonsingular(n, &monomials);
    }
    if trials == 0 {
        return Err(Error::Inconclusive(
            "non-monomial coefficients need at least one sampling trial".into(),
        ));
    }
    // The support monomials vanish wherever all their terms do.
    let support: Vec<MultiIndex> = a.terms().map(|(alpha, _, _)| alpha.clone()).collect();
    let by_support = monomial_nonsingular(n, &support)?;
    if by_support.is_singular() {
        return Ok(by_support);
    }
    if n <= 64 {
        match branch(n, &coefficients, 0, &mut BTreeMap::new()) {
            Branch::Clear => return Ok(SingularityVerdict::exact(Singularity::Nonsingular)),
            Branch::Singular(zero) => {
                return Ok(SingularityVerdict::exact(Singularity::Singular(
                    CoordinateSubspace::from_mask(n, zero),
                )))
            }
            Branch::Unknown => {}
        }
    }
    if let Some(v) = linear_verdict(n, &coefficients) {
        return Ok(v);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full: u64 = if n >= 64 { u64::MAX } else { (1 << n) - 1 };
    let subspaces: Vec<u64> = if n <= EXHAUSTIVE_LIMIT {
        (1..=full).collect()
    } else {
        vec![full]
    };
    for free in subspaces {
        for _ in 0..trials {
            let point = sample_point(&mut rng, n, free);
            if coefficients.iter().all(|g| g.evaluate(&point).is_zero()) {
                return Ok(SingularityVerdict::exact(Singularity::SingularAt(point)));
            }
        }
    }
    Ok(SingularityVerdict {
        status: Singularity::ProbablyNonsingular { trials },
        exact: false,
    })
}
