//! Normal forms of nonsingular distributions defined by twisted k-forms.
//!
//! A record pairs the section space of `(structure, k, b)` with a case tag and
//! a nonsingularity verdict. Verdicts are never asserted from the case tag
//! alone: a witness must pass the exact zero-locus, Plücker and Frobenius
//! checks, and an exclusion must come with a reason that holds for every
//! section.

use std::fmt;

use rayon::prelude::*;

use crate::analysis::{is_nonsingular, monomial_nonsingular, CoordinateSubspace, Singularity, SingularityVerdict};
use crate::cohomology::{admissible_weights, section_basis, section_dimension_closed_form, SectionSpace};
use crate::error::{Error, Result};
use crate::exterior::{is_decomposable, is_integrable};
use crate::form::PolyKForm;
use crate::index::{FormIndex, MultiIndex};
use crate::poly::{scalar, Scalar};
use crate::structure::{EigenvalueStructure, StructureKind};
use crate::weight::Weight;

/// Generic members with more terms than this are not tried as witnesses.
const GENERIC_MEMBER_LIMIT: usize = 120;
const WITNESS_TRIALS: usize = 8;
const WITNESS_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseTag {
    /// Classical structure, `b = μ^m`, `m ≥ k`.
    ClassicalPolynomial {
        m: i64,
    },
    /// Generic structure, `b = μ_I`.
    GenericMonomial {
        index: FormIndex,
    },
    /// Generic structure with sections, none of them nonsingular.
    GenericSingularOnly,
    /// Intermediary, `b = μ^m μ_{i₁}⋯μ_{i_h}` with `m + h = k`.
    IntermediaryConstant {
        m: i64,
        h: usize,
        special_indices: Vec<usize>,
    },
    /// Intermediary, singleton exponents in `{0,1}` and `m + h = k + 1`.
    IntermediaryLinear {
        m: i64,
        h: usize,
    },
    IntermediarySingularOnly,
    NoSection,
    /// Sections exist but `k` is outside `1 < k < n − 1`; no normal form is
    /// attached.
    OutOfRange,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::ClassicalPolynomial { .. } => "classical-polynomial",
            CaseTag::GenericMonomial { .. } => "generic-monomial",
            CaseTag::GenericSingularOnly => "generic-singular-only",
            CaseTag::IntermediaryConstant { .. } => "intermediary-constant",
            CaseTag::IntermediaryLinear { .. } => "intermediary-linear",
            CaseTag::IntermediarySingularOnly => "intermediary-singular-only",
            CaseTag::NoSection => "no-section",
            CaseTag::OutOfRange => "out-of-range",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::ClassicalPolynomial { m } => write!(f, "{}{{m={m}}}", self.name()),
            CaseTag::GenericMonomial { index } => write!(f, "{}{{I={index}}}", self.name()),
            CaseTag::IntermediaryConstant { m, h, special_indices } => {
                write!(f, "{}{{m={m}, h={h}, special={special_indices:?}}}", self.name())
            }
            CaseTag::IntermediaryLinear { m, h } => write!(f, "{}{{m={m}, h={h}}}", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

/// A family `Σ_t c_t z^{α_t} dz_{I_t}` with one free scalar per term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub description: String,
    pub terms: Vec<(MultiIndex, FormIndex)>,
    /// Which branch of the case analysis produced this family.
    pub subcase: Option<String>,
    n: usize,
    k: usize,
}

impl NormalForm {
    pub fn parameter_count(&self) -> usize {
        self.terms.len()
    }

    pub fn instantiate(&self, scalars: &[Scalar]) -> Result<PolyKForm> {
        if scalars.len() != self.terms.len() {
            return Err(Error::DimensionMismatch {
                what: "normal-form parameters",
                expected: self.terms.len(),
                found: scalars.len(),
            });
        }
        PolyKForm::from_terms(
            self.n,
            self.k,
            self.terms
                .iter()
                .zip(scalars)
                .map(|((a, i), c)| (a.clone(), i.clone(), c.clone())),
        )
    }

    /// The member whose scalars are the first primes `2, 3, 5, …`.
    pub fn generic_member(&self) -> PolyKForm {
        let scalars: Vec<Scalar> = primes(self.terms.len()).into_iter().map(scalar).collect();
        self.instantiate(&scalars).expect("one scalar per term")
    }
}

fn primes(count: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(count);
    let mut candidate = 2;
    while out.len() < count {
        if out
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0)
        {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// Results of the three exact checks on a candidate form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessChecks {
    pub nonsingular: SingularityVerdict,
    pub decomposable: bool,
    /// `None` when the form is not decomposable.
    pub integrable: Option<bool>,
}

impl WitnessChecks {
    pub fn run(form: &PolyKForm) -> Result<Self> {
        let nonsingular = is_nonsingular(form, WITNESS_TRIALS, WITNESS_SEED)?;
        let decomposable = is_decomposable(form)?;
        let integrable = if decomposable { Some(is_integrable(form)?) } else { None };
        Ok(Self {
            nonsingular,
            decomposable,
            integrable,
        })
    }

    pub fn all_pass(&self) -> bool {
        self.nonsingular.is_exact_nonsingular() && self.decomposable && self.integrable == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonsingularVerdict {
    /// A section defining a nonsingular distribution.
    Exists { witness: PolyKForm, checks: WitnessChecks },
    /// No section defines a nonsingular distribution.
    Excluded {
        reason: String,
        /// A coordinate subspace on which every section vanishes, when the
        /// exclusion comes from the support of the section space.
        common_zero: Option<CoordinateSubspace>,
    },
    /// The candidates tried all failed and no exclusion argument applies.
    Undecided {
        reason: String,
        candidate: Option<(PolyKForm, WitnessChecks)>,
    },
}

impl NonsingularVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            NonsingularVerdict::Exists { .. } => "exists",
            NonsingularVerdict::Excluded { .. } => "excluded",
            NonsingularVerdict::Undecided { .. } => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub structure: EigenvalueStructure,
    pub k: usize,
    pub b: Weight,
    pub case_tag: CaseTag,
    pub normal_form: Option<NormalForm>,
    pub dimension: u64,
    pub in_theorem_range: bool,
    pub nonsingular: NonsingularVerdict,
}

impl ClassificationRecord {
    pub fn nonsingular_exists(&self) -> bool {
        matches!(self.nonsingular, NonsingularVerdict::Exists { .. })
    }

    pub fn witness(&self) -> Option<&PolyKForm> {
        match &self.nonsingular {
            NonsingularVerdict::Exists { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

fn in_theorem_range(n: usize, k: usize) -> bool {
    1 < k && k + 1 < n
}

/// Exponents `(m, m_{r+1}, …, m_n)`, `h`, and the special singleton indices.
fn intermediary_parts(r: usize, b: &Weight) -> (i64, usize, Vec<usize>, bool) {
    let e = b.exponents();
    let special: Vec<usize> = e[1..]
        .iter()
        .enumerate()
        .filter(|(_, &x)| x >= 1)
        .map(|(j, _)| r + 1 + j)
        .collect();
    let all_unit = e[1..].iter().all(|&x| x <= 1);
    (e[0], special.len(), special, all_unit)
}

fn case_tag(structure: &EigenvalueStructure, k: usize, b: &Weight) -> CaseTag {
    let e = b.exponents();
    match structure.kind() {
        StructureKind::Classical => CaseTag::ClassicalPolynomial { m: e[0] },
        StructureKind::Generic => {
            if e.iter().all(|&x| x == 0 || x == 1) && b.total_degree() == k as i64 {
                let support = (1..=structure.n()).filter(|i| e[i - 1] == 1).collect();
                CaseTag::GenericMonomial {
                    index: FormIndex::new(support).expect("increasing"),
                }
            } else {
                CaseTag::GenericSingularOnly
            }
        }
        StructureKind::Intermediary { r } => {
            let (m, h, special, all_unit) = intermediary_parts(r, b);
            let k = k as i64;
            match (all_unit, m + h as i64 - k) {
                (true, 0) => CaseTag::IntermediaryConstant {
                    m,
                    h,
                    special_indices: special,
                },
                (true, 1) => CaseTag::IntermediaryLinear { m, h },
                _ => CaseTag::IntermediarySingularOnly,
            }
        }
    }
}

/// Human-readable label of the branch of the intermediary case analysis,
/// parametrised by `m`, `r`, `t = n − r`, `λ = k − m` and the singleton
/// exponents.
fn intermediary_subcase(n: usize, r: usize, k: usize, b: &Weight) -> String {
    let e = b.exponents();
    let m = e[0];
    let t = n - r;
    let k_i = k as i64;
    let mut parts = vec![format!("m={m}")];
    let singles_unit = |from: usize| e[from..].iter().all(|&x| x == 1);
    let zero_singles = e[1..].iter().filter(|&&x| x == 0).count();
    match m {
        0 => parts.push("sections only on singleton coordinates".into()),
        1 => {
            if r + 1 == n {
                parts.push("r=n-1".into());
            } else if r + 2 == n {
                parts.push("r=n-2".into());
                parts.push(format!("k={k}"));
                if k == 2 {
                    parts.push(format!("m_{}={}, m_{}={}", n - 1, e[t - 1], n, e[t]));
                }
            } else {
                parts.push(format!("2<=r<=n-3, t={t}"));
                parts.push(if k == t + 1 {
                    "k=t+1".into()
                } else if k == t {
                    if singles_unit(1) {
                        "k=t, all singleton exponents 1".into()
                    } else {
                        "k=t, one singleton exponent 0".into()
                    }
                } else if k < t {
                    "k<t".into()
                } else {
                    "k>t+1".into()
                });
            }
        }
        _ if m == k_i => {
            parts.push("m=k".into());
            if r + 1 < n {
                parts.push("r<n-1".into());
            } else {
                parts.push(format!("r=n-1, m_n={}", e[1]));
            }
        }
        _ if m >= 2 && m < k_i => {
            let lambda = k_i - m;
            parts.push(format!("lambda={lambda}, t={t}"));
            if t > 2 {
                parts.push(if lambda == t as i64 {
                    "lambda=t".into()
                } else if lambda <= t as i64 - 2 {
                    "lambda<=t-2".into()
                } else if lambda == t as i64 - 1 {
                    if zero_singles == 0 {
                        "lambda=t-1, all singleton exponents 1".into()
                    } else {
                        "lambda=t-1, one singleton exponent 0".into()
                    }
                } else {
                    "lambda>t".into()
                });
            }
        }
        _ => parts.push("m>k".into()),
    }
    parts.join("; ")
}

fn describe(tag: &CaseTag, k: usize, degree: i64) -> String {
    match tag {
        CaseTag::ClassicalPolynomial { .. } => format!(
            "sum over I of g_I dz_I, each g_I homogeneous of degree {degree}"
        ),
        CaseTag::GenericMonomial { index } => format!("c dz_{index}"),
        CaseTag::GenericSingularOnly => format!(
            "sum over I of c_I z^(b - e_I) dz_I, single monomials of degree {degree}"
        ),
        CaseTag::IntermediaryConstant {
            m, special_indices, ..
        } => format!(
            "sum over J in the block, |J| = {m}, of c_J dz_J ^ dz_{special_indices:?} (constant {k}-form)"
        ),
        CaseTag::IntermediaryLinear { .. } => {
            "linear family spanned by c z_l dz_J ^ dz_(S minus l) and L(z_1..z_r) dz_J' ^ dz_S; no single template is claimed complete".into()
        }
        CaseTag::IntermediarySingularOnly => {
            format!("sections with coefficients of degree {degree}, all vanishing off the origin")
        }
        CaseTag::NoSection | CaseTag::OutOfRange => String::new(),
    }
}

/// Greedy choice of pure-power terms `z_i^d dz_I`, one per coordinate with
/// distinct `I`; `None` if some coordinate cannot be covered.
fn coordinate_power_candidate(space: &SectionSpace, degree: u32) -> Option<PolyKForm> {
    let n = space.structure.n();
    let mut used: Vec<&FormIndex> = Vec::new();
    let mut chosen = Vec::new();
    for i in 1..=n {
        let target = MultiIndex::pure_power(n, i, degree);
        let (alpha, index) = space
            .basis
            .iter()
            .find(|(a, idx)| *a == target && !used.contains(&idx))?;
        used.push(index);
        chosen.push((alpha.clone(), index.clone(), scalar(1)));
    }
    PolyKForm::from_terms(n, space.k, chosen).ok()
}

fn nonsingular_verdict(
    space: &SectionSpace,
    normal_form: Option<&NormalForm>,
    in_range: bool,
) -> Result<NonsingularVerdict> {
    let n = space.structure.n();
    if space.basis.is_empty() {
        return Ok(NonsingularVerdict::Excluded {
            reason: "no sections".into(),
            common_zero: None,
        });
    }
    let supports: Vec<MultiIndex> = space.basis.iter().map(|(a, _)| a.clone()).collect();
    if let Singularity::Singular(subspace) = monomial_nonsingular(n, &supports)?.status {
        return Ok(NonsingularVerdict::Excluded {
            reason: format!("every basis monomial vanishes on {subspace}"),
            common_zero: Some(subspace),
        });
    }
    if let Some((_, index)) = space.basis.iter().find(|(a, _)| a.is_constant()) {
        let witness = PolyKForm::basis(n, index.clone())?;
        let checks = WitnessChecks::run(&witness)?;
        if checks.all_pass() {
            return Ok(NonsingularVerdict::Exists { witness, checks });
        }
    }
    let degree = space.coefficient_degree().unwrap_or(0);
    let mut candidates = Vec::new();
    if let Some(c) = coordinate_power_candidate(space, degree) {
        candidates.push(c);
    }
    let generic = normal_form
        .filter(|nf| nf.parameter_count() <= GENERIC_MEMBER_LIMIT)
        .map(NormalForm::generic_member);
    candidates.extend(generic);
    let mut best: Option<(PolyKForm, WitnessChecks)> = None;
    for candidate in candidates {
        let checks = WitnessChecks::run(&candidate)?;
        if checks.all_pass() {
            return Ok(NonsingularVerdict::Exists {
                witness: candidate,
                checks,
            });
        }
        if best.is_none() && checks.nonsingular.is_nonsingular() {
            best = Some((candidate, checks));
        }
    }
    if degree == 1 && in_range {
        return Ok(NonsingularVerdict::Excluded {
            reason: "coefficients are linear; a nonsingular decomposable k-form with linear \
                     coefficients would embed P^(n-1) linearly in the Grassmannian of k-planes, \
                     whose linear subspaces have dimension at most max(k, n-k) < n-1"
                .into(),
            common_zero: None,
        });
    }
    Ok(NonsingularVerdict::Undecided {
        reason: format!("no tried candidate is nonsingular, decomposable and integrable (coefficient degree {degree})"),
        candidate: best,
    })
}

/// Classifies the sections of `Ω^k ⊗ L_b`.
pub fn classify(structure: &EigenvalueStructure, k: usize, b: &Weight) -> Result<ClassificationRecord> {
    let dimension = section_dimension_closed_form(structure, k, b)?;
    let n = structure.n();
    let guard = (b.total_degree() - k as i64).max(0) as u32;
    let space = section_basis(structure, k, &b.clone().into(), guard)?;
    let in_range = in_theorem_range(n, k);
    let tag = if dimension == 0 {
        CaseTag::NoSection
    } else if !in_range {
        CaseTag::OutOfRange
    } else {
        case_tag(structure, k, b)
    };
    let normal_form = match tag {
        CaseTag::NoSection | CaseTag::OutOfRange => None,
        _ => Some(NormalForm {
            description: describe(&tag, k, guard as i64),
            terms: space.basis.clone(),
            subcase: match structure.kind() {
                StructureKind::Intermediary { r } => Some(intermediary_subcase(n, r, k, b)),
                _ => None,
            },
            n,
            k,
        }),
    };
    let nonsingular = nonsingular_verdict(&space, normal_form.as_ref(), in_range)?;
    Ok(ClassificationRecord {
        structure: *structure,
        k,
        b: b.clone(),
        case_tag: tag,
        normal_form,
        dimension,
        in_theorem_range: in_range,
        nonsingular,
    })
}

/// One record per admissible weight of total degree at most `bound`, sorted
/// lexicographically by weight.
pub fn classify_catalogue(structure: &EigenvalueStructure, k: usize, bound: u32) -> Result<Vec<ClassificationRecord>> {
    let mut weights = admissible_weights(structure, k, bound)?;
    weights.sort();
    weights.par_iter().map(|b| classify(structure, k, b)).collect()
}

/// Whether every section space over a generic structure, up to `bound`, has a
/// basis in which each `g_I` is a single monomial.
pub fn verify_generic_monomiality(structure: &EigenvalueStructure, k: usize, bound: u32) -> Result<bool> {
    if structure.kind() != StructureKind::Generic {
        return Err(Error::Precondition(format!(
            "monomiality check needs a generic structure, got {structure}"
        )));
    }
    for b in admissible_weights(structure, k, bound)? {
        let guard = (b.total_degree() - k as i64).max(0) as u32;
        let space = section_basis(structure, k, &b.into(), guard)?;
        let mut indices: Vec<&FormIndex> = space.basis.iter().map(|(_, i)| i).collect();
        let total = indices.len();
        indices.sort();
        indices.dedup();
        if indices.len() != total {
            return Ok(false);
        }
    }
    Ok(true)
}
