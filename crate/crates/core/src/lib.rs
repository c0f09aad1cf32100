//! Exact computations with twisted holomorphic k-forms on diagonal Hopf
//! manifolds `X = (ℂⁿ∖{0}) / ⟨f⟩`, `f(z) = (μ₁z₁, …, μₙzₙ)`.
//!
//! * [`structure`], [`weight`], [`index`]: eigenvalue patterns, the weight
//!   lattice and index types.
//! * [`poly`], [`form`], [`literal`]: sparse rational polynomials and k-forms,
//!   with a small text syntax.
//! * [`cohomology`]: monomial bases and dimensions of `H⁰(X, Ω^k ⊗ L_b)`,
//!   admissible bundles, and a brute-force dimension oracle.
//! * [`exterior`]: wedge, `d`, contractions, decomposability, integrability.
//! * [`analysis`]: common zero loci of coefficient families.
//! * [`classifier`]: normal forms of nonsingular distributions.

pub mod analysis;
pub mod classifier;
pub mod cohomology;
pub mod enumerate;
pub mod error;
pub mod exterior;
pub mod form;
pub mod index;
pub mod literal;
pub mod poly;
pub mod structure;
pub mod weight;

pub use analysis::{CoordinateSubspace, Singularity, SingularityVerdict};
pub use classifier::{CaseTag, ClassificationRecord, NonsingularVerdict, NormalForm, WitnessChecks};
pub use cohomology::SectionSpace;
pub use error::{Error, Result};
pub use form::PolyKForm;
pub use index::{wedge_basis_sign, FormIndex, MultiIndex};
pub use literal::{parse_form, render_form};
pub use poly::{Polynomial, Scalar};
pub use structure::{EigenvalueStructure, StructureKind};
pub use weight::{weight_of_term, LineBundle, Weight};
