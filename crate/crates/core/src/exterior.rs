//! Exterior calculus on polynomial forms and the pointwise Plücker and
//! Frobenius criteria.
//!
//! Both predicates are exact: every identity is expanded into canonical sparse
//! form and compared with zero.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::form::PolyKForm;
use crate::index::{wedge_basis_sign, FormIndex};
use crate::poly::scalar;

fn check_same_n(a: &PolyKForm, b: &PolyKForm) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            what: "ambient dimension",
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(())
}

/// `a ∧ b`. When `deg a + deg b > n` the result is the zero form of that degree.
pub fn wedge(a: &PolyKForm, b: &PolyKForm) -> Result<PolyKForm> {
    check_same_n(a, b)?;
    let mut out = PolyKForm::zero(a.n(), a.k() + b.k());
    if a.k() + b.k() > a.n() {
        return Ok(out);
    }
    for (i, g) in a.coefficients() {
        for (j, h) in b.coefficients() {
            let (sign, merged) = wedge_basis_sign(i, j);
            if let Some(merged) = merged {
                let product = g * h;
                let product = if sign < 0 { -&product } else { product };
                out.add_coefficient(merged, &product);
            }
        }
    }
    Ok(out)
}

/// Exterior derivative `d(g dz_I) = Σ_j ∂_j g dz_j ∧ dz_I`.
pub fn exterior_derivative(a: &PolyKForm) -> PolyKForm {
    let n = a.n();
    let mut out = PolyKForm::zero(n, a.k() + 1);
    if a.k() >= n {
        return out;
    }
    for (i, g) in a.coefficients() {
        for j in 0..n {
            let dg = g.partial(j);
            if dg.is_zero() {
                continue;
            }
            let single = FormIndex::new(vec![j + 1]).expect("singleton index");
            let (sign, merged) = wedge_basis_sign(&single, i);
            if let Some(merged) = merged {
                let dg = if sign < 0 { -&dg } else { dg };
                out.add_coefficient(merged, &dg);
            }
        }
    }
    out
}

/// Interior product with the constant multivector `∂_J`, with the convention
/// `dz_J ∧ ι_{∂_J} dz_I = dz_I` whenever `J ⊆ I`.
pub fn interior(a: &PolyKForm, j: &FormIndex) -> Result<PolyKForm> {
    if j.len() > a.k() {
        return Err(Error::DimensionMismatch {
            what: "contraction length exceeds form degree",
            expected: a.k(),
            found: j.len(),
        });
    }
    j.check_within(a.n())?;
    let mut out = PolyKForm::zero(a.n(), a.k() - j.len());
    for (i, g) in a.coefficients() {
        if !j.is_subset_of(i) {
            continue;
        }
        let rest = i.difference(j);
        let (sign, _) = wedge_basis_sign(j, &rest);
        out.add_coefficient(rest, &g.scale(&scalar(i64::from(sign))));
    }
    Ok(out)
}

/// Contraction of a k-form with `∂_J`, `|J| = k − 1`, giving a 1-form.
pub fn contract(a: &PolyKForm, j: &FormIndex) -> Result<PolyKForm> {
    if a.k() == 0 || j.len() + 1 != a.k() {
        return Err(Error::DimensionMismatch {
            what: "contraction index length must be k - 1",
            expected: a.k().saturating_sub(1),
            found: j.len(),
        });
    }
    interior(a, j)
}

/// `ι_{∂_J} a ∧ b == 0` for every `J` of length `deg a − 1`.
fn contraction_identities_vanish(a: &PolyKForm, b: &PolyKForm) -> bool {
    FormIndex::all(a.n(), a.k() - 1).par_iter().all(|j| {
        let c = contract(a, j).expect("index length matches by construction");
        wedge(&c, b).expect("same ambient dimension").is_zero()
    })
}

/// Pointwise decomposability: `ι_ξ a ∧ a = 0` for every `(k−1)`-vector `ξ`.
pub fn is_decomposable(a: &PolyKForm) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroForm("decomposability"));
    }
    if a.k() <= 1 {
        return Ok(true);
    }
    Ok(contraction_identities_vanish(a, a))
}

/// Integrability of the distribution defined by a decomposable form:
/// `ι_ξ a ∧ da = 0` for every `(k−1)`-vector `ξ`.
pub fn is_integrable(a: &PolyKForm) -> Result<bool> {
    if !is_decomposable(a)? {
        return Err(Error::NotADistribution);
    }
    if a.k() == 0 {
        return Ok(true);
    }
    let da = exterior_derivative(a);
    if da.is_zero() {
        return Ok(true);
    }
    Ok(contraction_identities_vanish(a, &da))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_form;

    fn form(text: &str, n: usize) -> PolyKForm {
        parse_form(text, n, None).unwrap()
    }
    fn fi(v: &[usize]) -> FormIndex {
        FormIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&form("dz1", 3), &form("dz2", 3)), Ok(form("dz1^dz2", 3)));
        assert_eq!(wedge(&form("dz2", 3), &form("dz1", 3)), Ok(form("-dz1^dz2", 3)));
        assert_eq!(
            wedge(&form("z1 dz2", 3), &form("z2 dz1", 3)),
            Ok(form("-z1 z2 dz1^dz2", 3))
        );
        assert!(wedge(&form("dz1^dz2", 3), &form("dz3^dz1", 3)).unwrap().is_zero());
        assert!(matches!(
            wedge(&form("dz1", 3), &form("dz1", 4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wedge_beyond_top_degree_is_zero() {
        let w = wedge(&form("dz1^dz2", 3), &form("dz1^dz3", 3)).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.k(), 4);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(exterior_derivative(&form("z3 dz1^dz2", 3)), form("dz1^dz2^dz3", 3));
        assert!(exterior_derivative(&form("7 dz1^dz3", 3)).is_zero());
        assert_eq!(
            exterior_derivative(&form("z1 z2 dz3", 3)),
            form("z2 dz1^dz3 + z1 dz2^dz3", 3)
        );
    }

    #[test]
    fn contract_examples() {
        assert_eq!(contract(&form("dz1^dz2", 4), &fi(&[1])), Ok(form("dz2", 4)));
        assert_eq!(contract(&form("dz1^dz2", 4), &fi(&[2])), Ok(form("-dz1", 4)));
        assert_eq!(contract(&form("dz1^dz2 + dz3^dz4", 4), &fi(&[3])), Ok(form("dz4", 4)));
        assert!(matches!(
            contract(&form("dz1^dz2", 4), &fi(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn contraction_then_wedge_recovers_basis_form() {
        let n = 5;
        for k in 1..=n {
            for i in FormIndex::all(n, k) {
                let basis = PolyKForm::basis(n, i.clone()).unwrap();
                for j in FormIndex::all(n, k - 1) {
                    let c = contract(&basis, &j).unwrap();
                    if j.is_subset_of(&i) {
                        let back = wedge(&PolyKForm::basis(n, j.clone()).unwrap(), &c).unwrap();
                        assert_eq!(back, basis);
                    } else {
                        assert!(c.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn decomposability_examples() {
        assert_eq!(is_decomposable(&form("dz1^dz2", 4)), Ok(true));
        assert_eq!(is_decomposable(&form("dz1^dz2 + dz3^dz4", 4)), Ok(false));
        assert_eq!(
            is_decomposable(&form("z3 dz1^dz2 - z2 dz1^dz3 + z1 dz2^dz3", 3)),
            Ok(true)
        );
        assert_eq!(
            is_decomposable(&form("z3 dz1^dz2 - z2 dz1^dz3 + z1 dz2^dz3", 5)),
            Ok(true)
        );
        // A 1-form is always decomposable; a function trivially so.
        assert_eq!(is_decomposable(&form("z1 dz1 + z2 dz3", 3)), Ok(true));
        assert!(matches!(
            is_decomposable(&PolyKForm::zero(4, 2)),
            Err(Error::ZeroForm(_))
        ));
    }

    #[test]
    fn plucker_witness_of_the_counterexample() {
        let w = form("dz1^dz2 + dz3^dz4", 4);
        let c = contract(&w, &fi(&[1])).unwrap();
        assert_eq!(wedge(&c, &w), Ok(form("dz2^dz3^dz4", 4)));
    }

    #[test]
    fn integrability_examples() {
        assert_eq!(is_integrable(&form("5 dz2^dz4", 4)), Ok(true));
        assert_eq!(is_integrable(&form("z1 dz1^dz2", 4)), Ok(true));
        assert_eq!(
            is_integrable(&form("dz1^dz2 + dz3^dz4", 4)),
            Err(Error::NotADistribution)
        );
        // Frobenius fails for the contact-type 1-form dz1 - z2 dz3 on ℂ³.
        assert_eq!(is_integrable(&form("dz1 - z2 dz3", 3)), Ok(false));
        assert_eq!(is_integrable(&form("z2 dz1 - z1 dz2", 3)), Ok(true));
    }

    #[test]
    fn decomposable_forms_of_codegree_one_are_integrable() {
        // In ℂ⁴ a decomposable 3-form gives ι_ξω ∧ dω of degree 5 > 4.
        let samples = [
            "dz1^dz2^dz3",
            "z4 dz1^dz2^dz3 - z3 dz1^dz2^dz4 + z2 dz1^dz3^dz4 - z1 dz2^dz3^dz4",
            "z1^2 dz1^dz2^dz4 + z3 dz2^dz3^dz4",
            "z2 z3 dz1^dz2^dz3",
        ];
        for s in samples {
            let w = form(s, 4);
            assert_eq!(is_decomposable(&w), Ok(true), "{s}");
            assert_eq!(is_integrable(&w), Ok(true), "{s}");
        }
        // A non-integrable decomposable 2-form in ℂ⁴ shows the degree bound matters.
        let theta = wedge(&form("dz1 - z2 dz3", 4), &form("dz4", 4)).unwrap();
        assert_eq!(is_decomposable(&theta), Ok(true));
        assert_eq!(is_integrable(&theta), Ok(false));
    }
}
