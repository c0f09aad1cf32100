//! Polynomial-coefficient k-forms `ω = Σ_I g_I dz_I` on `ℂⁿ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{FormIndex, MultiIndex};
use crate::poly::{Polynomial, Scalar};

/// A k-form with polynomial coefficients and exact rational scalars.
///
/// Stored grouped by basis differential; zero coefficients are never kept, so
/// structural equality is equality of forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyKForm {
    n: usize,
    k: usize,
    coefficients: BTreeMap<FormIndex, Polynomial>,
}

impl PolyKForm {
    pub fn zero(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            coefficients: BTreeMap::new(),
        }
    }

    /// The constant form `dz_I`.
    pub fn basis(n: usize, index: FormIndex) -> Result<Self> {
        let mut f = Self::zero(n, index.len());
        f.add_term(MultiIndex::zero(n), index, Scalar::from_integer(1.into()))?;
        Ok(f)
    }

    /// Single term `c · z^α dz_I`.
    pub fn term(alpha: MultiIndex, index: FormIndex, c: Scalar) -> Result<Self> {
        let mut f = Self::zero(alpha.n(), index.len());
        f.add_term(alpha, index, c)?;
        Ok(f)
    }

    pub fn from_terms(
        n: usize,
        k: usize,
        terms: impl IntoIterator<Item = (MultiIndex, FormIndex, Scalar)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n, k);
        for (alpha, index, c) in terms {
            f.add_term(alpha, index, c)?;
        }
        Ok(f)
    }

    /// Reassembles `Σ_I g_I dz_I` from its coefficient map.
    pub fn from_coefficients(
        n: usize,
        k: usize,
        coefficients: impl IntoIterator<Item = (FormIndex, Polynomial)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n, k);
        for (index, g) in coefficients {
            f.check_index(&index)?;
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    what: "coefficient arity",
                    expected: n,
                    found: g.n(),
                });
            }
            f.add_coefficient(index, &g);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Form degree.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<FormIndex, Polynomial> {
        &self.coefficients
    }

    pub fn coefficient(&self, index: &FormIndex) -> Polynomial {
        self.coefficients
            .get(index)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    /// All terms `(α, I, c)` in `(I, α)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FormIndex, &Scalar)> {
        self.coefficients
            .iter()
            .flat_map(|(i, g)| g.terms().map(move |(a, c)| (a, i, c)))
    }

    pub fn term_count(&self) -> usize {
        self.coefficients.values().map(Polynomial::term_count).sum()
    }

    fn check_index(&self, index: &FormIndex) -> Result<()> {
        if index.len() != self.k {
            return Err(Error::DimensionMismatch {
                what: "form index length vs form degree",
                expected: self.k,
                found: index.len(),
            });
        }
        index.check_within(self.n)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, index: FormIndex, c: Scalar) -> Result<()> {
        self.check_index(&index)?;
        if alpha.n() != self.n {
            return Err(Error::DimensionMismatch {
                what: "multi-index length",
                expected: self.n,
                found: alpha.n(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let n = self.n;
        match self.coefficients.entry(index) {
            Entry::Vacant(v) => {
                v.insert(Polynomial::monomial(alpha, c));
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_term(alpha, c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        debug_assert!(self.coefficients.values().all(|g| g.n() == n));
        Ok(())
    }

    /// Adds `g dz_I`; callers guarantee `I` is valid for this form.
    pub(crate) fn add_coefficient(&mut self, index: FormIndex, g: &Polynomial) {
        if g.is_zero() {
            return;
        }
        match self.coefficients.entry(index) {
            Entry::Vacant(v) => {
                v.insert(g.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + g;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (i, g) in &self.coefficients {
            out.add_coefficient(i.clone(), &g.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (i, g) in &self.coefficients {
            out.add_coefficient(i.clone(), &(g * p));
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                what: "ambient dimension",
                expected: self.n,
                found: other.n,
            });
        }
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                what: "form degree",
                expected: self.k,
                found: other.k,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, g) in &other.coefficients {
            out.add_coefficient(i.clone(), g);
        }
        Ok(out)
    }
}

impl Add for &PolyKForm {
    type Output = PolyKForm;
    fn add(self, rhs: &PolyKForm) -> PolyKForm {
        self.try_add(rhs).expect("incompatible forms")
    }
}

impl Neg for &PolyKForm {
    type Output = PolyKForm;
    fn neg(self) -> PolyKForm {
        PolyKForm {
            n: self.n,
            k: self.k,
            coefficients: self.coefficients.iter().map(|(i, g)| (i.clone(), -g)).collect(),
        }
    }
}

impl Sub for &PolyKForm {
    type Output = PolyKForm;
    fn sub(self, rhs: &PolyKForm) -> PolyKForm {
        self + &(-rhs)
    }
}

impl fmt::Display for PolyKForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::render_form(self))
    }
}
