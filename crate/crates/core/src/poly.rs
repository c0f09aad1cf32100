//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::index::MultiIndex;

pub type Scalar = BigRational;

pub fn scalar(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// A polynomial in `z₁, …, zₙ`. Canonical: no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn monomial(alpha: MultiIndex, c: Scalar) -> Self {
        let mut p = Self::zero(alpha.n());
        p.add_term(alpha, c);
        p
    }

    /// The coordinate function `z_i` (1-based).
    pub fn variable(n: usize, coordinate: usize) -> Self {
        Self::monomial(MultiIndex::pure_power(n, coordinate, 1), Scalar::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single nonzero term `c·z^α`.
    pub fn as_monomial(&self) -> Option<(&MultiIndex, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest total degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Scalar) {
        assert_eq!(alpha.n(), self.n, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂z_i` for a 0-based variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (alpha, c) in &self.terms {
            if let Some(lower) = alpha.lowered(i) {
                let e = i64::from(alpha.exponents()[i]);
                out.add_term(lower, c * scalar(e));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n, "evaluation point arity mismatch");
        let mut total = Scalar::zero();
        for (alpha, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(alpha.exponents()) {
                if e > 0 {
                    v *= Pow::pow(x, e);
                }
            }
            total += v;
        }
        total
    }

    /// Restriction to the coordinate subspace where the coordinates in
    /// `zero_mask` (bit `i-1` for `z_i`) vanish.
    pub fn restrict(&self, zero_mask: u64) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.support_mask() & zero_mask == 0)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "polynomial arity mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "polynomial arity mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "polynomial arity mismatch");
        let mut out = Polynomial::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.add(b), c * d);
            }
        }
        out
    }
}
