use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::poly::{Poly, Var};
use super::rational::Rational;
use crate::render;

/// A Laurent polynomial in `t`: a finite map from integer exponents to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn t_pow(k: i64) -> Self {
        Self::monomial(num_traits::One::one(), k)
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.terms() {
            out.add_term(k as i64, c.clone());
        }
        out
    }

    pub(crate) fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent present (the `t`-adic valuation).
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when no negative powers of `t` occur.
    pub fn is_polynomial(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn to_poly(&self) -> Option<Poly> {
        if !self.is_polynomial() {
            return None;
        }
        let len = self.degree().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rational::zero(); len];
        for (k, c) in self.terms() {
            coeffs[k as usize] = c.clone();
        }
        Some(Poly::from_coeffs(Var::T, coeffs))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&k, a)| (k, a * c)).collect() }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render::write_sum(f, self.terms().rev().map(|(k, c)| (c.clone(), render::monomial([render::power("t", k)]))))
    }
}
