use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{falling, LaurentPoly, Poly, Rational, Var};
use crate::render;

/// An element `sum c_ij t^i D^j` of `k[t, t^-1][D]`, stored in normal order
/// (every `t` to the left of every `D`).
///
/// Elements of `A1 = k[t, D]` are exactly those with no negative power of
/// `t`; see [`WeylElement::is_regular`]. The key `(i, j)` holds the
/// coefficient of `t^i D^j`, and zero coefficients are never stored, so
/// structural equality is equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeylElement {
    terms: BTreeMap<(i64, u32), Rational>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c t^i D^j`.
    pub fn monomial(c: Rational, i: i64, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    pub fn t_pow(i: i64) -> Self {
        Self::monomial(Rational::one(), i, 0)
    }

    pub fn d() -> Self {
        Self::d_pow(1)
    }

    pub fn d_pow(j: u32) -> Self {
        Self::monomial(Rational::one(), 0, j)
    }

    /// The Euler operator `tD`.
    pub fn euler() -> Self {
        Self::monomial(Rational::one(), 1, 1)
    }

    /// Embeds a polynomial in `t` or `D`. Polynomials in `E` are read as
    /// polynomials in the Euler operator `tD`.
    pub fn from_poly(p: &Poly) -> Self {
        match p.var() {
            Var::T => {
                let mut out = Self::zero();
                for (k, c) in p.terms() {
                    out.add_term(k as i64, 0, c.clone());
                }
                out
            }
            Var::D => {
                let mut out = Self::zero();
                for (k, c) in p.terms() {
                    out.add_term(0, k as u32, c.clone());
                }
                out
            }
            Var::E => {
                let e = Self::euler();
                p.coeffs().iter().rev().fold(Self::zero(), |acc, c| &(&acc * &e) + &Self::constant(c.clone()))
            }
        }
    }

    pub(crate) fn add_term(&mut self, i: i64, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `(t_exp, d_exp, coefficient)` in increasing lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: i64, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of nonzero normal-order terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the element lies in `A1` (no negative `t` exponents).
    pub fn is_regular(&self) -> bool {
        self.lowest_t().is_none_or(|i| i >= 0)
    }

    pub fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NonRegular(self.to_string()))
        }
    }

    /// Degree in `t`; `None` stands for minus infinity (the zero element).
    pub fn deg_t(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Degree in `D`; `None` for the zero element.
    pub fn deg_d(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Lowest power of `t` occurring.
    pub fn lowest_t(&self) -> Option<i64> {
        self.terms.keys().next().map(|&(i, _)| i)
    }

    /// Coefficient of the lexicographically largest `(t_exp, d_exp)` term.
    pub fn leading_coeff(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeylElement { terms: self.terms.iter().map(|(&k, a)| (k, a * c)).collect() }
    }

    /// The representative with leading coefficient 1 under the
    /// `(deg_t, deg_D)`-lexicographic order. Zero stays zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading_coeff()))
    }

    /// Left multiplication by `t^k`, which in normal order is an exponent shift.
    pub fn shift_t(&self, k: i64) -> Self {
        WeylElement { terms: self.terms.iter().map(|(&(i, j), c)| ((i + k, j), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Groups the element by powers of `t`: `sum_i t^i a_i(D)`.
    pub fn t_coefficients(&self) -> BTreeMap<i64, Poly> {
        let mut grouped: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
        for (i, j, c) in self.terms() {
            let v = grouped.entry(i).or_default();
            if v.len() <= j as usize {
                v.resize(j as usize + 1, Rational::zero());
            }
            v[j as usize] = c.clone();
        }
        grouped.into_iter().map(|(i, v)| (i, Poly::from_coeffs(Var::D, v))).collect()
    }

    /// Inverse of [`WeylElement::t_coefficients`].
    pub fn from_t_coefficients<'a, I: IntoIterator<Item = (i64, &'a Poly)>>(parts: I) -> Self {
        let mut out = Self::zero();
        for (i, p) in parts {
            for (j, c) in p.terms() {
                out.add_term(i, j as u32, c.clone());
            }
        }
        out
    }

    /// Polynomial in `D` when the element has no `t` dependence.
    pub fn as_d_poly(&self) -> Option<Poly> {
        if self.terms.keys().any(|&(i, _)| i != 0) {
            return None;
        }
        Some(self.t_coefficients().remove(&0).unwrap_or_else(|| Poly::zero(Var::D)))
    }

    /// Polynomial in `t` when the element has no `D` and no negative powers.
    pub fn as_t_poly(&self) -> Option<Poly> {
        if self.terms.keys().any(|&(i, j)| j != 0 || i < 0) {
            return None;
        }
        let len = self.deg_t().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, _, c) in self.terms() {
            coeffs[i as usize] = c.clone();
        }
        Some(Poly::from_coeffs(Var::T, coeffs))
    }

    /// The action on a Laurent polynomial, with `D` acting as `d/dt`.
    pub fn act(&self, h: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, j, c) in self.terms() {
            for (k, hc) in h.terms() {
                let ff = falling(k, j);
                if ff.is_zero() {
                    continue;
                }
                out.add_term(k - j as i64 + i, c * hc * Rational::from_integer(ff));
            }
        }
        out
    }

    /// Action on a polynomial of `k[t]`.
    pub fn act_poly(&self, h: &Poly) -> LaurentPoly {
        self.act(&LaurentPoly::from_poly(h))
    }
}

/// Normal-ordered product of two monomials, accumulated into `out`:
/// `D^b t^c = sum_k C(b,k) ff(c,k) t^(c-k) D^(b-k)`, valid for every integer `c`.
fn mul_monomials(out: &mut WeylElement, (a, b): (i64, u32), (c, d): (i64, u32), coeff: &Rational) {
    let mut weight = BigInt::one();
    for k in 0..=b {
        if weight.is_zero() {
            break;
        }
        out.add_term(a + c - k as i64, b - k + d, coeff * Rational::from_integer(weight.clone()));
        // C(b,k+1) ff(c,k+1) = C(b,k) ff(c,k) (b-k)(c-k) / (k+1)
        weight = weight * BigInt::from(b - k) * BigInt::from(c - k as i64) / BigInt::from(k + 1);
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &rhs.terms {
                mul_monomials(&mut out, ka, kb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: WeylElement) -> WeylElement {
        &self * &rhs
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: WeylElement) -> WeylElement {
        &self + &rhs
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Sub for WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: WeylElement) -> WeylElement {
        &self - &rhs
    }
}

/// Terms ordered by descending `D`-degree, then descending `t`-degree, e.g.
/// `t^-2*D + 3/2*t`.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(i, j, _)| std::cmp::Reverse((j, i)));
        render::write_sum(
            f,
            terms
                .into_iter()
                .map(|(i, j, c)| (c.clone(), render::monomial([render::power("t", i), render::power("D", j as i64)]))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn t() -> WeylElement {
        WeylElement::t()
    }
    fn d() -> WeylElement {
        WeylElement::d()
    }
    fn c(n: i64) -> WeylElement {
        WeylElement::constant(rat(n))
    }

    #[test]
    fn defining_relation() {
        assert_eq!(&d() * &t(), &WeylElement::euler() + &c(1));
        assert_eq!(d().commutator(&t()), c(1));
    }

    #[test]
    fn add_examples() {
        let e = WeylElement::euler();
        assert_eq!(&e + &WeylElement::zero(), e);
        assert_eq!(&(&e + &c(1)) + &c(-1), e);
        let f2 = &e - &c(1);
        let sum = &f2 + &WeylElement::t_pow(2);
        assert_eq!(sum.to_string(), "t*D + t^2 - 1");
    }

    #[test]
    fn d_times_t_inverse() {
        // Oracle: compare the action of both sides on t^k, where
        // D(t^-1 t^k) = (k-1) t^(k-2).
        let lhs = &d() * &WeylElement::t_pow(-1);
        let rhs = &(&WeylElement::t_pow(-1) * &d()) - &WeylElement::t_pow(-2);
        for k in -3..6 {
            let h = LaurentPoly::t_pow(k);
            assert_eq!(lhs.act(&h), LaurentPoly::monomial(rat(k - 1), k - 2));
            assert_eq!(lhs.act(&h), rhs.act(&h));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn e2_times_f2_is_d_squared() {
        let e2 = &WeylElement::t_pow(-2) * &WeylElement::euler();
        let f2 = &WeylElement::euler() - &c(1);
        assert_eq!(&e2 * &f2, WeylElement::d_pow(2));
    }

    #[test]
    fn commutator_examples() {
        let e = WeylElement::euler();
        assert_eq!(e.commutator(&e), WeylElement::zero());
        // [tD, t^2] = t (D t^2 - t^2 D) = t * 2t
        assert_eq!(e.commutator(&WeylElement::t_pow(2)), WeylElement::monomial(rat(2), 2, 0));
    }

    #[test]
    fn degrees() {
        let m = WeylElement::monomial(rat(1), 2, 3);
        assert_eq!((m.deg_t(), m.deg_d()), (Some(2), Some(3)));
        assert_eq!(WeylElement::zero().deg_t(), None);
        for n in 2..6 {
            let en = &WeylElement::t_pow(-n) * &WeylElement::euler();
            assert_eq!(en, WeylElement::monomial(rat(1), 1 - n, 1));
            assert_eq!(en.deg_t(), Some(1 - n));
        }
    }

    #[test]
    fn action_examples() {
        assert_eq!(d().act(&LaurentPoly::t_pow(2)), LaurentPoly::monomial(rat(2), 1));
        let f2 = &WeylElement::euler() - &c(1);
        let expect = [(0, -1), (1, 0), (2, 1), (3, 2)];
        for (k, coeff) in expect {
            assert_eq!(f2.act(&LaurentPoly::t_pow(k)), LaurentPoly::monomial(rat(coeff), k));
        }
    }

    #[test]
    fn render_examples() {
        let e = &WeylElement::monomial(rat(1), -2, 1) + &WeylElement::monomial(crate::exact::ratio(3, 2), 1, 0);
        assert_eq!(e.to_string(), "t^-2*D + 3/2*t");
        assert_eq!(WeylElement::zero().to_string(), "0");
        assert_eq!((-&d()).to_string(), "-D");
    }
}
