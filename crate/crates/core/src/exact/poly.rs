//! Dense univariate polynomials over `Q`, tagged with their indeterminate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{rat, Rational};
use crate::render;

/// The indeterminate a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `t`, the coordinate of `k[t]`.
    T,
    /// `D`, the derivation `∂`.
    D,
    /// `E`, standing for the Euler operator `t∂` inside Euler forms.
    E,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::D => "D",
            Var::E => "E",
        }
    }
}

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are never stored,
/// so the zero polynomial has an empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::from_coeffs(var, vec![c])
    }

    /// The indeterminate itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(var, Rational::one(), 1)
    }

    pub fn monomial(var: Var, c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(var, coeffs)
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn from_i64s(var: Var, coeffs: &[i64]) -> Self {
        Self::from_coeffs(var, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `(x - r_1)(x - r_2)...`
    pub fn from_roots(var: Var, roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(var), |acc, r| acc * Self::from_coeffs(var, vec![-r.clone(), Rational::one()]))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// The same coefficients read in another indeterminate.
    pub fn with_var(&self, var: Var) -> Self {
        Poly { var, coeffs: self.coeffs.clone() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect();
        Self::from_coeffs(self.var, coeffs)
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::from_coeffs(self.var, vec![c.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.var), |acc, a| acc * lin.clone() + Self::constant(self.var, a.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.var), |acc, _| acc * self.clone())
    }

    /// Multiplication by `x^k`.
    pub fn shift_degree(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { var: self.var, coeffs }
    }

    /// Keeps only the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.var, self.coeffs.iter().take(n).cloned().collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert_eq!(self.var, divisor.var, "mixed indeterminates");
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = Rational::one() / divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(self.var, quot), Self::from_coeffs(self.var, rem))
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }
}

/// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.var, b.var, "mixed indeterminates");
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = r;
    }
    x.monic()
}

/// Monic highest common factor of a list. Zero entries are ignored, and the
/// result is zero only when every entry is.
pub fn hcf_list(ps: &[Poly]) -> Poly {
    let var = ps.first().map_or(Var::D, Poly::var);
    ps.iter().fold(Poly::zero(var), |acc, p| poly_gcd(&acc, p))
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.var, rhs.var, "mixed indeterminates");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(self.var, coeffs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.var, rhs.var, "mixed indeterminates");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(self.var, coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.var.symbol();
        render::write_sum(
            f,
            self.terms().rev().map(|(k, c)| (c.clone(), render::monomial([render::power(sym, k as i64)]))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn d(cs: &[i64]) -> Poly {
        Poly::from_i64s(Var::D, cs)
    }

    #[test]
    fn gcd_examples() {
        let tm = |cs: &[i64]| Poly::from_i64s(Var::E, cs);
        assert_eq!(poly_gcd(&tm(&[-1, 0, 1]), &tm(&[-1, 1])), tm(&[-1, 1]));
        let a = tm(&[4, 0, 2]);
        assert_eq!(poly_gcd(&a, &Poly::zero(Var::E)), tm(&[2, 0, 1]));
        // gcd(D^3, D^2 + D) = D: D^3 = (D - 1)(D^2 + D) + D, then D | D^2 + D.
        assert_eq!(poly_gcd(&d(&[0, 0, 0, 1]), &d(&[0, 1, 1])), d(&[0, 1]));
    }

    #[test]
    fn hcf_examples() {
        let pows = [d(&[0, 0, 1]), d(&[0, 0, 0, 1]), d(&[0, 0, 0, 0, 0, 1])];
        assert_eq!(hcf_list(&pows), d(&[0, 0, 1]));
        assert_eq!(hcf_list(&[d(&[1]), d(&[3, 5, 7])]), d(&[1]));
        assert_eq!(hcf_list(&[Poly::zero(Var::D), d(&[0, 2])]), d(&[0, 1]));
        assert!(hcf_list(&[Poly::zero(Var::D), Poly::zero(Var::D)]).is_zero());
    }

    #[test]
    fn division_and_shift() {
        let a = d(&[-1, 0, 0, 1]);
        let (q, r) = a.div_rem(&d(&[-1, 1]));
        assert_eq!(q, d(&[1, 1, 1]));
        assert!(r.is_zero());
        // (x+1)^2 evaluated through shift
        assert_eq!(d(&[0, 0, 1]).shift(&rat(1)), d(&[1, 2, 1]));
        assert_eq!(d(&[1, 2]).eval(&ratio(1, 2)), rat(2));
        assert_eq!(d(&[5, 3, 1]).derivative(), d(&[3, 2]));
        assert_eq!(Poly::zero(Var::T).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(d(&[2, -3, 1]).to_string(), "D^2 - 3*D + 2");
        assert_eq!(Poly::from_coeffs(Var::T, vec![ratio(-1, 2)]).to_string(), "-1/2");
        assert_eq!(Poly::zero(Var::T).to_string(), "0");
    }
}
