//! Primary decomposable subspaces `V = span(finite part) + t^N k[t]` of
//! `k[t]` whose conductor is a power of `t`.
//!
//! Every such `V` is primary decomposable: its stabilizer contains
//! `O(t^(N-1)) = k + t^N k[t]`. The stored form is canonical (minimal `N`,
//! reduced echelon finite part), so `==` decides equality of subspaces.

use std::fmt;

use num_traits::Zero;

use crate::exact::{span_reduce, LaurentPoly, Matrix, Poly, Rational, Var};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PdSubspace {
    n: usize,
    basis: Vec<Poly>,
    pivots: Vec<usize>,
}

impl PdSubspace {
    /// Canonical form of `span(generators) + t^n k[t]`. Generator terms of
    /// degree `>= n` are absorbed by the tail, and `n` shrinks while
    /// `t^(n-1)` already lies in the span.
    pub fn new(generators: &[Poly], n: usize) -> Self {
        let mut n = n;
        let mut basis = span_reduce(generators, n);
        while n > 0 && basis.iter().any(|b| b.valuation() == Some(n - 1)) {
            n -= 1;
            basis = span_reduce(&basis, n);
        }
        let pivots = basis.iter().map(|b| b.valuation().expect("echelon rows are nonzero")).collect();
        PdSubspace { n, basis, pivots }
    }

    /// The whole ring `R = k[t]`.
    pub fn full() -> Self {
        Self::new(&[], 0)
    }

    /// `k[X_n] = k + t^n k[t]`.
    pub fn k_x(n: usize) -> Self {
        Self::new(&[Poly::one(Var::T)], n)
    }

    /// `k (1 - t^(n-1)) + t^n k[t]`.
    pub fn u_n(n: usize) -> Self {
        assert!(n >= 1);
        let gen = Poly::one(Var::T) - Poly::monomial(Var::T, Rational::from_integer(1.into()), n - 1);
        Self::new(&[gen], n)
    }

    /// Monomial subspace spanned by `t^e` for `e` in `exponents` plus `t^n k[t]`.
    pub fn monomial(n: usize, exponents: &[usize]) -> Self {
        let gens: Vec<Poly> =
            exponents.iter().map(|&e| Poly::monomial(Var::T, Rational::from_integer(1.into()), e)).collect();
        Self::new(&gens, n)
    }

    /// The exponent `N` of the tail `t^N k[t]`, minimal for this subspace.
    pub fn conductor_exp(&self) -> usize {
        self.n
    }

    /// Reduced echelon basis of the finite part, in pivot order.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Exponents below `N` that are not pivots of the finite part.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `h mod t^N` along the free positions after reducing
    /// against the finite part; linear in `h`, and zero iff `h` lies in `V`.
    pub fn residual(&self, h: &Poly) -> Vec<Rational> {
        self.residual_of(|k| h.coeff(k))
    }

    pub fn residual_laurent(&self, h: &LaurentPoly) -> Vec<Rational> {
        self.residual_of(|k| h.coeff(k as i64))
    }

    fn residual_of(&self, coeff: impl Fn(usize) -> Rational) -> Vec<Rational> {
        let pivot_coeffs: Vec<Rational> = self.pivots.iter().map(|&p| coeff(p)).collect();
        self.free_positions()
            .into_iter()
            .map(|c| {
                let mut r = coeff(c);
                for (b, w) in self.basis.iter().zip(&pivot_coeffs) {
                    if !w.is_zero() {
                        r -= w * b.coeff(c);
                    }
                }
                r
            })
            .collect()
    }

    /// `unit_residuals()[e]` is the residual of `t^e` for `e < N`.
    pub fn unit_residuals(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|e| self.residual(&Poly::monomial(Var::T, Rational::from_integer(1.into()), e))).collect()
    }

    pub fn contains(&self, h: &Poly) -> bool {
        self.residual(h).iter().all(Zero::is_zero)
    }

    /// Membership for a Laurent polynomial (false when negative powers occur).
    pub fn contains_laurent(&self, h: &LaurentPoly) -> bool {
        h.is_polynomial() && self.residual_laurent(h).iter().all(Zero::is_zero)
    }

    /// `p ∈ S(V)`, i.e. `p V ⊆ V`. The tail is stable under any `p`, so only
    /// the finite basis needs checking.
    pub fn stabilizer_contains(&self, p: &Poly) -> bool {
        self.basis.iter().all(|b| self.contains(&(p * b)))
    }

    /// Basis of `S(V) ∩ {deg <= max_deg}`, found by solving `p b_i ∈ V`
    /// linearly in the coefficients of `p`.
    pub fn stabilizer_basis(&self, max_deg: usize) -> Vec<Poly> {
        let ncols = max_deg + 1;
        let mut m = Matrix::new(ncols);
        for b in &self.basis {
            let cols: Vec<Vec<Rational>> = (0..ncols).map(|k| self.residual(&b.shift_degree(k))).collect();
            for r in 0..cols.first().map_or(0, Vec::len) {
                m.push_row(cols.iter().map(|c| c[r].clone()).collect());
            }
        }
        m.nullspace().into_iter().map(|v| Poly::from_coeffs(Var::T, v)).collect()
    }

    /// Exponent `m` with `C(R, V) = t^m k[t]`.
    ///
    /// Any ideal of `k[t]` containing `t^N` is generated by a power of `t`,
    /// so `m` is the least exponent with `t^m, ..., t^(N-1)` all in `V`.
    pub fn conductor(&self) -> usize {
        let mut m = self.n;
        while m > 0 && self.contains(&Poly::monomial(Var::T, Rational::from_integer(1.into()), m - 1)) {
            m -= 1;
        }
        m
    }

    /// Not contained in a proper ideal of `k[t]`; for this shape that means
    /// `V` has an element with nonzero constant term.
    pub fn is_irreducible(&self) -> bool {
        self.n == 0 || self.basis.iter().any(|b| !b.coeff(0).is_zero())
    }

    /// `dim_k R / V`.
    pub fn codim(&self) -> usize {
        self.n - self.basis.len()
    }

    /// Whether `V` is spanned by monomials.
    pub fn is_monomial(&self) -> bool {
        self.basis.iter().all(Poly::is_monomial)
    }

    /// `V ∩ t^j k[t]`.
    pub fn intersect_tail(&self, j: usize) -> Self {
        if j >= self.n {
            return Self::new(&[], j);
        }
        // Solve for combinations of the basis whose coefficients below t^j vanish.
        let mut m = Matrix::new(self.basis.len());
        for e in 0..j {
            m.push_row(self.basis.iter().map(|b| b.coeff(e)).collect());
        }
        let gens: Vec<Poly> = m
            .nullspace()
            .into_iter()
            .map(|v| self.basis.iter().zip(&v).fold(Poly::zero(Var::T), |acc, (b, c)| &acc + &b.scale(c)))
            .collect();
        Self::new(&gens, self.n)
    }

    /// `span((1 - p) V) + t^N k[t]`.
    pub fn scale_then_add_tail(&self, p: &Poly) -> Self {
        let factor = Poly::one(Var::T) - p.clone();
        let gens: Vec<Poly> = self.basis.iter().map(|b| &factor * b).collect();
        Self::new(&gens, self.n)
    }

    /// `V + W`.
    pub fn sum(&self, other: &Self) -> Self {
        let gens: Vec<Poly> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::new(&gens, self.n.min(other.n))
    }
}

impl fmt::Display for PdSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pd({}", self.n)?;
        if !self.basis.is_empty() {
            let gens: Vec<String> = self.basis.iter().map(Poly::to_string).collect();
            write!(f, "; {}", gens.join(", "))?;
        }
        f.write_str(")")
    }
}

/// The subalgebra `O(b) = {a ∈ k[t] : a' ∈ b k[t]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraProbe {
    pub b: Poly,
}

impl SubalgebraProbe {
    pub fn new(b: Poly) -> Self {
        SubalgebraProbe { b }
    }

    pub fn contains(&self, a: &Poly) -> bool {
        o_contains(&self.b, a)
    }
}

/// `a ∈ O(b)`: `b` divides `a'`. With `b = 0` this asks for `a' = 0`.
pub fn o_contains(b: &Poly, a: &Poly) -> bool {
    b.divides(&a.derivative())
}
