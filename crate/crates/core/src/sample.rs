//! Random generators for property checks and randomized verification.

use rand::Rng;

use crate::exact::{ratio, LaurentPoly, Poly, Rational, Var};
use crate::pd::PdSubspace;
use crate::weyl::WeylElement;

/// Small rationals, mostly integers, occasionally zero.
pub fn scalar<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.random_range(-5..=5);
    let den = if rng.random_bool(0.25) { rng.random_range(2..=4) } else { 1 };
    ratio(num, den)
}

fn nonzero_scalar<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = scalar(rng);
        if c != Rational::from_integer(0.into()) {
            return c;
        }
    }
}

/// Element of `A1` with `t`-degree `<= max_t` and `D`-degree `<= max_d`.
pub fn regular_element<R: Rng>(rng: &mut R, max_t: i64, max_d: u32) -> WeylElement {
    laurent_element(rng, 0, max_t, max_d)
}

/// Element of `k[t, t^-1][D]` with `t`-exponents in `lo..=hi`.
pub fn laurent_element<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_d: u32) -> WeylElement {
    let nterms = rng.random_range(1..=5);
    let mut out = WeylElement::zero();
    for _ in 0..nterms {
        let i = rng.random_range(lo..=hi);
        let j = rng.random_range(0..=max_d);
        out = &out + &WeylElement::monomial(nonzero_scalar(rng), i, j);
    }
    out
}

/// Polynomial of degree `<= max_deg` in `var`.
pub fn poly<R: Rng>(rng: &mut R, var: Var, max_deg: usize) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    let coeffs =
        (0..=deg).map(|_| if rng.random_bool(0.6) { scalar(rng) } else { Rational::from_integer(0.into()) }).collect();
    Poly::from_coeffs(var, coeffs)
}

pub fn laurent_poly<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for k in lo..=hi {
        if rng.random_bool(0.5) {
            out = &out + &LaurentPoly::monomial(scalar(rng), k);
        }
    }
    out
}

/// Random `span(g_1, ..., g_r) + t^N k[t]` with `N <= max_n`; about half are
/// forced irreducible by including a generator with constant term 1.
pub fn pd_subspace<R: Rng>(rng: &mut R, max_n: usize) -> PdSubspace {
    let n = rng.random_range(0..=max_n);
    if n == 0 {
        return PdSubspace::full();
    }
    let count = rng.random_range(0..n);
    let mut gens: Vec<Poly> = (0..count).map(|_| poly(rng, Var::T, n - 1)).collect();
    if rng.random_bool(0.5) {
        let mut g = poly(rng, Var::T, n - 1);
        g = &g - &Poly::constant(Var::T, g.coeff(0)) + Poly::one(Var::T);
        gens.push(g);
    }
    PdSubspace::new(&gens, n)
}

/// Random irreducible subspace with `N <= max_n`.
pub fn irreducible_pd_subspace<R: Rng>(rng: &mut R, max_n: usize) -> PdSubspace {
    loop {
        let v = pd_subspace(rng, max_n);
        if v.is_irreducible() {
            return v;
        }
    }
}
