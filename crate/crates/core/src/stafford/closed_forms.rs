//! Closed-form elements and subspaces used as expected values by the
//! scenario verifiers. None of these are used by the search algorithms.

use crate::exact::{factorial, rat, sign_pow, Poly, Rational, Var};
use crate::pd::PdSubspace;
use crate::weyl::WeylElement;

fn fact(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

fn c(q: Rational) -> WeylElement {
    WeylElement::constant(q)
}

fn euler_minus(k: i64) -> WeylElement {
    &WeylElement::euler() - &c(rat(k))
}

/// `(tD - 1)(tD - 2) ... (tD - (n-1))`.
pub fn f_n(n: usize) -> WeylElement {
    (1..n as i64).fold(WeylElement::one(), |acc, k| &acc * &euler_minus(k))
}

/// `t^-n (tD) = t^(1-n) D`.
pub fn e_n(n: usize) -> WeylElement {
    &WeylElement::t_pow(-(n as i64)) * &WeylElement::euler()
}

/// `(-1)^n (n-1)!`, the constant in the `U_n` formulas.
pub fn u_constant(n: usize) -> Rational {
    sign_pow(n as i64) * fact(n as u64 - 1)
}

/// `D^(n-2) t^-n (tD) + (-1)^n (n-1)! t^(1-n)`.
pub fn e_u_n(n: usize) -> WeylElement {
    let head = &(&WeylElement::d_pow(n as u32 - 2) * &WeylElement::t_pow(-(n as i64))) * &WeylElement::euler();
    &head + &WeylElement::t_pow(1 - n as i64).scale(&u_constant(n))
}

/// `(tD - 1)...(tD - (n-1)) + (-1)^n (n-1)! t^(n-1)`.
pub fn f_u_n(n: usize) -> WeylElement {
    &f_n(n) + &WeylElement::t_pow(n as i64 - 1).scale(&u_constant(n))
}

/// `(D^(n-1) + (-1)^n (n-1)!)^2`.
pub fn ef_u_n(n: usize) -> Poly {
    let base = Poly::monomial(Var::D, rat(1), n - 1) + Poly::constant(Var::D, u_constant(n));
    &base * &base
}

/// `W_n = k (1 - t^(n-2)) + t^n k[t]`.
pub fn w_n(n: usize) -> PdSubspace {
    let gen = Poly::one(Var::T) - Poly::monomial(Var::T, rat(1), n - 2);
    PdSubspace::new(&[gen], n)
}

/// `(D^(n-1)/(n-1)! + (-1)^(n-1) D) t^(1-n) + (D^(n-2)/(n-2)! + (-1)^(n-1)) t^-n`.
pub fn e_w_n(n: usize) -> WeylElement {
    let s = sign_pow(n as i64 - 1);
    let left1 = &WeylElement::d_pow(n as u32 - 1).scale(&(rat(1) / fact(n as u64 - 1))) + &WeylElement::d().scale(&s);
    let left2 = &WeylElement::d_pow(n as u32 - 2).scale(&(rat(1) / fact(n as u64 - 2))) + &c(s);
    &(&left1 * &WeylElement::t_pow(1 - n as i64)) + &(&left2 * &WeylElement::t_pow(-(n as i64)))
}

/// `(tD - 1)...(tD - (n-1)) / (n-1)! + (-1)^(n-1) t^(n-2) (tD - 1)`.
pub fn f_w_n(n: usize) -> WeylElement {
    let head = f_n(n).scale(&(rat(1) / fact(n as u64 - 1)));
    let tail = (&WeylElement::t_pow(n as i64 - 2) * &euler_minus(1)).scale(&sign_pow(n as i64 - 1));
    &head + &tail
}

/// `(D^(n-1)/(n-1)! - D)^2`.
pub fn ef_w_n(n: usize) -> Poly {
    let base = Poly::monomial(Var::D, rat(1) / fact(n as u64 - 1), n - 1) - Poly::x(Var::D);
    &base * &base
}

/// `V = k + kt + ... + kt^(n-2) + t^n k[t]`, the `s = 0` branch.
pub fn v_even_branch(n: usize) -> PdSubspace {
    PdSubspace::monomial(n, &(0..=n - 2).collect::<Vec<_>>())
}

/// `t (D^(n-1)/(n-1)! + D) - D^(n-2)/(n-2)! - 1`.
pub fn f_sigma_even_branch(n: usize) -> WeylElement {
    let inner = &WeylElement::d_pow(n as u32 - 1).scale(&(rat(1) / fact(n as u64 - 1))) + &WeylElement::d();
    let head = &WeylElement::t() * &inner;
    &(&head - &WeylElement::d_pow(n as u32 - 2).scale(&(rat(1) / fact(n as u64 - 2)))) - &WeylElement::one()
}

/// Monomial `V` with `C(R, V) = t^n k[t]`, `t^(n-1) ∉ V`, and gaps exactly
/// at `gaps ⊆ {1, ..., n-2}`.
pub fn monomial_with_gaps(n: usize, gaps: &[usize]) -> PdSubspace {
    let exps: Vec<usize> = (0..=n.saturating_sub(2)).filter(|e| !gaps.contains(e)).collect();
    PdSubspace::monomial(n, &exps)
}

/// `h(T) = (T - n_1) ... (T - n_s)`, as a polynomial in the Euler variable.
pub fn h_poly(gaps: &[usize]) -> Poly {
    let roots: Vec<Rational> = gaps.iter().map(|&g| rat(g as i64)).collect();
    Poly::from_roots(Var::E, &roots)
}

/// `lambda = (n-1)! h(0) / h(n-1)`.
pub fn lambda(n: usize, h: &Poly) -> Rational {
    fact(n as u64 - 1) * h.eval(&rat(0)) / h.eval(&rat(n as i64 - 1))
}

/// `g_sigma = h(tD) (tD - (n-1)) D^(n-2) + lambda t h(tD + 1)`.
pub fn g_sigma(n: usize, h: &Poly, lambda: &Rational) -> WeylElement {
    let h_e = WeylElement::from_poly(h);
    let head = &(&h_e * &euler_minus(n as i64 - 1)) * &WeylElement::d_pow(n as u32 - 2);
    let shifted = WeylElement::from_poly(&h.shift(&rat(1)));
    let tail = (&WeylElement::t() * &shifted).scale(lambda);
    &head + &tail
}
