//! Exact scalar, polynomial and linear-algebra substrate.

mod laurent;
mod linalg;
mod modular;
mod poly;
mod rational;

pub use laurent::LaurentPoly;
pub use linalg::{solve_nullspace, span_reduce, Matrix};
pub use poly::{hcf_list, poly_gcd, Poly, Var};
pub use rational::{binomial, factorial, falling, rat, ratio, sign_pow, to_fraction_string, Rational};
