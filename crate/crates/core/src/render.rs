//! Shared text rendering for sums of monomials.
//!
//! Every algebraic type prints as `c1*m1 + c2*m2 - ...` where a monomial is
//! a `*`-joined list of factors such as `t^-2`, `D`, `E^3`. Unit
//! coefficients are elided and the output parses back with the CLI grammar.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

/// One power factor, e.g. `("t", -2)` renders as `t^-2`. Zero exponents vanish.
pub(crate) fn power(var: &str, exp: i64) -> Option<String> {
    match exp {
        0 => None,
        1 => Some(var.to_string()),
        e => Some(format!("{var}^{e}")),
    }
}

pub(crate) fn monomial<I: IntoIterator<Item = Option<String>>>(factors: I) -> String {
    factors.into_iter().flatten().collect::<Vec<_>>().join("*")
}

/// Writes `terms` (coefficient, monomial) in the given order. An empty
/// monomial stands for the constant term.
pub(crate) fn write_sum<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (Rational, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{a}*{mono}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
