use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::WeylElement;
use crate::exact::{Poly, Rational, Var};
use crate::render;

/// The Euler ("standard") form `sum_i t^i a_i(E)`, with `E = tD`.
///
/// Conversion uses `t^j D^j = E (E - 1) ... (E - j + 1)`, so
/// `t^i D^j = t^(i-j) ff(E, j)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EulerForm {
    components: BTreeMap<i64, Poly>,
}

/// `E (E - 1) ... (E - j + 1)`.
fn falling_poly(j: u32) -> Poly {
    let roots: Vec<Rational> = (0..j as i64).map(|r| Rational::from_integer(r.into())).collect();
    Poly::from_roots(Var::E, &roots)
}

impl EulerForm {
    pub fn new(components: BTreeMap<i64, Poly>) -> Self {
        let components =
            components.into_iter().filter(|(_, p)| !p.is_zero()).map(|(i, p)| (i, p.with_var(Var::E))).collect();
        EulerForm { components }
    }

    pub fn components(&self) -> &BTreeMap<i64, Poly> {
        &self.components
    }

    pub fn component(&self, i: i64) -> Option<&Poly> {
        self.components.get(&i)
    }
}

pub fn to_euler(a: &WeylElement) -> EulerForm {
    let mut components: BTreeMap<i64, Poly> = BTreeMap::new();
    for (i, j, c) in a.terms() {
        let part = falling_poly(j).scale(c);
        let slot = components.entry(i - j as i64).or_insert_with(|| Poly::zero(Var::E));
        *slot = &*slot + &part;
    }
    EulerForm::new(components)
}

pub fn from_euler(e: &EulerForm) -> WeylElement {
    let mut out = WeylElement::zero();
    for (&i, a) in &e.components {
        // Newton expansion of a(E) at the nodes 0, 1, 2, ... gives the
        // coefficients in the falling-factorial basis.
        let mut rest = a.clone();
        let mut j = 0u32;
        while !rest.is_zero() {
            let node = Rational::from_integer((j as i64).into());
            let b = rest.eval(&node);
            out.add_term(i + j as i64, j, b.clone());
            let lin = Poly::from_coeffs(Var::E, vec![-node, Rational::one()]);
            rest = (&rest - &Poly::constant(Var::E, b)).div_exact(&lin).expect("node is a root after subtraction");
            j += 1;
        }
    }
    out
}

/// Renders `t^i*E^k` terms, highest `t` power first; the output parses back
/// to the same element because `t^i*E^k` is literally `t^i (tD)^k`.
impl fmt::Display for EulerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.components.iter().rev().flat_map(|(&i, a)| {
            a.terms()
                .rev()
                .map(move |(k, c)| (c.clone(), render::monomial([render::power("t", i), render::power("E", k as i64)])))
                .collect::<Vec<_>>()
        });
        render::write_sum(f, terms.filter(|(c, _)| !c.is_zero()))
    }
}
