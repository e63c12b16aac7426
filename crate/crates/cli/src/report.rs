//! `ReportDocument`: the JSON and text output of every command.
//!
//! Scalars are always `"num/den"` strings. Field order is fixed by the
//! struct layout and results keep insertion order, so the serialization is
//! byte-stable for fixed inputs.

use serde::Serialize;

use weylkit::exact::to_fraction_string;
use weylkit::weyl::to_euler;
use weylkit::{LaurentPoly, PdSubspace, Poly, Rational, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Field {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub t: i64,
    pub d: u32,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerComponent {
    pub t: i64,
    /// Coefficients of the polynomial in `E`, constant term first.
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Value {
    Text { text: String },
    Bool { value: bool },
    Scalar { value: String },
    Element { text: String, terms: Vec<Term> },
    Euler { text: String, components: Vec<EulerComponent> },
    Poly { text: String, var: String, coeffs: Vec<String> },
    Laurent { text: String, terms: Vec<Term> },
    Subspace { text: String, n: usize, basis: Vec<Vec<String>> },
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text { text: s.into() }
    }

    pub fn bool(b: bool) -> Self {
        Value::Bool { value: b }
    }

    pub fn scalar(q: &Rational) -> Self {
        Value::Scalar { value: to_fraction_string(q) }
    }

    pub fn element(e: &WeylElement) -> Self {
        let terms = e.terms().map(|(t, d, c)| Term { t, d, c: to_fraction_string(c) }).collect();
        Value::Element { text: e.to_string(), terms }
    }

    pub fn euler(e: &WeylElement) -> Self {
        let form = to_euler(e);
        let components = form.components().iter().map(|(&t, a)| EulerComponent { t, coeffs: fractions(a) }).collect();
        Value::Euler { text: form.to_string(), components }
    }

    pub fn poly(p: &Poly) -> Self {
        Value::Poly { text: p.to_string(), var: p.var().symbol().to_string(), coeffs: fractions(p) }
    }

    pub fn laurent(h: &LaurentPoly) -> Self {
        let terms = h.terms().map(|(t, c)| Term { t, d: 0, c: to_fraction_string(c) }).collect();
        Value::Laurent { text: h.to_string(), terms }
    }

    pub fn subspace(v: &PdSubspace) -> Self {
        Value::Subspace { text: v.to_string(), n: v.conductor_exp(), basis: v.basis().iter().map(fractions).collect() }
    }

    /// The one-line rendering used in text output.
    pub fn display(&self) -> String {
        match self {
            Value::Text { text }
            | Value::Element { text, .. }
            | Value::Euler { text, .. }
            | Value::Poly { text, .. }
            | Value::Laurent { text, .. }
            | Value::Subspace { text, .. } => text.clone(),
            Value::Bool { value } => value.to_string(),
            Value::Scalar { value } => value.clone(),
        }
    }
}

fn fractions(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(to_fraction_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(flatten)]
    pub value: Value,
}

/// Outcome of a command. `status` decides the exit code: `true`, `ok`,
/// `pass` and `POSSIBLE` exit 0; `false`, `fail` and `REFUTED` exit 1;
/// `error` exits 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<Field>,
    pub results: Vec<NamedValue>,
    pub status: String,
    pub bounds: Vec<Field>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            command: command.to_string(),
            inputs: Vec::new(),
            results: Vec::new(),
            status: "ok".to_string(),
            bounds: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.inputs.push(Field { name: name.to_string(), value: value.to_string() });
        self
    }

    pub fn result(&mut self, name: impl Into<String>, value: Value) -> &mut Self {
        self.results.push(NamedValue { name: name.into(), value });
        self
    }

    pub fn bound(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.bounds.push(Field { name: name.to_string(), value: value.to_string() });
        self
    }

    pub fn set_status(&mut self, status: impl Into<String>) -> &mut Self {
        self.status = status.into();
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "true" | "ok" | "pass" | "POSSIBLE" => 0,
            "false" | "fail" | "REFUTED" => 1,
            _ => 2,
        }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `name = value` lines, then the status unless it is `ok`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("{} = {}\n", r.name, r.value.display()));
        }
        if self.status != "ok" {
            out.push_str(&self.status);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylkit::exact::ratio;

    #[test]
    fn scalars_are_fraction_strings() {
        let json = serde_json::to_string(&Value::scalar(&ratio(-4, 2))).unwrap();
        assert_eq!(json, r#"{"kind":"scalar","value":"-2/1"}"#);
    }

    #[test]
    fn element_terms() {
        let e = WeylElement::monomial(ratio(3, 2), -2, 1);
        let Value::Element { text, terms } = Value::element(&e) else { panic!() };
        assert_eq!(text, "3/2*t^-2*D");
        assert_eq!(terms, vec![Term { t: -2, d: 1, c: "3/2".into() }]);
    }

    #[test]
    fn text_output_and_exit_codes() {
        let mut doc = ReportDocument::new("member");
        doc.result("x", Value::bool(true)).set_status("false");
        assert_eq!(doc.to_text(), "x = true\nfalse\n");
        assert_eq!(doc.exit_code(), 1);
        assert_eq!(doc.set_status("REFUTED").exit_code(), 1);
        assert_eq!(doc.set_status("pass").exit_code(), 0);
        assert_eq!(doc.set_status("error").exit_code(), 2);
    }
}
