//! Replays the computations behind the classification of proper p.d.
//! subspaces `V` with `H(k[X_n]) ⊆ H(V)`, step by step and exactly.

use std::fmt::Display;

use serde::Serialize;

use super::closed_forms as cf;
use super::{inclusion_report, Verdict};
use crate::automorphism::{image_pd_subspace, AutomorphismWord};
use crate::error::{Error, Result};
use crate::exact::{binomial, hcf_list, rat, sign_pow, to_fraction_string, Poly, Rational, Var};
use crate::ideal::{characteristic_f, characteristic_pair, ideal_contains};
use crate::pd::PdSubspace;
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioTrace {
    pub n: usize,
    pub steps: Vec<TraceStep>,
    pub conclusion: String,
}

impl ScenarioTrace {
    pub fn step(&self, name: &str) -> Option<&str> {
        self.steps.iter().find(|s| s.name == name).map(|s| s.value.as_str())
    }
}

struct Recorder {
    steps: Vec<TraceStep>,
}

impl Recorder {
    fn record(&mut self, name: impl Into<String>, value: impl Display) {
        self.steps.push(TraceStep { name: name.into(), value: value.to_string() });
    }

    fn expect<T: Display + PartialEq>(&mut self, name: impl Into<String>, expected: &T, computed: &T) -> Result<()> {
        let name = name.into();
        if expected != computed {
            return Err(Error::ScenarioMismatch {
                step: name,
                expected: expected.to_string(),
                computed: computed.to_string(),
            });
        }
        self.record(name, computed);
        Ok(())
    }

    fn require(&mut self, name: impl Into<String>, holds: bool) -> Result<()> {
        self.expect(name, &true, &holds)
    }
}

fn t_poly_monomial(k: usize) -> Poly {
    Poly::monomial(Var::T, rat(1), k)
}

fn d_power(k: usize) -> Poly {
    Poly::monomial(Var::D, rat(1), k)
}

/// Subsets of `{1, ..., m}` in lexicographic order of their bitmasks.
fn gap_sets(m: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m).map(|mask| (1..=m).filter(|&j| mask & (1 << (j - 1)) != 0).collect()).collect()
}

fn gap_label(gaps: &[usize]) -> String {
    let inner: Vec<String> = gaps.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn verify_main_proposition(n: usize) -> Result<ScenarioTrace> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("scenario needs n >= 2, got {n}")));
    }
    let mut rec = Recorder { steps: Vec::new() };
    let kx = PdSubspace::k_x(n);

    // (a) characteristic elements of k[X_n]; any V with H(k[X_n]) ⊆ H(V)
    // then has e*f = D^l, which forces V to be monomial.
    let pair = characteristic_pair(&kx)?;
    rec.record("a.V", &kx);
    rec.expect("a.e_star", &cf::e_n(n).normalized(), &pair.e_star.normalized())?;
    rec.expect("a.f", &cf::f_n(n).normalized(), &pair.f.normalized())?;
    rec.expect("a.ef", &d_power(n), &pair.ef)?;

    // (b) t^(n-1) ∉ V: otherwise exp(ad t^(n-1)) would carry the inclusion
    // to H(U_n) ⊆ H(V), impossible since e*f of U_n is no power of D.
    let sigma = AutomorphismWord::exp_ad_t(t_poly_monomial(n - 1));
    let image = image_pd_subspace(&kx, &sigma)?;
    rec.expect("b.U_n", &PdSubspace::u_n(n), &image.subspace)?;
    rec.record("b.certificate_rounds", image.certificate.rounds);
    let u_pair = characteristic_pair(&image.subspace)?;
    rec.expect("b.e_star", &cf::e_u_n(n).normalized(), &u_pair.e_star.normalized())?;
    rec.expect("b.f", &cf::f_u_n(n).normalized(), &u_pair.f.normalized())?;
    rec.expect("b.ef", &cf::ef_u_n(n), &u_pair.ef)?;
    rec.require("b.ef_not_in_D^l k[D]", !u_pair.ef.coeff(0).eq(&rat(0)))?;
    let report = inclusion_report(&image.subspace, &kx)?;
    rec.expect("b.inclusion(U_n, k[X_n])", &Verdict::Refuted, &report.verdict)?;

    if n == 2 {
        return Ok(ScenarioTrace { n, steps: rec.steps, conclusion: "V = k[X_2]".into() });
    }

    // (c) remaining monomial candidates, indexed by their gaps.
    let mut survivors = Vec::new();
    let mut predicted = Vec::new();
    for gaps in gap_sets(n - 2) {
        let s = gaps.len();
        let tag = format!("c{}", gap_label(&gaps));
        let v = cf::monomial_with_gaps(n, &gaps);
        rec.record(format!("{tag}.V"), &v);

        let mut gens = vec![Poly::one(Var::T) - t_poly_monomial(n - 1)];
        gens.extend(v.intersect_tail(1).basis().iter().cloned());
        let v_sigma_closed = PdSubspace::new(&gens, n);
        let v_sigma = image_pd_subspace(&v, &sigma)?.subspace;
        rec.expect(format!("{tag}.V_sigma"), &v_sigma_closed, &v_sigma)?;

        let h = cf::h_poly(&gaps);
        let lambda = cf::lambda(n, &h);
        rec.record(format!("{tag}.h"), &h);
        rec.record(format!("{tag}.lambda"), to_fraction_string(&lambda));
        let g = cf::g_sigma(n, &h, &lambda);
        rec.record(format!("{tag}.g_sigma"), &g);
        rec.require(format!("{tag}.g_sigma_in_D(R,V_sigma)"), ideal_contains(&v_sigma, &g)?)?;
        rec.expect(format!("{tag}.deg_t(g_sigma)"), &(s as i64 + 1), &g.deg_t().unwrap_or(-1))?;
        rec.expect(format!("{tag}.codim(V_sigma)"), &(s + 1), &v_sigma.codim())?;

        let coeffs: Vec<Poly> = g.t_coefficients().into_values().collect();
        let hcf = hcf_list(&coeffs);
        let r = hcf.degree().unwrap_or(0);
        rec.expect(format!("{tag}.hcf"), &d_power(r), &hcf)?;
        rec.require(format!("{tag}.r<=s"), r <= s)?;

        let pair_sigma = characteristic_pair(&v_sigma)?;
        let f_times = &pair_sigma.f * &WeylElement::d_pow(r as u32);
        rec.expect(format!("{tag}.g_sigma=f_sigma*D^r"), &g.normalized(), &f_times.normalized())?;
        let lead = Poly::monomial(Var::D, rat(1), n - 1) + Poly::constant(Var::D, lambda.clone());
        let lead = &lead * &d_power(s - r);
        rec.require(format!("{tag}.ef_sigma_in_lead_k[D]"), lead.divides(&pair_sigma.ef))?;
        rec.record(format!("{tag}.ef_sigma"), &pair_sigma.ef);

        let consecutive = gaps.iter().enumerate().all(|(j, &g)| g == j + 1);
        let binom_holds = Rational::from_integer(binomial(n as u64 - 2, s as u64)) == sign_pow((n + s) as i64);
        let branch = match (consecutive, binom_holds) {
            (true, true) if s == n - 2 => "s=n-2",
            (true, true) => "s=0,n_even",
            (true, false) => "binomial_fails",
            (false, _) => "gaps_not_initial",
        };
        rec.record(format!("{tag}.binomial"), binom_holds);
        rec.record(format!("{tag}.branch"), branch);
        if consecutive && binom_holds {
            predicted.push(gap_label(&gaps));
        }

        let survives = pair_sigma.ef.divides(&cf::ef_u_n(n));
        rec.record(format!("{tag}.ef_U_n_in_ef_sigma_k[D]"), survives);
        if survives {
            // Only s = r and lambda = (-1)^n (n-1)! leave room for the
            // divisibility; then g_sigma kills 1, t, ..., t^(s-1).
            rec.expect(format!("{tag}.r"), &s, &r)?;
            rec.expect(
                format!("{tag}.lambda_forced"),
                &to_fraction_string(&cf::u_constant(n)),
                &to_fraction_string(&lambda),
            )?;
            for i in 0..s {
                rec.require(format!("{tag}.h({})=0", i + 1), h.eval(&rat(i as i64 + 1)) == rat(0))?;
            }
            rec.require(format!("{tag}.survivor_on_binomial_branch"), consecutive && binom_holds)?;
            survivors.push(gap_label(&gaps));
        }
    }
    rec.expect("c.survivors", &predicted.join(" "), &survivors.join(" "))?;

    // (d) the s = 0 branch for even n, ruled out by exp(ad t^(n-2)).
    if n.is_multiple_of(2) && n >= 4 {
        let sigma2 = AutomorphismWord::exp_ad_t(t_poly_monomial(n - 2));
        let w = image_pd_subspace(&kx, &sigma2)?.subspace;
        rec.expect("d.W_n", &cf::w_n(n), &w)?;
        let v = cf::v_even_branch(n);
        let v_sigma = image_pd_subspace(&v, &sigma2)?.subspace;
        rec.expect("d.V_sigma", &v.scale_then_add_tail(&t_poly_monomial(n - 2)), &v_sigma)?;
        let w_pair = characteristic_pair(&w)?;
        rec.expect("d.e_star_W_n", &cf::e_w_n(n).normalized(), &w_pair.e_star.normalized())?;
        rec.expect("d.f_W_n", &cf::f_w_n(n).normalized(), &w_pair.f.normalized())?;
        rec.expect("d.ef_W_n", &cf::ef_w_n(n).monic(), &w_pair.ef)?;
        let f_sigma = characteristic_f(&v_sigma)?;
        rec.expect("d.f_sigma", &cf::f_sigma_even_branch(n).normalized(), &f_sigma.normalized())?;
        let report = inclusion_report(&w, &v_sigma)?;
        rec.record("d.ef_sigma", &report.ef_w);
        rec.expect("d.ef_divisibility", &false, &report.ef_divisibility)?;
        rec.expect("d.inclusion(W_n, V_sigma)", &Verdict::Refuted, &report.verdict)?;
    }

    let conclusion = format!("V = k[X_{n}]");
    Ok(ScenarioTrace { n, steps: rec.steps, conclusion })
}
