//! Stabilizer criteria for `exp(ad p)` and its dual, inclusion reports
//! between ideals of the form `D(R, V)`, and the scenario verifier.

pub mod closed_forms;
mod scenario;

use std::fmt;

use serde::Serialize;

pub use scenario::{verify_main_proposition, ScenarioTrace, TraceStep};

use crate::automorphism::{image_pd_subspace, AutomorphismWord, Generator, WordItem};
use crate::error::{Error, Result};
use crate::exact::{rat, Poly, Rational, Var};
use crate::ideal::{characteristic_pair_with, SearchConfig};
use crate::pd::PdSubspace;
use crate::weyl::WeylElement;

/// Whether `exp(ad p(t))` fixes `D(R, V)`, via the criterion `p V ⊆ V`.
pub fn stabilizes_exp(v: &PdSubspace, p: &Poly) -> bool {
    v.stabilizer_contains(&p.with_var(Var::T))
}

/// The same question answered by computing the image subspace.
pub fn stabilizes_exp_by_image(v: &PdSubspace, p: &Poly) -> Result<bool> {
    let image = image_pd_subspace(v, &AutomorphismWord::exp_ad_t(p.with_var(Var::T)))?;
    Ok(image.subspace == *v)
}

/// Whether `exp(ad q(D))` fixes the ideal `I` with `theta(I) = D(R, W)`.
///
/// Conjugating by `theta` turns `exp(ad q(D))` into `exp(ad q(t))`, so the
/// answer is `q(t) W ⊆ W`.
pub fn stabilizes_exp_dual(w: &PdSubspace, q: &Poly) -> bool {
    w.stabilizer_contains(&q.with_var(Var::T))
}

/// The dual criterion without the transport shortcut: build the word
/// `theta^-1; expD(ad(q)); theta`, read off the induced map on `t` and `D`,
/// check it is `exp(ad p(t))` for some `p`, then compute the image of `W`.
pub fn stabilizes_exp_dual_direct(w: &PdSubspace, q: &Poly) -> Result<bool> {
    let conj = conjugated_dual_word(q);
    let t_image = conj.apply(&WeylElement::t())?;
    if t_image != WeylElement::t() {
        return Err(Error::CertFailed(format!("conjugate moves t to {t_image}")));
    }
    let shift = &conj.apply(&WeylElement::d())? - &WeylElement::d();
    let dp = shift
        .as_t_poly()
        .ok_or_else(|| Error::CertFailed(format!("conjugate shifts D by {shift}, not a polynomial in t")))?;
    let p = antiderivative(&dp);
    let image = image_pd_subspace(w, &AutomorphismWord::exp_ad_t(p))?;
    Ok(image.subspace == *w)
}

/// `theta^-1; expD(ad(q)); theta`, in the order the items act.
pub fn conjugated_dual_word(q: &Poly) -> AutomorphismWord {
    let mut word = AutomorphismWord::identity();
    word.push(WordItem { generator: Generator::Theta, inverted: true });
    word.push(WordItem { generator: Generator::ExpAdD(q.with_var(Var::D)), inverted: false });
    word.push(WordItem { generator: Generator::Theta, inverted: false });
    word
}

fn antiderivative(p: &Poly) -> Poly {
    let mut dense = vec![rat(0); p.degree().map_or(1, |d| d + 2)];
    for (k, c) in p.terms() {
        dense[k + 1] = c / Rational::from_integer((k as i64 + 1).into());
    }
    Poly::from_coeffs(Var::T, dense)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// No necessary condition for `H(V) ⊆ H(W)` failed.
    Possible,
    /// At least one necessary condition failed.
    Refuted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Possible => "POSSIBLE",
            Verdict::Refuted => "REFUTED",
        })
    }
}

/// Necessary conditions for the stabilizer group of `D(R, V)` to sit
/// inside that of `D(R, W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    pub v: PdSubspace,
    pub w: PdSubspace,
    /// Spanning set of `S(V)` up to the probe degree, each with whether it
    /// also lies in `S(W)`.
    pub s_samples: Vec<(Poly, bool)>,
    /// First `p` with `p V ⊆ V` but `p W ⊄ W`.
    pub s_counterexample: Option<Poly>,
    pub s_inclusion: bool,
    pub conductor_v: usize,
    pub conductor_w: usize,
    /// `C(R, V) ⊆ C(R, W)`.
    pub conductor_inclusion: bool,
    pub ef_v: Poly,
    pub ef_w: Poly,
    /// `ef_V ∈ ef_W k[D]`.
    pub ef_divisibility: bool,
    pub verdict: Verdict,
}

pub fn inclusion_report(v: &PdSubspace, w: &PdSubspace) -> Result<InclusionReport> {
    inclusion_report_with(v, w, &SearchConfig::default())
}

pub fn inclusion_report_with(v: &PdSubspace, w: &PdSubspace, cfg: &SearchConfig) -> Result<InclusionReport> {
    let probe = 2 * v.conductor_exp().max(w.conductor_exp()).max(1);
    let s_samples: Vec<(Poly, bool)> = v
        .stabilizer_basis(probe)
        .into_iter()
        .map(|p| {
            let ok = w.stabilizer_contains(&p);
            (p, ok)
        })
        .collect();
    let s_counterexample = s_samples.iter().find(|(_, ok)| !ok).map(|(p, _)| p.clone());
    let (conductor_v, conductor_w) = (v.conductor(), w.conductor());
    let ef_v = characteristic_pair_with(v, cfg)?.ef;
    let ef_w = characteristic_pair_with(w, cfg)?.ef;
    let s_inclusion = s_counterexample.is_none();
    let conductor_inclusion = conductor_v >= conductor_w;
    let ef_divisibility = ef_w.divides(&ef_v);
    let verdict =
        if s_inclusion && conductor_inclusion && ef_divisibility { Verdict::Possible } else { Verdict::Refuted };
    Ok(InclusionReport {
        v: v.clone(),
        w: w.clone(),
        s_samples,
        s_counterexample,
        s_inclusion,
        conductor_v,
        conductor_w,
        conductor_inclusion,
        ef_v,
        ef_w,
        ef_divisibility,
        verdict,
    })
}

/// Image of `k[X_n] = k + t^n k[t]` under `gamma`, and whether `gamma`
/// normalizes `D(R, k[X_n])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerDemo {
    pub n: usize,
    pub image: PdSubspace,
    pub normalizes: bool,
}

pub fn normalizer_demo(n: usize, gamma: &AutomorphismWord) -> Result<NormalizerDemo> {
    let source = PdSubspace::k_x(n);
    let image = image_pd_subspace(&source, gamma)?.subspace;
    let normalizes = image == source;
    Ok(NormalizerDemo { n, image, normalizes })
}

#[cfg(test)]
mod tests {
    use super::closed_forms::*;
    use super::*;

    fn tpoly(c: &[i64]) -> Poly {
        Poly::from_i64s(Var::T, c)
    }

    #[test]
    fn exp_criterion_on_k_x() {
        let v = PdSubspace::k_x(3);
        assert!(stabilizes_exp(&v, &tpoly(&[0, 0, 0, 1])));
        assert!(!stabilizes_exp(&v, &tpoly(&[0, 1])));
        assert!(!stabilizes_exp(&v, &tpoly(&[0, 0, 1])));
        assert!(stabilizes_exp(&v, &tpoly(&[5])));
    }

    #[test]
    fn criterion_agrees_with_image() {
        let spaces = [PdSubspace::k_x(3), PdSubspace::u_n(3), w_n(4), PdSubspace::full()];
        let ps = [tpoly(&[0, 1]), tpoly(&[0, 0, 1]), tpoly(&[0, 0, 0, 1]), tpoly(&[1, 0, 0, 0, 2])];
        for v in &spaces {
            for p in &ps {
                assert_eq!(stabilizes_exp(v, p), stabilizes_exp_by_image(v, p).unwrap(), "{v} {p}");
            }
        }
    }

    #[test]
    fn dual_direct_matches_transport() {
        let w = PdSubspace::k_x(3);
        for q in [Poly::from_i64s(Var::D, &[0, 0, 0, 1]), Poly::from_i64s(Var::D, &[0, 1])] {
            assert_eq!(stabilizes_exp_dual(&w, &q), stabilizes_exp_dual_direct(&w, &q).unwrap());
        }
        assert!(stabilizes_exp_dual(&w, &Poly::from_i64s(Var::D, &[0, 0, 0, 1])));
        assert!(!stabilizes_exp_dual(&w, &Poly::from_i64s(Var::D, &[0, 1])));
    }

    #[test]
    fn conjugate_is_exp_ad_in_t() {
        let q = Poly::from_i64s(Var::D, &[0, 2, 1]);
        let conj = conjugated_dual_word(&q);
        assert_eq!(conj.apply(&WeylElement::t()).unwrap(), WeylElement::t());
        let expected = &WeylElement::d() + &WeylElement::from_poly(&q.derivative().with_var(Var::T));
        assert_eq!(conj.apply(&WeylElement::d()).unwrap(), expected);
    }

    #[test]
    fn antiderivative_inverts_derivative() {
        let p = tpoly(&[0, 3, 0, -2]);
        assert_eq!(antiderivative(&p.derivative()), p);
        assert!(antiderivative(&Poly::zero(Var::T)).is_zero());
    }

    #[test]
    fn u_n_not_inside_k_x() {
        let r = inclusion_report(&PdSubspace::u_n(4), &PdSubspace::k_x(4)).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        assert!(!r.ef_divisibility);
    }

    #[test]
    fn self_inclusion_is_possible() {
        for v in [PdSubspace::k_x(3), PdSubspace::u_n(3), w_n(4)] {
            assert_eq!(inclusion_report(&v, &v).unwrap().verdict, Verdict::Possible);
        }
    }

    #[test]
    fn normalizer_examples() {
        let d = normalizer_demo(3, &AutomorphismWord::exp_ad_t(tpoly(&[0, 0, 0, 1]))).unwrap();
        assert!(d.normalizes);
        let d = normalizer_demo(3, &AutomorphismWord::exp_ad_t(tpoly(&[0, 0, 1]))).unwrap();
        assert!(!d.normalizes);
        assert_eq!(d.image, PdSubspace::u_n(3));
    }
}
