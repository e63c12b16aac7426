//! The automorphisms `exp(ad p(t))`, `exp(ad q(D))` and `theta` of `A1`,
//! words in them, and the image `sigma(D(R, V)) = D(R, V_sigma)` for
//! `t`-fixing words.
//!
//! `exp(ad g)(d) = d + [d, g] + [[d, g], g] / 2! + ...` with
//! `[d, g] = d g - g d`. On generators this gives
//! `exp(ad p(t)): t -> t, D -> D + p'(t)` and
//! `exp(ad q(D)): t -> t - q'(D), D -> D`, which is how words are applied;
//! [`exp_ad_series`] evaluates the defining series directly.

use std::fmt;

use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{Poly, Rational, Var};
use crate::ideal::{self, SearchConfig};
use crate::pd::PdSubspace;
use crate::sample;
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `exp(ad p(t))`.
    ExpAdT(Poly),
    /// `exp(ad q(D))`.
    ExpAdD(Poly),
    /// `theta(D) = t`, `theta(t) = -D`.
    Theta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordItem {
    pub generator: Generator,
    pub inverted: bool,
}

/// A composable word of generators. Items act in order: the first item is
/// applied first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AutomorphismWord {
    items: Vec<WordItem>,
}

impl AutomorphismWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(generator: Generator) -> Self {
        AutomorphismWord { items: vec![WordItem { generator, inverted: false }] }
    }

    pub fn exp_ad_t(p: Poly) -> Self {
        Self::single(Generator::ExpAdT(p.with_var(Var::T)))
    }

    pub fn exp_ad_d(q: Poly) -> Self {
        Self::single(Generator::ExpAdD(q.with_var(Var::D)))
    }

    pub fn theta() -> Self {
        Self::single(Generator::Theta)
    }

    pub fn items(&self) -> &[WordItem] {
        &self.items
    }

    pub fn push(&mut self, item: WordItem) {
        self.items.push(item);
    }

    /// `self` followed by `next`, i.e. the automorphism `next ∘ self`.
    pub fn then(&self, next: &Self) -> Self {
        AutomorphismWord { items: self.items.iter().chain(&next.items).cloned().collect() }
    }

    pub fn inverse(&self) -> Self {
        AutomorphismWord {
            items: self
                .items
                .iter()
                .rev()
                .map(|it| WordItem { generator: it.generator.clone(), inverted: !it.inverted })
                .collect(),
        }
    }

    /// Words made only of `exp(ad p(t))` items fix `t`.
    pub fn is_t_fixing(&self) -> bool {
        self.items.iter().all(|it| matches!(it.generator, Generator::ExpAdT(_)))
    }

    /// For a `t`-fixing word, the single `p` with `self = exp(ad p)`
    /// (the derivations `ad p(t)` commute).
    pub fn combined_t_exponent(&self) -> Option<Poly> {
        self.items.iter().try_fold(Poly::zero(Var::T), |acc, it| match &it.generator {
            Generator::ExpAdT(p) if it.inverted => Some(&acc - p),
            Generator::ExpAdT(p) => Some(&acc + p),
            _ => None,
        })
    }

    pub fn apply(&self, d: &WeylElement) -> Result<WeylElement> {
        Ok(self.apply_all(std::slice::from_ref(d))?.remove(0))
    }

    /// Applies the word to a batch, sharing the per-generator power tables.
    pub fn apply_all(&self, ds: &[WeylElement]) -> Result<Vec<WeylElement>> {
        let mut current = ds.to_vec();
        for item in &self.items {
            let mut map = GeneratorMap::new(item);
            current = current.iter().map(|d| map.apply(d)).collect::<Result<_>>()?;
        }
        Ok(current)
    }
}

impl fmt::Display for AutomorphismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|it| match (&it.generator, it.inverted) {
                (Generator::ExpAdT(p), false) => format!("exp(ad({p}))"),
                (Generator::ExpAdT(p), true) => format!("exp(ad({}))", -p),
                (Generator::ExpAdD(q), false) => format!("expD(ad({q}))"),
                (Generator::ExpAdD(q), true) => format!("expD(ad({}))", -q),
                (Generator::Theta, false) => "theta".to_string(),
                (Generator::Theta, true) => "theta^-1".to_string(),
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// One generator as a ring map, with cached powers of the image of `t` or `D`.
struct GeneratorMap {
    kind: MapKind,
    powers: Vec<WeylElement>,
}

enum MapKind {
    /// `t -> t`, `D -> powers[1]`.
    FixT,
    /// `D -> D`, `t -> powers[1]`.
    FixD,
    /// `t -> t_image`, `D -> d_image`.
    Swap { t_image: WeylElement, d_image: WeylElement },
}

impl GeneratorMap {
    fn new(item: &WordItem) -> Self {
        let sign = if item.inverted { -Rational::one() } else { Rational::one() };
        match &item.generator {
            Generator::ExpAdT(p) => {
                let image = &WeylElement::d() + &WeylElement::from_poly(&p.derivative().with_var(Var::T)).scale(&sign);
                GeneratorMap { kind: MapKind::FixT, powers: vec![WeylElement::one(), image] }
            }
            Generator::ExpAdD(q) => {
                let image = &WeylElement::t() - &WeylElement::from_poly(&q.derivative().with_var(Var::D)).scale(&sign);
                GeneratorMap { kind: MapKind::FixD, powers: vec![WeylElement::one(), image] }
            }
            Generator::Theta => {
                let (t_image, d_image) = if item.inverted {
                    (WeylElement::d(), -WeylElement::t())
                } else {
                    (-WeylElement::d(), WeylElement::t())
                };
                GeneratorMap { kind: MapKind::Swap { t_image, d_image }, powers: Vec::new() }
            }
        }
    }

    fn power(&mut self, k: usize) -> &WeylElement {
        while self.powers.len() <= k {
            let next = &self.powers[self.powers.len() - 1] * &self.powers[1];
            self.powers.push(next);
        }
        &self.powers[k]
    }

    fn apply(&mut self, d: &WeylElement) -> Result<WeylElement> {
        let mut out = WeylElement::zero();
        match &self.kind {
            MapKind::FixT => {
                for (i, j, c) in d.terms() {
                    let img = self.power(j as usize);
                    for (a, b, e) in img.terms() {
                        out.add_term(a + i, b, c * e);
                    }
                }
            }
            MapKind::FixD => {
                if !d.is_regular() {
                    return Err(Error::ExpAdDOnLaurent(d.to_string()));
                }
                for (i, j, c) in d.terms() {
                    let img = self.power(i as usize);
                    for (a, b, e) in img.terms() {
                        out.add_term(a, b + j, c * e);
                    }
                }
            }
            MapKind::Swap { t_image, d_image } => {
                if !d.is_regular() {
                    return Err(Error::ThetaOnLaurent(d.to_string()));
                }
                let (t_image, d_image) = (t_image.clone(), d_image.clone());
                for (i, j, c) in d.terms() {
                    let term = &t_image.pow(i as u32) * &d_image.pow(j);
                    out = &out + &term.scale(c);
                }
            }
        }
        Ok(out)
    }
}

/// Evaluates `sum_k (ad g)^k (d) / k!` term by term, with `ad g (x) = [x, g]`.
///
/// `g` must be a polynomial in `t` alone (then `ad g` lowers the `D`-degree)
/// or in `D` alone with `d ∈ A1` (then it lowers the `t`-degree), so the
/// series is finite.
pub fn exp_ad_series(d: &WeylElement, g: &WeylElement) -> Result<WeylElement> {
    let bound = if g.terms().all(|(_, j, _)| j == 0) {
        d.deg_d().map_or(0, |x| x as usize + 1)
    } else if g.as_d_poly().is_some() {
        if !d.is_regular() {
            return Err(Error::ExpAdDOnLaurent(d.to_string()));
        }
        d.deg_t().map_or(0, |x| x as usize + 1)
    } else {
        return Err(Error::InvalidArgument(format!("ad({g}) is not locally nilpotent here")));
    };
    let mut out = d.clone();
    let mut term = d.clone();
    for k in 1..=bound {
        term = term.commutator(g).scale(&(Rational::one() / Rational::from_integer(k.into())));
        if term.is_zero() {
            return Ok(out);
        }
        out = &out + &term;
    }
    debug_assert!(term.commutator(g).is_zero());
    Ok(out)
}

/// `theta(q(D)) = q(t)`.
pub fn theta_transport(q: &Poly) -> Poly {
    q.with_var(Var::T)
}

/// Outcome of the randomized automorphism checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCheck {
    pub samples: usize,
    pub multiplicative: bool,
    pub additive: bool,
    pub invertible: bool,
}

impl AutomorphismCheck {
    pub fn passed(&self) -> bool {
        self.multiplicative && self.additive && self.invertible
    }
}

/// Checks `σ(ab) = σ(a)σ(b)`, `σ(a+b) = σ(a)+σ(b)` and `σ(σ^-1(a)) = a`
/// on random pairs from `A1`.
pub fn is_automorphism_check<R: Rng>(
    word: &AutomorphismWord,
    rng: &mut R,
    samples: usize,
) -> Result<AutomorphismCheck> {
    let inv = word.inverse();
    let mut report = AutomorphismCheck { samples, multiplicative: true, additive: true, invertible: true };
    for _ in 0..samples {
        let a = sample::regular_element(rng, 3, 3);
        let b = sample::regular_element(rng, 3, 3);
        let imgs = word.apply_all(&[a.clone(), b.clone(), &a * &b, &a + &b])?;
        report.multiplicative &= imgs[2] == &imgs[0] * &imgs[1];
        report.additive &= imgs[3] == &imgs[0] + &imgs[1];
        report.invertible &= word.apply(&inv.apply(&a)?)? == a;
    }
    Ok(report)
}

/// Certification record for an image computation. Status is always
/// "certified up to the recorded bounds": the checks below ran on the
/// bounded slices of both ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCertificate {
    /// `t`-degree bound of the slices.
    pub t_bound: usize,
    /// `D`-degree bound of the slices.
    pub d_bound: u32,
    pub rounds: usize,
    /// Number of `σ(d) ∈ D(R, V')` checks, `d` running over a basis of the slice of `D(R, V)`.
    pub forward_checked: usize,
    /// Number of `σ^-1(d') ∈ D(R, V)` checks over a basis of the slice of `D(R, V')`.
    pub backward_checked: usize,
    pub source_codim: usize,
    pub image_codim: usize,
    /// `e* f` of the image when it is irreducible, after checking
    /// `deg_t(f) = codim`.
    pub image_ef: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageResult {
    pub subspace: PdSubspace,
    pub certificate: ImageCertificate,
}

/// Computes `V'` with `σ(D(R, V)) = D(R, V')` for a `t`-fixing word `σ`.
///
/// Since `σ` fixes `t`, `σ(I) ∩ k[t] = C(R, V) ≠ 0`, so `σ(I) = D(R, σ(I)⋆1)`
/// and `V' = σ(I)⋆1 = span{σ(d)(1)}`. The span is accumulated over growing
/// bounded slices of `D(R, V)` until it is unchanged for two consecutive
/// increments, then certified in both directions.
pub fn image_pd_subspace(v: &PdSubspace, word: &AutomorphismWord) -> Result<ImageResult> {
    image_pd_subspace_with(v, word, &SearchConfig::default())
}

pub fn image_pd_subspace_with(v: &PdSubspace, word: &AutomorphismWord, cfg: &SearchConfig) -> Result<ImageResult> {
    let p = word.combined_t_exponent().ok_or(Error::NotTFixing)?;
    let n = v.conductor_exp();
    let start_t = n;
    let start_d = (v.codim() + p.degree().unwrap_or(0)) as u32;
    let one = Poly::one(Var::T);

    let mut history: Vec<PdSubspace> = Vec::new();
    for round in 0..cfg.max_rounds {
        let (a, b) = (start_t + round, start_d + round as u32);
        let slice = ideal::ideal_slice(v, a, b);
        let images = word.apply_all(&slice)?;
        let at_one: Vec<Poly> =
            images.iter().map(|d| d.act_poly(&one).to_poly().expect("t-fixing words preserve A1")).collect();
        history.push(PdSubspace::new(&at_one, n));
        let len = history.len();
        if len >= 3 && history[len - 1] == history[len - 2] && history[len - 2] == history[len - 3] {
            let candidate = history.pop().unwrap();
            let certificate = certify(v, &candidate, word, &images, a, b, round + 1)?;
            return Ok(ImageResult { subspace: candidate, certificate });
        }
    }
    Err(Error::Unstable { rounds: cfg.max_rounds })
}

fn certify(
    v: &PdSubspace,
    candidate: &PdSubspace,
    word: &AutomorphismWord,
    images: &[WeylElement],
    a: usize,
    b: u32,
    rounds: usize,
) -> Result<ImageCertificate> {
    for img in images {
        if !ideal::ideal_contains(candidate, img)? {
            return Err(Error::CertFailed(format!("forward image {img} is not in D(R, {candidate})")));
        }
    }
    let back_slice = ideal::ideal_slice(candidate, a, b);
    let back = word.inverse().apply_all(&back_slice)?;
    for d in &back {
        if !ideal::ideal_contains(v, d)? {
            return Err(Error::CertFailed(format!("backward image {d} is not in D(R, {v})")));
        }
    }
    let image_ef = if candidate.is_irreducible() {
        let pair = ideal::characteristic_pair(candidate)?;
        if pair.f.deg_t() != Some(candidate.codim() as i64) {
            return Err(Error::CertFailed(format!("deg_t(f) differs from codim for {candidate}")));
        }
        Some(pair.ef)
    } else {
        None
    };
    Ok(ImageCertificate {
        t_bound: a,
        d_bound: b,
        rounds,
        forward_checked: images.len(),
        backward_checked: back.len(),
        source_codim: v.codim(),
        image_codim: candidate.codim(),
        image_ef,
    })
}

/// Applies `exp(ad p)` to each element via the series definition; used to
/// cross-check [`AutomorphismWord::apply`].
pub fn exp_ad_t_series(d: &WeylElement, p: &Poly) -> Result<WeylElement> {
    exp_ad_series(d, &WeylElement::from_poly(&p.with_var(Var::T)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t_poly(cs: &[i64]) -> Poly {
        Poly::from_i64s(Var::T, cs)
    }

    #[test]
    fn exp_ad_fixes_t() {
        let w = AutomorphismWord::exp_ad_t(t_poly(&[1, 2, 3]));
        assert_eq!(w.apply(&WeylElement::t()).unwrap(), WeylElement::t());
    }

    #[test]
    fn exp_ad_t_moves_d() {
        let w = AutomorphismWord::exp_ad_t(t_poly(&[0, 1]));
        let expect = &WeylElement::d() + &WeylElement::one();
        assert_eq!(w.apply(&WeylElement::d()).unwrap(), expect);
        assert_eq!(exp_ad_t_series(&WeylElement::d(), &t_poly(&[0, 1])).unwrap(), expect);
    }

    #[test]
    fn theta_on_euler() {
        // theta(t) theta(D) = (-D) t = -tD - 1
        let got = AutomorphismWord::theta().apply(&WeylElement::euler()).unwrap();
        assert_eq!(got, &(-WeylElement::euler()) - &WeylElement::one());
    }

    #[test]
    fn theta_fourth_power_is_identity() {
        let th = AutomorphismWord::theta();
        let th4 = th.then(&th).then(&th).then(&th);
        let th2 = th.then(&th);
        for g in [WeylElement::t(), WeylElement::d()] {
            assert_eq!(th4.apply(&g).unwrap(), g);
            assert_eq!(th2.apply(&g).unwrap(), -&g);
        }
    }

    #[test]
    fn theta_rejects_laurent() {
        let err = AutomorphismWord::theta().apply(&WeylElement::t_pow(-1)).unwrap_err();
        assert!(matches!(err, Error::ThetaOnLaurent(_)));
        let err = AutomorphismWord::exp_ad_d(Poly::x(Var::D)).apply(&WeylElement::t_pow(-1)).unwrap_err();
        assert!(matches!(err, Error::ExpAdDOnLaurent(_)));
    }

    #[test]
    fn exp_ad_d_moves_t() {
        // exp(ad D^2)(t) = t + [t, D^2] = t - 2D
        let w = AutomorphismWord::exp_ad_d(Poly::from_i64s(Var::D, &[0, 0, 1]));
        let expect = &WeylElement::t() - &WeylElement::d().scale(&rat(2));
        assert_eq!(w.apply(&WeylElement::t()).unwrap(), expect);
        let series = exp_ad_series(&WeylElement::t(), &WeylElement::d_pow(2)).unwrap();
        assert_eq!(series, expect);
    }

    #[test]
    fn harness_on_identity_and_exp() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(is_automorphism_check(&AutomorphismWord::identity(), &mut rng, 10).unwrap().passed());
        let w = AutomorphismWord::exp_ad_t(t_poly(&[0, 0, 1]));
        assert!(is_automorphism_check(&w, &mut rng, 100).unwrap().passed());
        let mixed = AutomorphismWord::theta().then(&AutomorphismWord::exp_ad_d(Poly::from_i64s(Var::D, &[0, 1, 1])));
        assert!(is_automorphism_check(&mixed, &mut rng, 30).unwrap().passed());
    }

    #[test]
    fn image_of_kx_under_exp_ad_t_n_minus_1_is_un() {
        for n in 2..6 {
            let w = AutomorphismWord::exp_ad_t(Poly::monomial(Var::T, rat(1), n - 1));
            let res = image_pd_subspace(&PdSubspace::k_x(n), &w).unwrap();
            assert_eq!(res.subspace, PdSubspace::u_n(n));
        }
    }

    #[test]
    fn identity_image() {
        let v = PdSubspace::monomial(5, &[0, 2]);
        let res = image_pd_subspace(&v, &AutomorphismWord::identity()).unwrap();
        assert_eq!(res.subspace, v);
    }

    #[test]
    fn image_rejects_theta() {
        let err = image_pd_subspace(&PdSubspace::k_x(2), &AutomorphismWord::theta()).unwrap_err();
        assert_eq!(err, Error::NotTFixing);
    }

    #[test]
    fn theta_transport_substitutes() {
        let q = Poly::from_i64s(Var::D, &[0, 3, 1]);
        assert_eq!(theta_transport(&q), t_poly(&[0, 3, 1]));
        assert_eq!(theta_transport(&Poly::one(Var::D)), Poly::one(Var::T));
    }

    #[test]
    fn word_rendering() {
        let w = AutomorphismWord::exp_ad_t(t_poly(&[0, 0, 1])).then(&AutomorphismWord::theta().inverse());
        assert_eq!(w.to_string(), "exp(ad(t^2)); theta^-1");
    }
}
