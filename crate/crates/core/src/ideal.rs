//! The right ideal `D(R, V) = {d : d(k[t]) ⊆ V}` of `A1`, its dual side
//! `D(V, R)`, and the characteristic elements `(e*, f)`.
//!
//! Dual elements are searched in `k[t, t^-1][D]` only. This loses nothing:
//! `t^N ∈ D(R, V)`, so any `e` with `e D(R, V) ⊆ A1` satisfies
//! `e t^N ∈ A1`, i.e. `e ∈ A1 t^-N`.
//!
//! Membership is decided with finitely many probes. For `d ∈ A1`, `d(t^k)`
//! has `t`-adic valuation at least `k - deg_D(d)`, so once
//! `k >= N + deg_D(d)` the image already lies in the tail `t^N k[t] ⊆ V`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{falling, hcf_list, LaurentPoly, Matrix, Poly, Rational, Var};
use crate::pd::PdSubspace;
use crate::weyl::WeylElement;

/// Bounds for the ansatz searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `D`-degree tried before giving up. `None` means the default
    /// `4 codim(V) + 8`.
    pub degree_cap: Option<u32>,
    /// Rounds of slice growth allowed in image computations.
    pub max_rounds: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { degree_cap: None, max_rounds: 12 }
    }
}

impl SearchConfig {
    pub fn cap_for(&self, v: &PdSubspace) -> u32 {
        self.degree_cap.unwrap_or(4 * v.codim() as u32 + 8)
    }
}

/// `d ∈ D(R, V)`. Errors with `NonRegular` if `d ∉ A1`.
pub fn ideal_contains(v: &PdSubspace, d: &WeylElement) -> Result<bool> {
    d.require_regular()?;
    let Some(dd) = d.deg_d() else {
        return Ok(true);
    };
    let n = v.conductor_exp();
    Ok((0..=n as i64 + dd as i64).all(|k| v.contains(&low_part_of_image(d, k, n))))
}

/// The part of `d(t^k)` below `t^n`; everything from `t^n` on lies in the tail.
fn low_part_of_image(d: &WeylElement, k: i64, n: usize) -> Poly {
    let mut low = vec![Rational::zero(); n];
    for (i, j, c) in d.terms() {
        let e = k + i - j as i64;
        if (j as i64) > k || e >= n as i64 {
            continue;
        }
        low[e as usize] += c * Rational::from_integer(falling(k, j));
    }
    Poly::from_coeffs(Var::T, low)
}

/// `e ∈ D(V, R)`, for `e` in `k[t, t^-1][D]`.
pub fn dual_contains(v: &PdSubspace, e: &WeylElement) -> bool {
    let Some(dd) = e.deg_d() else {
        return true;
    };
    if !v.basis().iter().all(|b| e.act_poly(b).is_polynomial()) {
        return false;
    }
    let n = v.conductor_exp() as i64;
    let m = (-e.lowest_t().unwrap_or(0)).max(0);
    (n..=n + dd as i64 + m).all(|k| e.act(&LaurentPoly::t_pow(k)).is_polynomial())
}

fn column_index(i: usize, j: u32, max_d: u32) -> usize {
    i * (max_d as usize + 1) + j as usize
}

fn element_from_columns(v: &[Rational], t_range: impl Iterator<Item = i64>, max_d: u32) -> WeylElement {
    let mut out = WeylElement::zero();
    for (slot, i) in t_range.enumerate() {
        for j in 0..=max_d {
            let c = &v[column_index(slot, j, max_d)];
            if !c.is_zero() {
                out = &out + &WeylElement::monomial(c.clone(), i, j);
            }
        }
    }
    out
}

/// Basis of `{d ∈ D(R, V) : deg_t(d) <= max_t, deg_D(d) <= max_d}`.
pub fn ideal_slice(v: &PdSubspace, max_t: usize, max_d: u32) -> Vec<WeylElement> {
    let n = v.conductor_exp();
    let codim = v.codim();
    let ncols = (max_t + 1) * (max_d as usize + 1);
    let probes = n + max_d as usize;
    let unit = v.unit_residuals();
    let mut rows = vec![vec![Rational::zero(); ncols]; probes * codim];
    for k in 0..probes {
        for i in 0..=max_t {
            for j in 0..=max_d.min(k as u32) {
                let e = k - j as usize + i;
                if e >= n {
                    continue;
                }
                let ff = Rational::from_integer(falling(k as i64, j));
                let col = column_index(i, j, max_d);
                for (r, u) in unit[e].iter().enumerate() {
                    if !u.is_zero() {
                        rows[k * codim + r][col] += &ff * u;
                    }
                }
            }
        }
    }
    Matrix::from_rows(ncols, rows)
        .nullspace()
        .into_iter()
        .map(|sol| element_from_columns(&sol, 0..=max_t as i64, max_d))
        .collect()
}

/// Basis of `{e ∈ D(V, R) : lo <= t-exponents <= hi, deg_D(e) <= max_d}`.
pub fn dual_slice(v: &PdSubspace, lo: i64, hi: i64, max_d: u32) -> Vec<WeylElement> {
    assert!(lo <= hi);
    let n = v.conductor_exp() as i64;
    let width = (hi - lo + 1) as usize;
    let ncols = width * (max_d as usize + 1);
    let mut sources: Vec<LaurentPoly> = v.basis().iter().map(LaurentPoly::from_poly).collect();
    let m = (-lo).max(0);
    sources.extend((n..=n + max_d as i64 + m).map(LaurentPoly::t_pow));

    let mut row_of: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (s, src) in sources.iter().enumerate() {
        for (slot, i) in (lo..=hi).enumerate() {
            for j in 0..=max_d {
                for (e, c) in src.terms() {
                    let ff = falling(e, j);
                    let x = e - j as i64 + i;
                    if ff.is_zero() || x >= 0 {
                        continue;
                    }
                    let next = row_of.len();
                    let row = *row_of.entry((s, x)).or_insert(next);
                    entries.push((row, column_index(slot, j, max_d), c * Rational::from_integer(ff)));
                }
            }
        }
    }
    let mut rows = vec![vec![Rational::zero(); ncols]; row_of.len()];
    for (r, c, val) in entries {
        rows[r][c] += val;
    }
    Matrix::from_rows(ncols, rows)
        .nullspace()
        .into_iter()
        .map(|sol| element_from_columns(&sol, lo..=hi, max_d))
        .collect()
}

fn require_irreducible(v: &PdSubspace) -> Result<()> {
    if v.is_irreducible() {
        Ok(())
    } else {
        Err(Error::Reducible(v.to_string()))
    }
}

/// A nonzero element of `D(R, V)` of the minimal `t`-degree `codim(V)`.
///
/// Ansatz `sum_{i <= m} t^i a_i(D)` with `deg a_i <= B`, starting at
/// `B = codim(V)` and growing until the solution space is nonzero.
pub fn min_tdeg_element(v: &PdSubspace) -> Result<WeylElement> {
    min_tdeg_element_with(v, &SearchConfig::default())
}

pub fn min_tdeg_element_with(v: &PdSubspace, cfg: &SearchConfig) -> Result<WeylElement> {
    require_irreducible(v)?;
    let m = v.codim();
    let cap = cfg.cap_for(v);
    for b in m as u32..=cap {
        if let Some(first) = ideal_slice(v, m, b).into_iter().next() {
            return Ok(first);
        }
    }
    Err(Error::SearchCapExceeded { what: "a minimal t-degree element of D(R,V)", cap })
}

/// The characteristic element `f ∈ D(R, V)`: the minimal `t`-degree element
/// whose `D`-coefficients have trivial highest common factor.
pub fn characteristic_f(v: &PdSubspace) -> Result<WeylElement> {
    characteristic_f_with(v, &SearchConfig::default())
}

pub fn characteristic_f_with(v: &PdSubspace, cfg: &SearchConfig) -> Result<WeylElement> {
    let found = min_tdeg_element_with(v, cfg)?;
    let parts = found.t_coefficients();
    let common = hcf_list(&parts.values().cloned().collect::<Vec<_>>());
    // f' = sum t^i a_i(D) = (sum t^i (a_i / p)(D)) p(D)
    let reduced: BTreeMap<i64, Poly> =
        parts.iter().map(|(&i, a)| (i, a.div_exact(&common).expect("hcf divides every coefficient"))).collect();
    let f = WeylElement::from_t_coefficients(reduced.iter().map(|(&i, p)| (i, p))).normalized();
    if !ideal_contains(v, &f)? {
        return Err(Error::CertFailed(format!("reduced generator {f} left D(R, {v})")));
    }
    Ok(f)
}

/// The characteristic element `e*` of the dual side: the generator of the
/// minimal `t`-degree part `k[D] e*` of `D(V, R)`.
///
/// Its `t`-degree is `-codim(V)`: for `e ∈ D(V, R)` and `f ∈ D(R, V)`,
/// `e f ∈ D(R, R) = A1`, so `deg_t(e) >= -deg_t(f)`, and `e* f ∈ k[D]`
/// attains the bound. The search fixes `deg_t = -codim(V)` and increases
/// the `D`-degree until a solution appears; with `D`-degree at most `B`,
/// every element of `A1 t^-N` has `t`-exponents `>= -(N + B)`, which fixes
/// the lower end of the window.
pub fn characteristic_e(v: &PdSubspace) -> Result<WeylElement> {
    characteristic_e_with(v, &SearchConfig::default())
}

pub fn characteristic_e_with(v: &PdSubspace, cfg: &SearchConfig) -> Result<WeylElement> {
    require_irreducible(v)?;
    let n = v.conductor_exp() as i64;
    let hi = -(v.codim() as i64);
    let cap = cfg.cap_for(v);
    for b in 0..=cap {
        let lo = (-(n + b as i64)).min(hi);
        let sols = dual_slice(v, lo, hi, b);
        match sols.len() {
            0 => continue,
            1 => {
                let e = sols[0].normalized();
                debug_assert!(dual_contains(v, &e));
                return Ok(e);
            }
            k => return Err(Error::CertFailed(format!("minimal dual slice of {v} has dimension {k}, expected 1"))),
        }
    }
    Err(Error::SearchCapExceeded { what: "the dual characteristic element e*", cap })
}

/// Characteristic elements together with the invariant `e* f ∈ k[D]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPair {
    pub e_star: WeylElement,
    pub f: WeylElement,
    /// Monic normalization of `e* f`.
    pub ef: Poly,
    /// `e* f = ef_scalar * ef`.
    pub ef_scalar: Rational,
}

pub fn characteristic_pair(v: &PdSubspace) -> Result<CharPair> {
    characteristic_pair_with(v, &SearchConfig::default())
}

pub fn characteristic_pair_with(v: &PdSubspace, cfg: &SearchConfig) -> Result<CharPair> {
    let f = characteristic_f_with(v, cfg)?;
    let e_star = characteristic_e_with(v, cfg)?;
    let product = &e_star * &f;
    let Some(poly) = product.as_d_poly() else {
        return Err(Error::ProductNotInKD(product.to_string()));
    };
    // e* f equals the product of the extreme t-coefficients b_m(D) c_m(D).
    let lead = |x: &WeylElement| x.t_coefficients().into_iter().next_back().map(|(_, p)| p);
    let extremes = lead(&e_star).zip(lead(&f)).map(|(b, c)| &b * &c);
    if extremes.as_ref() != Some(&poly) {
        return Err(Error::ProductNotInKD(format!("{product} differs from the product of leading t-coefficients")));
    }
    Ok(CharPair { ef_scalar: poly.leading(), ef: poly.monic(), e_star, f })
}

/// Monic `e* f`.
pub fn ef_invariant(v: &PdSubspace) -> Result<Poly> {
    Ok(characteristic_pair(v)?.ef)
}

/// `d(R) + t^N k[t]`, computed from the probes `d(t^k)` with
/// `k <= N + deg_D(d)`; larger probes land in the tail.
pub fn image_of_operator(v: &PdSubspace, d: &WeylElement) -> Result<PdSubspace> {
    d.require_regular()?;
    let n = v.conductor_exp();
    let dd = d.deg_d().unwrap_or(0) as i64;
    let images: Vec<Poly> = (0..=n as i64 + dd)
        .map(|k| d.act(&LaurentPoly::t_pow(k)).to_poly().expect("regular operators preserve k[t]"))
        .collect();
    Ok(PdSubspace::new(&images, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Var};

    fn euler_shift(c: i64) -> WeylElement {
        &WeylElement::euler() - &WeylElement::constant(rat(c))
    }

    /// (tD - 1)(tD - 2)...(tD - (n-1))
    fn f_n(n: i64) -> WeylElement {
        (1..n).fold(WeylElement::one(), |acc, k| &acc * &euler_shift(k))
    }

    #[test]
    fn fn_is_in_ideal_of_kx() {
        for n in 2..7 {
            assert!(ideal_contains(&PdSubspace::k_x(n as usize), &f_n(n)).unwrap());
        }
    }

    #[test]
    fn tail_powers_are_members() {
        let v = PdSubspace::u_n(4);
        assert!(ideal_contains(&v, &WeylElement::t_pow(4)).unwrap());
        assert!(!ideal_contains(&v, &WeylElement::t_pow(3)).unwrap());
    }

    #[test]
    fn non_regular_is_rejected() {
        let err = ideal_contains(&PdSubspace::k_x(2), &WeylElement::t_pow(-1)).unwrap_err();
        assert!(matches!(err, Error::NonRegular(_)));
    }

    #[test]
    fn dual_examples() {
        for n in 2..6 {
            let en = &WeylElement::t_pow(-n) * &WeylElement::euler();
            assert!(dual_contains(&PdSubspace::k_x(n as usize), &en));
            assert!(dual_contains(&PdSubspace::k_x(n as usize), &WeylElement::one()));
        }
        assert!(!dual_contains(&PdSubspace::k_x(2), &WeylElement::t_pow(-1)));
    }

    #[test]
    fn full_ring_has_trivial_pair() {
        let pair = characteristic_pair(&PdSubspace::full()).unwrap();
        assert_eq!(pair.f, WeylElement::one());
        assert_eq!(pair.e_star, WeylElement::one());
        assert_eq!(pair.ef, Poly::one(Var::D));
        assert_eq!(min_tdeg_element(&PdSubspace::full()).unwrap(), WeylElement::one());
    }

    #[test]
    fn kx_pair_matches_closed_form() {
        for n in 2..6 {
            let v = PdSubspace::k_x(n as usize);
            let pair = characteristic_pair(&v).unwrap();
            assert_eq!(pair.f, f_n(n));
            assert_eq!(pair.e_star, &WeylElement::t_pow(-n) * &WeylElement::euler());
            assert_eq!(pair.ef, Poly::monomial(Var::D, rat(1), n as usize));
        }
    }

    #[test]
    fn min_element_is_multiple_of_f() {
        for n in 2..6 {
            let v = PdSubspace::k_x(n as usize);
            let found = min_tdeg_element(&v).unwrap();
            assert_eq!(found.deg_t(), Some(n - 1));
            // f' = f p(D): dividing by the hcf recovers f
            let f = characteristic_f(&v).unwrap();
            let parts = found.t_coefficients();
            let p = hcf_list(&parts.values().cloned().collect::<Vec<_>>());
            assert_eq!((&f * &WeylElement::from_poly(&p)).normalized(), found.normalized());
        }
    }

    #[test]
    fn reducible_is_rejected() {
        let v = PdSubspace::new(&[], 2);
        assert!(matches!(characteristic_f(&v), Err(Error::Reducible(_))));
    }

    #[test]
    fn search_cap_is_loud() {
        let cfg = SearchConfig { degree_cap: Some(0), ..SearchConfig::default() };
        let err = characteristic_e_with(&PdSubspace::u_n(4), &cfg).unwrap_err();
        assert!(matches!(err, Error::SearchCapExceeded { .. }));
    }

    #[test]
    fn f_maps_onto_v() {
        for v in [PdSubspace::k_x(4), PdSubspace::u_n(4), PdSubspace::monomial(5, &[0, 2])] {
            let f = characteristic_f(&v).unwrap();
            assert_eq!(f.deg_t(), Some(v.codim() as i64));
            assert_eq!(image_of_operator(&v, &f).unwrap(), v);
        }
    }
}
