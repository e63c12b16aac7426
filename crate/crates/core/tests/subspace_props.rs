use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylkit::exact::{hcf_list, rat, Rational};
use weylkit::ideal::{
    characteristic_pair, dual_contains, ef_invariant, ideal_contains, ideal_slice, image_of_operator,
};
use weylkit::sample;
use weylkit::{LaurentPoly, PdSubspace, Poly, Var, WeylElement};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn t_pow(k: usize) -> Poly {
    Poly::monomial(Var::T, rat(1), k)
}

fn combination<R: Rng>(r: &mut R, ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::zero(Var::T), |acc, p| &acc + &p.scale(&sample::scalar(r)))
}

fn element_combination<R: Rng>(r: &mut R, ds: &[WeylElement]) -> WeylElement {
    ds.iter().fold(WeylElement::zero(), |acc, d| &acc + &d.scale(&sample::scalar(r)))
}

/// Membership by brute force: many more probes than the valuation bound needs,
/// evaluated through the generic Laurent action.
fn oracle_contains(v: &PdSubspace, d: &WeylElement) -> bool {
    let bound = 3 * (v.conductor_exp() as i64 + d.deg_d().unwrap_or(0) as i64);
    (0..=bound).all(|k| v.contains_laurent(&d.act(&LaurentPoly::t_pow(k))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let v = sample::pd_subspace(&mut rng(seed), 6);
        let n = v.conductor_exp();
        prop_assert_eq!(PdSubspace::new(v.basis(), n), v.clone());
        if n >= 1 {
            prop_assert!(!v.contains(&t_pow(n - 1)));
        }
        prop_assert!(v.conductor() <= n);
    }

    #[test]
    fn o_algebra_stabilizes(seed in any::<u64>()) {
        let v = sample::pd_subspace(&mut rng(seed), 6);
        let n = v.conductor_exp();
        prop_assume!(n >= 1);
        prop_assert!(v.stabilizer_contains(&Poly::one(Var::T)));
        for k in n..=2 * n {
            prop_assert!(v.stabilizer_contains(&t_pow(k)));
        }
    }

    #[test]
    fn square_of_b_lies_in_conductor(seed in any::<u64>()) {
        // O(t^(N-1)) ⊆ S(V), hence t^(2(N-1)) ∈ C(R, V); needs N >= 2.
        let v = sample::pd_subspace(&mut rng(seed), 6);
        let n = v.conductor_exp();
        prop_assume!(n >= 2);
        prop_assert!(v.conductor() <= 2 * (n - 1));
    }

    #[test]
    fn stabilizer_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = sample::pd_subspace(&mut r, 5);
        let basis = v.stabilizer_basis(2 * v.conductor_exp().max(1));
        let (p, q) = (combination(&mut r, &basis), combination(&mut r, &basis));
        prop_assert!(v.stabilizer_contains(&p) && v.stabilizer_contains(&q));
        prop_assert!(v.stabilizer_contains(&(&p * &q)));
    }

    #[test]
    fn membership_matches_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = sample::pd_subspace(&mut r, 4);
        let d = if r.random_bool(0.5) {
            let slice = ideal_slice(&v, 4, 3);
            let member = element_combination(&mut r, &slice);
            if r.random_bool(0.5) { member } else { &member + &sample::regular_element(&mut r, 3, 3) }
        } else {
            sample::regular_element(&mut r, 5, 4)
        };
        prop_assert_eq!(ideal_contains(&v, &d).unwrap(), oracle_contains(&v, &d));
    }

    #[test]
    fn dual_matches_right_multiplier_test(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = sample::irreducible_pd_subspace(&mut r, 3);
        let n = v.conductor_exp() as i64;
        let e = sample::laurent_element(&mut r, -n - 1, 2, 3);
        let slice = ideal_slice(&v, n as usize + 3, e.deg_d().unwrap_or(0) + n as u32 + 3);
        let multiplies_into_a1 = slice.iter().all(|d| (&e * d).is_regular());
        prop_assert_eq!(dual_contains(&v, &e), multiplies_into_a1);
    }

    #[test]
    fn characteristic_pair_invariants(seed in any::<u64>()) {
        let v = sample::irreducible_pd_subspace(&mut rng(seed), 5);
        let pair = characteristic_pair(&v).unwrap();
        prop_assert_eq!(pair.f.deg_t(), Some(v.codim() as i64));
        prop_assert!(ideal_contains(&v, &pair.f).unwrap());
        prop_assert!(dual_contains(&v, &pair.e_star));
        prop_assert_eq!(image_of_operator(&v, &pair.f).unwrap(), v.clone());
        let product = &pair.e_star * &pair.f;
        prop_assert_eq!(product.as_d_poly(), Some(pair.ef.scale(&pair.ef_scalar)));
        let coeffs: Vec<Poly> = pair.f.t_coefficients().into_values().collect();
        prop_assert_eq!(hcf_list(&coeffs), Poly::one(Var::D));
    }

    #[test]
    fn ef_invariant_ignores_generator_scaling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = sample::irreducible_pd_subspace(&mut r, 5);
        let scaled: Vec<Poly> = v
            .basis()
            .iter()
            .map(|b| {
                let mut c = sample::scalar(&mut r);
                if c == Rational::from_integer(0.into()) {
                    c = rat(3);
                }
                b.scale(&c)
            })
            .collect();
        let w = PdSubspace::new(&scaled, v.conductor_exp());
        prop_assert_eq!(ef_invariant(&w).unwrap(), ef_invariant(&v).unwrap());
    }
}

#[test]
fn k_x_pairs_in_closed_form() {
    for n in 2..=8 {
        let pair = characteristic_pair(&PdSubspace::k_x(n)).unwrap();
        assert_eq!(pair.ef, Poly::monomial(Var::D, rat(1), n));
    }
}
