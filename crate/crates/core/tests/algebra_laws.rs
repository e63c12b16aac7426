use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylkit::exact::{rat, Rational};
use weylkit::sample;
use weylkit::weyl::{from_euler, to_euler};
use weylkit::{LaurentPoly, Poly, Var, WeylElement};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn element(r: &mut ChaCha8Rng) -> WeylElement {
    sample::laurent_element(r, -4, 6, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (sample::scalar(&mut r), sample::scalar(&mut r), sample::scalar(&mut r));
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        if a != rat(0) {
            prop_assert_eq!(&a * (rat(1) / &a), rat(1));
        }
        prop_assert_eq!(&a + (-&a), rat(0));
    }

    #[test]
    fn mul_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (element(&mut r), element(&mut r), element(&mut r));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mul_distributes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (element(&mut r), element(&mut r), element(&mut r));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn one_is_neutral(seed in any::<u64>()) {
        let a = element(&mut rng(seed));
        prop_assert_eq!(&a * &WeylElement::one(), a.clone());
        prop_assert_eq!(&WeylElement::one() * &a, a);
    }

    #[test]
    fn degrees_add(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (element(&mut r), element(&mut r));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = &a * &b;
        prop_assert_eq!(ab.deg_t(), Some(a.deg_t().unwrap() + b.deg_t().unwrap()));
        prop_assert_eq!(ab.deg_d(), Some(a.deg_d().unwrap() + b.deg_d().unwrap()));
    }

    #[test]
    fn action_composes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (element(&mut r), element(&mut r));
        let h = sample::laurent_poly(&mut r, -3, 5);
        prop_assert_eq!((&a * &b).act(&h), a.act(&b.act(&h)));
    }

    #[test]
    fn action_is_bilinear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (element(&mut r), element(&mut r));
        let (g, h) = (sample::laurent_poly(&mut r, -3, 5), sample::laurent_poly(&mut r, -3, 5));
        let c = sample::scalar(&mut r);
        prop_assert_eq!((&a + &b).act(&h), &a.act(&h) + &b.act(&h));
        prop_assert_eq!(a.act(&(&g + &h)), &a.act(&g) + &a.act(&h));
        prop_assert_eq!(a.scale(&c).act(&h), a.act(&h).scale(&c));
    }

    #[test]
    fn euler_round_trip(seed in any::<u64>()) {
        let a = element(&mut rng(seed));
        prop_assert_eq!(from_euler(&to_euler(&a)), a);
    }

    #[test]
    fn action_valuation_bound(seed in any::<u64>(), k in 0i64..12) {
        let d = sample::regular_element(&mut rng(seed), 6, 6);
        let image = d.act(&LaurentPoly::t_pow(k));
        if let (Some(v), Some(dd)) = (image.valuation(), d.deg_d()) {
            prop_assert!(v >= k - dd as i64);
        }
    }

    #[test]
    fn defining_relation_under_commutator(seed in any::<u64>()) {
        // [D, a] is the derivative of the t-coefficients for a in k[t, t^-1].
        let p = sample::laurent_poly(&mut rng(seed), -4, 6);
        let a = p.terms().fold(WeylElement::zero(), |acc, (k, c)| &acc + &WeylElement::monomial(c.clone(), k, 0));
        let expected = p.terms().fold(WeylElement::zero(), |acc, (k, c)| {
            &acc + &WeylElement::monomial(c * Rational::from_integer(k.into()), k - 1, 0)
        });
        prop_assert_eq!(WeylElement::d().commutator(&a), expected);
    }
}

#[test]
fn defining_relation() {
    assert_eq!(WeylElement::d().commutator(&WeylElement::t()), WeylElement::one());
}

#[test]
fn euler_of_t_powers() {
    for n in -5..8 {
        let e = to_euler(&WeylElement::t_pow(n));
        assert_eq!(e.components().len(), 1);
        assert_eq!(e.component(n), Some(&Poly::one(Var::E)));
    }
}
