//! Property tests over randomized inputs.

use kmult::algebra::{binomial_int, binomial_series, rat, AffineExponent, Piece};
use kmult::blattner::{
    compact_weyl_group, discretemult, discretemult_in, lowest_k_type, multiplicity_direction, HcParamK, Setting,
};
use kmult::partition::{partition_count, partition_count_bruteforce, NoncompactSystem};
use kmult::sample::{random_lambda, random_mu, random_pattern, random_point};
use kmult::{PiecewisePolynomial, Rational, UniPoly};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn poly_strategy() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-20i64..20, 1i64..5), 0..5)
        .prop_map(|c| UniPoly::from_coeffs(c.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect()))
}

fn piecewise_strategy() -> impl Strategy<Value = PiecewisePolynomial> {
    prop::collection::vec((poly_strategy(), 0u64..6), 1..6).prop_map(|raw| {
        let mut pieces = Vec::new();
        let mut lo = 0;
        let last = raw.len() - 1;
        for (k, (p, len)) in raw.into_iter().enumerate() {
            let hi = (k < last).then_some(lo + len);
            pieces.push(Piece::new(p, lo, hi));
            lo += len + 1;
        }
        PiecewisePolynomial::new(pieces)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_matches_integer_binomials(c in -10i64..40, s in -3i64..4, n in 0i64..12) {
        let e = AffineExponent::new(c, s);
        let value = c + s * n;
        prop_assume!((0..=50).contains(&value));
        let series = binomial_series(&e, 10);
        for (k, p) in series.iter().enumerate() {
            let want = binomial_int(&BigInt::from(value), k);
            prop_assert_eq!(p.eval(&rat(n)), Rational::from_integer(want));
        }
    }

    #[test]
    fn polynomial_ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy(), t in -6i64..6) {
        let t = rat(t);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn streamline_preserves_values(pw in piecewise_strategy()) {
        let s = pw.streamline();
        prop_assert!(s.validate().is_ok());
        let end = pw.max_finite_endpoint();
        for t in 0..=2 * end + 10 {
            prop_assert_eq!(s.eval(t).unwrap(), pw.eval(t).unwrap());
        }
        prop_assert!(s.pieces.len() <= pw.pieces.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_count_matches_direct_count(seed in any::<u64>(), p in 1usize..4, q in 1usize..4) {
        let mut r = rng(seed);
        let sys = NoncompactSystem::new(random_pattern(&mut r, p, q));
        let h = random_point(&mut r, p + q, 7);
        let hq: Vec<Rational> = h.iter().map(|&x| rat(x)).collect();
        prop_assert_eq!(partition_count(&sys, &hq).unwrap(), partition_count_bruteforce(&sys.roots, &h));
    }

    #[test]
    fn lowest_k_type_has_multiplicity_one(seed in any::<u64>(), p in 1usize..4, q in 1usize..4) {
        let mut r = rng(seed);
        let lambda = random_lambda(&mut r, p, q, 30);
        let low = lowest_k_type(&lambda, p, q).unwrap();
        prop_assert_eq!(discretemult(&low, &lambda, p, q).unwrap().value, BigInt::from(1));
    }

    #[test]
    fn antisymmetry_under_compact_weyl_group(seed in any::<u64>(), p in 1usize..4, q in 1usize..3, pick in any::<prop::sample::Index>()) {
        let mut r = rng(seed);
        let lambda = random_lambda(&mut r, p, q, 20);
        let Some(mu) = random_mu(&mut r, &lambda, p, q, 8) else { return Ok(()) };
        let set = Setting::new(&lambda, p, q).unwrap();
        let group = compact_weyl_group(p, q);
        let w = pick.get(&group);
        let base = discretemult_in(&set, &mu).signed;
        let moved = discretemult_in(&set, &w.apply(&mu)).signed;
        prop_assert_eq!(moved, base * BigInt::from(w.sign));
    }

    #[test]
    fn support_and_sign(seed in any::<u64>(), p in 1usize..4, q in 1usize..4) {
        let mut r = rng(seed);
        let lambda = random_lambda(&mut r, p, q, 20);
        let Some(mu) = random_mu(&mut r, &lambda, p, q, 8) else { return Ok(()) };
        let set = Setting::new(&lambda, p, q).unwrap();
        let res = discretemult_in(&set, &mu);
        prop_assert!(!res.value.is_negative());
        if kmult::blattner::valid_permutations(&set, &mu).is_empty() {
            prop_assert!(res.value.is_zero());
        }
        // shifting the centre breaks the sum condition
        let mut shifted = mu.clone();
        shifted.a[0] += rat(1);
        let s = discretemult_in(&set, &shifted);
        prop_assert!(s.value.is_zero() && s.contributions.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn direction_matches_pointwise_multiplicities(seed in any::<u64>(), p in 1usize..3, q in 1usize..4) {
        let mut r = rng(seed);
        let lambda = random_lambda(&mut r, p, q, 16);
        // a K-dominant direction: weakly decreasing blocks, total zero
        let mut v = random_point(&mut r, p + q, 3);
        v[..p].sort_by(|x, y| y.cmp(x));
        v[p..].sort_by(|x, y| y.cmp(x));
        prop_assume!(v.iter().any(|x| *x != 0));
        let vk = HcParamK::new(v[..p].iter().map(|&x| rat(x)).collect(), v[p..].iter().map(|&x| rat(x)).collect());
        let pw = multiplicity_direction(&lambda, &vk, p, q).unwrap();
        let set = Setting::new(&lambda, p, q).unwrap();
        let low = lowest_k_type(&lambda, p, q).unwrap().flat();
        let bound = set.sys.degree_bound();
        for piece in &pw.pieces {
            prop_assert!(piece.poly.degree().unwrap_or(0) <= bound);
        }
        let end = pw.max_finite_endpoint();
        for t in 0..=end + 10 {
            let mu: Vec<Rational> = low.iter().zip(&v).map(|(a, &b)| a + rat(b * t as i64)).collect();
            let m = discretemult_in(&set, &HcParamK::from_flat(&mu, p)).signed;
            prop_assert_eq!(pw.eval(t).unwrap(), Rational::from_integer(m), "t = {}", t);
        }
    }
}
