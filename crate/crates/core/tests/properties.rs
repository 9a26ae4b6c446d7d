//! Randomized invariants with fixed seeds.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::rngs::StdRng;
use rand::SeedableRng;

use galois_fiber::exact::{parse_poly, parse_rf, squarefree_part, BigRat, FpPoly, QPoly, RatFunc};
use galois_fiber::ffcurves::{
    all_divisors, cantor_add, cantor_mul, class_order, count_points, counts_from_p1, is_good_prime, jacobian_order,
    random_divisor, reduce_mod, zeta_numerator, CurveFp, MumfordDivisor,
};

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, max_global_rejects: 100_000, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

/// `(p, ascending coefficients of a monic polynomial)`.
fn curve_data(min_deg: usize, max_deg: usize) -> impl Strategy<Value = (u64, Vec<i64>)> {
    (prop::sample::select(PRIMES.to_vec()), vec(-20i64..=20, min_deg..=max_deg)).prop_map(|(p, mut c)| {
        c.push(1);
        (p, c)
    })
}

#[test]
fn hasse_weil_and_functional_equation() {
    runner(300, 1)
        .run(&curve_data(3, 8), |(p, c)| {
            let w = QPoly::from_i64s(&c);
            prop_assume!(is_good_prime(&w, p));
            let z = zeta_numerator(&w, p).unwrap();
            prop_assert_eq!(z.p1.len(), 2 * z.genus + 1);
            prop_assert_eq!(z.p1[0], 1);
            prop_assert!(z.hasse_weil_holds(), "{} at {}: {:?}", w, p, z.counts);
            prop_assert!(z.functional_equation_holds(), "{} at {}: {:?}", w, p, z.p1);
            prop_assert_eq!(counts_from_p1(p, &z.p1, z.genus), z.counts.clone());
            Ok(())
        })
        .unwrap();
}

#[test]
fn character_sums_match_enumeration() {
    runner(150, 2)
        .run(&curve_data(3, 6), |(p, c)| {
            let w = QPoly::from_i64s(&c);
            prop_assume!(is_good_prime(&w, p));
            let z = zeta_numerator(&w, p).unwrap();
            prop_assert_eq!(count_points(&w, p, 1).unwrap(), z.counts[0]);
            Ok(())
        })
        .unwrap();
}

#[test]
fn cantor_group_laws_and_annihilation() {
    let strategy = (curve_data(3, 7), any::<u64>()).prop_filter("odd degree", |((_, c), _)| c.len() % 2 == 0);
    let classes = std::cell::Cell::new(0usize);
    runner(40, 3)
        .run(&strategy, |((p, c), seed)| {
            let w = QPoly::from_i64s(&c);
            prop_assume!(is_good_prime(&w, p));
            let curve = CurveFp::new(reduce_mod(&w, p).unwrap()).unwrap();
            let n = jacobian_order(&w, p).unwrap();
            let id = MumfordDivisor::identity(&curve);
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..5 {
                let a = random_divisor(&curve, &mut rng);
                let b = random_divisor(&curve, &mut rng);
                let d = random_divisor(&curve, &mut rng);
                prop_assert!(a.is_valid());
                prop_assert_eq!(cantor_add(&a, &id).unwrap(), a.clone());
                prop_assert!(cantor_add(&a, &a.neg()).unwrap().is_identity());
                prop_assert_eq!(cantor_add(&a, &b).unwrap(), cantor_add(&b, &a).unwrap());
                let l = cantor_add(&cantor_add(&a, &b).unwrap(), &d).unwrap();
                let r = cantor_add(&a, &cantor_add(&b, &d).unwrap()).unwrap();
                prop_assert_eq!(l, r);
                prop_assert!(cantor_mul(&a, n).is_identity(), "{} at {}: #J = {}", w, p, n);
                let o = class_order(&a, n as u64).unwrap();
                prop_assert_eq!(n as u64 % o, 0);
                classes.set(classes.get() + 1);
            }
            Ok(())
        })
        .unwrap();
    assert!(classes.get() >= 200, "only {} classes", classes.get());
}

#[test]
fn genus_one_orders_match_brute_force() {
    // every monic cubic over F_p, p in {3, 5, 7}
    let mut checked = 0;
    for p in [3u64, 5, 7] {
        let pi = p as i64;
        for a in 0..pi {
            for b in 0..pi {
                for c in 0..pi {
                    let coeffs = [c, b, a, 1];
                    let w = QPoly::from_i64s(&coeffs);
                    if !is_good_prime(&w, p) {
                        continue;
                    }
                    let curve = CurveFp::new(FpPoly::from_i64s(p, &coeffs)).unwrap();
                    let brute = all_divisors(&curve).len() as u128;
                    assert_eq!(brute, jacobian_order(&w, p).unwrap(), "{w} at {p}");
                    // J = E for genus 1
                    assert_eq!(brute as i128, count_points(&w, p, 1).unwrap(), "{w} at {p}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 300);
}

/// `(constant numerator, denominator, factors with multiplicity)`.
fn split_data() -> impl Strategy<Value = (i64, i64, Vec<(Vec<i64>, u32)>)> {
    let factor = (vec(-9i64..=9, 1..=3), 1i64..=3, 1u32..=3).prop_map(|(mut c, lc, m)| {
        c.push(lc);
        (c, m)
    });
    (prop_oneof![-30i64..=-1, 1i64..=30], 1i64..=9, vec(factor, 1..=4))
}

#[test]
fn squarefree_reconstruction() {
    runner(1000, 4)
        .run(&split_data(), |(num, den, factors)| {
            let mut f = QPoly::constant(BigRat::new(num.into(), den.into()));
            for (c, m) in &factors {
                f = f.mul(&QPoly::from_i64s(c).pow(*m));
            }
            let s = squarefree_part(&f).unwrap();
            prop_assert!(s.w.is_squarefree());
            prop_assert!(s.w.is_integral());
            prop_assert!(s.c > BigRat::from_integer(0.into()));
            prop_assert_eq!(s.w.lc_sign(), f.lc_sign());
            prop_assert_eq!(s.h.mul(&s.h).mul(&s.w).scale(&s.c), f);
            Ok(())
        })
        .unwrap();
}

#[test]
fn printed_polynomials_reparse() {
    let strategy = vec((-50i64..=50, 1i64..=12), 0..=9);
    runner(500, 5)
        .run(&strategy, |c| {
            let f = QPoly::from_rats(c.iter().map(|&(a, b)| BigRat::new(a.into(), b.into())).collect());
            prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f.clone());
            prop_assert_eq!(parse_poly(&f.to_string_var("X")).unwrap(), f.clone());
            let g = QPoly::from_i64s(&[1, 0, 3]).add(&f);
            if !g.is_zero() {
                let r = RatFunc::new(f.clone(), g).unwrap();
                prop_assert_eq!(parse_rf(&r.to_string()).unwrap(), r);
            }
            Ok(())
        })
        .unwrap();
}
