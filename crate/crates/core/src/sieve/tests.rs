use super::*;
use crate::exact::{parse_poly, parse_rat, primes_up_to};
use crate::models::{level11_j, EcPoint};

fn q(s: &str) -> QPoly {
    parse_poly(s).unwrap()
}

const SEPTIC: &str = "(x^3-4*x^2+3*x+1)*(x^4-10*x^3+27*x^2-10*x-27)";
const INF: RationalPoint = RationalPoint::Infinity { y: None };

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().cloned().collect()
}

#[test]
fn septic_order_sets() {
    let w = q(SEPTIC);
    let o5 = order_set(&w, &INF, 5).unwrap();
    let o11 = order_set(&w, &INF, 11).unwrap();
    assert_eq!((o5.group_order, o5.points), (102, 3));
    assert_eq!((o11.group_order, o11.points), (960, 7));
    assert_eq!(o5.orders, set(&[1, 51]));
    assert_eq!(o11.orders, set(&[1, 120]));
    // the larger printed set at 11 is the set of orders of all differences
    assert_eq!(o5.pair_orders, Some(set(&[1, 51])));
    assert_eq!(o11.pair_orders, Some(set(&[1, 8, 20, 40, 60, 120])));
}

#[test]
fn septic_sieve() {
    let w = q(SEPTIC);
    let v = mw_sieve_rank0(&w, &INF, 6, &[5, 11]).unwrap();
    assert_eq!(v.status, SieveStatus::UniquePoint);
    assert_eq!(v.surviving, set(&[1]));
    let v = mw_sieve_rank0(&w, &INF, 1, &[5]).unwrap();
    assert_eq!(v.status, SieveStatus::UniquePoint);
    // more primes never undo a verdict
    let v = mw_sieve_rank0(&w, &INF, 6, &[3, 5, 7, 11, 13]).unwrap();
    assert_eq!(v.status, SieveStatus::UniquePoint);
}

#[test]
fn inconclusive_with_weak_data() {
    // y^2 = x^3 + x at p = 5: J(F_5) has order 4, O_5 = {1, 2, 4}
    let w = q("x^3+x");
    let v = mw_sieve_rank0(&w, &INF, 4, &[5]).unwrap();
    assert_eq!(v.status, SieveStatus::Inconclusive);
    assert!(v.surviving.len() > 1);
    assert_eq!(
        mw_sieve_rank0(&w, &RationalPoint::Affine { x: parse_rat("1").unwrap(), y: parse_rat("1").unwrap() }, 4, &[5]),
        Err(SieveError::BaseNotOnCurve)
    );
}

#[test]
fn known_points_survive() {
    // every rational point's class order lies in O_p
    let w = q("-x^7-8*x");
    let pts = crate::ratpoints::search_points(&w, 10);
    assert!(pts.len() >= 6);
    for p in [3u64, 5, 7, 11, 13] {
        if !ffcurves::is_good_prime(&w, p) {
            continue;
        }
        let e = order_set(&w, &INF, p).unwrap();
        let f = ffcurves::reduce_mod(&w, p).unwrap();
        let c = CurveFp::new(f).unwrap();
        for pt in &pts {
            let d = reduce_point(&c, pt).unwrap();
            let o = class_order(&d, e.group_order as u64).unwrap();
            assert!(e.orders.contains(&o), "{pt} at {p}");
        }
    }
}

#[test]
fn torsion_bounds() {
    let w = q(SEPTIC);
    let odd: Vec<u64> = primes_up_to(60).into_iter().skip(1).collect();
    let t = torsion_bound(&w, &odd).unwrap();
    assert_eq!(6 % t.bound, 0);
    assert!(t.skipped.contains(&7));
    let g6 = torsion_bound(&q("-x^13+64*x"), &odd).unwrap();
    assert_eq!(g6.bound, 64);
    assert_eq!(torsion_bound(&w, &[5]), Err(SieveError::TooFewPrimes(1)));
    // monotone under adding primes
    let mut prev = 0u128;
    for k in 2..odd.len() {
        let b = torsion_bound(&w, &odd[..k]).map(|t| t.bound).unwrap_or(0);
        if prev != 0 && b != 0 {
            assert_eq!(prev % b, 0);
        }
        if b != 0 {
            prev = b;
        }
    }
}

#[test]
fn cm_table() {
    assert_eq!(CM_TABLE.len(), 13);
    for j in ["0", "1728", "-3375", "16581375"] {
        assert!(matches!(classify_j(&Eval::Value(parse_rat(j).unwrap())), JClass::Cm(_)), "{j}");
    }
    assert_eq!(classify_j(&Eval::Value(parse_rat("-3375").unwrap())), JClass::Cm(-7));
    assert_eq!(classify_j(&Eval::Pole), JClass::Cusp);
    assert_eq!(classify_j(&Eval::Value(parse_rat("-82944").unwrap())), JClass::Unknown);
    assert_eq!(classify_j(&Eval::Value(parse_rat("1728/7").unwrap())), JClass::Unknown);
}

#[test]
fn level11_cm_point_as_printed() {
    let j = level11_j(&EcPoint::affine(2, 0)).unwrap();
    assert_eq!(classify_j(&j), JClass::Unknown);
}

#[test]
fn square_lifts() {
    assert!(square_lift_check(&parse_rat("1728").unwrap()));
    assert!(!square_lift_check(&parse_rat("-3375").unwrap()));
    assert!(!square_lift_check(&parse_rat("287496").unwrap()));
    assert!(square_lift_check(&parse_rat("1729").unwrap()));
    assert!(square_lift_check(&parse_rat("6912").unwrap()));
}
