use super::*;
use crate::exact::{parse_poly, Eval};
use crate::gl2cat::catalog_levels;
use num_traits::One;

fn q(s: &str) -> QPoly {
    parse_poly(s).unwrap()
}

fn rat(s: &str) -> BigRat {
    parse_rat(s).unwrap()
}

#[test]
fn level7_g2_reduces_to_the_septic() {
    let m = composite_model("2:G_3", "7:G_2").unwrap();
    let red = m.reduced.as_ref().unwrap();
    assert!(red.identity_holds());
    let target = q("(t^3-4*t^2+3*t+1)*(t^4-10*t^3+27*t^2-10*t-27)");
    let ratio = scalar_ratio(&red.model.w, &target).unwrap();
    assert_eq!(ratio, BigRat::one());
    assert_eq!(red.c, BigRat::one());
    assert_eq!(red.model.genus, 3);
    assert_eq!(m.branch_genus, Some(3));
}

#[test]
fn fiber_product_examples() {
    assert_eq!(composite_model("2:G_3", "7:G_1"), Err(ModelError::ZeroDimensionalFiber));
    let m = composite_model("2:G_3", "3:G_4").unwrap();
    assert_eq!(m.raw.to_string(), "s^2+1728 = t^3");
    let red = m.reduced.unwrap();
    assert_eq!(red.model.w, q("t^3-1728"));
    assert_eq!(red.model.genus, 1);
    let m = composite_model("2:G_3", "3:G_3").unwrap();
    assert_eq!(m.genus(), Some(0));
    assert_eq!(m.reduced.unwrap().model.genus, 0);
    // order does not matter for the reduction
    let m = composite_model("3:G_4", "2:G_3").unwrap();
    assert_eq!(m.left, "2:G_3");
    assert!(m.reduced.is_some());
    assert!(matches!(composite_model("2:G_3", "11:G_1"), Err(ModelError::NoJMap(_))));
    assert_eq!(composite_model("2:G_3", "11:G_3"), Err(ModelError::EllipticFactor));
}

#[test]
fn reduction_records_the_substitution() {
    let red = hyperelliptic_reduce(&parse_rf("27*(t+1)*(t+9)^3/t^3").unwrap()).unwrap();
    assert!(red.identity_holds());
    // t = 3: j = 27*4*1728/27 = 6912, s^2 = 5184, s = 72
    let t = rat("3");
    let s = rat("72");
    let y = red.y_of(&t, &s).unwrap();
    assert_eq!(&y * &y, red.model.w.eval(&t));
}

#[test]
fn level7_census() {
    let want = [("G_2", 3), ("G_3", 2), ("G_4", 2), ("G_5", 2), ("G_6", 3), ("G_7", 0)];
    for (name, g) in want {
        let m = composite_model("2:G_3", &format!("7:{name}")).unwrap();
        assert_eq!(m.reduced.as_ref().map(|r| r.model.genus as i64), Some(g), "{name}");
        assert_eq!(m.branch_genus, Some(g), "{name}");
    }
}

#[test]
fn genus_zero_level_2_3_pairs() {
    let pairs = [("G_1", "G_3"), ("G_2", "G_1"), ("G_2", "G_2"), ("G_2", "G_3"), ("G_2", "G_4"), ("G_3", "G_3")];
    for (a, b) in pairs {
        let m = composite_model(&format!("2:{a}"), &format!("3:{b}")).unwrap();
        assert_eq!(m.genus(), Some(0), "{a} x {b}");
    }
    assert_eq!(composite_model("2:G_1", "3:G_1").unwrap().genus(), Some(1));
}

#[test]
fn catalog_jmaps_are_complete_covers() {
    for level in catalog_levels() {
        for e in crate::gl2cat::catalog_level(level).unwrap() {
            if let Some(JMap::RatFunc(r)) = JMap::from_ref(&e.jmap).unwrap() {
                let ram = ramification(&r).unwrap();
                assert_eq!(ram.degree as u64 * e.group.order() as u64, crate::gl2cat::gl2_order(level), "{level}:{}", e.name);
                assert!(ram.is_complete(), "{level}:{}", e.name);
            }
        }
    }
}

#[test]
fn printed_typos_fail_riemann_hurwitz() {
    for (level, name) in [(2, "G_1"), (5, "G_7"), (7, "G_2"), (7, "G_3")] {
        let e = crate::gl2cat::catalog_lookup(level, name).unwrap();
        let r = parse_rf(e.jmap.printed.as_deref().unwrap()).unwrap();
        let ok = ramification(&r).unwrap().is_complete();
        assert!(!ok, "{level}:{name}");
    }
}

#[test]
fn ramification_of_the_square_map() {
    let r = ramification(&parse_rf("t^2+1728").unwrap()).unwrap();
    assert_eq!(r.over_0, vec![1, 1]);
    assert_eq!(r.over_1728, vec![2]);
    assert_eq!(r.over_infinity, vec![2]);
}

#[test]
fn superelliptic_genus() {
    assert_eq!(genus_superelliptic(3, &q("x^4-8*x^2+8")).unwrap(), 3);
    assert_eq!(genus_superelliptic(2, &q("-x^13+64*x")).unwrap(), 6);
    assert_eq!(genus_superelliptic(3, &q("x^3+x+1")).unwrap(), 1);
    assert_eq!(genus_superelliptic(3, &q("(x^2+1)^2")), Err(ModelError::NotSquarefree));
    assert_eq!(genus_superelliptic(1, &q("x^3+1")), Err(ModelError::BadExponent));
    assert_eq!(genus_superelliptic_general(3, &q("2*(x^4+4*x^2+2)^2")).unwrap(), 3);
    assert_eq!(genus_superelliptic_general(3, &q("2*(x^4+4*x^4+2)^2")).unwrap(), 3);
    assert_eq!(genus_superelliptic_general(2, &q("(x^3+1)^2")), Err(ModelError::Reducible));
}

#[test]
fn level11_curve_and_map() {
    let e = level11_curve();
    let p = EcPoint::affine(4, 5);
    assert!(e.contains(&p));
    assert_eq!(e.add(&p, &EcPoint::Infinity).unwrap(), p);
    assert_eq!(e.add(&p, &e.neg(&p).unwrap()).unwrap(), EcPoint::Infinity);
    for n in -6..=6 {
        assert!(e.contains(&e.mul(n, &p).unwrap()), "{n}");
    }
    assert_eq!(e.mul(3, &p).unwrap(), EcPoint::Affine(rat("5/4"), rat("7/8")));
    assert_eq!(level11_j(&p).unwrap(), Eval::Value(rat("-4567685746688000/1771561")));
    assert_eq!(level11_j(&e.mul(3, &p).unwrap()).unwrap(), Eval::Pole);
    // the printed f_i do not give 1728 at the stated CM point
    let cm = EcPoint::affine(2, 0);
    assert!(e.contains(&cm));
    assert_eq!(level11_j(&cm).unwrap(), Eval::Value(rat("28216629768384")));
    assert_eq!(level11_j(&EcPoint::Infinity), Err(ModelError::AtInfinity));
    assert_eq!(level11_j(&EcPoint::affine(0, 0)), Err(ModelError::NotOnCurve));
    assert_eq!(e.to_string(), "y^2 + y = x^3 - x^2 - 7*x + 10");
}

#[test]
fn elliptic_invariants() {
    let e = EllipticQ::from_i64s([0, 0, 0, 1, 0]).unwrap();
    assert_eq!(e.discriminant(), rat("-64"));
    assert_eq!(e.j_invariant(), rat("1728"));
    assert_eq!(EllipticQ::from_i64s([0, 0, 0, 0, 0]), Err(ModelError::Singular));
    assert_eq!(level11_curve().discriminant(), rat("-1331"));
}

#[test]
fn registry_genus_and_points() {
    for name in registry_names() {
        let m = model_registry(name).unwrap();
        if let Some(g) = m.computed_genus().unwrap() {
            assert_eq!(g, m.stated_genus, "{name}");
        }
        for p in &m.points {
            let on = m.contains(p);
            assert_eq!(on, name != "X_22", "{name}: {p:?}");
        }
    }
    let m = model_registry("X_H171").unwrap();
    assert_eq!(m.equation, CurveEquation::Hyperelliptic(q("-x^13+64*x")));
    assert_eq!(m.points.len(), 2);
    assert_eq!(model_registry("BaranC13").unwrap().stated_point_count, Some(7));
    assert_eq!(model_registry("BaranC13").unwrap().points.len(), 9);
    assert!(matches!(model_registry("X_nope"), Err(ModelError::UnknownModel(_))));
}

#[test]
fn registry_systems_share_variables() {
    let m = model_registry("X_H150").unwrap();
    let CurveEquation::System(eqs) = &m.equation else { panic!() };
    assert!(eqs.iter().all(|e| e.vars() == ['A', 'B', 'C', 'D']));
    assert!(eqs.iter().all(|e| e.is_homogeneous()));
    let m = model_registry("X_22").unwrap();
    let CurveEquation::System(eqs) = &m.equation else { panic!() };
    assert_eq!(eqs[0].vars(), ['s', 'x', 'y']);
}
