//! One handler per subcommand; each returns the echoed inputs and the payload.

use num_traits::Zero;
use serde_json::{json, Value};

use galois_fiber::entangle::{self, CubicStatus, EntangleError};
use galois_fiber::exact::{parse_poly, parse_rat, primes_up_to, Eval, QPoly};
use galois_fiber::ffcurves;
use galois_fiber::gl2cat::{self, gl2_order, is_applicable, CatalogEntry};
use galois_fiber::models::{self, CompositeModel, JMap, KnownPoint};
use galois_fiber::ratpoints::{self, Place, RationalPoint};
use galois_fiber::sieve::{self, SieveStatus};

use crate::jmaps::{resolve, UserMaps};
use crate::{CliError, Command, Outcome, Output};

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn strs<T: ToString>(v: impl IntoIterator<Item = T>) -> Value {
    Value::Array(v.into_iter().map(|x| s(x)).collect())
}

fn poly(text: &str) -> Result<QPoly, CliError> {
    Ok(parse_poly(text)?)
}

fn done(inputs: Value, tag: &'static str, result: Value) -> Output {
    Output { inputs, tag, result, outcome: Outcome::Done }
}

pub fn run(cmd: &Command, user: &UserMaps) -> Result<Output, CliError> {
    match cmd {
        Command::Catalog { level, name, lattice } => catalog(*level, name.as_deref(), *lattice),
        Command::Model { left, right, registry } => match registry {
            Some(r) => registry_model(r),
            None => model(left.as_deref().unwrap_or(""), right.as_deref().unwrap_or(""), user),
        },
        Command::Zeta { curve, prime, charpoly } => zeta(curve, *prime, *charpoly),
        Command::Sieve { curve, primes, bound, torsion_below, base } => sieve(curve, primes, *bound, *torsion_below, base),
        Command::Search { curve, height } => search(curve, *height),
        Command::Descent { curve, factors, bad_primes, places } => descent(curve.as_deref(), factors, bad_primes, places),
        Command::Entangle { pair } => entangle_pair(pair),
        Command::Gauss { prime, t } => gauss(*prime, t),
        Command::Braujones { t, level6 } => braujones(t, *level6),
        Command::Census { pair_left, level } => census(pair_left, *level, user),
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    let order = e.group.order() as u64;
    let app = is_applicable(&e.group.plus_minus());
    json!({
        "name": e.name,
        "order": order,
        "index": gl2_order(e.level) / order,
        "contains_minus_i": e.contains_minus_i,
        "applicable_up_to_sign": app.applicable,
        "generators": e.group.generators().iter().map(|m| m.quad().to_vec()).collect::<Vec<_>>(),
        "printed_generators": e.printed_gens.as_ref().map(|g| g.iter().map(|m| m.quad().to_vec()).collect::<Vec<_>>()),
        "jmap": e.jmap,
        "parent": e.parent,
        "note": e.note,
    })
}

fn catalog(level: u32, name: Option<&str>, lattice: bool) -> Result<Output, CliError> {
    let entries = match name {
        Some(n) => vec![gl2cat::catalog_lookup(level, n)?],
        None => gl2cat::catalog_level(level)?,
    };
    let mut result = json!({
        "level": level,
        "gl2_order": gl2_order(level),
        "entries": entries.iter().map(entry_json).collect::<Vec<_>>(),
    });
    if lattice {
        result["lattice"] = serde_json::to_value(gl2cat::lattice_check(level)?).expect("edges serialize");
    }
    Ok(done(json!({ "level": level, "name": name, "lattice": lattice }), "subgroup catalog", result))
}

fn composite_json(m: &CompositeModel) -> Value {
    json!({
        "left": m.left,
        "right": m.right,
        "system": m.raw.to_string(),
        "genus": m.genus(),
        "branch_genus": m.branch_genus,
        "reduced": m.reduced.as_ref().map(|r| json!({
            "w": r.model.w.to_string(),
            "genus": r.model.genus,
            "d": s(&r.d),
            "a": s(&r.a),
            "c": s(&r.c),
            "h": r.h.to_string(),
            "w0": r.w0.to_string(),
            "identity_holds": r.identity_holds(),
        })),
    })
}

fn composite(left: &str, right: &str, user: &UserMaps) -> Result<CompositeModel, CliError> {
    let j1 = resolve(left, user)?;
    let j2 = resolve(right, user)?;
    Ok(models::fiber_product_labeled(&j1, left, &j2, right)?)
}

fn model(left: &str, right: &str, user: &UserMaps) -> Result<Output, CliError> {
    let m = composite(left, right, user)?;
    Ok(done(json!({ "left": left, "right": right }), "composite-level fibered product", composite_json(&m)))
}

fn known_point(p: &KnownPoint) -> String {
    match p {
        KnownPoint::Infinity => "inf".into(),
        KnownPoint::Affine(c) => c.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(","),
        KnownPoint::Projective(c) => c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":"),
    }
}

fn registry_model(name: &str) -> Result<Output, CliError> {
    let m = models::model_registry(name)?;
    let result = json!({
        "name": m.name,
        "tag": m.tag,
        "equations": m.text,
        "stated_genus": m.stated_genus,
        "computed_genus": m.computed_genus()?,
        "points": m.points.iter().map(|p| json!({ "point": known_point(p), "on_curve": m.contains(p) })).collect::<Vec<_>>(),
        "stated_point_count": m.stated_point_count,
        "note": m.note,
    });
    Ok(done(json!({ "registry": name }), "registry model", result))
}

fn zeta(curve: &str, p: u64, charpoly: bool) -> Result<Output, CliError> {
    let w = poly(curve)?;
    let z = ffcurves::zeta_numerator(&w, p)?;
    let mut result = json!({
        "p": p,
        "genus": z.genus,
        "method": z.method,
        "counts": strs(&z.counts),
        "p1": strs(&z.p1),
        "p1_at_one": s(z.p1_at_one()),
        "functional_equation": z.functional_equation_holds(),
        "hasse_weil": z.hasse_weil_holds(),
    });
    if charpoly {
        let c = ffcurves::charpoly_report_from_p1(p, &z.p1);
        result["charpoly"] = json!({
            "coefficients": strs(&c.charpoly),
            "irreducible": c.irreducible,
            "factors": c.factors.iter().map(strs).collect::<Vec<_>>(),
            "proof": c.proof,
        });
    }
    Ok(done(json!({ "curve": w.to_string(), "prime": p }), "zeta numerator over F_p", result))
}

fn parse_point(text: &str) -> Result<RationalPoint, CliError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(RationalPoint::Infinity { y: None });
    }
    let t = t.trim_start_matches('(').trim_end_matches(')');
    let (x, y) = t.split_once(',').ok_or_else(|| CliError::Usage(format!("bad point '{text}': expected inf or x,y")))?;
    Ok(RationalPoint::Affine { x: parse_rat(x.trim())?, y: parse_rat(y.trim())? })
}

fn sieve(curve: &str, primes: &[u64], bound: Option<u128>, torsion_below: u64, base: &str) -> Result<Output, CliError> {
    let w = poly(curve)?;
    let base_pt = parse_point(base)?;
    let (bound, torsion) = match bound {
        Some(b) => (b, Value::Null),
        None => {
            let odd: Vec<u64> = primes_up_to(torsion_below).into_iter().filter(|&p| p > 2).collect();
            let t = sieve::torsion_bound(&w, &odd)?;
            let info = json!({
                "bound": s(t.bound),
                "primes": t.orders.iter().map(|(p, _)| *p).collect::<Vec<_>>(),
                "skipped": t.skipped,
            });
            (t.bound, info)
        }
    };
    let v = sieve::mw_sieve_rank0(&w, &base_pt, bound, primes)?;
    let evidence: Vec<Value> = v
        .evidence
        .iter()
        .map(|e| {
            json!({
                "p": e.p,
                "group_order": s(e.group_order),
                "points": e.points,
                "orders": e.orders,
                "pair_orders": e.pair_orders,
            })
        })
        .collect();
    let result = json!({
        "status": v.status,
        "bound": s(v.bound),
        "torsion": torsion,
        "surviving": v.surviving,
        "evidence": evidence,
        "skipped": v.skipped,
    });
    let outcome = if v.status == SieveStatus::UniquePoint { Outcome::Done } else { Outcome::Inconclusive };
    let inputs = json!({ "curve": w.to_string(), "primes": primes, "bound": s(bound), "base": base_pt.to_string() });
    Ok(Output { inputs, tag: "rank-0 Mordell-Weil sieve", result, outcome })
}

fn search(curve: &str, height: u64) -> Result<Output, CliError> {
    let w = poly(curve)?;
    let pts = ratpoints::search_points(&w, height);
    let result = json!({ "count": pts.len(), "points": strs(&pts) });
    Ok(done(json!({ "curve": w.to_string(), "height": height }), "rational points of bounded height", result))
}

fn descent(curve: Option<&str>, factors: &str, bad: &[u64], places: &[String]) -> Result<Output, CliError> {
    let (a, b) = factors.split_once(';').ok_or_else(|| CliError::Usage("--factors expects f1;f2".into()))?;
    let (f1, f2) = (poly(a.trim())?, poly(b.trim())?);
    if let Some(c) = curve {
        if poly(c)? != f1.mul(&f2) {
            return Err(CliError::Usage("curve is not the product of the factors".into()));
        }
    }
    let places: Vec<Place> = places.iter().map(|p| p.parse::<Place>().map_err(CliError::Usage)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut passing = Vec::new();
    let mut genera = None;
    for d in ratpoints::descent_twists(bad) {
        let sys = ratpoints::build_cover(&f1, &f2, &d)?;
        genera = Some((sys.base_genus, sys.cover_genus));
        let mut per_place = serde_json::Map::new();
        let mut everywhere = true;
        for &pl in &places {
            let (x, y) = sys.locally_soluble(pl);
            everywhere &= x && y;
            per_place.insert(pl.to_string(), json!([x, y]));
        }
        if everywhere {
            passing.push(d.clone());
        }
        rows.push(json!({ "d": s(&d), "equations": sys.equations(), "soluble": per_place, "everywhere": everywhere }));
    }
    let product = f1.mul(&f2);
    let result = json!({
        "curve": product.to_string(),
        "base_genus": genera.map(|g| g.0),
        "cover_genus": genera.map(|g| g.1),
        "twists": rows,
        "passing": strs(&passing),
    });
    let inputs = json!({
        "factors": [f1.to_string(), f2.to_string()],
        "bad_primes": bad,
        "places": strs(&places),
    });
    Ok(done(inputs, "etale descent twists", result))
}

fn entangle_pair(pair: &str) -> Result<Output, CliError> {
    let (a, b) = pair.split_once(',').ok_or_else(|| CliError::Usage("--pair expects A,B".into()))?;
    let rep = entangle::goursat_filter(a.trim(), b.trim())?;
    let result = serde_json::to_value(&rep).expect("report serializes");
    Ok(done(json!({ "pair": [a.trim(), b.trim()] }), "Goursat filter", result))
}

fn curve_json(e: &models::EllipticQ) -> Value {
    json!({ "equation": e.to_string(), "a4": s(&e.a4), "a6": s(&e.a6), "discriminant": s(e.discriminant()), "j": s(e.j_invariant()) })
}

fn gauss(p: u64, ts: &[String]) -> Result<Output, CliError> {
    let gp = entangle::gauss_k(p)?;
    let rep = entangle::gauss_cubic(&gp)?;
    let e = entangle::gauss_curve(&gp)?;
    let mut family = Vec::new();
    for t in ts {
        let tv = parse_rat(t.trim())?;
        let row = match entangle::rubin_silverberg_et(&gp, &tv) {
            Ok(et) => {
                let chk = entangle::two_division_check(&gp, &tv)?;
                json!({ "t": s(&tv), "curve": curve_json(&et), "two_division": chk })
            }
            Err(EntangleError::Degenerate(why)) => json!({ "t": s(&tv), "error": why }),
            Err(e) => return Err(e.into()),
        };
        family.push(row);
    }
    let result = json!({
        "params": { "p": gp.p, "k": gp.k, "N": gp.n },
        "cubic": {
            "printed": rep.printed.to_string_var("X"),
            "corrected": rep.corrected.to_string_var("X"),
            "periods": rep.periods.to_string_var("X"),
            "printed_disc": s(&rep.printed_disc),
            "corrected_disc": s(&rep.corrected_disc),
            "printed_disc_square": rep.printed_disc_square,
            "corrected_disc_square": rep.corrected_disc_square,
            "status": rep.status,
            "curve_matches_corrected": rep.curve_matches_corrected,
            "curve_matches_printed": rep.curve_matches_printed,
        },
        "curve": curve_json(&e),
        "rubin_silverberg": family,
    });
    if rep.status == CubicStatus::SignDiscrepancy {
        log::info!("p = {p}: printed cubic differs from the period polynomial by the sign of its X term");
    }
    Ok(done(json!({ "prime": p, "t": ts }), "Gauss period cubic and Rubin-Silverberg family", result))
}

fn braujones(t: &str, level6: bool) -> Result<Output, CliError> {
    let tv = parse_rat(t.trim())?;
    let inputs = json!({ "t": s(&tv), "level6": level6 });
    if level6 {
        let sv = entangle::xhpp_solve(&tv)?;
        let j = entangle::xhpp_j(&tv)?;
        let result = json!({ "j": s(&j), "s": strs(&sv), "count": sv.len() });
        return Ok(done(inputs, "level-6 cover over the level-3 parameter", result));
    }
    let result = match entangle::brau_jones_j(&tv) {
        Ok(j) => json!({
            "status": "OK",
            "j": s(&j),
            "class": sieve::classify_j(&Eval::Value(j.clone())),
        }),
        Err(EntangleError::Excluded(_)) => {
            let why = if tv.is_zero() { "degenerate: j = 0" } else { "CM: j = 1728" };
            json!({ "status": "EXCLUDED", "reason": why })
        }
        Err(e) => return Err(e.into()),
    };
    Ok(done(inputs, "Brau-Jones j-family", result))
}

fn census(left: &str, level: u32, user: &UserMaps) -> Result<Output, CliError> {
    let mut rows = Vec::new();
    let mut genera = Vec::new();
    for e in gl2cat::catalog_level(level)? {
        let reference = format!("{level}:{}", e.name);
        let row = match JMap::from_ref(&e.jmap)? {
            Some(JMap::RatFunc(_)) => match composite(left, &reference, user) {
                Ok(m) => {
                    if let Some(g) = m.genus() {
                        genera.push(g);
                    }
                    composite_json(&m)
                }
                Err(err) => json!({ "right": reference, "error": err.to_string() }),
            },
            Some(JMap::Constant(c)) => json!({ "right": reference, "skipped": format!("constant j = {c}") }),
            Some(JMap::Elliptic11) => json!({ "right": reference, "skipped": "j-map on an elliptic curve" }),
            None => json!({ "right": reference, "skipped": "no j-map" }),
        };
        rows.push(row);
    }
    genera.sort();
    let result = json!({ "rows": rows, "genera": genera });
    Ok(done(json!({ "pair_left": left, "level": level }), "composite genus census", result))
}
