//! Torsion bounds from local Jacobian orders, the rank-0 sieve against a
//! single known point, and cusp/CM classification of j-values.

#[cfg(test)]
mod tests;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rat_mod, BigRat, Eval, QPoly};
use crate::ffcurves::{self, cantor_add, class_order, CurveFp, FfError, MumfordDivisor};
use crate::par;
use crate::ratpoints::RationalPoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SieveError {
    #[error("need at least 2 usable primes, got {0}")]
    TooFewPrimes(usize),
    #[error("base point is not on the curve")]
    BaseNotOnCurve,
    #[error("the sieve needs an odd-degree model")]
    EvenDegree,
    #[error("group order {0} too large to factor")]
    OrderTooLarge(u128),
    #[error(transparent)]
    Ff(#[from] FfError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionBound {
    pub bound: u128,
    /// `(p, #J(F_p))` for the primes used.
    pub orders: Vec<(u64, u128)>,
    pub skipped: Vec<u64>,
}

/// gcd of `#J(F_p)` over the good odd primes in `primes`.
pub fn torsion_bound(w: &QPoly, primes: &[u64]) -> Result<TorsionBound, SieveError> {
    let results = par::map(primes, |&p| (p, ffcurves::jacobian_order(w, p)));
    let mut orders = Vec::new();
    let mut skipped = Vec::new();
    for (p, r) in results {
        match r {
            Ok(n) => orders.push((p, n)),
            Err(FfError::BadPrime(_)) | Err(FfError::NotPrime(_)) => {
                log::warn!("skipping p = {p}: not a good odd prime");
                skipped.push(p);
            }
            Err(e) => return Err(e.into()),
        }
    }
    if orders.len() < 2 {
        return Err(SieveError::TooFewPrimes(orders.len()));
    }
    let bound = orders.iter().fold(0u128, |g, &(_, n)| num_integer::Integer::gcd(&g, &n));
    Ok(TorsionBound { bound, orders, skipped })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SieveStatus {
    #[serde(rename = "UNIQUE_POINT")]
    UniquePoint,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    pub p: u64,
    pub group_order: u128,
    pub points: usize,
    /// Exact orders of `[P - base]` over `P` in `C(F_p)`.
    pub orders: BTreeSet<u64>,
    /// Exact orders of `[P - Q]` over all pairs, when `C(F_p)` is small.
    pub pair_orders: Option<BTreeSet<u64>>,
}

/// Pairwise differences are only tabulated up to this many points.
pub const PAIR_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SieveVerdict {
    pub status: SieveStatus,
    pub bound: u128,
    pub evidence: Vec<PrimeEvidence>,
    /// Orders dividing the bound that survive every prime.
    pub surviving: BTreeSet<u64>,
    pub skipped: Vec<u64>,
}

fn reduce_point(curve: &std::sync::Arc<CurveFp>, pt: &RationalPoint) -> Result<MumfordDivisor, SieveError> {
    match pt {
        RationalPoint::Infinity { .. } => Ok(MumfordDivisor::identity(curve)),
        RationalPoint::Affine { x, y } => {
            let p = curve.p();
            let (Some(xm), Some(ym)) = (rat_mod(x, p), rat_mod(y, p)) else {
                return Err(FfError::BadPrime(p).into());
            };
            Ok(MumfordDivisor::from_point(curve, xm, ym)?)
        }
    }
}

/// Orders of `[P - base]` for every `P` in `C(F_p)`, odd-degree model.
pub fn order_set(w: &QPoly, base: &RationalPoint, p: u64) -> Result<PrimeEvidence, SieveError> {
    let f = ffcurves::reduce_mod(w, p)?;
    let curve = CurveFp::new(f)?;
    let n = ffcurves::jacobian_order(w, p)?;
    let n64 = u64::try_from(n).map_err(|_| SieveError::OrderTooLarge(n))?;
    let minus_base = reduce_point(&curve, base)?.neg();
    let mut divisors = vec![MumfordDivisor::identity(&curve)];
    for x in 0..p {
        let fx = curve.f.eval(x);
        if fx == 0 {
            divisors.push(MumfordDivisor::from_point(&curve, x, 0)?);
        } else if crate::exact::legendre(fx, p) == 1 {
            let y = ffcurves::sqrt_mod(fx, p);
            divisors.push(MumfordDivisor::from_point(&curve, x, y)?);
            divisors.push(MumfordDivisor::from_point(&curve, x, p - y)?);
        }
    }
    let points = divisors.len();
    let orders = par::map(&divisors, |d| {
        let cls = cantor_add(d, &minus_base).expect("same curve");
        class_order(&cls, n64)
    });
    let orders = orders.into_iter().collect::<Result<BTreeSet<u64>, _>>()?;
    let pair_orders = if points <= PAIR_LIMIT {
        let pairs: Vec<(usize, usize)> = (0..points).flat_map(|i| (0..points).map(move |j| (i, j))).collect();
        let o = par::map(&pairs, |&(i, j)| class_order(&cantor_add(&divisors[i], &divisors[j].neg()).expect("same curve"), n64));
        Some(o.into_iter().collect::<Result<BTreeSet<u64>, _>>()?)
    } else {
        None
    };
    Ok(PrimeEvidence { p, group_order: n, points, orders, pair_orders })
}

/// The rank-0 sieve: any rational point `P` has `[P - base]` torsion of order
/// dividing `bound`, and that order must appear in every `O_p`.
pub fn mw_sieve_rank0(w: &QPoly, base: &RationalPoint, bound: u128, primes: &[u64]) -> Result<SieveVerdict, SieveError> {
    if w.deg_i() % 2 == 0 {
        return Err(SieveError::EvenDegree);
    }
    if !base.lies_on(w) {
        return Err(SieveError::BaseNotOnCurve);
    }
    let mut evidence = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        match order_set(w, base, p) {
            Ok(e) => evidence.push(e),
            Err(SieveError::Ff(FfError::BadPrime(_))) | Err(SieveError::Ff(FfError::NotPrime(_))) => {
                log::warn!("skipping p = {p}: not a good odd prime");
                skipped.push(p);
            }
            Err(e) => return Err(e),
        }
    }
    let mut surviving: BTreeSet<u64> = (1..=bound.min(1 << 20) as u64).filter(|d| bound.is_multiple_of(*d as u128)).collect();
    for e in &evidence {
        surviving = surviving.intersection(&e.orders).cloned().collect();
    }
    let status = if bound == 1 || (!evidence.is_empty() && surviving.iter().all(|&d| d == 1)) {
        SieveStatus::UniquePoint
    } else {
        SieveStatus::Inconclusive
    };
    Ok(SieveVerdict { status, bound, evidence, surviving, skipped })
}

/// The 13 rational CM j-invariants with their discriminants.
pub const CM_TABLE: [(i64, &str); 13] = [
    (-3, "0"),
    (-4, "1728"),
    (-7, "-3375"),
    (-8, "8000"),
    (-11, "-32768"),
    (-12, "54000"),
    (-16, "287496"),
    (-19, "-884736"),
    (-27, "-12288000"),
    (-28, "16581375"),
    (-43, "-884736000"),
    (-67, "-147197952000"),
    (-163, "-262537412640768000"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JClass {
    Cusp,
    Cm(i64),
    Unknown,
}

pub fn cm_discriminant(j: &BigRat) -> Option<i64> {
    if !j.is_integer() {
        return None;
    }
    let n = j.to_integer();
    CM_TABLE.iter().find(|(_, v)| v.parse::<BigInt>().unwrap() == n).map(|(d, _)| *d)
}

pub fn classify_j(j: &Eval) -> JClass {
    match j {
        Eval::Pole => JClass::Cusp,
        Eval::Value(v) => cm_discriminant(v).map_or(JClass::Unknown, JClass::Cm),
    }
}

/// Whether `j - 1728` is a rational square, i.e. j is on the `t^2 + 1728` line.
pub fn square_lift_check(j: &BigRat) -> bool {
    let s = j - BigRat::from_integer(1728.into());
    if s < BigRat::zero() {
        return false;
    }
    crate::exact::exact_sqrt(s.numer()).is_some() && crate::exact::exact_sqrt(s.denom()).is_some()
}
