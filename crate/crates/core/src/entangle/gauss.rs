//! The cubic subfield of Q(zeta_p) for p = 1 mod 3, the elliptic curve on
//! its shifted cubic, and the Rubin-Silverberg family over it.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;
use serde::Serialize;

use super::{elliptic_short, EntangleError};
use crate::exact::{is_prime, pow_mod, BigRat, QPoly};
use crate::models::{is_rational_square, EllipticQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussParams {
    pub p: u64,
    pub k: i64,
    #[serde(rename = "N")]
    pub n: u64,
}

/// Every `(k, N)` with `N > 0` and `4p = (3k-2)^2 + 27N^2`.
pub fn gauss_k_solutions(p: u64) -> Vec<(i64, u64)> {
    let four_p = 4 * p as i64;
    let bound = (four_p as u64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for u in -bound..=bound {
        // u = 3k - 2
        if (u + 2).rem_euclid(3) != 0 {
            continue;
        }
        let rest = four_p - u * u;
        if rest <= 0 || rest % 27 != 0 {
            continue;
        }
        let n2 = (rest / 27) as u64;
        let n = n2.sqrt();
        if n * n == n2 {
            out.push(((u + 2) / 3, n));
        }
    }
    out
}

pub fn gauss_k(p: u64) -> Result<GaussParams, EntangleError> {
    if !is_prime(p) {
        return Err(EntangleError::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(EntangleError::NotOneModThree(p));
    }
    match gauss_k_solutions(p)[..] {
        [(k, n)] => Ok(GaussParams { p, k, n }),
        [] => Err(EntangleError::NoRepresentation(p)),
        _ => Err(EntangleError::Degenerate(format!("several representations for p = {p}"))),
    }
}

fn r(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

fn rq(a: i64, b: i64) -> BigRat {
    BigRat::new(a.into(), b.into())
}

/// `X^3 + X^2 + s (p-1) X / 3 - ((p-1)/3 + k p) / 9` for `s = +1` (as
/// printed) or `s = -1`.
fn cubic_with_sign(gp: &GaussParams, s: i64) -> QPoly {
    let p = gp.p as i64;
    QPoly::from_rats(vec![-(rq(p - 1, 3) + r(gp.k * p)) / r(9), rq(s * (p - 1), 3), r(1), r(1)])
}

/// Largest p for which the periods are computed exactly.
pub const PERIOD_LIMIT: u64 = 20_000;

/// Elements of `Z[x]/(x^p - 1)`.
fn cyc_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let p = a.len();
    let mut out = vec![0i64; p];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % p] += x * y;
            }
        }
    }
    out
}

/// The integer an element of `Z[zeta_p]` represents, if it is rational.
fn cyc_integer(a: &[i64]) -> Option<i64> {
    a[1..].iter().all(|&v| v == a[1]).then(|| a[0] - a[1])
}

fn primitive_root(p: u64) -> u64 {
    let q = p - 1;
    let mut fs = Vec::new();
    let mut m = q;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            fs.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        fs.push(m);
    }
    (2..p).find(|&g| fs.iter().all(|&f| pow_mod(g, q / f, p) != 1)).unwrap_or(1)
}

fn periods(p: u64) -> Vec<Vec<i64>> {
    let g = primitive_root(p);
    let mut eta = vec![vec![0i64; p as usize]; 3];
    let mut x = 1u64;
    for e in 0..p - 1 {
        eta[(e % 3) as usize][x as usize] += 1;
        x = x * g % p;
    }
    eta
}

/// `prod (X - eta_i)` over the three cubic Gaussian periods, computed exactly.
pub fn gaussian_period_polynomial(p: u64) -> Result<QPoly, EntangleError> {
    if !is_prime(p) {
        return Err(EntangleError::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(EntangleError::NotOneModThree(p));
    }
    if p > PERIOD_LIMIT {
        return Err(EntangleError::TooLarge(p));
    }
    let eta = periods(p);
    let e01 = cyc_mul(&eta[0], &eta[1]);
    let e02 = cyc_mul(&eta[0], &eta[2]);
    let e12 = cyc_mul(&eta[1], &eta[2]);
    let sum = |v: [&Vec<i64>; 3]| -> Vec<i64> { (0..p as usize).map(|i| v[0][i] + v[1][i] + v[2][i]).collect() };
    let bad = || EntangleError::Degenerate("symmetric function of periods is not rational".into());
    let e1 = cyc_integer(&sum([&eta[0], &eta[1], &eta[2]])).ok_or_else(bad)?;
    let e2 = cyc_integer(&sum([&e01, &e02, &e12])).ok_or_else(bad)?;
    let e3 = cyc_integer(&cyc_mul(&e01, &eta[2])).ok_or_else(bad)?;
    Ok(QPoly::from_i64s(&[-e3, e2, -e1, 1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CubicStatus {
    /// The printed cubic is the period polynomial.
    #[serde(rename = "CONSISTENT")]
    Consistent,
    /// The printed cubic is wrong; flipping the sign of its X term repairs it.
    #[serde(rename = "SIGN_DISCREPANCY")]
    SignDiscrepancy,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussCubicReport {
    pub params: GaussParams,
    /// As printed: `X^3 + X^2 + (p-1)X/3 - ((p-1)/3 + kp)/9`.
    pub printed: QPoly,
    /// With the sign of the X term flipped.
    pub corrected: QPoly,
    pub printed_disc: BigRat,
    pub corrected_disc: BigRat,
    pub printed_disc_square: bool,
    pub corrected_disc_square: bool,
    pub periods: QPoly,
    pub status: CubicStatus,
    /// `x^3 - (p/3) x + p(2-3k)/27` is the shift `X = x - 1/3` of this variant.
    pub curve_matches_corrected: bool,
    pub curve_matches_printed: bool,
}

/// The printed cubic with its validation against the Gaussian periods.
pub fn gauss_cubic(gp: &GaussParams) -> Result<GaussCubicReport, EntangleError> {
    let printed = cubic_with_sign(gp, 1);
    let corrected = cubic_with_sign(gp, -1);
    let periods = gaussian_period_polynomial(gp.p)?;
    let status = if printed == periods {
        CubicStatus::Consistent
    } else if corrected == periods {
        CubicStatus::SignDiscrepancy
    } else {
        CubicStatus::Mismatch
    };
    let e = gauss_curve(gp)?;
    let shift = QPoly::from_rats(vec![rq(1, 3), r(1)]);
    let curve_cubic = QPoly::from_rats(vec![e.a6.clone(), e.a4.clone(), BigRat::zero(), r(1)]);
    let shifted = curve_cubic.compose(&shift);
    let printed_disc = printed.discriminant();
    let corrected_disc = corrected.discriminant();
    Ok(GaussCubicReport {
        params: *gp,
        printed_disc_square: is_rational_square(&printed_disc),
        corrected_disc_square: is_rational_square(&corrected_disc),
        curve_matches_corrected: shifted == corrected,
        curve_matches_printed: shifted == printed,
        printed,
        corrected,
        printed_disc,
        corrected_disc,
        periods,
        status,
    })
}

/// `y^2 = x^3 - (p/3) x + p (2 - 3k) / 27`.
pub fn gauss_curve(gp: &GaussParams) -> Result<EllipticQ, EntangleError> {
    let p = gp.p as i64;
    elliptic_short(-rq(p, 3), rq(p * (2 - 3 * gp.k), 27))
}

/// `(A(t), B(t))` with `E_t: y^2 = x^3 + A x + B`, transcribed term by term;
/// `9/4k^2` is read as `(9/4) k^2`.
pub fn rubin_silverberg_coefficients(gp: &GaussParams, t: &BigRat) -> Result<(BigRat, BigRat), EntangleError> {
    let p = BigRat::from_integer(BigInt::from(gp.p));
    let k = r(gp.k);
    let k2 = &k * &k;
    let t2 = t * t;
    let t3 = &t2 * t;
    let den = &p - rq(9, 4) * &k2 + r(3) * &k - r(1);
    if den.is_zero() {
        return Err(EntangleError::ZeroDenominator);
    }
    let a_num = r(1727) * &p * &t2 + &p + rq(9, 4) * &k2 * &t2 - rq(9, 4) * &k2 - r(3) * &k * &t2 + r(3) * &k + &t2 - r(1);
    let b_num1 = r(-1727) * &p * &t3 - r(5181) * &p * &t2 + r(3) * &p * t + &p - rq(9, 4) * &k2 * &t3 - rq(27, 4) * &k2 * &t2;
    let b_num2 = -rq(27, 4) * &k2 * t - rq(9, 4) * &k2 + r(3) * &k * &t3 + r(9) * &k * &t2 + r(9) * &k * t + r(3) * &k
        - &t3
        - r(3) * &t2
        - r(3) * t
        - r(1);
    Ok((a_num / &den, (b_num1 + b_num2) / &den))
}

pub fn rubin_silverberg_et(gp: &GaussParams, t: &BigRat) -> Result<EllipticQ, EntangleError> {
    let (a, b) = rubin_silverberg_coefficients(gp, t)?;
    elliptic_short(a, b)
}

/// Comparison of the cubic `x^3 + A x + B` of `E_t` with the period cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoDivisionCheck {
    pub irreducible: bool,
    pub disc_square: bool,
    /// Same number of roots mod every good prime below `SPLIT_PRIMES_BELOW`.
    pub splits_like_periods: bool,
}

pub const SPLIT_PRIMES_BELOW: u64 = 200;

fn root_count(f: &QPoly, l: u64) -> Option<usize> {
    let fp = crate::exact::FpPoly::from_qpoly(f, l).ok()?;
    (fp.degree() == f.degree()).then(|| (0..l).filter(|&x| fp.eval(x) == 0).count())
}

pub fn two_division_check(gp: &GaussParams, t: &BigRat) -> Result<TwoDivisionCheck, EntangleError> {
    let (a, b) = rubin_silverberg_coefficients(gp, t)?;
    let cubic = QPoly::from_rats(vec![b, a, BigRat::zero(), r(1)]);
    let periods = gaussian_period_polynomial(gp.p)?;
    let irreducible = crate::exact::rational_roots(&cubic)?.is_empty();
    let disc = cubic.discriminant();
    let splits_like_periods =
        crate::exact::primes_up_to(SPLIT_PRIMES_BELOW).into_iter().filter(|&l| l > 3 && l != gp.p).all(|l| {
            match (root_count(&cubic, l), root_count(&periods, l)) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        });
    Ok(TwoDivisionCheck { irreducible, disc_square: is_rational_square(&disc), splits_like_periods })
}
