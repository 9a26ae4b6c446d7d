//! Reduction of hyperelliptic models mod p: point counts, zeta numerators,
//! Jacobian orders and Cantor arithmetic.

mod binomial;
mod cantor;
mod charpoly;
mod fq;
mod lsum;

#[cfg(test)]
mod tests;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{legendre, ExactError, FpPoly, QPoly};

pub use binomial::{binomial_counts, binomial_shape};
pub use cantor::{
    all_divisors, cantor_add, cantor_double, cantor_mul, class_order, random_divisor, sqrt_mod, CurveFp, MumfordDivisor,
};
pub use charpoly::{factor_monic, CharpolyReport, IrreducibilityProof};
pub use fq::{Fq, FqElem};
pub use lsum::l_coefficients;

/// Exhaustive counts stop here.
pub const COUNT_LIMIT: u64 = 1_000_000;
/// Character sums over monic polynomials of degree g stop at p^g beyond this.
pub const LSUM_LIMIT: u64 = 100_000_000;
pub const MAX_GENUS: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("bad reduction at p = {0}")]
    BadPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("genus {0} above the supported bound")]
    GenusTooLarge(usize),
    #[error("modulus is not irreducible")]
    NotIrreducible,
    #[error("divisors live on different curves")]
    MismatchedCurves,
    #[error("point or divisor not on the curve")]
    NotOnCurve,
    #[error("Cantor arithmetic needs an odd-degree model")]
    EvenDegreeModel,
    #[error("the given order does not annihilate the class")]
    NotAnnihilated,
    #[error("constant or zero polynomial")]
    Degenerate,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZetaMethod {
    /// Counts over F_{p^r}, r <= g, by enumeration.
    Enumeration,
    /// Sums of the quadratic character over monic polynomials.
    CharacterSum,
    /// Jacobi sums on a binomial model.
    JacobiSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaData {
    pub p: u64,
    pub genus: usize,
    /// N_r for r = 1..g.
    pub counts: Vec<i128>,
    /// Ascending coefficients, length 2g + 1.
    pub p1: Vec<i128>,
    pub method: ZetaMethod,
}

impl ZetaData {
    pub fn p1_at_one(&self) -> i128 {
        self.p1.iter().sum()
    }

    pub fn jacobian_order(&self) -> u128 {
        self.p1_at_one() as u128
    }

    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus;
        (0..=g).all(|i| self.p1[2 * g - i] == (self.p as i128).pow((g - i) as u32) * self.p1[i])
    }

    /// |N_r - (p^r + 1)| <= 2g p^(r/2)
    pub fn hasse_weil_holds(&self) -> bool {
        self.counts.iter().enumerate().all(|(i, &n)| {
            let r = i as u32 + 1;
            let q = (self.p as i128).pow(r);
            let dev = (n - q - 1) as f64;
            dev * dev <= (2.0 * self.genus as f64).powi(2) * (q as f64) * (1.0 + 1e-12)
        })
    }
}

pub fn genus_of(w: &QPoly) -> Result<usize, FfError> {
    let d = w.degree().ok_or(FfError::Degenerate)?;
    if d == 0 {
        return Err(FfError::Degenerate);
    }
    Ok((d - 1) / 2)
}

/// `w mod p`, or BAD_PRIME when p = 2, p divides a denominator, the degree
/// drops, or the reduction is not squarefree.
pub fn reduce_mod(w: &QPoly, p: u64) -> Result<FpPoly, FfError> {
    if !crate::exact::is_prime(p) {
        return Err(FfError::NotPrime(p));
    }
    if p == 2 {
        return Err(FfError::BadPrime(p));
    }
    let d = w.degree().ok_or(FfError::Degenerate)?;
    let f = FpPoly::from_qpoly(w, p).map_err(|_| FfError::BadPrime(p))?;
    if f.degree() != Some(d) || !f.is_squarefree() {
        return Err(FfError::BadPrime(p));
    }
    Ok(f)
}

/// Whether the smooth model of `y^2 = w` has good reduction at p.
pub fn is_good_prime(w: &QPoly, p: u64) -> bool {
    reduce_mod(w, p).is_ok()
}

/// `#C(F_{p^r})` on the smooth projective model of `y^2 = w`, by enumeration.
pub fn count_points(w: &QPoly, p: u64, r: usize) -> Result<i128, FfError> {
    let f = reduce_mod(w, p)?;
    count_points_fp(&f, r)
}

pub fn count_points_fp(f: &FpPoly, r: usize) -> Result<i128, FfError> {
    let p = f.modulus();
    let q = p.checked_pow(r as u32).filter(|&q| q <= COUNT_LIMIT).ok_or_else(|| FfError::TooLarge(format!("{p}^{r} points")))?;
    let d = f.degree().ok_or(FfError::Degenerate)?;
    let chi_lc = legendre(f.leading(), p);
    let at_infinity: i128 = if d % 2 == 1 { 1 } else { 1 + chi_lc.pow(r as u32) as i128 };
    let affine: i64 = if r == 1 {
        let mut sq = vec![false; p as usize];
        for y in 0..p {
            sq[(y * y % p) as usize] = true;
        }
        crate::par::sum_range(p, |a, b| {
            (a..b)
                .map(|x| {
                    let v = f.eval(x);
                    if v == 0 {
                        1
                    } else if sq[v as usize] {
                        2
                    } else {
                        0
                    }
                })
                .sum()
        })
    } else {
        let k = Fq::new(p, r)?;
        let mut sq = vec![false; q as usize];
        for i in 0..q {
            let y = k.from_index(i);
            sq[k.index(&k.mul(&y, &y)) as usize] = true;
        }
        crate::par::sum_range(q, |a, b| {
            (a..b)
                .map(|i| {
                    let v = k.eval(f, &k.from_index(i));
                    if k.is_zero(&v) {
                        1
                    } else if sq[k.index(&v) as usize] {
                        2
                    } else {
                        0
                    }
                })
                .sum()
        })
    };
    Ok(affine as i128 + at_infinity)
}

/// Power sums of the Frobenius roots from P_1 coefficients, `s_1..s_k`.
fn power_sums(a: &[i128], k: usize) -> Vec<i128> {
    let coef = |i: usize| a.get(i).copied().unwrap_or(0);
    let mut s = vec![0i128; k + 1];
    for n in 1..=k {
        let mut v = -(n as i128) * coef(n);
        for i in 1..n {
            v -= coef(i) * s[n - i];
        }
        s[n] = v;
    }
    s.remove(0);
    s
}

/// P_1 from N_1..N_g by Newton's identities and the functional equation.
pub fn p1_from_counts(p: u64, genus: usize, counts: &[i128]) -> Result<Vec<i128>, FfError> {
    if counts.len() < genus {
        return Err(FfError::Inconsistent("too few counts".into()));
    }
    let s: Vec<i128> = (0..genus).map(|i| (p as i128).pow(i as u32 + 1) + 1 - counts[i]).collect();
    let mut a = vec![0i128; 2 * genus + 1];
    a[0] = 1;
    for n in 1..=genus {
        let mut v = s[n - 1];
        for i in 1..n {
            v += a[i] * s[n - i - 1];
        }
        if v % n as i128 != 0 {
            return Err(FfError::Inconsistent("counts violate Newton's identities".into()));
        }
        a[n] = -v / n as i128;
    }
    complete(p, genus, &mut a);
    Ok(a)
}

fn complete(p: u64, genus: usize, a: &mut [i128]) {
    for i in 0..genus {
        a[2 * genus - i] = (p as i128).pow((genus - i) as u32) * a[i];
    }
}

/// N_1..N_k from P_1.
pub fn counts_from_p1(p: u64, p1: &[i128], k: usize) -> Vec<i128> {
    power_sums(p1, k).iter().enumerate().map(|(i, s)| (p as i128).pow(i as u32 + 1) + 1 - s).collect()
}

fn finish(p: u64, genus: usize, p1: Vec<i128>, method: ZetaMethod) -> Result<ZetaData, FfError> {
    let z = ZetaData { p, genus, counts: counts_from_p1(p, &p1, genus), p1, method };
    if !z.functional_equation_holds() || !z.hasse_weil_holds() || z.p1_at_one() <= 0 {
        return Err(FfError::Inconsistent(format!("zeta data at p = {p} fails the Weil checks")));
    }
    Ok(z)
}

/// Zeta numerator of the smooth model of `y^2 = w` at a good odd prime.
pub fn zeta_numerator(w: &QPoly, p: u64) -> Result<ZetaData, FfError> {
    let f = reduce_mod(w, p)?;
    zeta_numerator_fp(&f)
}

pub fn zeta_numerator_fp(f: &FpPoly) -> Result<ZetaData, FfError> {
    let p = f.modulus();
    let d = f.degree().ok_or(FfError::Degenerate)?;
    let g = d.saturating_sub(1) / 2;
    if g > MAX_GENUS {
        return Err(FfError::GenusTooLarge(g));
    }
    if let Some((c, a, n)) = binomial_shape(f) {
        if let Ok(counts) = binomial_counts(p, c, a, n, g) {
            let p1 = p1_from_counts(p, g, &counts)?;
            return finish(p, g, p1, ZetaMethod::JacobiSum);
        }
    }
    if p.checked_pow(g as u32).is_none_or(|q| q > LSUM_LIMIT) {
        return Err(FfError::TooLarge(format!("character sums over {p}^{g} polynomials")));
    }
    let c = l_coefficients(f, g);
    // P_1 = L for odd degree, L / (1 - eps T) for even degree
    let mut a = vec![0i128; 2 * g + 1];
    if d % 2 == 1 {
        for k in 0..=g {
            a[k] = c[k] as i128;
        }
    } else {
        let eps = legendre(f.leading(), p) as i128;
        let mut acc = 0i128;
        for k in 0..=g {
            acc = acc * eps + c[k] as i128;
            a[k] = acc;
        }
    }
    complete(p, g, &mut a);
    finish(p, g, a, ZetaMethod::CharacterSum)
}

/// Zeta numerator from enumerated counts; for cross-checks on small fields.
pub fn zeta_numerator_by_counting(w: &QPoly, p: u64) -> Result<ZetaData, FfError> {
    let f = reduce_mod(w, p)?;
    let g = genus_of(w)?;
    let counts = (1..=g).map(|r| count_points_fp(&f, r)).collect::<Result<Vec<_>, _>>()?;
    let p1 = p1_from_counts(p, g, &counts)?;
    finish(p, g, p1, ZetaMethod::Enumeration)
}

/// `#Jac(F_p) = P_1(1)`.
pub fn jacobian_order(w: &QPoly, p: u64) -> Result<u128, FfError> {
    Ok(zeta_numerator(w, p)?.jacobian_order())
}

/// P_1 reversed to the characteristic polynomial of Frobenius, with a
/// factorization over Z.
pub fn frobenius_charpoly_check(w: &QPoly, p: u64) -> Result<CharpolyReport, FfError> {
    let z = zeta_numerator(w, p)?;
    Ok(charpoly::factor_report(p, &z.p1))
}

pub fn charpoly_report_from_p1(p: u64, p1: &[i128]) -> CharpolyReport {
    charpoly::factor_report(p, p1)
}
