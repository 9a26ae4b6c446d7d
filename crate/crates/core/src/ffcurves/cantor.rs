//! Mumford representatives and Cantor's algorithm on `y^2 = f(x)` over F_p,
//! deg f = 2g + 1.

use std::sync::Arc;

use rand::Rng;

use super::FfError;
use crate::exact::{factor_u64, legendre, FpPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFp {
    pub f: FpPoly,
    pub genus: usize,
}

impl CurveFp {
    pub fn new(f: FpPoly) -> Result<Arc<CurveFp>, FfError> {
        let d = f.degree().ok_or(FfError::Degenerate)?;
        if f.modulus() == 2 {
            return Err(FfError::BadPrime(2));
        }
        if d % 2 == 0 {
            return Err(FfError::EvenDegreeModel);
        }
        if !f.is_squarefree() {
            return Err(FfError::BadPrime(f.modulus()));
        }
        Ok(Arc::new(CurveFp { genus: (d - 1) / 2, f }))
    }

    pub fn p(&self) -> u64 {
        self.f.modulus()
    }
}

/// `(u, v)` with u monic, deg v < deg u and u | f - v^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    pub curve: Arc<CurveFp>,
    pub u: FpPoly,
    pub v: FpPoly,
}

impl MumfordDivisor {
    pub fn identity(curve: &Arc<CurveFp>) -> MumfordDivisor {
        let p = curve.p();
        MumfordDivisor { curve: curve.clone(), u: FpPoly::one(p), v: FpPoly::zero(p) }
    }

    /// `[P - inf]` for an affine point P.
    pub fn from_point(curve: &Arc<CurveFp>, x: u64, y: u64) -> Result<MumfordDivisor, FfError> {
        let p = curve.p();
        if curve.f.eval(x) != y % p * (y % p) % p {
            return Err(FfError::NotOnCurve);
        }
        let u = FpPoly::new(p, vec![(p - x % p) % p, 1]);
        Ok(MumfordDivisor { curve: curve.clone(), u, v: FpPoly::constant(p, y) })
    }

    pub fn new(curve: &Arc<CurveFp>, u: FpPoly, v: FpPoly) -> Result<MumfordDivisor, FfError> {
        let d = MumfordDivisor { curve: curve.clone(), u, v };
        if d.is_valid() {
            Ok(d)
        } else {
            Err(FfError::NotOnCurve)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    pub fn is_valid(&self) -> bool {
        let Some(du) = self.u.degree() else { return false };
        let monic = self.u.leading() == 1;
        let reduced = du <= self.curve.genus && self.v.deg_i() < du as i64;
        let divides = self.curve.f.sub(&self.v.mul(&self.v)).rem(&self.u).is_zero();
        monic && reduced && divides
    }

    pub fn neg(&self) -> MumfordDivisor {
        MumfordDivisor { curve: self.curve.clone(), u: self.u.clone(), v: self.v.neg().rem(&self.u) }
    }
}

fn reduce(curve: &CurveFp, mut u: FpPoly, mut v: FpPoly) -> (FpPoly, FpPoly) {
    v = v.rem(&u);
    while u.deg_i() > curve.genus as i64 {
        let u2 = curve.f.sub(&v.mul(&v)).div_exact(&u).monic();
        v = v.neg().rem(&u2);
        u = u2;
    }
    let u = u.monic();
    let v = v.rem(&u);
    (u, v)
}

pub fn cantor_add(d1: &MumfordDivisor, d2: &MumfordDivisor) -> Result<MumfordDivisor, FfError> {
    if d1.curve != d2.curve {
        return Err(FfError::MismatchedCurves);
    }
    let c = &d1.curve;
    let (d0, e1, e2) = d1.u.xgcd(&d2.u);
    let (d, c1, c2) = d0.xgcd(&d1.v.add(&d2.v));
    let s1 = c1.mul(&e1);
    let s2 = c1.mul(&e2);
    let u = d1.u.mul(&d2.u).div_exact(&d.mul(&d));
    let num = s1.mul(&d1.u).mul(&d2.v).add(&s2.mul(&d2.u).mul(&d1.v)).add(&c2.mul(&d1.v.mul(&d2.v).add(&c.f)));
    let v = num.div_exact(&d).rem(&u);
    let (u, v) = reduce(c, u, v);
    Ok(MumfordDivisor { curve: c.clone(), u, v })
}

pub fn cantor_double(d: &MumfordDivisor) -> MumfordDivisor {
    cantor_add(d, d).expect("same curve")
}

pub fn cantor_mul(d: &MumfordDivisor, mut n: u128) -> MumfordDivisor {
    let mut acc = MumfordDivisor::identity(&d.curve);
    let mut b = d.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = cantor_add(&acc, &b).expect("same curve");
        }
        n >>= 1;
        if n > 0 {
            b = cantor_double(&b);
        }
    }
    acc
}

/// Exact order of `d`, given a multiple `n` of it (typically the group order).
pub fn class_order(d: &MumfordDivisor, n: u64) -> Result<u64, FfError> {
    if n == 0 || !cantor_mul(d, n as u128).is_identity() {
        return Err(FfError::NotAnnihilated);
    }
    let mut ord = n;
    for (l, _) in factor_u64(n) {
        while ord.is_multiple_of(l) && cantor_mul(d, (ord / l) as u128).is_identity() {
            ord /= l;
        }
    }
    Ok(ord)
}

/// A random class: a signed sum of up to g random affine F_p-points.
pub fn random_divisor<R: Rng>(curve: &Arc<CurveFp>, rng: &mut R) -> MumfordDivisor {
    let p = curve.p();
    let mut acc = MumfordDivisor::identity(curve);
    for _ in 0..curve.genus {
        for _ in 0..64 {
            let x = rng.gen_range(0..p);
            let fx = curve.f.eval(x);
            if legendre(fx, p) < 0 {
                continue;
            }
            let y = sqrt_mod(fx, p);
            let y = if rng.gen_bool(0.5) { y } else { (p - y) % p };
            let pt = MumfordDivisor::from_point(curve, x, y).expect("on curve");
            acc = cantor_add(&acc, &pt).expect("same curve");
            break;
        }
    }
    acc
}

/// Square root mod an odd prime by search on small p, Tonelli-Shanks otherwise.
pub fn sqrt_mod(a: u64, p: u64) -> u64 {
    use crate::exact::{mul_mod, pow_mod};
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) < 0).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Every reduced divisor, by exhaustive search over (u, v). Tiny p and g only.
pub fn all_divisors(curve: &Arc<CurveFp>) -> Vec<MumfordDivisor> {
    let p = curve.p();
    let g = curve.genus;
    let mut out = vec![MumfordDivisor::identity(curve)];
    for du in 1..=g {
        for ui in 0..p.pow(du as u32) {
            let mut uc = digits(ui, p, du);
            uc.push(1);
            let u = FpPoly::new(p, uc);
            for vi in 0..p.pow(du as u32) {
                let v = FpPoly::new(p, digits(vi, p, du));
                if curve.f.sub(&v.mul(&v)).rem(&u).is_zero() {
                    out.push(MumfordDivisor { curve: curve.clone(), u: u.clone(), v });
                }
            }
        }
    }
    out
}

fn digits(mut i: u64, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = i % p;
            i /= p;
            d
        })
        .collect()
}
