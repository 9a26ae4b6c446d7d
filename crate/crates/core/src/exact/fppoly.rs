use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{BigRat, ExactError, QPoly};

/// Modular exponentiation for word-size primes.
pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % p as i128, p as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(p as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Legendre symbol for an odd prime `p`: -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Reduce a rational number mod `p`; `None` when `p` divides the denominator.
pub fn rat_mod(r: &BigRat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64().unwrap();
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    Some(mul_mod(n, inv_mod(d, p)?, p))
}

/// Polynomial over F_p with coefficients in `[0, p)`, increasing degree,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus out of range");
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64s(p: u64, c: &[i64]) -> Self {
        let c = c.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect();
        Self::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, vec![])
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, a: u64) -> Self {
        Self::new(p, vec![a])
    }

    /// Reduction of a rational polynomial; fails if `p` divides a denominator.
    pub fn from_qpoly(f: &QPoly, p: u64) -> Result<Self, ExactError> {
        let mut c = Vec::with_capacity(f.deg_i().max(0) as usize + 1);
        for v in f.coeffs() {
            c.push(rat_mod(&v, p).ok_or(ExactError::NotIntegralAt(p))?);
        }
        Ok(Self::new(p, c))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % p).collect();
        FpPoly::new(p, c)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().map(|&v| (p - v) % p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n).map(|i| (self.coeff(i) + p - o.coeff(i)) % p).collect();
        FpPoly::new(p, c)
    }

    pub fn scale(&self, a: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().map(|&v| mul_mod(v, a, p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] += a as u128 * b as u128;
            }
            if i % 64 == 63 {
                for v in out.iter_mut() {
                    *v %= p as u128;
                }
            }
        }
        FpPoly::new(p, out.into_iter().map(|v| (v % p as u128) as u64).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).unwrap();
        self.scale(inv)
    }

    pub fn divrem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly), ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let p = self.p;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((FpPoly::zero(p), self.clone()));
        }
        let inv = inv_mod(d.leading(), p).unwrap();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            if c != 0 {
                for (j, &v) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mul_mod(c, v, p)) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((FpPoly::new(p, q), FpPoly::new(p, r)))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).expect("nonzero divisor").1
    }

    pub fn div_exact(&self, d: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &v)| mul_mod(v, i as u64 % p, p)).collect();
        FpPoly::new(p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c.iter().rev().fold(0, |acc, &v| (mul_mod(acc, x, p) + v) % p)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let p = self.p as u128;
        let f = self.monic();
        let x = FpPoly::x(self.p);
        // x^(p^n) == x mod f
        let mut xp = x.clone();
        for _ in 0..n {
            xp = xp.powmod(p, &f);
        }
        if xp.sub(&x).rem(&f) != FpPoly::zero(self.p) {
            return false;
        }
        for q in prime_factors_usize(n) {
            let mut y = x.clone();
            for _ in 0..(n / q) {
                y = y.powmod(p, &f);
            }
            if y.sub(&x).gcd(&f).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Roots in F_p, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for i in (0..self.c.len()).rev() {
            let v = self.c[i];
            if v == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (v, mono.is_empty()) {
                (_, true) => v.to_string(),
                (1, false) => mono,
                (_, false) => format!("{v}*{mono}"),
            });
        }
        parts.join("+")
    }
}

fn prime_factors_usize(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[{}]({})", self.p, self.to_string_var("x"))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}
