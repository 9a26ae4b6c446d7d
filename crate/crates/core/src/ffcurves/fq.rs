//! Finite fields F_{p^r} as F_p[X]/(m) with m the lexicographically least
//! monic irreducible of degree r.

use super::FfError;
use crate::exact::{inv_mod, is_prime, FpPoly};

pub const MAX_DEGREE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    c: [u64; MAX_DEGREE],
}

impl FqElem {
    pub fn coeffs(&self, r: usize) -> &[u64] {
        &self.c[..r]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    r: usize,
    /// m_0..m_{r-1}; m is monic of degree r
    m: Vec<u64>,
}

impl Fq {
    pub fn new(p: u64, r: usize) -> Result<Fq, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        if r == 0 || r > MAX_DEGREE {
            return Err(FfError::TooLarge(format!("extension degree {r}")));
        }
        // coefficient vectors (c_{r-1}, ..., c_0) in lexicographic order
        let total = p.checked_pow(r as u32).ok_or_else(|| FfError::TooLarge(format!("{p}^{r}")))?;
        for idx in 0..total {
            let mut c = vec![0u64; r + 1];
            let mut k = idx;
            for ci in c.iter_mut().take(r) {
                *ci = k % p;
                k /= p;
            }
            c[r] = 1;
            let f = FpPoly::new(p, c.clone());
            if f.is_irreducible() {
                c.pop();
                return Ok(Fq { p, r, m: c });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn with_modulus(modulus: &FpPoly) -> Result<Fq, FfError> {
        if !modulus.is_irreducible() {
            return Err(FfError::NotIrreducible);
        }
        let f = modulus.monic();
        let r = f.degree().unwrap();
        if r > MAX_DEGREE {
            return Err(FfError::TooLarge(format!("extension degree {r}")));
        }
        Ok(Fq { p: f.modulus(), r, m: f.coeffs()[..r].to_vec() })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.r as u32)
    }

    pub fn modulus(&self) -> FpPoly {
        let mut c = self.m.clone();
        c.push(1);
        FpPoly::new(self.p, c)
    }

    pub fn zero(&self) -> FqElem {
        FqElem { c: [0; MAX_DEGREE] }
    }

    pub fn from_fp(&self, a: u64) -> FqElem {
        let mut e = self.zero();
        e.c[0] = a % self.p;
        e
    }

    pub fn one(&self) -> FqElem {
        self.from_fp(1)
    }

    /// The class of X.
    pub fn generator_x(&self) -> FqElem {
        if self.r == 1 {
            return self.from_fp(self.p - self.m[0] % self.p);
        }
        let mut e = self.zero();
        e.c[1] = 1;
        e
    }

    /// Element with base-p digits of `i` as coefficients.
    pub fn from_index(&self, mut i: u64) -> FqElem {
        let mut e = self.zero();
        for k in 0..self.r {
            e.c[k] = i % self.p;
            i /= self.p;
        }
        e
    }

    pub fn index(&self, a: &FqElem) -> u64 {
        a.c[..self.r].iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn from_poly(&self, f: &FpPoly) -> FqElem {
        let mut acc = self.zero();
        let x = self.generator_x();
        for &c in f.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, &x), &self.from_fp(c));
        }
        acc
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.c[..self.r].iter().all(|&v| v == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut e = self.zero();
        for i in 0..self.r {
            let s = a.c[i] + b.c[i];
            e.c[i] = if s >= self.p { s - self.p } else { s };
        }
        e
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let mut e = self.zero();
        for i in 0..self.r {
            e.c[i] = if a.c[i] == 0 { 0 } else { self.p - a.c[i] };
        }
        e
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let (p, r) = (self.p, self.r);
        let mut t = [0u64; 2 * MAX_DEGREE];
        for i in 0..r {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..r {
                t[i + j] = (t[i + j] + a.c[i] * b.c[j]) % p;
            }
        }
        for k in (r..2 * r - 1).rev() {
            let c = t[k];
            if c != 0 {
                for i in 0..r {
                    t[k - r + i] = (t[k - r + i] + (p - self.m[i]) * c) % p;
                }
            }
        }
        let mut e = self.zero();
        e.c[..r].copy_from_slice(&t[..r]);
        e
    }

    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut acc = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.r == 1 {
            return Some(self.from_fp(inv_mod(a.c[0], self.p)?));
        }
        Some(self.pow(a, self.order() as u128 - 2))
    }

    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p as u128)
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn quadratic_character(&self, a: &FqElem) -> i32 {
        if self.is_zero(a) {
            return 0;
        }
        let h = self.pow(a, (self.order() as u128 - 1) / 2);
        if h == self.one() {
            1
        } else {
            -1
        }
    }

    /// Evaluate an F_p polynomial at `x`.
    pub fn eval(&self, f: &FpPoly, x: &FqElem) -> FqElem {
        let mut acc = self.zero();
        for &c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc.c[0] = (acc.c[0] + c) % self.p;
        }
        acc
    }

    /// A generator of the multiplicative group, by trial.
    pub fn primitive_element(&self) -> FqElem {
        let q1 = self.order() - 1;
        let primes: Vec<u64> = crate::exact::factor_u64(q1).into_iter().map(|(f, _)| f).collect();
        (1..self.order())
            .map(|i| self.from_index(i))
            .find(|g| primes.iter().all(|&l| self.pow(g, (q1 / l) as u128) != self.one()))
            .expect("the multiplicative group is cyclic")
    }
}
