use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BigRat, ExactError};

/// Univariate polynomial over Q, stored as `content * prim` where `prim` is
/// a primitive integer polynomial with positive leading coefficient.
///
/// The zero polynomial has `content == 0` and an empty `prim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    content: BigRat,
    prim: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { content: BigRat::zero(), prim: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_rats(vec![c])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_ints(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Coefficients in increasing degree.
    pub fn from_ints(c: Vec<BigInt>) -> Self {
        Self::from_scaled_ints(c, &BigInt::one())
    }

    /// Builds `(sum c_i x^i) / den`.
    fn from_scaled_ints(mut c: Vec<BigInt>, den: &BigInt) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            return Self::zero();
        }
        let mut g = BigInt::zero();
        for v in &c {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if c.last().unwrap().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for v in c.iter_mut() {
                *v = &*v / &g;
            }
        }
        QPoly { content: BigRat::new(g, den.clone()), prim: c }
    }

    pub fn from_rats(c: Vec<BigRat>) -> Self {
        let mut l = BigInt::one();
        for v in &c {
            if !v.is_zero() {
                l = l.lcm(v.denom());
            }
        }
        let ints = c.iter().map(|v| v.numer() * (&l / v.denom())).collect();
        Self::from_scaled_ints(ints, &l)
    }

    pub fn is_zero(&self) -> bool {
        self.prim.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.prim.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> i64 {
        self.prim.len() as i64 - 1
    }

    pub fn content(&self) -> &BigRat {
        &self.content
    }

    /// Primitive integer part (positive leading coefficient).
    pub fn primitive(&self) -> &[BigInt] {
        &self.prim
    }

    pub fn primitive_poly(&self) -> QPoly {
        if self.is_zero() {
            return Self::zero();
        }
        QPoly { content: BigRat::one(), prim: self.prim.clone() }
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        match self.prim.get(i) {
            Some(v) => &self.content * BigRat::from_integer(v.clone()),
            None => BigRat::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRat> {
        (0..self.prim.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> BigRat {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => BigRat::zero(),
        }
    }

    /// Sign of the leading coefficient (0 for the zero polynomial).
    pub fn lc_sign(&self) -> i32 {
        match self.content.cmp(&BigRat::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.content.is_integer() {
            return None;
        }
        let c = self.content.to_integer();
        Some(self.prim.iter().map(|v| v * &c).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.content.is_integer()
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.prim.last().unwrap().clone();
        QPoly { content: BigRat::new(BigInt::one(), lc), prim: self.prim.clone() }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, c: &BigRat) -> QPoly {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let content = &self.content * c;
        QPoly { content, prim: self.prim.clone() }
    }

    /// Positive rescaling to integer coefficients (keeps the sign).
    fn sign_normal(&self) -> QPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let s = BigRat::from_integer(BigInt::from(self.lc_sign()));
        QPoly { content: s, prim: self.prim.clone() }
    }

    pub fn neg(&self) -> QPoly {
        QPoly { content: -self.content.clone(), prim: self.prim.clone() }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let l = self.content.denom().lcm(other.content.denom());
        let a = self.content.numer() * (&l / self.content.denom());
        let b = other.content.numer() * (&l / other.content.denom());
        let n = self.prim.len().max(other.prim.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, v) in self.prim.iter().enumerate() {
            out[i] += &a * v;
        }
        for (i, v) in other.prim.iter().enumerate() {
            out[i] += &b * v;
        }
        Self::from_scaled_ints(out, &l)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Gauss: product of primitive polynomials is primitive
        QPoly { content: &self.content * &other.content, prim: int_mul(&self.prim, &other.prim) }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.prim.len() <= 1 {
            return Self::zero();
        }
        let d: Vec<BigInt> = self.prim.iter().enumerate().skip(1).map(|(i, v)| v * BigInt::from(i)).collect();
        Self::from_ints(d).scale(&self.content)
    }

    /// Euclidean division over Q.
    pub fn divrem(&self, d: &QPoly) -> Result<(QPoly, QPoly), ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let mut r = self.coeffs();
        let dc = d.coeffs();
        let lc_inv = dc[dd].recip();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![BigRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, v) in dc.iter().enumerate() {
                    r[k + j] -= &c * v;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((QPoly::from_rats(q), QPoly::from_rats(r)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &QPoly) -> Result<QPoly, ExactError> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(ExactError::InexactDivision);
        }
        Ok(q)
    }

    pub fn rem(&self, d: &QPoly) -> Result<QPoly, ExactError> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd, via a primitive remainder sequence on the integer parts.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.prim.clone();
        let mut b = other.prim.clone();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_prem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        QPoly::from_ints(a).monic()
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, t: &BigRat) -> BigRat {
        if self.is_zero() {
            return BigRat::zero();
        }
        let (a, b) = (t.numer(), t.denom());
        // homogeneous Horner: sum p_i a^i b^(n-i)
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for (k, v) in self.prim.iter().rev().enumerate() {
            if k == 0 {
                acc = v.clone();
            } else {
                bpow *= b;
                acc = acc * a + v * &bpow;
            }
        }
        &self.content * BigRat::new(acc, bpow)
    }

    pub fn eval_int(&self, t: &BigInt) -> BigRat {
        self.eval(&BigRat::from_integer(t.clone()))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// `x^deg * self(1/x)`, padded to the supplied degree.
    pub fn reverse_to(&self, deg: usize) -> QPoly {
        let mut c = self.coeffs();
        c.resize(deg + 1, BigRat::zero());
        c.reverse();
        QPoly::from_rats(c)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Resultant over Q by the Euclidean algorithm.
    pub fn resultant(&self, other: &QPoly) -> BigRat {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return BigRat::zero();
        };
        if n == 0 {
            return pow_rat(&other.leading(), m as u32);
        }
        if m == 0 {
            return pow_rat(&self.leading(), n as u32);
        }
        if m < n {
            let s = if (m * n) % 2 == 1 { -BigRat::one() } else { BigRat::one() };
            return s * other.resultant(self);
        }
        // res(f, g) = (-1)^{mn} lc(g)^{m - deg r} res(g, r) with r = f mod g
        let r = self.rem(other).unwrap();
        let Some(k) = r.degree() else {
            return BigRat::zero();
        };
        let s = if (m * n) % 2 == 1 { -BigRat::one() } else { BigRat::one() };
        s * pow_rat(&other.leading(), (m - k) as u32) * other.resultant(&r)
    }

    /// Discriminant `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigRat {
        let Some(n) = self.degree() else {
            return BigRat::zero();
        };
        if n == 0 {
            return BigRat::one();
        }
        let r = self.resultant(&self.derivative());
        let s = if (n * (n - 1) / 2) % 2 == 1 { -BigRat::one() } else { BigRat::one() };
        s * r / self.leading()
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        if self.deg_i() <= 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let at_neg = sign_changes(seq.iter().map(|p| {
            let s = p.lc_sign();
            if p.deg_i() % 2 == 1 {
                -s
            } else {
                s
            }
        }));
        let at_pos = sign_changes(seq.iter().map(|p| p.lc_sign()));
        at_neg - at_pos
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_real_roots_in(&self, a: &BigRat, b: &BigRat) -> usize {
        if self.deg_i() <= 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let sa = sign_changes(seq.iter().map(|p| rat_sign(&p.eval(a))));
        let sb = sign_changes(seq.iter().map(|p| rat_sign(&p.eval(b))));
        sa.saturating_sub(sb)
    }

    fn sturm_sequence(&self) -> Vec<QPoly> {
        let mut seq = vec![self.sign_normal(), self.derivative().sign_normal()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).unwrap();
            if r.is_zero() {
                break;
            }
            seq.push(r.neg().sign_normal());
        }
        seq
    }

    /// Render with the given variable name in the canonical text grammar.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for i in (0..self.prim.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }

    /// Coefficients as machine integers, when integral and small enough.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.integer_coeffs()?.iter().map(|v| v.to_i64()).collect()
    }
}

fn rat_sign(r: &BigRat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn sign_changes(it: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in it {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub(crate) fn pow_rat(r: &BigRat, e: u32) -> BigRat {
    num_traits::pow(r.clone(), e as usize)
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Pseudo-remainder of integer polynomials.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for v in r.iter_mut() {
            *v *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[k - db + j] -= &lr * y;
        }
        while r.last().is_some_and(|v| v.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return c;
    }
    let mut g = BigInt::zero();
    for v in &c {
        g = g.gcd(v);
    }
    if c.last().unwrap().is_negative() {
        g = -g;
    }
    c.iter().map(|v| v / &g).collect()
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self.to_string_var("x"))
    }
}
