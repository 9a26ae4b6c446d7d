//! p-adic solubility of `y^2 = h(x)` by refining residue classes of x.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{legendre, QPoly};

fn val(v: &BigInt, p: u64) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v = v.clone();
    let mut e = 0;
    while (&v % &pb).is_zero() {
        v /= &pb;
        e += 1;
    }
    Some(e)
}

/// Whether an integer is a square in Q_p.
pub fn is_padic_square(v: &BigInt, p: u64) -> bool {
    let Some(e) = val(v, p) else { return true };
    if e % 2 == 1 {
        return false;
    }
    let u = v / num_traits::pow(BigInt::from(p), e as usize);
    if p == 2 {
        u.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        legendre(u.mod_floor(&BigInt::from(p)).to_u64().unwrap(), p) == 1
    }
}

/// Coefficients of `h(x0 + s t)` in t.
fn shift(h: &[BigInt], x0: &BigInt, s: &BigInt) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = Vec::new();
    for c in h.iter().rev() {
        // acc * (x0 + s t) + c
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] += a * x0;
            next[i + 1] += a * s;
        }
        next[0] += c;
        acc = next;
    }
    acc
}

struct Search<'a> {
    h: &'a [BigInt],
    p: u64,
    max_depth: u32,
    undecided: bool,
}

impl Search<'_> {
    fn class(&mut self, x0: &BigInt, k: u32) -> bool {
        let p = self.p;
        let pk = num_traits::pow(BigInt::from(p), k as usize);
        let b = shift(self.h, x0, &pk);
        let Some(v0) = val(&b[0], p) else { return true };
        let margin = if p == 2 { 3 } else { 1 };
        let rest = b[1..].iter().filter_map(|c| val(c, p)).min();
        if rest.is_none_or(|r| r >= v0 + margin) {
            return is_padic_square(&b[0], p);
        }
        // Hensel: a simple root inside the class
        if let Some(v1) = b.get(1).and_then(|c| val(c, p)) {
            let vd = v1 as i64 - k as i64;
            if vd >= 0 && v0 as i64 > 2 * vd && v0 as i64 - vd >= k as i64 {
                return true;
            }
        }
        if k >= self.max_depth {
            self.undecided = true;
            return false;
        }
        (0..p).any(|t| self.class(&(x0 + &pk * t), k + 1))
    }
}

/// `y^2 = h(x)` over Q_p on the smooth model, h integral and squarefree.
pub fn padic_soluble(h: &[BigInt], p: u64) -> bool {
    let n = h.len() - 1;
    let qh = QPoly::from_ints(h.to_vec());
    let disc = qh.discriminant();
    let vdisc = if disc.is_zero() { 0 } else { val(disc.numer(), p).unwrap_or(0) };
    let max_depth = 2 * vdisc + 2 + if p == 2 { 6 } else { 1 };
    let mut s = Search { h, p, max_depth, undecided: false };
    if s.class(&BigInt::zero(), 0) {
        return true;
    }
    // x = 1/z with z in p Z_p, on z^(2k) h(1/z)
    let even = n + n % 2;
    let rev: Vec<BigInt> = (0..=even).map(|i| if even - i <= n { h[even - i].clone() } else { BigInt::zero() }).collect();
    let mut s2 = Search { h: &rev, p, max_depth, undecided: false };
    let found = s2.class(&BigInt::zero(), 1);
    if !found && (s.undecided || s2.undecided) {
        log::warn!("p-adic search at {p} hit depth {max_depth} without a decision");
    }
    found
}
