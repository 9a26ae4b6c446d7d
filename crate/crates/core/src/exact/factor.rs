use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `n = a^2 * d` with `d` squarefree carrying the sign of `n`. Exact as long
/// as the part of `n` free of primes below 10^6 is below 10^18.
pub fn squarefree_kernel(n: &BigInt) -> Result<(BigInt, BigInt), ExactError> {
    if n.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut m = n.abs();
    let mut d = BigInt::one();
    let mut a = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0u32;
        while m.is_multiple_of(&bp) {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            a *= bp.pow(e / 2);
            if e % 2 == 1 {
                d *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let r = m.sqrt();
        if &r * &r == m {
            a *= r;
        } else if m.to_u64().is_some_and(|v| v < 1_000_000_000_000_000_000) || p <= TRIAL_LIMIT {
            // at most two prime factors remain, and they are not equal
            d *= m;
        } else {
            return Err(ExactError::FactorizationLimit);
        }
    }
    if n.is_negative() {
        d = -d;
    }
    Ok((d, a))
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
