use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{is_prime, BigRat, ExactError, FpPoly, QPoly};

/// Largest |a0|, |lc| for which the divisor-candidate route is used.
const CANDIDATE_LIMIT: u64 = 1 << 40;

/// Rational roots, sorted ascending, without multiplicity.
pub fn rational_roots(f: &QPoly) -> Result<Vec<BigRat>, ExactError> {
    let (zero_root, g) = strip_x(f)?;
    let small = |v: &BigInt| v.abs().to_u64().is_some_and(|x| x <= CANDIDATE_LIMIT);
    let mut out = if g.deg_i() <= 0 {
        Vec::new()
    } else if small(&g.primitive()[0]) && small(g.primitive().last().unwrap()) {
        candidates_of(&g)
    } else {
        lifted_roots(&g)
    };
    if zero_root {
        out.push(BigRat::zero());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Rational-root theorem: test every `±a/b` with `a | a0`, `b | lc`.
pub fn rational_roots_by_candidates(f: &QPoly) -> Result<Vec<BigRat>, ExactError> {
    let (zero_root, g) = strip_x(f)?;
    let mut out = if g.deg_i() <= 0 { Vec::new() } else { candidates_of(&g) };
    if zero_root {
        out.push(BigRat::zero());
    }
    out.sort();
    Ok(out)
}

/// Roots found by Hensel lifting of roots modulo a good prime, followed by
/// rational reconstruction and an exact check.
pub fn rational_roots_by_lifting(f: &QPoly) -> Result<Vec<BigRat>, ExactError> {
    let (zero_root, g) = strip_x(f)?;
    let mut out = if g.deg_i() <= 0 { Vec::new() } else { lifted_roots(&g) };
    if zero_root {
        out.push(BigRat::zero());
    }
    out.sort();
    Ok(out)
}

/// Removes the factor x (recording whether 0 is a root) and repeated factors.
fn strip_x(f: &QPoly) -> Result<(bool, QPoly), ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let c = f.primitive();
    let k = c.iter().take_while(|v| v.is_zero()).count();
    let g = QPoly::from_ints(c[k..].to_vec());
    let g = if g.deg_i() > 1 { g.exact_div(&g.gcd(&g.derivative()))?.primitive_poly() } else { g };
    Ok((k > 0, g))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn candidates_of(g: &QPoly) -> Vec<BigRat> {
    let c = g.primitive();
    let a0 = c[0].abs().to_u64().unwrap();
    let lc = c.last().unwrap().abs().to_u64().unwrap();
    let mut out = Vec::new();
    let da = divisors(a0);
    let db = divisors(lc);
    for &b in &db {
        for &a in &da {
            if a.gcd(&b) != 1 {
                continue;
            }
            for s in [-1i64, 1] {
                let r = BigRat::new(BigInt::from(s) * BigInt::from(a), BigInt::from(b));
                if g.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn lifted_roots(g: &QPoly) -> Vec<BigRat> {
    let c = g.primitive();
    let a0 = c[0].abs();
    let lc = c.last().unwrap().abs();
    let bound = if a0 > lc { a0 } else { lc };
    // need p^k > 2 * bound^2 for unique reconstruction
    let target = BigInt::from(2) * &bound * &bound;
    let mut p = 101u64;
    let modp = loop {
        if is_prime(p) {
            let fp = FpPoly::new(p, c.iter().map(|v| v.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect());
            if fp.degree() == g.degree() && fp.is_squarefree() {
                break fp;
            }
        }
        p += 2;
    };
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for r0 in modp.roots() {
        let mut r = BigInt::from(r0);
        let mut m = pb.clone();
        while m <= target {
            m = &m * &m;
            r = newton_step(c, &r, &m);
        }
        if let Some(q) = reconstruct(&r, &m, &bound) {
            if g.eval(&q).is_zero() {
                out.push(q);
            }
        }
    }
    out
}

fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, v| (acc * x + v).mod_floor(m))
}

fn newton_step(c: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    let d: Vec<BigInt> = c.iter().enumerate().skip(1).map(|(i, v)| v * BigInt::from(i)).collect();
    let fr = eval_mod(c, r, m);
    let dr = eval_mod(&d, r, m);
    let inv = mod_inverse(&dr, m).expect("simple root modulo a good prime");
    (r - fr * inv).mod_floor(m)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Find `a/b` with `|a|, |b| <= bound` and `a = r b mod m`.
fn reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRat> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    Some(BigRat::new(r1, t1))
}
