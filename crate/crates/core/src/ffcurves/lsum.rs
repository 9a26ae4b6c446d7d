//! Coefficients of the quadratic L-function of `y^2 = w` over F_p:
//! `c_d = sum over monic m of degree d of chi(Res(m, w))`.

use crate::exact::{inv_mod, legendre, FpPoly};
use crate::par;

const W: usize = 16;

struct Tables {
    p: u64,
    inv: Vec<u64>,
    chi: Vec<i8>,
}

impl Tables {
    fn new(p: u64) -> Tables {
        if p > 1 << 20 {
            return Tables { p, inv: Vec::new(), chi: Vec::new() };
        }
        let mut inv = vec![0u64; p as usize];
        let mut chi = vec![-1i8; p as usize];
        for a in 1..p {
            inv[a as usize] = inv_mod(a, p).unwrap();
        }
        chi[0] = 0;
        for a in 1..p {
            chi[(a * a % p) as usize] = 1;
        }
        Tables { p, inv, chi }
    }

    #[inline]
    fn inv(&self, a: u64) -> u64 {
        if self.inv.is_empty() {
            inv_mod(a, self.p).unwrap()
        } else {
            self.inv[a as usize]
        }
    }

    #[inline]
    fn chi(&self, a: u64) -> i64 {
        if self.chi.is_empty() {
            legendre(a, self.p) as i64
        } else {
            self.chi[a as usize] as i64
        }
    }
}

#[inline]
fn trim(a: &[u64; W], mut d: isize) -> isize {
    while d >= 0 && a[d as usize] == 0 {
        d -= 1;
    }
    d
}

#[inline]
fn pow(mut b: u64, mut e: usize, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `Res(a, b)` mod p by the Euclidean recursion; `deg b < deg a`.
fn resultant(t: &Tables, mut a: [u64; W], mut da: isize, mut b: [u64; W], mut db: isize) -> u64 {
    let p = t.p;
    let mut acc = 1u64;
    loop {
        if db < 0 {
            return 0;
        }
        if db == 0 {
            return acc * pow(b[0], da as usize, p) % p;
        }
        // a mod b
        let lb = b[db as usize];
        let il = t.inv(lb);
        let mut k = da;
        while k >= db {
            let c = a[k as usize];
            if c != 0 {
                let q = c * il % p;
                let off = (k - db) as usize;
                for i in 0..db as usize {
                    a[off + i] = (a[off + i] + (p - q) * b[i]) % p;
                }
                a[k as usize] = 0;
            }
            k -= 1;
        }
        let dr = trim(&a, db - 1);
        if dr < 0 {
            return 0;
        }
        if (da * db) % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = acc * pow(lb, (da - dr) as usize, p) % p;
        std::mem::swap(&mut a, &mut b);
        da = db;
        db = dr;
    }
}

/// `c_0, ..., c_dmax` for squarefree `w` of degree at most 15 over F_p.
pub fn l_coefficients(w: &FpPoly, dmax: usize) -> Vec<i64> {
    let p = w.modulus();
    let t = Tables::new(p);
    let n = w.degree().expect("nonzero w");
    assert!(n < W);
    let mut wc = [0u64; W];
    wc[..=n].copy_from_slice(w.coeffs());
    let mut out = vec![1i64];
    for d in 1..=dmax {
        let total = p.pow(d as u32);
        let s = par::sum_range(total, |lo, hi| {
            let mut m = [0u64; W];
            let mut k = lo;
            for slot in m.iter_mut().take(d) {
                *slot = k % p;
                k /= p;
            }
            m[d] = 1;
            let mut acc = 0i64;
            for _ in lo..hi {
                // w mod m
                let mut r = wc;
                let mut top = n as isize;
                while top >= d as isize {
                    let c = r[top as usize];
                    if c != 0 {
                        let off = top as usize - d;
                        for i in 0..d {
                            r[off + i] = (r[off + i] + (p - c) * m[i]) % p;
                        }
                        r[top as usize] = 0;
                    }
                    top -= 1;
                }
                let dr = trim(&r, (d as isize - 1).min(n as isize));
                acc += t.chi(resultant(&t, m, d as isize, r, dr));
                // next monic polynomial
                for slot in m.iter_mut().take(d) {
                    *slot += 1;
                    if *slot < p {
                        break;
                    }
                    *slot = 0;
                }
            }
            acc
        });
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_agrees_with_evaluation() {
        // Res(x - a, w) = w(a)
        let p = 13;
        let t = Tables::new(p);
        let w = FpPoly::from_i64s(p, &[3, 0, 5, 1]);
        for a in 0..p {
            let mut m = [0u64; W];
            m[0] = (p - a) % p;
            m[1] = 1;
            let mut r = [0u64; W];
            r[0] = w.eval(a);
            let got = resultant(&t, m, 1, r, trim(&r, 0));
            assert_eq!(got, w.eval(a));
        }
    }

    #[test]
    fn linear_coefficient_is_a_character_sum() {
        let p = 11;
        let w = FpPoly::from_i64s(p, &[1, 3, 0, 2, 0, 1]);
        let c = l_coefficients(&w, 1);
        let direct: i64 = (0..p).map(|x| legendre(w.eval(x), p) as i64).sum();
        assert_eq!(c[1], direct);
    }
}
