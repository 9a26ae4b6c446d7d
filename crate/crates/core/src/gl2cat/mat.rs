use std::fmt;

use serde::Serialize;

/// A 2x2 matrix over Z/n, stored as `[a, b, c, d]` for `(a b; c d)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2 {
    pub n: u32,
    pub e: [u32; 4],
}

fn red(v: i64, n: u32) -> u32 {
    v.rem_euclid(n as i64) as u32
}

impl Mat2 {
    pub fn new(n: u32, a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(n >= 1);
        Mat2 { n, e: [red(a, n), red(b, n), red(c, n), red(d, n)] }
    }

    pub fn from_quad(n: u32, q: [i64; 4]) -> Self {
        Self::new(n, q[0], q[1], q[2], q[3])
    }

    pub fn identity(n: u32) -> Self {
        Self::new(n, 1, 0, 0, 1)
    }

    pub fn scalar(n: u32, s: i64) -> Self {
        Self::new(n, s, 0, 0, s)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        debug_assert_eq!(self.n, o.n);
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        let [p, q, r, s] = o.e.map(|x| x as u64);
        Mat2 {
            n: self.n,
            e: [
                ((a * p + b * r) % n) as u32,
                ((a * q + b * s) % n) as u32,
                ((c * p + d * r) % n) as u32,
                ((c * q + d * s) % n) as u32,
            ],
        }
    }

    pub fn det(&self) -> u32 {
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        ((a * d + n * n - (b * c) % n) % n) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.e[0] + self.e[3]) % self.n
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det(), self.n) == 1
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let di = inv_mod_u32(self.det(), self.n)? as i64;
        let [a, b, c, d] = self.e.map(|x| x as i64);
        Some(Mat2::new(self.n, d * di, -b * di, -c * di, a * di))
    }

    /// Dense code in `0..n^4`.
    pub fn code(&self) -> usize {
        let n = self.n as usize;
        let [a, b, c, d] = self.e.map(|x| x as usize);
        ((a * n + b) * n + c) * n + d
    }

    pub fn apply(&self, v: (u32, u32)) -> (u32, u32) {
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        let (x, y) = (v.0 as u64, v.1 as u64);
        (((a * x + b * y) % n) as u32, ((c * x + d * y) % n) as u32)
    }

    /// Reduction to a divisor `m` of the modulus.
    pub fn reduce(&self, m: u32) -> Mat2 {
        debug_assert_eq!(self.n % m, 0);
        Mat2 { n: m, e: self.e.map(|x| x % m) }
    }

    /// Entrywise Chinese remainder lift of `(x mod n0, y mod n1)`.
    pub fn crt(x: &Mat2, y: &Mat2) -> Mat2 {
        let (n0, n1) = (x.n as u64, y.n as u64);
        let n = n0 * n1;
        let i0 = inv_mod_u32((n1 % n0) as u32, x.n).unwrap_or(0) as u64;
        let i1 = inv_mod_u32((n0 % n1) as u32, y.n).unwrap_or(0) as u64;
        let e = std::array::from_fn(|k| {
            let a = x.e[k] as u64 * n1 % n * i0 % n;
            let b = y.e[k] as u64 * n0 % n * i1 % n;
            ((a + b) % n) as u32
        });
        Mat2 { n: n as u32, e }
    }

    pub fn quad(&self) -> [u32; 4] {
        self.e
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "({a} {b}; {c} {d}) mod {}", self.n)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "({a} {b}; {c} {d})")
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn inv_mod_u32(a: u32, n: u32) -> Option<u32> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i64, (a % n) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i64) as u32)
}
