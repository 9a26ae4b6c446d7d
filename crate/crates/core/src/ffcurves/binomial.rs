//! Point counts on `y^2 = c x (x^n + a)`, n even, from Jacobi sums over a
//! small base field lifted by Hasse-Davenport.

use num_integer::Integer;

use super::fq::Fq;
use super::FfError;
use crate::exact::{legendre, FpPoly};

/// Largest base field we enumerate to build the Jacobi sums.
const BASE_LIMIT: u64 = 10_000_000;

/// `(c, a, n)` when `w = c x^(n+1) + c a x` with n even.
pub fn binomial_shape(w: &FpPoly) -> Option<(u64, u64, usize)> {
    let d = w.degree()?;
    if d < 3 || d % 2 == 0 {
        return None;
    }
    let nz: Vec<usize> = (0..=d).filter(|&i| w.coeff(i) != 0).collect();
    if nz != [1, d] {
        return None;
    }
    let p = w.modulus();
    let c = w.coeff(d);
    let a = w.coeff(1) * crate::exact::inv_mod(c, p)? % p;
    Some((c, a, d - 1))
}

/// Element of Z[x]/(x^M - 1).
#[derive(Clone, Debug)]
struct Cyc {
    c: Vec<i128>,
}

impl Cyc {
    fn zero(m: usize) -> Cyc {
        Cyc { c: vec![0; m] }
    }

    fn unit(m: usize, e: usize) -> Cyc {
        let mut z = Cyc::zero(m);
        z.c[e % m] = 1;
        z
    }

    fn mul(&self, o: &Cyc) -> Cyc {
        let m = self.c.len();
        let mut z = Cyc::zero(m);
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                z.c[(i + j) % m] += a * b;
            }
        }
        z
    }

    fn add(&mut self, o: &Cyc) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }

    fn scale(&self, k: i128) -> Cyc {
        Cyc { c: self.c.iter().map(|a| a * k).collect() }
    }

    fn pow(&self, mut e: usize) -> Cyc {
        let mut acc = Cyc::unit(self.c.len(), 0);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Reduce modulo the M-th cyclotomic polynomial; `Some(k)` if the result
    /// is the rational integer k.
    fn as_integer(&self) -> Option<i128> {
        let m = self.c.len();
        let phi = cyclotomic(m);
        let dphi = phi.len() - 1;
        let mut r = self.c.clone();
        for k in (dphi..m).rev() {
            let q = r[k];
            if q != 0 {
                for (i, &f) in phi.iter().enumerate() {
                    r[k - dphi + i] -= q * f;
                }
            }
        }
        if r[1..].iter().all(|&v| v == 0) {
            Some(r[0])
        } else {
            None
        }
    }
}

/// Integer coefficients of Phi_m, ascending.
fn cyclotomic(m: usize) -> Vec<i128> {
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i128; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic(d);
            num = divide_exact(&num, &den);
        }
    }
    num
}

fn divide_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] / b[db];
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&v| v == 0));
    q
}

/// Counts N_1..N_rmax on the smooth model of `y^2 = c x (x^n + a)`.
pub fn binomial_counts(p: u64, c: u64, a: u64, n: usize, rmax: usize) -> Result<Vec<i128>, FfError> {
    let m = 2 * n;
    let mut out = Vec::with_capacity(rmax);
    for r in 1..=rmax {
        let target = (m as u64).gcd(&(pow_u64(p, r)? - 1));
        let b = (1..=r)
            .filter(|b| r % b == 0)
            .find(|&b| pow_u64(p, b).map(|q| (m as u64).gcd(&(q - 1)) == target).unwrap_or(false))
            .unwrap();
        let s = r / b;
        let base = pow_u64(p, b)?;
        if base > BASE_LIMIT {
            return Err(FfError::TooLarge(format!("Jacobi base field of order {base}")));
        }
        let q = pow_u64(p, r)? as i128;
        out.push(q + 1 + twisted_sum(p, b, s, c, a, n)?);
    }
    Ok(out)
}

fn pow_u64(p: u64, r: usize) -> Result<u64, FfError> {
    p.checked_pow(r as u32).ok_or_else(|| FfError::TooLarge(format!("{p}^{r}")))
}

/// `sum_{x in F_Q} chi(c x (x^n + a))` for Q = p^(b s), from sums over F_{p^b}.
fn twisted_sum(p: u64, b: usize, s: usize, c: u64, a: u64, n: usize) -> Result<i128, FfError> {
    let m = 2 * n;
    let field = Fq::new(p, b)?;
    let bq = field.order();
    let e = (m as u64).gcd(&(bq - 1)) as usize;
    // discrete logs
    let g = field.primitive_element();
    let mut log = vec![0u64; bq as usize];
    let mut z = field.one();
    for j in 0..bq - 1 {
        log[field.index(&z) as usize] = j;
        z = field.mul(&z, &g);
    }
    let step = m / e;
    let half = e / 2;
    // chi(c a) over F_Q is legendre(c a)^(b s)
    let sign = legendre(c * a % p, p) as i128;
    let sign = if (b * s).is_multiple_of(2) { 1 } else { sign };
    let neg_a = field.from_fp((p - a) % p);
    let la = log[field.index(&neg_a) as usize];
    let one = field.one();
    let mut total = Cyc::zero(m);
    for k in 0..e {
        if (n * k) % e != half % e {
            continue;
        }
        // J(rho_k, chi) over F_{p^b}
        let mut jac = Cyc::zero(m);
        for vi in 2..bq {
            let v = field.from_index(vi);
            let w = field.sub(&one, &v);
            if field.is_zero(&w) {
                continue;
            }
            let lv = log[vi as usize];
            let lw = log[field.index(&w) as usize];
            let ex = (step * k) as u64 * lv % m as u64 + (m as u64 / 2) * (lw % 2);
            jac.c[(ex % m as u64) as usize] += 1;
        }
        // -(-J)^s times rho_k((-a)^s)
        let lifted = jac.scale(-1).pow(s).scale(-1);
        let twist = (step * k) as u64 * ((la * s as u64) % (bq - 1)) % m as u64;
        total.add(&lifted.mul(&Cyc::unit(m, twist as usize)));
    }
    let v = total.as_integer().ok_or(FfError::Inconsistent("Jacobi sum is not rational".into()))?;
    Ok(sign * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
    }

    #[test]
    fn shape_detection() {
        let w = FpPoly::from_i64s(7, &[0, 64, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1]);
        assert_eq!(binomial_shape(&w), Some((6, 6, 12)));
        assert_eq!(binomial_shape(&FpPoly::from_i64s(7, &[1, 1, 0, 1])), None);
    }
}
