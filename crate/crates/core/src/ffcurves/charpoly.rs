//! Factoring the characteristic polynomial of Frobenius over Z.

use serde::Serialize;

use crate::exact::{primes_up_to, FpPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IrreducibilityProof {
    /// Factor degree patterns modulo these primes leave no proper split.
    DegreePatterns(Vec<u64>),
    /// An exact factor was found.
    FactorFound,
    /// No factor from the bounded root-subset search.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharpolyReport {
    pub p: u64,
    /// Ascending coefficients of P_1.
    pub p1: Vec<i128>,
    /// Ascending coefficients of `T^{2g} P_1(1/T)`.
    pub charpoly: Vec<i128>,
    pub irreducible: bool,
    /// Monic integer factors, with repetition, ascending coefficients.
    pub factors: Vec<Vec<i128>>,
    pub proof: IrreducibilityProof,
}

pub fn reverse(p1: &[i128]) -> Vec<i128> {
    p1.iter().rev().cloned().collect()
}

pub fn factor_report(p: u64, p1: &[i128]) -> CharpolyReport {
    let charpoly = reverse(p1);
    let n = charpoly.len() - 1;
    if let Some(primes) = degree_pattern_proof(&charpoly) {
        return CharpolyReport {
            p,
            p1: p1.to_vec(),
            irreducible: true,
            factors: vec![charpoly.clone()],
            charpoly,
            proof: IrreducibilityProof::DegreePatterns(primes),
        };
    }
    let factors = factor_monic(&charpoly);
    let irreducible = factors.len() == 1 && n > 0;
    CharpolyReport {
        p,
        p1: p1.to_vec(),
        charpoly,
        irreducible,
        proof: if irreducible { IrreducibilityProof::Search } else { IrreducibilityProof::FactorFound },
        factors,
    }
}

/// Possible factor degrees are subset sums of the factor degrees mod l;
/// intersecting over several l may rule out every proper degree.
fn degree_pattern_proof(f: &[i128]) -> Option<Vec<u64>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Some(Vec::new());
    }
    let mut possible = vec![true; n + 1];
    let mut used = Vec::new();
    for l in primes_up_to(200).into_iter().skip(1) {
        let fl = FpPoly::new(l, f.iter().map(|&c| c.rem_euclid(l as i128) as u64).collect());
        if fl.degree() != Some(n) || !fl.is_squarefree() {
            continue;
        }
        let degs = ddf_degrees(&fl);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degs {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=n {
            possible[k] &= sums[k];
        }
        used.push(l);
        if (1..n).all(|k| !possible[k]) {
            return Some(used);
        }
        if used.len() >= 12 {
            break;
        }
    }
    None
}

/// Degrees of the irreducible factors of a squarefree polynomial.
fn ddf_degrees(f: &FpPoly) -> Vec<usize> {
    let p = f.modulus();
    let mut f = f.monic();
    let x = FpPoly::x(p);
    let mut xp = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while f.deg_i() > 0 {
        d += 1;
        if 2 * d > f.deg_i() as usize {
            out.push(f.deg_i() as usize);
            break;
        }
        xp = xp.powmod(p as u128, &f);
        let g = xp.sub(&x).gcd(&f);
        let k = g.deg_i() as usize;
        if k > 0 {
            out.extend(std::iter::repeat_n(d, k / d));
            f = f.div_exact(&g);
            xp = xp.rem(&f);
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64 { re: (self.re * o.re + self.im * o.im) / d, im: (self.im * o.re - self.re * o.im) / d }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Durand-Kerner roots of a monic integer polynomial.
fn roots(f: &[i128]) -> Vec<C64> {
    let n = f.len() - 1;
    let bound = 1.0 + f.iter().take(n).map(|&c| (c as f64).abs()).fold(0.0, f64::max);
    let radius = bound.powf(1.0 / n as f64).max(1.0);
    let seed = C64 { re: 0.4, im: 0.9 };
    let mut z: Vec<C64> = Vec::with_capacity(n);
    let mut w = C64 { re: radius, im: 0.0 };
    for _ in 0..n {
        z.push(w);
        w = w.mul(seed);
    }
    let eval = |x: C64| f.iter().rev().fold(C64 { re: 0.0, im: 0.0 }, |acc, &c| acc.mul(x).add(C64 { re: c as f64, im: 0.0 }));
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = C64 { re: 1.0, im: 0.0 };
            for j in 0..n {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            if den.abs() == 0.0 {
                den = C64 { re: 1e-12, im: 1e-12 };
            }
            let step = eval(z[i]).div(den);
            z[i] = z[i].sub(step);
            delta = delta.max(step.abs() / (1.0 + z[i].abs()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

fn poly_from_roots(rs: &[C64]) -> Option<Vec<i128>> {
    let mut c = vec![C64 { re: 1.0, im: 0.0 }];
    for &r in rs {
        let mut next = vec![C64 { re: 0.0, im: 0.0 }; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a);
            next[i] = next[i].sub(a.mul(r));
        }
        c = next;
    }
    c.iter()
        .map(|z| {
            let k = z.re.round();
            let tol = 1e-6 * (1.0 + z.re.abs());
            ((z.re - k).abs() < 0.1_f64.max(tol) && z.im.abs() < 0.1_f64.max(tol)).then_some(k as i128)
        })
        .collect()
}

fn divide_monic(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = r[k + i].checked_sub(c.checked_mul(bi)?)?;
        }
    }
    r.iter().all(|&v| v == 0).then_some(q)
}

/// Split a monic integer polynomial into monic irreducible factors by
/// searching subsets of its complex roots, smallest degree first.
pub fn factor_monic(f: &[i128]) -> Vec<Vec<i128>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let rs = roots(f);
    for k in 1..=n / 2 {
        let mut found = None;
        for_each_subset(n, k, &mut |idx| {
            if found.is_some() {
                return;
            }
            let pick: Vec<C64> = idx.iter().map(|&i| rs[i]).collect();
            if let Some(g) = poly_from_roots(&pick) {
                if let Some(q) = divide_monic(f, &g) {
                    found = Some((g, q));
                }
            }
        });
        if let Some((g, q)) = found {
            let mut out = factor_monic(&g);
            out.extend(factor_monic(&q));
            out.sort_by_key(|v| v.len());
            return out;
        }
    }
    vec![f.to_vec()]
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_products() {
        // (x^2 + 5)(x^2 - 2x + 5)
        let f = vec![25, -10, 10, -2, 1];
        let fs = factor_monic(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&vec![5, 0, 1]));
        assert!(fs.contains(&vec![5, -2, 1]));
        assert_eq!(factor_monic(&[5, 0, 1]), vec![vec![5, 0, 1]]);
        // repeated factor
        let sq = factor_monic(&[25, 0, 10, 0, 1]);
        assert_eq!(sq, vec![vec![5, 0, 1], vec![5, 0, 1]]);
    }

    #[test]
    fn degree_patterns() {
        assert!(degree_pattern_proof(&[2, 0, 0, 1]).is_some()); // x^3 + 2
        assert!(degree_pattern_proof(&[4, 0, 0, 0, 1]).is_none()); // (x^2+2x+2)(x^2-2x+2)
        assert_eq!(ddf_degrees(&FpPoly::from_i64s(5, &[-1, 0, 0, 0, 1])), vec![1, 1, 1, 1]);
    }
}
