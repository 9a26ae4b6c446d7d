//! Rational points on `y^2 = w(x)`: height search, local solubility of
//! `c y^2 = w(x)`, and the twisted covers used in descent.

mod padic;


use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{exact_sqrt, squarefree_kernel, BigRat, ExactError, QPoly};
use crate::par;

pub use padic::{is_padic_square, padic_soluble};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("twist {0} is not a nonzero squarefree integer")]
    BadTwist(BigInt),
    #[error("constant or zero polynomial")]
    Degenerate,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RationalPoint {
    /// For even degree, `y` is the value of `y / x^(deg/2)` at infinity.
    Infinity {
        y: Option<BigRat>,
    },
    Affine {
        x: BigRat,
        y: BigRat,
    },
}

impl RationalPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, RationalPoint::Infinity { .. })
    }

    /// Recheck `y^2 = w(x)` (or the leading-coefficient condition at infinity).
    pub fn lies_on(&self, w: &QPoly) -> bool {
        match self {
            RationalPoint::Affine { x, y } => y * y == w.eval(x),
            RationalPoint::Infinity { y: None } => w.deg_i() % 2 == 1,
            RationalPoint::Infinity { y: Some(y) } => w.deg_i() % 2 == 0 && y * y == w.leading(),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPoint::Infinity { y: None } => write!(f, "inf"),
            RationalPoint::Infinity { y: Some(y) } => write!(f, "inf[{y}]"),
            RationalPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// `w = w_int / den^2` with `w_int` integral.
pub fn integral_model(w: &QPoly) -> (Vec<BigInt>, BigInt) {
    let c = w.content();
    let scale = c.numer() * c.denom();
    let ints = w.primitive().iter().map(|v| v * &scale).collect();
    (ints, c.denom().clone())
}

fn rat_sqrt(r: &BigRat) -> Option<BigRat> {
    Some(BigRat::new(exact_sqrt(r.numer())?, exact_sqrt(r.denom())?))
}

const FILTER_PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

struct SquareFilter {
    tables: Vec<(u64, Vec<u64>, Vec<bool>)>,
}

impl SquareFilter {
    fn new(ints: &[BigInt]) -> SquareFilter {
        let tables = FILTER_PRIMES
            .iter()
            .map(|&l| {
                let c = ints.iter().map(|v| v.mod_floor(&BigInt::from(l)).try_into().unwrap()).collect();
                let mut sq = vec![false; l as usize];
                for y in 0..l {
                    sq[(y * y % l) as usize] = true;
                }
                (l, c, sq)
            })
            .collect();
        SquareFilter { tables }
    }

    /// False when `b^odd * F(a, b)` is certainly not a square.
    fn may_be_square(&self, a: i64, b: i64, odd: bool) -> bool {
        self.tables.iter().all(|(l, c, sq)| {
            let am = a.rem_euclid(*l as i64) as u64;
            let bm = b.rem_euclid(*l as i64) as u64;
            let n = c.len() - 1;
            let mut bp = vec![1u64; n + 1];
            for i in 1..=n {
                bp[i] = bp[i - 1] * bm % l;
            }
            let mut acc = c[n];
            for i in (0..n).rev() {
                acc = (acc * am + c[i] * bp[n - i]) % l;
            }
            if odd {
                acc = acc * bm % l;
            }
            sq[acc as usize]
        })
    }
}

/// All points with `x = a/b`, `|a|, b <= height` in lowest terms, plus the
/// points at infinity. Ordered by denominator, then numerator, then `y >= 0`
/// before `-y`.
pub fn search_points(w: &QPoly, height: u64) -> Vec<RationalPoint> {
    let mut out = Vec::new();
    let Some(n) = w.degree() else { return out };
    if n % 2 == 1 {
        out.push(RationalPoint::Infinity { y: None });
    } else if let Some(r) = rat_sqrt(&w.leading()) {
        out.push(RationalPoint::Infinity { y: Some(r.clone()) });
        out.push(RationalPoint::Infinity { y: Some(-r) });
    }
    let (ints, den) = integral_model(w);
    let filter = SquareFilter::new(&ints);
    let h = height as i64;
    let denoms: Vec<i64> = (1..=h).collect();
    let odd = n % 2 == 1;
    let found = par::map(&denoms, |&b| {
        let mut pts = Vec::new();
        let bb = BigInt::from(b);
        for a in -h..=h {
            if a.gcd(&b) != 1 || !filter.may_be_square(a, b, odd) {
                continue;
            }
            // b^(n + odd) * w_int(a/b) = b^odd * F(a, b)
            let ab = BigInt::from(a);
            let mut acc = BigInt::zero();
            let mut bpow = BigInt::one();
            let mut terms = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                terms.push(bpow.clone());
                bpow *= &bb;
            }
            for i in (0..=n).rev() {
                acc = acc * &ab + &ints[i] * &terms[n - i];
            }
            if odd {
                acc *= &bb;
            }
            let Some(s) = exact_sqrt(&acc) else { continue };
            let half = (n + n % 2) / 2;
            let x = BigRat::new(ab.clone(), bb.clone());
            let y = BigRat::new(s, num_traits::pow(bb.clone(), half) * &den);
            if y.is_zero() {
                pts.push(RationalPoint::Affine { x, y });
            } else {
                pts.push(RationalPoint::Affine { x: x.clone(), y: y.clone() });
                pts.push(RationalPoint::Affine { x, y: -y });
            }
        }
        pts
    });
    out.extend(found.into_iter().flatten());
    debug_assert!(out.iter().all(|p| p.lies_on(w)));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = String;
    fn from_str(s: &str) -> Result<Place, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("real") || s.eq_ignore_ascii_case("inf") {
            return Ok(Place::Real);
        }
        match s.parse::<u64>() {
            Ok(p) if crate::exact::is_prime(p) => Ok(Place::Prime(p)),
            _ => Err(format!("not a place: {s}")),
        }
    }
}

/// Whether `c y^2 = w(x)` has a point over the completion at `place`,
/// points at infinity of the smooth model included.
pub fn is_locally_soluble(c: &BigInt, w: &QPoly, place: Place) -> bool {
    if c.is_zero() || w.is_zero() {
        return false;
    }
    match place {
        Place::Real => {
            let d = w.deg_i();
            // odd degree, a real root, or c w positive everywhere
            d % 2 == 1 || w.count_real_roots() > 0 || (c.signum() * BigInt::from(w.lc_sign())).is_positive()
        }
        Place::Prime(p) => {
            let (ints, _) = integral_model(w);
            let h: Vec<BigInt> = ints.iter().map(|v| v * c).collect();
            padic_soluble(&h, p)
        }
    }
}

/// All `±` products of distinct primes from `bad`.
pub fn descent_twists(bad: &[u64]) -> Vec<BigInt> {
    let mut primes: Vec<u64> = bad.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let mut pos = vec![BigInt::one()];
    for &p in &primes {
        let more: Vec<BigInt> = pos.iter().map(|d| d * p).collect();
        pos.extend(more);
    }
    pos.sort();
    pos.into_iter().flat_map(|d| [d.clone(), -d]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentSystem {
    pub d: BigInt,
    pub f1: QPoly,
    pub f2: QPoly,
    /// `f1 f2`, the base curve `y^2 = w` with `y = d y1 y2`.
    pub w: QPoly,
    pub base_genus: usize,
    /// Unramified double cover: `2 g - 1`.
    pub cover_genus: usize,
}

impl DescentSystem {
    /// Local solubility of the two equations separately.
    pub fn locally_soluble(&self, place: Place) -> (bool, bool) {
        (is_locally_soluble(&self.d, &self.f1, place), is_locally_soluble(&self.d, &self.f2, place))
    }

    pub fn equations(&self) -> [String; 2] {
        [format!("{}*y1^2 = {}", self.d, self.f1.to_string_var("x")), format!("{}*y2^2 = {}", self.d, self.f2.to_string_var("x"))]
    }
}

impl fmt::Display for DescentSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.equations();
        write!(f, "{a}; {b}")
    }
}

pub fn build_cover(f1: &QPoly, f2: &QPoly, d: &BigInt) -> Result<DescentSystem, RatError> {
    if d.is_zero() || squarefree_kernel(d)?.1.abs() != BigInt::one() {
        return Err(RatError::BadTwist(d.clone()));
    }
    let w = f1.mul(f2);
    let n = w.degree().ok_or(RatError::Degenerate)?;
    if n < 3 {
        return Err(RatError::Degenerate);
    }
    if !w.is_squarefree() {
        return Err(RatError::NotSquarefree);
    }
    let g = (n - 1) / 2;
    Ok(DescentSystem { d: d.clone(), f1: f1.clone(), f2: f2.clone(), w, base_genus: g, cover_genus: 2 * g - 1 })
}
