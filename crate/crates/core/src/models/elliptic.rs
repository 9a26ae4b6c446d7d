//! Long Weierstrass curves over Q and the level-11 j-map.

use std::fmt;

use num_traits::{Signed, Zero};

use super::ModelError;
use crate::exact::{BigRat, Eval};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EcPoint {
    Infinity,
    Affine(BigRat, BigRat),
}

impl EcPoint {
    pub fn affine(x: i64, y: i64) -> EcPoint {
        EcPoint::Affine(BigRat::from_integer(x.into()), BigRat::from_integer(y.into()))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }
}

impl fmt::Display for EcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EcPoint::Infinity => write!(f, "O"),
            EcPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticQ {
    pub a1: BigRat,
    pub a2: BigRat,
    pub a3: BigRat,
    pub a4: BigRat,
    pub a6: BigRat,
}

fn r(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

impl EllipticQ {
    pub fn new(a1: BigRat, a2: BigRat, a3: BigRat, a4: BigRat, a6: BigRat) -> Result<Self, ModelError> {
        let e = EllipticQ { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(ModelError::Singular);
        }
        Ok(e)
    }

    pub fn from_i64s(a: [i64; 5]) -> Result<Self, ModelError> {
        Self::new(r(a[0]), r(a[1]), r(a[2]), r(a[3]), r(a[4]))
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(a: BigRat, b: BigRat) -> Result<Self, ModelError> {
        Self::new(BigRat::zero(), BigRat::zero(), BigRat::zero(), a, b)
    }

    fn b_invariants(&self) -> [BigRat; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + r(4) * a2;
        let b4 = r(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + r(4) * a6;
        let b8 = a1 * a1 * a6 + r(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> BigRat {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - r(8) * &b4 * &b4 * &b4 - r(27) * &b6 * &b6 + r(9) * &b2 * &b4 * &b6
    }

    pub fn c4(&self) -> BigRat {
        let [b2, b4, _, _] = self.b_invariants();
        &b2 * &b2 - r(24) * b4
    }

    pub fn j_invariant(&self) -> BigRat {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn contains(&self, p: &EcPoint) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    fn check(&self, p: &EcPoint) -> Result<(), ModelError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(ModelError::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &EcPoint) -> Result<EcPoint, ModelError> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    fn neg_unchecked(&self, p: &EcPoint) -> EcPoint {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> Result<EcPoint, ModelError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine(a, b), EcPoint::Affine(c, d)) => (a, b, c, d),
        };
        let lambda = if x1 == x2 {
            let denom = y1 + y2 + &self.a1 * x2 + &self.a3;
            if denom.is_zero() {
                return EcPoint::Infinity;
            }
            let num = r(3) * x1 * x1 + r(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1;
            num / (r(2) * y1 + &self.a1 * x1 + &self.a3)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - nu - &self.a3;
        EcPoint::Affine(x3, y3)
    }

    /// `n P` by double-and-add; negative `n` allowed.
    pub fn mul(&self, n: i64, p: &EcPoint) -> Result<EcPoint, ModelError> {
        self.check(p)?;
        let mut base = if n < 0 { self.neg_unchecked(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = EcPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for EllipticQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = String::from("y^2");
        for (c, m) in [(&self.a1, "x*y"), (&self.a3, "y")] {
            if !c.is_zero() {
                lhs += &term(c, m);
            }
        }
        let mut rhs = String::from("x^3");
        for (c, m) in [(&self.a2, "x^2"), (&self.a4, "x"), (&self.a6, "")] {
            if !c.is_zero() {
                rhs += &term(c, m);
            }
        }
        write!(f, "{lhs} = {rhs}")
    }
}

fn term(c: &BigRat, m: &str) -> String {
    let sign = if c.is_negative() { " - " } else { " + " };
    let a = c.abs();
    let body = match (a == r(1), m.is_empty()) {
        (true, false) => m.to_string(),
        (_, true) => a.to_string(),
        (false, false) => format!("{a}*{m}"),
    };
    format!("{sign}{body}")
}

/// `y^2 + y = x^3 - x^2 - 7x + 10`, generated by (4, 5).
pub const LEVEL11_CURVE: [i64; 5] = [0, -1, 1, -7, 10];

pub fn level11_curve() -> EllipticQ {
    EllipticQ::from_i64s(LEVEL11_CURVE).expect("nonsingular")
}

/// The six factors f_1..f_6 of the level-11 map at `(x, y)`, transcribed as
/// printed, reading f_3 as `6y + 11x - 19`.
pub fn level11_f(x: &BigRat, y: &BigRat) -> [BigRat; 6] {
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x2 * &x2;
    [
        &x2 + r(3) * x - r(6),
        r(11) * (&x2 - r(5) * y) + (r(2) * &x4 + r(23) * &x3 - r(72) * &x2 - r(28) * x + r(127)),
        r(6) * y + r(11) * x - r(19),
        r(22) * (x - r(2)) * y + (r(5) * &x3 + r(17) * &x2 - r(112) * x - r(120)),
        r(11) * y + (r(2) * &x2 + r(17) * x - r(34)),
        (x - r(4)) * y - (r(5) * x - r(9)),
    ]
}

/// `J(x,y) = (f1 f2 f3 f4)^3 / (f5^2 f6^11)` at an affine point of the
/// level-11 curve.
pub fn level11_j(p: &EcPoint) -> Result<Eval, ModelError> {
    let e = level11_curve();
    let (x, y) = match p {
        EcPoint::Infinity => return Err(ModelError::AtInfinity),
        EcPoint::Affine(x, y) => (x, y),
    };
    if !e.contains(p) {
        return Err(ModelError::NotOnCurve);
    }
    let f = level11_f(x, y);
    let den = num_traits::pow(f[4].clone(), 2) * num_traits::pow(f[5].clone(), 11);
    if den.is_zero() {
        return Ok(Eval::Pole);
    }
    let num = num_traits::pow(&f[0] * &f[1] * &f[2] * &f[3], 3);
    Ok(Eval::Value(num / den))
}
