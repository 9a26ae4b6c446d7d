//! Exact arithmetic: rationals, polynomials over Q and F_p, rational functions.

mod factor;
mod fppoly;
mod parse;
mod qpoly;
mod ratfunc;
mod roots;

use thiserror::Error;

pub use factor::{exact_sqrt, factor_u64, squarefree_kernel};
pub use fppoly::{inv_mod, is_prime, legendre, mul_mod, pow_mod, primes_up_to, rat_mod, FpPoly};
pub use parse::{parse_poly, parse_rat, parse_ratfunc, parse_rf, Parsed};
pub use qpoly::QPoly;
pub use ratfunc::{Eval, RatFunc};
pub use roots::{rational_roots, rational_roots_by_candidates, rational_roots_by_lifting};

pub type BigRat = num_rational::BigRational;
pub use num_bigint::BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomials live over different coefficient rings")]
    MixedRing,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division leaves a remainder")]
    InexactDivision,
    #[error("expression is not a polynomial")]
    NotPolynomial,
    #[error("coefficient denominator divisible by {0}")]
    NotIntegralAt(u64),
    #[error("integer too large to factor by trial division")]
    FactorizationLimit,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A polynomial over Q or over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poly {
    Q(QPoly),
    Fp(FpPoly),
}

/// Monic gcd of two polynomials over the same ring.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
    match (a, b) {
        (Poly::Q(x), Poly::Q(y)) => Ok(Poly::Q(x.gcd(y))),
        (Poly::Fp(x), Poly::Fp(y)) if x.modulus() == y.modulus() => Ok(Poly::Fp(x.gcd(y))),
        _ => Err(ExactError::MixedRing),
    }
}

/// `f = c * h^2 * w` with `c > 0`, `w` squarefree, primitive, integral, and
/// with the sign of `f`'s leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeSplit {
    pub c: BigRat,
    pub h: QPoly,
    pub w: QPoly,
}

/// Yun's algorithm; returns the squarefree factors `a_1, a_2, ...` with
/// `f = lc * prod a_i^i`, each `a_i` monic (possibly 1).
pub fn squarefree_factors(f: &QPoly) -> Result<Vec<QPoly>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0)?;
    let mut c = df.exact_div(&a0)?;
    let mut d = c.sub(&b.derivative());
    while b.deg_i() > 0 {
        let a = b.gcd(&d);
        out.push(a.clone());
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = c.sub(&b.derivative());
    }
    while out.last().is_some_and(|a| a.deg_i() == 0) {
        out.pop();
    }
    Ok(out)
}

pub fn squarefree_part(f: &QPoly) -> Result<SquarefreeSplit, ExactError> {
    let factors = squarefree_factors(f)?;
    let mut w = QPoly::one();
    let mut h = QPoly::one();
    for (i, a) in factors.iter().enumerate() {
        let m = i + 1;
        if m % 2 == 1 {
            w = w.mul(a);
        }
        if m >= 2 {
            h = h.mul(&a.pow((m / 2) as u32));
        }
    }
    let sign = BigRat::from_integer(BigInt::from(f.lc_sign()));
    let w = w.primitive_poly().scale(&sign);
    let h = h.primitive_poly();
    let c = f.leading() / (h.leading() * h.leading() * w.leading());
    debug_assert!(c > BigRat::from_integer(0.into()));
    Ok(SquarefreeSplit { c, h, w })
}

pub fn ratfunc_eval(r: &RatFunc, t: &BigRat) -> Eval {
    r.eval(t)
}
