use std::fmt;

use num_traits::{One, Zero};

use super::{BigRat, ExactError, QPoly};

/// Result of evaluating a rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eval {
    Value(BigRat),
    Pole,
}

impl Eval {
    pub fn value(&self) -> Option<&BigRat> {
        match self {
            Eval::Value(v) => Some(v),
            Eval::Pole => None,
        }
    }
}

/// Quotient of polynomials over Q in normal form: coprime, monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    numer: QPoly,
    denom: QPoly,
}

impl RatFunc {
    pub fn new(numer: QPoly, denom: QPoly) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if numer.is_zero() {
            return Ok(RatFunc { numer, denom: QPoly::one() });
        }
        let g = numer.gcd(&denom);
        let (mut n, mut d) = if g.degree() == Some(0) { (numer, denom) } else { (numer.exact_div(&g)?, denom.exact_div(&g)?) };
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFunc { numer: n, denom: d })
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc { numer: p, denom: QPoly::one() }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn numer(&self) -> &QPoly {
        &self.numer
    }

    pub fn denom(&self) -> &QPoly {
        &self.denom
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.degree() == Some(0)
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.numer.deg_i() <= 0
    }

    /// Degree as a map P^1 -> P^1.
    pub fn degree(&self) -> usize {
        self.numer.deg_i().max(self.denom.deg_i()).max(0) as usize
    }

    pub fn eval(&self, t: &BigRat) -> Eval {
        let d = self.denom.eval(t);
        if d.is_zero() {
            return Eval::Pole;
        }
        Eval::Value(self.numer.eval(t) / d)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let n = self.numer.mul(&o.denom).add(&o.numer.mul(&self.denom));
        RatFunc::new(n, self.denom.mul(&o.denom)).unwrap()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { numer: self.numer.neg(), denom: self.denom.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.numer.mul(&o.numer), self.denom.mul(&o.denom)).unwrap()
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, ExactError> {
        if o.numer.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        RatFunc::new(self.numer.mul(&o.denom), self.denom.mul(&o.numer))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { numer: self.numer.pow(e), denom: self.denom.pow(e) }
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.numer.to_string_var(var);
        }
        format!("({})/({})", self.numer.to_string_var(var), self.denom.to_string_var(var))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.to_string_var("t"))
    }
}
