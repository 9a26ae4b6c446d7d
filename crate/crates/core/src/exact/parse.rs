//! Text grammar for polynomials and rational functions in one variable:
//! `+ - * /`, `^` with a non-negative integer exponent, parentheses, integer
//! literals. Multiplication is always explicit.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BigRat, ExactError, QPoly, RatFunc};

#[derive(Debug)]
pub struct Parsed {
    pub value: RatFunc,
    /// The variable name seen, if any.
    pub var: Option<char>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<char>,
}

fn err(pos: usize, msg: impl Into<String>) -> ExactError {
    ExactError::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| err(at, "division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ExactError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(err(start, "expected a non-negative integer exponent"));
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = s.parse().map_err(|_| err(start, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ExactError> {
        let at = self.pos;
        match self.peek() {
            None => Err(err(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = s.parse().unwrap();
                Ok(RatFunc::constant(BigRat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(err(at, "variables are single letters"));
                }
                let ch = c as char;
                match self.var {
                    None => self.var = Some(ch),
                    Some(v) if v == ch => {}
                    Some(v) => return Err(err(at, format!("unexpected variable '{ch}' (expression is in '{v}')"))),
                }
                Ok(RatFunc::from_poly(QPoly::x()))
            }
            Some(c) => Err(err(self.pos, format!("unexpected character '{}'", c as char))),
        }
    }
}

pub fn parse_ratfunc(s: &str) -> Result<Parsed, ExactError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, var: None };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos, "trailing input"));
    }
    Ok(Parsed { value: v, var: p.var })
}

/// Parse a rational function in one variable.
pub fn parse_rf(s: &str) -> Result<RatFunc, ExactError> {
    Ok(parse_ratfunc(s)?.value)
}

/// Parse a polynomial; a non-constant denominator is an error.
pub fn parse_poly(s: &str) -> Result<QPoly, ExactError> {
    let r = parse_ratfunc(s)?.value;
    if !r.is_polynomial() {
        return Err(ExactError::NotPolynomial);
    }
    let c = r.denom().leading();
    debug_assert!(!c.is_zero());
    Ok(r.numer().scale(&c.recip()))
}

/// Parse a rational number such as `-7/3`.
pub fn parse_rat(s: &str) -> Result<BigRat, ExactError> {
    let r = parse_ratfunc(s)?;
    if r.var.is_some() || !r.value.is_constant() {
        return Err(err(0, "expected a rational constant"));
    }
    Ok(r.value.numer().coeff(0))
}
