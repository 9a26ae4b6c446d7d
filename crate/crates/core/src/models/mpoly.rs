//! Sparse multivariate polynomials over Q, only as far as the registry needs:
//! parsing, arithmetic, evaluation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::{BigRat, ExactError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    /// Variable names, sorted.
    vars: Vec<char>,
    terms: BTreeMap<Vec<u32>, BigRat>,
}

impl MPoly {
    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    fn over(vars: &[char]) -> Self {
        MPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    fn constant(vars: &[char], c: BigRat) -> Self {
        let mut p = Self::over(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    fn var(vars: &[char], v: char) -> Self {
        let mut p = Self::over(vars);
        let mut e = vec![0; vars.len()];
        e[vars.iter().position(|&c| c == v).unwrap()] = 1;
        p.terms.insert(e, BigRat::one());
        p
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = out.terms.entry(e.clone()).or_insert_with(BigRat::zero);
            *v += c;
            if v.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    fn neg(&self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = Self::over(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = out.terms.entry(e.clone()).or_insert_with(BigRat::zero);
                *v += c1 * c2;
                if v.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    fn as_constant(&self) -> Option<BigRat> {
        match self.terms.len() {
            0 => Some(BigRat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    /// Evaluate with values given in the order of `vars()`.
    pub fn eval(&self, at: &[BigRat]) -> BigRat {
        assert_eq!(at.len(), self.vars.len());
        let mut s = BigRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in at.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }

    /// Evaluate with named values; unnamed variables are an error.
    pub fn eval_named(&self, at: &[(char, BigRat)]) -> Option<BigRat> {
        let v: Option<Vec<BigRat>> = self.vars.iter().map(|c| at.iter().find(|(n, _)| n == c).map(|(_, x)| x.clone())).collect();
        v.map(|v| self.eval(&v))
    }
}

fn perr(pos: usize, msg: &str) -> ExactError {
    ExactError::Parse { pos, msg: msg.to_string() }
}

struct P<'a> {
    s: &'a [u8],
    pos: usize,
    vars: Vec<char>,
}

impl P<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly, ExactError> {
        let mut a = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    a = a.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    a = a.add(&self.term()?.neg());
                }
                _ => return Ok(a),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ExactError> {
        let mut a = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    a = a.mul(&self.unary()?);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = d.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| perr(at, "division by a non-constant"))?;
                    a = a.mul(&MPoly::constant(&self.vars, c.recip()));
                }
                _ => return Ok(a),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ExactError> {
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

    fn power(&mut self) -> Result<MPoly, ExactError> {
        let b = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(b);
        }
        self.pos += 1;
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| perr(start, "expected a non-negative integer exponent"))?;
        let mut out = MPoly::constant(&self.vars, BigRat::one());
        for _ in 0..e {
            out = out.mul(&b);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<MPoly, ExactError> {
        match self.peek() {
            None => Err(perr(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(perr(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: num_bigint::BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(MPoly::constant(&self.vars, BigRat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(MPoly::var(&self.vars, c as char))
            }
            Some(c) => Err(perr(self.pos, &format!("unexpected character '{}'", c as char))),
        }
    }
}

fn letters(s: &str) -> Vec<char> {
    let mut vars: Vec<char> = s.chars().filter(|c| c.is_ascii_alphabetic()).collect();
    vars.sort();
    vars.dedup();
    vars
}

fn parse_in(s: &str, vars: Vec<char>) -> Result<MPoly, ExactError> {
    let mut p = P { s: s.as_bytes(), pos: 0, vars };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(perr(p.pos, "trailing input"));
    }
    Ok(v)
}

fn as_difference(s: &str) -> String {
    match s.split_once('=') {
        None => s.to_string(),
        Some((l, r)) => format!("({l})-({r})"),
    }
}

/// Parse a polynomial in any single-letter variables.
pub fn parse_mpoly(s: &str) -> Result<MPoly, ExactError> {
    parse_in(s, letters(s))
}

/// Parse an equation `lhs = rhs` as `lhs - rhs`; a bare expression is `expr = 0`.
pub fn parse_equation(s: &str) -> Result<MPoly, ExactError> {
    let d = as_difference(s);
    parse_in(&d, letters(&d))
}

/// Parse several equations over their joint set of variables.
pub fn parse_system(eqs: &[String]) -> Result<Vec<MPoly>, ExactError> {
    let diffs: Vec<String> = eqs.iter().map(|e| as_difference(e)).collect();
    let vars = letters(&diffs.concat());
    diffs.iter().map(|d| parse_in(d, vars.clone())).collect()
}
