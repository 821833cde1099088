//! Sparse bivariate polynomials in `(x, y)` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};

use super::{Int, IntPoly, Rat, Ring};
use crate::error::{Error, Result};

/// Element of `Z[x, y]`; no zero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Int>,
}

impl BiPoly {
    pub fn constant(c: Int) -> Self {
        let mut p = BiPoly::default();
        p.insert(0, 0, c);
        p
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 0, Int::from(1))
    }

    pub fn y() -> Self {
        BiPoly::monomial(0, 1, Int::from(1))
    }

    pub fn monomial(dx: u32, dy: u32, c: Int) -> Self {
        let mut p = BiPoly::default();
        p.insert(dx, dy, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Int {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Int::zero)
    }

    fn insert(&mut self, dx: u32, dy: u32, c: Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dx, dy), c) in &other.terms {
            out.insert(dx, dy, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::default();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &other.terms {
                out.insert(ax + bx, ay + by, a * b);
            }
        }
        out
    }

    pub fn mul_int(&self, c: &Int) -> Self {
        if c.is_zero() {
            return BiPoly::default();
        }
        BiPoly { terms: self.terms.iter().map(|(&k, a)| (k, a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BiPoly::constant(Int::from(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute univariate polynomials for x and y.
    pub fn eval_polys(&self, x: &IntPoly, y: &IntPoly) -> IntPoly {
        let mut out = IntPoly::default();
        for (&(dx, dy), c) in &self.terms {
            let term = x.pow(dx).mul(&y.pow(dy)).mul_int(c);
            out = out.add(&term);
        }
        out
    }

    pub fn eval_rat(&self, x: &Rat, y: &Rat) -> Rat {
        let mut out = Rat::from_integer(Int::zero());
        for (&(dx, dy), c) in &self.terms {
            let mut term = Rat::from_integer(c.clone());
            for _ in 0..dx {
                term *= x;
            }
            for _ in 0..dy {
                term *= y;
            }
            out += term;
        }
        out
    }

    /// Scale variables x -> sx*x, y -> sy*y over Q and require the result to
    /// clear to integer coefficients after multiplying by `pre`.
    pub fn scaled(&self, pre: &Rat, sx: &Rat, sy: &Rat) -> Result<BiPoly> {
        let mut out = BiPoly::default();
        for (&(dx, dy), c) in &self.terms {
            let mut factor = pre.clone();
            for _ in 0..dx {
                factor *= sx;
            }
            for _ in 0..dy {
                factor *= sy;
            }
            let scaled = factor * Rat::from_integer(c.clone());
            if !scaled.is_integer() {
                return Err(Error::NonIntegralSpecialization);
            }
            out.insert(dx, dy, scaled.to_integer());
        }
        Ok(out)
    }

    /// All coefficients non-negative (Tutte polynomials satisfy this).
    pub fn coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl Ring for BiPoly {
    fn zero_elem() -> Self {
        BiPoly::default()
    }
    fn one_elem() -> Self {
        BiPoly::constant(Int::from(1))
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn from_int(n: i64) -> Self {
        BiPoly::constant(Int::from(n))
    }
    fn scale_int(&self, n: &Int) -> Self {
        self.mul_int(n)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // descending total degree, then descending x degree
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by_key(|k| (std::cmp::Reverse(k.0 + k.1), std::cmp::Reverse(k.0)));
        let mut first = true;
        for (dx, dy) in keys {
            let c = &self.terms[&(dx, dy)];
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if mag != Int::from(1) || (dx == 0 && dy == 0) {
                factors.push(mag.to_string());
            }
            match dx {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{dx}")),
            }
            match dy {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{dy}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace(' ', "");
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut term = String::new();
        for c in s.chars() {
            if (c == '+' || c == '-') && !term.is_empty() && !term.ends_with('^') {
                terms.push(term.clone());
                term.clear();
            }
            if c != '+' || term.is_empty() {
                term.push(c);
            }
        }
        if !term.is_empty() {
            terms.push(term);
        }
        let mut out = BiPoly::default();
        for t in terms {
            let t = t.trim_start_matches('+');
            let mut coeff = Int::from(1);
            let mut dx = 0u32;
            let mut dy = 0u32;
            for factor in t.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    continue;
                }
                let (var, exp): (Option<char>, u32) = if let Some(rest) = factor.strip_prefix('x')
                {
                    (Some('x'), parse_exp(rest)?)
                } else if let Some(rest) = factor.strip_prefix('y') {
                    (Some('y'), parse_exp(rest)?)
                } else if factor == "-x" {
                    coeff = -coeff;
                    (Some('x'), 1)
                } else if factor == "-y" {
                    coeff = -coeff;
                    (Some('y'), 1)
                } else if let Some(rest) = factor.strip_prefix("-x") {
                    coeff = -coeff;
                    (Some('x'), parse_exp(rest)?)
                } else if let Some(rest) = factor.strip_prefix("-y") {
                    coeff = -coeff;
                    (Some('y'), parse_exp(rest)?)
                } else {
                    let c: Int = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad factor {factor}")))?;
                    coeff *= c;
                    (None, 0)
                };
                match var {
                    Some('x') => dx += exp,
                    Some('y') => dy += exp,
                    _ => {}
                }
            }
            out.insert(dx, dy, coeff);
        }
        Ok(out)
    }
}

fn parse_exp(rest: &str) -> Result<u32> {
    if rest.is_empty() {
        Ok(1)
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse().map_err(|_| Error::Parse(format!("bad exponent {rest}")))
    } else {
        Err(Error::Parse(format!("bad variable suffix {rest}")))
    }
}
