//! Dense univariate polynomials in `T` with big-integer coefficients.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, Signed, Zero};

use super::{Int, Rat, Ring};
use crate::error::{Error, Result};

/// Element of `Z[T]`, stored low degree first with no trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<Int>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn constant(c: Int) -> Self {
        IntPoly::new(vec![c])
    }

    /// The variable T itself.
    pub fn var() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    /// T + 1, the class of the affine line when T is the torus class.
    pub fn t_plus_one() -> Self {
        IntPoly::from_i64(&[1, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Int {
        self.coeffs.get(deg).cloned().unwrap_or_else(Int::zero)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn mul_int(&self, c: &Int) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(Int::from(1));
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

    /// Multiply by T^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::default();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Int::from(i + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::from_integer(Int::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Substitute another polynomial for T (Horner over `Z[T]`).
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::default();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    /// Exact division; any nonzero remainder is an error, never a truncation.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::default());
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len();
        if rem.len() < d {
            return Err(Error::InexactDivision("degree too small"));
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut quot = vec![Int::zero(); rem.len() - d + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + d - 1].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % lead) != Int::zero() {
                return Err(Error::InexactDivision("leading coefficient"));
            }
            let q = &top / lead;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision("nonzero remainder"));
        }
        Ok(IntPoly::new(quot))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Largest k with T^k dividing self (0 for the zero polynomial).
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Canonical rendering in another variable name (chromatic output uses
    /// `lambda`).
    pub fn to_string_with_var(&self, var: &str) -> String {
        self.to_string().replace('T', var)
    }

    /// Render with known family factors T^a (T+1)^b pulled out, e.g.
    /// `T^4*(T+1)^17*(T^3 + 6*T^2 + 9*T + 1)`. Falls back to the plain form.
    pub fn factored_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let a = self.t_valuation();
        let mut rest = if a > 0 {
            self.exact_div(&IntPoly::var().pow(a as u32)).unwrap()
        } else {
            self.clone()
        };
        let tp1 = IntPoly::t_plus_one();
        let mut b = 0usize;
        while let Ok(q) = rest.exact_div(&tp1) {
            rest = q;
            b += 1;
        }
        if a == 0 && b == 0 {
            return format!("{self}");
        }
        let mut parts = Vec::new();
        match a {
            0 => {}
            1 => parts.push("T".to_string()),
            _ => parts.push(format!("T^{a}")),
        }
        match b {
            0 => {}
            1 => parts.push("(T+1)".to_string()),
            _ => parts.push(format!("(T+1)^{b}")),
        }
        if rest != IntPoly::constant(Int::from(1)) {
            if rest.coeffs.len() == 1 {
                parts.insert(0, format!("{rest}"));
            } else {
                parts.push(format!("({rest})"));
            }
        }
        parts.join("*")
    }
}

impl Ring for IntPoly {
    fn zero_elem() -> Self {
        IntPoly::default()
    }
    fn one_elem() -> Self {
        IntPoly::constant(Int::from(1))
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
        IntPoly::constant(Int::from(n))
    }
    fn scale_int(&self, n: &Int) -> Self {
        self.mul_int(n)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Int, deg: usize, first: bool) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let one = mag == Int::from(1);
    match (deg, one) {
        (0, _) => write!(f, "{mag}"),
        (1, true) => write!(f, "T"),
        (1, false) => write!(f, "{mag}*T"),
        (_, true) => write!(f, "T^{deg}"),
        (_, false) => write!(f, "{mag}*T^{deg}"),
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for deg in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[deg];
            if c.is_zero() {
                continue;
            }
            write_term(f, c, deg, first)?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses the canonical rendering: terms like `3*T^2`, `T`, `-5`, joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace(' ', "");
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = IntPoly::default();
        let mut term = String::new();
        let chars = s.chars().peekable();
        let mut terms: Vec<String> = Vec::new();
        for c in chars {
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
        for t in terms {
            let t = t.trim_start_matches('+');
            let (coeff_str, deg) = if let Some(pos) = t.find('T') {
                let c = &t[..pos];
                let rest = &t[pos + 1..];
                let deg = if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {t}")))?
                } else if rest.is_empty() {
                    1
                } else {
                    return Err(Error::Parse(format!("bad term {t}")));
                };
                (c.trim_end_matches('*'), deg)
            } else {
                (t, 0)
            };
            let coeff = match coeff_str {
                "" => Int::from(1),
                "-" => Int::from(-1),
                other => BigInt::from_str(other)
                    .map_err(|_| Error::Parse(format!("bad coefficient {other}")))?,
            };
            out = out.add(&IntPoly::constant(coeff).shift(deg));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn basic_arithmetic() {
        // (T+1)*T = T^2 + T
        let t = IntPoly::var();
        assert_eq!(IntPoly::t_plus_one().mul(&t), p(&[0, 1, 1]));
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
    }

    #[test]
    fn exact_division_and_failures() {
        // (T^3 + 1) / (T + 1) = T^2 - T + 1
        let quot = p(&[1, 0, 0, 1]).exact_div(&p(&[1, 1])).unwrap();
        assert_eq!(quot, p(&[1, -1, 1]));
        assert_eq!(
            p(&[1, 0, 1]).exact_div(&p(&[1, 1])),
            Err(Error::InexactDivision("nonzero remainder"))
        );
        assert_eq!(p(&[1]).exact_div(&IntPoly::default()), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let q = p(&[0, 1, 9, 6, 1]);
        assert_eq!(q.to_string(), "T^4 + 6*T^3 + 9*T^2 + T");
        assert_eq!("T^4 + 6*T^3 + 9*T^2 + T".parse::<IntPoly>().unwrap(), q);
        let r = p(&[-1, 1, 0, -2]);
        assert_eq!(r.to_string(), "-2*T^3 + T - 1");
        assert_eq!(r.to_string().parse::<IntPoly>().unwrap(), r);
        assert_eq!(IntPoly::default().to_string(), "0");
        assert_eq!("0".parse::<IntPoly>().unwrap(), IntPoly::default());
    }

    #[test]
    fn factored_rendering() {
        let lemon8 = IntPoly::var()
            .pow(4)
            .mul(&IntPoly::t_plus_one().pow(10))
            .mul(&p(&[1, 9, 6, 1]));
        assert_eq!(lemon8.factored_string(), "T^4*(T+1)^10*(T^3 + 6*T^2 + 9*T + 1)");
        assert_eq!(p(&[2]).factored_string(), "2");
        assert_eq!(p(&[1, 1]).factored_string(), "(T+1)");
    }

    #[test]
    fn compose_shifts_variable() {
        // p(q) with p = T^2, q = T+1
        let sq = IntPoly::var().pow(2);
        assert_eq!(sq.compose(&IntPoly::t_plus_one()), p(&[1, 2, 1]));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..=20, 0..6).prop_map(|v| IntPoly::from_i64(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        }
    }
}
