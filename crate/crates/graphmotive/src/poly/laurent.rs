//! Laurent polynomials in the regulator variable `z` with rational
//! coefficients: the Rota-Baxter target ring for renormalization.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use super::{Int, Rat};

/// Finitely many terms c * z^k, k possibly negative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut p = LaurentPoly::default();
        p.insert(exp, coeff);
        p
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::from_integer(Int::from(1)))
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::default();
        for &(e, c) in terms {
            p.insert(e, Rat::from_integer(Int::from(c)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    fn insert(&mut self, exp: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(|| Rat::from_integer(Int::zero()));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for (&ea, a) in &self.terms {
            for (&eb, b) in &other.terms {
                out.insert(ea + eb, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Projection onto strictly negative powers of z.
    pub fn polar_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(&e, _)| e < 0).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    pub fn regular_part(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&e, _)| e >= 0)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// No terms with non-negative exponent.
    pub fn is_pure_polar(&self) -> bool {
        self.terms.keys().all(|&e| e < 0)
    }

    /// No terms with negative exponent.
    pub fn is_polar_free(&self) -> bool {
        self.terms.keys().all(|&e| e >= 0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
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
            let one = mag == Rat::from_integer(Int::from(1));
            match (e, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}*z^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_projection() {
        let p = LaurentPoly::from_int_terms(&[(-2, 1), (0, 3), (1, 1)]);
        assert_eq!(p.polar_part(), LaurentPoly::from_int_terms(&[(-2, 1)]));
        assert_eq!(LaurentPoly::from_int_terms(&[(0, 5)]).polar_part(), LaurentPoly::default());
        assert_eq!(p.polar_part().add(&p.regular_part()), p);
        assert_eq!(p.to_string(), "z^-2 + 3 + z");
    }

    #[test]
    fn multiplication() {
        let a = LaurentPoly::from_int_terms(&[(-1, 1), (0, 1)]);
        let b = LaurentPoly::from_int_terms(&[(-1, 1), (1, 2)]);
        assert_eq!(a.mul(&b), LaurentPoly::from_int_terms(&[(-2, 1), (-1, 1), (0, 2), (1, 2)]));
    }
}
