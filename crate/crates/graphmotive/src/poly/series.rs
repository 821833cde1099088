//! Truncated generating series with exact coefficients.
//!
//! Exponential-kind series store the sequence term a_m itself (m! times the
//! series coefficient of s^m), so all arithmetic stays in the coefficient
//! ring; the product rule is then the binomial convolution.

use super::{binomial, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Exponential,
    Ordinary,
}

/// Series truncated at order M: terms a_0..a_M in a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTrunc<C: Ring> {
    pub kind: SeriesKind,
    terms: Vec<C>,
}

impl<C: Ring> SeriesTrunc<C> {
    pub fn new(kind: SeriesKind, terms: Vec<C>) -> Self {
        assert!(!terms.is_empty(), "a truncated series has at least the order-0 term");
        SeriesTrunc { kind, terms }
    }

    pub fn from_fn(kind: SeriesKind, order: usize, f: impl FnMut(usize) -> C) -> Self {
        SeriesTrunc::new(kind, (0..=order).map(f).collect())
    }

    pub fn zero(kind: SeriesKind, order: usize) -> Self {
        SeriesTrunc::from_fn(kind, order, |_| C::zero_elem())
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, m: usize) -> &C {
        &self.terms[m]
    }

    pub fn terms(&self) -> &[C] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(SeriesTrunc::from_fn(self.kind, self.order().min(other.order()), |m| {
            self.terms[m].add_ref(&other.terms[m])
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(SeriesTrunc::from_fn(self.kind, self.order().min(other.order()), |m| {
            self.terms[m].sub_ref(&other.terms[m])
        }))
    }

    /// Cauchy product for ordinary kind, binomial convolution for exponential.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order().min(other.order());
        let kind = self.kind;
        Ok(SeriesTrunc::from_fn(kind, order, |m| {
            let mut acc = C::zero_elem();
            for k in 0..=m {
                let prod = self.terms[k].mul_ref(&other.terms[m - k]);
                let contrib = match kind {
                    SeriesKind::Ordinary => prod,
                    SeriesKind::Exponential => prod.scale_int(&binomial(m, k)),
                };
                acc = acc.add_ref(&contrib);
            }
            acc
        }))
    }

    /// Multiply every term by a fixed ring element.
    pub fn scale(&self, c: &C) -> Self {
        SeriesTrunc::from_fn(self.kind, self.order(), |m| self.terms[m].mul_ref(c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::InvalidParam("mixing exponential and ordinary series".into()));
        }
        Ok(())
    }
}

impl<C: Ring> SeriesTrunc<C> {
    /// e^{a s} as an exponential-kind series: term m is a^m.
    pub fn exp_of(a: &C, order: usize) -> Self {
        let mut terms = Vec::with_capacity(order + 1);
        let mut acc = C::one_elem();
        for _ in 0..=order {
            terms.push(acc.clone());
            acc = acc.mul_ref(a);
        }
        SeriesTrunc::new(SeriesKind::Exponential, terms)
    }

    /// 1/(1 - a s) as an ordinary-kind series: term m is a^m.
    pub fn geometric(a: &C, order: usize) -> Self {
        let mut terms = Vec::with_capacity(order + 1);
        let mut acc = C::one_elem();
        for _ in 0..=order {
            terms.push(acc.clone());
            acc = acc.mul_ref(a);
        }
        SeriesTrunc::new(SeriesKind::Ordinary, terms)
    }

    /// Multiply by s: shifts terms up. Exponential kind multiplies the new
    /// term m by m (since s * a_{m-1} s^{m-1}/(m-1)! = m a_{m-1} s^m/m!).
    pub fn shift_s(&self) -> Self {
        let kind = self.kind;
        SeriesTrunc::from_fn(kind, self.order(), |m| {
            if m == 0 {
                C::zero_elem()
            } else {
                match kind {
                    SeriesKind::Ordinary => self.terms[m - 1].clone(),
                    SeriesKind::Exponential => {
                        self.terms[m - 1].scale_int(&super::Int::from(m))
                    }
                }
            }
        })
    }
}

/// Order-2 linear recurrence a_{m+2} = f2 * a_{m+1} + g2 * a_m, as a series.
pub fn series_solve_order2<C: Ring>(
    f2: &C,
    g2: &C,
    seed0: &C,
    seed1: &C,
    order: usize,
) -> SeriesTrunc<C> {
    let mut terms = vec![seed0.clone()];
    if order >= 1 {
        terms.push(seed1.clone());
    }
    while terms.len() <= order {
        let n = terms.len();
        let next = f2.mul_ref(&terms[n - 1]).add_ref(&g2.mul_ref(&terms[n - 2]));
        terms.push(next);
    }
    SeriesTrunc::new(SeriesKind::Exponential, terms)
}
