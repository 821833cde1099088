//! Exact polynomial and truncated-series arithmetic over the integers.
//!
//! Coefficients are arbitrary-precision (`num::BigInt`); rationals appear only
//! in Laurent polynomials and in interpolation.

mod bi_poly;
mod edge_poly;
mod int_poly;
mod laurent;
mod series;

pub use bi_poly::BiPoly;
pub use edge_poly::EdgePoly;
pub use int_poly::IntPoly;
pub use laurent::LaurentPoly;
pub use series::{series_solve_order2, SeriesKind, SeriesTrunc};

use num::BigInt;

pub type Int = BigInt;
pub type Rat = num::rational::BigRational;

/// Minimal commutative-ring interface shared by the coefficient types.
pub trait Ring: Clone + PartialEq + std::fmt::Display {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn from_int(n: i64) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn is_zero_elem(&self) -> bool {
        *self == Self::zero_elem()
    }
    fn scale_int(&self, n: &Int) -> Self;
}

impl Ring for Int {
    fn zero_elem() -> Self {
        Int::from(0)
    }
    fn one_elem() -> Self {
        Int::from(1)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: i64) -> Self {
        Int::from(n)
    }
    fn scale_int(&self, n: &Int) -> Self {
        self * n
    }
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::from(0);
    }
    let k = k.min(n - k);
    let mut num = Int::from(1);
    for i in 0..k {
        num *= Int::from(n - i);
        num /= Int::from(i + 1);
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 0), Int::from(1));
        assert_eq!(binomial(7, 1), Int::from(7));
        assert_eq!(binomial(6, 2), Int::from(15));
        assert_eq!(binomial(3, 5), Int::from(0));
    }
}
