//! Multilinear polynomials in edge variables `t_1..t_n`.
//!
//! Monomials are subsets of {1..n} stored as bitmasks, so every variable
//! exponent is at most one by construction. Kirchhoff polynomials and their
//! deletion/contraction pieces live here.

use std::collections::BTreeMap;
use std::fmt;

use num::{Integer, Signed, Zero};

use super::{Int, Rat};
use crate::error::{Error, Result};

pub const MAX_EDGE_VARS: usize = 64;

/// Sparse multilinear polynomial over Z in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePoly {
    nvars: usize,
    terms: BTreeMap<u64, Int>,
}

impl EdgePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_EDGE_VARS, "at most {MAX_EDGE_VARS} edge variables");
        EdgePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = EdgePoly::zero(nvars);
        p.insert(0, Int::from(1));
        p
    }

    /// The variable t_i, 1-based.
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        check_var(i, nvars)?;
        let mut p = EdgePoly::zero(nvars);
        p.insert(1u64 << (i - 1), Int::from(1));
        Ok(p)
    }

    /// Monomial from a set of 1-based variable indices.
    pub fn monomial(nvars: usize, vars: &[usize], coeff: Int) -> Result<Self> {
        let mut mask = 0u64;
        for &i in vars {
            check_var(i, nvars)?;
            mask |= 1 << (i - 1);
        }
        let mut p = EdgePoly::zero(nvars);
        p.insert(mask, coeff);
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Int)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    fn insert(&mut self, mask: u64, c: Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.insert(m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        EdgePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product. Monomial pairs sharing a variable would leave a squared
    /// variable; such contributions must cancel algebraically or the product
    /// is rejected, never silently truncated.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = EdgePoly::zero(self.nvars);
        // keyed by (union mask, squared-variables mask)
        let mut overflow: BTreeMap<(u64, u64), Int> = BTreeMap::new();
        for (&ma, a) in &self.terms {
            for (&mb, b) in &other.terms {
                let shared = ma & mb;
                let prod = a * b;
                if shared == 0 {
                    out.insert(ma | mb, prod);
                } else {
                    let entry = overflow.entry((ma | mb, shared)).or_insert_with(Int::zero);
                    *entry += prod;
                }
            }
        }
        if overflow.values().any(|c| !c.is_zero()) {
            return Err(Error::NonMultilinearProduct);
        }
        Ok(out)
    }

    /// Selects monomials containing t_i and removes t_i.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        check_var(i, self.nvars)?;
        let bit = 1u64 << (i - 1);
        let mut out = EdgePoly::zero(self.nvars);
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                out.insert(m & !bit, c.clone());
            }
        }
        Ok(out)
    }

    /// Drops monomials containing t_i.
    pub fn set_zero(&self, i: usize) -> Result<Self> {
        check_var(i, self.nvars)?;
        let bit = 1u64 << (i - 1);
        let mut out = EdgePoly::zero(self.nvars);
        for (&m, c) in &self.terms {
            if m & bit == 0 {
                out.insert(m, c.clone());
            }
        }
        Ok(out)
    }

    /// Multiply by the variable t_i (which must not already occur).
    pub fn mul_var(&self, i: usize) -> Result<Self> {
        check_var(i, self.nvars)?;
        let bit = 1u64 << (i - 1);
        let mut out = EdgePoly::zero(self.nvars);
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                return Err(Error::NonMultilinearProduct);
            }
            out.insert(m | bit, c.clone());
        }
        Ok(out)
    }

    /// Remove variable t_i from the index space; it must not occur.
    pub fn drop_var(&self, i: usize) -> Result<Self> {
        check_var(i, self.nvars)?;
        let bit = 1u64 << (i - 1);
        let low = bit - 1;
        let mut out = EdgePoly::zero(self.nvars - 1);
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                return Err(Error::VariableOutOfRange { index: i, nvars: self.nvars - 1 });
            }
            out.insert((m & low) | ((m & !low & !bit) >> 1), c.clone());
        }
        Ok(out)
    }

    /// Rename variables: `map[old-1]` is the new 1-based index.
    pub fn permute_vars(&self, map: &[usize], new_nvars: usize) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: map.len(), right: self.nvars });
        }
        let mut out = EdgePoly::zero(new_nvars);
        for (&m, c) in &self.terms {
            let mut nm = 0u64;
            for (old, &new) in map.iter().enumerate() {
                if m & (1 << old) != 0 {
                    check_var(new, new_nvars)?;
                    nm |= 1 << (new - 1);
                }
            }
            out.insert(nm, c.clone());
        }
        Ok(out)
    }

    pub fn eval_int(&self, point: &[Int]) -> Result<Int> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: point.len(), right: self.nvars });
        }
        let mut acc = Int::zero();
        for (&m, c) in &self.terms {
            let mut term = c.clone();
            for (i, value) in point.iter().enumerate() {
                if m & (1 << i) != 0 {
                    term *= value;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Exact evaluation at a point over F_q.
    pub fn eval_mod_p(&self, point: &[u64], q: u64) -> Result<u64> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: point.len(), right: self.nvars });
        }
        let mut acc: u64 = 0;
        for (&m, c) in &self.terms {
            let mut term = reduce_coeff(c, q);
            let mut bits = m;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                term = term * (point[i] % q) % q;
                bits &= bits - 1;
            }
            acc = (acc + term) % q;
        }
        Ok(acc)
    }

    /// Compiled form for fast repeated evaluation mod q: (mask, coeff mod q).
    pub fn compile_mod_p(&self, q: u64) -> Vec<(u64, u64)> {
        self.terms
            .iter()
            .filter_map(|(&m, c)| {
                let r = reduce_coeff(c, q);
                (r != 0).then_some((m, r))
            })
            .collect()
    }

    /// Every monomial has exactly this degree.
    pub fn is_homogeneous_of_degree(&self, deg: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == deg)
    }

    pub fn all_coeffs_one(&self) -> bool {
        self.terms.values().all(|c| *c == Int::from(1))
    }

    /// Monomials as sorted 1-based index lists, in mask order.
    pub fn monomials(&self) -> Vec<(Vec<usize>, Int)> {
        self.terms
            .iter()
            .map(|(&m, c)| {
                let vars: Vec<usize> =
                    (0..self.nvars).filter(|i| m & (1 << i) != 0).map(|i| i + 1).collect();
                (vars, c.clone())
            })
            .collect()
    }
}

fn check_var(i: usize, nvars: usize) -> Result<()> {
    if i == 0 || i > nvars {
        return Err(Error::VariableOutOfRange { index: i, nvars });
    }
    Ok(())
}

fn reduce_coeff(c: &Int, q: u64) -> u64 {
    let r = c.mod_floor(&Int::from(q));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Rational evaluation used by the antipode/Birkhoff characters is not needed
/// here; kept minimal on purpose.
impl EdgePoly {
    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: point.len(), right: self.nvars });
        }
        let mut acc = Rat::from_integer(Int::zero());
        for (&m, c) in &self.terms {
            let mut term = Rat::from_integer(c.clone());
            for (i, value) in point.iter().enumerate() {
                if m & (1 << i) != 0 {
                    term *= value;
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl fmt::Display for EdgePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut monos = self.monomials();
        monos.sort_by(|a, b| a.0.cmp(&b.0));
        let mut first = true;
        for (vars, c) in monos {
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
            if mag != Int::from(1) || vars.is_empty() {
                factors.push(mag.to_string());
            }
            for v in vars {
                factors.push(format!("t{v}"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri_psi() -> EdgePoly {
        // the classical tree-product form t1*t2 + t1*t3 + t2*t3, used here
        // purely as a polynomial fixture
        let m = |v: &[usize]| EdgePoly::monomial(3, v, Int::from(1)).unwrap();
        m(&[1, 2]).add(&m(&[1, 3])).unwrap().add(&m(&[2, 3])).unwrap()
    }

    #[test]
    fn derivative_and_restriction() {
        let p = tri_psi();
        let d3 = p.partial_derivative(3).unwrap();
        let t1_plus_t2 = EdgePoly::var(3, 1).unwrap().add(&EdgePoly::var(3, 2).unwrap()).unwrap();
        assert_eq!(d3, t1_plus_t2);
        assert_eq!(p.set_zero(3).unwrap(), EdgePoly::monomial(3, &[1, 2], Int::from(1)).unwrap());
        assert_eq!(
            EdgePoly::var(2, 1).unwrap().partial_derivative(1).unwrap(),
            EdgePoly::one(2)
        );
        assert_eq!(
            EdgePoly::monomial(3, &[1, 2], Int::from(1)).unwrap().partial_derivative(3).unwrap(),
            EdgePoly::zero(3)
        );
        assert_eq!(EdgePoly::one(2).set_zero(1).unwrap(), EdgePoly::one(2));
    }

    #[test]
    fn eval_mod_p_examples() {
        let p = tri_psi();
        assert_eq!(p.eval_mod_p(&[1, 1, 1], 2).unwrap(), 1); // 3 mod 2
        assert_eq!(p.eval_mod_p(&[1, 0, 0], 2).unwrap(), 0);
        assert_eq!(p.eval_mod_p(&[0, 0, 0], 5).unwrap(), 0);
        // t1*t2 + t1*t3 over F_2 at (1,1,0)
        let q = EdgePoly::monomial(3, &[1, 2], Int::from(1))
            .unwrap()
            .add(&EdgePoly::monomial(3, &[1, 3], Int::from(1)).unwrap())
            .unwrap();
        assert_eq!(q.eval_mod_p(&[1, 1, 0], 2).unwrap(), 1);
    }

    #[test]
    fn non_multilinear_products_are_rejected_unless_cancelling() {
        let t1 = EdgePoly::var(2, 1).unwrap();
        assert_eq!(t1.mul(&t1), Err(Error::NonMultilinearProduct));
        // (t1 + t2)(t1 - t2) has t1^2 - t2^2 surviving
        let t2 = EdgePoly::var(2, 2).unwrap();
        let sum = t1.add(&t2).unwrap();
        let diff = t1.sub(&t2).unwrap();
        assert_eq!(sum.mul(&diff), Err(Error::NonMultilinearProduct));
        // (t1 + t2)(t1 - t1) = 0: squared terms cancel
        let zero = t1.sub(&t1).unwrap();
        assert_eq!(sum.mul(&zero).unwrap(), EdgePoly::zero(2));
    }

    #[test]
    fn drop_and_permute() {
        let p = tri_psi().set_zero(3).unwrap();
        let dropped = p.drop_var(3).unwrap();
        assert_eq!(dropped, EdgePoly::monomial(2, &[1, 2], Int::from(1)).unwrap());
        assert!(tri_psi().drop_var(3).is_err());
        let swapped = tri_psi().permute_vars(&[2, 1, 3], 3).unwrap();
        assert_eq!(swapped, tri_psi());
    }

    fn arb_multilinear() -> impl Strategy<Value = EdgePoly> {
        prop::collection::vec((0u64..16, -9i64..=9), 0..6).prop_map(|terms| {
            let mut p = EdgePoly::zero(4);
            for (m, c) in terms {
                p.insert(m, Int::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn addition_commutes_and_distributes_over_disjoint_mul(
            a in arb_multilinear(), b in arb_multilinear()
        ) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            // multiply by a fresh disjoint variable block: embed into 8 vars
            let emb = |p: &EdgePoly| p.permute_vars(&[1, 2, 3, 4], 8).unwrap();
            let t5 = EdgePoly::var(8, 5).unwrap();
            let lhs = emb(&a.add(&b).unwrap()).mul(&t5).unwrap();
            let rhs = emb(&a).mul(&t5).unwrap().add(&emb(&b).mul(&t5).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_ring_hom(a in arb_multilinear(), b in arb_multilinear()) {
            let pt: Vec<Int> = vec![2.into(), (-1).into(), 3.into(), 0.into()];
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(
                sum.eval_int(&pt).unwrap(),
                a.eval_int(&pt).unwrap() + b.eval_int(&pt).unwrap()
            );
        }
    }
}
