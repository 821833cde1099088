//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An edge id that does not exist in the graph.
    UnknownEdge(usize),
    /// A structural size guard was exceeded (edge bound, search cap, subset scan).
    SizeGuard { what: &'static str, limit: usize, actual: usize },
    /// The point-counting budget would be exceeded.
    BudgetExceeded { needed: u128, budget: u64 },
    /// A modulus that is not prime was supplied.
    NotPrime(u64),
    /// Polynomials over different variable counts were combined.
    VariableCountMismatch { left: usize, right: usize },
    /// A variable index outside 1..=n.
    VariableOutOfRange { index: usize, nvars: usize },
    /// A product left a monomial with a repeated variable that did not cancel.
    NonMultilinearProduct,
    /// An exact division had a nonzero remainder.
    InexactDivision(&'static str),
    /// Division by the zero polynomial.
    DivisionByZero,
    /// A specialization did not clear to integer coefficients.
    NonIntegralSpecialization,
    /// Not enough interpolation nodes for the required degree bound.
    InsufficientPrimes { needed: usize, got: usize },
    /// An operation required a different edge kind.
    EdgeKindMismatch { edge: usize, expected: &'static str },
    /// An operation that is only defined away from forests.
    ForestInput,
    /// A base class needed by a closed-form operation is not rule-derived.
    ClassUnavailable(&'static str),
    /// A character has no value on a generator that the recursion needs.
    CharacterUndefined(String),
    /// Invalid parameters for a family constructor or operation.
    InvalidParam(String),
    /// Input parsing failed (graph files, polynomial strings, fixtures).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownEdge(e) => write!(f, "unknown edge id {e}"),
            Error::SizeGuard { what, limit, actual } => {
                write!(f, "size guard exceeded for {what}: {actual} > {limit}")
            }
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "counting budget exceeded: needs {needed} steps, budget {budget}")
            }
            Error::NotPrime(q) => write!(f, "{q} is not prime"),
            Error::VariableCountMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            Error::VariableOutOfRange { index, nvars } => {
                write!(f, "variable t{index} out of range 1..={nvars}")
            }
            Error::NonMultilinearProduct => {
                write!(f, "product has a non-multilinear monomial that does not cancel")
            }
            Error::InexactDivision(what) => write!(f, "inexact division: {what}"),
            Error::DivisionByZero => write!(f, "division by zero polynomial"),
            Error::NonIntegralSpecialization => {
                write!(f, "specialization does not clear to integer coefficients")
            }
            Error::InsufficientPrimes { needed, got } => {
                write!(f, "need at least {needed} sample primes, got {got}")
            }
            Error::EdgeKindMismatch { edge, expected } => {
                write!(f, "edge {edge} must be {expected}")
            }
            Error::ForestInput => write!(f, "operation undefined for forests"),
            Error::ClassUnavailable(what) => write!(f, "class not rule-derived: {what}"),
            Error::CharacterUndefined(key) => {
                write!(f, "character undefined on generator {key}")
            }
            Error::InvalidParam(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
