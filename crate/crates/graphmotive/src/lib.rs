//! Exact combinatorial and motivic graph invariants.
//!
//! The crate computes Kirchhoff-Symanzik polynomials, Tutte polynomials and
//! their specializations, and Grothendieck-ring classes of affine graph
//! hypersurface complements via deletion-contraction recursions and
//! closed-form family formulas, and cross-verifies every class against an
//! independent finite-field point-counting oracle.

pub mod corpus;
pub mod error;
pub mod graph;
pub mod hopf;
pub mod kirchhoff;
pub mod motivic;
pub mod pointcount;
pub mod poly;
pub mod tutte;
pub mod universal;

pub use error::{Error, Result};
