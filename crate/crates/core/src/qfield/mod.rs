//! Exact arithmetic in Q and in towers of quadratic extensions of Q.
//!
//! A tower of level `L` is `Q(√r_1)(√r_2)...(√r_L)` where each radicand
//! `r_i` lives in the previous level. Elements are coordinate vectors of
//! length `2^L` in the basis of power products of the adjoined roots,
//! ordered like a binary counter: index `b` holds the product of the
//! roots `√r_{i+1}` for which bit `i` of `b` is set.

mod galois;
mod rational;
mod tower;

pub use galois::{FixedField, GaloisAut, GaloisGroup};
pub use rational::{format_rational, parse_rational, Rational};
pub use tower::{FieldElem, FieldTower, TowerExtension};
