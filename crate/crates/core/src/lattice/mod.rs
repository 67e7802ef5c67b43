//! Exact integer linear algebra over lattices.
//!
//! Everything here works with arbitrary-precision integers (`BigInt`) or
//! exact rationals (`BigRational`). There is no floating point in this module.

mod map;
mod matrix;
mod normal_form;
mod rational;

pub use map::LatticeMap;
pub use matrix::IntegerMatrix;
pub use normal_form::{hermite_normal_form, smith_normal_form, SmithDecomposition};
pub use rational::RationalMatrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// An integer vector in some lattice `Z^r`.
pub type LatticeVector = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("ragged rows: row {row} has length {len}, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("infinite index: inclusion matrix is singular")]
    InfiniteIndex,
    #[error("cannot primitivize the zero vector")]
    ZeroVector,
}

/// Divide `v` by the gcd of its entries.
pub fn primitivize(v: &[BigInt]) -> Result<LatticeVector, LatticeError> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// True when the entries of `v` have gcd 1.
pub fn is_primitive(v: &[BigInt]) -> bool {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    g.abs() == BigInt::from(1)
}

/// Convenience conversion used heavily by tests and the pipelines.
pub fn ivec(v: &[i64]) -> LatticeVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `x*a + y*b = g`.
pub(crate) fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::from(1), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::from(1));
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
