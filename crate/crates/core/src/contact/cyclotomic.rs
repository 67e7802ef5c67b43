//! Cyclotomic polynomials and evaluation at matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::RationalMatrix;

/// Integer polynomial, lowest degree first.
pub(crate) type Poly = Vec<BigInt>;

pub(crate) fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

pub(crate) fn euler_phi(d: u64) -> u64 {
    (1..=d).filter(|k| k.gcd(&d) == 1).count() as u64
}

/// Exact division of monic polynomials.
fn div_exact(num: &Poly, den: &Poly) -> Poly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub(crate) fn cyclotomic(d: u64) -> Poly {
    let mut p: Poly = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for k in divisors(d) {
        if k < d {
            p = div_exact(&p, &cyclotomic(k));
        }
    }
    p
}

/// `p(g)` by Horner's rule.
pub(crate) fn eval_at(p: &Poly, g: &RationalMatrix) -> RationalMatrix {
    let n = g.rows();
    let mut acc = RationalMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc
            .mul(g)
            .expect("square")
            .add(&RationalMatrix::scalar(n, BigRational::from_integer(c.clone())))
            .expect("square");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &Poly) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(ints(&cyclotomic(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }
}
