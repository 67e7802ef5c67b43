//! Quadratic maps onto nilpotent cones and the orbit stratification of
//! `sl(2)^k`.
//!
//! `psi_map` sends `C^{2n+2}` onto the nilpotent cone of `sl(2)^{n+1}`;
//! `phi_map` sends `C^6` into `sp(4) + sl(2)`, landing on rank-one nilpotents
//! in the first summand. `sp(4)` uses `J' = [[0, I2], [-I2, 0]]`, for which
//! `A^T J' + J' A = 0` says the off-diagonal blocks are symmetric and the
//! lower-right block is minus the transpose of the upper-left one.

mod kk;
mod maps;
mod poset;

pub use kk::{kk_pullback_check, KkPoint, KkReport, KK_TOLERANCE};
pub use maps::{
    is_sp4, phi_map, phi_map_as_printed, psi_map, sp4_form, verify_homogeneity, verify_image_on_samples,
    verify_image_properties, verify_invariance, ImageProperties, LieElement, NilpotentMap, SamplePlan,
};
pub use poset::{orbit_poset, stratification_parity, OrbitPoset, OrbitSignature, ParityReport, MAX_K};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("input has length {found}, expected {expected}")]
    InputLength { expected: usize, found: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("coordinate range must be at least 1")]
    Range,
    #[error("coordinate {index} out of range for dimension {dim}")]
    Coordinate { index: usize, dim: usize },
    #[error("poset size k = {0} outside 1..=20")]
    PosetSize(usize),
    #[error("the pullback check needs n >= 1")]
    KkRank,
}

/// The point of `C^{2n+2}` whose image under `psi_map` is the generator of
/// the orbit with signature `b`.
pub fn signature_point(b: &OrbitSignature) -> Vec<BigRational> {
    let k = b.bits.len();
    let mut x = vec![BigRational::zero(); 2 * k];
    for (i, &bit) in b.bits.iter().enumerate() {
        if bit {
            x[i] = BigRational::one();
        }
    }
    x
}

/// The coordinate flips generating the torus subgroup acting on `C^{2n+2}`
/// by negating `x_i` and `x_{i+n+1}`, `i = 1..n`.
pub fn fav_flips(n: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|i| vec![i, i + n + 1]).collect()
}

/// The claimed orbit type of the image of `phi_map` in `sp(4)`. Only
/// rank one and nilpotency are verified.
pub const PHI_ORBIT_LABEL: &str = "O_[2,1,1] (minimal orbit; label not machine-verified)";
