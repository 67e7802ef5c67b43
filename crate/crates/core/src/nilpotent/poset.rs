use num_rational::BigRational;
use serde::Serialize;

use super::NilpotentError;
use crate::lattice::RationalMatrix;

pub const MAX_K: usize = 20;

/// Which components of a generator `(m_0, .., m_{k-1})` are `E_{1,2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitSignature {
    pub bits: Vec<bool>,
}

impl OrbitSignature {
    pub fn from_mask(mask: u32, k: usize) -> Self {
        Self {
            bits: (0..k).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn mask(&self) -> u32 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| if b { m | 1 << i } else { m })
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The generator: `E_{1,2}` where the bit is set, zero elsewhere.
    pub fn generator(&self) -> Vec<RationalMatrix> {
        self.bits
            .iter()
            .map(|&b| RationalMatrix::from_i64(&[&[0, i64::from(b)], &[0, 0]]))
            .collect()
    }
}

/// Dimension of the adjoint orbit of `m` in `sl(2)`, as the rank of `ad_m`.
pub(crate) fn sl2_orbit_dim(m: &RationalMatrix) -> usize {
    let basis = [
        RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]),
        RationalMatrix::from_i64(&[&[0, 0], &[1, 0]]),
    ];
    let minus_one = BigRational::from_integer((-1).into());
    let rows: Vec<Vec<_>> = basis
        .iter()
        .map(|b| {
            let mb = m.mul(b).expect("2x2");
            let bm = b.mul(m).expect("2x2").scale(&minus_one);
            mb.add(&bm).expect("2x2").to_rows().into_iter().flatten().collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).expect("3x4").rank()
}

/// The orbits of the nilpotent cone of `sl(2)^k`, ordered by closure.
///
/// Elements are indexed by bitmask; `b' <= b` exactly when `b'` is a submask
/// of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoset {
    k: usize,
    dims: Vec<usize>,
}

impl OrbitPoset {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn signature(&self, mask: u32) -> OrbitSignature {
        OrbitSignature::from_mask(mask, self.k)
    }

    pub fn dim(&self, mask: u32) -> usize {
        self.dims[mask as usize]
    }

    /// Dimension of the projectivized orbit; `None` for the zero orbit.
    pub fn projective_dim(&self, mask: u32) -> Option<usize> {
        (mask != 0).then(|| self.dim(mask) - 1)
    }

    pub fn leq(&self, a: u32, b: u32) -> bool {
        a & !b == 0
    }

    /// Covering pairs `(lower, upper)`, ordered by upper then lower.
    pub fn covers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let k = self.k;
        (0..self.len() as u32).flat_map(move |b| {
            (0..k).filter(move |i| b >> i & 1 == 1).map(move |i| (b & !(1 << i), b))
        })
    }

    pub fn cover_count(&self) -> usize {
        self.k << (self.k - 1)
    }
}

pub fn orbit_poset(k: usize) -> Result<OrbitPoset, NilpotentError> {
    if !(1..=MAX_K).contains(&k) {
        return Err(NilpotentError::PosetSize(k));
    }
    let e12 = OrbitSignature::from_mask(1, 1).generator().remove(0);
    let zero = RationalMatrix::zeros(2, 2);
    let (d1, d0) = (sl2_orbit_dim(&e12), sl2_orbit_dim(&zero));
    let dims = (0u32..1 << k)
        .map(|m| {
            let w = m.count_ones() as usize;
            w * d1 + (k - w) * d0
        })
        .collect();
    Ok(OrbitPoset { k, dims })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub k: usize,
    pub poset_size: usize,
    pub covering_pairs: usize,
    /// Every comparable pair `b' < b` has even codimension.
    pub all_even: bool,
    /// Every comparable pair has codimension `2 (|b| - |b'|)`.
    pub formula_holds: bool,
}

/// Closure codimensions in the orbit poset.
///
/// Codimension is additive along chains, so every comparable pair is
/// settled by the covering pairs (each must have codimension 2) together
/// with the pairs `0 < b` (all dimensions congruent to `dim 0` mod 2).
/// This keeps the check linear in the size of the poset.
pub fn stratification_parity(k: usize) -> Result<ParityReport, NilpotentError> {
    let p = orbit_poset(k)?;
    let mut covering_pairs = 0;
    let mut covers_ok = true;
    for (lo, hi) in p.covers() {
        covering_pairs += 1;
        covers_ok &= p.dim(hi) - p.dim(lo) == 2;
    }
    let base = p.dim(0);
    let mut all_even = true;
    let mut from_zero_ok = true;
    for b in 1..p.len() as u32 {
        let codim = p.dim(b) - base;
        all_even &= codim % 2 == 0;
        from_zero_ok &= codim == 2 * b.count_ones() as usize;
    }
    Ok(ParityReport {
        k,
        poset_size: p.len(),
        covering_pairs,
        all_even: all_even && covers_ok,
        formula_holds: covers_ok && from_zero_ok,
    })
}
