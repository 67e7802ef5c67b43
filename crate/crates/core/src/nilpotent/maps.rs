use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::NilpotentError;
use crate::lattice::RationalMatrix;

/// A component of a map output, tagged with the algebra it should lie in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieElement {
    Sl2(RationalMatrix),
    Sp4(RationalMatrix),
}

impl LieElement {
    pub fn matrix(&self) -> &RationalMatrix {
        match self {
            LieElement::Sl2(m) | LieElement::Sp4(m) => m,
        }
    }

    fn scale(&self, c: &BigRational) -> Self {
        match self {
            LieElement::Sl2(m) => LieElement::Sl2(m.scale(c)),
            LieElement::Sp4(m) => LieElement::Sp4(m.scale(c)),
        }
    }
}

fn sl2_block(a: &BigRational, b: &BigRational) -> RationalMatrix {
    let ab = a * b;
    RationalMatrix::from_rows(vec![vec![ab.clone(), a * a], vec![-(b * b), -ab]])
        .expect("2x2 block")
}

/// `x -> ([[x_i x_{i+n+1}, x_i^2], [-x_{i+n+1}^2, -x_i x_{i+n+1}]])_{i=0..n}`.
pub fn psi_map(n: usize, x: &[BigRational]) -> Result<Vec<LieElement>, NilpotentError> {
    if x.len() != 2 * n + 2 {
        return Err(NilpotentError::InputLength {
            expected: 2 * n + 2,
            found: x.len(),
        });
    }
    Ok((0..=n)
        .map(|i| LieElement::Sl2(sl2_block(&x[i], &x[i + n + 1])))
        .collect())
}

fn check6(x: &[BigRational]) -> Result<(), NilpotentError> {
    if x.len() != 6 {
        return Err(NilpotentError::InputLength { expected: 6, found: x.len() });
    }
    Ok(())
}

/// `C^6 -> sp(4) + sl(2)`. The 4x4 part is `u w^T` with
/// `u = (x0, x2, -x5, -x3)`, `w = (x5, x3, x0, x2)`.
pub fn phi_map(x: &[BigRational]) -> Result<(LieElement, LieElement), NilpotentError> {
    check6(x)?;
    let u = [x[0].clone(), x[2].clone(), -x[5].clone(), -x[3].clone()];
    let w = [&x[5], &x[3], &x[0], &x[2]];
    let rows = u.iter().map(|ui| w.iter().map(|wj| ui * *wj).collect()).collect();
    let sp4 = RationalMatrix::from_rows(rows).expect("4x4 block");
    Ok((LieElement::Sp4(sp4), LieElement::Sl2(sl2_block(&x[1], &x[4]))))
}

/// The 4x4 matrix exactly as typeset, with lower-left block
/// `[[x3^2, x3 x5], [x3 x5, x5^2]]`. Kept only to show that it is not rank 1.
pub fn phi_map_as_printed(x: &[BigRational]) -> Result<(LieElement, LieElement), NilpotentError> {
    check6(x)?;
    let m = |i: usize, j: usize| &x[i] * &x[j];
    let rows = vec![
        vec![m(0, 5), m(0, 3), m(0, 0), m(0, 2)],
        vec![m(2, 5), m(2, 3), m(0, 2), m(2, 2)],
        vec![m(3, 3), m(3, 5), -m(0, 5), -m(2, 5)],
        vec![m(3, 5), m(5, 5), -m(0, 3), -m(2, 3)],
    ];
    let sp4 = RationalMatrix::from_rows(rows).expect("4x4 block");
    Ok((LieElement::Sp4(sp4), LieElement::Sl2(sl2_block(&x[1], &x[4]))))
}

/// The maps under verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NilpotentMap {
    Psi(usize),
    Phi,
    PhiAsPrinted,
}

impl NilpotentMap {
    pub fn input_dim(&self) -> usize {
        match self {
            NilpotentMap::Psi(n) => 2 * n + 2,
            NilpotentMap::Phi | NilpotentMap::PhiAsPrinted => 6,
        }
    }

    pub fn eval(&self, x: &[BigRational]) -> Result<Vec<LieElement>, NilpotentError> {
        match self {
            NilpotentMap::Psi(n) => psi_map(*n, x),
            NilpotentMap::Phi => phi_map(x).map(|(a, b)| vec![a, b]),
            NilpotentMap::PhiAsPrinted => phi_map_as_printed(x).map(|(a, b)| vec![a, b]),
        }
    }
}

/// `J' = [[0, I2], [-I2, 0]]`.
pub fn sp4_form() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]])
}

pub fn is_sp4(a: &RationalMatrix) -> bool {
    if a.rows() != 4 || a.cols() != 4 {
        return false;
    }
    let j = sp4_form();
    let lhs = a.transpose().mul(&j).expect("4x4");
    let rhs = j.mul(a).expect("4x4");
    lhs.add(&rhs).expect("4x4").is_zero()
}

fn trace(m: &RationalMatrix) -> BigRational {
    (0..m.rows()).map(|i| m.get(i, i).clone()).sum()
}

fn all_minors_vanish(m: &RationalMatrix) -> bool {
    let (r, c) = (m.rows(), m.cols());
    for i in 0..r {
        for k in i + 1..r {
            for j in 0..c {
                for l in j + 1..c {
                    let det = m.get(i, j) * m.get(k, l) - m.get(i, l) * m.get(k, j);
                    if !det.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImageProperties {
    pub traceless: bool,
    pub algebra_membership: bool,
    pub rank_le_1: bool,
    pub nilpotent: bool,
}

impl ImageProperties {
    pub fn all(&self) -> bool {
        self.traceless && self.algebra_membership && self.rank_le_1 && self.nilpotent
    }

    fn and(self, o: Self) -> Self {
        Self {
            traceless: self.traceless && o.traceless,
            algebra_membership: self.algebra_membership && o.algebra_membership,
            rank_le_1: self.rank_le_1 && o.rank_le_1,
            nilpotent: self.nilpotent && o.nilpotent,
        }
    }

    const TRUE: Self = Self {
        traceless: true,
        algebra_membership: true,
        rank_le_1: true,
        nilpotent: true,
    };
}

/// Trace, algebra membership, rank and square-zero of every component.
pub fn verify_image_properties(output: &[LieElement]) -> ImageProperties {
    output.iter().fold(ImageProperties::TRUE, |acc, e| {
        let m = e.matrix();
        let traceless = trace(m).is_zero();
        let algebra_membership = match e {
            LieElement::Sl2(_) => m.rows() == 2 && m.cols() == 2 && traceless,
            LieElement::Sp4(_) => is_sp4(m),
        };
        acc.and(ImageProperties {
            traceless,
            algebra_membership,
            rank_le_1: all_minors_vanish(m),
            nilpotent: m.mul(m).is_ok_and(|sq| sq.is_zero()),
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplePlan {
    pub sample_count: usize,
    pub seed: u64,
    /// Numerators lie in `[-r, r]`, denominators in `[1, r]`.
    pub coordinate_range: u32,
}

impl SamplePlan {
    pub fn new(sample_count: usize, seed: u64) -> Result<Self, NilpotentError> {
        Self::with_range(sample_count, seed, 10)
    }

    pub fn with_range(sample_count: usize, seed: u64, coordinate_range: u32) -> Result<Self, NilpotentError> {
        if sample_count == 0 {
            return Err(NilpotentError::NoSamples);
        }
        if coordinate_range == 0 {
            return Err(NilpotentError::Range);
        }
        Ok(Self {
            sample_count,
            seed,
            coordinate_range,
        })
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub(crate) fn sample_rational(rng: &mut ChaCha8Rng, r: u32) -> BigRational {
    let r = i64::from(r);
    let num = rng.random_range(-r..=r);
    let den = rng.random_range(1..=r);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn sample_point(rng: &mut ChaCha8Rng, dim: usize, r: u32) -> Vec<BigRational> {
    (0..dim).map(|_| sample_rational(rng, r)).collect()
}

/// Image properties over every sampled point together with the origin.
pub fn verify_image_on_samples(map: NilpotentMap, plan: &SamplePlan) -> Result<ImageProperties, NilpotentError> {
    let mut rng = plan.rng();
    let mut acc = verify_image_properties(&map.eval(&vec![BigRational::zero(); map.input_dim()])?);
    for _ in 0..plan.sample_count {
        let x = sample_point(&mut rng, map.input_dim(), plan.coordinate_range);
        acc = acc.and(verify_image_properties(&map.eval(&x)?));
    }
    Ok(acc)
}

fn flip(x: &[BigRational], coords: &[usize]) -> Vec<BigRational> {
    x.iter()
        .enumerate()
        .map(|(i, v)| if coords.contains(&i) { -v.clone() } else { v.clone() })
        .collect()
}

/// `map(g x) = map(x)` for every sign flip `g` (given by the coordinates it
/// negates) at every sampled `x`.
pub fn verify_invariance(
    map: NilpotentMap,
    group: &[Vec<usize>],
    plan: &SamplePlan,
) -> Result<bool, NilpotentError> {
    let dim = map.input_dim();
    if let Some(&bad) = group.iter().flatten().find(|&&c| c >= dim) {
        return Err(NilpotentError::Coordinate { index: bad, dim });
    }
    let mut rng = plan.rng();
    for _ in 0..plan.sample_count {
        let x = sample_point(&mut rng, dim, plan.coordinate_range);
        let y = map.eval(&x)?;
        for g in group {
            if map.eval(&flip(&x, g))? != y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `map(t x) = t^2 map(x)` for sampled `t` and `x`, including `t = 0, 1`.
pub fn verify_homogeneity(map: NilpotentMap, plan: &SamplePlan) -> Result<bool, NilpotentError> {
    let dim = map.input_dim();
    let mut rng = plan.rng();
    for k in 0..plan.sample_count {
        let x = sample_point(&mut rng, dim, plan.coordinate_range);
        let t = match k {
            0 => BigRational::zero(),
            1 => BigRational::one(),
            _ => sample_rational(&mut rng, plan.coordinate_range),
        };
        let tx: Vec<BigRational> = x.iter().map(|v| v * &t).collect();
        let lhs = map.eval(&tx)?;
        let t2 = &t * &t;
        let rhs: Vec<LieElement> = map.eval(&x)?.iter().map(|e| e.scale(&t2)).collect();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    fn mat(e: &LieElement) -> RationalMatrix {
        e.matrix().clone()
    }

    #[test]
    fn psi_examples() {
        let out = psi_map(1, &qv(&[1, 0, 0, 0])).unwrap();
        assert_eq!(mat(&out[0]), RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert!(out[1].matrix().is_zero());
        let out = psi_map(1, &qv(&[1, 2, 3, 4])).unwrap();
        assert_eq!(mat(&out[0]), RationalMatrix::from_i64(&[&[3, 1], &[-9, -3]]));
        assert_eq!(mat(&out[1]), RationalMatrix::from_i64(&[&[8, 4], &[-16, -8]]));
        assert!(psi_map(2, &qv(&[0; 6])).unwrap().iter().all(|e| e.matrix().is_zero()));
        assert!(psi_map(1, &qv(&[1, 2])).is_err());
    }

    #[test]
    fn phi_examples() {
        let (a, b) = phi_map(&qv(&[1, 0, 0, 0, 0, 0])).unwrap();
        let mut e = RationalMatrix::zeros(4, 4);
        e.set(0, 2, BigRational::one());
        assert_eq!(mat(&a), e);
        assert!(b.matrix().is_zero());
        let (a, b) = phi_map(&qv(&[0, 1, 0, 0, 1, 0])).unwrap();
        assert!(a.matrix().is_zero());
        assert_eq!(mat(&b), RationalMatrix::from_i64(&[&[1, 1], &[-1, -1]]));
    }

    #[test]
    fn phi_agrees_with_print_off_lower_left_block() {
        let x = qv(&[2, -3, 5, 7, 11, -13]);
        let (a, _) = phi_map(&x).unwrap();
        let (p, _) = phi_map_as_printed(&x).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if !(i >= 2 && j < 2) {
                    assert_eq!(a.matrix().get(i, j), p.matrix().get(i, j), "entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn printed_phi_is_not_rank_one() {
        let (p, _) = phi_map_as_printed(&qv(&[1, 0, 0, 1, 0, 0])).unwrap();
        let props = verify_image_properties(&[p]);
        assert!(props.algebra_membership && props.traceless);
        assert!(!props.rank_le_1);
        assert!(!props.nilpotent);
        assert_eq!(p_rank(&phi_map_as_printed(&qv(&[1, 0, 0, 1, 0, 0])).unwrap().0), 3);
    }

    fn p_rank(e: &LieElement) -> usize {
        e.matrix().rank()
    }

    /// Off-diagonal blocks symmetric and lower-right block equal to minus
    /// the transpose of the upper-left one.
    fn block_conditions(a: &RationalMatrix) -> bool {
        let g = |i: usize, j: usize| a.get(i, j).clone();
        let sym = |r: usize, c: usize| g(r, c + 1) == g(r + 1, c);
        sym(0, 2) && sym(2, 0) && (0..2).all(|i| (0..2).all(|j| g(i + 2, j + 2) == -g(j, i)))
    }

    #[test]
    fn sp4_identity_matches_block_description() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            // small entries so that both outcomes occur
            let entries: Vec<BigRational> = (0..16)
                .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-1..=1))))
                .collect();
            let mut a = RationalMatrix::new(4, 4, entries).unwrap();
            assert_eq!(is_sp4(&a), block_conditions(&a));
            // force the conditions and check again
            for i in 0..2 {
                for j in 0..2 {
                    a.set(i + 2, j + 2, -a.get(j, i).clone());
                }
            }
            a.set(1, 2, a.get(0, 3).clone());
            a.set(3, 0, a.get(2, 1).clone());
            assert!(block_conditions(&a));
            assert!(is_sp4(&a));
        }
    }

    #[test]
    fn single_flip_breaks_invariance() {
        let plan = SamplePlan::new(10, 1).unwrap();
        assert!(!verify_invariance(NilpotentMap::Psi(1), &[vec![0]], &plan).unwrap());
        assert!(verify_invariance(NilpotentMap::Psi(1), &[vec![1, 3]], &plan).unwrap());
        assert!(verify_invariance(NilpotentMap::Phi, &[vec![1, 4]], &plan).unwrap());
        assert!(verify_invariance(NilpotentMap::Psi(1), &[vec![9]], &plan).is_err());
    }

    #[test]
    fn flip_at_all_ones() {
        let x = qv(&[1, 1, 1, 1]);
        let y = psi_map(1, &flip(&x, &[0])).unwrap();
        assert_ne!(y, psi_map(1, &x).unwrap());
    }

    #[test]
    fn homogeneity_at_three_halves() {
        let t = BigRational::new(BigInt::from(3), BigInt::from(2));
        let x = qv(&[1, -2, 3, 4, 0, 5]);
        let tx: Vec<_> = x.iter().map(|v| v * &t).collect();
        let lhs = phi_map(&tx).unwrap();
        let rhs = phi_map(&x).unwrap();
        assert_eq!(lhs.0, rhs.0.scale(&(&t * &t)));
        assert!(verify_homogeneity(NilpotentMap::Phi, &SamplePlan::new(20, 5).unwrap()).unwrap());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let plan = SamplePlan::new(3, 42).unwrap();
        let a = sample_point(&mut plan.rng(), 4, 10);
        let b = sample_point(&mut plan.rng(), 4, 10);
        assert_eq!(a, b);
        assert!(SamplePlan::new(0, 1).is_err());
    }
}
