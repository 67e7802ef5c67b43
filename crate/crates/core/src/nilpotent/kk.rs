//! Pullback of the Kostant-Kirillov form along `psi_map`.
//!
//! `sl(2)^{n+1}` is identified with its dual by the trace form. A tangent
//! vector `v` at `x` is pushed to `d psi(v)`, realized as `[xi, mu]` with
//! `mu = psi(x)` by least squares, and two such vectors pair to
//! `tr(mu [xi_v, xi_w])`. This is the one floating-point computation in the
//! crate.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::maps::{psi_map, sample_point, SamplePlan};
use super::NilpotentError;
use crate::contact::SymplecticAmbient;

pub const KK_TOLERANCE: f64 = 1e-9;

fn f(x: &BigRational) -> f64 {
    x.to_f64().expect("finite rational")
}

type M2 = [[f64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn bracket(a: &M2, b: &M2) -> M2 {
    let (ab, ba) = (mul(a, b), mul(b, a));
    std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j] - ba[i][j]))
}

fn trace(a: &M2) -> f64 {
    a[0][0] + a[1][1]
}

/// `H, E, F`.
const SL2_BASIS: [M2; 3] = [[[1.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]];

fn from_basis(c: &[f64]) -> M2 {
    [[c[0], c[1]], [c[2], -c[0]]]
}

/// Kostant-Kirillov data at one point of `C^{2n+2}`.
pub struct KkPoint {
    n: usize,
    x: Vec<f64>,
    mu: Vec<M2>,
    /// `xi -> [xi, mu]`, from `sl(2)^{n+1}` in the `H, E, F` basis to
    /// flattened 2x2 blocks.
    system: DMatrix<f64>,
    pinv: DMatrix<f64>,
}

impl KkPoint {
    /// `None` when `ad mu` has less than full rank `2(n+1)`, i.e. some
    /// component of `psi(x)` vanishes.
    pub fn new(n: usize, x: &[BigRational]) -> Result<Option<Self>, NilpotentError> {
        let mu: Vec<M2> = psi_map(n, x)?
            .iter()
            .map(|e| {
                let m = e.matrix();
                std::array::from_fn(|i| std::array::from_fn(|j| f(m.get(i, j))))
            })
            .collect();
        let k = n + 1;
        let mut system = DMatrix::zeros(4 * k, 3 * k);
        for (c, m) in mu.iter().enumerate() {
            for (j, b) in SL2_BASIS.iter().enumerate() {
                let br = bracket(b, m);
                for r in 0..4 {
                    system[(4 * c + r, 3 * c + j)] = br[r / 2][r % 2];
                }
            }
        }
        let scale = system.amax().max(f64::MIN_POSITIVE);
        if system.rank(scale * 1e-10) < 2 * k {
            return Ok(None);
        }
        let pinv = system
            .clone()
            .pseudo_inverse(scale * 1e-12)
            .expect("tolerance is nonnegative");
        Ok(Some(Self {
            n,
            x: x.iter().map(f).collect(),
            mu,
            system,
            pinv,
        }))
    }

    /// `d psi_x(v)`, flattened per component.
    fn push_forward(&self, v: &[f64]) -> DVector<f64> {
        let n = self.n;
        let mut out = DVector::zeros(4 * (n + 1));
        for i in 0..=n {
            let (a, b) = (self.x[i], self.x[i + n + 1]);
            let (da, db) = (v[i], v[i + n + 1]);
            // d [[ab, a^2], [-b^2, -ab]]
            let d = [a * db + b * da, 2.0 * a * da, -2.0 * b * db, -(a * db + b * da)];
            for r in 0..4 {
                out[4 * i + r] = d[r];
            }
        }
        out
    }

    /// `xi` with `[xi, mu] = d psi(v)`, and the residual of that equation.
    fn realize(&self, v: &[f64]) -> (Vec<M2>, f64) {
        let t = self.push_forward(v);
        let xi = &self.pinv * &t;
        let residual = (&self.system * &xi - &t).amax();
        let blocks = (0..=self.n).map(|c| from_basis(&xi.as_slice()[3 * c..3 * c + 3])).collect();
        (blocks, residual)
    }

    /// `sum_i tr(mu_i [xi_v,i, xi_w,i])`.
    pub fn pairing(&self, v: &[f64], w: &[f64]) -> f64 {
        let (xv, _) = self.realize(v);
        let (xw, _) = self.realize(w);
        self.mu
            .iter()
            .zip(xv.iter().zip(&xw))
            .map(|(m, (a, b))| trace(&mul(m, &bracket(a, b))))
            .sum()
    }

    /// Worst residual of the realizing equation over the coordinate basis.
    pub fn realization_residual(&self) -> f64 {
        let d = 2 * self.n + 2;
        (0..d)
            .map(|a| {
                let mut e = vec![0.0; d];
                e[a] = 1.0;
                self.realize(&e).1
            })
            .fold(0.0, f64::max)
    }

    /// Pairings of the coordinate basis vectors.
    pub fn matrix(&self) -> DMatrix<f64> {
        let d = 2 * self.n + 2;
        let basis: Vec<Vec<f64>> = (0..d)
            .map(|a| (0..d).map(|b| if a == b { 1.0 } else { 0.0 }).collect())
            .collect();
        let realized: Vec<Vec<M2>> = basis.iter().map(|e| self.realize(e).0).collect();
        DMatrix::from_fn(d, d, |a, b| {
            self.mu
                .iter()
                .enumerate()
                .map(|(c, m)| trace(&mul(m, &bracket(&realized[a][c], &realized[b][c]))))
                .sum()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KkReport {
    pub n: usize,
    pub samples: usize,
    pub evaluated: usize,
    pub skipped: usize,
    /// Best-fit `c` with `psi^* omega_KK = c omega`.
    pub constant: f64,
    pub max_residual: f64,
    /// Worst residual of `[xi, mu] = d psi(v)` over all samples.
    pub max_realization_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn kk_pullback_check(n: usize, plan: &SamplePlan) -> Result<KkReport, NilpotentError> {
    if n == 0 {
        return Err(NilpotentError::KkRank);
    }
    let omega = SymplecticAmbient::new(n);
    let d = omega.dim();
    let j = DMatrix::from_fn(d, d, |a, b| f64::from(i32::try_from(omega.j()[(a, b)].clone()).expect("small")));
    let mut rng = plan.rng();
    let mut mats = Vec::new();
    let mut skipped = 0;
    let mut max_realization_residual: f64 = 0.0;
    for _ in 0..plan.sample_count {
        let x = sample_point(&mut rng, d, plan.coordinate_range);
        match KkPoint::new(n, &x)? {
            Some(p) => {
                max_realization_residual = max_realization_residual.max(p.realization_residual());
                mats.push(p.matrix());
            }
            None => skipped += 1,
        }
    }
    let jj = j.dot(&j) * mats.len() as f64;
    let constant = if mats.is_empty() {
        0.0
    } else {
        mats.iter().map(|m| m.dot(&j)).sum::<f64>() / jj
    };
    let max_residual = mats
        .iter()
        .map(|m| (m - &j * constant).amax())
        .fold(0.0, f64::max);
    Ok(KkReport {
        n,
        samples: plan.sample_count,
        evaluated: mats.len(),
        skipped,
        constant,
        max_residual,
        max_realization_residual,
        tolerance: KK_TOLERANCE,
        passed: !mats.is_empty() && max_residual < KK_TOLERANCE && max_realization_residual < KK_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn degenerate_point_skipped() {
        assert!(KkPoint::new(1, &qv(&[1, 0, 0, 0])).unwrap().is_none());
        assert!(KkPoint::new(1, &qv(&[1, 1, 0, 2])).unwrap().is_some());
    }

    #[test]
    fn zero_vector_pairs_to_zero() {
        let p = KkPoint::new(1, &qv(&[1, 2, 3, -1])).unwrap().unwrap();
        let v = [0.5, -1.0, 2.0, 0.25];
        assert_eq!(p.pairing(&[0.0; 4], &v), 0.0);
    }

    #[test]
    fn scaling_the_point() {
        let x = qv(&[1, 2, 3, -1]);
        let two_x: Vec<_> = x.iter().map(|v| v * BigRational::from_integer(2.into())).collect();
        let a = KkPoint::new(1, &x).unwrap().unwrap().matrix();
        let b = KkPoint::new(1, &two_x).unwrap().unwrap().matrix();
        assert!((a - b).amax() < 1e-9);
    }

    #[test]
    fn constant_on_small_run() {
        let r = kk_pullback_check(1, &SamplePlan::new(20, 7).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.constant.abs() > 0.1);
        assert!(kk_pullback_check(0, &SamplePlan::new(1, 1).unwrap()).is_err());
    }
}
