//! Intersection theory on the projectivized tangent bundle `P(TS)` of a
//! ruled surface `S` over a curve of genus `g` with invariant `e`.
//!
//! Classes on `P(TS)` are written `a + b xi` with `a`, `b` pulled back from
//! `S`, reduced with `xi^2 = xi c1(TS) - c2(TS)`. Curve classes are handled
//! inside the same ring: the fibre `C_pi` is `pi^* pt`, and the section
//! `sigma` attached to `TS -> p^* TB` has divisor class `xi - pi^* c1(T_{S/B})`,
//! so `sigma_*[C] = (xi - pi^*(2 B0 + e l)) pi^* C`.

mod expr;
mod ring;

pub use expr::{evaluate, parse, Expr};
pub use ring::{
    bundle_mul, chern_classes, degree3, surface_mul, BundleClass, RuledSurfaceParams, SurfaceClass,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub(crate) use ring::ser_q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error("rational ruled surfaces need e >= 0, got {0}")]
    HirzebruchRange(i64),
    #[error("degree overflow: product has degree {degree}, at most {max} allowed")]
    DegreeOverflow { degree: u32, max: u32 },
    #[error("class is not homogeneous of degree 3: {0}")]
    NotTopDegree(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A curve class in the basis `sigma_*[l], sigma_*[B0], [C_pi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    #[serde(serialize_with = "ser_q")]
    pub s_l: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub s_b: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub c_pi: BigRational,
}

impl CurveClass {
    pub fn new(s_l: BigRational, s_b: BigRational, c_pi: BigRational) -> Self {
        Self { s_l, s_b, c_pi }
    }

    pub fn from_i64(s_l: i64, s_b: i64, c_pi: i64) -> Self {
        Self::new(q(s_l), q(s_b), q(c_pi))
    }

    pub fn basis() -> [Self; 3] {
        [Self::from_i64(1, 0, 0), Self::from_i64(0, 1, 0), Self::from_i64(0, 0, 1)]
    }

    /// The class as a codimension-2 cycle.
    pub fn to_bundle_class(&self, p: &RuledSurfaceParams) -> BundleClass {
        let section = section_divisor(p);
        let pushed = |c: SurfaceClass| section.mul_unchecked(&BundleClass::pullback(c), p);
        let mut out = pushed(SurfaceClass::ell()).scale(&self.s_l);
        out = &out + &pushed(SurfaceClass::b0()).scale(&self.s_b);
        &out + &BundleClass::pullback(SurfaceClass::pt()).scale(&self.c_pi)
    }
}

/// A divisor class `d_l pi^* l + d_b pi^* B0 + d_xi xi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClassP {
    #[serde(serialize_with = "ser_q")]
    pub d_l: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub d_b: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub d_xi: BigRational,
}

impl DivisorClassP {
    pub fn new(d_l: BigRational, d_b: BigRational, d_xi: BigRational) -> Self {
        Self { d_l, d_b, d_xi }
    }

    pub fn from_i64(d_l: i64, d_b: i64, d_xi: i64) -> Self {
        Self::new(q(d_l), q(d_b), q(d_xi))
    }

    pub fn basis() -> [Self; 3] {
        [Self::from_i64(1, 0, 0), Self::from_i64(0, 1, 0), Self::from_i64(0, 0, 1)]
    }

    /// `-K = 2 xi`.
    pub fn anticanonical() -> Self {
        Self::from_i64(0, 0, 2)
    }

    /// `D_a = a pi^* l + xi`.
    pub fn d_a(a: i64) -> Self {
        Self::from_i64(a, 0, 1)
    }

    pub fn to_bundle_class(&self) -> BundleClass {
        let a = SurfaceClass::new(BigRational::zero(), self.d_l.clone(), self.d_b.clone(), BigRational::zero());
        BundleClass::new(a, SurfaceClass::one().scale(&self.d_xi))
    }
}

/// Class of the section divisor `sigma(S)`.
fn section_divisor(p: &RuledSurfaceParams) -> BundleClass {
    let vertical = SurfaceClass::from_i64(0, p.e(), 2, 0);
    BundleClass::new(-&vertical, SurfaceClass::one())
}

/// Intersection number of a divisor with a curve.
pub fn pair(d: &DivisorClassP, c: &CurveClass, p: &RuledSurfaceParams) -> BigRational {
    let prod = d.to_bundle_class().mul_unchecked(&c.to_bundle_class(p), p);
    degree3(&prod).expect("divisor times curve is a top-degree class")
}

/// Rows `pi^* l, pi^* B0, xi` against columns `sigma_*[l], sigma_*[B0], [C_pi]`.
pub fn pairing_table(p: &RuledSurfaceParams) -> [[BigRational; 3]; 3] {
    let curves = CurveClass::basis();
    DivisorClassP::basis().map(|d| {
        [
            pair(&d, &curves[0], p),
            pair(&d, &curves[1], p),
            pair(&d, &curves[2], p),
        ]
    })
}

/// Top self-intersection of a divisor class.
pub fn self_intersection(d: &DivisorClassP, p: &RuledSurfaceParams) -> BigRational {
    let b = d.to_bundle_class();
    let cube = b.mul_unchecked(&b, p).mul_unchecked(&b, p);
    degree3(&cube).expect("cube of a divisor is a top-degree class")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShokurovReport {
    pub g: i64,
    pub e: i64,
    pub a: u64,
    /// `3 max{2g - 2, e}`.
    pub threshold: i64,
    pub threshold_ok: bool,
    /// Against `sigma_*[l], sigma_*[B0], [C_pi]`.
    #[serde(serialize_with = "ser_q3")]
    pub pairings: [BigRational; 3],
    #[serde(serialize_with = "ser_q")]
    pub top_self_intersection: BigRational,
    /// Above the threshold: all pairings nonnegative, only `sigma_*[l]`
    /// pairs to zero, and the cube is positive. Vacuously true below it.
    pub positivity_holds: bool,
}

fn ser_q3<S: serde::Serializer>(x: &[BigRational; 3], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for v in x {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

pub fn shokurov_threshold_check(p: &RuledSurfaceParams, a: u64) -> ShokurovReport {
    let threshold = 3 * (2 * p.g() - 2).max(p.e());
    let threshold_ok = i128::from(a) > i128::from(threshold);
    let d = DivisorClassP::d_a(i64::try_from(a).expect("a fits in i64"));
    let [c_l, c_b, c_pi] = CurveClass::basis();
    let pairings = [pair(&d, &c_l, p), pair(&d, &c_b, p), pair(&d, &c_pi, p)];
    let top = self_intersection(&d, p);
    let positivity_holds = !threshold_ok
        || (pairings[0].is_zero()
            && pairings[1].is_positive()
            && pairings[2].is_positive()
            && top.is_positive());
    ShokurovReport {
        g: p.g(),
        e: p.e(),
        a,
        threshold,
        threshold_ok,
        pairings,
        top_self_intersection: top,
        positivity_holds,
    }
}

/// Numbers for the trivial ruled surface over an elliptic curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpReport {
    pub g: i64,
    pub e: i64,
    #[serde(serialize_with = "ser_q")]
    pub xi_cubed: BigRational,
    /// `-K` against `sigma_*[l], sigma_*[B0], [C_pi]`.
    #[serde(serialize_with = "ser_q3")]
    pub anticanonical_pairings: [BigRational; 3],
    /// `D = pi^* B0 + pi^* l + 2 xi`.
    pub d: DivisorClassP,
    #[serde(serialize_with = "ser_q3")]
    pub d_pairings: [BigRational; 3],
    /// Basis curve classes meeting `D` trivially.
    pub d_trivial_on: Vec<String>,
    /// Whether `E0 = E x {p}` can be read as `sigma_*[B0]` in this basis.
    pub e0_identification: String,
}

pub fn cp_example_numbers() -> CpReport {
    let p = RuledSurfaceParams::new(1, 0).expect("valid parameters");
    let curves = CurveClass::basis();
    let names = ["sigma_*[l]", "sigma_*[B0]", "[C_pi]"];
    let row = |d: &DivisorClassP| [0, 1, 2].map(|i| pair(d, &curves[i], &p));
    let xi = DivisorClassP::from_i64(0, 0, 1);
    let d = DivisorClassP::from_i64(1, 1, 2);
    let d_pairings = row(&d);
    let d_trivial_on = names
        .iter()
        .zip(&d_pairings)
        .filter(|(_, v)| v.is_zero())
        .map(|(n, _)| n.to_string())
        .collect();
    CpReport {
        g: 1,
        e: 0,
        xi_cubed: self_intersection(&xi, &p),
        anticanonical_pairings: row(&DivisorClassP::anticanonical()),
        d,
        d_pairings,
        d_trivial_on,
        e0_identification: "ambiguous: D pairs nontrivially with every basis class, so the contracted class is not sigma_*[B0] for this section".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: i64, e: i64) -> RuledSurfaceParams {
        RuledSurfaceParams::new(g, e).unwrap()
    }

    fn ints(row: &[BigRational]) -> Vec<i64> {
        row.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    #[test]
    fn section_pushforwards() {
        let p = params(0, 0);
        let pushed = CurveClass::from_i64(1, 0, 0).to_bundle_class(&p);
        assert_eq!(pushed.to_string(), "xi*l - 2*pt");
    }

    #[test]
    fn table_at_quadric() {
        let t = pairing_table(&params(0, 0));
        let rows: Vec<_> = t.iter().map(|r| ints(r)).collect();
        assert_eq!(rows, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 2, 1]]);
    }

    #[test]
    fn shokurov_examples() {
        let r = shokurov_threshold_check(&params(0, 1), 4);
        assert!(r.threshold_ok && r.positivity_holds);
        assert_eq!(ints(&r.pairings), vec![0, 6, 1]);
        assert_eq!(r.top_self_intersection, q(28));

        let r = shokurov_threshold_check(&params(0, 0), 0);
        assert!(!r.threshold_ok);
        assert_eq!(ints(&r.pairings), vec![0, 2, 1]);
        assert_eq!(r.top_self_intersection, q(4));

        let r = shokurov_threshold_check(&params(1, 0), 1);
        assert!(r.threshold_ok);
        assert_eq!(r.pairings[1], q(1));
        assert_eq!(r.top_self_intersection, q(6));
    }

    #[test]
    fn cp_numbers() {
        let r = cp_example_numbers();
        assert!(r.xi_cubed.is_zero());
        assert_eq!(ints(&r.anticanonical_pairings), vec![0, 0, 2]);
        assert_eq!(ints(&r.d_pairings), vec![1, 1, 2]);
        assert!(r.d_trivial_on.is_empty());
        assert!(r.e0_identification.starts_with("ambiguous"));
    }
}
