use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ChowError;

/// A ruled surface over a curve of genus `g` with invariant `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RuledSurfaceParams {
    g: i64,
    e: i64,
}

impl RuledSurfaceParams {
    pub fn new(g: i64, e: i64) -> Result<Self, ChowError> {
        if g < 0 {
            return Err(ChowError::NegativeGenus(g));
        }
        if g == 0 && e < 0 {
            return Err(ChowError::HirzebruchRange(e));
        }
        Ok(Self { g, e })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    /// Non-fatal remarks about the parameters.
    pub fn warnings(&self) -> Vec<String> {
        if self.e < 0 {
            vec![format!(
                "e = {} is negative; formulas are polynomial in e but such surfaces are not normalized with e >= 0",
                self.e
            )]
        } else {
            Vec::new()
        }
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// An element of the Chow ring of the surface, in the basis `1, l, B0, pt`
/// (degrees 0, 1, 1, 2).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SurfaceClass {
    #[serde(serialize_with = "ser_q")]
    pub c0: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub cl: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub cb: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub cpt: BigRational,
}

pub(crate) fn ser_q<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl SurfaceClass {
    pub fn new(c0: BigRational, cl: BigRational, cb: BigRational, cpt: BigRational) -> Self {
        Self { c0, cl, cb, cpt }
    }

    pub fn from_i64(c0: i64, cl: i64, cb: i64, cpt: i64) -> Self {
        Self::new(q(c0), q(cl), q(cb), q(cpt))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0, 0, 0)
    }

    pub fn ell() -> Self {
        Self::from_i64(0, 1, 0, 0)
    }

    pub fn b0() -> Self {
        Self::from_i64(0, 0, 1, 0)
    }

    pub fn pt() -> Self {
        Self::from_i64(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cl.is_zero() && self.cb.is_zero() && self.cpt.is_zero()
    }

    /// Highest degree with a nonzero component; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        if !self.cpt.is_zero() {
            Some(2)
        } else if !self.cl.is_zero() || !self.cb.is_zero() {
            Some(1)
        } else if !self.c0.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Lowest degree with a nonzero component; `None` for zero.
    fn low_degree(&self) -> Option<u32> {
        if !self.c0.is_zero() {
            Some(0)
        } else if !self.cl.is_zero() || !self.cb.is_zero() {
            Some(1)
        } else if !self.cpt.is_zero() {
            Some(2)
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.c0 * k, &self.cl * k, &self.cb * k, &self.cpt * k)
    }

    /// Product in the Chow ring of the surface. Terms past degree 2 vanish.
    pub(crate) fn mul_truncated(&self, other: &Self, p: &RuledSurfaceParams) -> Self {
        let (a, b) = (self, other);
        let curves = &a.cl * &b.cb + &a.cb * &b.cl - &a.cb * &b.cb * q(p.e);
        Self::new(
            &a.c0 * &b.c0,
            &a.c0 * &b.cl + &a.cl * &b.c0,
            &a.c0 * &b.cb + &a.cb * &b.c0,
            &a.c0 * &b.cpt + &a.cpt * &b.c0 + curves,
        )
    }
}

/// Product of two surface classes. Errors if the combined degree exceeds
/// the dimension of the surface.
pub fn surface_mul(
    x: &SurfaceClass,
    y: &SurfaceClass,
    p: &RuledSurfaceParams,
) -> Result<SurfaceClass, ChowError> {
    if let (Some(dx), Some(dy)) = (x.degree(), y.degree()) {
        if dx + dy > 2 {
            return Err(ChowError::DegreeOverflow { degree: dx + dy, max: 2 });
        }
    }
    Ok(x.mul_truncated(y, p))
}

/// `c1 = 2 B0 + (2 - 2g + e) l`, `c2 = 4 (1 - g) pt`.
pub fn chern_classes(p: &RuledSurfaceParams) -> (SurfaceClass, SurfaceClass) {
    let c1 = SurfaceClass::from_i64(0, 2 - 2 * p.g + p.e, 2, 0);
    let c2 = SurfaceClass::from_i64(0, 0, 0, 4 * (1 - p.g));
    (c1, c2)
}

/// `a + b xi` with `a`, `b` pulled back from the surface.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct BundleClass {
    pub a: SurfaceClass,
    pub b: SurfaceClass,
}

impl BundleClass {
    pub fn new(a: SurfaceClass, b: SurfaceClass) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pullback(SurfaceClass::one())
    }

    pub fn xi() -> Self {
        Self::new(SurfaceClass::zero(), SurfaceClass::one())
    }

    pub fn pullback(s: SurfaceClass) -> Self {
        Self::new(s, SurfaceClass::zero())
    }

    pub fn scalar(k: BigRational) -> Self {
        Self::pullback(SurfaceClass::one().scale(&k))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        match (self.a.degree(), self.b.degree().map(|d| d + 1)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        }
    }

    fn low_degree(&self) -> Option<u32> {
        match (self.a.low_degree(), self.b.low_degree().map(|d| d + 1)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.is_zero() || (self.degree() == Some(d) && self.low_degree() == Some(d))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.a.scale(k), self.b.scale(k))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self, p: &RuledSurfaceParams) -> Self {
        let (c1, c2) = chern_classes(p);
        let bb = self.b.mul_truncated(&other.b, p);
        // xi^2 = xi c1 - c2
        let a = &self.a.mul_truncated(&other.a, p) - &bb.mul_truncated(&c2, p);
        let b = &(&self.a.mul_truncated(&other.b, p) + &other.a.mul_truncated(&self.b, p))
            + &bb.mul_truncated(&c1, p);
        Self::new(a, b)
    }

    pub fn pow(&self, k: u32, p: &RuledSurfaceParams) -> Result<Self, ChowError> {
        let mut out = Self::one();
        for _ in 0..k {
            out = bundle_mul(&out, self, p)?;
        }
        Ok(out)
    }
}

/// Product in the Chow ring of the projectivized tangent bundle, reduced to
/// the form `a + b xi`. Errors if the combined degree exceeds 3.
pub fn bundle_mul(
    x: &BundleClass,
    y: &BundleClass,
    p: &RuledSurfaceParams,
) -> Result<BundleClass, ChowError> {
    if let (Some(dx), Some(dy)) = (x.degree(), y.degree()) {
        if dx + dy > 3 {
            return Err(ChowError::DegreeOverflow { degree: dx + dy, max: 3 });
        }
    }
    Ok(x.mul_unchecked(y, p))
}

/// Degree of a top-dimensional class, i.e. its coefficient of `xi pt`.
pub fn degree3(x: &BundleClass) -> Result<BigRational, ChowError> {
    if !x.is_homogeneous_of_degree(3) {
        return Err(ChowError::NotTopDegree(x.to_string()));
    }
    Ok(x.b.cpt.clone())
}

impl Add for &SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, o: &SurfaceClass) -> SurfaceClass {
        SurfaceClass::new(&self.c0 + &o.c0, &self.cl + &o.cl, &self.cb + &o.cb, &self.cpt + &o.cpt)
    }
}

impl Sub for &SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, o: &SurfaceClass) -> SurfaceClass {
        SurfaceClass::new(&self.c0 - &o.c0, &self.cl - &o.cl, &self.cb - &o.cb, &self.cpt - &o.cpt)
    }
}

impl Add for &BundleClass {
    type Output = BundleClass;
    fn add(self, o: &BundleClass) -> BundleClass {
        BundleClass::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &BundleClass {
    type Output = BundleClass;
    fn sub(self, o: &BundleClass) -> BundleClass {
        BundleClass::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Neg for &SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> SurfaceClass {
        self.scale(&-BigRational::one())
    }
}

impl Neg for &BundleClass {
    type Output = BundleClass;
    fn neg(self) -> BundleClass {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&BundleClass> for &BigRational {
    type Output = BundleClass;
    fn mul(self, rhs: &BundleClass) -> BundleClass {
        rhs.scale(self)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigRational, &str)]) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (name.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => f.write_str(name)?,
            (false, false) => write!(f, "{mag}*{name}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            &[
                (self.c0.clone(), ""),
                (self.cl.clone(), "l"),
                (self.cb.clone(), "B0"),
                (self.cpt.clone(), "pt"),
            ],
        )
    }
}

impl fmt::Debug for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Written as a polynomial in `xi, l, B0, pt`, with `l, B0, pt` meaning
/// their pullbacks.
impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.b;
        write_terms(
            f,
            &[
                (b.cpt.clone(), "xi*pt"),
                (b.cl.clone(), "xi*l"),
                (b.cb.clone(), "xi*B0"),
                (self.a.cpt.clone(), "pt"),
                (b.c0.clone(), "xi"),
                (self.a.cl.clone(), "l"),
                (self.a.cb.clone(), "B0"),
                (self.a.c0.clone(), ""),
            ],
        )
    }
}

impl fmt::Debug for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: i64, e: i64) -> RuledSurfaceParams {
        RuledSurfaceParams::new(g, e).unwrap()
    }

    #[test]
    fn surface_relations() {
        let p = params(0, 3);
        let l = SurfaceClass::ell();
        let b = SurfaceClass::b0();
        assert!(surface_mul(&l, &l, &p).unwrap().is_zero());
        assert_eq!(surface_mul(&l, &b, &p).unwrap(), SurfaceClass::pt());
        assert_eq!(surface_mul(&b, &b, &p).unwrap(), SurfaceClass::from_i64(0, 0, 0, -3));
    }

    #[test]
    fn surface_overflow_flagged() {
        let p = params(0, 0);
        assert_eq!(
            surface_mul(&SurfaceClass::pt(), &SurfaceClass::ell(), &p),
            Err(ChowError::DegreeOverflow { degree: 3, max: 2 })
        );
    }

    #[test]
    fn params_validation() {
        assert!(RuledSurfaceParams::new(-1, 0).is_err());
        assert!(RuledSurfaceParams::new(0, -1).is_err());
        let p = RuledSurfaceParams::new(1, -1).unwrap();
        assert_eq!(p.warnings().len(), 1);
        assert!(params(1, 0).warnings().is_empty());
    }

    #[test]
    fn xi_squared_on_quadric() {
        let p = params(0, 0);
        let xi2 = bundle_mul(&BundleClass::xi(), &BundleClass::xi(), &p).unwrap();
        assert_eq!(xi2.to_string(), "2*xi*l + 2*xi*B0 - 4*pt");
        assert_eq!(
            xi2,
            BundleClass::new(SurfaceClass::from_i64(0, 0, 0, -4), SurfaceClass::from_i64(0, 2, 2, 0))
        );
    }

    #[test]
    fn degree3_requires_top_degree() {
        assert!(degree3(&BundleClass::xi()).is_err());
        assert!(degree3(&BundleClass::zero()).unwrap().is_zero());
        let p = params(0, 0);
        let x = bundle_mul(&BundleClass::xi(), &BundleClass::pullback(SurfaceClass::pt()), &p).unwrap();
        assert!(degree3(&x).unwrap().is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(BundleClass::zero().to_string(), "0");
        let x = BundleClass::new(SurfaceClass::from_i64(1, -1, 0, 0), SurfaceClass::from_i64(-2, 0, 0, 0));
        assert_eq!(x.to_string(), "-2*xi - l + 1");
    }
}
