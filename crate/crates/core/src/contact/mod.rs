//! Finite linear group actions on the contact projective space `P^{2n+1}`.
//!
//! The contact form on `P^{2n+1}` comes from `theta_x(v) = omega(x, v)` with
//! `omega = sum dx_i ^ dx_{i+n+1}`. For linear `g`,
//! `(g^* theta)_x(v) = omega(gx, gv)`, so `g` preserves `theta` exactly when
//! `g^T J g = J`. The contact line bundle is `O(2)`, and an element with
//! eigenvalue `lambda` on a fixed axis acts on its fibre by `lambda^-2`.

mod cyclotomic;
mod json;

pub use json::{parse_action, ActionJson};

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{IntegerMatrix, RationalMatrix};

/// Default bound on group size and element order.
pub const DEFAULT_CAP: usize = 10_000;

/// Action files shipped with the crate, by name.
pub const BUNDLED_ACTIONS: &[(&str, &str)] = &[
    ("quot", include_str!("../../data/actions/quot.json")),
    ("fav_n1", include_str!("../../data/actions/fav_n1.json")),
    ("fav_n2", include_str!("../../data/actions/fav_n2.json")),
    ("fav_n3", include_str!("../../data/actions/fav_n3.json")),
    ("p5", include_str!("../../data/actions/p5.json")),
];

pub fn bundled_action(name: &str) -> Option<&'static str> {
    BUNDLED_ACTIONS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContactError {
    #[error("matrix is {rows}x{cols}, ambient needs {expected}x{expected}")]
    DimensionMismatch { rows: usize, cols: usize, expected: usize },
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {index} has infinite order (no power up to {bound} is the identity)")]
    InfiniteOrder { index: usize, bound: usize },
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("trivial group")]
    TrivialGroup,
    #[error("no non-identity elements")]
    NoNonIdentity,
    #[error("element {0} does not preserve the contact distribution")]
    DistributionNotPreserved(usize),
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("coordinate axis {0} is not fixed")]
    AxisNotFixed(usize),
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("the quotient check needs P^(2n+1) with n >= 1")]
    SmallDimension,
    #[error("action JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("bad matrix entry in generator {generator}: {message}")]
    Entry { generator: usize, message: String },
}

/// `C^{2n+2}` with `omega = sum_i dx_i ^ dx_{i+n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticAmbient {
    n: usize,
    j: IntegerMatrix,
}

impl SymplecticAmbient {
    pub fn new(n: usize) -> Self {
        let d = 2 * n + 2;
        let mut j = IntegerMatrix::zeros(d, d);
        for i in 0..=n {
            j.set(i, i + n + 1, BigInt::one());
            j.set(i + n + 1, i, -BigInt::one());
        }
        Self { n, j }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the vector space, `2n + 2`.
    pub fn dim(&self) -> usize {
        2 * self.n + 2
    }

    pub fn j(&self) -> &IntegerMatrix {
        &self.j
    }

    /// Index paired with `i` by `omega`.
    pub fn partner(&self, i: usize) -> usize {
        if i <= self.n {
            i + self.n + 1
        } else {
            i - self.n - 1
        }
    }

    fn check(&self, g: &RationalMatrix) -> Result<(), ContactError> {
        if g.rows() != self.dim() || g.cols() != self.dim() {
            return Err(ContactError::DimensionMismatch {
                rows: g.rows(),
                cols: g.cols(),
                expected: self.dim(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "scalar")]
pub enum OmegaTransform {
    Preserves,
    Negates,
    Other(#[serde(serialize_with = "crate::chow::ser_q")] BigRational),
    NonScalar,
}

impl OmegaTransform {
    /// The factor `c` in `g^T J g = c J`, if there is one.
    pub fn scalar(&self) -> Option<BigRational> {
        match self {
            OmegaTransform::Preserves => Some(BigRational::one()),
            OmegaTransform::Negates => Some(-BigRational::one()),
            OmegaTransform::Other(c) => Some(c.clone()),
            OmegaTransform::NonScalar => None,
        }
    }
}

impl fmt::Display for OmegaTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTransform::Preserves => f.write_str("Preserves"),
            OmegaTransform::Negates => f.write_str("Negates"),
            OmegaTransform::Other(c) => write!(f, "Other({c})"),
            OmegaTransform::NonScalar => f.write_str("NonScalar"),
        }
    }
}

/// Classify `g^T J g` against `J`.
pub fn omega_transform(g: &RationalMatrix, amb: &SymplecticAmbient) -> Result<OmegaTransform, ContactError> {
    amb.check(g)?;
    let j = RationalMatrix::from_integer(amb.j());
    let pulled = g.transpose().mul(&j).and_then(|m| m.mul(g)).expect("square matrices");
    // J[0][n+1] = 1, so the only candidate scalar is the matching entry.
    let c = pulled.get(0, amb.n + 1).clone();
    if pulled != j.scale(&c) {
        return Ok(OmegaTransform::NonScalar);
    }
    Ok(if c.is_one() {
        OmegaTransform::Preserves
    } else if c == -BigRational::one() {
        OmegaTransform::Negates
    } else {
        OmegaTransform::Other(c)
    })
}

pub fn theta_invariant(g: &RationalMatrix, amb: &SymplecticAmbient) -> Result<bool, ContactError> {
    Ok(omega_transform(g, amb)? == OmegaTransform::Preserves)
}

/// `exp(2 pi i power / order)`, with `gcd(power, order) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    pub order: u64,
    pub power: u64,
}

impl RootOfUnity {
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.order {
            1 => Some(BigRational::one()),
            2 => Some(-BigRational::one()),
            _ => None,
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "zeta_{}^{}", self.order, self.power),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedComponentRecord {
    pub group_element: usize,
    pub eigenvalue: RootOfUnity,
    pub projective_dimension: usize,
    pub codimension: usize,
}

/// Order of `g`, or `None` if no power up to `bound` is the identity.
pub fn element_order(g: &RationalMatrix, bound: usize) -> Option<u64> {
    let id = RationalMatrix::identity(g.rows());
    let mut p = g.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k as u64);
        }
        p = p.mul(g).expect("square");
    }
    None
}

/// Eigenvalue multiplicities of a finite-order matrix, sorted by eigenvalue.
///
/// A primitive `d`-th root of unity has multiplicity
/// `dim ker Phi_d(g) / phi(d)`; all primitive `d`-th roots share it since
/// `g` is rational.
pub fn eigenvalue_multiplicities(g: &RationalMatrix) -> Result<Vec<(RootOfUnity, usize)>, ContactError> {
    if !g.is_square() {
        return Err(ContactError::DimensionMismatch {
            rows: g.rows(),
            cols: g.cols(),
            expected: g.rows(),
        });
    }
    let order = element_order(g, DEFAULT_CAP).ok_or(ContactError::InfiniteOrder {
        index: 0,
        bound: DEFAULT_CAP,
    })?;
    let mut out = Vec::new();
    for d in cyclotomic::divisors(order) {
        let nullity = cyclotomic::eval_at(&cyclotomic::cyclotomic(d), g).nullity();
        if nullity == 0 {
            continue;
        }
        let mult = nullity / cyclotomic::euler_phi(d) as usize;
        for power in 0..d.max(1) {
            if d == 1 || power.gcd(&d) == 1 {
                out.push((RootOfUnity { order: d, power: if d == 1 { 0 } else { power } }, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// One record per eigenvalue: the projectivized eigenspace.
pub fn fixed_components(g: &RationalMatrix) -> Result<Vec<FixedComponentRecord>, ContactError> {
    let dim = g.rows();
    Ok(eigenvalue_multiplicities(g)?
        .into_iter()
        .map(|(eigenvalue, mult)| FixedComponentRecord {
            group_element: 0,
            eigenvalue,
            projective_dimension: mult - 1,
            codimension: dim - mult,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueRelation {
    pub axis: usize,
    #[serde(serialize_with = "ser_qs")]
    pub tangent_weights: Vec<BigRational>,
    /// Weights on the contact distribution at the fixed point.
    #[serde(serialize_with = "ser_qs")]
    pub distribution_weights: Vec<BigRational>,
    /// Weight on the quotient `T / F`.
    #[serde(serialize_with = "crate::chow::ser_q")]
    pub quotient_weight: BigRational,
    /// Weight on the fibre of `L = O(2)`.
    #[serde(serialize_with = "crate::chow::ser_q")]
    pub xi0: BigRational,
    pub multiset_equal: bool,
    /// `xi0 * prod(distribution_weights)`, only computed when `xi0 = 1`.
    #[serde(serialize_with = "ser_opt_q")]
    pub product: Option<BigRational>,
    pub holds: bool,
}

fn ser_qs<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn ser_opt_q<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

fn sorted(mut v: Vec<BigRational>) -> Vec<BigRational> {
    v.sort();
    v
}

/// Weights of a diagonal `g` at the fixed point `[e_axis]`, and the relation
/// `{xi_1..xi_2n} = {xi0 / xi_1 .. xi0 / xi_2n}` between them.
pub fn eigenvalue_relation_check(
    g: &RationalMatrix,
    amb: &SymplecticAmbient,
    axis: usize,
) -> Result<EigenvalueRelation, ContactError> {
    amb.check(g)?;
    let dim = amb.dim();
    if axis >= dim {
        return Err(ContactError::AxisOutOfRange { axis, dim });
    }
    if (0..dim).any(|i| i != axis && !g.get(i, axis).is_zero()) {
        return Err(ContactError::AxisNotFixed(axis));
    }
    if !g.is_diagonal() {
        return Err(ContactError::NotDiagonal);
    }
    if element_order(g, DEFAULT_CAP).is_none() {
        return Err(ContactError::InfiniteOrder { index: 0, bound: DEFAULT_CAP });
    }
    let lam = |i: usize| g.get(i, i).clone();
    let lv = lam(axis);
    let partner = amb.partner(axis);
    let tangent_weights: Vec<BigRational> = (0..dim).filter(|&j| j != axis).map(|j| lam(j) / &lv).collect();
    let distribution_weights: Vec<BigRational> = (0..dim)
        .filter(|&j| j != axis && j != partner)
        .map(|j| lam(j) / &lv)
        .collect();
    let quotient_weight = lam(partner) / &lv;
    let xi0 = (&lv * &lv).recip();
    let multiset_equal = sorted(distribution_weights.clone())
        == sorted(distribution_weights.iter().map(|w| &xi0 / w).collect());
    let product = xi0
        .is_one()
        .then(|| distribution_weights.iter().fold(xi0.clone(), |acc, w| acc * w));
    let holds = multiset_equal && product.as_ref().is_none_or(One::is_one);
    Ok(EigenvalueRelation {
        axis,
        tangent_weights,
        distribution_weights,
        quotient_weight,
        xi0,
        multiset_equal,
        product,
        holds,
    })
}

/// A finite group generated by invertible rational matrices.
#[derive(Debug, Clone)]
pub struct LinearContactAction {
    ambient: SymplecticAmbient,
    generators: Vec<RationalMatrix>,
    elements: Vec<RationalMatrix>,
}

impl LinearContactAction {
    pub fn new(n: usize, generators: Vec<RationalMatrix>) -> Result<Self, ContactError> {
        Self::with_cap(n, generators, DEFAULT_CAP)
    }

    pub fn with_cap(n: usize, generators: Vec<RationalMatrix>, cap: usize) -> Result<Self, ContactError> {
        if generators.is_empty() {
            return Err(ContactError::TrivialGroup);
        }
        let ambient = SymplecticAmbient::new(n);
        for (i, g) in generators.iter().enumerate() {
            ambient.check(g)?;
            if g.inverse().is_none() {
                return Err(ContactError::NotInvertible(i));
            }
            if element_order(g, cap).is_none() {
                return Err(ContactError::InfiniteOrder { index: i, bound: cap });
            }
        }
        let id = RationalMatrix::identity(ambient.dim());
        let mut seen: HashSet<RationalMatrix> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.mul(g).expect("square");
                if seen.insert(y.clone()) {
                    if elements.len() == cap {
                        return Err(ContactError::GroupTooLarge(cap));
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self {
            ambient,
            generators,
            elements,
        })
    }

    pub fn ambient(&self) -> &SymplecticAmbient {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.n
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    /// Group elements, identity first, in breadth-first order.
    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements acting nontrivially on the projective space.
    fn projectively_nontrivial(&self) -> impl Iterator<Item = (usize, &RationalMatrix)> + '_ {
        self.elements.iter().enumerate().filter(|(_, g)| g.as_scalar().is_none())
    }

    /// Fixed components of every element acting nontrivially on `P^{2n+1}`.
    pub fn fixed_component_table(&self) -> Result<Vec<FixedComponentRecord>, ContactError> {
        let mut out = Vec::new();
        for (i, g) in self.projectively_nontrivial() {
            for mut r in fixed_components(g)? {
                r.group_element = i;
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Smallest codimension of a fixed component of an element acting
    /// nontrivially on `P^{2n+1}`. Scalar matrices fix everything and are
    /// skipped.
    pub fn min_fixed_codimension(&self) -> Result<usize, ContactError> {
        for (i, g) in self.projectively_nontrivial() {
            if omega_transform(g, &self.ambient)? == OmegaTransform::NonScalar {
                return Err(ContactError::DistributionNotPreserved(i));
            }
        }
        self.fixed_component_table()?
            .iter()
            .map(|r| r.codimension)
            .min()
            .ok_or(ContactError::NoNonIdentity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum QuotientVerdict {
    InducedContactStructure,
    Fails {
        generator: usize,
        classification: OmegaTransform,
    },
}

/// Whether `P^{2n+1}/G` carries the induced contact structure. The ambient
/// is smooth, so only invariance of the contact form is tested.
pub fn quotient_verdict(action: &LinearContactAction) -> Result<QuotientVerdict, ContactError> {
    if action.n() == 0 {
        return Err(ContactError::SmallDimension);
    }
    for (i, g) in action.generators.iter().enumerate() {
        let t = omega_transform(g, &action.ambient)?;
        if t != OmegaTransform::Preserves {
            return Ok(QuotientVerdict::Fails {
                generator: i,
                classification: t,
            });
        }
    }
    Ok(QuotientVerdict::InducedContactStructure)
}

/// `diag(...)` flipping the sign of the listed coordinates.
pub fn sign_flip(dim: usize, flipped: &[usize]) -> RationalMatrix {
    let d: Vec<BigRational> = (0..dim)
        .map(|i| {
            if flipped.contains(&i) {
                -BigRational::one()
            } else {
                BigRational::one()
            }
        })
        .collect();
    RationalMatrix::diagonal(&d)
}

/// The group generated by `xi_i`, `i = 1..n`, flipping coordinates `i` and
/// `i + n + 1`.
pub fn fav_action(n: usize) -> LinearContactAction {
    let gens = (1..=n).map(|i| sign_flip(2 * n + 2, &[i, i + n + 1])).collect();
    LinearContactAction::new(n, gens).expect("sign flips generate a finite group")
}

/// The involution of `C^6` flipping `x1` and `x4`.
pub fn p5_action() -> LinearContactAction {
    LinearContactAction::new(2, vec![sign_flip(6, &[1, 4])]).expect("finite group")
}

/// The involution of `C^4` flipping `x2` and `x3`.
pub fn quot_action() -> LinearContactAction {
    LinearContactAction::new(1, vec![sign_flip(4, &[2, 3])]).expect("finite group")
}
