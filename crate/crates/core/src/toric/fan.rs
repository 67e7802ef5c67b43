use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ToricError;
use crate::lattice::{
    is_primitive, primitivize, smith_normal_form, IntegerMatrix, LatticeMap, LatticeVector,
    RationalMatrix,
};

/// A cone of a simplicial fan, given by sorted ray indices.
pub type ConeRays = Vec<usize>;

pub(crate) fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Coordinates of points with respect to the rays of one simplicial cone.
#[derive(Debug, Clone)]
struct ConeChart {
    /// rank x k, columns are the rays
    rays: RationalMatrix,
    /// k x rank left inverse of `rays`
    left_inverse: RationalMatrix,
}

impl ConeChart {
    fn new(rays: &[&LatticeVector]) -> Option<Self> {
        let cols: Vec<LatticeVector> = rays.iter().map(|r| (*r).clone()).collect();
        let a = RationalMatrix::from_integer(&IntegerMatrix::from_columns(&cols).ok()?);
        let at = a.transpose();
        let gram_inv = at.mul(&a).ok()?.inverse()?;
        let left_inverse = gram_inv.mul(&at).ok()?;
        Some(Self {
            rays: a,
            left_inverse,
        })
    }

    /// Coefficients `c` with `sum c_i u_i = p`, or `None` if `p` is outside the span.
    fn coordinates(&self, p: &[BigRational]) -> Option<Vec<BigRational>> {
        let c = self.left_inverse.apply(p).ok()?;
        (self.rays.apply(&c).ok()? == p).then_some(c)
    }
}

/// A simplicial fan: primitive rays and maximal cones given by ray indices.
#[derive(Debug, Clone)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<ConeRays>,
    charts: Vec<ConeChart>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Validates primitivity, simpliciality and (for complete fans, exactly)
    /// that cones meet along common faces.
    pub fn new(
        rank: usize,
        rays: Vec<LatticeVector>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, ToricError> {
        let fan = Self::assemble(rank, rays, max_cones)?;
        for (i, a) in fan.max_cones.iter().enumerate() {
            for (j, b) in fan.max_cones.iter().enumerate() {
                if i != j && is_subset(a, b) {
                    return Err(ToricError::RedundantCone(a.clone()));
                }
            }
        }
        fan.check_walls()?;
        fan.check_barycenters()?;
        Ok(fan)
    }

    /// Per-ray and per-cone checks only; how cones meet is not examined.
    fn assemble(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self, ToricError> {
        if rank == 0 {
            return Err(ToricError::ZeroRank);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(ToricError::RayLength {
                    ray: i,
                    len: r.len(),
                    rank,
                });
            }
            if r.iter().all(Zero::is_zero) {
                return Err(ToricError::ZeroRay(i));
            }
            if !is_primitive(r) {
                return Err(ToricError::NonPrimitiveRay(i));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if let Some(j) = seen.insert(r.clone(), i) {
                return Err(ToricError::DuplicateRay(j, i));
            }
        }

        let mut cones = Vec::with_capacity(max_cones.len());
        let mut charts = Vec::with_capacity(max_cones.len());
        for cone in max_cones {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            let cone: ConeRays = set.into_iter().collect();
            if cone.is_empty() {
                return Err(ToricError::EmptyCone);
            }
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(ToricError::ConeIndex { cone, index: bad });
            }
            let gens: Vec<&LatticeVector> = cone.iter().map(|&i| &rays[i]).collect();
            let chart = ConeChart::new(&gens).ok_or_else(|| ToricError::DependentCone(cone.clone()))?;
            cones.push(cone);
            charts.push(chart);
        }
        Ok(Self {
            rank,
            rays,
            max_cones: cones,
            charts,
        })
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self, ToricError> {
        Self::new(
            rank,
            rays.iter().map(|r| crate::lattice::ivec(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[ConeRays] {
        &self.max_cones
    }

    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }

    /// Walls between full-dimensional maximal cones: `(facet, cone_a, cone_b)`.
    pub(crate) fn walls(&self) -> BTreeMap<ConeRays, Vec<usize>> {
        let mut walls: BTreeMap<ConeRays, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != self.rank {
                continue;
            }
            for skip in 0..cone.len() {
                let facet: ConeRays = cone
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &r)| r)
                    .collect();
                walls.entry(facet).or_default().push(ci);
            }
        }
        walls
    }

    fn check_walls(&self) -> Result<(), ToricError> {
        for (facet, owners) in self.walls() {
            match owners.as_slice() {
                [_] => {}
                [a, b] => {
                    if !self.opposite_sides(&facet, *a, *b) {
                        return Err(ToricError::OverlappingCones(
                            self.max_cones[*a].clone(),
                            self.max_cones[*b].clone(),
                        ));
                    }
                }
                _ => {
                    return Err(ToricError::OverlappingCones(
                        self.max_cones[owners[0]].clone(),
                        self.max_cones[owners[1]].clone(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// The off-facet rays of two cones sharing `facet` lie on opposite sides of it.
    fn opposite_sides(&self, facet: &[usize], a: usize, b: usize) -> bool {
        let extra = |c: usize| {
            *self.max_cones[c]
                .iter()
                .find(|r| !facet.contains(r))
                .expect("full-dimensional cone has a ray off its facet")
        };
        let rows = |last: usize| {
            let mut rows: Vec<LatticeVector> = facet.iter().map(|&r| self.rays[r].clone()).collect();
            rows.push(self.rays[last].clone());
            IntegerMatrix::from_rows(&rows)
                .and_then(|m| m.determinant())
                .expect("square ray matrix")
        };
        let da = rows(extra(a));
        let db = rows(extra(b));
        (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive())
    }

    fn check_barycenters(&self) -> Result<(), ToricError> {
        for (i, cone) in self.max_cones.iter().enumerate() {
            let p = self.barycenter(cone);
            for (j, other) in self.max_cones.iter().enumerate() {
                if i != j && self.charts[j].coordinates(&p).is_some_and(|c| c.iter().all(|x| !x.is_negative())) {
                    return Err(ToricError::OverlappingCones(cone.clone(), other.clone()));
                }
            }
        }
        Ok(())
    }

    fn barycenter(&self, cone: &[usize]) -> Vec<BigRational> {
        let mut s = vec![BigInt::zero(); self.rank];
        for &r in cone {
            for (acc, x) in s.iter_mut().zip(&self.rays[r]) {
                *acc += x;
            }
        }
        to_rational(&s)
    }

    /// Every maximal cone is full-dimensional and every facet is shared by
    /// exactly two maximal cones. Given the construction-time checks this is
    /// equivalent to the support being all of `N_R`.
    pub fn is_complete(&self) -> bool {
        self.max_cones.iter().all(|c| c.len() == self.rank)
            && self.walls().values().all(|owners| owners.len() == 2)
    }

    /// Index of a maximal cone containing `p`, with `p`'s coefficients in it.
    pub fn locate(&self, p: &[BigRational]) -> Option<(usize, Vec<BigRational>)> {
        self.charts.iter().enumerate().find_map(|(i, chart)| {
            chart
                .coordinates(p)
                .filter(|c| c.iter().all(|x| !x.is_negative()))
                .map(|c| (i, c))
        })
    }

    pub fn contains_point(&self, p: &[BigRational]) -> bool {
        self.locate(p).is_some()
    }

    /// Smallest cone of the fan containing `p` in its relative interior.
    pub fn minimal_cone_containing(&self, p: &[BigInt]) -> Result<ConeRays, ToricError> {
        let q = to_rational(p);
        let mut support: Option<ConeRays> = None;
        for (i, chart) in self.charts.iter().enumerate() {
            let Some(c) = chart.coordinates(&q) else {
                continue;
            };
            if c.iter().any(Signed::is_negative) {
                continue;
            }
            let s: ConeRays = self.max_cones[i]
                .iter()
                .zip(&c)
                .filter(|(_, x)| x.is_positive())
                .map(|(&r, _)| r)
                .collect();
            match &support {
                None => support = Some(s),
                Some(prev) if *prev == s => {}
                Some(_) => return Err(ToricError::AmbiguousFace(p.to_vec())),
            }
        }
        support.ok_or_else(|| ToricError::OutsideSupport(p.to_vec()))
    }

    /// All cones of the fan (faces of maximal cones), excluding the zero cone.
    pub fn all_cones(&self) -> BTreeSet<ConeRays> {
        let mut out = BTreeSet::new();
        for cone in &self.max_cones {
            let k = cone.len();
            for mask in 1u64..(1u64 << k) {
                out.insert(
                    (0..k)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| cone[b])
                        .collect(),
                );
            }
        }
        out
    }

    pub fn is_cone(&self, cone: &[usize]) -> bool {
        let mut sorted = cone.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.max_cones.iter().any(|m| is_subset(&sorted, m))
    }

    pub(crate) fn ray_matrix(&self, cone: &[usize]) -> IntegerMatrix {
        let rows: Vec<LatticeVector> = cone.iter().map(|&r| self.rays[r].clone()).collect();
        IntegerMatrix::from_rows(&rows).expect("cone has rays of equal length")
    }

    /// A cone is smooth when its rays extend to a basis of the lattice, i.e.
    /// every invariant factor of the ray matrix is 1.
    pub fn is_smooth_cone(&self, cone: &[usize]) -> Result<bool, ToricError> {
        if cone.is_empty() || !self.is_cone(cone) {
            return Err(ToricError::UnknownCone(cone.to_vec()));
        }
        let snf = smith_normal_form(&self.ray_matrix(cone));
        Ok(snf.diagonal().iter().all(One::is_one))
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones
            .iter()
            .all(|c| self.is_smooth_cone(c).expect("maximal cone exists"))
    }

    /// Singular cones all of whose proper faces are smooth.
    pub fn singular_cones(&self) -> Vec<ConeRays> {
        // faces of smooth cones are smooth, so only faces of singular
        // maximal cones need testing
        let mut faces = BTreeSet::new();
        for cone in &self.max_cones {
            if smith_normal_form(&self.ray_matrix(cone)).diagonal().iter().all(One::is_one) {
                continue;
            }
            let k = cone.len();
            for mask in 1u64..(1u64 << k) {
                faces.insert((0..k).filter(|b| mask >> b & 1 == 1).map(|b| cone[b]).collect::<ConeRays>());
            }
        }
        let singular: BTreeSet<&ConeRays> = faces
            .iter()
            .filter(|c| !smith_normal_form(&self.ray_matrix(c)).diagonal().iter().all(One::is_one))
            .collect();
        let mut minimal: Vec<ConeRays> = singular
            .iter()
            .filter(|c| {
                (0..c.len()).all(|skip| {
                    let facet: ConeRays = c
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &r)| r)
                        .collect();
                    facet.is_empty() || !singular.contains(&facet)
                })
            })
            .map(|c| (*c).clone())
            .collect();
        minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        minimal
    }

    /// Push the fan forward along a lattice map that is injective on every cone.
    pub fn image(&self, map: &LatticeMap) -> Result<Fan, ToricError> {
        if map.source_rank() != self.rank {
            return Err(ToricError::MapShape {
                fan_rank: self.rank,
                source_rank: map.source_rank(),
            });
        }
        let mut rays = Vec::with_capacity(self.rays.len());
        for r in &self.rays {
            let image = map.apply(r)?;
            if image.iter().all(Zero::is_zero) {
                return Err(ToricError::ConeCollapse(vec![rays.len()]));
            }
            rays.push(primitivize(&image)?);
        }
        for cone in &self.max_cones {
            let m = IntegerMatrix::from_rows(&cone.iter().map(|&r| rays[r].clone()).collect::<Vec<_>>())?;
            if m.rank() < cone.len() {
                return Err(ToricError::ConeCollapse(cone.clone()));
            }
        }
        let distinct: BTreeSet<&LatticeVector> = rays.iter().collect();
        if distinct.len() < rays.len() {
            return Err(ToricError::ConeCollapse((0..rays.len()).collect()));
        }
        Fan::new(map.target_rank(), rays, self.max_cones.clone())
    }

    /// Stellar subdivision at each new ray in turn. New rays are
    /// primitivized and appended after the existing rays.
    ///
    /// A stellar subdivision of a fan is again a fan, so the pairwise
    /// intersection checks of [`Fan::new`] are skipped.
    pub fn subdivide_with_rays(&self, new_rays: &[LatticeVector]) -> Result<Fan, ToricError> {
        let mut current = self.clone();
        for v in new_rays {
            if v.len() != self.rank {
                return Err(ToricError::RayLength {
                    ray: current.rays.len(),
                    len: v.len(),
                    rank: self.rank,
                });
            }
            let v = primitivize(v)?;
            if current.ray_index(&v).is_some() {
                return Err(ToricError::RayAlreadyPresent(v));
            }
            let tau = current.minimal_cone_containing(&v)?;
            let new_index = current.rays.len();
            current.rays.push(v);
            let old_cones = std::mem::take(&mut current.max_cones);
            let old_charts = std::mem::take(&mut current.charts);
            for (cone, chart) in old_cones.into_iter().zip(old_charts) {
                if !is_subset(&tau, &cone) {
                    current.max_cones.push(cone);
                    current.charts.push(chart);
                    continue;
                }
                for &drop in &tau {
                    // new_index is the largest index, so c stays sorted
                    let mut c: ConeRays = cone.iter().copied().filter(|&r| r != drop).collect();
                    c.push(new_index);
                    let gens: Vec<&LatticeVector> = c.iter().map(|&i| &current.rays[i]).collect();
                    let chart = ConeChart::new(&gens).ok_or_else(|| ToricError::DependentCone(c.clone()))?;
                    current.max_cones.push(c);
                    current.charts.push(chart);
                }
            }
        }
        Ok(current)
    }

    /// Same rays and cones, ignoring the order of rays and cones.
    pub fn same_fan(&self, other: &Fan) -> bool {
        self.rank == other.rank && self.canonical_form() == other.canonical_form()
    }

    fn canonical_form(&self) -> BTreeSet<BTreeSet<&LatticeVector>> {
        self.max_cones
            .iter()
            .map(|c| c.iter().map(|&r| &self.rays[r]).collect())
            .collect()
    }

    /// Every ray of `other` is a ray of `self` and every cone of `other` is a
    /// cone of `self`.
    pub fn contains_fan(&self, other: &Fan) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let Some(index): Option<Vec<usize>> = other.rays.iter().map(|r| self.ray_index(r)).collect() else {
            return false;
        };
        other.max_cones.iter().all(|c| {
            let mapped: Vec<usize> = c.iter().map(|&r| index[r]).collect();
            self.is_cone(&mapped)
        })
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// The fan of `P^d`: rays `e_1, ..., e_d, -(e_1 + ... + e_d)`; every proper
/// subset of rays spans a cone.
pub fn projective_space_fan(d: usize) -> Result<Fan, ToricError> {
    if d == 0 {
        return Err(ToricError::ZeroRank);
    }
    let mut rays: Vec<LatticeVector> = (0..d)
        .map(|i| (0..d).map(|j| BigInt::from(i32::from(i == j))).collect())
        .collect();
    rays.push(vec![BigInt::from(-1); d]);
    let cones = (0..=d)
        .map(|skip| (0..=d).filter(|&r| r != skip).collect())
        .collect();
    Fan::new(d, rays, cones)
}

/// Product fan of `k` copies of `P^1` in `Z^k`: rays `±f_i`, one sign per cone.
pub fn product_of_lines_fan(k: usize) -> Result<Fan, ToricError> {
    if k == 0 {
        return Err(ToricError::ZeroRank);
    }
    let mut rays = Vec::with_capacity(2 * k);
    for i in 0..k {
        for sign in [1, -1] {
            rays.push((0..k).map(|j| BigInt::from(if i == j { sign } else { 0 })).collect());
        }
    }
    let cones = (0u64..(1 << k))
        .map(|mask| (0..k).map(|i| 2 * i + (mask >> i & 1) as usize).collect())
        .collect();
    Fan::new(k, rays, cones)
}
