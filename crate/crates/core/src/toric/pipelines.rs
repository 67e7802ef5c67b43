//! End-to-end toric constructions: the `(Z/2)^n` quotient of `P^{2n+1}` and
//! its crepant resolution, and the single-involution quotient of `P^5`.
//!
//! Homogeneous coordinates `x_0, ..., x_{2n+1}` correspond to the rays
//! `rho_0 = -(e_1 + ... + e_{2n+1})` and `rho_i = e_i`. In [`projective_space_fan`]
//! `rho_i` sits at index `i - 1` and `rho_0` at the last index; see [`ray_slot`].

use num_bigint::BigInt;

use super::{
    discrepancies, is_crepant, kernel_fan, lattice_projection_check, product_of_lines_fan,
    projective_space_fan, ConeRays, Discrepancy, Fan, ToricError,
};
use crate::lattice::{primitivize, IntegerMatrix, LatticeMap, LatticeVector};

/// Index in [`projective_space_fan`]`(d)` of the ray of homogeneous coordinate `x_i`.
pub fn ray_slot(d: usize, i: usize) -> usize {
    if i == 0 {
        d
    } else {
        i - 1
    }
}

/// Inclusion of the invariant characters `M' -> M` for the group generated by
/// the sign flips of `(x_i, x_{i+n+1})`, `i` in `flipped` (each in `1..=n`).
///
/// Generators: `w_i = e*_i + e*_{i+n+1}`, `w_{n+i+1} = e*_i - e*_{i+n+1}` for
/// flipped `i`, and `w_j = e*_j` otherwise. The columns of the returned matrix
/// are the `w_k`; the matrix is symmetric, so it is also the matrix of the
/// adjoint `N -> N'`.
pub fn pair_flip_inclusion(n: usize, flipped: &[usize]) -> Result<LatticeMap, ToricError> {
    let d = 2 * n + 1;
    let mut m = IntegerMatrix::identity(d);
    for &i in flipped {
        if i == 0 || i > n {
            return Err(ToricError::Parameter(format!("flip index {i} not in 1..={n}")));
        }
        let (a, b) = (i - 1, i + n);
        m.set(a, a, BigInt::from(1));
        m.set(b, a, BigInt::from(1));
        m.set(a, b, BigInt::from(1));
        m.set(b, b, BigInt::from(-1));
    }
    Ok(LatticeMap::new(m))
}

pub fn fav_inclusion(n: usize) -> Result<LatticeMap, ToricError> {
    pair_flip_inclusion(n, &(1..=n).collect::<Vec<_>>())
}

/// Rays `rho'_0, ..., rho'_{2n+1}` of the quotient, written out directly:
/// `rho'_i = e_i + e_{i+n+1}`, `rho'_{n+i+1} = e_i - e_{i+n+1}`,
/// `rho'_{n+1} = e_{n+1}`, `rho'_0 = -2(e_1 + ... + e_n) - e_{n+1}`.
pub fn fav_closed_form_rays(n: usize) -> Vec<LatticeVector> {
    let d = 2 * n + 1;
    let e = |i: usize| -> LatticeVector { (1..=d).map(|j| BigInt::from(i32::from(i == j))).collect() };
    let add = |a: &LatticeVector, b: &LatticeVector, s: i32| -> LatticeVector {
        a.iter().zip(b).map(|(x, y)| x + y * s).collect()
    };
    let mut rays = vec![Vec::new(); d + 1];
    let mut rho0: LatticeVector = (1..=d)
        .map(|j| BigInt::from(if j <= n { -2 } else if j == n + 1 { -1 } else { 0 }))
        .collect();
    std::mem::swap(&mut rays[0], &mut rho0);
    rays[n + 1] = e(n + 1);
    for i in 1..=n {
        rays[i] = add(&e(i), &e(i + n + 1), 1);
        rays[n + i + 1] = add(&e(i), &e(i + n + 1), -1);
    }
    rays
}

/// New ray on a minimal singular cone: the primitive vector along the sum of its rays.
pub fn barycentric_ray(fan: &Fan, cone: &[usize]) -> Result<LatticeVector, ToricError> {
    let mut s = vec![BigInt::from(0); fan.rank()];
    for &r in cone {
        for (acc, x) in s.iter_mut().zip(fan.ray(r)) {
            *acc += x;
        }
    }
    Ok(primitivize(&s)?)
}

#[derive(Debug, Clone)]
pub struct FavPipeline {
    pub n: usize,
    pub inclusion: LatticeMap,
    pub index: BigInt,
    pub cokernel: Vec<BigInt>,
    pub ambient: Fan,
    pub quotient: Fan,
    pub singular_cones: Vec<ConeRays>,
    /// One new ray per singular cone `sigma_i`, equal to half the sum of its rays.
    pub exceptional_rays: Vec<LatticeVector>,
    pub exceptional_rays_are_midpoints: bool,
    pub resolved: Fan,
    pub discrepancies: Vec<Discrepancy>,
    pub resolved_singular_cones: Vec<ConeRays>,
    pub anticanonical_cartier: bool,
    pub anticanonical_divisible: bool,
    pub quotient_fano: bool,
    pub resolved_anticanonical_nef: bool,
    pub resolved_anticanonical_ample: bool,
    pub projection_to_lines: bool,
    pub kernel_contains_projective_space: bool,
}

impl FavPipeline {
    pub fn run(n: usize) -> Result<Self, ToricError> {
        if n == 0 {
            return Err(ToricError::Parameter("n must be at least 1".into()));
        }
        let d = 2 * n + 1;
        let inclusion = fav_inclusion(n)?;
        let index = inclusion.sublattice_index()?;
        let cokernel = inclusion.cokernel_invariants()?;
        let ambient = projective_space_fan(d)?;
        let quotient = ambient.image(&inclusion.adjoint())?;
        let singular_cones = quotient.singular_cones();

        let mut exceptional_rays = Vec::with_capacity(singular_cones.len());
        let mut midpoints = true;
        for cone in &singular_cones {
            let v = barycentric_ray(&quotient, cone)?;
            let sum: LatticeVector = (0..d)
                .map(|j| cone.iter().map(|&r| &quotient.ray(r)[j]).sum::<BigInt>())
                .collect();
            midpoints &= cone.len() == 2 && sum.iter().zip(&v).all(|(s, x)| s == &(x * 2));
            exceptional_rays.push(v);
        }
        let resolved = quotient.subdivide_with_rays(&exceptional_rays)?;
        let discrepancies = discrepancies(&quotient, &resolved)?;
        let resolved_singular_cones = resolved.singular_cones();

        let minus_k = quotient.canonical_divisor().neg();
        let anticanonical_cartier = quotient.is_cartier(&minus_k)?;
        let anticanonical_divisible = quotient.is_divisible_in_class_group(&minus_k, (n + 1) as u64)?;
        let quotient_fano = quotient.is_fano()?;
        let resolved_minus_k = resolved.canonical_divisor().neg();
        let resolved_anticanonical_nef = resolved.is_nef(&resolved_minus_k)?;
        let resolved_anticanonical_ample = resolved.is_ample(&resolved_minus_k)?;

        let last: Vec<usize> = (n..d).collect();
        let proj = LatticeMap::coordinate_projection(d, &last)?;
        let projection_to_lines = lattice_projection_check(&resolved, &proj, &product_of_lines_fan(n + 1)?)?;
        let kernel_contains_projective_space =
            kernel_fan(&resolved, &proj)?.contains_fan(&projective_space_fan(n)?);

        Ok(Self {
            n,
            inclusion,
            index,
            cokernel,
            ambient,
            quotient,
            singular_cones,
            exceptional_rays,
            exceptional_rays_are_midpoints: midpoints,
            resolved,
            discrepancies,
            resolved_singular_cones,
            anticanonical_cartier,
            anticanonical_divisible,
            quotient_fano,
            resolved_anticanonical_nef,
            resolved_anticanonical_ample,
            projection_to_lines,
            kernel_contains_projective_space,
        })
    }

    /// Quotient rays agree with the closed form up to reordering.
    pub fn rays_match_closed_form(&self) -> bool {
        let mut got: Vec<_> = self.quotient.rays().to_vec();
        let mut want = fav_closed_form_rays(self.n);
        got.sort();
        want.sort();
        got == want
    }

    pub fn is_crepant(&self) -> bool {
        is_crepant(&self.discrepancies)
    }
}

/// Torus-orbit closure data for a minimal singular cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocus {
    pub cone: ConeRays,
    /// dimension of the orbit closure, `rank - |cone|`
    pub dimension: usize,
    /// homogeneous coordinates vanishing on it
    pub vanishing_coordinates: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct P5Pipeline {
    pub inclusion: LatticeMap,
    pub quotient: Fan,
    pub singular_loci: Vec<SingularLocus>,
    pub full: Fan,
    pub full_discrepancies: Vec<Discrepancy>,
    pub full_smooth: bool,
    pub full_anticanonical_divisible_by_3: bool,
    pub partial: Fan,
    pub partial_discrepancies: Vec<Discrepancy>,
    pub partial_smooth: bool,
    pub partial_anticanonical_divisible_by_3: bool,
}

impl P5Pipeline {
    /// `Z/2` acting on `P^5` by `[x_0 : -x_1 : x_2 : x_3 : -x_4 : x_5]`.
    pub fn run() -> Result<Self, ToricError> {
        let (n, d) = (2, 5);
        let inclusion = pair_flip_inclusion(n, &[1])?;
        let quotient = projective_space_fan(d)?.image(&inclusion.adjoint())?;
        let slot_to_coordinate = |slot: usize| if slot == d { 0 } else { slot + 1 };
        let mut singular_loci: Vec<SingularLocus> = quotient
            .singular_cones()
            .into_iter()
            .map(|cone| {
                let mut vanishing: Vec<usize> = cone.iter().map(|&s| slot_to_coordinate(s)).collect();
                vanishing.sort_unstable();
                SingularLocus {
                    dimension: d - cone.len(),
                    vanishing_coordinates: vanishing,
                    cone,
                }
            })
            .collect();
        singular_loci.sort_by_key(|l| std::cmp::Reverse(l.dimension));

        let new_rays = singular_loci
            .iter()
            .map(|l| barycentric_ray(&quotient, &l.cone))
            .collect::<Result<Vec<_>, _>>()?;
        let full = quotient.subdivide_with_rays(&new_rays)?;
        let partial = quotient.subdivide_with_rays(&new_rays[..1])?;
        let full_discrepancies = discrepancies(&quotient, &full)?;
        let partial_discrepancies = discrepancies(&quotient, &partial)?;
        let full_anticanonical_divisible_by_3 =
            full.is_divisible_in_class_group(&full.canonical_divisor().neg(), 3)?;
        let partial_anticanonical_divisible_by_3 =
            partial.is_divisible_in_class_group(&partial.canonical_divisor().neg(), 3)?;
        Ok(Self {
            inclusion,
            full_smooth: full.is_smooth(),
            partial_smooth: partial.is_smooth(),
            quotient,
            singular_loci,
            full,
            full_discrepancies,
            full_anticanonical_divisible_by_3,
            partial,
            partial_discrepancies,
            partial_anticanonical_divisible_by_3,
        })
    }

    pub fn full_crepant(&self) -> bool {
        is_crepant(&self.full_discrepancies)
    }

    pub fn partial_crepant(&self) -> bool {
        is_crepant(&self.partial_discrepancies)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    #[test]
    fn inclusion_matrix_for_one_pair() {
        let m = fav_inclusion(1).unwrap();
        assert_eq!(
            m.matrix(),
            &IntegerMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, -1]])
        );
        assert_eq!(m.matrix(), m.adjoint().matrix());
    }

    #[test]
    fn closed_form_n1() {
        assert_eq!(
            fav_closed_form_rays(1),
            vec![ivec(&[-2, -1, 0]), ivec(&[1, 0, 1]), ivec(&[0, 1, 0]), ivec(&[1, 0, -1])]
        );
    }

    #[test]
    fn flip_index_range() {
        assert!(pair_flip_inclusion(2, &[3]).is_err());
        assert!(pair_flip_inclusion(2, &[0]).is_err());
    }
}
