use num_traits::{Signed, Zero};

use super::fan::{to_rational, Fan};
use super::ToricError;
use crate::lattice::{hermite_normal_form, primitivize, smith_normal_form, IntegerMatrix, LatticeMap, LatticeVector, RationalMatrix};

/// Whether `proj` maps every cone of `fan` into a cone of `expected`, and the
/// images of the rays of `fan` hit every ray of `expected`.
pub fn lattice_projection_check(fan: &Fan, proj: &LatticeMap, expected: &Fan) -> Result<bool, ToricError> {
    if proj.source_rank() != fan.rank() || proj.target_rank() != expected.rank() {
        return Err(ToricError::MapShape {
            fan_rank: fan.rank(),
            source_rank: proj.source_rank(),
        });
    }
    let images: Vec<Option<LatticeVector>> = fan
        .rays()
        .iter()
        .map(|r| {
            let v = proj.apply(r)?;
            Ok(if v.iter().all(Zero::is_zero) {
                None
            } else {
                Some(primitivize(&v)?)
            })
        })
        .collect::<Result<_, ToricError>>()?;

    for cone in fan.max_cones() {
        let pts: Vec<_> = cone
            .iter()
            .filter_map(|&r| images[r].as_ref().map(|v| to_rational(v)))
            .collect();
        let lands = expected.max_cones().iter().enumerate().any(|(ci, _)| {
            pts.iter().all(|p| {
                expected
                    .locate_in(ci, p)
                    .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
            })
        });
        if !lands {
            return Ok(false);
        }
    }
    Ok(expected
        .rays()
        .iter()
        .all(|target| images.iter().flatten().any(|v| v == target)))
}

/// The fan cut out by the rays of `fan` lying in `ker(proj)`, written in the
/// Hermite-reduced basis of the kernel lattice.
pub fn kernel_fan(fan: &Fan, proj: &LatticeMap) -> Result<Fan, ToricError> {
    let basis = kernel_basis(proj.matrix());
    if basis.is_empty() {
        return Err(ToricError::TrivialKernel);
    }
    let k = basis.len();
    let b = RationalMatrix::from_integer(&IntegerMatrix::from_columns(&basis)?);

    let mut index = vec![None; fan.rays().len()];
    let mut rays = Vec::new();
    for (i, r) in fan.rays().iter().enumerate() {
        if proj.apply(r)?.iter().all(Zero::is_zero) {
            let coords = b
                .solve(&to_rational(r))?
                .expect("kernel vector lies in the span of the kernel basis");
            let coords: LatticeVector = coords.into_iter().map(|c| c.to_integer()).collect();
            index[i] = Some(rays.len());
            rays.push(coords);
        }
    }
    let mut cones: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| c.iter().filter_map(|&r| index[r]).collect::<Vec<_>>())
        .filter(|c: &Vec<usize>| !c.is_empty())
        .collect();
    for c in &mut cones {
        c.sort_unstable();
    }
    cones.sort();
    cones.dedup();
    let maximal: Vec<Vec<usize>> = cones
        .iter()
        .filter(|c| !cones.iter().any(|d| d != *c && c.iter().all(|x| d.contains(x))))
        .cloned()
        .collect();
    Fan::new(k, rays, maximal)
}

/// Row-HNF basis of the integer kernel of `m` (as column vectors).
fn kernel_basis(m: &IntegerMatrix) -> Vec<LatticeVector> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let vecs: Vec<LatticeVector> = (r..m.cols()).map(|j| snf.v.column(j)).collect();
    if vecs.is_empty() {
        return vecs;
    }
    let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(&vecs).expect("nonempty kernel"));
    (0..h.rows())
        .map(|i| h.row(i).to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}
