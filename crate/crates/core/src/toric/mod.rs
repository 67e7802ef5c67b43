//! Simplicial fans, toric quotients by finite subgroups of the torus, and the
//! divisor theory needed to certify crepant resolutions.
//!
//! Ray vectors are primitive integer vectors; cones are sorted sets of ray
//! indices. Support functions follow the convention `<m_sigma, u_rho> = -a_rho`
//! for a divisor `sum a_rho D_rho`, so the canonical divisor has value 1 on
//! every primitive ray and the discrepancy of a new ray `v` is `phi_K(v) - 1`.

mod divisor;
mod fan;
pub(crate) mod json;
pub mod pipelines;
mod projection;

pub use divisor::{
    discrepancies, is_crepant, ClassGroupPresentation, Discrepancy, SupportFunction, ToricDivisor,
};
pub use fan::{product_of_lines_fan, projective_space_fan, ConeRays, Fan};
pub use projection::{kernel_fan, lattice_projection_check};

use thiserror::Error;

use crate::lattice::{LatticeError, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice rank must be at least 1")]
    ZeroRank,
    #[error("ray {ray} has length {len}, lattice rank is {rank}")]
    RayLength { ray: usize, len: usize, rank: usize },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("maximal cones must have at least one ray")]
    EmptyCone,
    #[error("cone {cone:?} references missing ray {index}")]
    ConeIndex { cone: Vec<usize>, index: usize },
    #[error("cone {0:?} is not simplicial (rays linearly dependent)")]
    DependentCone(Vec<usize>),
    #[error("cone {0:?} is a face of another maximal cone")]
    RedundantCone(Vec<usize>),
    #[error("cones {0:?} and {1:?} do not meet along a common face")]
    OverlappingCones(Vec<usize>, Vec<usize>),
    #[error("{0:?} is not a cone of the fan")]
    UnknownCone(Vec<usize>),
    #[error("cone collapse at {0:?}: construction not supported")]
    ConeCollapse(Vec<usize>),
    #[error("map source rank {source_rank} does not match fan rank {fan_rank}")]
    MapShape { fan_rank: usize, source_rank: usize },
    #[error("ray {0:?} lies outside the support of the fan")]
    OutsideSupport(LatticeVector),
    #[error("ray {0:?} does not determine a unique minimal cone")]
    AmbiguousFace(LatticeVector),
    #[error("ray {0:?} is already a ray of the fan")]
    RayAlreadyPresent(LatticeVector),
    #[error("divisor has {found} coefficients, fan has {expected} rays")]
    DivisorLength { expected: usize, found: usize },
    #[error("divisibility by zero requested")]
    ZeroDivisor,
    #[error("not a refinement: {0}")]
    NotARefinement(String),
    #[error("rays do not span the lattice")]
    RaysDoNotSpan,
    #[error("fan is not complete")]
    NotComplete,
    #[error("projection has trivial kernel")]
    TrivialKernel,
    #[error("invalid fan JSON: {0}")]
    Json(String),
    #[error("pipeline parameter out of range: {0}")]
    Parameter(String),
}
