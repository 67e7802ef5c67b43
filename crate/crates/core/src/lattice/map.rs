use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntegerMatrix, LatticeError, LatticeVector};

/// A homomorphism `Z^source_rank -> Z^target_rank`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    matrix: IntegerMatrix,
    source_rank: usize,
    target_rank: usize,
}

impl LatticeMap {
    pub fn new(matrix: IntegerMatrix) -> Self {
        Self {
            source_rank: matrix.cols(),
            target_rank: matrix.rows(),
            matrix,
        }
    }

    /// Checks the declared ranks against the matrix shape.
    pub fn with_ranks(
        matrix: IntegerMatrix,
        source_rank: usize,
        target_rank: usize,
    ) -> Result<Self, LatticeError> {
        if matrix.cols() != source_rank || matrix.rows() != target_rank {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}x{} matrix declared as Z^{} -> Z^{}",
                matrix.rows(),
                matrix.cols(),
                source_rank,
                target_rank
            )));
        }
        Ok(Self {
            matrix,
            source_rank,
            target_rank,
        })
    }

    pub fn identity(rank: usize) -> Self {
        Self::new(IntegerMatrix::identity(rank))
    }

    /// Restrict `Z^rank` to the listed coordinates, in order.
    pub fn coordinate_projection(rank: usize, coords: &[usize]) -> Result<Self, LatticeError> {
        let mut m = IntegerMatrix::zeros(coords.len().max(1), rank);
        for (row, &c) in coords.iter().enumerate() {
            if c >= rank {
                return Err(LatticeError::DimensionMismatch(format!(
                    "coordinate {c} out of range for rank {rank}"
                )));
            }
            m.set(row, c, BigInt::one());
        }
        Ok(Self::new(m))
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<LatticeVector, LatticeError> {
        self.matrix.apply(v)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.transpose())
    }

    fn require_square(&self) -> Result<(), LatticeError> {
        if self.source_rank != self.target_rank {
            return Err(LatticeError::NotSquare {
                rows: self.target_rank,
                cols: self.source_rank,
            });
        }
        Ok(())
    }

    /// Index of the image in the target lattice, `|det|`.
    pub fn sublattice_index(&self) -> Result<BigInt, LatticeError> {
        self.require_square()?;
        let det = self.matrix.determinant()?;
        if det.is_zero() {
            return Err(LatticeError::InfiniteIndex);
        }
        Ok(det.abs())
    }

    /// Invariant factors greater than one of `target / image`.
    pub fn cokernel_invariants(&self) -> Result<Vec<BigInt>, LatticeError> {
        self.require_square()?;
        let snf = smith_normal_form(&self.matrix);
        let diag = snf.diagonal();
        if diag.iter().any(Zero::is_zero) {
            return Err(LatticeError::InfiniteIndex);
        }
        Ok(diag.into_iter().filter(|d| !d.is_one()).collect())
    }
}
