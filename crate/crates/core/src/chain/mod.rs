//! Based chain complexes over the rationals, their homology and torsion.

mod homology;
pub mod random;
mod sequence;
mod torsion;

pub use homology::{homology_with_basis, homology_ranks, DegreeHomology};
pub use sequence::{additivity_check, homology_sequence, AdditivityReport, ChainMap, ShortExactSequence};
pub use torsion::{
    exact_sequence_torsion, milnor_torsion, milnor_torsion_with_lifts, rescale_homology_basis,
    scaled_torsion, HomologyBasis, LiftStrategy, TorsionValue,
};

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, SparseVec};

/// A finite chain complex `C_top → … → C_0` of finite-dimensional rational
/// vector spaces, expressed in preferred bases.
///
/// `boundary(q)` lists the images of the degree-`q` basis vectors in
/// degree-`q−1` coordinates; degree 0 has an empty boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<Vec<SparseVec>>,
    labels: Option<Vec<Vec<String>>>,
}

impl BasedChainComplex {
    /// `boundaries[q]` holds `dims[q]` columns for `q ≥ 1`; `boundaries[0]`
    /// may be empty or all-zero.
    pub fn new(dims: Vec<usize>, boundaries: Vec<Vec<SparseVec>>) -> Result<Self> {
        if boundaries.len() != dims.len() {
            return Err(Error::Dimension(format!(
                "{} degrees but {} boundary maps",
                dims.len(),
                boundaries.len()
            )));
        }
        let mut boundaries = boundaries;
        if boundaries.first().is_some_and(Vec::is_empty) {
            boundaries[0] = vec![SparseVec::new(); dims[0]];
        }
        for (q, cols) in boundaries.iter().enumerate() {
            if cols.len() != dims[q] {
                return Err(Error::Dimension(format!(
                    "degree {q}: {} columns for dimension {}",
                    cols.len(),
                    dims[q]
                )));
            }
            let target = if q == 0 { 0 } else { dims[q - 1] };
            for c in cols {
                if let Some(m) = c.max_index() {
                    if m >= target {
                        return Err(Error::Dimension(format!("degree {q}: boundary index {m} out of range")));
                    }
                }
            }
        }
        let c = Self { dims, boundaries, labels: None };
        c.check_square_zero()?;
        Ok(c)
    }

    /// Builds from dense matrices `D_q : C_q → C_{q−1}` for `q = 1..=top`.
    pub fn from_matrices(dims: Vec<usize>, matrices: &[RationalMatrix]) -> Result<Self> {
        if matrices.len() + 1 != dims.len() {
            return Err(Error::Dimension("need one matrix per positive degree".into()));
        }
        let mut boundaries = vec![vec![SparseVec::new(); dims[0]]];
        for (i, m) in matrices.iter().enumerate() {
            let q = i + 1;
            if m.rows() != dims[q - 1] || m.cols() != dims[q] {
                return Err(Error::Dimension(format!(
                    "D_{q} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[q - 1],
                    dims[q]
                )));
            }
            boundaries.push(m.columns());
        }
        Self::new(dims, boundaries)
    }

    /// The complex with nothing in it, of the given length.
    pub fn zero(top: usize) -> Self {
        Self { dims: vec![0; top + 1], boundaries: vec![Vec::new(); top + 1], labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.dims.len() || labels.iter().zip(&self.dims).any(|(l, d)| l.len() != *d) {
            return Err(Error::Dimension("label list does not match dimensions".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    fn check_square_zero(&self) -> Result<()> {
        for q in 2..self.dims.len() {
            for (j, col) in self.boundaries[q].iter().enumerate() {
                let mut acc = SparseVec::new();
                for (i, v) in col.entries() {
                    acc = acc.add_scaled(v, &self.boundaries[q - 1][*i]);
                }
                if !acc.is_zero() {
                    return Err(Error::Invariant(format!(
                        "boundary of boundary is nonzero (degree {q}, basis element {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Highest degree (length of the complex).
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    /// Columns of `∂_q`; empty for degrees outside the complex.
    pub fn boundary(&self, q: usize) -> &[SparseVec] {
        self.boundaries.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn boundary_matrix(&self, q: usize) -> RationalMatrix {
        let rows = if q == 0 { 0 } else { self.dim(q - 1) };
        RationalMatrix::from_columns(rows, self.boundary(q))
    }

    /// `∂_q v` for a chain `v` of degree `q`.
    pub fn apply_boundary(&self, q: usize, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        if q == 0 {
            return acc;
        }
        for (i, c) in v.entries() {
            acc = acc.add_scaled(c, &self.boundaries[q][*i]);
        }
        acc
    }

    /// `self ⊕ other`, basis of `self` first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let len = self.len().max(other.len());
        let dims: Vec<usize> = (0..len).map(|q| self.dim(q) + other.dim(q)).collect();
        let boundaries = (0..len)
            .map(|q| {
                let offset = if q == 0 { 0 } else { self.dim(q - 1) };
                let mut cols: Vec<SparseVec> = self.boundary(q).to_vec();
                cols.resize(self.dim(q), SparseVec::new());
                let theirs = other.boundary(q);
                cols.extend((0..other.dim(q)).map(|k| {
                    theirs.get(k).map(|c| c.filter_map_indices(|i| Some(i + offset))).unwrap_or_default()
                }));
                cols
            })
            .collect();
        Self::new(dims, boundaries)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_square() {
        let d1 = RationalMatrix::from_i64(&[vec![1]]);
        let d2 = RationalMatrix::from_i64(&[vec![1]]);
        let err = BasedChainComplex::from_matrices(vec![1, 1, 1], &[d1, d2]).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
    }

    #[test]
    fn rejects_bad_shapes() {
        let d1 = RationalMatrix::from_i64(&[vec![1, 2]]);
        assert!(BasedChainComplex::from_matrices(vec![1, 1], &[d1]).is_err());
    }
}
