use crate::linalg::{kernel_of_columns, Echelon, Insert, SparseVec};

use super::BasedChainComplex;

/// Homology data of one degree.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub rank: usize,
    /// Integral basis of the cycles `Z_q`, in chain coordinates.
    pub cycles: Vec<SparseVec>,
    /// Integral basis of the boundaries `B_q`, in chain coordinates.
    pub boundaries: Vec<SparseVec>,
    /// Cycles whose classes form a basis of `H_q` (a default `h_q`).
    pub representatives: Vec<SparseVec>,
}

/// Boundary basis of degree `q`: images of the independent columns of `∂_{q+1}`.
pub(crate) fn boundary_basis(c: &BasedChainComplex, q: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for col in c.boundary(q + 1) {
        if let Insert::Independent { .. } = e.insert(col) {
            out.push(col.primitive());
        }
    }
    out
}

pub(crate) fn cycle_basis(c: &BasedChainComplex, q: usize) -> Vec<SparseVec> {
    if q == 0 {
        return (0..c.dim(0)).map(SparseVec::unit).collect();
    }
    kernel_of_columns(c.boundary(q)).iter().map(SparseVec::primitive).collect()
}

/// Ranks, cycles, boundaries and default homology representatives per degree.
pub fn homology_with_basis(c: &BasedChainComplex) -> Vec<DegreeHomology> {
    (0..c.len())
        .map(|q| {
            let cycles = cycle_basis(c, q);
            let boundaries = boundary_basis(c, q);
            let mut e = Echelon::new();
            for b in &boundaries {
                e.insert(b);
            }
            let representatives: Vec<SparseVec> = cycles
                .iter()
                .filter(|z| matches!(e.insert(z), Insert::Independent { .. }))
                .cloned()
                .collect();
            DegreeHomology { rank: cycles.len() - boundaries.len(), cycles, boundaries, representatives }
        })
        .collect()
}

/// Betti numbers only (rank-nullity on each boundary map).
pub fn homology_ranks(c: &BasedChainComplex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=c.len())
        .map(|q| if q == 0 || q >= c.len() { 0 } else { crate::linalg::rank_of(c.boundary(q)) })
        .collect();
    (0..c.len()).map(|q| c.dim(q) - ranks[q] - ranks[q + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalMatrix;

    #[test]
    fn circle_and_disc() {
        // Triangle boundary: vertices 0,1,2; edges 01, 02, 12.
        let d1 = RationalMatrix::from_i64(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s1 = BasedChainComplex::from_matrices(vec![3, 3], &[d1.clone()]).unwrap();
        assert_eq!(homology_ranks(&s1), vec![1, 1]);
        let h = homology_with_basis(&s1);
        assert_eq!(h[1].representatives.len(), 1);
        let d2 = RationalMatrix::from_i64(&[vec![1], vec![-1], vec![1]]);
        let disc = BasedChainComplex::from_matrices(vec![3, 3, 1], &[d1, d2]).unwrap();
        assert_eq!(homology_ranks(&disc), vec![1, 0, 0]);
        let h = homology_with_basis(&disc);
        assert!(h.iter().all(|d| d.rank == d.cycles.len() - d.boundaries.len()));
    }
}
