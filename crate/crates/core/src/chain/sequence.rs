use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{determinant_of_columns, rank_of, Echelon, SparseVec};
use crate::logexpr::LogExpr;

use super::homology::boundary_basis;
use super::torsion::{exact_sequence_torsion, milnor_torsion, HomologyBasis};
use super::BasedChainComplex;

/// A degree-preserving linear map between based complexes, stored as the
/// images of the source basis vectors per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub columns: Vec<Vec<SparseVec>>,
}

impl ChainMap {
    pub fn new(columns: Vec<Vec<SparseVec>>) -> Self {
        Self { columns }
    }

    pub fn apply(&self, q: usize, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in v.entries() {
            acc = acc.add_scaled(c, &self.columns[q][*i]);
        }
        acc
    }

    fn degree(&self, q: usize) -> &[SparseVec] {
        self.columns.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    fn check(&self, src: &BasedChainComplex, dst: &BasedChainComplex, name: &str) -> Result<()> {
        for q in 0..src.len().max(dst.len()) {
            let cols = self.degree(q);
            if cols.len() != src.dim(q) {
                return Err(Error::Dimension(format!("{name}: degree {q} has {} columns", cols.len())));
            }
            if cols.iter().any(|c| c.max_index().is_some_and(|m| m >= dst.dim(q))) {
                return Err(Error::Dimension(format!("{name}: degree {q} image out of range")));
            }
            if q > 0 {
                for (k, col) in cols.iter().enumerate() {
                    let lhs = dst.apply_boundary(q, col);
                    let rhs = self.apply(q - 1, &src.boundary(q)[k]);
                    if lhs != rhs {
                        return Err(Error::Invariant(format!("{name} does not commute with the boundary in degree {q}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `0 → C′ → C → C″ → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: BasedChainComplex,
    pub total: BasedChainComplex,
    pub quotient: BasedChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

#[derive(Clone, Debug)]
pub struct AdditivityReport {
    pub holds: bool,
    pub total: LogExpr,
    pub sub: LogExpr,
    pub quotient: LogExpr,
    pub homology_sequence: LogExpr,
    /// `τ(C) − τ(C′) − τ(C″) − τ(H)`.
    pub residual: LogExpr,
    /// The long exact homology sequence as an acyclic based complex.
    pub sequence_complex: BasedChainComplex,
}

/// Expresses cycles of one degree in a homology basis, modulo boundaries.
struct ClassSolver {
    echelon: Echelon,
    offset: usize,
    rank: usize,
}

impl ClassSolver {
    fn new(c: &BasedChainComplex, q: usize, h: &[SparseVec]) -> Self {
        let mut echelon = Echelon::tracking();
        let bs = boundary_basis(c, q);
        for b in &bs {
            echelon.insert(b);
        }
        for v in h {
            echelon.insert(v);
        }
        Self { echelon, offset: bs.len(), rank: h.len() }
    }

    fn coords(&self, z: &SparseVec) -> Result<SparseVec> {
        let w = self
            .echelon
            .solve(z)
            .ok_or_else(|| Error::InvalidArgument("vector is not a cycle modulo boundaries".into()))?;
        Ok(w.filter_map_indices(|i| (i >= self.offset).then(|| i - self.offset)))
    }
}

fn exactness(ses: &ShortExactSequence) -> Result<()> {
    let n = ses.total.len().max(ses.sub.len()).max(ses.quotient.len());
    for q in 0..n {
        let (a, b, c) = (ses.sub.dim(q), ses.total.dim(q), ses.quotient.dim(q));
        if a + c != b {
            return Err(Error::NotExact(format!("degree {q}: dimensions {a} + {c} != {b}")));
        }
        if rank_of(ses.inclusion.degree(q)) != a {
            return Err(Error::NotExact(format!("degree {q}: inclusion is not injective")));
        }
        if rank_of(ses.projection.degree(q)) != c {
            return Err(Error::NotExact(format!("degree {q}: projection is not surjective")));
        }
        for col in ses.inclusion.degree(q) {
            if !ses.projection.apply(q, col).is_zero() {
                return Err(Error::NotExact(format!("degree {q}: projection ∘ inclusion != 0")));
            }
        }
    }
    Ok(())
}

/// Lifts of the quotient basis vectors through the projection.
fn quotient_lifts(ses: &ShortExactSequence, q: usize) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    for col in ses.projection.degree(q) {
        e.insert(col);
    }
    (0..ses.quotient.dim(q)).map(|t| e.solve(&SparseVec::unit(t)).expect("surjective")).collect()
}

/// Checks `log τ(C) = log τ(C′) + log τ(C″) + log τ(H)` where `H` is the long
/// exact homology sequence based by the given homology bases.
///
/// The sequence slots sit in degrees `3q+2` (`H_q(C′)`), `3q+1` (`H_q(C)`)
/// and `3q` (`H_q(C″)`). Preferred bases must be compatible: the inclusion
/// of the `C′` basis followed by lifts of the `C″` basis must differ from
/// the `C` basis by a determinant ±1.
pub fn additivity_check(
    ses: &ShortExactSequence,
    h_sub: &HomologyBasis,
    h_total: &HomologyBasis,
    h_quotient: &HomologyBasis,
) -> Result<AdditivityReport> {
    ses.inclusion.check(&ses.sub, &ses.total, "inclusion")?;
    ses.projection.check(&ses.total, &ses.quotient, "projection")?;
    exactness(ses)?;
    let n = ses.total.len().max(ses.sub.len()).max(ses.quotient.len());
    let lifts: Vec<Vec<SparseVec>> = (0..n).map(|q| quotient_lifts(ses, q)).collect();
    for q in 0..n {
        let mut cols: Vec<SparseVec> = ses.inclusion.degree(q).to_vec();
        cols.extend(lifts[q].iter().cloned());
        if cols.is_empty() {
            continue;
        }
        let det = determinant_of_columns(&cols).abs();
        if !det.is_one() {
            return Err(Error::InvalidArgument(format!(
                "degree {q}: preferred bases are not compatible (determinant {det})"
            )));
        }
    }

    let t_total = milnor_torsion(&ses.total, h_total)?;
    let t_sub = milnor_torsion(&ses.sub, h_sub)?;
    let t_quot = milnor_torsion(&ses.quotient, h_quotient)?;
    let h_complex = homology_sequence_unchecked(ses, h_sub, h_total, h_quotient, &lifts)?;
    let t_h = exact_sequence_torsion(&h_complex)?;

    let residual = t_total.log().clone() - t_sub.log().clone() - t_quot.log().clone() - t_h.log().clone();
    Ok(AdditivityReport {
        holds: residual.is_zero(),
        total: t_total.log().clone(),
        sub: t_sub.log().clone(),
        quotient: t_quot.log().clone(),
        homology_sequence: t_h.log().clone(),
        residual,
        sequence_complex: h_complex,
    })
}

/// The long exact homology sequence of `0 → C′ → C → C″ → 0` as an acyclic
/// based complex, in the slot degrees described at [`additivity_check`].
/// Its boundary columns are the matrices of `i_*`, `j_*` and `δ` in the given bases.
pub fn homology_sequence(
    ses: &ShortExactSequence,
    h_sub: &HomologyBasis,
    h_total: &HomologyBasis,
    h_quotient: &HomologyBasis,
) -> Result<BasedChainComplex> {
    ses.inclusion.check(&ses.sub, &ses.total, "inclusion")?;
    ses.projection.check(&ses.total, &ses.quotient, "projection")?;
    exactness(ses)?;
    let n = ses.total.len().max(ses.sub.len()).max(ses.quotient.len());
    let lifts: Vec<Vec<SparseVec>> = (0..n).map(|q| quotient_lifts(ses, q)).collect();
    homology_sequence_unchecked(ses, h_sub, h_total, h_quotient, &lifts)
}

fn homology_sequence_unchecked(
    ses: &ShortExactSequence,
    h_sub: &HomologyBasis,
    h_total: &HomologyBasis,
    h_quotient: &HomologyBasis,
    lifts: &[Vec<SparseVec>],
) -> Result<BasedChainComplex> {
    let n = lifts.len();

    let get = |h: &HomologyBasis, q: usize| -> Vec<SparseVec> { h.get(q).cloned().unwrap_or_default() };
    let solvers_total: Vec<ClassSolver> = (0..n).map(|q| ClassSolver::new(&ses.total, q, &get(h_total, q))).collect();
    let solvers_sub: Vec<ClassSolver> = (0..n).map(|q| ClassSolver::new(&ses.sub, q, &get(h_sub, q))).collect();
    let solvers_quot: Vec<ClassSolver> =
        (0..n).map(|q| ClassSolver::new(&ses.quotient, q, &get(h_quotient, q))).collect();

    let mut inc_solver: Vec<Echelon> = Vec::with_capacity(n);
    for q in 0..n {
        let mut e = Echelon::tracking();
        for col in ses.inclusion.degree(q) {
            e.insert(col);
        }
        inc_solver.push(e);
    }

    let top = 3 * (n - 1) + 2;
    let mut dims = vec![0; top + 1];
    for q in 0..n {
        dims[3 * q + 2] = solvers_sub[q].rank;
        dims[3 * q + 1] = solvers_total[q].rank;
        dims[3 * q] = solvers_quot[q].rank;
    }
    let mut boundaries: Vec<Vec<SparseVec>> = vec![Vec::new(); top + 1];
    boundaries[0] = vec![SparseVec::new(); dims[0]];
    for q in 0..n {
        // i_* : H_q(C′) → H_q(C)
        boundaries[3 * q + 2] = get(h_sub, q)
            .iter()
            .map(|z| solvers_total[q].coords(&ses.inclusion.apply(q, z)))
            .collect::<Result<_>>()?;
        // j_* : H_q(C) → H_q(C″)
        boundaries[3 * q + 1] = get(h_total, q)
            .iter()
            .map(|z| solvers_quot[q].coords(&ses.projection.apply(q, z)))
            .collect::<Result<_>>()?;
        // δ : H_q(C″) → H_{q−1}(C′)
        if q > 0 {
            boundaries[3 * q] = get(h_quotient, q)
                .iter()
                .map(|z| {
                    let mut x = SparseVec::new();
                    for (t, c) in z.entries() {
                        x = x.add_scaled(c, &lifts[q][*t]);
                    }
                    let dx = ses.total.apply_boundary(q, &x);
                    let y = inc_solver[q - 1]
                        .solve(&dx)
                        .ok_or_else(|| Error::NotExact("connecting map: boundary of lift not in subcomplex".into()))?;
                    solvers_sub[q - 1].coords(&y)
                })
                .collect::<Result<_>>()?;
        }
    }
    BasedChainComplex::new(dims, boundaries)
}
