use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{determinant_of_columns, q as rat, qfrac, Echelon, Insert, SparseVec, Q};
use crate::logexpr::LogExpr;

use super::homology::{cycle_basis, homology_ranks};
use super::BasedChainComplex;

/// Homology bases per degree, each vector a cycle in chain coordinates.
pub type HomologyBasis = Vec<Vec<SparseVec>>;

/// How the lifts `b_q` of the boundaries are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftStrategy {
    /// Unit vectors on the pivot columns of `∂_q`.
    Pivot,
    /// Pivot lifts mixed by a random triangular change and shifted by random cycles.
    Randomized(u64),
}

/// Torsion of a based complex with the sign discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue {
    magnitude: Q,
    log: LogExpr,
}

impl TorsionValue {
    pub fn from_magnitude(magnitude: Q) -> Result<Self> {
        let log = LogExpr::log_rational(&magnitude)?;
        Ok(Self { magnitude, log })
    }

    /// `τ` itself (a positive rational).
    pub fn magnitude(&self) -> &Q {
        &self.magnitude
    }

    /// `log τ` as an exact sum of prime logs.
    pub fn log(&self) -> &LogExpr {
        &self.log
    }

    pub fn log_value(&self) -> f64 {
        self.log.value().expect("prime logs evaluate")
    }
}

fn lifts(c: &BasedChainComplex, q: usize, strategy: LiftStrategy, rng: &mut Option<ChaCha8Rng>) -> Vec<SparseVec> {
    if q == 0 {
        return Vec::new();
    }
    let mut e = Echelon::new();
    let mut pivots = Vec::new();
    for (j, col) in c.boundary(q).iter().enumerate() {
        if let Insert::Independent { .. } = e.insert(col) {
            pivots.push(j);
        }
    }
    let units: Vec<SparseVec> = pivots.iter().map(|&j| SparseVec::unit(j)).collect();
    match (strategy, rng.as_mut()) {
        (LiftStrategy::Pivot, _) | (_, None) => units,
        (LiftStrategy::Randomized(_), Some(rng)) => {
            let cycles = cycle_basis(c, q);
            let mut out = Vec::with_capacity(units.len());
            for k in 0..units.len() {
                let mut scale = 0;
                while scale == 0 {
                    scale = rng.gen_range(-3i64..=3);
                }
                let mut v = units[k].scaled(&rat(scale));
                for u in &units[..k] {
                    v = v.add_scaled(&rat(rng.gen_range(-2i64..=2)), u);
                }
                for z in &cycles {
                    if rng.gen_bool(0.5) {
                        let num = rng.gen_range(-5i64..=5);
                        let den = rng.gen_range(1i64..=4);
                        v = v.add_scaled(&qfrac(num, den), z);
                    }
                }
                out.push(v);
            }
            out
        }
    }
}

fn check_basis(c: &BasedChainComplex, h: &HomologyBasis, ranks: &[usize]) -> Result<()> {
    if h.len() > c.len() {
        return Err(Error::InvalidArgument(format!(
            "homology basis has {} degrees, complex has {}",
            h.len(),
            c.len()
        )));
    }
    for q in 0..c.len() {
        let hq = h.get(q).map(Vec::as_slice).unwrap_or(&[]);
        if hq.len() != ranks[q] {
            return Err(Error::InvalidArgument(format!(
                "h_{q} has {} vectors but H_{q} has rank {}",
                hq.len(),
                ranks[q]
            )));
        }
        for v in hq {
            if v.max_index().is_some_and(|m| m >= c.dim(q)) {
                return Err(Error::Dimension(format!("h_{q} vector out of range")));
            }
            if !c.apply_boundary(q, v).is_zero() {
                return Err(Error::InvalidArgument(format!("h_{q} contains a non-cycle")));
            }
        }
    }
    Ok(())
}

/// Milnor torsion with pivot lifts.
pub fn milnor_torsion(c: &BasedChainComplex, h: &HomologyBasis) -> Result<TorsionValue> {
    milnor_torsion_with_lifts(c, h, LiftStrategy::Pivot)
}

/// `log τ = Σ_q (−1)^q log |det(∂b_{q+1}, h_q, b_q / c_q)|`.
pub fn milnor_torsion_with_lifts(
    c: &BasedChainComplex,
    h: &HomologyBasis,
    strategy: LiftStrategy,
) -> Result<TorsionValue> {
    let ranks = homology_ranks(c);
    check_basis(c, h, &ranks)?;
    let mut rng = match strategy {
        LiftStrategy::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        LiftStrategy::Pivot => None,
    };
    let b: Vec<Vec<SparseVec>> = (0..=c.len()).map(|q| lifts(c, q, strategy, &mut rng)).collect();
    let mut magnitude = Q::one();
    for q in 0..c.len() {
        if c.dim(q) == 0 {
            continue;
        }
        let mut cols: Vec<SparseVec> = b[q + 1].iter().map(|v| c.apply_boundary(q + 1, v)).collect();
        cols.extend(h.get(q).into_iter().flatten().cloned());
        cols.extend(b[q].iter().cloned());
        if cols.len() != c.dim(q) {
            return Err(Error::Dimension(format!(
                "degree {q}: change of basis has {} columns for dimension {}",
                cols.len(),
                c.dim(q)
            )));
        }
        let det = determinant_of_columns(&cols).abs();
        if det.is_zero() {
            return Err(Error::InvalidArgument(format!("h_{q} does not span H_{q}")));
        }
        if q % 2 == 0 {
            magnitude *= det;
        } else {
            magnitude /= det;
        }
    }
    TorsionValue::from_magnitude(magnitude)
}

/// Torsion of an acyclic complex.
pub fn exact_sequence_torsion(c: &BasedChainComplex) -> Result<TorsionValue> {
    let ranks = homology_ranks(c);
    if let Some(q) = ranks.iter().position(|&r| r > 0) {
        return Err(Error::NotExact(format!("homology in degree {q} has rank {}", ranks[q])));
    }
    milnor_torsion(c, &Vec::new())
}

/// Multiplies every vector of `h_q` by `s`; returns the new basis and the
/// exact shift `(−1)^q · rank · log|s|` of the torsion.
pub fn rescale_homology_basis(h: &HomologyBasis, q: usize, s: &Q) -> Result<(HomologyBasis, LogExpr)> {
    if s.is_zero() {
        return Err(Error::InvalidArgument("rescaling by zero".into()));
    }
    let mut out = h.clone();
    if out.len() <= q {
        out.resize(q + 1, Vec::new());
    }
    for v in &mut out[q] {
        *v = v.scaled(s);
    }
    let rank = Q::from_integer(out[q].len().into());
    let mut shift = LogExpr::log_rational(&s.abs())?.scale(&rank);
    if q % 2 == 1 {
        shift = -shift;
    }
    Ok((out, shift))
}

/// Torsion for the basis whose `k`-th vector in degree `q` is the reference
/// vector `h[q][k]` multiplied by `exp(log_scales[q][k])`. Multilinearity of
/// the determinant makes this exact for symbolic (irrational) scales.
pub fn scaled_torsion(c: &BasedChainComplex, h: &HomologyBasis, log_scales: &[Vec<LogExpr>]) -> Result<LogExpr> {
    let base = milnor_torsion(c, h)?;
    let mut acc = base.log().clone();
    for (q, scales) in log_scales.iter().enumerate() {
        let n = h.get(q).map(Vec::len).unwrap_or(0);
        if scales.len() != n {
            return Err(Error::Dimension(format!("degree {q}: {} scales for {n} vectors", scales.len())));
        }
        for s in scales {
            if q % 2 == 0 {
                acc += s.clone();
            } else {
                acc -= s.clone();
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::chain::homology_with_basis;
    use crate::linalg::RationalMatrix;

    #[test]
    fn times_two_gives_log_two() {
        let c = BasedChainComplex::from_matrices(vec![1, 1], &[RationalMatrix::from_i64(&[vec![2]])]).unwrap();
        let t = exact_sequence_torsion(&c).unwrap();
        assert_eq!(t.magnitude(), &q(2));
        assert_eq!(t.log(), &LogExpr::log_i64(2));
    }

    #[test]
    fn identity_gives_zero() {
        let c = BasedChainComplex::from_matrices(vec![1, 1], &[RationalMatrix::from_i64(&[vec![1]])]).unwrap();
        assert!(exact_sequence_torsion(&c).unwrap().log().is_zero());
    }

    #[test]
    fn wrong_basis_size_rejected() {
        let c = BasedChainComplex::from_matrices(vec![1, 1], &[RationalMatrix::from_i64(&[vec![0]])]).unwrap();
        assert!(milnor_torsion(&c, &vec![vec![]]).is_err());
        let h = homology_with_basis(&c);
        let basis: HomologyBasis = h.iter().map(|d| d.representatives.clone()).collect();
        assert!(milnor_torsion(&c, &basis).unwrap().log().is_zero());
        assert!(exact_sequence_torsion(&c).is_err());
    }

    #[test]
    fn rescale_shift_matches() {
        let c = BasedChainComplex::from_matrices(vec![1, 2], &[RationalMatrix::from_i64(&[vec![0, 0]])]).unwrap();
        let h = vec![vec![SparseVec::unit(0)], vec![SparseVec::unit(0), SparseVec::unit(1)]];
        let base = milnor_torsion(&c, &h).unwrap();
        let (h2, shift) = rescale_homology_basis(&h, 1, &q(2)).unwrap();
        assert_eq!(shift, -LogExpr::log_i64(4));
        let t2 = milnor_torsion(&c, &h2).unwrap();
        assert_eq!(t2.log().clone() - base.log().clone(), shift);
        assert!(rescale_homology_basis(&h, 0, &q(0)).is_err());
    }
}
