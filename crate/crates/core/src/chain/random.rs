//! Random based complexes and short exact sequences with known structure,
//! for property tests.

use num_traits::Zero;
use rand::Rng;

use crate::linalg::{q, RationalMatrix, SparseVec};

use super::{homology_with_basis, BasedChainComplex, ChainMap, HomologyBasis, ShortExactSequence};

/// Random unimodular integer matrix (product of elementary operations).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m.set(0, 0, q(-1));
        }
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = q(rng.gen_range(-2i64..=2));
        // column j += c * column i
        for r in 0..n {
            let v = m.get(r, j) + &c * m.get(r, i);
            m.set(r, j, v);
        }
    }
    m
}

/// Random invertible rational matrix with small integer entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    loop {
        let m = RationalMatrix::from_fn(n, n, |_, _| q(rng.gen_range(-3i64..=3)));
        if n == 0 || !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Complex in a normal form: in degree `q` the first `ranks[q+1]` basis
/// vectors are boundaries, the next `ranks[q]` are sent to multiples of the
/// first `ranks[q]` vectors of degree `q−1`, the rest are homology.
#[derive(Clone, Debug)]
struct NormalForm {
    dims: Vec<usize>,
    /// `ranks[q]` = rank of `∂_q`, with `ranks[0] = ranks[len] = 0`.
    ranks: Vec<usize>,
    /// scalar on each source vector, per degree
    weights: Vec<Vec<i64>>,
}

impl NormalForm {
    fn random<R: Rng>(rng: &mut R, len: usize, max_dim: usize) -> Self {
        let mut ranks = vec![0; len + 1];
        let mut dims = vec![0; len];
        // Top down, so the targets of ∂_{q+1} are known when sizing degree q.
        for qd in (0..len).rev() {
            let upper = ranks[qd + 1];
            dims[qd] = upper + rng.gen_range(0..=max_dim.saturating_sub(upper).max(1));
            if qd > 0 {
                ranks[qd] = rng.gen_range(0..=dims[qd] - upper);
            }
        }
        let weights = (0..len)
            .map(|qd| {
                (0..ranks[qd])
                    .map(|_| {
                        let mut w = 0;
                        while w == 0 {
                            w = rng.gen_range(-3i64..=3);
                        }
                        w
                    })
                    .collect()
            })
            .collect();
        Self { dims, ranks, weights }
    }

    fn boundary_columns(&self, qd: usize) -> Vec<SparseVec> {
        let offset = self.ranks[qd + 1];
        (0..self.dims[qd])
            .map(|i| {
                if qd > 0 && i >= offset && i < offset + self.ranks[qd] {
                    let k = i - offset;
                    SparseVec::unit(k).scaled(&q(self.weights[qd][k]))
                } else {
                    SparseVec::new()
                }
            })
            .collect()
    }

    /// For a source vector `i` of degree `q`, its target index in degree `q−1`.
    fn target(&self, qd: usize, i: usize) -> Option<usize> {
        let offset = self.ranks[qd + 1];
        (qd > 0 && i >= offset && i < offset + self.ranks[qd]).then(|| i - offset)
    }
}

fn conjugate(nf: &NormalForm, p: &[RationalMatrix], pinv: &[RationalMatrix]) -> BasedChainComplex {
    let len = nf.dims.len();
    let mut boundaries = vec![vec![SparseVec::new(); nf.dims[0]]];
    for qd in 1..len {
        let e = RationalMatrix::from_columns(nf.dims[qd - 1], &nf.boundary_columns(qd));
        let d = p[qd - 1].mul(&e).and_then(|m| m.mul(&pinv[qd])).expect("shapes");
        boundaries.push(d.columns());
    }
    BasedChainComplex::new(nf.dims.clone(), boundaries).expect("conjugated complex is valid")
}

/// Random based complex of the given length with dimensions at most about `max_dim`.
pub fn random_complex<R: Rng>(rng: &mut R, len: usize, max_dim: usize) -> BasedChainComplex {
    let nf = NormalForm::random(rng, len, max_dim);
    let p: Vec<RationalMatrix> = nf.dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let pinv: Vec<RationalMatrix> = p.iter().map(|m| m.inverse().expect("invertible")).collect();
    conjugate(&nf, &p, &pinv)
}

/// Default representatives mixed by a random invertible matrix and shifted by random boundaries.
pub fn random_homology_basis<R: Rng>(rng: &mut R, c: &BasedChainComplex) -> HomologyBasis {
    homology_with_basis(c)
        .into_iter()
        .map(|d| {
            let m = random_invertible(rng, d.rank);
            (0..d.rank)
                .map(|k| {
                    let mut v = SparseVec::new();
                    for (i, r) in d.representatives.iter().enumerate() {
                        v = v.add_scaled(m.get(i, k), r);
                    }
                    for b in &d.boundaries {
                        if rng.gen_bool(0.3) {
                            v = v.add_scaled(&q(rng.gen_range(-4i64..=4)), b);
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Random short exact sequence `0 → C′ → C → C″ → 0` with compatible
/// preferred bases and (generally) nonzero connecting maps.
pub fn random_short_exact_sequence<R: Rng>(rng: &mut R, len: usize, max_dim: usize) -> ShortExactSequence {
    let nf = NormalForm::random(rng, len, max_dim);
    let p: Vec<RationalMatrix> = nf.dims.iter().map(|&d| random_unimodular(rng, d)).collect();
    let pinv: Vec<RationalMatrix> = p.iter().map(|m| m.inverse().expect("unimodular")).collect();
    let total = conjugate(&nf, &p, &pinv);

    // Subcomplex: a set of normal-form basis vectors closed under the boundary.
    let mut in_sub: Vec<Vec<bool>> = nf.dims.iter().map(|&d| vec![false; d]).collect();
    for qd in 0..len {
        for i in 0..nf.dims[qd] {
            let pick = rng.gen_bool(0.5);
            in_sub[qd][i] = match nf.target(qd, i) {
                Some(t) => pick && in_sub[qd - 1][t],
                None => pick,
            };
        }
    }
    let index_maps: Vec<(Vec<Option<usize>>, Vec<Option<usize>>)> = in_sub
        .iter()
        .map(|flags| {
            let (mut a, mut b) = (0, 0);
            let mut sub = Vec::new();
            let mut quo = Vec::new();
            for &f in flags {
                if f {
                    sub.push(Some(a));
                    quo.push(None);
                    a += 1;
                } else {
                    sub.push(None);
                    quo.push(Some(b));
                    b += 1;
                }
            }
            (sub, quo)
        })
        .collect();

    let mut sub_dims = Vec::new();
    let mut quo_dims = Vec::new();
    let mut sub_bd = Vec::new();
    let mut quo_bd = Vec::new();
    let mut inclusion = Vec::new();
    let mut projection = Vec::new();
    for qd in 0..len {
        let (ref smap, ref qmap) = index_maps[qd];
        let cols = nf.boundary_columns(qd);
        let lower = if qd > 0 { Some(&index_maps[qd - 1]) } else { None };
        let mut sb = Vec::new();
        let mut qb = Vec::new();
        let mut inc = Vec::new();
        for (i, col) in cols.iter().enumerate() {
            let reindex = |m: &Vec<Option<usize>>| col.filter_map_indices(|k| m[k]);
            if smap[i].is_some() {
                sb.push(lower.map(|l| reindex(&l.0)).unwrap_or_default());
                inc.push(p[qd].column(i));
            } else {
                qb.push(lower.map(|l| reindex(&l.1)).unwrap_or_default());
            }
        }
        sub_dims.push(sb.len());
        quo_dims.push(qb.len());
        sub_bd.push(sb);
        quo_bd.push(qb);
        inclusion.push(inc);
        projection.push(
            (0..nf.dims[qd]).map(|a| pinv[qd].column(a).filter_map_indices(|k| qmap[k])).collect::<Vec<_>>(),
        );
    }
    ShortExactSequence {
        sub: BasedChainComplex::new(sub_dims, sub_bd).expect("subcomplex"),
        total,
        quotient: BasedChainComplex::new(quo_dims, quo_bd).expect("quotient"),
        inclusion: ChainMap::new(inclusion),
        projection: ChainMap::new(projection),
    }
}
