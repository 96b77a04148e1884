//! Stratified complexes, perversities and intersection chain complexes.
//!
//! Intersection chains live on the first barycentric subdivision `T′`. A
//! vertex of `T′` is the barycenter of a simplex of `T`, and it lies in the
//! closed stratum `X_j` exactly when that simplex does.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{
    homology_sequence, homology_with_basis, BasedChainComplex, ChainMap, HomologyBasis, ShortExactSequence,
};
use crate::error::{Error, Result};
use crate::linalg::{integral_kernel_of_columns, Echelon, SparseVec};
use crate::simplicial::{barycentric_subdivision, cone_with_apex, suspension, OrientedComplex, Simplex, SubdivisionMap};

/// `p_2, …, p_n` with `p_2 = 0` and steps of 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perversity {
    values: Vec<i64>,
}

impl Perversity {
    /// `values[i]` is `p_{i+2}`.
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if let Some(&first) = values.first() {
            if first != 0 {
                return Err(Error::InvalidArgument(format!("perversity must start with p_2 = 0, got {first}")));
            }
        }
        for (i, w) in values.windows(2).enumerate() {
            let step = w[1] - w[0];
            if step != 0 && step != 1 {
                return Err(Error::InvalidArgument(format!(
                    "perversity step p_{} - p_{} = {step} is not 0 or 1",
                    i + 3,
                    i + 2
                )));
            }
        }
        Ok(Self { values })
    }

    fn from_fn(n: usize, f: impl Fn(i64) -> i64) -> Self {
        Self { values: (2..=n as i64).map(f).collect() }
    }

    /// Lower middle `m_j = ⌊j/2⌋ − 1`.
    pub fn lower_middle(n: usize) -> Self {
        Self::from_fn(n, |j| j / 2 - 1)
    }

    /// Upper middle, the complement of the lower middle.
    pub fn upper_middle(n: usize) -> Self {
        Self::lower_middle(n).complement()
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| 0)
    }

    /// `t_j = j − 2`.
    pub fn top(n: usize) -> Self {
        Self::from_fn(n, |j| j - 2)
    }

    /// `p^c = t − p`.
    pub fn complement(&self) -> Self {
        Self { values: self.values.iter().enumerate().map(|(i, p)| i as i64 - p).collect() }
    }

    /// Largest `n` this perversity is defined for.
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    /// `p_k` for `2 ≤ k ≤ n`.
    pub fn value(&self, k: usize) -> i64 {
        assert!(k >= 2 && k <= self.n(), "perversity index {k} out of range");
        self.values[k - 2]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Perversity) -> bool {
        self.values.len() == other.values.len() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Which construction produced the stratification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StratificationKind {
    Manifold,
    Cone,
    Suspension,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Absolute,
    Relative,
}

/// A triangulated pseudomanifold with a filtration by closed subcomplexes
/// and a (possibly empty) smooth boundary.
#[derive(Clone, Debug)]
pub struct StratifiedComplex {
    complex: OrientedComplex,
    n: usize,
    kind: StratificationKind,
    /// `level[d][i]`: smallest `j` with simplex `(d, i)` in `X_j` (`n` if only in `X_n`).
    level: Vec<Vec<usize>>,
    /// `in_boundary[d][i]`: simplex lies in `L = ∂X`.
    in_boundary: Vec<Vec<bool>>,
    sd: SubdivisionMap,
}

impl StratifiedComplex {
    /// `levels[j]` generates `X_j` for `j = 0..n−1`; `X_n` is the whole complex.
    pub fn from_filtration(complex: OrientedComplex, levels: &[Vec<Simplex>]) -> Result<Self> {
        Self::build(complex, levels, StratificationKind::Custom)
    }

    fn build(complex: OrientedComplex, levels: &[Vec<Simplex>], kind: StratificationKind) -> Result<Self> {
        let n = complex
            .dim()
            .ok_or_else(|| Error::InvalidArgument("empty complex cannot be stratified".into()))?;
        if n == 0 {
            return Err(Error::InvalidArgument("stratified complexes need dimension at least 1".into()));
        }
        if !complex.is_pure() {
            return Err(Error::Invariant("complex is not pure".into()));
        }
        if levels.len() > n {
            return Err(Error::InvalidArgument(format!("{} filtration levels for dimension {n}", levels.len())));
        }
        let mut level: Vec<Vec<usize>> = (0..=n).map(|d| vec![n; complex.count(d)]).collect();
        let mut previous: BTreeSet<Simplex> = BTreeSet::new();
        for (j, gens) in levels.iter().enumerate() {
            let mut closed: BTreeSet<Simplex> = BTreeSet::new();
            for g in gens {
                let mut g = g.clone();
                g.sort_unstable();
                if !complex.contains(&g) {
                    return Err(Error::InvalidArgument(format!("filtration simplex {g:?} is not in the complex")));
                }
                for mask in 1u64..(1u64 << g.len()) {
                    closed.insert(g.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
                }
            }
            if let Some(s) = closed.iter().find(|s| s.len() > j + 1) {
                return Err(Error::Invariant(format!("X_{j} contains {s:?} of dimension above {j}")));
            }
            if !previous.is_subset(&closed) {
                return Err(Error::Invariant(format!("X_{} is not contained in X_{j}", j.saturating_sub(1))));
            }
            for s in &closed {
                let d = s.len() - 1;
                let i = complex.index_of(s).expect("checked");
                level[d][i] = level[d][i].min(j);
            }
            previous = closed;
        }
        // X_{n−1} = X_{n−2}: nothing may enter at level n−1.
        if level.iter().flatten().any(|&l| l == n - 1 && n >= 2) {
            return Err(Error::Invariant("X_{n-1} differs from X_{n-2}: singular locus has codimension 1".into()));
        }
        if n == 1 && level.iter().flatten().any(|&l| l < n) {
            return Err(Error::Invariant("one-dimensional complexes cannot have a singular locus".into()));
        }

        let counts = complex.coface_counts(n - 1);
        let mut in_boundary: Vec<Vec<bool>> = (0..=n).map(|d| vec![false; complex.count(d)]).collect();
        for (i, s) in complex.simplices(n - 1).iter().enumerate() {
            if counts[i] == 1 {
                for mask in 1u64..(1u64 << s.len()) {
                    let f: Simplex = s.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
                    let idx = complex.index_of(&f).expect("closure");
                    in_boundary[f.len() - 1][idx] = true;
                }
            }
            if counts[i] > 2 && kind == StratificationKind::Manifold {
                return Err(Error::Invariant(format!("codimension-one simplex {s:?} has {} cofaces", counts[i])));
            }
        }
        for d in 0..=n {
            for i in 0..complex.count(d) {
                if in_boundary[d][i] && level[d][i] + 2 <= n {
                    return Err(Error::Invariant("boundary meets the singular locus".into()));
                }
            }
        }
        let sd = barycentric_subdivision(&complex);
        Ok(Self { complex, n, kind, level, in_boundary, sd })
    }

    /// One stratum: `X_j = ∅` for `j < n`.
    pub fn manifold(complex: OrientedComplex) -> Result<Self> {
        Self::build(complex, &[], StratificationKind::Manifold)
    }

    /// Cone over a closed complex `W` with singular locus the apex.
    pub fn cone_over(w: &OrientedComplex) -> Result<Self> {
        Self::cone_over_with_apex(w, "apex")
    }

    pub fn cone_over_with_apex(w: &OrientedComplex, apex: &str) -> Result<Self> {
        let c = cone_with_apex(w, apex);
        let a = c.apices()[0];
        let n = c.top_dim();
        let levels: Vec<Vec<Simplex>> = (0..n).map(|_| vec![vec![a]]).collect();
        Self::build(c, &levels, StratificationKind::Cone)
    }

    /// Suspension of a closed complex `W` with singular locus the two apices.
    pub fn suspension_over(w: &OrientedComplex) -> Result<Self> {
        let s = suspension(w);
        let n = s.top_dim();
        let apices: Vec<Simplex> = s.apices().iter().map(|&a| vec![a]).collect();
        let levels: Vec<Vec<Simplex>> = (0..n).map(|_| apices.clone()).collect();
        Self::build(s, &levels, StratificationKind::Suspension)
    }

    pub fn complex(&self) -> &OrientedComplex {
        &self.complex
    }

    pub fn kind(&self) -> StratificationKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn subdivision(&self) -> &SubdivisionMap {
        &self.sd
    }

    /// The subdivided complex `T′`.
    pub fn fine(&self) -> &OrientedComplex {
        &self.sd.target
    }

    /// Level of a `T′` vertex: the smallest `j` with its carrier in `X_j`.
    pub fn vertex_level(&self, v: usize) -> usize {
        let (d, i) = self.sd.carrier[v];
        self.level[d][i]
    }

    fn vertex_in_boundary(&self, v: usize) -> bool {
        let (d, i) = self.sd.carrier[v];
        self.in_boundary[d][i]
    }

    /// Simplices of `Σ = X_{n−2}` in `T`.
    pub fn singular_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=self.n {
            for (i, s) in self.complex.simplices(d).iter().enumerate() {
                if self.level[d][i] + 2 <= self.n {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// The boundary `L` as a subcomplex of `T` (vertices relabelled).
    pub fn boundary(&self) -> Result<OrientedComplex> {
        let gens: Vec<Simplex> = (0..=self.n)
            .flat_map(|d| {
                self.complex
                    .simplices(d)
                    .iter()
                    .enumerate()
                    .filter(move |(i, _)| self.in_boundary[d][*i])
                    .map(|(_, s)| s.clone())
            })
            .collect();
        self.complex.subcomplex(&gens)
    }

    pub fn has_boundary(&self) -> bool {
        self.in_boundary.iter().flatten().any(|&b| b)
    }

    /// A `T′` simplex lies in `L′` iff all its vertices are barycenters of boundary simplices.
    pub fn in_fine_boundary(&self, sigma: &[usize]) -> bool {
        sigma.iter().all(|&v| self.vertex_in_boundary(v))
    }

    fn check_perversity(&self, p: &Perversity) -> Result<()> {
        if p.n() < self.n {
            return Err(Error::InvalidArgument(format!(
                "perversity {p} is defined up to {} but the complex has dimension {}",
                p.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// `(p, j)`-allowability of a simplex of `T′`.
    pub fn allowable(&self, sigma: &[usize], j: usize, p: &Perversity) -> Result<bool> {
        self.check_perversity(p)?;
        if !self.fine().contains(sigma) {
            return Err(Error::InvalidArgument(format!("{sigma:?} is not a simplex of the subdivision")));
        }
        Ok(self.allowable_unchecked(sigma, j, p))
    }

    fn allowable_unchecked(&self, sigma: &[usize], j: usize, p: &Perversity) -> bool {
        let dim = sigma.len() as i64 - 1;
        if dim > j as i64 {
            return false;
        }
        let n = self.n;
        for k in 2..=n {
            let count = sigma.iter().filter(|&&v| self.vertex_level(v) <= n - k).count() as i64;
            if count > 0 && count - 1 > j as i64 - k as i64 + p.value(k) {
                return false;
            }
        }
        true
    }

    /// `R^p_q` for `q = 0..=n`, as membership flags over `T′` simplices.
    pub fn basic_sets(&self, p: &Perversity) -> Result<BasicSets> {
        self.check_perversity(p)?;
        let fine = self.fine();
        let member = (0..=self.n)
            .map(|q| {
                (0..=self.n)
                    .map(|d| fine.simplices(d).iter().map(|s| d <= q && self.allowable_unchecked(s, q, p)).collect())
                    .collect()
            })
            .collect();
        Ok(BasicSets { member })
    }
}

/// Membership flags `member[q][d][i]` for `T′` simplex `(d, i)` in `R^p_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicSets {
    member: Vec<Vec<Vec<bool>>>,
}

impl BasicSets {
    pub fn contains(&self, q: usize, d: usize, i: usize) -> bool {
        self.member.get(q).and_then(|m| m.get(d)).and_then(|m| m.get(i)).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.member.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member.is_empty()
    }

    /// Number of `d`-simplices in `R_q`.
    pub fn count(&self, q: usize, d: usize) -> usize {
        self.member.get(q).and_then(|m| m.get(d)).map(|v| v.iter().filter(|&&b| b).count()).unwrap_or(0)
    }

    /// Face-closure of every `R_q` inside `fine`.
    pub fn is_closed(&self, fine: &OrientedComplex) -> bool {
        for q in 0..self.member.len() {
            for d in 1..self.member[q].len() {
                for (i, s) in fine.simplices(d).iter().enumerate() {
                    if !self.member[q][d][i] {
                        continue;
                    }
                    for k in 0..s.len() {
                        let mut f = s.clone();
                        f.remove(k);
                        if !self.member[q][d - 1][fine.index_of(&f).expect("closure")] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The intersection chain complex with its generators.
#[derive(Clone, Debug)]
pub struct IntersectionComplexResult {
    pub flavor: Flavor,
    pub perversity: Perversity,
    /// Generators per degree as chains on `T′` (indices into `T′` simplices of that degree).
    pub generators: Vec<Vec<SparseVec>>,
    pub complex: BasedChainComplex,
}

impl IntersectionComplexResult {
    pub fn generator_counts(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    /// Coordinates of a `T′` chain in terms of generators, if it is a combination of them.
    pub fn coordinates(&self, q: usize, chain: &SparseVec) -> Option<SparseVec> {
        let mut e = Echelon::tracking();
        for g in &self.generators[q] {
            e.insert(g);
        }
        e.solve(chain)
    }

    /// The `T′` chain with the given generator coordinates.
    pub fn chain(&self, q: usize, coords: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in coords.entries() {
            acc = acc.add_scaled(c, &self.generators[q][*i]);
        }
        acc
    }
}

/// Generators of `A_q = {c ∈ C_q(R_q) : ∂c ∈ C_{q−1}(R_{q−1})}` (relative: modulo `L′`)
/// and the restricted boundary maps.
pub fn intersection_chain_complex(
    s: &StratifiedComplex,
    p: &Perversity,
    flavor: Flavor,
) -> Result<IntersectionComplexResult> {
    let r = s.basic_sets(p)?;
    let fine = s.fine();
    let n = s.dim();
    let in_l: Vec<Vec<bool>> =
        (0..=n).map(|d| fine.simplices(d).iter().map(|sig| s.in_fine_boundary(sig)).collect()).collect();
    let relative = flavor == Flavor::Relative;
    let bd: Vec<Vec<SparseVec>> = (0..=n).map(|d| fine.boundary_columns(d)).collect();

    let mut generators: Vec<Vec<SparseVec>> = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let candidates: Vec<usize> =
            (0..fine.count(q)).filter(|&i| r.contains(q, q, i) && !(relative && in_l[q][i])).collect();
        // Rows that a generator's boundary must avoid.
        let bad_row = |i: usize| q > 0 && !r.contains(q - 1, q - 1, i) && !(relative && in_l[q - 1][i]);
        let mut free = Vec::new();
        let mut constrained = Vec::new();
        for &c in &candidates {
            if bd[q][c].entries().iter().any(|(i, _)| bad_row(*i)) {
                constrained.push(c);
            } else {
                free.push(c);
            }
        }
        let mut gens: Vec<SparseVec> = free.iter().map(|&c| SparseVec::unit(c)).collect();
        if !constrained.is_empty() {
            let cols: Vec<SparseVec> =
                constrained.iter().map(|&c| bd[q][c].filter_map_indices(|i| bad_row(i).then_some(i))).collect();
            for k in integral_kernel_of_columns(&cols)? {
                gens.push(k.filter_map_indices(|j| Some(constrained[j])));
            }
        }
        gens.sort_by_key(|g| g.leading().map(|(i, _)| i));
        generators.push(gens);
    }

    let strip = |q: usize, v: SparseVec| if relative { v.filter_map_indices(|i| (!in_l[q][i]).then_some(i)) } else { v };
    let mut boundaries: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); generators[0].len()]];
    for q in 1..=n {
        let mut e = Echelon::tracking();
        for g in &generators[q - 1] {
            e.insert(g);
        }
        let mut cols = Vec::with_capacity(generators[q].len());
        for g in &generators[q] {
            let mut dg = SparseVec::new();
            for (i, c) in g.entries() {
                dg = dg.add_scaled(c, &bd[q][*i]);
            }
            let dg = strip(q - 1, dg);
            let coords = e.solve(&dg).ok_or_else(|| {
                Error::Invariant(format!("boundary of a degree-{q} generator is not an allowable chain"))
            })?;
            if !coords.is_integral() {
                return Err(Error::Invariant(format!("degree-{} generators are not saturated", q - 1)));
            }
            cols.push(coords);
        }
        boundaries.push(cols);
    }
    let dims = generators.iter().map(Vec::len).collect();
    let complex = BasedChainComplex::new(dims, boundaries)?;
    Ok(IntersectionComplexResult { flavor, perversity: p.clone(), generators, complex })
}

/// Intersection homology ranks and representative cycles (as `T′` chains).
#[derive(Clone, Debug)]
pub struct IntersectionHomology {
    pub ranks: Vec<usize>,
    pub representatives: Vec<Vec<SparseVec>>,
    pub chains: IntersectionComplexResult,
}

pub fn intersection_homology(s: &StratifiedComplex, p: &Perversity, flavor: Flavor) -> Result<IntersectionHomology> {
    let chains = intersection_chain_complex(s, p, flavor)?;
    let h = homology_with_basis(&chains.complex);
    let ranks = h.iter().map(|d| d.rank).collect();
    let representatives = h
        .iter()
        .enumerate()
        .map(|(q, d)| d.representatives.iter().map(|z| chains.chain(q, z)).collect())
        .collect();
    Ok(IntersectionHomology { ranks, representatives, chains })
}

/// `0 → C(L′) → IC(X) → IC(X, L′) → 0` in generator coordinates.
#[derive(Clone, Debug)]
pub struct PairSequence {
    pub sequence: ShortExactSequence,
    pub absolute: IntersectionComplexResult,
    pub relative: IntersectionComplexResult,
    /// `T′` simplex indices of `L′` per degree, in the order used by `sequence.sub`.
    pub boundary_simplices: Vec<Vec<usize>>,
}

/// Simplicial chain complex of `L′`, with the `T′` indices of its simplices per degree.
pub fn boundary_chain_complex(s: &StratifiedComplex) -> Result<(BasedChainComplex, Vec<Vec<usize>>)> {
    let fine = s.fine();
    let n = s.dim();
    let boundary_simplices: Vec<Vec<usize>> = (0..=n)
        .map(|d| (0..fine.count(d)).filter(|&i| s.in_fine_boundary(&fine.simplices(d)[i])).collect())
        .collect();
    let position: Vec<HashMap<usize, usize>> =
        boundary_simplices.iter().map(|v| v.iter().enumerate().map(|(k, &i)| (i, k)).collect()).collect();
    let dims: Vec<usize> = boundary_simplices.iter().map(Vec::len).collect();
    let bd: Vec<Vec<SparseVec>> = (0..=n)
        .map(|d| {
            let cols = fine.boundary_columns(d);
            boundary_simplices[d]
                .iter()
                .map(|&i| if d == 0 { SparseVec::new() } else { cols[i].filter_map_indices(|j| position[d - 1].get(&j).copied()) })
                .collect()
        })
        .collect();
    Ok((BasedChainComplex::new(dims, bd)?, boundary_simplices))
}

pub fn pair_sequence(s: &StratifiedComplex, p: &Perversity) -> Result<PairSequence> {
    let absolute = intersection_chain_complex(s, p, Flavor::Absolute)?;
    let relative = intersection_chain_complex(s, p, Flavor::Relative)?;
    let n = s.dim();
    let (sub, boundary_simplices) = boundary_chain_complex(s)?;

    let mut inclusion = Vec::new();
    let mut projection = Vec::new();
    for d in 0..=n {
        let mut abs_e = Echelon::tracking();
        for g in &absolute.generators[d] {
            abs_e.insert(g);
        }
        let mut rel_e = Echelon::tracking();
        for g in &relative.generators[d] {
            rel_e.insert(g);
        }
        let inc: Vec<SparseVec> = boundary_simplices[d]
            .iter()
            .map(|&i| {
                abs_e.solve(&SparseVec::unit(i)).ok_or_else(|| Error::Invariant("boundary simplex is not allowable".into()))
            })
            .collect::<Result<_>>()?;
        let in_l: HashSet<usize> = boundary_simplices[d].iter().copied().collect();
        let proj: Vec<SparseVec> = absolute.generators[d]
            .iter()
            .map(|g| {
                let stripped = g.filter_map_indices(|i| (!in_l.contains(&i)).then_some(i));
                rel_e.solve(&stripped).ok_or_else(|| Error::Invariant("absolute generator has no relative image".into()))
            })
            .collect::<Result<_>>()?;
        inclusion.push(inc);
        projection.push(proj);
    }
    let sequence = ShortExactSequence {
        sub,
        total: absolute.complex.clone(),
        quotient: relative.complex.clone(),
        inclusion: ChainMap::new(inclusion),
        projection: ChainMap::new(projection),
    };
    Ok(PairSequence { sequence, absolute, relative, boundary_simplices })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairLesReport {
    pub exact: bool,
    pub boundary_ranks: Vec<usize>,
    pub absolute_ranks: Vec<usize>,
    pub relative_ranks: Vec<usize>,
    /// Homology of the assembled long sequence (all zero when exact).
    pub defect: Vec<usize>,
}

/// Builds `… → H_q(∂X) → I^pH_q(X) → I^pH_q(X, ∂X) → H_{q−1}(∂X) → …` and checks exactness.
pub fn pair_les_check(s: &StratifiedComplex, p: &Perversity) -> Result<PairLesReport> {
    let pair = pair_sequence(s, p)?;
    let basis = |c: &BasedChainComplex| -> HomologyBasis {
        homology_with_basis(c).into_iter().map(|d| d.representatives).collect()
    };
    let seq = &pair.sequence;
    let (h1, h2, h3) = (basis(&seq.sub), basis(&seq.total), basis(&seq.quotient));
    let les = homology_sequence(seq, &h1, &h2, &h3)?;
    let defect = crate::chain::homology_ranks(&les);
    Ok(PairLesReport {
        exact: defect.iter().all(|&d| d == 0),
        boundary_ranks: h1.iter().map(Vec::len).collect(),
        absolute_ranks: h2.iter().map(Vec::len).collect(),
        relative_ranks: h3.iter().map(Vec::len).collect(),
        defect,
    })
}

/// Degree below which cone intersection homology agrees with the section:
/// `c = m − p_{m+1}` for a cone of dimension `m + 1`.
pub fn cut_degree(m: usize, p: &Perversity) -> usize {
    (m as i64 - p.value(m + 1)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard;

    #[test]
    fn perversity_rules() {
        assert!(Perversity::new(vec![0, 1, 1, 2]).is_ok());
        assert!(Perversity::new(vec![1]).is_err());
        assert!(Perversity::new(vec![0, 2]).is_err());
        let m = Perversity::lower_middle(5);
        assert_eq!(m.values(), &[0, 0, 1, 1]);
        assert_eq!(m.complement().values(), &[0, 1, 1, 2]);
        assert!(Perversity::zero(5).le(&m) && m.le(&Perversity::top(5)));
    }

    #[test]
    fn cone_apex_allowability() {
        let s = StratifiedComplex::cone_over(&standard::triangle_boundary()).unwrap();
        let apex = s.fine().apices()[0];
        assert_eq!(s.allowable(&[apex], 1, &Perversity::zero(2)).unwrap(), false);
        assert_eq!(s.allowable(&[apex], 2, &Perversity::zero(2)).unwrap(), true);
    }

    #[test]
    fn basic_sets_are_closed_and_nested() {
        let s = StratifiedComplex::cone_over(&standard::torus()).unwrap();
        for p in [Perversity::lower_middle(3), Perversity::upper_middle(3), Perversity::zero(3), Perversity::top(3)] {
            let r = s.basic_sets(&p).unwrap();
            assert!(r.is_closed(s.fine()));
            for q in 1..=3 {
                for d in 0..=3 {
                    for i in 0..s.fine().count(d) {
                        assert!(!r.contains(q - 1, d, i) || r.contains(q, d, i));
                    }
                }
            }
        }
    }

    #[test]
    fn circle_cone_tables() {
        let s = StratifiedComplex::cone_over(&standard::polygon(4)).unwrap();
        let m = Perversity::lower_middle(2);
        assert_eq!(intersection_homology(&s, &m, Flavor::Absolute).unwrap().ranks, vec![1, 0, 0]);
        assert_eq!(intersection_homology(&s, &m, Flavor::Relative).unwrap().ranks, vec![0, 0, 1]);
        assert!(pair_les_check(&s, &m).unwrap().exact);
    }

    #[test]
    fn manifold_matches_ordinary_homology() {
        let s = StratifiedComplex::manifold(standard::sphere(2)).unwrap();
        for p in [Perversity::zero(2), Perversity::top(2)] {
            assert_eq!(intersection_homology(&s, &p, Flavor::Absolute).unwrap().ranks, vec![1, 0, 1]);
        }
        let disc = StratifiedComplex::manifold(standard::disc()).unwrap();
        let rep = pair_les_check(&disc, &Perversity::zero(2)).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.relative_ranks, vec![0, 0, 1]);
    }

    #[test]
    fn rejects_codimension_one_strata() {
        let t = standard::disc();
        assert!(StratifiedComplex::from_filtration(t, &[vec![], vec![vec![0, 1]]]).is_err());
    }
}
