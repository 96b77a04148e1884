//! Chain-level versions of the splitting sequences and cone torsions.
//!
//! Reference classes are transported between the section, the cones and
//! the suspension by the maps of the sequences themselves, and then scaled
//! by the factors of the scaling table.

use serde::Serialize;

use super::{
    cone_absolute_log_factor, cone_relative_log_factor, section_log_factor, suspension_high_log_factor,
    suspension_low_log_factor, Middle,
};
use crate::chain::{
    exact_sequence_torsion, homology_ranks, homology_sequence, homology_with_basis, scaled_torsion, BasedChainComplex,
    ChainMap, HomologyBasis, ShortExactSequence,
};
use crate::error::{Error, Result};
use crate::linalg::{qfrac, Echelon, SparseVec, Q};
use crate::logexpr::LogExpr;
use crate::simplicial::OrientedComplex;
use crate::stratified::{
    boundary_chain_complex, cut_degree, intersection_chain_complex, pair_sequence, Flavor, IntersectionComplexResult,
    PairSequence, StratifiedComplex,
};

/// Reference homology basis of the subdivided section, with symbolic
/// log-scales attached to each vector.
#[derive(Clone, Debug)]
pub struct SectionReference {
    pub basis: HomologyBasis,
    pub log_scales: Vec<Vec<LogExpr>>,
}

impl SectionReference {
    /// The integral basis found by the homology solver, unscaled.
    pub fn integral(section: &BasedChainComplex) -> Self {
        let basis: HomologyBasis = homology_with_basis(section).into_iter().map(|d| d.representatives).collect();
        let log_scales = basis.iter().map(|b| vec![LogExpr::zero(); b.len()]).collect();
        Self { basis, log_scales }
    }

    /// Harmonic reference on a circle of length `2π`: `√(2π)` times the
    /// vertex average in degree 0 and `1/√(2π)` times the fundamental cycle.
    pub fn circle(section: &BasedChainComplex) -> Result<Self> {
        let ranks = homology_ranks(section);
        if ranks.len() < 2 || ranks[..2] != [1, 1] || ranks[2..].iter().any(|&r| r > 0) {
            return Err(Error::Unsupported("circle reference needs a section with the homology of S¹".into()));
        }
        let n0 = section.dim(0);
        let avg = SparseVec::from_pairs((0..n0).map(|i| (i, qfrac(1, n0 as i64))));
        let fundamental = homology_with_basis(section)[1].representatives[0].clone();
        let half_log_len = (LogExpr::log_i64(2) + LogExpr::log_pi()).scale(&qfrac(1, 2));
        Ok(Self { basis: vec![vec![avg], vec![fundamental]], log_scales: vec![vec![half_log_len.clone()], vec![-half_log_len]] })
    }

    fn check(&self, section: &BasedChainComplex) -> Result<()> {
        let ranks = homology_ranks(section);
        for (k, &r) in ranks.iter().enumerate() {
            let have = self.basis.get(k).map(Vec::len).unwrap_or(0);
            let scales = self.log_scales.get(k).map(Vec::len).unwrap_or(0);
            if have != r || scales != r {
                return Err(Error::Dimension(format!("reference has {have} classes and {scales} scales in degree {k}, homology rank {r}")));
            }
        }
        Ok(())
    }
}

/// Torsion of a splitting sequence computed from chains.
#[derive(Clone, Debug, Serialize)]
pub struct SplittingTorsion {
    /// Torsion of the long sequence in the transported integral reference bases.
    pub reference: LogExpr,
    /// Change caused by the geometric scalings.
    pub shift: LogExpr,
    /// `reference + shift`, symbolic in `log l`.
    pub log_torsion: LogExpr,
    pub section_ranks: Vec<usize>,
    pub total_ranks: Vec<usize>,
    pub quotient_ranks: Vec<usize>,
}

/// A slot basis vector scaled by `exp(log_scale)` in sequence degree `slot`.
fn splitting_torsion(
    ses: &ShortExactSequence,
    h: [&HomologyBasis; 3],
    scales: &[(usize, LogExpr)],
) -> Result<SplittingTorsion> {
    let seq = homology_sequence(ses, h[0], h[1], h[2])?;
    let reference = exact_sequence_torsion(&seq)?.log().clone();
    let mut shift = LogExpr::zero();
    for (slot, s) in scales {
        if slot % 2 == 0 {
            shift -= s.clone();
        } else {
            shift += s.clone();
        }
    }
    let ranks = |b: &HomologyBasis| b.iter().map(Vec::len).collect();
    Ok(SplittingTorsion {
        log_torsion: reference.clone() + shift.clone(),
        reference,
        shift,
        section_ranks: ranks(h[0]),
        total_ranks: ranks(h[1]),
        quotient_ranks: ranks(h[2]),
    })
}

/// Coordinates of a chain against fixed generators, one echelon per degree.
struct GeneratorSolver {
    degrees: Vec<Echelon>,
}

impl GeneratorSolver {
    fn new(generators: &[Vec<SparseVec>]) -> Self {
        let degrees = generators
            .iter()
            .map(|gens| {
                let mut e = Echelon::tracking();
                for g in gens {
                    e.insert(g);
                }
                e
            })
            .collect();
        Self { degrees }
    }

    fn solve(&self, q: usize, v: &SparseVec) -> Result<SparseVec> {
        self.degrees[q]
            .solve(v)
            .ok_or_else(|| Error::Invariant(format!("degree-{q} chain is not an allowable combination")))
    }
}

/// `a` with `∂a = target` in degree `q + 1`.
fn bounding_chain(c: &BasedChainComplex, q: usize, target: &SparseVec) -> Result<SparseVec> {
    let mut e = Echelon::tracking();
    for col in c.boundary(q + 1) {
        e.insert(col);
    }
    e.solve(target)
        .ok_or_else(|| Error::Invariant(format!("section class of degree {q} does not bound in the cone")))
}

fn unit_chain(indices: &[usize], coords: &SparseVec) -> SparseVec {
    SparseVec::from_pairs(coords.entries().iter().map(|(k, c)| (indices[*k], c.clone())))
}

/// Cone over a closed section with a middle perversity.
pub struct ConeModel {
    pub m: usize,
    pub which: Middle,
    pub cut: usize,
    pub cone: StratifiedComplex,
    pub pair: PairSequence,
}

/// Absolute and relative intersection torsion of a cone.
#[derive(Clone, Debug, Serialize)]
pub struct ConeTorsions {
    pub absolute: LogExpr,
    pub relative: LogExpr,
}

impl ConeModel {
    pub fn new(w: &OrientedComplex, which: Middle) -> Result<Self> {
        let m = w.dim().ok_or_else(|| Error::InvalidArgument("empty section".into()))?;
        let cone = StratifiedComplex::cone_over(w)?;
        let p = which.perversity(m + 1);
        let pair = pair_sequence(&cone, &p)?;
        Ok(Self { m, which, cut: cut_degree(m, &p), cone, pair })
    }

    /// Simplicial chains of the subdivided section.
    pub fn section(&self) -> &BasedChainComplex {
        &self.pair.sequence.sub
    }

    pub fn sequence(&self) -> &ShortExactSequence {
        &self.pair.sequence
    }

    fn absolute_class(&self, k: usize, z: &SparseVec) -> SparseVec {
        self.pair.sequence.inclusion.apply(k, z)
    }

    /// The relative class in degree `k + 1` whose connecting image is `z`.
    fn relative_class(&self, k: usize, z: &SparseVec) -> Result<SparseVec> {
        let a = bounding_chain(&self.pair.sequence.total, k, &self.absolute_class(k, z))?;
        Ok(self.pair.sequence.projection.apply(k + 1, &a))
    }

    /// `log τ(W, l²g)` with the section scalings applied to the reference.
    pub fn section_torsion(&self, reference: &SectionReference) -> Result<LogExpr> {
        section_torsion(self.section(), reference)
    }

    pub fn intersection_torsion(&self, reference: &SectionReference) -> Result<ConeTorsions> {
        reference.check(self.section())?;
        let n = self.m + 1;
        let mut h_abs: HomologyBasis = vec![Vec::new(); n + 1];
        let mut s_abs: Vec<Vec<LogExpr>> = vec![Vec::new(); n + 1];
        let mut h_rel: HomologyBasis = vec![Vec::new(); n + 1];
        let mut s_rel: Vec<Vec<LogExpr>> = vec![Vec::new(); n + 1];
        for (k, classes) in reference.basis.iter().enumerate() {
            for (z, s) in classes.iter().zip(&reference.log_scales[k]) {
                if k < self.cut {
                    h_abs[k].push(self.absolute_class(k, z));
                    s_abs[k].push(s.clone() + cone_absolute_log_factor(self.m, k));
                } else {
                    h_rel[k + 1].push(self.relative_class(k, z)?);
                    s_rel[k + 1].push(s.clone() + cone_relative_log_factor(self.m, k));
                }
            }
        }
        Ok(ConeTorsions {
            absolute: scaled_torsion(&self.pair.sequence.total, &h_abs, &s_abs)?,
            relative: scaled_torsion(&self.pair.sequence.quotient, &h_rel, &s_rel)?,
        })
    }

    /// Torsion of the long sequence of the pair `(C W, W)`.
    pub fn pair_splitting(&self) -> Result<SplittingTorsion> {
        let reference = SectionReference::integral(self.section());
        let n = self.m + 1;
        let mut h_tot: HomologyBasis = vec![Vec::new(); n + 1];
        let mut h_quot: HomologyBasis = vec![Vec::new(); n + 1];
        let mut scales = Vec::new();
        for (k, classes) in reference.basis.iter().enumerate() {
            for z in classes {
                scales.push((3 * k + 2, section_log_factor(self.m, k)));
                if k < self.cut {
                    h_tot[k].push(self.absolute_class(k, z));
                    scales.push((3 * k + 1, cone_absolute_log_factor(self.m, k)));
                } else {
                    h_quot[k + 1].push(self.relative_class(k, z)?);
                    scales.push((3 * (k + 1), cone_relative_log_factor(self.m, k)));
                }
            }
        }
        splitting_torsion(&self.pair.sequence, [&reference.basis, &h_tot, &h_quot], &scales)
    }
}

/// `log τ(W, l²g)` for a section complex and reference.
pub fn section_torsion(section: &BasedChainComplex, reference: &SectionReference) -> Result<LogExpr> {
    reference.check(section)?;
    let m = (0..section.len()).rev().find(|&k| section.dim(k) > 0).unwrap_or(0);
    let scales: Vec<Vec<LogExpr>> = reference
        .log_scales
        .iter()
        .enumerate()
        .map(|(k, s)| s.iter().map(|x| x.clone() + section_log_factor(m, k)).collect())
        .collect();
    scaled_torsion(section, &reference.basis, &scales)
}

/// `0 → C(W′) → IC(C₁) ⊕ IC(C₂) → IC(Σ W) → 0` with `x ↦ (x, −x)` and `(a, b) ↦ a + b`.
pub struct MayerVietoris {
    pub sequence: ShortExactSequence,
    /// `T′` indices in the first cone of the section simplices, per degree.
    section_simplices: Vec<Vec<usize>>,
    first: IntersectionComplexResult,
    second: IntersectionComplexResult,
    to_second: Vec<Vec<Option<(usize, i64)>>>,
}

/// For every simplex of `from` whose vertex labels all occur in `to`, its
/// index in `to` and the orientation sign.
fn simplex_map(from: &OrientedComplex, to: &OrientedComplex) -> Vec<Vec<Option<(usize, i64)>>> {
    let vmap: Vec<Option<usize>> = from.labels().iter().map(|l| to.vertex(l)).collect();
    let top = from.dim().unwrap_or(0);
    (0..=top)
        .map(|d| {
            from.simplices(d)
                .iter()
                .map(|s| {
                    let image: Option<Vec<usize>> = s.iter().map(|&v| vmap[v]).collect();
                    let image = image?;
                    let mut inversions = 0;
                    for i in 0..image.len() {
                        for j in i + 1..image.len() {
                            if image[i] > image[j] {
                                inversions += 1;
                            }
                        }
                    }
                    let mut sorted = image;
                    sorted.sort_unstable();
                    let idx = to.index_of(&sorted)?;
                    Some((idx, if inversions % 2 == 0 { 1 } else { -1 }))
                })
                .collect()
        })
        .collect()
}

fn push_chain(v: &SparseVec, map: &[Option<(usize, i64)>]) -> Result<SparseVec> {
    let mut pairs = Vec::with_capacity(v.entries().len());
    for (i, c) in v.entries() {
        let (j, sign) = map[*i].ok_or_else(|| Error::Invariant("chain leaves the target complex".into()))?;
        pairs.push((j, if sign > 0 { c.clone() } else { -c.clone() }));
    }
    Ok(SparseVec::from_pairs(pairs))
}

fn concat(a: &SparseVec, b: &SparseVec, offset: usize) -> SparseVec {
    let mut pairs: Vec<(usize, Q)> = a.entries().to_vec();
    pairs.extend(b.entries().iter().map(|(i, c)| (i + offset, c.clone())));
    SparseVec::from_pairs(pairs)
}

/// Builds the Mayer–Vietoris sequence of the suspension split at the section.
pub fn suspension_mayer_vietoris(w: &OrientedComplex, which: Middle) -> Result<MayerVietoris> {
    let m = w.dim().ok_or_else(|| Error::InvalidArgument("empty section".into()))?;
    let p = which.perversity(m + 1);
    let sigma = StratifiedComplex::suspension_over(w)?;
    let apex_labels: Vec<String> =
        sigma.complex().apices().iter().map(|&a| sigma.complex().labels()[a].clone()).collect();
    let cones: Vec<StratifiedComplex> =
        apex_labels.iter().map(|l| StratifiedComplex::cone_over_with_apex(w, l)).collect::<Result<_>>()?;
    for (c, l) in cones.iter().zip(&apex_labels) {
        if c.complex().labels()[c.complex().apices()[0]] != *l {
            return Err(Error::Unsupported(format!("section labels clash with the apex label {l}")));
        }
    }
    let ics: Vec<IntersectionComplexResult> =
        cones.iter().map(|c| intersection_chain_complex(c, &p, Flavor::Absolute)).collect::<Result<_>>()?;
    let ic_sigma = intersection_chain_complex(&sigma, &p, Flavor::Absolute)?;
    let to_sigma: Vec<_> = cones.iter().map(|c| simplex_map(c.fine(), sigma.fine())).collect();
    let to_second = simplex_map(cones[0].fine(), cones[1].fine());
    let (sub, section_simplices) = boundary_chain_complex(&cones[0])?;

    let solvers: Vec<GeneratorSolver> = ics.iter().map(|ic| GeneratorSolver::new(&ic.generators)).collect();
    let sigma_solver = GeneratorSolver::new(&ic_sigma.generators);
    let n = m + 1;
    let mut inclusion = Vec::with_capacity(n + 1);
    let mut projection = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let offset = ics[0].generators[d].len();
        let mut inc = Vec::with_capacity(section_simplices[d].len());
        for &i in &section_simplices[d] {
            let e = SparseVec::unit(i);
            let a = solvers[0].solve(d, &e)?;
            let b = solvers[1].solve(d, &push_chain(&e, &to_second[d])?)?;
            inc.push(concat(&a, &b.scaled(&Q::from_integer((-1).into())), offset));
        }
        let mut proj = Vec::new();
        for (k, ic) in ics.iter().enumerate() {
            for g in &ic.generators[d] {
                proj.push(sigma_solver.solve(d, &push_chain(g, &to_sigma[k][d])?)?);
            }
        }
        inclusion.push(inc);
        projection.push(proj);
    }
    let total = ics[0].complex.direct_sum(&ics[1].complex)?;
    let mut ics = ics.into_iter();
    let first = ics.next().expect("two cones");
    let second = ics.next().expect("two cones");
    Ok(MayerVietoris {
        sequence: ShortExactSequence {
            sub,
            total,
            quotient: ic_sigma.complex,
            inclusion: ChainMap::new(inclusion),
            projection: ChainMap::new(projection),
        },
        section_simplices,
        first,
        second,
        to_second,
    })
}

impl MayerVietoris {
    /// Coordinates of a section chain in each cone.
    fn cone_classes(&self, k: usize, z: &SparseVec) -> Result<(SparseVec, SparseVec)> {
        let chain = unit_chain(&self.section_simplices[k], z);
        let a = self.first.coordinates(k, &chain).ok_or_else(|| Error::Invariant("section chain not allowable".into()))?;
        let b = self
            .second
            .coordinates(k, &push_chain(&chain, &self.to_second[k])?)
            .ok_or_else(|| Error::Invariant("section chain not allowable".into()))?;
        Ok((a, b))
    }
}

/// Torsion of the Mayer–Vietoris sequence of the suspension with geometric bases.
pub fn suspension_splitting(w: &OrientedComplex, which: Middle) -> Result<SplittingTorsion> {
    let mv = suspension_mayer_vietoris(w, which)?;
    let m = w.dim().expect("checked");
    let cut = cut_degree(m, &which.perversity(m + 1));
    let seq = &mv.sequence;
    let reference = SectionReference::integral(&seq.sub);
    let n = m + 1;
    let mut h_tot: HomologyBasis = vec![Vec::new(); n + 1];
    let mut h_quot: HomologyBasis = vec![Vec::new(); n + 1];
    let mut scales = Vec::new();
    for (k, classes) in reference.basis.iter().enumerate() {
        let offset = mv.first.generators[k].len();
        for z in classes {
            scales.push((3 * k + 2, section_log_factor(m, k)));
            let (a, b) = mv.cone_classes(k, z)?;
            if k < cut {
                let first = concat(&a, &SparseVec::new(), offset);
                let second = concat(&SparseVec::new(), &b, offset);
                h_quot[k].push(seq.projection.apply(k, &first));
                h_tot[k].push(first);
                h_tot[k].push(second);
                scales.push((3 * k + 1, cone_absolute_log_factor(m, k)));
                scales.push((3 * k + 1, cone_absolute_log_factor(m, k)));
                scales.push((3 * k, suspension_low_log_factor(m, k)));
            } else {
                let ba = bounding_chain(&mv.first.complex, k, &a)?;
                let bb = bounding_chain(&mv.second.complex, k, &b)?;
                let lift = concat(&ba, &bb.scaled(&Q::from_integer((-1).into())), mv.first.generators[k + 1].len());
                h_quot[k + 1].push(seq.projection.apply(k + 1, &lift));
                scales.push((3 * (k + 1), suspension_high_log_factor(m, k)));
            }
        }
    }
    splitting_torsion(seq, [&reference.basis, &h_tot, &h_quot], &scales)
}

/// Torsion of the pair sequence of the cone with geometric bases.
pub fn pair_splitting(w: &OrientedComplex, which: Middle) -> Result<SplittingTorsion> {
    ConeModel::new(w, which)?.pair_splitting()
}

/// Chain-level absolute and relative cone torsion for a reference built on the subdivided section.
pub fn cone_intersection_torsion(
    w: &OrientedComplex,
    which: Middle,
    reference: impl FnOnce(&BasedChainComplex) -> Result<SectionReference>,
) -> Result<(LogExpr, ConeTorsions)> {
    let model = ConeModel::new(w, which)?;
    let r = reference(model.section())?;
    Ok((model.section_torsion(&r)?, model.intersection_torsion(&r)?))
}
