//! Finite oriented simplicial complexes, barycentric subdivision, cones and
//! suspensions.
//!
//! Vertices are identified by their position; simplices are strictly
//! increasing vertex lists and are oriented by that order.

use std::collections::{BTreeSet, HashMap};

use crate::chain::BasedChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{q, RationalMatrix, SparseVec};

pub type Simplex = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedComplex {
    labels: Vec<String>,
    /// simplices grouped by dimension, each group sorted lexicographically
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    apices: Vec<usize>,
}

impl OrientedComplex {
    /// Face closure of the given simplices on vertices `0..labels.len()`.
    pub fn from_maximal(labels: Vec<String>, maximal: &[Simplex]) -> Result<Self> {
        let n = labels.len();
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidArgument("vertex labels must be distinct".into()));
        }
        let mut all: BTreeSet<(usize, Simplex)> = BTreeSet::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                continue;
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("repeated vertex in simplex {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            if all.contains(&(s.len() - 1, s.clone())) {
                continue;
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: Simplex = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                all.insert((face.len() - 1, face));
            }
        }
        // Isolated vertices are part of the complex.
        for v in 0..n {
            all.insert((0, vec![v]));
        }
        Ok(Self::from_sorted(labels, all))
    }

    /// Builds from integer vertex count, labelling vertices `0..n`.
    pub fn from_maximal_unlabelled(n: usize, maximal: &[Simplex]) -> Result<Self> {
        Self::from_maximal((0..n).map(|i| i.to_string()).collect(), maximal)
    }

    fn from_sorted(labels: Vec<String>, all: BTreeSet<(usize, Simplex)>) -> Self {
        let top = all.iter().map(|(d, _)| *d).max().map(|d| d + 1).unwrap_or(0);
        let mut simplices = vec![Vec::new(); top];
        for (d, s) in all {
            simplices[d].push(s);
        }
        let index = simplices
            .iter()
            .map(|group| group.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { labels, simplices, index, apices: Vec::new() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Dimension; −1 (as `None`) for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn top_dim(&self) -> usize {
        self.dim().unwrap_or(0)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    /// Tagged cone/suspension apex vertices.
    pub fn apices(&self) -> &[usize] {
        &self.apices
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Simplices as sets of vertex labels; identifies complexes across constructions.
    pub fn labelled_simplices(&self) -> BTreeSet<Vec<String>> {
        self.all_simplices()
            .map(|s| {
                let mut l: Vec<String> = s.iter().map(|&v| self.labels[v].clone()).collect();
                l.sort();
                l
            })
            .collect()
    }

    /// `∂_q` as sparse columns over the `(q−1)`-simplices.
    pub fn boundary_columns(&self, d: usize) -> Vec<SparseVec> {
        if d == 0 {
            return vec![SparseVec::new(); self.count(0)];
        }
        self.simplices(d)
            .iter()
            .map(|s| {
                SparseVec::from_pairs((0..s.len()).map(|i| {
                    let mut face = s.clone();
                    face.remove(i);
                    let idx = self.index_of(&face).expect("face closure");
                    (idx, q(if i % 2 == 0 { 1 } else { -1 }))
                }))
            })
            .collect()
    }

    /// Matrix of `∂_q : C_q → C_{q−1}` on simplices ordered lexicographically.
    pub fn boundary_matrix(&self, d: usize) -> Result<RationalMatrix> {
        match self.dim() {
            Some(top) if d <= top => {}
            _ => return Err(Error::InvalidArgument(format!("degree {d} out of range"))),
        }
        let rows = if d == 0 { 0 } else { self.count(d - 1) };
        Ok(RationalMatrix::from_columns(rows, &self.boundary_columns(d)))
    }

    pub fn chain_complex(&self) -> BasedChainComplex {
        let dims = self.f_vector();
        let boundaries = (0..dims.len()).map(|d| self.boundary_columns(d)).collect();
        BasedChainComplex::new(dims, boundaries).expect("simplicial boundary squares to zero")
    }

    pub fn homology_ranks(&self) -> Vec<usize> {
        crate::chain::homology_ranks(&self.chain_complex())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Number of `d+1`-simplices having each `d`-simplex as a face.
    pub fn coface_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(d)];
        for s in self.simplices(d + 1) {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                counts[self.index_of(&face).expect("closure")] += 1;
            }
        }
        counts
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            let counts = self.coface_counts(d);
            for (i, s) in self.simplices[d].iter().enumerate() {
                if counts[i] == 0 {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let top = self.top_dim();
        self.maximal_simplices().iter().all(|s| s.len() == top + 1)
    }

    /// Subcomplex generated by the given simplices, on the vertices it uses
    /// (labels preserved, order preserved).
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<Self> {
        let used: BTreeSet<usize> = generators.iter().flatten().copied().collect();
        let renumber: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = used.iter().map(|&v| self.labels[v].clone()).collect();
        let gens: Vec<Simplex> = generators.iter().map(|s| s.iter().map(|v| renumber[v]).collect()).collect();
        let mut sub = Self::from_maximal(labels, &gens)?;
        sub.apices = self.apices.iter().filter_map(|v| renumber.get(v).copied()).collect();
        Ok(sub)
    }

    /// Vertex id carrying a given label.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn fresh_label(labels: &[String], base: &str) -> String {
    let mut label = base.to_string();
    let mut k = 0;
    while labels.contains(&label) {
        k += 1;
        label = format!("{base}{k}");
    }
    label
}

/// `cone(K)`: a new last vertex joined to every simplex of `K`.
pub fn cone(k: &OrientedComplex) -> OrientedComplex {
    cone_with_apex(k, "apex")
}

/// `cone(K)` with a chosen apex label (made unique if it clashes).
pub fn cone_with_apex(k: &OrientedComplex, apex_label: &str) -> OrientedComplex {
    let apex = k.vertex_count();
    let mut labels = k.labels.clone();
    labels.push(fresh_label(&labels, apex_label));
    let mut all: BTreeSet<(usize, Simplex)> = BTreeSet::new();
    all.insert((0, vec![apex]));
    for s in k.all_simplices() {
        all.insert((s.len() - 1, s.clone()));
        let mut t = s.clone();
        t.push(apex);
        all.insert((t.len() - 1, t));
    }
    let mut c = OrientedComplex::from_sorted(labels, all);
    c.apices = vec![apex];
    c
}

/// `Σ K`: two cones on `K` glued along `K`; the apices are the last two vertices.
pub fn suspension(k: &OrientedComplex) -> OrientedComplex {
    let north = k.vertex_count();
    let south = north + 1;
    let mut labels = k.labels.clone();
    labels.push(fresh_label(&labels, "north"));
    labels.push(fresh_label(&labels, "south"));
    let mut all: BTreeSet<(usize, Simplex)> = BTreeSet::new();
    all.insert((0, vec![north]));
    all.insert((0, vec![south]));
    for s in k.all_simplices() {
        all.insert((s.len() - 1, s.clone()));
        for a in [north, south] {
            let mut t = s.clone();
            t.push(a);
            all.insert((t.len() - 1, t));
        }
    }
    let mut c = OrientedComplex::from_sorted(labels, all);
    c.apices = vec![north, south];
    c
}

/// Closure of the `(n−1)`-simplices that are faces of exactly one `n`-simplex.
pub fn boundary_subcomplex(k: &OrientedComplex) -> Result<OrientedComplex> {
    let Some(n) = k.dim() else {
        return Ok(k.clone());
    };
    if !k.is_pure() {
        return Err(Error::InvalidArgument("boundary needs a pure complex".into()));
    }
    if n == 0 {
        return k.subcomplex(&[]);
    }
    let counts = k.coface_counts(n - 1);
    let gens: Vec<Simplex> =
        k.simplices(n - 1).iter().zip(&counts).filter(|(_, &c)| c == 1).map(|(s, _)| s.clone()).collect();
    k.subcomplex(&gens)
}

/// First barycentric subdivision together with the barycenter bookkeeping.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    pub source: OrientedComplex,
    pub target: OrientedComplex,
    /// `carrier[v]` = `(dim, index)` of the source simplex whose barycenter is target vertex `v`.
    pub carrier: Vec<(usize, usize)>,
}

impl SubdivisionMap {
    pub fn carrier_simplex(&self, v: usize) -> &Simplex {
        let (d, i) = self.carrier[v];
        &self.source.simplices(d)[i]
    }

    /// Target vertex that is the barycenter of a source simplex.
    pub fn barycenter(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        let i = self.source.index_of(s)?;
        let offset: usize = (0..d).map(|e| self.source.count(e)).sum();
        Some(offset + i)
    }
}

/// Target vertices are the source simplices ordered by (dimension, lex);
/// target simplices are strictly increasing flags, which this order keeps sorted.
pub fn barycentric_subdivision(k: &OrientedComplex) -> SubdivisionMap {
    let mut carrier = Vec::new();
    let mut labels = Vec::new();
    let mut offsets = Vec::new();
    for d in 0..k.simplices.len() {
        offsets.push(carrier.len());
        for (i, s) in k.simplices[d].iter().enumerate() {
            carrier.push((d, i));
            let names: Vec<&str> = s.iter().map(|&v| k.labels[v].as_str()).collect();
            labels.push(format!("<{}>", names.join(",")));
        }
    }
    let id = |s: &Simplex| offsets[s.len() - 1] + k.index_of(s).expect("simplex");
    let mut maximal = Vec::new();
    for top in k.maximal_simplices() {
        let mut perm: Vec<usize> = top.clone();
        permutations(&mut perm, 0, &mut |order| {
            let mut flag = Vec::with_capacity(order.len());
            let mut cur: Simplex = Vec::new();
            for &v in order {
                let pos = cur.binary_search(&v).unwrap_err();
                cur.insert(pos, v);
                flag.push(id(&cur));
            }
            maximal.push(flag);
        });
    }
    let mut target = OrientedComplex::from_maximal(labels, &maximal).expect("flags are valid simplices");
    target.apices = k.apices.iter().map(|&a| id(&vec![a])).collect();
    SubdivisionMap { source: k.clone(), target, carrier }
}

fn permutations<F: FnMut(&[usize])>(v: &mut Vec<usize>, start: usize, f: &mut F) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

/// Small named triangulations.
pub mod standard {
    use super::*;

    pub fn point() -> OrientedComplex {
        OrientedComplex::from_maximal_unlabelled(1, &[vec![0]]).expect("valid")
    }

    /// Two points.
    pub fn sphere0() -> OrientedComplex {
        OrientedComplex::from_maximal_unlabelled(2, &[vec![0], vec![1]]).expect("valid")
    }

    /// Circle as an `n`-gon.
    pub fn polygon(n: usize) -> OrientedComplex {
        assert!(n >= 3);
        let edges: Vec<Simplex> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        OrientedComplex::from_maximal_unlabelled(n, &edges).expect("valid")
    }

    pub fn triangle_boundary() -> OrientedComplex {
        polygon(3)
    }

    pub fn full_simplex(d: usize) -> OrientedComplex {
        OrientedComplex::from_maximal_unlabelled(d + 1, &[(0..=d).collect()]).expect("valid")
    }

    /// Boundary of the `(d+1)`-simplex.
    pub fn sphere(d: usize) -> OrientedComplex {
        let facets: Vec<Simplex> = (0..=d + 1).map(|skip| (0..=d + 1).filter(|&v| v != skip).collect()).collect();
        OrientedComplex::from_maximal_unlabelled(d + 2, &facets).expect("valid")
    }

    /// Seven-vertex torus.
    pub fn torus() -> OrientedComplex {
        let mut tris = Vec::new();
        for i in 0..7 {
            tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        OrientedComplex::from_maximal_unlabelled(7, &tris).expect("valid")
    }

    /// Six-vertex real projective plane.
    pub fn projective_plane() -> OrientedComplex {
        let tris = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let tris: Vec<Simplex> = tris.iter().map(|t| t.to_vec()).collect();
        OrientedComplex::from_maximal_unlabelled(6, &tris).expect("valid")
    }

    pub fn disc() -> OrientedComplex {
        full_simplex(2)
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn edge_boundary() {
        let e = full_simplex(1);
        let m = e.boundary_matrix(1).unwrap();
        assert_eq!(m, RationalMatrix::from_i64(&[vec![-1], vec![1]]));
        assert!(e.boundary_matrix(2).is_err());
    }

    #[test]
    fn small_homology() {
        assert_eq!(triangle_boundary().homology_ranks(), vec![1, 1]);
        assert_eq!(full_simplex(2).homology_ranks(), vec![1, 0, 0]);
        assert_eq!(torus().homology_ranks(), vec![1, 2, 1]);
        assert_eq!(projective_plane().homology_ranks(), vec![1, 0, 0]);
        assert_eq!(sphere(2).homology_ranks(), vec![1, 0, 1]);
    }

    #[test]
    fn subdivision_counts() {
        let sd = barycentric_subdivision(&full_simplex(1));
        assert_eq!(sd.target.f_vector(), vec![3, 2]);
        let sd = barycentric_subdivision(&full_simplex(2));
        assert_eq!(sd.target.f_vector(), vec![7, 12, 6]);
        for v in 0..7 {
            assert_eq!(sd.barycenter(sd.carrier_simplex(v)), Some(v));
        }
    }

    #[test]
    fn cones_and_suspensions() {
        assert_eq!(cone(&point()).f_vector(), vec![2, 1]);
        assert_eq!(cone(&triangle_boundary()).homology_ranks(), vec![1, 0, 0]);
        let s = suspension(&sphere0());
        assert_eq!(s.f_vector(), vec![4, 4]);
        assert_eq!(s.homology_ranks(), vec![1, 1]);
        assert_eq!(suspension(&triangle_boundary()).homology_ranks(), vec![1, 0, 1]);
        assert_eq!(suspension(&triangle_boundary()).apices().len(), 2);
    }

    #[test]
    fn boundaries() {
        assert_eq!(boundary_subcomplex(&full_simplex(2)).unwrap().f_vector(), vec![3, 3]);
        assert_eq!(boundary_subcomplex(&sphere(2)).unwrap().dim(), None);
        let c = cone(&triangle_boundary());
        let b = boundary_subcomplex(&c).unwrap();
        assert_eq!(b.labelled_simplices(), triangle_boundary().labelled_simplices());
        let non_pure = OrientedComplex::from_maximal_unlabelled(4, &[vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(boundary_subcomplex(&non_pure).is_err());
    }
}
