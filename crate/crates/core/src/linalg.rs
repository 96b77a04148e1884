//! Exact linear algebra over the rationals.
//!
//! Everything here works with [`BigRational`] entries. The workhorse is
//! [`Echelon`], an incrementally built echelon basis of sparse vectors that
//! answers rank, membership, coordinate and kernel queries without ever
//! materialising dense matrices. [`RationalMatrix`] is a small dense type for
//! user-facing matrices and change-of-basis determinants.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut entries: Vec<(usize, Q)> = pairs.into_iter().collect();
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Q)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Self { entries: out }
    }

    pub fn unit(index: usize) -> Self {
        Self { entries: vec![(index, Q::one())] }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Q {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &SparseVec) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + c * &other.entries[b].1;
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        Self { entries: out }
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (mut a, mut b) = (0, 0);
        let mut acc = Q::zero();
        while a < self.entries.len() && b < other.entries.len() {
            match self.entries[a].0.cmp(&other.entries[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &self.entries[a].1 * &other.entries[b].1;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Keeps only entries whose index satisfies `keep`, re-indexed by `map`.
    pub fn filter_map_indices<F: Fn(usize) -> Option<usize>>(&self, map: F) -> Self {
        Self::from_pairs(self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_integer())
    }

    /// Smallest positive rational multiple with coprime integer entries.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for (_, v) in &self.entries {
            lcm = lcm.lcm(v.denom());
        }
        let mut g = BigInt::zero();
        for (_, v) in &self.entries {
            let n = v.numer() * (&lcm / v.denom());
            g = g.gcd(&n);
        }
        let factor = Q::new(lcm, g);
        self.scaled(&factor)
    }
}

/// Sum of `coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[Q], vectors: &[SparseVec]) -> SparseVec {
    let mut acc = SparseVec::new();
    for (c, v) in coeffs.iter().zip(vectors) {
        acc = acc.add_scaled(c, v);
    }
    acc
}

/// Incremental echelon basis with optional tracking of how each stored row
/// was formed from the inserted vectors.
///
/// Every stored row has a distinct leading index; rows are not normalised.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
    inserted: usize,
    track: bool,
    /// Leading index of each row, in insertion order (for determinant signs).
    pivots: Vec<usize>,
}

/// Result of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug)]
pub enum Insert {
    /// The vector was independent; `lead` is the leading value of its reduced form.
    Independent { pivot: usize, lead: Q },
    /// The vector was dependent; `relation` (over inserted ids, with the new
    /// vector's own id carrying coefficient 1) combines to zero. Only filled
    /// when tracking is enabled.
    Dependent { relation: SparseVec },
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon basis that records, for each row, its expression in inserted ids.
    pub fn tracking() -> Self {
        Self { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// tracked combination `w` with `v = residual + w` (w over inserted ids).
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut w = SparseVec::new();
        let mut pos = 0;
        while pos < v.entries.len() {
            let (idx, val) = (v.entries[pos].0, v.entries[pos].1.clone());
            if let Some(&r) = self.pivot_row.get(&idx) {
                let row = &self.rows[r];
                let f = &val / row.entries[0].1.clone();
                v = v.add_scaled(&-f.clone(), row);
                if self.track {
                    w = w.add_scaled(&f, &self.combos[r]);
                }
            } else {
                pos += 1;
            }
        }
        (v, w)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let (res, w) = self.reduce(v);
        if res.is_zero() {
            let relation = if self.track { SparseVec::unit(id).sub(&w) } else { SparseVec::new() };
            return Insert::Dependent { relation };
        }
        let (pivot, lead) = {
            let (p, l) = res.leading().expect("nonzero residual");
            (p, l.clone())
        };
        self.pivot_row.insert(pivot, self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(res);
        if self.track {
            self.combos.push(SparseVec::unit(id).sub(&w));
        }
        Insert::Independent { pivot, lead }
    }

    /// Coordinates of `v` in terms of inserted vectors, if `v` lies in the span.
    /// Requires tracking.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve requires a tracking echelon basis");
        let (res, w) = self.reduce(v);
        res.is_zero().then_some(w)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Signed determinant of the square matrix whose columns are `columns`
/// (each of length `columns.len()`).
pub fn determinant_of_columns(columns: &[SparseVec]) -> Q {
    let n = columns.len();
    let mut e = Echelon::new();
    let mut det = Q::one();
    for c in columns {
        if let Some(m) = c.max_index() {
            debug_assert!(m < n, "column index out of range");
        }
        match e.insert(c) {
            Insert::Independent { lead, .. } => det *= lead,
            Insert::Dependent { .. } => return Q::zero(),
        }
    }
    // Rows sorted by pivot form an upper triangular matrix; the determinant
    // picks up the sign of the permutation taking insertion order to pivot order.
    if permutation_is_odd(&e.pivots) {
        det = -det;
    }
    det
}

fn permutation_is_odd(values: &[usize]) -> bool {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    let mut seen = vec![false; values.len()];
    let mut odd = false;
    for start in 0..values.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Rational kernel basis of the linear map whose columns are `columns`.
///
/// Each kernel vector has coefficient 1 on one "free" column and is
/// otherwise supported on earlier independent columns, so the basis
/// projects to the identity on free coordinates. When every vector is
/// integral this basis is therefore saturated in `Z^n`.
pub fn kernel_of_columns(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    let mut kernel = Vec::new();
    for c in columns {
        if let Insert::Dependent { relation } = e.insert(c) {
            kernel.push(relation);
        }
    }
    kernel
}

/// Saturated integral kernel basis of an integer matrix given by columns.
///
/// Uses the rational echelon kernel when it is already integral and falls
/// back to unimodular column reduction otherwise.
pub fn integral_kernel_of_columns(columns: &[SparseVec]) -> Result<Vec<SparseVec>> {
    for c in columns {
        if !c.is_integral() {
            return Err(Error::NonIntegral("integral kernel requires integer entries".into()));
        }
    }
    let kernel = kernel_of_columns(columns);
    if kernel.iter().all(SparseVec::is_integral) {
        return Ok(kernel);
    }
    Ok(unimodular_kernel(columns))
}

/// Kernel of an integer matrix through unimodular column operations. The
/// returned basis spans `ker ∩ Z^n` (columns of a unimodular transform).
pub fn unimodular_kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let n = columns.len();
    let nrows = columns.iter().filter_map(SparseVec::max_index).max().map(|m| m + 1).unwrap_or(0);
    let to_int = |v: &Q| v.to_integer();
    // Column-major working copies: matrix columns and transform columns.
    let mut mcols: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|c| {
            let mut d = vec![BigInt::zero(); nrows];
            for (i, v) in c.entries() {
                d[*i] = to_int(v);
            }
            d
        })
        .collect();
    let mut vcols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut d = vec![BigInt::zero(); n];
            d[j] = BigInt::one();
            d
        })
        .collect();
    let mut k = 0;
    for row in 0..nrows {
        loop {
            let mut best: Option<usize> = None;
            for j in k..n {
                if !mcols[j][row].is_zero()
                    && best.is_none_or(|b| mcols[j][row].abs() < mcols[b][row].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            let mut others = false;
            for j in k..n {
                if j == b || mcols[j][row].is_zero() {
                    continue;
                }
                let f = mcols[j][row].div_floor(&mcols[b][row]);
                let (src_m, src_v) = (mcols[b].clone(), vcols[b].clone());
                for (x, y) in mcols[j].iter_mut().zip(&src_m) {
                    *x -= &f * y;
                }
                for (x, y) in vcols[j].iter_mut().zip(&src_v) {
                    *x -= &f * y;
                }
                if !mcols[j][row].is_zero() {
                    others = true;
                }
            }
            if !others {
                mcols.swap(k, b);
                vcols.swap(k, b);
                k += 1;
                break;
            }
        }
    }
    vcols[k..]
        .iter()
        .map(|c| SparseVec::from_pairs(c.iter().enumerate().map(|(i, v)| (i, Q::from_integer(v.clone())))))
        .collect()
}

/// Dense exact rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "rational_vec_serde")]
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Q>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map(Vec::len).unwrap_or(0);
        Self::from_fn(nr, nc, |r, c| q(rows[r][c]))
    }

    /// Matrix with the given sparse columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.entries() {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> SparseVec {
        SparseVec::from_pairs((0..self.rows).map(|r| (r, self.get(r, c).clone())))
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (c, x) in v.entries() {
            acc = acc.add_scaled(x, &self.column(*c));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.columns())
    }

    pub fn determinant(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(determinant_of_columns(&self.columns()))
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut e = Echelon::tracking();
        for c in self.columns() {
            e.insert(&c);
        }
        if e.rank() < n {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        // Column j of the inverse expresses e_j in terms of our columns.
        let cols: Vec<SparseVec> =
            (0..n).map(|j| e.solve(&SparseVec::unit(j)).expect("full rank")).collect();
        Ok(Self::from_columns(n, &cols))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

mod rational_vec_serde {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(data: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = data.iter().map(ToString::to_string).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| super::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Parses `"3"`, `"-2/5"` or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Serializes a rational as its `a/b` string.
pub fn serialize_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = RationalMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        // 2*(12-1) - 1*(4-0) = 18
        assert_eq!(m.determinant().unwrap(), q(18));
        let swapped = RationalMatrix::from_i64(&[vec![1, 3, 1], vec![2, 1, 0], vec![0, 1, 4]]);
        assert_eq!(swapped.determinant().unwrap(), q(-18));
    }

    #[test]
    fn singular_determinant_is_zero() {
        let m = RationalMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.determinant().unwrap(), q(0));
        assert!(m.inverse().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_i64(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
    }

    #[test]
    fn kernel_and_solve() {
        let cols = vec![sv(&[1, 0]), sv(&[0, 1]), sv(&[1, 1])];
        let k = kernel_of_columns(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], sv(&[-1, -1, 1]));
        let mut e = Echelon::tracking();
        for c in &cols[..2] {
            e.insert(c);
        }
        assert_eq!(e.solve(&sv(&[3, -2])).unwrap(), sv(&[3, -2]));
    }

    #[test]
    fn unimodular_kernel_is_saturated() {
        // Rows (2, 1, 0) and (0, 1, 2): rational kernel (1, -2, 1).
        let cols = vec![sv(&[2, 0]), sv(&[1, 1]), sv(&[0, 2])];
        let k = unimodular_kernel(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].primitive(), k[0].clone());
        assert!(k[0] == sv(&[1, -2, 1]) || k[0] == sv(&[-1, 2, -1]));
    }

    #[test]
    fn non_integral_echelon_kernel_falls_back() {
        // Column 2 = (1/2)(col0 + col1) rationally; integer kernel (1,1,-2).
        let cols = vec![sv(&[2, 0]), sv(&[0, 2]), sv(&[2, 2]), sv(&[1, 1])];
        let k = integral_kernel_of_columns(&cols).unwrap();
        assert_eq!(k.len(), 2);
        assert!(k.iter().all(SparseVec::is_integral));
        // Saturation: the lattice contains (0,0,1,-2) = e2 - 2 e3.
        let mut e = Echelon::tracking();
        for v in &k {
            e.insert(v);
        }
        let coords = e.solve(&sv(&[0, 0, 1, -2])).unwrap();
        assert!(coords.is_integral());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("0.25").unwrap(), qfrac(1, 4));
        assert_eq!(parse_rational("-3/6").unwrap(), qfrac(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn primitive_vector() {
        let v = SparseVec::from_dense(&[qfrac(1, 2), qfrac(-3, 4)]);
        assert_eq!(v.primitive(), sv(&[2, -3]));
    }
}
