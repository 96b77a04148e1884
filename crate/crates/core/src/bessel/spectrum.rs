//! Spectrum of the form Laplacian on a metric cone `C_l W` from the spectrum of `W`,
//! and truncations of the torsion zeta function built from it.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::zeros::BesselSequence;
use crate::error::{Error, Result};

/// One eigenvalue of the form Laplacian on `W` in a fixed degree, with the
/// dimension of its coexact eigenspace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionEigenvalue {
    pub lambda: f64,
    pub coexact: usize,
}

/// Spectral data of the section `W` of a cone.
///
/// `coexact[q]` lists the positive eigenvalues in degree `q` with their coexact
/// multiplicities and `harmonic[q]` is the dimension of harmonic `q`-forms, for
/// `q = 0..=m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSpectrumInput {
    pub m: usize,
    pub l: f64,
    pub coexact: Vec<Vec<SectionEigenvalue>>,
    pub harmonic: Vec<usize>,
}

impl ConeSpectrumInput {
    pub fn new(m: usize, l: f64, coexact: Vec<Vec<SectionEigenvalue>>, harmonic: Vec<usize>) -> Result<Self> {
        let input = Self { m, l, coexact, harmonic };
        input.validate()?;
        Ok(input)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l > 0.0 && self.l.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale l = {} must be positive", self.l)));
        }
        if self.coexact.len() != self.m + 1 {
            return Err(Error::InvalidArgument(format!(
                "coexact spectrum given for {} degrees, section dimension {} needs {}",
                self.coexact.len(),
                self.m,
                self.m + 1
            )));
        }
        if self.harmonic.len() != self.m + 1 {
            return Err(Error::InvalidArgument(format!(
                "harmonic dimensions given for {} degrees, need {}",
                self.harmonic.len(),
                self.m + 1
            )));
        }
        for (q, list) in self.coexact.iter().enumerate() {
            if let Some(e) = list.iter().find(|e| !(e.lambda > 0.0 && e.lambda.is_finite())) {
                return Err(Error::InvalidArgument(format!(
                    "degree {q}: coexact eigenvalue {} must be positive (zero modes are harmonic)",
                    e.lambda
                )));
            }
        }
        Ok(())
    }

    /// The circle of length `2π`: `λ = n²` with two coexact functions each, and
    /// one harmonic form in degrees 0 and 1.
    pub fn circle(l: f64, n_max: usize) -> Self {
        let functions = (1..=n_max).map(|n| SectionEigenvalue { lambda: (n * n) as f64, coexact: 2 }).collect();
        Self { m: 1, l, coexact: vec![functions, Vec::new()], harmonic: vec![1, 1] }
    }

    /// `α_q = (1 + 2q − m)/2`.
    pub fn alpha(&self, q: i64) -> f64 {
        0.5 * (1 + 2 * q - self.m as i64) as f64
    }

    /// The first `n_max` eigenvalues of degree `q` in increasing order, equal ones merged.
    pub fn canonical(&self, q: i64, n_max: usize) -> Vec<SectionEigenvalue> {
        if q < 0 || q as usize > self.m {
            return Vec::new();
        }
        let mut list: Vec<SectionEigenvalue> =
            self.coexact[q as usize].iter().copied().filter(|e| e.coexact > 0).collect();
        list.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        let mut merged: Vec<SectionEigenvalue> = Vec::with_capacity(list.len());
        for e in list {
            match merged.last_mut() {
                Some(last) if last.lambda == e.lambda => last.coexact += e.coexact,
                _ => merged.push(e),
            }
        }
        merged.truncate(n_max);
        merged
    }

    /// `(μ_{q,n}, m_{cex,q,n})` for `n ≤ n_max`.
    pub fn orders(&self, q: i64, n_max: usize) -> Vec<(f64, usize)> {
        let a = self.alpha(q);
        self.canonical(q, n_max).into_iter().map(|e| ((e.lambda + a * a).sqrt(), e.coexact)).collect()
    }

    pub fn harmonic_dim(&self, q: i64) -> usize {
        if q < 0 {
            return 0;
        }
        self.harmonic.get(q as usize).copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Absolute,
    Relative,
}

/// The six families making up the positive spectrum in degree `q` (absolute BC).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `ĵ_{μ_{q,n}, α_q, k}` with multiplicity `m_{cex,q,n}`
    CoexactHatted,
    /// `ĵ_{μ_{q−1,n}, α_{q−1}, k}` with multiplicity `m_{cex,q−1,n}`
    LowerHatted,
    /// `j_{μ_{q−1,n}, k}` with multiplicity `m_{cex,q−1,n}`
    LowerPlain,
    /// `j_{μ_{q−2,n}, k}` with multiplicity `m_{cex,q−2,n}`
    SecondLowerPlain,
    /// `ĵ_{|α_q|, α_q, k}` with multiplicity `m_{har,q}`
    Harmonic,
    /// `ĵ_{|α_{q−1}|, α_q, k}` with multiplicity `m_{har,q−1}`
    LowerHarmonic,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::CoexactHatted,
        Family::LowerHatted,
        Family::LowerPlain,
        Family::SecondLowerPlain,
        Family::Harmonic,
        Family::LowerHarmonic,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::CoexactHatted => "coexact-hatted",
            Family::LowerHatted => "lower-hatted",
            Family::LowerPlain => "lower-plain",
            Family::SecondLowerPlain => "second-lower-plain",
            Family::Harmonic => "harmonic",
            Family::LowerHarmonic => "lower-harmonic",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
    pub family: Family,
    /// index of the section eigenvalue (0 for the harmonic families)
    pub n: usize,
    pub k: usize,
    pub order: f64,
    /// `None` for plain zeros
    pub c: Option<f64>,
}

#[derive(Default)]
struct SequenceCache(HashMap<(u64, Option<u64>), BesselSequence>);

impl SequenceCache {
    fn zeros(&mut self, nu: f64, c: Option<f64>, k: usize) -> Result<Vec<f64>> {
        let key = (nu.to_bits(), c.map(f64::to_bits));
        if !self.0.contains_key(&key) {
            let seq = match c {
                Some(c) => BesselSequence::hatted(nu, c)?,
                None => BesselSequence::plain(nu)?,
            };
            self.0.insert(key, seq);
        }
        self.0[&key].values(k)
    }
}

/// Eigenvalues of the absolute (or relative) Laplacian on `q`-forms of `C_l W`,
/// for section eigenvalues `n ≤ n_max` and zeros `k ≤ k_max`, sorted by value.
///
/// The relative spectrum in degree `q` is the absolute one in degree `m + 1 − q`.
pub fn cone_spectrum(
    input: &ConeSpectrumInput,
    bc: BoundaryCondition,
    q: usize,
    n_max: usize,
    k_max: usize,
) -> Result<Vec<SpectrumEntry>> {
    input.validate()?;
    if q > input.m + 1 {
        return Err(Error::InvalidArgument(format!("degree {q} exceeds cone dimension {}", input.m + 1)));
    }
    let q = match bc {
        BoundaryCondition::Absolute => q,
        BoundaryCondition::Relative => input.m + 1 - q,
    } as i64;
    let l2 = input.l * input.l;
    let mut cache = SequenceCache::default();
    let mut out = Vec::new();

    let mut push_family = |family: Family, n: usize, nu: f64, c: Option<f64>, mult: usize| -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        for (i, j) in cache.zeros(nu, c, k_max)?.into_iter().enumerate() {
            out.push(SpectrumEntry { value: j * j / l2, multiplicity: mult, family, n, k: i + 1, order: nu, c });
        }
        Ok(())
    };

    let (aq, aq1) = (input.alpha(q), input.alpha(q - 1));
    for (i, (mu, mult)) in input.orders(q, n_max).into_iter().enumerate() {
        push_family(Family::CoexactHatted, i + 1, mu, Some(aq), mult)?;
    }
    for (i, (mu, mult)) in input.orders(q - 1, n_max).into_iter().enumerate() {
        push_family(Family::LowerHatted, i + 1, mu, Some(aq1), mult)?;
        push_family(Family::LowerPlain, i + 1, mu, None, mult)?;
    }
    for (i, (mu, mult)) in input.orders(q - 2, n_max).into_iter().enumerate() {
        push_family(Family::SecondLowerPlain, i + 1, mu, None, mult)?;
    }
    push_family(Family::Harmonic, 0, aq.abs(), Some(aq), input.harmonic_dim(q))?;
    push_family(Family::LowerHarmonic, 0, aq1.abs(), Some(aq), input.harmonic_dim(q - 1))?;

    out.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.family.cmp(&b.family))
            .then(a.n.cmp(&b.n))
            .then(a.k.cmp(&b.k))
    });
    Ok(out)
}

/// Truncated torsion zeta function of a cone over an odd-dimensional section.
#[derive(Clone, Debug)]
pub struct TorsionZetaPartial {
    pub s: Complex64,
    pub l: f64,
    /// `l^{2s}`
    pub scale: Complex64,
    /// `t_q(s)` for `q = 0..p`
    pub t_blocks: Vec<Complex64>,
    /// `z_q(s)` for `q = 0..p`
    pub z_blocks: Vec<Complex64>,
    /// `½(Σ (−1)^q t_q − Σ (−1)^q r_q z_q)`, the part independent of `l`
    pub reduced: Complex64,
    pub value: Complex64,
}

/// `l^{2s}` as used by [`torsion_zeta_partial`].
pub fn scale_factor(l: f64, s: Complex64) -> Complex64 {
    (s * (2.0 * l.ln())).exp()
}

fn power_sum(zeros: &[f64], s: Complex64) -> Complex64 {
    zeros.iter().rev().map(|&j| (-2.0 * s * j.ln()).exp()).sum()
}

/// Partial sums of `t(s)` over `n ≤ n_max`, `k ≤ k_max` for `Re s > (m+1)/2`.
pub fn torsion_zeta_partial(
    input: &ConeSpectrumInput,
    s: Complex64,
    n_max: usize,
    k_max: usize,
) -> Result<TorsionZetaPartial> {
    input.validate()?;
    if input.m % 2 == 0 {
        return Err(Error::Unsupported(format!("section dimension {} is even", input.m)));
    }
    let bound = 0.5 * (input.m + 1) as f64;
    if !(s.re > bound) {
        return Err(Error::InvalidArgument(format!("Re s = {} must exceed {bound}", s.re)));
    }
    let p = (input.m + 1) / 2;
    let mut cache = SequenceCache::default();
    let mut t_blocks = Vec::with_capacity(p);
    let mut z_blocks = Vec::with_capacity(p);
    for q in 0..p {
        let a = input.alpha(q as i64);
        let mut t = Complex64::new(0.0, 0.0);
        for (mu, mult) in input.orders(q as i64, n_max) {
            let plain = power_sum(&cache.zeros(mu, None, k_max)?, s);
            let block = if q + 1 == p {
                plain - power_sum(&cache.zeros(mu, Some(0.0), k_max)?, s)
            } else {
                2.0 * plain
                    - power_sum(&cache.zeros(mu, Some(a), k_max)?, s)
                    - power_sum(&cache.zeros(mu, Some(-a), k_max)?, s)
            };
            t += block * mult as f64;
        }
        t_blocks.push(t);
        let n = (p - q) as f64;
        z_blocks.push(power_sum(&cache.zeros(n, None, k_max)?, s) - power_sum(&cache.zeros(n - 1.0, None, k_max)?, s));
    }
    let sign = |q: usize| if q % 2 == 0 { 1.0 } else { -1.0 };
    let mut bracket = Complex64::new(0.0, 0.0);
    for q in 0..p {
        bracket += sign(q) * t_blocks[q];
        bracket -= sign(q) * input.harmonic_dim(q as i64) as f64 * z_blocks[q];
    }
    let reduced = 0.5 * bracket;
    let scale = scale_factor(input.l, s);
    Ok(TorsionZetaPartial { s, l: input.l, scale, t_blocks, z_blocks, reduced, value: scale * reduced })
}
