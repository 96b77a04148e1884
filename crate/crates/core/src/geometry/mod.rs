//! Geometric homology bases on metric cones and suspensions, closed-form
//! torsions of the splitting sequences, and the duality relations.
//!
//! Every geometric basis is a scalar multiple of a reference basis, so all
//! the quantities here are exact [`LogExpr`]s in `log l` and logs of
//! integers. The section torsion `log τ(W, l²g)` and the suspension torsion
//! enter as inputs or opaque symbols.

mod chain_level;

pub use chain_level::{
    cone_intersection_torsion, pair_splitting, ConeModel, section_torsion, suspension_mayer_vietoris, suspension_splitting,
    ConeTorsions, MayerVietoris, SectionReference, SplittingTorsion,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::logexpr::LogExpr;
use crate::stratified::{cut_degree, Perversity};

/// Which of the two middle perversities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Middle {
    /// `m`
    Lower,
    /// `m^c`
    Upper,
}

impl Middle {
    pub fn perversity(self, n: usize) -> Perversity {
        match self {
            Middle::Lower => Perversity::lower_middle(n),
            Middle::Upper => Perversity::upper_middle(n),
        }
    }

    pub fn other(self) -> Self {
        match self {
            Middle::Lower => Middle::Upper,
            Middle::Upper => Middle::Lower,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Middle::Lower => "m",
            Middle::Upper => "mc",
        }
    }
}

/// Section `W` of a cone: dimension, Betti numbers and scale.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionData {
    pub m: usize,
    /// `m = 2p − 1` or `m = 2p`.
    pub p: usize,
    pub r: Vec<usize>,
    #[serde(serialize_with = "crate::linalg::serialize_q")]
    pub l: Q,
    pub chi: i64,
}

impl SectionData {
    pub fn new(r: Vec<usize>, l: Q) -> Result<Self> {
        if r.len() < 2 {
            return Err(Error::InvalidArgument("section dimension must be positive".into()));
        }
        let m = r.len() - 1;
        if l <= Q::from_integer(0.into()) {
            return Err(Error::InvalidArgument(format!("scale l = {l} is not positive")));
        }
        for k in 0..=m {
            if r[k] != r[m - k] {
                return Err(Error::Invariant(format!("Betti numbers violate duality: r_{k} = {} but r_{} = {}", r[k], m - k, r[m - k])));
            }
        }
        let chi = r.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        Ok(Self { m, p: m.div_ceil(2), r, l, chi })
    }

    pub fn is_odd(&self) -> bool {
        self.m % 2 == 1
    }

    /// Degree `c` with `IH_k(C W) = H_k(W)` below it and zero from it on.
    pub fn cut(&self, which: Middle) -> usize {
        cut_degree(self.m, &which.perversity(self.m + 1))
    }

    /// Substitutes the scale into `log l`.
    pub fn instantiate(&self, e: &LogExpr) -> Result<LogExpr> {
        e.substitute_l(&self.l)
    }

    fn r(&self, k: usize) -> Q {
        q(self.r[k] as i64)
    }
}

/// Role of a space in the splitting sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// `(W, l²g)`
    Section,
    ConeAbsolute,
    ConeRelative,
    /// Suspension classes below the cut.
    SuspensionLow,
    /// Suspension classes above the cut.
    SuspensionHigh,
}

/// `log` of a scaling factor for a reference class in a given degree.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingEntry {
    pub role: Role,
    /// Degree in the space carrying the class.
    pub degree: usize,
    /// Degree of the section class it comes from.
    pub section_degree: usize,
    pub log_factor: LogExpr,
    pub factor: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingTable {
    pub perversity: Middle,
    pub entries: Vec<ScalingEntry>,
}

impl ScalingTable {
    pub fn log_factor(&self, role: Role, degree: usize) -> Result<&LogExpr> {
        self.entries
            .iter()
            .find(|e| e.role == role && e.degree == degree)
            .map(|e| &e.log_factor)
            .ok_or_else(|| Error::InvalidArgument(format!("no {role:?} factor in degree {degree}")))
    }
}

/// `½ (a log l − log b)` with integers `a`, `b`.
fn half_power(a: i64, b: i64) -> LogExpr {
    (LogExpr::log_l().scale(&q(a)) - LogExpr::log_i64(b)).scale(&crate::linalg::qfrac(1, 2))
}

/// Section factor `l^{(m−2k)/2}`.
pub fn section_log_factor(m: usize, k: usize) -> LogExpr {
    LogExpr::log_l().scale(&crate::linalg::qfrac(m as i64 - 2 * k as i64, 2))
}

/// Cone factor `(l^e/e)^{1/2}`, `e = m + 1 − 2k`, for `k` below the cut.
pub fn cone_absolute_log_factor(m: usize, k: usize) -> LogExpr {
    let e = m as i64 + 1 - 2 * k as i64;
    half_power(e, e)
}

/// Suspension factor `(2l^e/e)^{1/2}` below the cut.
pub fn suspension_low_log_factor(m: usize, k: usize) -> LogExpr {
    let e = m as i64 + 1 - 2 * k as i64;
    half_power(e, e) + LogExpr::log_i64(2).scale(&crate::linalg::qfrac(1, 2))
}

/// Relative cone factor `(l^{e′}/e′)^{−1/2}`, `e′ = 2k + 1 − m`, on the
/// class in degree `k + 1` whose connecting image is the section class.
pub fn cone_relative_log_factor(m: usize, k: usize) -> LogExpr {
    let e = 2 * k as i64 + 1 - m as i64;
    -half_power(e, e)
}

/// Suspension factor `(2l^{e′}/e′)^{−1/2}` above the cut.
pub fn suspension_high_log_factor(m: usize, k: usize) -> LogExpr {
    -suspension_low_log_factor(m, m - k)
}

pub fn scaling_table(d: &SectionData, which: Middle) -> ScalingTable {
    let m = d.m;
    let c = d.cut(which);
    let l = crate::linalg::to_f64(&d.l);
    let mut entries = Vec::new();
    let mut push = |role, degree, section_degree, log_factor: LogExpr| {
        let factor = log_factor.eval(Some(l), &Default::default()).map(f64::exp).unwrap_or(f64::NAN);
        entries.push(ScalingEntry { role, degree, section_degree, log_factor, factor });
    };
    for k in 0..=m {
        push(Role::Section, k, k, section_log_factor(m, k));
    }
    for k in 0..=m {
        if k < c {
            push(Role::ConeAbsolute, k, k, cone_absolute_log_factor(m, k));
            push(Role::SuspensionLow, k, k, suspension_low_log_factor(m, k));
        } else {
            push(Role::ConeRelative, k + 1, k, cone_relative_log_factor(m, k));
            push(Role::SuspensionHigh, k + 1, k, suspension_high_log_factor(m, k));
        }
    }
    ScalingTable { perversity: which, entries }
}

fn alt(k: usize) -> Q {
    if k % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// `Σ_{k<p} (−1)^k r_k log(l/(2p−2k))`.
fn odd_sum(d: &SectionData) -> LogExpr {
    let mut acc = LogExpr::zero();
    for k in 0..d.p {
        let term = LogExpr::log_l() - LogExpr::log_i64(2 * (d.p - k) as i64);
        acc += term.scale(&(alt(k) * d.r(k)));
    }
    acc
}

/// `log τ` of the suspension splitting sequence, symbolic in `log l`.
pub fn closed_form_s(d: &SectionData, which: Middle) -> LogExpr {
    if d.is_odd() {
        return odd_sum(d);
    }
    let half = crate::linalg::qfrac(1, 2);
    let log_term = LogExpr::log_l().scale(&(alt(d.p) * d.r(d.p) * &half));
    let chi_term = LogExpr::log_i64(2).scale(&(-q(d.chi) * &half));
    match which {
        Middle::Lower => chi_term + log_term,
        Middle::Upper => chi_term - log_term,
    }
}

/// `log τ` of the pair sequence, symbolic in `log l`.
pub fn closed_form_t(d: &SectionData, which: Middle) -> LogExpr {
    if d.is_odd() {
        return odd_sum(d);
    }
    let log_term = LogExpr::log_l().scale(&(alt(d.p) * d.r(d.p) * crate::linalg::qfrac(1, 2)));
    match which {
        Middle::Lower => log_term,
        Middle::Upper => -log_term,
    }
}

/// Absolute and relative intersection torsion of the cone over an odd-dimensional
/// section, from the section torsion `log τ(W, l²g)`.
pub fn intersection_torsion_cone(d: &SectionData, log_tau_w: &LogExpr) -> Result<(LogExpr, LogExpr)> {
    if !d.is_odd() {
        return Err(Error::InvalidArgument(format!(
            "closed-form cone torsion needs an odd-dimensional section, got m = {}",
            d.m
        )));
    }
    let half = crate::linalg::qfrac(1, 2);
    let abs = (log_tau_w.clone() + odd_sum(d)).scale(&half);
    Ok((abs.clone(), -abs))
}

/// Cone torsions for both perversities and flavors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionQuadruple {
    pub absolute_m: LogExpr,
    pub absolute_mc: LogExpr,
    pub relative_m: LogExpr,
    pub relative_mc: LogExpr,
}

/// Symbol carrying `log Iτ(Σ_l W)` in the even case.
pub const SUSPENSION_SYMBOL: &str = "tau_suspension";

/// Assembles the four cone torsions from the two splitting sequences:
/// `2 abs = τ(W) + τ(Σ) + S`, `rel = abs − τ(W) − T`.
///
/// For odd `m` the suspension term vanishes and `log_tau_w` is used as given.
/// For even `m` the section torsion is zero and the suspension term is the
/// opaque [`SUSPENSION_SYMBOL`], the same for both perversities.
pub fn assemble_cone_torsions(d: &SectionData, log_tau_w: &LogExpr) -> TorsionQuadruple {
    let half = crate::linalg::qfrac(1, 2);
    let (tau_w, tau_sigma) =
        if d.is_odd() { (log_tau_w.clone(), LogExpr::zero()) } else { (LogExpr::zero(), LogExpr::symbol(SUSPENSION_SYMBOL)) };
    let abs = |which| (tau_w.clone() + tau_sigma.clone() + closed_form_s(d, which)).scale(&half);
    let rel = |which, a: &LogExpr| a.clone() - tau_w.clone() - closed_form_t(d, which);
    let absolute_m = abs(Middle::Lower);
    let absolute_mc = abs(Middle::Upper);
    let relative_m = rel(Middle::Lower, &absolute_m);
    let relative_mc = rel(Middle::Upper, &absolute_mc);
    TorsionQuadruple { absolute_m, absolute_mc, relative_m, relative_mc }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub sign: i64,
    /// `abs^m − (−1)^m rel^{m^c}`
    pub swapped_residual: LogExpr,
    /// `½(abs^m + abs^{m^c}) − (−1)^m · ½(rel^m + rel^{m^c})`
    pub averaged_residual: LogExpr,
    pub holds: bool,
}

/// Checks `abs^m = (−1)^m rel^{m^c}` and the same for the averaged torsions.
pub fn duality_check(d: &SectionData, t: &TorsionQuadruple) -> DualityReport {
    let sign = if d.is_odd() { q(-1) } else { q(1) };
    let half = crate::linalg::qfrac(1, 2);
    let swapped_residual = t.absolute_m.clone() - t.relative_mc.scale(&sign);
    let averaged_residual = (t.absolute_m.clone() + t.absolute_mc.clone()).scale(&half)
        - (t.relative_m.clone() + t.relative_mc.clone()).scale(&(half * &sign));
    let holds = swapped_residual.is_zero() && averaged_residual.is_zero();
    DualityReport { sign: if d.is_odd() { -1 } else { 1 }, swapped_residual, averaged_residual, holds }
}

/// Residual of `½Σ_{k<p}(−1)^{k+1} r_k log(2(p−k)/l) + ½ log T(W) = ½ log T(W) + ½Σ_{k<p}(−1)^k r_k log(l/(2p−2k))`.
pub fn main_theorem_identity(d: &SectionData, log_t_w: &LogExpr) -> Result<LogExpr> {
    if !d.is_odd() {
        return Err(Error::InvalidArgument(format!("the identity needs odd m, got m = {}", d.m)));
    }
    let half = crate::linalg::qfrac(1, 2);
    let mut lhs = log_t_w.scale(&half);
    for k in 0..d.p {
        let term = LogExpr::log_i64(2 * (d.p - k) as i64) - LogExpr::log_l();
        lhs += term.scale(&(-alt(k) * d.r(k) * &half));
    }
    let rhs = log_t_w.scale(&half) + odd_sum(d).scale(&half);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qfrac;

    fn circle(l: i64) -> SectionData {
        SectionData::new(vec![1, 1], q(l)).unwrap()
    }

    #[test]
    fn factor_examples() {
        let d = circle(2);
        let t = scaling_table(&d, Middle::Lower);
        let f = d.instantiate(t.log_factor(Role::ConeAbsolute, 0).unwrap()).unwrap();
        assert_eq!(f, LogExpr::log_i64(2).scale(&qfrac(1, 2)));
        let d1 = circle(1);
        let s = d1.instantiate(scaling_table(&d1, Middle::Lower).log_factor(Role::Section, 0).unwrap()).unwrap();
        assert!(s.is_zero());
        let d2 = SectionData::new(vec![1, 0, 1], q(3)).unwrap();
        let f2 = d2.instantiate(scaling_table(&d2, Middle::Lower).log_factor(Role::ConeAbsolute, 0).unwrap()).unwrap();
        assert_eq!(f2, LogExpr::log_i64(3));
    }

    #[test]
    fn closed_forms() {
        let d = circle(2);
        assert!(d.instantiate(&closed_form_s(&d, Middle::Lower)).unwrap().is_zero());
        assert_eq!(closed_form_s(&d, Middle::Upper), LogExpr::log_l() - LogExpr::log_i64(2));
        let s2 = SectionData::new(vec![1, 0, 1], q(7)).unwrap();
        for w in [Middle::Lower, Middle::Upper] {
            assert_eq!(closed_form_s(&s2, w), -LogExpr::log_i64(2));
            assert!(closed_form_t(&s2, w).is_zero());
        }
        let t2 = SectionData::new(vec![1, 2, 1], q(7)).unwrap();
        assert_eq!(closed_form_t(&t2, Middle::Lower), -LogExpr::log_l());
        assert_eq!(closed_form_t(&t2, Middle::Upper), LogExpr::log_l());
        let diff = closed_form_s(&t2, Middle::Lower) - closed_form_s(&t2, Middle::Upper);
        assert_eq!(diff, LogExpr::log_l().scale(&q(-2)));
    }

    #[test]
    fn rejects_bad_sections() {
        assert!(SectionData::new(vec![1, 2], q(1)).is_err());
        assert!(SectionData::new(vec![1, 1], q(0)).is_err());
        assert!(intersection_torsion_cone(&SectionData::new(vec![1, 0, 1], q(1)).unwrap(), &LogExpr::zero()).is_err());
    }

    #[test]
    fn duality_both_parities() {
        let d = circle(3);
        let x = LogExpr::symbol("tau_w");
        let t = assemble_cone_torsions(&d, &x);
        assert!(duality_check(&d, &t).holds);
        assert_eq!(t.absolute_m, t.relative_m.scale(&q(-1)));
        let t2 = SectionData::new(vec![1, 2, 1], q(5)).unwrap();
        let rep = duality_check(&t2, &assemble_cone_torsions(&t2, &LogExpr::zero()));
        assert!(rep.holds, "{rep:?}");
        assert_eq!(rep.sign, 1);
    }
}
