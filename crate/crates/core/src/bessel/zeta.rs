//! Zeta values at `s = 0` of single Bessel-zero sequences.
//!
//! For the squared zeros `x_k²` of a sequence, `G(z) = log Π(1 + z²/x_k²)`
//! is an explicit Bessel-function expression, and its large-`z` expansion
//! `G(z) = z + 2ζ(0) log z + ζ′(0) + O(1/z)` yields both values. We read the
//! coefficients off numerically and compare them with their Γ-function form.

use std::f64::consts::PI;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::functions::series_pair_hp;
use super::hp::{hp, ln, solve, to_f64, working_bits, RM};
use super::zeros::{BesselSequence, Mode};
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::logexpr::LogExpr;
use crate::special::trigamma;

/// Agreement required between the extracted and the closed-form values.
pub const DUAL_PATH_TOLERANCE: f64 = 1e-10;

const FIT_TERMS: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct ZetaValue {
    pub nu: f64,
    pub mode: Mode,
    /// `ζ(0)`
    pub value: LogExpr,
    /// `ζ′(0)`
    pub derivative: LogExpr,
    pub value_extracted: f64,
    pub derivative_extracted: f64,
}

impl ZetaValue {
    /// Largest difference between the symbolic and the extracted values.
    pub fn discrepancy(&self) -> Result<f64> {
        Ok((self.value.value()? - self.value_extracted)
            .abs()
            .max((self.derivative.value()? - self.derivative_extracted).abs()))
    }
}

enum Shape {
    Plain(f64),
    Hatted(f64, f64),
}

fn shape(seq: &BesselSequence) -> Result<Shape> {
    let nu = seq.order();
    match seq.hatted_parameter() {
        None => Ok(Shape::Plain(nu)),
        Some(c) if nu + c == 0.0 => Ok(Shape::Plain(nu + 1.0)),
        Some(c) if nu + c < 0.0 => Err(Error::Unsupported(format!(
            "c = {c} < -ν: the zero set has a purely imaginary pair, outside the positive-zero setting"
        ))),
        Some(c) => Ok(Shape::Hatted(nu, c)),
    }
}

fn exact(v: f64) -> Result<Q> {
    Q::from_float(v).ok_or_else(|| Error::InvalidArgument(format!("{v} is not finite")))
}

fn half() -> Q {
    Q::new(BigInt::one(), BigInt::from(2))
}

fn closed_form(shape: &Shape) -> Result<(LogExpr, LogExpr)> {
    let quarter = Q::new(BigInt::one(), BigInt::from(4));
    let (nu, c) = match shape {
        Shape::Plain(nu) => (exact(*nu)?, None),
        Shape::Hatted(nu, c) => (exact(*nu)?, Some(exact(*c)?)),
    };
    // −½ log 2π + ν log 2 + log Γ(ν+1)
    let mut d = (LogExpr::log_i64(2) + LogExpr::log_pi()).scale(&-half());
    d += LogExpr::log_i64(2).scale(&nu);
    d += LogExpr::log_gamma(&nu + Q::one())?;
    let v = match c {
        None => -(&nu * half() + &quarter),
        Some(c) => {
            d -= LogExpr::log_rational(&(&nu + c))?;
            quarter - &nu * half()
        }
    };
    Ok((LogExpr::rational(v), d))
}

/// `G(z)` at working precision.
fn log_product(shape: &Shape, z: f64, p: usize) -> Result<BigFloat> {
    match *shape {
        Shape::Plain(nu) => {
            let (s0, _, _) = series_pair_hp(nu, z, 1.0, p);
            ln(&s0, p)
        }
        Shape::Hatted(nu, c) => {
            let (s0, t1, _) = series_pair_hp(nu, z, 1.0, p);
            let w = hp(nu + c, p);
            let v = w.mul(&s0, p, RM).add(&hp(z, p).mul(&t1, p, RM), p, RM).div(&w, p, RM);
            ln(&v, p)
        }
    }
}

/// Fits `G(z) − z = a log z + b + Σ c_i z^{−i}` and returns `(a/2, b)`.
fn extract(shape: &Shape) -> Result<(f64, f64)> {
    let p = working_bits() + 128;
    let nu = match *shape {
        Shape::Plain(nu) | Shape::Hatted(nu, _) => nu,
    };
    let z_min = (8.0 * nu * nu).max(200.0);
    let n = FIT_TERMS + 2;
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for i in 0..n {
        let z = (z_min * 10f64.powf(i as f64 / (n - 1) as f64)).round();
        let zh = hp(z, p);
        let inv = hp(1.0, p).div(&zh, p, RM);
        let mut row = vec![ln(&zh, p)?, hp(1.0, p)];
        let mut pow = inv.clone();
        for _ in 0..FIT_TERMS {
            row.push(pow.clone());
            pow = pow.mul(&inv, p, RM);
        }
        rows.push(row);
        rhs.push(log_product(shape, z, p)?.sub(&zh, p, RM));
    }
    let x = solve(rows, rhs, p)?;
    Ok((0.5 * to_f64(&x[0]), to_f64(&x[1])))
}

/// `ζ(0)` and `ζ′(0)` of the squared zeros of `seq`, symbolically and by extraction.
pub fn zeta_at_zero(seq: &BesselSequence) -> Result<ZetaValue> {
    let sh = shape(seq)?;
    let (value, derivative) = closed_form(&sh)?;
    let (ve, de) = extract(&sh)?;
    let out = ZetaValue {
        nu: seq.order(),
        mode: seq.mode(),
        value,
        derivative,
        value_extracted: ve,
        derivative_extracted: de,
    };
    let gap = out.discrepancy()?;
    if !(gap <= DUAL_PATH_TOLERANCE) {
        return Err(Error::Numerical(format!(
            "zeta values of order {} ({}) disagree by {gap:e} between the two evaluations",
            seq.order(),
            seq.mode()
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZqValues {
    pub p: usize,
    pub q: usize,
    /// `z_q(0)`
    pub value: LogExpr,
    /// `z_q′(0)`
    pub derivative: LogExpr,
    pub value_extracted: f64,
    pub derivative_extracted: f64,
}

/// `z_q(0)` and `z_q′(0)` for the odd section dimension `m = 2p − 1`, where
/// `z_q(s) = Σ_k (j_{p−q,k}^{−2s} − j_{p−q−1,k}^{−2s})`.
///
/// Computed as a difference of two single-sequence values and checked against
/// `(−1/2, log 2 + log(p−q))`.
pub fn z_q_values(p: usize, q: usize) -> Result<ZqValues> {
    if q >= p {
        return Err(Error::InvalidArgument(format!("need 0 <= q < p, got p = {p}, q = {q}")));
    }
    let n = (p - q) as f64;
    let upper = zeta_at_zero(&BesselSequence::plain(n)?)?;
    let lower = zeta_at_zero(&BesselSequence::plain(n - 1.0)?)?;
    let value = upper.value.clone() - lower.value.clone();
    let derivative = upper.derivative.clone() - lower.derivative.clone();

    let expected_value = LogExpr::rational(-half());
    let expected_derivative = LogExpr::log_i64(2) + LogExpr::log_i64((p - q) as i64);
    if value != expected_value || derivative != expected_derivative {
        return Err(Error::Invariant(format!(
            "z_{q}(0), z_{q}'(0) = {value}, {derivative}; expected {expected_value}, {expected_derivative}"
        )));
    }
    let value_extracted = upper.value_extracted - lower.value_extracted;
    let derivative_extracted = upper.derivative_extracted - lower.derivative_extracted;
    let gap = (value_extracted - expected_value.value()?)
        .abs()
        .max((derivative_extracted - expected_derivative.value()?).abs());
    if !(gap <= DUAL_PATH_TOLERANCE) {
        return Err(Error::Numerical(format!("z_{q} extraction off by {gap:e}")));
    }
    Ok(ZqValues { p, q, value, derivative, value_extracted, derivative_extracted })
}

#[derive(Clone, Debug, Serialize)]
pub struct RayleighSum {
    pub nu: f64,
    pub zeros: usize,
    pub partial: f64,
    pub tail: f64,
    pub total: f64,
    /// `1/(4(ν+1))`
    pub target: f64,
}

/// `Σ_k j_{ν,k}^{−2}` over the first `k` zeros plus the tail model
/// `ψ₁(k + 3/4 + ν/2)/π²` from the asymptotic spacing.
pub fn rayleigh_sum(nu: f64, k: usize) -> Result<RayleighSum> {
    let zeros = BesselSequence::plain(nu)?.values(k)?;
    let partial: f64 = zeros.iter().rev().map(|j| 1.0 / (j * j)).sum();
    let tail = trigamma(k as f64 + 0.75 + 0.5 * nu) / (PI * PI);
    let total = partial + tail;
    Ok(RayleighSum { nu, zeros: k, partial, tail, total, target: 0.25 / (nu + 1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_half_order() {
        let z = zeta_at_zero(&BesselSequence::plain(0.5).unwrap()).unwrap();
        assert_eq!(z.value, LogExpr::rational(Q::new(BigInt::from(-1), BigInt::from(2))));
        // j_{1/2,k} = kπ, so ζ(s) = π^{−2s} ζ_R(2s) and ζ′(0) = log π − log 2π.
        assert_eq!(z.derivative, LogExpr::log_i64(2).scale(&Q::from_integer(BigInt::from(-1))));
        assert!(z.discrepancy().unwrap() < 1e-10);
    }
}
