//! Infinite-product expansions of `I_ν` and `Î_{ν,c} = cI_ν + zI′_ν` over Bessel zeros.

use std::f64::consts::PI;

use serde::Serialize;

use super::functions::{ln_prefactor, series_pair_hp};
use super::hp::{to_f64, working_bits};
use super::zeros::BesselSequence;
use crate::error::{Error, Result};
use crate::special::trigamma;

#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub nu: f64,
    /// `None` for the plain product of `I_ν`
    pub c: Option<f64>,
    pub z: f64,
    pub zeros: usize,
    pub log_lhs: f64,
    pub log_rhs_truncated: f64,
    pub tail: f64,
    pub residual: f64,
}

/// `|log LHS − log(truncated RHS) − tail|` for the product over the first `k` zeros.
///
/// With `c = Some(c)` the left side is `Î_{ν,c}(z)` and the product runs over the
/// zeros of `cJ_ν + xJ′_ν`; with `None` it is `I_ν(z)` over the zeros of `J_ν`.
/// The tail `Σ_{j>k} z²/x_j²` is modelled from the asymptotic spacing of the zeros.
pub fn product_formula_residual(nu: f64, c: Option<f64>, z: f64, k: usize) -> Result<ProductCheck> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidArgument(format!("order {nu} must be positive")));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidArgument(format!("argument {z} must be positive")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one zero".into()));
    }
    if let Some(c) = c {
        if !(nu + c > 0.0) {
            return Err(Error::InvalidArgument(format!("need ν + c > 0, got ν = {nu}, c = {c}")));
        }
    }
    let seq = match c {
        Some(c) => BesselSequence::hatted(nu, c)?,
        None => BesselSequence::plain(nu)?,
    };
    let zeros = seq.values(k)?;
    if z >= zeros[0] {
        return Err(Error::InvalidArgument(format!("z = {z} is not below the first zero {}", zeros[0])));
    }

    // Both sides share the factor (ν+c) z^ν / (2^ν Γ(ν+1)); compare what remains.
    let (s0, t1, _) = series_pair_hp(nu, z, 1.0, working_bits());
    let (s0, t1) = (to_f64(&s0), to_f64(&t1));
    let (normalised, shared) = match c {
        Some(c) => (((nu + c) * s0 + z * t1) / (nu + c), (nu + c).ln() + ln_prefactor(nu, z)),
        None => (s0, ln_prefactor(nu, z)),
    };
    let log_product: f64 = zeros.iter().rev().map(|j| (z * z / (j * j)).ln_1p()).sum();
    let shift = if c.is_some() { -0.75 } else { -0.25 };
    let tail = z * z * trigamma(k as f64 + 1.0 + 0.5 * nu + shift) / (PI * PI);
    let residual = (normalised.ln() - log_product - tail).abs();
    Ok(ProductCheck {
        nu,
        c,
        z,
        zeros: k,
        log_lhs: shared + normalised.ln(),
        log_rhs_truncated: shared + log_product,
        tail,
        residual,
    })
}
