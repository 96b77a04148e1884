//! Thin layer over `astro-float` for the few multi-precision operations we need.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in significant decimal digits.
pub const DEFAULT_DIGITS: usize = 50;

/// Working precision in decimal digits; `TORSIONLAB_PRECISION` overrides the default.
pub fn working_digits() -> usize {
    std::env::var("TORSIONLAB_PRECISION")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&d| (16..=2000).contains(&d))
        .unwrap_or(DEFAULT_DIGITS)
}

/// Working precision in bits, rounded up to whole 64-bit words.
pub fn working_bits() -> usize {
    let bits = (working_digits() as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8;
    bits.div_ceil(64) * 64
}

thread_local! {
    static CONSTS: RefCell<Option<Consts>> = const { RefCell::new(None) };
}

pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> Result<T> {
    CONSTS.with(|cell| {
        let mut slot = cell.borrow_mut();
        if slot.is_none() {
            *slot = Some(Consts::new().map_err(|e| Error::Numerical(format!("constant cache: {e:?}")))?);
        }
        Ok(f(slot.as_mut().expect("initialised above")))
    })
}

pub(crate) fn hp(v: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(v, p)
}

/// Nearest-below double; the top 64 mantissa bits are enough for that.
pub(crate) fn to_f64(b: &BigFloat) -> f64 {
    if b.is_zero() {
        return 0.0;
    }
    match b.as_raw_parts() {
        Some((words, _, sign, e, _)) => {
            let top = *words.last().expect("non-empty mantissa") as f64;
            let v = top * 2f64.powi(e - 64);
            if sign == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None if b.is_inf_pos() => f64::INFINITY,
        None if b.is_inf_neg() => f64::NEG_INFINITY,
        None => f64::NAN,
    }
}

/// `(ln |b|)` as a double, computed without overflow for huge exponents.
pub(crate) fn ln_abs(b: &BigFloat) -> f64 {
    match b.as_raw_parts() {
        Some((words, _, _, e, _)) => {
            let top = *words.last().expect("non-empty mantissa") as f64 / 2f64.powi(64);
            top.ln() + e as f64 * std::f64::consts::LN_2
        }
        None => f64::NAN,
    }
}

pub(crate) fn ln(b: &BigFloat, p: usize) -> Result<BigFloat> {
    with_consts(|cc| b.ln(p, RM, cc))
}

// B_{2k} for k = 1..15 as (numerator, denominator).
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// `Γ(1 + f)` for `0 ≤ f ≤ 1`, correctly rounded up to an ulp or so.
fn gamma_one_plus_uncached(f: f64) -> Result<f64> {
    let p = 192;
    const SHIFT: u32 = 30;
    let z = hp(f + 1.0 + SHIFT as f64, p);
    with_consts(|cc| {
        let half = hp(0.5, p);
        let lnz = z.ln(p, RM, cc);
        let two_pi = cc.pi(p, RM).mul(&hp(2.0, p), p, RM);
        let mut acc = z.sub(&half, p, RM).mul(&lnz, p, RM).sub(&z, p, RM);
        acc = acc.add(&two_pi.ln(p, RM, cc).mul(&half, p, RM), p, RM);
        let inv = hp(1.0, p).div(&z, p, RM);
        let inv2 = inv.mul(&inv, p, RM);
        let mut pow = inv.clone();
        for (k, (num, den)) in BERNOULLI.iter().enumerate() {
            let two_k = 2.0 * (k as f64 + 1.0);
            let coeff = hp(*num, p).div(&hp(den * two_k * (two_k - 1.0), p), p, RM);
            acc = acc.add(&coeff.mul(&pow, p, RM), p, RM);
            pow = pow.mul(&inv2, p, RM);
        }
        let mut g = acc.exp(p, RM, cc);
        for i in 1..=SHIFT {
            g = g.div(&hp(f + i as f64, p), p, RM);
        }
        to_f64(&g)
    })
}

thread_local! {
    static GAMMA_CACHE: RefCell<std::collections::HashMap<u64, f64>> = RefCell::new(Default::default());
}

pub(crate) fn gamma_one_plus(f: f64) -> Result<f64> {
    if let Some(v) = GAMMA_CACHE.with(|c| c.borrow().get(&f.to_bits()).copied()) {
        return Ok(v);
    }
    let v = gamma_one_plus_uncached(f)?;
    GAMMA_CACHE.with(|c| c.borrow_mut().insert(f.to_bits(), v));
    Ok(v)
}

/// Solves the square system `a x = rhs` by Gaussian elimination with partial pivoting.
pub(crate) fn solve(mut a: Vec<Vec<BigFloat>>, mut rhs: Vec<BigFloat>, p: usize) -> Result<Vec<BigFloat>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                let (x, y) = (a[i][col].abs(), a[j][col].abs());
                x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if a[pivot][col].is_zero() {
            return Err(Error::Singular("multi-precision fit".into()));
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col].div(&a[col][col], p, RM);
            for k in col..n {
                let t = f.mul(&a[col][k], p, RM);
                a[row][k] = a[row][k].sub(&t, p, RM);
            }
            let t = f.mul(&rhs[col], p, RM);
            rhs[row] = rhs[row].sub(&t, p, RM);
        }
    }
    let mut x = vec![BigFloat::from_f64(0.0, p); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for k in row + 1..n {
            acc = acc.sub(&a[row][k].mul(&x[k], p, RM), p, RM);
        }
        x[row] = acc.div(&a[row][row], p, RM);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converts_back_to_double() {
        for v in [1.0, -2.5, 3.0e-200, 7.25e150, std::f64::consts::PI] {
            assert_eq!(to_f64(&hp(v, 128)), v);
        }
        let third = hp(1.0, 256).div(&hp(3.0, 256), 256, RM);
        assert!((to_f64(&third) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn gamma_reference_values() {
        assert_eq!(gamma_one_plus(0.0).unwrap(), 1.0);
        assert!((gamma_one_plus(0.5).unwrap() - 0.886226925452758).abs() < 2e-16);
        assert!((gamma_one_plus(1.0).unwrap() - 1.0).abs() < 2e-16);
    }

    #[test]
    fn log_of_huge_value() {
        let x = hp(2.0, 128).powi(5000, 128, RM);
        assert!((ln_abs(&x) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        let l = ln(&hp(10.0, 192), 192).unwrap();
        assert!((to_f64(&l) - 10f64.ln()).abs() < 1e-15);
    }
}
