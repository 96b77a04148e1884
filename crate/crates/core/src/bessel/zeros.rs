//! Positive zeros of `J_ν`, `J′_ν` and `cJ_ν + xJ′_ν`, with residual certificates.

use std::f64::consts::PI;
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::functions::j_pair_scaled;
use crate::error::{Error, Result};

/// Certified residual bound carried by every cached zero.
pub const RESIDUAL_BOUND: f64 = 1e-12;

const SCAN_STEP: f64 = 0.25;
const MIN_SPACING: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "c", rename_all = "lowercase")]
pub enum Mode {
    /// zeros of `J_ν`
    Plain,
    /// zeros of `J′_ν`; for `ν = 0` these are the zeros of `J_1`
    Derivative,
    /// zeros of `cJ_ν + xJ′_ν`
    Hatted(f64),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Plain => write!(f, "plain"),
            Mode::Derivative => write!(f, "derivative"),
            Mode::Hatted(c) => write!(f, "hatted(c={c})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedZero {
    pub index: usize,
    pub value: f64,
    /// `|f(value)|`, divided by `|c| + ν + value` in the hatted modes
    pub residual: f64,
    /// width of the final sign-change bracket
    pub error_bound: f64,
}

#[derive(Debug)]
struct ScanState {
    zeros: Vec<CertifiedZero>,
    x: f64,
    g: f64,
}

/// The zeros of one Bessel-type function, computed lazily and cached.
///
/// The cache only grows; readers never see a partially refined zero.
#[derive(Debug)]
pub struct BesselSequence {
    nu: f64,
    mode: Mode,
    state: RwLock<ScanState>,
}

impl Clone for BesselSequence {
    fn clone(&self) -> Self {
        let s = self.state.read().expect("zero cache poisoned");
        Self { nu: self.nu, mode: self.mode, state: RwLock::new(ScanState { zeros: s.zeros.clone(), x: s.x, g: s.g }) }
    }
}

impl BesselSequence {
    pub fn new(nu: f64, mode: Mode) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::InvalidArgument(format!("order {nu} must be finite and non-negative")));
        }
        if let Mode::Hatted(c) = mode {
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!("parameter c = {c} must be finite")));
            }
        }
        let mut seq = Self { nu, mode, state: RwLock::new(ScanState { zeros: Vec::new(), x: 0.0, g: 0.0 }) };
        let x0 = seq.scan_start();
        let g0 = seq.sign_value(x0);
        seq.state = RwLock::new(ScanState { zeros: Vec::new(), x: x0, g: g0 });
        Ok(seq)
    }

    pub fn plain(nu: f64) -> Result<Self> {
        Self::new(nu, Mode::Plain)
    }

    pub fn derivative(nu: f64) -> Result<Self> {
        Self::new(nu, Mode::Derivative)
    }

    pub fn hatted(nu: f64, c: f64) -> Result<Self> {
        Self::new(nu, Mode::Hatted(c))
    }

    pub fn order(&self) -> f64 {
        self.nu
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `c` in `cJ_ν + xJ′_ν`, or `None` for the plain mode.
    pub fn hatted_parameter(&self) -> Option<f64> {
        match self.mode {
            Mode::Plain => None,
            Mode::Derivative => Some(0.0),
            Mode::Hatted(c) => Some(c),
        }
    }

    fn scan_start(&self) -> f64 {
        // No zero lies below ν in the plain mode, nor below j′_{ν,1} > ν when c ≥ 0.
        let lower = match self.hatted_parameter() {
            None => self.nu,
            Some(c) if c >= 0.0 => self.nu,
            Some(_) => 0.0,
        };
        (0.999 * lower).max(1e-3)
    }

    /// `(g, f)`: `g` has the sign of `f` and is what the scan uses; `f` is the true value.
    fn eval_pair(&self, x: f64) -> (f64, f64) {
        let (a, b, p) = j_pair_scaled(self.nu, x);
        let g = match self.hatted_parameter() {
            None => a,
            Some(c) => (c + self.nu) * a - x * b,
        };
        (g, p * g)
    }

    fn sign_value(&self, x: f64) -> f64 {
        self.eval_pair(x).0
    }

    /// The function whose zeros this sequence holds.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_pair(x).1
    }

    fn residual(&self, x: f64) -> f64 {
        let f = self.eval(x).abs();
        match self.hatted_parameter() {
            None => f,
            Some(c) => f / (c.abs() + self.nu + x),
        }
    }

    /// Number of zeros already cached.
    pub fn cached(&self) -> usize {
        self.state.read().expect("zero cache poisoned").zeros.len()
    }

    /// The `k`-th positive zero (`k ≥ 1`).
    pub fn zero(&self, k: usize) -> Result<CertifiedZero> {
        if k == 0 {
            return Err(Error::InvalidArgument("zero index starts at 1".into()));
        }
        self.ensure(k)?;
        Ok(self.state.read().expect("zero cache poisoned").zeros[k - 1])
    }

    /// The first `n` zeros.
    pub fn zeros(&self, n: usize) -> Result<Vec<CertifiedZero>> {
        self.ensure(n)?;
        Ok(self.state.read().expect("zero cache poisoned").zeros[..n].to_vec())
    }

    /// The first `n` zero values.
    pub fn values(&self, n: usize) -> Result<Vec<f64>> {
        Ok(self.zeros(n)?.into_iter().map(|z| z.value).collect())
    }

    fn ensure(&self, n: usize) -> Result<()> {
        if self.cached() >= n {
            return Ok(());
        }
        let mut st = self.state.write().expect("zero cache poisoned");
        while st.zeros.len() < n {
            let z = self.next_zero(&mut st)?;
            st.zeros.push(z);
        }
        Ok(())
    }

    fn next_zero(&self, st: &mut ScanState) -> Result<CertifiedZero> {
        let index = st.zeros.len() + 1;
        let limit = st.x + 64.0 + 4.0 * self.nu;
        let (mut x, mut g) = (st.x, st.g);
        while x < limit {
            let xn = x + SCAN_STEP;
            let gn = self.sign_value(xn);
            if gn == 0.0 || g.signum() != gn.signum() {
                let (value, width) = if gn == 0.0 { (xn, 0.0) } else { self.refine(x, g, xn, gn) };
                // Step past the zero so the next scan starts on its far side.
                let restart = xn + if gn == 0.0 { SCAN_STEP } else { 0.0 };
                st.x = restart;
                st.g = if gn == 0.0 { self.sign_value(restart) } else { gn };
                let z = CertifiedZero { index, value, residual: self.residual(value), error_bound: width };
                self.certify(&z, st.zeros.last())?;
                return Ok(z);
            }
            x = xn;
            g = gn;
        }
        Err(Error::Numerical(format!(
            "no sign change for zero {index} of order {} ({}) up to x = {limit:.3}",
            self.nu, self.mode
        )))
    }

    fn certify(&self, z: &CertifiedZero, prev: Option<&CertifiedZero>) -> Result<()> {
        if !(z.residual < RESIDUAL_BOUND) {
            return Err(Error::Numerical(format!(
                "zero {} of order {} ({}) at {} has residual {:e}",
                z.index, self.nu, self.mode, z.value, z.residual
            )));
        }
        if let Some(p) = prev {
            if z.value - p.value < MIN_SPACING {
                return Err(Error::Numerical(format!(
                    "zeros {} and {} of order {} too close to separate by scanning",
                    p.index, z.index, self.nu
                )));
            }
        }
        if let Some(guess) = mcmahon(self.nu, self.mode, z.index) {
            if guess > 4.0 * (self.nu + 1.0).powi(2) && (guess - z.value).abs() > 0.5 {
                return Err(Error::Invariant(format!(
                    "zero {} of order {} at {} is not the asymptotic {guess}",
                    z.index, self.nu, z.value
                )));
            }
        }
        Ok(())
    }

    /// Illinois variant of regula falsi on a sign-change bracket.
    fn refine(&self, a: f64, ga: f64, b: f64, gb: f64) -> (f64, f64) {
        let (mut a, mut ga, mut b, mut gb) = (a, ga, b, gb);
        for _ in 0..200 {
            let width = (b - a).abs();
            if width <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
                break;
            }
            let mut x = b - gb * (b - a) / (gb - ga);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if !(x > lo && x < hi) {
                x = 0.5 * (a + b);
            }
            let gx = self.sign_value(x);
            if gx == 0.0 {
                return (x, 0.0);
            }
            if gx.signum() != gb.signum() {
                a = b;
                ga = gb;
            } else {
                ga *= 0.5;
            }
            b = x;
            gb = gx;
        }
        let x = if ga.abs() < gb.abs() { a } else { b };
        (x, (b - a).abs())
    }

    /// CSV with header `index,value,residual_bound`.
    pub fn to_csv(&self, n: usize) -> Result<String> {
        let mut out = String::from("index,value,residual_bound\n");
        for z in self.zeros(n)? {
            out.push_str(&format!("{},{:.17e},{:.3e}\n", z.index, z.value, z.residual));
        }
        Ok(out)
    }
}

/// `find_zero` as a free function.
pub fn find_zero(seq: &BesselSequence, k: usize) -> Result<f64> {
    Ok(seq.zero(k)?.value)
}

/// McMahon's large-`k` expansion, for the plain and derivative modes.
pub fn mcmahon(nu: f64, mode: Mode, k: usize) -> Option<f64> {
    let (nu, derivative) = match mode {
        Mode::Plain => (nu, false),
        Mode::Hatted(c) if c != 0.0 => return None,
        _ if nu == 0.0 => (1.0, false),
        _ => (nu, true),
    };
    let mu = 4.0 * nu * nu;
    let k = k as f64;
    if derivative {
        let b = (k + 0.5 * nu - 0.75) * PI;
        let e = 8.0 * b;
        Some(
            b - (mu + 3.0) / e
                - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * e.powi(3))
                - 32.0 * (83.0 * mu.powi(3) + 2075.0 * mu * mu - 3039.0 * mu + 3537.0) / (15.0 * e.powi(5)),
        )
    } else {
        let b = (k + 0.5 * nu - 0.25) * PI;
        let e = 8.0 * b;
        Some(
            b - (mu - 1.0) / e
                - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
                - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5)),
        )
    }
}

/// Checks `j_{ν,k} < j_{ν+1,k} < j_{ν,k+1}` for `k ≤ k_max`.
pub fn interlacing_holds(nu: f64, k_max: usize) -> Result<bool> {
    let a = BesselSequence::plain(nu)?.values(k_max + 1)?;
    let b = BesselSequence::plain(nu + 1.0)?.values(k_max)?;
    Ok((0..k_max).all(|k| a[k] < b[k] && b[k] < a[k + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zero_of_j0() {
        let s = BesselSequence::plain(0.0).unwrap();
        let z = s.zero(1).unwrap();
        assert!((z.value - 2.404825557695773).abs() < 1e-12);
        assert!(z.residual < RESIDUAL_BOUND);
    }

    #[test]
    fn derivative_zeros() {
        let d = BesselSequence::derivative(1.0).unwrap();
        assert!((d.zero(1).unwrap().value - 1.8411837813406593).abs() < 1e-12);
        let d0 = BesselSequence::derivative(0.0).unwrap();
        assert!((d0.zero(1).unwrap().value - 3.8317059702075125).abs() < 1e-12);
    }

    #[test]
    fn rejects_index_zero() {
        let s = BesselSequence::plain(1.0).unwrap();
        assert!(s.zero(0).is_err());
    }
}
