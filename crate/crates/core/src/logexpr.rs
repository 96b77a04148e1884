//! Exact symbolic sums `r + Σ c_a · log(a)` with rational coefficients.
//!
//! Atoms are `log l` (the cone scale), logs of primes, `log π`,
//! `log Γ(x)` at rational `x`, and opaque named symbols. Logs of positive
//! rationals are always factored into prime atoms, so equal values compare
//! equal structurally.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{to_f64, Q};
use crate::special::ln_gamma;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// log of the cone scale l
    ScaleL,
    /// log of a positive integer that is prime (or has no factor below the trial bound)
    LogInt(BigInt),
    /// log π
    Pi,
    /// log Γ(x)
    LogGamma(Q),
    /// named opaque real
    Symbol(String),
}

const TRIAL_BOUND: u64 = 1 << 20;

/// Factorisation of a positive integer by trial division; a cofactor
/// without small divisors is kept whole.
fn factor(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d < TRIAL_BOUND {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogExpr {
    rational: Q,
    terms: BTreeMap<Atom, Q>,
}

impl LogExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: Q) -> Self {
        Self { rational: r, terms: BTreeMap::new() }
    }

    pub fn atom(a: Atom, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(a, c);
        e
    }

    pub fn log_l() -> Self {
        Self::atom(Atom::ScaleL, Q::one())
    }

    pub fn log_pi() -> Self {
        Self::atom(Atom::Pi, Q::one())
    }

    pub fn symbol(name: &str) -> Self {
        Self::atom(Atom::Symbol(name.to_string()), Q::one())
    }

    pub fn log_gamma(x: Q) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::InvalidArgument(format!("log Gamma at non-positive {x}")));
        }
        // Γ(1) = Γ(2) = 1; shift integer arguments to exact logs.
        if x.is_integer() {
            let n = x.to_integer();
            let mut acc = Self::zero();
            let mut k = BigInt::from(2);
            while k < n {
                acc += Self::log_int(&k)?;
                k += 1;
            }
            return Ok(acc);
        }
        // Reduce to the fractional part in (0, 1) with Γ(x+1) = xΓ(x).
        let mut acc = Self::zero();
        let mut y = x;
        while y > Q::one() {
            y -= Q::one();
            acc += Self::log_rational(&y)?;
        }
        if y == Q::new(BigInt::one(), BigInt::from(2)) {
            acc += Self::log_pi().scale(&Q::new(BigInt::one(), BigInt::from(2)));
            return Ok(acc);
        }
        acc.add_term(Atom::LogGamma(y), Q::one());
        Ok(acc)
    }

    pub fn log_int(n: &BigInt) -> Result<Self> {
        Self::log_rational(&Q::from_integer(n.clone()))
    }

    pub fn log_i64(n: i64) -> Self {
        Self::log_int(&BigInt::from(n)).expect("positive integer")
    }

    /// Exact log of a positive rational, factored into prime atoms.
    pub fn log_rational(r: &Q) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument(format!("log of non-positive rational {r}")));
        }
        let mut e = Self::zero();
        for (p, k) in factor(r.numer()) {
            e.add_term(Atom::LogInt(p), Q::from_integer(BigInt::from(k)));
        }
        for (p, k) in factor(r.denom()) {
            e.add_term(Atom::LogInt(p), Q::from_integer(BigInt::from(-k)));
        }
        Ok(e)
    }

    fn add_term(&mut self, a: Atom, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::rational(&self.rational * c);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.is_empty()
    }

    pub fn rational_part(&self) -> &Q {
        &self.rational
    }

    pub fn coeff(&self, a: &Atom) -> Q {
        self.terms.get(a).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff_log_l(&self) -> Q {
        self.coeff(&Atom::ScaleL)
    }

    pub fn coeff_log_2(&self) -> Q {
        self.coeff(&Atom::LogInt(BigInt::from(2)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &Q)> {
        self.terms.iter()
    }

    /// Replaces `log l` by the exact log of a rational scale.
    pub fn substitute_l(&self, l: &Q) -> Result<Self> {
        let c = self.coeff_log_l();
        let mut out = self.clone();
        out.terms.remove(&Atom::ScaleL);
        Ok(out + Self::log_rational(l)?.scale(&c))
    }

    /// Replaces a named symbol by an expression.
    pub fn substitute_symbol(&self, name: &str, value: &LogExpr) -> Self {
        let key = Atom::Symbol(name.to_string());
        let c = self.coeff(&key);
        let mut out = self.clone();
        out.terms.remove(&key);
        out + value.scale(&c)
    }

    pub fn has_symbols(&self) -> bool {
        self.terms.keys().any(|a| matches!(a, Atom::Symbol(_)))
    }

    /// Floating value; `l` is needed when `log l` occurs and every symbol
    /// must be bound.
    pub fn eval(&self, l: Option<f64>, symbols: &HashMap<String, f64>) -> Result<f64> {
        let mut acc = to_f64(&self.rational);
        for (a, c) in &self.terms {
            let v = match a {
                Atom::ScaleL => match l {
                    Some(l) if l > 0.0 => l.ln(),
                    _ => return Err(Error::InvalidArgument("log l needs a positive scale".into())),
                },
                Atom::LogInt(n) => big_ln(n),
                Atom::Pi => std::f64::consts::PI.ln(),
                Atom::LogGamma(x) => ln_gamma(to_f64(x)),
                Atom::Symbol(s) => *symbols
                    .get(s)
                    .ok_or_else(|| Error::InvalidArgument(format!("unbound symbol {s}")))?,
            };
            acc += to_f64(c) * v;
        }
        Ok(acc)
    }

    /// Value with no scale and no symbols.
    pub fn value(&self) -> Result<f64> {
        self.eval(None, &HashMap::new())
    }

    pub fn report(&self, l: Option<f64>) -> ExactReport {
        let mut log_int_terms = Vec::new();
        let mut log_gamma_terms = Vec::new();
        let mut symbols = BTreeMap::new();
        let mut coeff_log_pi = Q::zero();
        for (a, c) in &self.terms {
            match a {
                Atom::LogInt(n) if *n != BigInt::from(2) => {
                    log_int_terms.push((n.to_string(), c.to_string()))
                }
                Atom::LogGamma(x) => log_gamma_terms.push((x.to_string(), c.to_string())),
                Atom::Symbol(s) => {
                    symbols.insert(s.clone(), c.to_string());
                }
                Atom::Pi => coeff_log_pi = c.clone(),
                _ => {}
            }
        }
        let float = if self.has_symbols() { None } else { self.eval(l, &HashMap::new()).ok() };
        ExactReport {
            rational: self.rational.to_string(),
            coeff_log_l: self.coeff_log_l().to_string(),
            coeff_log_2: self.coeff_log_2().to_string(),
            coeff_log_pi: coeff_log_pi.to_string(),
            log_int_terms,
            log_gamma_terms,
            symbols,
            float,
        }
    }
}

fn big_ln(n: &BigInt) -> f64 {
    match n.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let bits = n.bits();
            let shifted: BigInt = n >> (bits - 60);
            shifted.to_f64().unwrap_or(f64::NAN).ln() + (bits - 60) as f64 * std::f64::consts::LN_2
        }
    }
}

/// Serializable view of a [`LogExpr`]: `rational + coeff_log_l·log l +
/// coeff_log_2·log 2 + coeff_log_pi·log π + Σ c·log n + Σ c·log Γ(x) + Σ c·symbol`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExactReport {
    pub rational: String,
    pub coeff_log_l: String,
    pub coeff_log_2: String,
    pub coeff_log_pi: String,
    pub log_int_terms: Vec<(String, String)>,
    pub log_gamma_terms: Vec<(String, String)>,
    pub symbols: BTreeMap<String, String>,
    pub float: Option<f64>,
}

impl Serialize for LogExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.report(None).serialize(s)
    }
}

impl fmt::Display for LogExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rational.is_zero() || self.terms.is_empty() {
            parts.push(self.rational.to_string());
        }
        for (a, c) in &self.terms {
            let name = match a {
                Atom::ScaleL => "log(l)".to_string(),
                Atom::LogInt(n) => format!("log({n})"),
                Atom::Pi => "log(pi)".to_string(),
                Atom::LogGamma(x) => format!("logGamma({x})"),
                Atom::Symbol(s) => s.clone(),
            };
            if c.is_one() {
                parts.push(name);
            } else {
                parts.push(format!("({c})*{name}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for LogExpr {
    type Output = LogExpr;
    fn add(mut self, rhs: LogExpr) -> LogExpr {
        self += rhs;
        self
    }
}

impl AddAssign for LogExpr {
    fn add_assign(&mut self, rhs: LogExpr) {
        self.rational += rhs.rational;
        for (a, c) in rhs.terms {
            self.add_term(a, c);
        }
    }
}

impl Sub for LogExpr {
    type Output = LogExpr;
    fn sub(self, rhs: LogExpr) -> LogExpr {
        self + (-rhs)
    }
}

impl SubAssign for LogExpr {
    fn sub_assign(&mut self, rhs: LogExpr) {
        *self += -rhs;
    }
}

impl Neg for LogExpr {
    type Output = LogExpr;
    fn neg(self) -> LogExpr {
        self.scale(&-Q::one())
    }
}

impl Mul<&Q> for LogExpr {
    type Output = LogExpr;
    fn mul(self, rhs: &Q) -> LogExpr {
        self.scale(rhs)
    }
}

/// `gcd`-reduced exact log of `a/b` for positive integers.
pub fn log_ratio(a: i64, b: i64) -> LogExpr {
    let g = a.gcd(&b);
    LogExpr::log_rational(&Q::new(BigInt::from(a / g), BigInt::from(b / g))).expect("positive ratio")
}
