//! Double-precision gamma-family helpers used for reporting and tail models.

use std::f64::consts::PI;

/// `ln Γ(x)` for `x > 0`, via recurrence up to `x ≥ 10` and the Stirling series.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument");
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift -= y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // Bernoulli terms B_{2k}/(2k(2k-1) y^{2k-1}), k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let mut series = 0.0;
    let mut p = inv;
    for c in C {
        series += c * p;
        p *= inv2;
    }
    shift + (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series
}

/// Trigamma `ψ₁(x) = Σ_{k≥0} (x+k)^{-2}` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    assert!(x > 0.0, "trigamma needs a positive argument");
    let mut acc = 0.0;
    let mut y = x;
    while y < 20.0 {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // 1/y + 1/(2y²) + Σ B_{2k}/y^{2k+1}
    const B: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let mut series = inv + 0.5 * inv2;
    let mut p = inv2 * inv;
    for b in B {
        series += b * p;
        p *= inv2;
    }
    acc + series
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k+a)^{-s}` for real `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0);
    let n = 20.0;
    let mut acc = 0.0;
    let mut y = a;
    while y < n {
        acc += y.powf(-s);
        y += 1.0;
    }
    // Euler-Maclaurin from y.
    let mut tail = y.powf(1.0 - s) / (s - 1.0) + 0.5 * y.powf(-s);
    const B: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let mut fact = 1.0;
    let mut rising = s;
    let mut pow = y.powf(-s - 1.0);
    for (k, b) in B.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        fact *= two_k * (two_k - 1.0);
        tail += b / fact * rising * pow;
        rising *= (s + two_k - 1.0) * (s + two_k);
        pow /= y * y;
    }
    acc + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-15);
        assert!((ln_gamma(0.5) - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma(100.5) - 361.4355404677776).abs() < 1e-10);
    }

    #[test]
    fn trigamma_values() {
        assert!((trigamma(1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((trigamma(0.5) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_matches_riemann() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0) - PI.powi(4) / 90.0).abs() < 1e-14);
    }
}
