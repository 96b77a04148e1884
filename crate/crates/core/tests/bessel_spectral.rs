use std::f64::consts::PI;

use num_complex::Complex64;
use torsionlab::bessel::{
    bessel_eval, cone_spectrum, find_zero, interlacing_holds, mcmahon, product_formula_residual, rayleigh_sum,
    scale_factor, torsion_zeta_partial, z_q_values, zeta_at_zero, BesselSequence, BoundaryCondition,
    ConeSpectrumInput, Family, Kind, Mode, SectionEigenvalue, RESIDUAL_BOUND,
};
use torsionlab::linalg::Q;
use torsionlab::logexpr::LogExpr;
use torsionlab::Error;

#[test]
fn half_order_zeros_are_multiples_of_pi() {
    let s = BesselSequence::plain(0.5).unwrap();
    for z in s.zeros(100).unwrap() {
        assert!((z.value - z.index as f64 * PI).abs() < 1e-12, "k = {}", z.index);
        assert!(z.residual < RESIDUAL_BOUND);
        assert!(z.error_bound < 1e-12);
    }
}

#[test]
fn interlacing_for_listed_orders() {
    for nu in [0.0, 0.5, 1.0, 2.0, 5.0] {
        assert!(interlacing_holds(nu, 100).unwrap(), "nu = {nu}");
    }
}

#[test]
fn zeros_track_mcmahon() {
    for (nu, mode) in [(0.0, Mode::Plain), (3.0, Mode::Plain), (2.0, Mode::Derivative), (0.0, Mode::Derivative)] {
        let s = BesselSequence::new(nu, mode).unwrap();
        for k in [20, 50, 100] {
            let guess = mcmahon(nu, mode, k).unwrap();
            assert!((s.zero(k).unwrap().value - guess).abs() < 1e-6, "nu={nu} {mode} k={k}");
        }
    }
}

#[test]
fn residual_certificates_for_every_mode() {
    let seqs = [
        BesselSequence::plain(7.3).unwrap(),
        BesselSequence::derivative(4.0).unwrap(),
        BesselSequence::hatted(1.0, 1.0).unwrap(),
        BesselSequence::hatted(2.0, -1.0).unwrap(),
        BesselSequence::hatted(1.5, -1.5).unwrap(),
        BesselSequence::hatted(0.0, 0.5).unwrap(),
    ];
    for s in &seqs {
        let zs = s.zeros(60).unwrap();
        assert!(zs.windows(2).all(|w| w[0].value < w[1].value));
        assert!(zs.iter().all(|z| z.value > 0.0 && z.residual < RESIDUAL_BOUND));
    }
    // ĵ_{1,1,1}: J_1(x) + xJ′_1(x) = 0.
    let x = find_zero(&seqs[2], 1).unwrap();
    let v = bessel_eval(1.0, x, Kind::J).unwrap() + x * bessel_eval(1.0, x, Kind::JPrime).unwrap();
    assert!(v.abs() < 1e-12);
    // c = −ν leaves −xJ_{ν+1}.
    let a = seqs[4].values(5).unwrap();
    let b = BesselSequence::plain(2.5).unwrap().values(5).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn derivative_mode_matches_hatted_zero_parameter() {
    let d = BesselSequence::derivative(3.0).unwrap().values(10).unwrap();
    let h = BesselSequence::hatted(3.0, 0.0).unwrap().values(10).unwrap();
    assert_eq!(d, h);
}

#[test]
fn j0_self_consistency() {
    let j = find_zero(&BesselSequence::plain(0.0).unwrap(), 1).unwrap();
    assert!((j - 2.404825557695773).abs() < 1e-12);
    assert!(bessel_eval(0.0, j, Kind::J).unwrap().abs() < RESIDUAL_BOUND);
}

#[test]
fn i1_against_partial_sums() {
    // I_1(1) = Σ (1/2)^{2k+1}/(k!(k+1)!); the remainder after 12 terms is below 1e-20.
    let mut sum = 0.0;
    let mut term = 0.5;
    for k in 0..12 {
        sum += term;
        term *= 0.25 / ((k + 1) as f64 * (k + 2) as f64);
    }
    let v = bessel_eval(1.0, 1.0, Kind::I).unwrap();
    assert!((v - sum).abs() < 1e-15 * sum);
    // I′_1 = I_0 − I_1/x
    let d = bessel_eval(1.0, 1.0, Kind::IPrime).unwrap();
    let i0 = bessel_eval(0.0, 1.0, Kind::I).unwrap();
    assert!((d - (i0 - v)).abs() < 1e-15);
}

#[test]
fn invalid_arguments_rejected() {
    assert!(matches!(bessel_eval(-1.0, 1.0, Kind::J), Err(Error::InvalidArgument(_))));
    assert!(matches!(bessel_eval(1.0, 0.0, Kind::J), Err(Error::InvalidArgument(_))));
    assert!(BesselSequence::plain(f64::NAN).is_err());
}

#[test]
fn csv_export() {
    let csv = BesselSequence::plain(0.5).unwrap().to_csv(3).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "index,value,residual_bound");
    assert_eq!(lines.len(), 4);
    let v: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn product_formula_grid() {
    for (nu, c) in [(1.0, 0.0), (2.0, 1.0), (2.0, -1.0), (3.0, 2.0)] {
        for z in [0.5, 1.0] {
            let mut last = f64::INFINITY;
            for k in [10, 100, 1000, 10_000] {
                let r = product_formula_residual(nu, Some(c), z, k).unwrap();
                assert!(r.residual < last, "nu={nu} c={c} z={z} K={k}: {} !< {last}", r.residual);
                last = r.residual;
            }
            assert!(last < 1e-6, "nu={nu} c={c} z={z}: {last}");
        }
    }
}

#[test]
fn product_formula_plain_and_small_z() {
    let r = product_formula_residual(2.0, None, 1.0, 10_000).unwrap();
    assert!(r.residual < 1e-6);
    let tiny = product_formula_residual(2.0, Some(1.0), 1e-4, 10).unwrap();
    assert!(tiny.residual < 1e-12);
    assert!((tiny.log_lhs - tiny.log_rhs_truncated - tiny.tail).abs() < 1e-12);
}

#[test]
fn product_formula_rejections() {
    assert!(product_formula_residual(1.0, Some(0.0), 2.0, 5).is_err());
    assert!(product_formula_residual(2.0, Some(-2.0), 0.5, 5).is_err());
    assert!(product_formula_residual(0.0, None, 0.5, 5).is_err());
}

#[test]
fn zeta_values_closed_forms() {
    let half = Q::new(1.into(), 2.into());
    for nu in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let z = zeta_at_zero(&BesselSequence::plain(nu).unwrap()).unwrap();
        let expected = -(Q::from_float(nu).unwrap() * &half + Q::new(1.into(), 4.into()));
        assert_eq!(z.value, LogExpr::rational(expected));
        assert!(z.discrepancy().unwrap() < 1e-10, "nu = {nu}");
    }
    for (nu, c) in [(1.0, 1.0), (2.0, -1.0), (0.5, 0.5), (3.0, 0.0)] {
        let z = zeta_at_zero(&BesselSequence::hatted(nu, c).unwrap()).unwrap();
        assert!(z.discrepancy().unwrap() < 1e-10, "nu = {nu}, c = {c}");
    }
    let d0 = zeta_at_zero(&BesselSequence::derivative(0.0).unwrap()).unwrap();
    let p1 = zeta_at_zero(&BesselSequence::plain(1.0).unwrap()).unwrap();
    assert_eq!(d0.derivative, p1.derivative);
}

#[test]
fn z_q_closed_values() {
    for p in 1..=5usize {
        for q in 0..p {
            let v = z_q_values(p, q).unwrap();
            assert_eq!(v.value, LogExpr::rational(Q::new((-1).into(), 2.into())));
            assert_eq!(v.derivative, LogExpr::log_i64(2) + LogExpr::log_i64((p - q) as i64));
            assert!((v.derivative_extracted - (2.0 * (p - q) as f64).ln()).abs() < 1e-10);
        }
    }
    assert_eq!(z_q_values(3, 1).unwrap().derivative, LogExpr::log_i64(4));
    assert!(z_q_values(2, 2).is_err());
}

#[test]
fn rayleigh_sums() {
    let r = rayleigh_sum(0.0, 100_000).unwrap();
    assert!((r.total - 0.25).abs() < 1e-8, "{r:?}");
    let h = rayleigh_sum(0.5, 2000).unwrap();
    assert!((h.total - 1.0 / 6.0).abs() < 1e-10);
}

#[test]
fn circle_spectrum_degree_zero() {
    let input = ConeSpectrumInput::circle(1.0, 6);
    let spec = cone_spectrum(&input, BoundaryCondition::Absolute, 0, 6, 8).unwrap();
    assert!(spec.iter().all(|e| e.value > 0.0));
    let families: std::collections::BTreeSet<Family> = spec.iter().map(|e| e.family).collect();
    assert_eq!(families, [Family::CoexactHatted, Family::Harmonic].into_iter().collect());
    for e in &spec {
        if e.family == Family::CoexactHatted {
            assert_eq!(e.order, e.n as f64);
            assert_eq!(e.c, Some(0.0));
            assert_eq!(e.multiplicity, 2);
        }
    }
    // increasing in k within each family and n
    for w in spec.iter().filter(|e| e.family == Family::Harmonic).collect::<Vec<_>>().windows(2) {
        assert!(w[0].value < w[1].value);
    }
}

#[test]
fn circle_spectrum_six_families_and_scaling() {
    let a = ConeSpectrumInput::circle(1.5, 5);
    let b = ConeSpectrumInput::circle(3.0, 5);
    let mut seen = std::collections::BTreeSet::new();
    for q in 0..=2 {
        let sa = cone_spectrum(&a, BoundaryCondition::Absolute, q, 5, 6).unwrap();
        let sb = cone_spectrum(&b, BoundaryCondition::Absolute, q, 5, 6).unwrap();
        assert_eq!(sa.len(), sb.len());
        for (x, y) in sa.iter().zip(&sb) {
            assert!(x.value > 0.0);
            assert_eq!(y.value, x.value / 4.0);
            assert_eq!(x.family, y.family);
        }
        seen.extend(sa.iter().map(|e| e.family));
    }
    assert_eq!(seen.len(), 6);
}

#[test]
fn spectrum_input_order_invariance() {
    let mut shuffled = ConeSpectrumInput::circle(1.0, 6);
    shuffled.coexact[0].reverse();
    shuffled.coexact[0].swap(1, 3);
    let a = cone_spectrum(&ConeSpectrumInput::circle(1.0, 6), BoundaryCondition::Absolute, 1, 6, 5).unwrap();
    let b = cone_spectrum(&shuffled, BoundaryCondition::Absolute, 1, 6, 5).unwrap();
    assert_eq!(a, b);
}

#[test]
fn spectrum_edge_cases() {
    let empty = ConeSpectrumInput::new(1, 1.0, vec![Vec::new(), Vec::new()], vec![0, 0]).unwrap();
    assert!(cone_spectrum(&empty, BoundaryCondition::Absolute, 1, 10, 10).unwrap().is_empty());
    assert!(ConeSpectrumInput::new(1, 1.0, vec![Vec::new()], vec![1, 1]).is_err());
    assert!(ConeSpectrumInput::new(1, 1.0, vec![Vec::new(), Vec::new()], vec![1]).is_err());
    let zero_mode = vec![vec![SectionEigenvalue { lambda: 0.0, coexact: 1 }], Vec::new()];
    assert!(ConeSpectrumInput::new(1, 1.0, zero_mode, vec![1, 1]).is_err());
    // relative degree q mirrors absolute degree m + 1 − q
    let c = ConeSpectrumInput::circle(1.0, 4);
    assert_eq!(
        cone_spectrum(&c, BoundaryCondition::Relative, 0, 4, 4).unwrap(),
        cone_spectrum(&c, BoundaryCondition::Absolute, 2, 4, 4).unwrap()
    );
}

#[test]
fn circle_spectrum_weyl_growth() {
    let input = ConeSpectrumInput::circle(1.0, 60);
    let mut all = Vec::new();
    for q in 0..=2 {
        for e in cone_spectrum(&input, BoundaryCondition::Absolute, q, 60, 60).unwrap() {
            all.push((e.value, e.multiplicity));
        }
    }
    let count = |lambda: f64| all.iter().filter(|e| e.0 <= lambda).map(|e| e.1).sum::<usize>() as f64;
    let (l1, l2) = (400.0, 1600.0);
    let slope = (count(l2) / count(l1)).ln() / (l2 / l1).ln();
    assert!((slope - 1.0).abs() < 0.1, "slope {slope}");
}

#[test]
fn torsion_zeta_scaling_is_exact() {
    let s = Complex64::new(2.5, 0.75);
    let one = torsion_zeta_partial(&ConeSpectrumInput::circle(1.0, 6), s, 6, 20).unwrap();
    assert_eq!(one.value, one.reduced);
    for l in [0.5, 2.0, 3.0] {
        let t = torsion_zeta_partial(&ConeSpectrumInput::circle(l, 6), s, 6, 20).unwrap();
        assert_eq!(t.value, scale_factor(l, s) * one.value);
    }
}

#[test]
fn torsion_zeta_z_block_direct_sum() {
    let s = Complex64::new(2.0, 0.0);
    let t = torsion_zeta_partial(&ConeSpectrumInput::circle(1.0, 3), s, 3, 200).unwrap();
    let j1 = BesselSequence::plain(1.0).unwrap().values(200).unwrap();
    let j0 = BesselSequence::plain(0.0).unwrap().values(200).unwrap();
    let direct: f64 = j1.iter().zip(&j0).map(|(a, b)| a.powi(-4) - b.powi(-4)).sum();
    assert!((t.z_blocks[0].re - direct).abs() < 1e-14);
    assert_eq!(t.z_blocks[0].im, 0.0);
}

#[test]
fn torsion_zeta_converges_in_k() {
    let s = Complex64::new(6.0, 0.0);
    let input = ConeSpectrumInput::circle(1.0, 8);
    let a = torsion_zeta_partial(&input, s, 8, 20).unwrap().value.re;
    let b = torsion_zeta_partial(&input, s, 8, 40).unwrap().value.re;
    assert!(((a - b) / b).abs() < 1e-6);
}

#[test]
fn torsion_zeta_domain() {
    let input = ConeSpectrumInput::circle(1.0, 3);
    assert!(matches!(
        torsion_zeta_partial(&input, Complex64::new(1.0, 0.0), 3, 5),
        Err(Error::InvalidArgument(_))
    ));
}
