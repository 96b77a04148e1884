use torsionlab::chain::{additivity_check, homology_with_basis, BasedChainComplex, HomologyBasis};
use torsionlab::geometry::{
    closed_form_s, closed_form_t, cone_intersection_torsion, intersection_torsion_cone, pair_splitting,
    suspension_mayer_vietoris, suspension_splitting, ConeModel, Middle, SectionData, SectionReference,
};
use torsionlab::linalg::q;
use torsionlab::logexpr::LogExpr;
use torsionlab::simplicial::standard;

fn basis(c: &BasedChainComplex) -> HomologyBasis {
    homology_with_basis(c).into_iter().map(|d| d.representatives).collect()
}

#[test]
fn circle_suspension_sequence_matches_closed_form() {
    let w = standard::polygon(4);
    for which in [Middle::Lower, Middle::Upper] {
        let s = suspension_splitting(&w, which).unwrap();
        for l in [1, 2, 3, 10] {
            let d = SectionData::new(vec![1, 1], q(l)).unwrap();
            assert_eq!(d.instantiate(&s.log_torsion).unwrap(), d.instantiate(&closed_form_s(&d, which)).unwrap());
        }
        assert_eq!(s.log_torsion, LogExpr::log_l() - LogExpr::log_i64(2));
    }
}

#[test]
fn sphere_suspension_sequence_is_minus_log_two() {
    let w = standard::sphere(2);
    for which in [Middle::Lower, Middle::Upper] {
        let s = suspension_splitting(&w, which).unwrap();
        assert_eq!(s.log_torsion, -LogExpr::log_i64(2), "{which:?}");
    }
}

#[test]
fn circle_pair_sequence_matches_closed_form() {
    let w = standard::polygon(5);
    let d = SectionData::new(vec![1, 1], q(1)).unwrap();
    for which in [Middle::Lower, Middle::Upper] {
        assert_eq!(pair_splitting(&w, which).unwrap().log_torsion, closed_form_t(&d, which));
    }
}

#[test]
fn sphere_pair_sequence_vanishes() {
    for which in [Middle::Lower, Middle::Upper] {
        assert!(pair_splitting(&standard::sphere(2), which).unwrap().log_torsion.is_zero());
    }
}

#[test]
fn torus_sequences_match_closed_forms() {
    let w = standard::torus();
    let d = SectionData::new(vec![1, 2, 1], q(1)).unwrap();
    for which in [Middle::Lower, Middle::Upper] {
        assert_eq!(pair_splitting(&w, which).unwrap().log_torsion, closed_form_t(&d, which), "{which:?}");
        assert_eq!(suspension_splitting(&w, which).unwrap().log_torsion, closed_form_s(&d, which), "{which:?}");
    }
}

#[test]
fn cone_over_twelve_gon_both_paths() {
    let w = standard::polygon(12);
    let (tau_w, cone) = match cone_intersection_torsion(&w, Middle::Lower, SectionReference::circle) { Ok(x) => x, Err(e) => panic!("{e}") };
    // Circle of length 2πl.
    assert_eq!(tau_w, LogExpr::log_l() + LogExpr::log_i64(2) + LogExpr::log_pi());
    assert!((cone.absolute.clone() + cone.relative.clone()).is_zero());
    for l in [1, 2, 5] {
        let d = SectionData::new(vec![1, 1], q(l)).unwrap();
        let (abs, rel) = intersection_torsion_cone(&d, &tau_w).unwrap();
        assert_eq!(d.instantiate(&abs).unwrap(), d.instantiate(&cone.absolute).unwrap());
        assert_eq!(d.instantiate(&rel).unwrap(), d.instantiate(&cone.relative).unwrap());
    }
}

#[test]
fn perversities_agree_on_odd_cones() {
    let w = standard::polygon(6);
    let a = cone_intersection_torsion(&w, Middle::Lower, SectionReference::circle).unwrap().1;
    let b = cone_intersection_torsion(&w, Middle::Upper, SectionReference::circle).unwrap().1;
    assert_eq!(a.absolute, b.absolute);
    assert_eq!(a.relative, b.relative);
}

#[test]
fn concrete_sequences_are_additive() {
    let w = standard::polygon(4);
    let mv = suspension_mayer_vietoris(&w, Middle::Lower).unwrap();
    let s = &mv.sequence;
    let rep = additivity_check(s, &basis(&s.sub), &basis(&s.total), &basis(&s.quotient)).unwrap();
    assert!(rep.holds, "{}", rep.residual);
    let cone = ConeModel::new(&w, Middle::Lower).unwrap();
    let s = cone.sequence();
    let rep = additivity_check(s, &basis(&s.sub), &basis(&s.total), &basis(&s.quotient)).unwrap();
    assert!(rep.holds, "{}", rep.residual);
}
