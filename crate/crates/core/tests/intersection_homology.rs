use torsionlab::simplicial::standard;
use torsionlab::stratified::{
    intersection_chain_complex, intersection_homology, pair_les_check, Flavor, Perversity, StratifiedComplex,
};

fn ranks(s: &StratifiedComplex, p: &Perversity, f: Flavor) -> Vec<usize> {
    intersection_homology(s, p, f).unwrap().ranks
}

#[test]
fn cone_on_torus() {
    let s = StratifiedComplex::cone_over(&standard::torus()).unwrap();
    let m = Perversity::lower_middle(3);
    let mc = Perversity::upper_middle(3);
    assert_eq!(ranks(&s, &m, Flavor::Absolute), vec![1, 2, 0, 0]);
    assert_eq!(ranks(&s, &m, Flavor::Relative), vec![0, 0, 0, 1]);
    assert_eq!(ranks(&s, &mc, Flavor::Absolute), vec![1, 0, 0, 0]);
    assert_eq!(ranks(&s, &mc, Flavor::Relative), vec![0, 0, 2, 1]);
}

#[test]
fn suspension_of_torus() {
    let s = StratifiedComplex::suspension_over(&standard::torus()).unwrap();
    assert_eq!(ranks(&s, &Perversity::lower_middle(3), Flavor::Absolute), vec![1, 2, 0, 1]);
    assert_eq!(ranks(&s, &Perversity::upper_middle(3), Flavor::Absolute), vec![1, 0, 2, 1]);
}

#[test]
fn zero_and_top_perversities_on_suspension() {
    // In dimension 3 the zero and top perversities are the two middle ones.
    let s = StratifiedComplex::suspension_over(&standard::torus()).unwrap();
    assert_eq!(Perversity::zero(3), Perversity::lower_middle(3));
    assert_eq!(ranks(&s, &Perversity::top(3), Flavor::Absolute), vec![1, 0, 2, 1]);
    // Σ(S²) is a manifold away from two points with links S²; every perversity agrees.
    let s2 = StratifiedComplex::suspension_over(&standard::sphere(2)).unwrap();
    assert_eq!(ranks(&s2, &Perversity::zero(3), Flavor::Absolute), vec![1, 0, 0, 1]);
    assert_eq!(ranks(&s2, &Perversity::top(3), Flavor::Absolute), vec![1, 0, 0, 1]);
}

#[test]
fn pair_sequences_are_exact() {
    for w in [standard::torus(), standard::polygon(5), standard::sphere(2)] {
        let s = StratifiedComplex::cone_over(&w).unwrap();
        let n = s.dim();
        for p in [Perversity::lower_middle(n), Perversity::upper_middle(n)] {
            let rep = pair_les_check(&s, &p).unwrap();
            assert!(rep.exact, "{rep:?}");
        }
    }
}

#[test]
fn generators_are_integral_and_independent() {
    let s = StratifiedComplex::cone_over(&standard::torus()).unwrap();
    for f in [Flavor::Absolute, Flavor::Relative] {
        let ic = intersection_chain_complex(&s, &Perversity::lower_middle(3), f).unwrap();
        for gens in &ic.generators {
            assert!(gens.iter().all(|g| g.is_integral()));
            assert_eq!(torsionlab::linalg::rank_of(gens), gens.len());
        }
    }
}

#[test]
fn cone_on_projective_plane_torsion_free_ranks() {
    let s = StratifiedComplex::cone_over(&standard::projective_plane()).unwrap();
    assert_eq!(ranks(&s, &Perversity::lower_middle(3), Flavor::Absolute), vec![1, 0, 0, 0]);
}
