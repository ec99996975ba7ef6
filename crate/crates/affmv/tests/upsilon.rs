mod common;

use affmv::mvpoly::LatticePoint;
use affmv::paths::{epsilon, Crystal};
use affmv::upsilon::{
    alternating, bottom_vertices, consecutive_difference, is_reduced, min_level_and_reflection_check, reduced_words,
    theta_sequence, upsilon, upsilon_prime,
};
use affmv::{CartanMatrix, Error, RootDatum, Vector};

#[test]
fn theta_sequences() {
    let d = common::sl2();
    let p = common::staircase_path(&[3, 2, 1]);
    assert_eq!(theta_sequence(&d, &p, &[]), vec![p.clone()]);
    let th = theta_sequence(&d, &p, &[1, 1]);
    assert_eq!(th[1], th[2]);
    // two maximal steps lower the weight by 3 a1v, then by eps_0 of the result
    let th = theta_sequence(&d, &p, &[1, 0]);
    assert_eq!(th[1].endpoint(), p.endpoint().sub(&d.simple_coroots[1].scale(&affmv::q(3))));
    let e0 = epsilon(&th[1], &d.simple(0)).unwrap();
    let drop = th[1].endpoint().sub(&th[2].endpoint());
    let phi0 = d.simple_roots[0].eval(&th[1].weight()) + affmv::q(e0);
    assert_eq!(drop, d.simple_coroots[0].scale(&phi0));
}

#[test]
fn upsilon_prime_basics() {
    let d = common::sl2();
    for e in &common::truncation(5).elements {
        let p = &e.path;
        assert_eq!(&upsilon_prime(&d, p, &[]).unwrap(), p);
        for first in 0..2 {
            for n in 1..6 {
                let u = upsilon_prime(&d, p, &alternating(first, n)).unwrap();
                assert_eq!(u.endpoint(), p.endpoint());
            }
            let u = upsilon_prime(&d, p, &[first]).unwrap();
            let eps = epsilon(p, &d.simple(first)).unwrap();
            assert_eq!(u.start().sub(p.start()), d.simple_coroots[first].scale(&affmv::q(-eps)));
        }
    }
    assert_eq!(upsilon(&d, &common::staircase_path(&[1]), &[0, 0]), Err(Error::NonReducedWord(vec![0, 0])));
}

#[test]
fn straight_path_has_trivial_bottom() {
    let d = common::sl2();
    let p = common::straight(&common::shape(3));
    for first in 0..2 {
        let b = bottom_vertices(&d, &p, first, 40).unwrap();
        assert_eq!(b.vertices, vec![Vector::zeros(3)]);
        assert!(b.multiplicities.is_empty());
        let m = min_level_and_reflection_check(&d, &p, &[], first).unwrap();
        assert_eq!((m.m, m.ok), (0, true));
    }
}

#[test]
fn figure_bottom_vertices() {
    let d = common::sl2();
    let p = common::path_of(&common::figure_polytope());
    let right = bottom_vertices(&d, &p, 1, 40).unwrap();
    assert_eq!(right.multiplicities, vec![2, 1, 1]);
    let left = bottom_vertices(&d, &p, 0, 40).unwrap();
    assert_eq!(left.multiplicities, vec![1, 2, 1, 1]);
    let fig = |v: &Vector| LatticePoint::from_coroot(v).unwrap().figure();
    let r: Vec<_> = right.polytope_vertices().iter().map(fig).collect();
    assert_eq!(r, vec![(0, 0), (2, 2), (3, 5), (4, 10)]);
    let l: Vec<_> = left.polytope_vertices().iter().map(fig).collect();
    assert_eq!(l, vec![(0, 0), (-1, 1), (-3, 7), (-4, 12), (-5, 19)]);
    assert_eq!(bottom_vertices(&d, &p, 1, 4), Err(Error::StabilizationCapExceeded(4)));
}

#[test]
fn lemma_2_7_base_case() {
    let d = common::sl2();
    for e in &common::truncation(5).elements {
        for i in 0..2 {
            let m = min_level_and_reflection_check(&d, &e.path, &[], i).unwrap();
            assert_eq!(m.m, -epsilon(&e.path, &d.simple(i)).unwrap());
            assert_eq!(m.m, m.m_formula);
            assert!(m.ok);
        }
    }
}

#[test]
fn consecutive_differences_depth_5() {
    let d = common::sl2();
    for e in &common::truncation(5).elements {
        for first in 0..2 {
            for n in 1..=8 {
                let (lhs, rhs) = consecutive_difference(&d, &e.path, &alternating(first, n)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn dominant_shapes(d: &RootDatum) -> Vec<Vector> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let v = Vector::from_ints(&[a, b]);
            if (a, b) != (0, 0) && d.is_dominant(&v) {
                out.push(v);
            }
        }
    }
    out
}

#[test]
fn word_independence_finite_rank_2() {
    for (cartan, order) in [(CartanMatrix::a2(), 6), (CartanMatrix::b2(), 8)] {
        let d = RootDatum::finite(cartan).unwrap();
        let groups = reduced_words(&d).unwrap();
        assert_eq!(groups.len(), order);
        assert!(groups.iter().flatten().all(|w| is_reduced(&d, w)));
        for shape in dominant_shapes(&d).into_iter().take(3) {
            let c = Crystal::generate(&d, &shape, 6).unwrap();
            for e in &c.elements {
                for g in &groups {
                    let u0 = upsilon(&d, &e.path, &g[0]).unwrap();
                    for w in &g[1..] {
                        assert_eq!(upsilon(&d, &e.path, w).unwrap(), u0, "{w:?} vs {:?}", g[0]);
                    }
                }
            }
        }
    }
    assert!(reduced_words(&common::sl2()).is_err());
}

#[test]
fn min_level_and_reflection_along_alternating_words() {
    let d = common::sl2();
    for e in &common::truncation(5).elements {
        for first in 0..2 {
            for n in 0..7 {
                let w = alternating(first, n);
                let next = if n == 0 { first } else { 1 - w[n - 1] };
                let m = min_level_and_reflection_check(&d, &e.path, &w, next).unwrap();
                assert_eq!(m.m, m.m_formula, "{w:?}+{next}");
                assert!(m.ok, "{w:?}+{next}");
            }
        }
    }
}
