mod common;

use affmv::{q, qr, CartanMatrix, Form, RealRoot, RootDatum, Vector, Q};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-30i64..30, 1i64..7).prop_map(|(n, d)| qr(n, d))
}

fn point() -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), 3).prop_map(Vector)
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..2, 0..8)
}

#[test]
fn cartan_entries() {
    let d = common::sl2();
    let a = |j: usize, i: usize| d.pair(&d.simple_roots[j], &d.simple_coroots[i]).unwrap();
    assert_eq!(a(1, 0), q(-2));
    assert_eq!(a(0, 0), q(2));
    assert_eq!(a(1, 1), q(2));
}

#[test]
fn delta_and_rho() {
    let d = common::sl2();
    let delta = d.delta().unwrap();
    assert_eq!(delta.eval(&d.simple_coroots[0]), q(0));
    assert_eq!(delta.eval(&d.simple_coroots[1]), q(0));
    assert_eq!(d.rho.eval(&d.central().unwrap()), q(2));
    assert_eq!(d.pair(&delta, &Vector::from_ints(&[3, 0, 5])).unwrap(), q(5));
    assert_eq!(d.pair(&d.simple_roots[1], &Vector::from_ints(&[0, 0, 1])).unwrap(), q(0));
}

#[test]
fn pair_checks_dimension() {
    let d = common::sl2();
    assert!(d.pair(&Form::from_ints(&[1, 0]), &Vector::from_ints(&[1, 0, 0])).is_err());
    assert!(d.pair(&d.simple_roots[0], &Vector::from_ints(&[1, 0])).is_err());
}

#[test]
fn reflection_of_a0v_in_a1() {
    let d = common::sl2();
    let x = d.affine_reflection(&d.simple(1), &q(0), &d.simple_coroots[0]);
    assert_eq!(x, Vector::from_ints(&[1, 2, 0]));
}

#[test]
fn weyl_words() {
    let d = common::sl2();
    let v = Vector::from_ints(&[3, -1, 2]);
    assert_eq!(d.weyl_act(&[], &v), v);
    assert_eq!(d.weyl_act(&[1, 1], &v), v);
    // s1(a1v) = -a1v, then s0(-a1v) = -a1v - 2 a0v.
    assert_eq!(d.weyl_act(&[0, 1], &d.simple_coroots[1]), Vector::from_ints(&[-2, -1, 0]));
}

#[test]
fn dominant_representatives() {
    let d = common::sl2();
    let lam = common::shape(2);
    assert_eq!(d.dominant_representative(&lam).unwrap(), (lam.clone(), vec![]));
    let moved = d.simple_reflection(0, &lam);
    assert_eq!(d.dominant_representative(&moved).unwrap(), (lam, vec![0]));
    assert!(d.dominant_representative(&Vector::from_ints(&[1, 0, 0])).is_err());
}

#[test]
fn invalid_data_rejected() {
    assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
    let c = CartanMatrix::affine_a1();
    let bad = RootDatum::new(
        c,
        vec![Vector::from_ints(&[1, 0, 0]), Vector::from_ints(&[0, 1, 0])],
        vec![Form::from_ints(&[2, -2, 1]), Form::from_ints(&[-2, 2, 0])],
        Form::from_ints(&[1, 0, 0]),
        true,
    );
    assert!(bad.is_err());
}

#[test]
fn finite_types() {
    for c in [CartanMatrix::a2(), CartanMatrix::b2()] {
        let d = RootDatum::finite(c).unwrap();
        assert!(!d.is_affine());
        assert!(d.delta().is_none());
    }
}

#[test]
fn real_roots_are_positive_on_chamber() {
    let d = common::sl2();
    for r in RealRoot::positive_roots(&d, 6).unwrap() {
        assert!(r.is_positive());
        assert_eq!(d.root_sign(&r.root.form), 1);
        assert_eq!(d.root_sign(&r.neg().root.form), -1);
    }
    let a0 = RealRoot::new(&d, 0, false, 0).unwrap();
    let same = RealRoot::new(&d, 1, true, 1).unwrap();
    assert_eq!(a0.root, same.root);
}

proptest! {
    #[test]
    fn affine_reflection_is_involution_fixing_wall(x in point(), k in -5i64..5, idx in 0usize..2, neg: bool, m in 0i64..3) {
        let d = common::sl2();
        let r = RealRoot::new(&d, idx, neg, m).unwrap().root;
        let kq = q(k);
        let y = r.affine_reflect(&kq, &x);
        prop_assert_eq!(r.affine_reflect(&kq, &y), x.clone());
        let on_wall = r.form.eval(&x) + &kq == q(0);
        prop_assert_eq!(y == x, on_wall);
    }

    #[test]
    fn delta_is_weyl_invariant(v in point(), w in word()) {
        let d = common::sl2();
        let delta = d.delta().unwrap();
        prop_assert_eq!(delta.eval(&d.weyl_act(&w, &v)), delta.eval(&v));
    }

    #[test]
    fn dominant_representative_is_dominant_and_idempotent(a in rational(), b in rational(), w in word()) {
        let d = common::sl2();
        // level-one vectors lie in the Tits cone interior
        let v = d.weyl_act(&w, &Vector(vec![a, b, q(1)]));
        let (dom, word) = d.dominant_representative(&v).unwrap();
        prop_assert!(d.is_dominant(&dom));
        prop_assert_eq!(d.weyl_act(&word, &dom), v);
        prop_assert_eq!(d.dominant_representative(&dom).unwrap(), (dom, vec![]));
    }
}
