mod common;

use std::collections::{BTreeMap, BTreeSet};

use affmv::mvpoly::{
    active_bottom, classify, complete, crystal_e, crystal_f, cut_at_active_diagonal, default_bound, delta_top_part,
    enumerate_mv, eps_after_raise, genpol_reduce, path_weight, polytope_of_word, reconstruct_from_path, top_part,
    validate, Class, Diagonal, LatticePoint, LusztigDatum, MVPolytope, Partition, Side,
};
use affmv::paths::{epsilon, root_operator, Direction, FWord, Power};
use affmv::Error;
use rayon::prelude::*;

fn lp(c0: i64, c1: i64) -> LatticePoint {
    LatticePoint { c0, c1 }
}

#[test]
fn lattice_conventions() {
    assert_eq!(lp(0, 1).figure(), (1, 1));
    assert_eq!(lp(1, 0).figure(), (-1, 1));
    assert_eq!(LatticePoint::from_figure(3, 5), Some(lp(1, 4)));
    assert_eq!(LatticePoint::from_figure(1, 0), None);
    assert_eq!(lp(2, 11).half_alpha1(), 9);
    assert_eq!(LatticePoint::DELTA.height(), 2);
}

#[test]
fn partitions() {
    let p = common::part("(9,2,1^2)");
    assert_eq!(p.parts(), &[9, 2, 1, 1]);
    assert_eq!(p.size(), 13);
    assert_eq!(p.to_string(), "(9,2,1^2)");
    assert_eq!(p.without_part(9), Some(common::part("(2,1^2)")));
    assert_eq!(p.without_part(3), None);
    assert_eq!(Partition::all(5).len(), 7);
    assert!("(1,x)".parse::<Partition>().is_err());
    assert_eq!(common::part("()"), Partition::empty());
}

#[test]
fn figure_completion_and_outline() {
    let p = complete(Side::Right, &common::figure_right(), LatticePoint::ZERO).unwrap();
    assert_eq!(p, common::figure_polytope());
    let left = complete(Side::Left, &common::figure_left(), LatticePoint::ZERO).unwrap();
    assert_eq!(left, p);
    let v = p.vertices().unwrap();
    let outline: Vec<(i64, i64)> = v.outline().iter().map(|x| x.figure()).collect();
    assert_eq!(outline, common::FIGURE_OUTLINE);
    assert_eq!(v.mu_inf().figure(), (4, 10));
    assert_eq!(v.mu_top_inf().figure(), (4, 36));
    assert_eq!(v.mu_bar_inf().figure(), (-5, 19));
    assert_eq!(v.mu_bar_top_inf().figure(), (-5, 27));
    assert_eq!(v.mu_bar_top(1).figure(), (-3, 37));
}

#[test]
fn figure_validation() {
    let p = common::figure_polytope();
    let r = validate(&p);
    assert!(r.passed(), "{r:?}");
    assert!(!r.parallel);
    assert_eq!(r.removed_part, 9);
    assert!(p.is_valid());
    assert!(validate(&MVPolytope::point()).passed());
    let mut big = p.clone();
    big.right.partition = common::part("(10,2,1^2)");
    let r = validate(&big);
    assert!(!r.part_bounds);
    assert!(!r.passed());
    let mut bad = p.clone();
    bad.right.set_bottom(2, 3);
    assert!(!validate(&bad).passed());
}

#[test]
fn cuts() {
    let p = common::figure_polytope();
    assert_eq!(classify(&p), Class::General);
    let (low, high) = cut_at_active_diagonal(&p, Diagonal::Delta).unwrap();
    assert!(low.is_valid() && high.is_valid());
    // only a first entry on one side survives
    let firsts = |d: &LusztigDatum| d.bottom.keys().all(|&k| k == 1);
    assert!(firsts(&high.right) && firsts(&high.left));
    assert!(high.right.bottom.is_empty() || high.left.bottom.is_empty());
    assert_eq!((&high.right.partition, &high.right.top), (&p.right.partition, &p.right.top));
    assert_eq!((&high.left.partition, &high.left.top), (&p.left.partition, &p.left.top));
    let dt = delta_top_part(&p).unwrap();
    assert_eq!(dt, high.normalized());
    assert_eq!(classify(&dt), Class::DeltaTop);
    assert_eq!(delta_top_part(&dt).unwrap(), dt);
    let t = top_part(&dt).unwrap();
    assert!(t.right.partition.is_empty() && t.left.partition.is_empty());
    assert_eq!(classify(&t), Class::Top);
    assert_eq!(cut_at_active_diagonal(&p, Diagonal::Bottom(1)), Err(Error::DiagonalNotActive));
    assert!((2..=5).all(|k| active_bottom(&p, k)));
    for k in 2..=5 {
        let (a, b) = cut_at_active_diagonal(&p, Diagonal::Bottom(k)).unwrap();
        assert!(a.is_valid() && b.is_valid());
        assert_eq!(a.base, p.base);
        assert_eq!(b.base + b.weight(), p.base + p.weight());
    }
}

#[test]
fn small_enumerations() {
    assert_eq!(enumerate_mv(LatticePoint::ZERO, 1).unwrap(), vec![MVPolytope::point()]);
    let a1 = enumerate_mv(lp(0, 1), 2).unwrap();
    assert_eq!(a1.len(), 1);
    assert_eq!(a1[0].right.bottom, BTreeMap::from([(1, 1)]));
    assert!(enumerate_mv(lp(-1, 0), 2).unwrap().is_empty());
}

fn weight_counts(depth: usize) -> BTreeMap<LatticePoint, usize> {
    let mut m = BTreeMap::new();
    for e in &common::truncation(depth).elements {
        *m.entry(path_weight(&e.path).unwrap()).or_default() += 1;
    }
    m
}

#[test]
fn counts_match_crystal_to_height_5() {
    let counts = weight_counts(5);
    for (w, n) in &counts {
        assert_eq!(enumerate_mv(*w, default_bound(*w)).unwrap().len(), *n, "{w}");
    }
    let two_delta = lp(2, 2);
    assert_eq!(enumerate_mv(two_delta, default_bound(two_delta)).unwrap().len(), weight_counts(4)[&two_delta]);
}

#[test]
fn completion_agrees_with_enumeration() {
    for w in [lp(1, 1), lp(2, 3), lp(3, 2), lp(2, 2)] {
        for p in enumerate_mv(w, default_bound(w)).unwrap() {
            assert_eq!(complete(Side::Right, &p.right, p.base).unwrap(), p);
            assert_eq!(complete(Side::Left, &p.left, p.base).unwrap(), p);
        }
    }
    let lonely = LusztigDatum::new(&[], common::part("(1)"), &[]);
    let p = complete(Side::Right, &lonely, LatticePoint::ZERO).unwrap();
    assert!(p.is_valid());
    assert_eq!(p.right, lonely);
    // every right datum has a partner
    for (b, lam) in [(vec![0, 1], "(5)"), (vec![0, 0, 1], "()"), (vec![0, 2], "(1)")] {
        let d = LusztigDatum::new(&b, common::part(lam), &[]);
        let p = complete(Side::Right, &d, lp(1, -2)).unwrap();
        assert!(p.is_valid());
        assert_eq!((p.right, p.base), (d, lp(1, -2)));
    }
}

#[test]
fn crystal_operators() {
    let p = crystal_f(&MVPolytope::point(), 1).unwrap();
    assert_eq!(p.right.bottom, BTreeMap::from([(1, 1)]));
    assert_eq!(p.epsilon(1), 1);
    assert_eq!(crystal_e(&p, 1).unwrap(), MVPolytope::point());
    assert_eq!(crystal_e(&MVPolytope::point(), 0), Err(Error::OperatorUndefined));
    for n in 1..4 {
        let mut w = vec![0; n];
        w.extend(vec![1; n]);
        let q = polytope_of_word(&w).unwrap();
        assert_eq!(q.left.partition.parts(), &[n as i64]);
    }
    let fig = common::figure_polytope();
    assert_eq!(polytope_of_word(&common::word_of(&fig)).unwrap(), fig);
}

#[test]
fn path_side_reconstruction() {
    let d = common::sl2();
    assert_eq!(reconstruct_from_path(&d, &common::straight(&common::shape(3))).unwrap(), MVPolytope::point());
    let p = reconstruct_from_path(&d, &common::staircase_path(&[3, 2, 1])).unwrap();
    assert_eq!((p.left.partition.to_string(), p.right.partition.to_string()), ("(3,2,1)".into(), "(2,1)".into()));
    let p = reconstruct_from_path(&d, &common::path_of(&common::figure_polytope())).unwrap();
    assert_eq!(p, common::figure_polytope());
}

#[test]
fn reconstruction_is_a_crystal_morphism() {
    let d = common::sl2();
    let c = common::truncation(5);
    c.elements.par_iter().filter(|e| e.depth < 5).for_each(|e| {
        let p = reconstruct_from_path(&d, &e.path).unwrap();
        assert!(validate(&p).passed());
        for i in 0..2 {
            assert_eq!(p.epsilon(i), epsilon(&e.path, &d.simple(i)).unwrap());
            let lo = root_operator(&d, &e.path, i, Direction::Lower, Power::Times(1)).unwrap();
            assert_eq!(reconstruct_from_path(&d, &lo).unwrap(), crystal_f(&p, i).unwrap());
        }
    });
}

fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=total)
        .flat_map(|k| {
            compositions(total - k).into_iter().map(move |mut r| {
                r.insert(0, k);
                r
            })
        })
        .collect()
}

/// `f_i^{k1} f_{1-i}^{k2} ...` applied to a straight path.
fn f_word(lead: usize, ks: &[u32]) -> FWord {
    FWord(ks.iter().enumerate().map(|(j, &k)| ((lead + j) % 2, k)).collect())
}

#[test]
fn top_and_delta_top_are_the_monotone_words() {
    let d = common::sl2();
    let max = 10;
    let base = common::straight(&common::shape(max as i64));
    let words: Vec<(usize, Vec<u32>)> =
        (1..=max).flat_map(compositions).flat_map(|ks| [(0, ks.clone()), (1, ks)]).collect();
    let results: Vec<(usize, Vec<u32>, MVPolytope)> = words
        .into_par_iter()
        .map(|(lead, ks)| {
            let path = f_word(lead, &ks).apply(&d, &base).unwrap();
            let p = reconstruct_from_path(&d, &path).unwrap();
            (lead, ks, p)
        })
        .collect();
    let strict = |ks: &[u32]| ks.windows(2).all(|w| w[0] > w[1]);
    let weak = |ks: &[u32]| ks.windows(2).all(|w| w[0] >= w[1]);
    let set = |f: &dyn Fn(&(usize, Vec<u32>, MVPolytope)) -> bool| -> BTreeSet<MVPolytope> {
        results.iter().filter(|r| f(r)).map(|r| r.2.clone()).collect()
    };
    let tops = set(&|r| classify(&r.2) == Class::Top);
    let dtops = set(&|r| classify(&r.2) == Class::DeltaTop);
    let strict_set = set(&|r| strict(&r.1));
    let weak_set = set(&|r| weak(&r.1) && !strict(&r.1));
    assert!(strict_set.iter().all(|p| classify(p) == Class::Top));
    assert!(weak_set.iter().all(|p| classify(p) == Class::DeltaTop));
    assert_eq!(tops, strict_set);
    assert_eq!(dtops, weak_set);
    assert!(results.iter().all(|r| classify(&r.2) != Class::DeltaTopAmbiguous));
}

#[test]
fn raising_a_top_element_leaves_small_eps0() {
    let d = common::sl2();
    let base = common::straight(&common::shape(8));
    for total in 1..=8 {
        for ks in compositions(total).into_iter().filter(|ks| ks.windows(2).all(|w| w[0] > w[1])) {
            let path = f_word(1, &ks).apply(&d, &base).unwrap();
            for k in 1..=ks[0] {
                let e0 = eps_after_raise(&d, &path, 1, k).unwrap();
                assert!(e0 < k as i64, "{ks:?} K={k}: eps0 {e0}");
            }
        }
    }
}

#[test]
fn reduction_to_delta_top() {
    let d = common::sl2();
    let straight = common::straight(&common::shape(3));
    let r = genpol_reduce(&d, &straight).unwrap();
    assert!(r.e_word.is_empty() && r.h == 0);
    let c = common::truncation(6);
    for e in &c.elements {
        let r = genpol_reduce(&d, &e.path).unwrap();
        let p = reconstruct_from_path(&d, &r.reduced).unwrap();
        assert!(matches!(classify(&p), Class::DeltaTop | Class::Top));
        assert_eq!(p, delta_top_part(&reconstruct_from_path(&d, &e.path).unwrap()).unwrap());
        assert!(r.e_word.iter().all(|&(_, k)| k > 0));
    }
}
