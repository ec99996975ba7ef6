#![allow(dead_code)]

use affmv::mvpoly::{lowering_word, LatticePoint, LusztigDatum, MVPolytope, Partition, Side};
use affmv::paths::FWord;
use affmv::{Crystal, Path, RootDatum, Vector};

pub fn sl2() -> RootDatum {
    RootDatum::affine_sl2()
}

/// Shape pairing to `2n` with both simple coroots.
pub fn shape(n: i64) -> Vector {
    Vector::from_ints(&[0, n, 4 * n])
}

pub fn straight(v: &Vector) -> Path {
    Path::straight(&sl2(), v).unwrap()
}

/// Truncation of depth `depth`, large enough to agree with `B(infinity)` below it.
pub fn truncation(depth: usize) -> Crystal {
    let n = (depth as i64 + 1) / 2;
    Crystal::generate(&sl2(), &shape(n), depth).unwrap()
}

/// `f1^{l1} f0^{l1} f1^{l2} f0^{l2} ... (3d)`, the rightmost factor acting first.
pub fn staircase_path(parts: &[u32]) -> Path {
    let w = parts.iter().flat_map(|&k| [(1usize, k), (0usize, k)]).collect();
    FWord(w).apply(&sl2(), &straight(&Vector::from_ints(&[0, 0, 3]))).unwrap()
}

pub fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn figure_right() -> LusztigDatum {
    LusztigDatum::new(&[2, 1, 1], part("(9,2,1^2)"), &[1, 0, 1])
}

pub fn figure_left() -> LusztigDatum {
    LusztigDatum::new(&[1, 2, 1, 1], part("(2,1^2)"), &[5, 1, 0, 1])
}

pub fn figure_polytope() -> MVPolytope {
    MVPolytope { left: figure_left(), right: figure_right(), base: LatticePoint::ZERO }
}

/// Figure coordinates of the listed outline, counterclockwise from `mu_0`.
pub const FIGURE_OUTLINE: [(i64, i64); 14] = [
    (0, 0),
    (2, 2),
    (3, 5),
    (4, 10),
    (4, 36),
    (3, 41),
    (2, 42),
    (-3, 37),
    (-4, 34),
    (-5, 27),
    (-5, 19),
    (-4, 12),
    (-3, 7),
    (-1, 1),
];

/// Indices in application order of an f-word reaching `p` from the point.
pub fn word_of(p: &MVPolytope) -> Vec<usize> {
    lowering_word(p).unwrap()
}

/// Path of the crystal element with polytope `p`, in a shape large enough for its weight.
pub fn path_of(p: &MVPolytope) -> Path {
    let word = word_of(p);
    let n = word.len() as i64 + 1;
    let w = FWord(word.iter().rev().map(|&i| (i, 1)).collect());
    w.apply(&sl2(), &straight(&shape(n))).unwrap()
}

pub fn side_of(i: usize) -> Side {
    Side::of_index(i)
}
