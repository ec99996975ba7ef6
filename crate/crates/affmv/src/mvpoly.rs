//! Affine sl2 MV polytopes given by pairs of Lusztig data.
//!
//! Points live in the root lattice with basis `(a0, a1)`. A right datum uses
//! edges `a1 + (k-1) delta` at the bottom and `a0 + (k-1) delta` at the top;
//! a left datum uses the same roots with the roles swapped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rayon::prelude::*;

use crate::decorations;
use crate::error::{Error, Result};
use crate::linalg::{to_int, Vector};
use crate::paths::{epsilon, root_operator, Direction, Path, Power};
use crate::rootdata::RootDatum;
use crate::upsilon::bottom_vertices;

/// `c0 a0 + c1 a1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub c0: i64,
    pub c1: i64,
}

impl LatticePoint {
    pub const ZERO: LatticePoint = LatticePoint { c0: 0, c1: 0 };
    pub const DELTA: LatticePoint = LatticePoint { c0: 1, c1: 1 };
    pub const ALPHA0: LatticePoint = LatticePoint { c0: 1, c1: 0 };
    pub const ALPHA1: LatticePoint = LatticePoint { c0: 0, c1: 1 };

    pub const fn new(c0: i64, c1: i64) -> Self {
        LatticePoint { c0, c1 }
    }

    /// `a1 + k delta`.
    pub fn alpha1_plus(k: i64) -> Self {
        LatticePoint::new(k, k + 1)
    }

    /// `a0 + k delta`.
    pub fn alpha0_plus(k: i64) -> Self {
        LatticePoint::new(k + 1, k)
    }

    pub fn omega0(&self) -> i64 {
        self.c0
    }

    pub fn omega1(&self) -> i64 {
        self.c1
    }

    /// `(v, a1) / 2`.
    pub fn half_alpha1(&self) -> i64 {
        self.c1 - self.c0
    }

    pub fn height(&self) -> i64 {
        self.c0 + self.c1
    }

    /// Plane coordinates with `a1 -> (1,1)` and `a0 -> (-1,1)`.
    pub fn figure(&self) -> (i64, i64) {
        (self.c1 - self.c0, self.c0 + self.c1)
    }

    pub fn from_figure(x: i64, y: i64) -> Option<Self> {
        if (x + y) % 2 != 0 {
            return None;
        }
        Some(LatticePoint::new((y - x) / 2, (x + y) / 2))
    }

    pub fn cross(&self, o: &LatticePoint) -> i64 {
        self.c0 * o.c1 - self.c1 * o.c0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.c0 >= 0 && self.c1 >= 0
    }

    /// Reads an element `x a0^v + y a1^v` of the affine coweight space, identifying `a_i^v` with `a_i`.
    pub fn from_coroot(v: &Vector) -> Result<Self> {
        v.check_dim(3)?;
        let (Some(x), Some(y), Some(0)) = (to_int(&v.0[0]), to_int(&v.0[1]), to_int(&v.0[2])) else {
            return Err(Error::MalformedPath(format!("{v} is not in the coroot lattice")));
        };
        Ok(LatticePoint::new(x, y))
    }

    pub fn to_coroot(&self) -> Vector {
        Vector::from_ints(&[self.c0, self.c1, 0])
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.c0 + o.c0, self.c1 + o.c1)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.c0 - o.c0, self.c1 - o.c1)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.c0, -self.c1)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, v: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * v.c0, self * v.c1)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c0, self.c1)
    }
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts; rejects nonpositive ones.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p <= 0) {
            return Err(Error::InvalidDatum(format!("partition parts must be positive: {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `(k^{m_k})`.
    pub fn from_multiplicities(m: &BTreeMap<i64, i64>) -> Self {
        let mut parts = Vec::new();
        for (&k, &n) in m.iter().rev() {
            if k > 0 {
                parts.extend(std::iter::repeat_n(k, n.max(0) as usize));
            }
        }
        Partition(parts)
    }

    pub fn multiplicities(&self) -> BTreeMap<i64, i64> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, `0` if empty.
    pub fn first(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `n ∪ self`.
    pub fn with_part(&self, n: i64) -> Partition {
        let mut parts = self.0.clone();
        parts.push(n);
        Partition::new(parts).expect("positive part")
    }

    /// `self ∖ n`, if `n` is a part.
    pub fn without_part(&self, n: i64) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == n)?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Partition(parts))
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: i64) -> Vec<Partition> {
        fn go(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                go(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Exponential form, e.g. `(9,2,1^2)`; the empty partition prints as `()`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .multiplicities()
            .iter()
            .rev()
            .map(|(k, n)| if *n == 1 { k.to_string() } else { format!("{k}^{n}") })
            .collect();
        write!(f, "({})", items.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDatum(format!("bad partition {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let mut parts = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, n) = match item.split_once('^') {
                Some((k, n)) => (k.trim(), n.trim().parse::<usize>().map_err(|_| bad())?),
                None => (item, 1),
            };
            let k: i64 = k.parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(k, n));
        }
        Partition::new(parts)
    }
}

/// `(a_k, lambda, a^k)`, stored sparsely with positive entries only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LusztigDatum {
    pub bottom: BTreeMap<usize, i64>,
    pub partition: Partition,
    pub top: BTreeMap<usize, i64>,
}

fn sparse(xs: &[i64]) -> BTreeMap<usize, i64> {
    xs.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i + 1, x)).collect()
}

impl LusztigDatum {
    /// `bottom[j]` and `top[j]` are the entries at index `j + 1`.
    pub fn new(bottom: &[i64], partition: Partition, top: &[i64]) -> Self {
        LusztigDatum { bottom: sparse(bottom), partition, top: sparse(top) }
    }

    pub fn bottom_at(&self, k: usize) -> i64 {
        self.bottom.get(&k).copied().unwrap_or(0)
    }

    pub fn top_at(&self, k: usize) -> i64 {
        self.top.get(&k).copied().unwrap_or(0)
    }

    pub fn set_bottom(&mut self, k: usize, v: i64) {
        if v == 0 {
            self.bottom.remove(&k);
        } else {
            self.bottom.insert(k, v);
        }
    }

    pub fn set_top(&mut self, k: usize, v: i64) {
        if v == 0 {
            self.top.remove(&k);
        } else {
            self.top.insert(k, v);
        }
    }

    pub fn is_valid(&self) -> bool {
        self.bottom.values().chain(self.top.values()).all(|&x| x > 0) && !self.bottom.contains_key(&0)
    }

    /// Largest index carrying a nonzero entry.
    pub fn support(&self) -> usize {
        let b = self.bottom.keys().next_back().copied().unwrap_or(0);
        let t = self.top.keys().next_back().copied().unwrap_or(0);
        b.max(t)
    }

    /// Total weight when read as a datum on `side`.
    pub fn weight(&self, side: Side) -> LatticePoint {
        let (bot, top) = side.roots();
        let mut w = self.partition.size() * LatticePoint::DELTA;
        for (&k, &a) in &self.bottom {
            w = w + a * bot(k);
        }
        for (&k, &a) in &self.top {
            w = w + a * top(k);
        }
        w
    }
}

/// Which datum of a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

type RootAt = fn(usize) -> LatticePoint;

fn a1_root(k: usize) -> LatticePoint {
    LatticePoint::alpha1_plus(k as i64 - 1)
}

fn a0_root(k: usize) -> LatticePoint {
    LatticePoint::alpha0_plus(k as i64 - 1)
}

impl Side {
    /// Bottom and top edge directions at index `k`.
    fn roots(self) -> (RootAt, RootAt) {
        match self {
            Side::Right => (a1_root, a0_root),
            Side::Left => (a0_root, a1_root),
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Simple index whose crystal operator acts on this side's first bottom entry.
    pub fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn of_index(i: usize) -> Side {
        if i == 0 {
            Side::Left
        } else {
            Side::Right
        }
    }
}

/// A pair of Lusztig data with a base point `mu_0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MVPolytope {
    pub left: LusztigDatum,
    pub right: LusztigDatum,
    pub base: LatticePoint,
}

/// All vertices, indexed `0..=K`; entries past `K` equal the limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertices {
    pub bottom: Vec<LatticePoint>,
    pub bottom_bar: Vec<LatticePoint>,
    pub top: Vec<LatticePoint>,
    pub top_bar: Vec<LatticePoint>,
}

fn at(v: &[LatticePoint], k: usize) -> LatticePoint {
    v[k.min(v.len() - 1)]
}

impl Vertices {
    pub fn mu(&self, k: usize) -> LatticePoint {
        at(&self.bottom, k)
    }
    pub fn mu_bar(&self, k: usize) -> LatticePoint {
        at(&self.bottom_bar, k)
    }
    pub fn mu_top(&self, k: usize) -> LatticePoint {
        at(&self.top, k)
    }
    pub fn mu_bar_top(&self, k: usize) -> LatticePoint {
        at(&self.top_bar, k)
    }
    pub fn mu_inf(&self) -> LatticePoint {
        *self.bottom.last().expect("nonempty")
    }
    pub fn mu_bar_inf(&self) -> LatticePoint {
        *self.bottom_bar.last().expect("nonempty")
    }
    pub fn mu_top_inf(&self) -> LatticePoint {
        *self.top.last().expect("nonempty")
    }
    pub fn mu_bar_top_inf(&self) -> LatticePoint {
        *self.top_bar.last().expect("nonempty")
    }

    /// Boundary cycle `mu_0, mu_1, ..., mu^0, ..., mu_bar_1`, consecutive duplicates removed.
    pub fn outline(&self) -> Vec<LatticePoint> {
        let mut pts: Vec<LatticePoint> = Vec::new();
        let mut push = |p: LatticePoint| {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        };
        self.bottom.iter().for_each(|&p| push(p));
        self.top.iter().rev().for_each(|&p| push(p));
        self.top_bar.iter().for_each(|&p| push(p));
        self.bottom_bar.iter().rev().for_each(|&p| push(p));
        if pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        pts
    }
}

fn side_vertices(
    base: LatticePoint,
    d: &LusztigDatum,
    side: Side,
    k_max: usize,
) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let (bot, top) = side.roots();
    let mut lower = vec![base];
    for k in 1..=k_max {
        lower.push(lower[k - 1] + d.bottom_at(k) * bot(k));
    }
    let mut upper = vec![lower[k_max] + d.partition.size() * LatticePoint::DELTA; k_max + 1];
    for k in (1..=k_max).rev() {
        upper[k - 1] = upper[k] + d.top_at(k) * top(k);
    }
    (lower, upper)
}

impl MVPolytope {
    pub fn point() -> Self {
        MVPolytope::default()
    }

    pub fn support(&self) -> usize {
        self.left.support().max(self.right.support()).max(1)
    }

    fn raw_vertices(&self) -> Vertices {
        let k = self.support();
        let (bottom, top) = side_vertices(self.base, &self.right, Side::Right, k);
        let (bottom_bar, top_bar) = side_vertices(self.base, &self.left, Side::Left, k);
        Vertices { bottom, bottom_bar, top, top_bar }
    }

    pub fn vertices(&self) -> Result<Vertices> {
        let v = self.raw_vertices();
        if v.top[0] != v.top_bar[0] {
            return Err(Error::ClosureViolation(v.top[0].to_string(), v.top_bar[0].to_string()));
        }
        Ok(v)
    }

    /// `mu^0 - mu_0`.
    pub fn weight(&self) -> LatticePoint {
        self.right.weight(Side::Right)
    }

    pub fn datum(&self, side: Side) -> &LusztigDatum {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// `eps_1 = a_1`, `eps_0 = a_bar_1`.
    pub fn epsilon(&self, i: usize) -> i64 {
        self.datum(Side::of_index(i)).bottom_at(1)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.left.is_valid() && self.right.is_valid() && validate(self).passed()
    }

    /// Same polytope moved to base `0`.
    pub fn normalized(&self) -> MVPolytope {
        MVPolytope { base: LatticePoint::ZERO, ..self.clone() }
    }
}

/// Outcome of each condition of the MV definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub closure: bool,
    /// Bottom diagonal inequalities `(i)` for `k = 2..=K+1`.
    pub bottom: Vec<(usize, bool)>,
    /// Top diagonal inequalities `(ii)` for `k = 2..=K+1`.
    pub top: Vec<(usize, bool)>,
    /// Whether `[mu_inf, mu_bar_inf]` and `[mu^inf, mu_bar^inf]` are parallel.
    pub parallel: bool,
    /// `(mu_inf - mu_bar_inf, a1) / 2`.
    pub removed_part: i64,
    /// Partition relation `(iii)`.
    pub partitions: bool,
    /// Largest-part bound `(iv)`.
    pub part_bounds: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.closure
            && self.bottom.iter().all(|x| x.1)
            && self.top.iter().all(|x| x.1)
            && self.partitions
            && self.part_bounds
    }

    /// Indices `k` failing `(i)` and `(ii)`.
    pub fn failures(&self) -> (Vec<usize>, Vec<usize>) {
        let f = |v: &[(usize, bool)]| v.iter().filter(|x| !x.1).map(|x| x.0).collect();
        (f(&self.bottom), f(&self.top))
    }
}

fn one_sided(a: i64, b: i64) -> bool {
    a <= 0 && b <= 0 && (a == 0 || b == 0)
}

pub fn validate(p: &MVPolytope) -> ValidationReport {
    let v = p.raw_vertices();
    let k_max = p.support();
    let bottom = (2..=k_max + 1)
        .map(|k| {
            let a = (v.mu_bar(k) - v.mu(k - 1)).omega1();
            let b = (v.mu(k) - v.mu_bar(k - 1)).omega0();
            (k, one_sided(a, b))
        })
        .collect();
    let top = (2..=k_max + 1)
        .map(|k| {
            let a = (v.mu_bar_top(k) - v.mu_top(k - 1)).omega0();
            let b = (v.mu_top(k) - v.mu_bar_top(k - 1)).omega1();
            (k, one_sided(-a, -b))
        })
        .collect();
    let d1 = v.mu_inf() - v.mu_bar_inf();
    let d2 = v.mu_top_inf() - v.mu_bar_top_inf();
    let parallel = d1.cross(&d2) == 0;
    let s = d1.half_alpha1();
    let (l, lb) = (&p.right.partition, &p.left.partition);
    let partitions = if parallel { l == lb } else { s > 0 && (lb.with_part(s) == *l || l.with_part(s) == *lb) };
    ValidationReport {
        closure: v.top[0] == v.top_bar[0],
        bottom,
        top,
        parallel,
        removed_part: s,
        partitions,
        part_bounds: l.first() <= s && lb.first() <= s,
    }
}

/// Diagonals along which a polytope may be cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// The active diagonal of `(i)` at `k >= 2`.
    Bottom(usize),
    /// The active diagonal of `(ii)` at `k >= 2`.
    Top(usize),
    /// `[mu_bar_inf, mu_inf]`.
    Delta,
    /// `[mu_bar^inf, mu^inf]`.
    TopDelta,
}

fn restrict(m: &BTreeMap<usize, i64>, keep: impl Fn(usize) -> bool) -> BTreeMap<usize, i64> {
    m.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, *v)).collect()
}

fn with_first(mut m: BTreeMap<usize, i64>, v: i64) -> BTreeMap<usize, i64> {
    if v != 0 {
        m.insert(1, v);
    }
    m
}

fn datum(bottom: BTreeMap<usize, i64>, partition: &Partition, top: BTreeMap<usize, i64>) -> LusztigDatum {
    LusztigDatum { bottom, partition: partition.clone(), top }
}

/// Splits `p` along an active diagonal into the pieces below and above it.
pub fn cut_at_active_diagonal(p: &MVPolytope, diag: Diagonal) -> Result<(MVPolytope, MVPolytope)> {
    let v = p.vertices()?;
    let (r, l) = (&p.right, &p.left);
    let none = Partition::empty();
    let (low, high) = match diag {
        Diagonal::Bottom(k) if k >= 2 => {
            if (v.mu_bar(k) - v.mu(k - 1)).omega1() == 0 {
                let c = (v.mu_bar(k) - v.mu(k - 1)).omega0();
                let low = MVPolytope {
                    right: datum(restrict(&r.bottom, |j| j < k), &none, with_first(BTreeMap::new(), c)),
                    left: datum(restrict(&l.bottom, |j| j <= k), &none, BTreeMap::new()),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(restrict(&r.bottom, |j| j >= k), &r.partition, r.top.clone()),
                    left: datum(with_first(restrict(&l.bottom, |j| j > k), c), &l.partition, l.top.clone()),
                    base: v.mu(k - 1),
                };
                (low, high)
            } else if (v.mu(k) - v.mu_bar(k - 1)).omega0() == 0 {
                let c = (v.mu(k) - v.mu_bar(k - 1)).omega1();
                let low = MVPolytope {
                    right: datum(restrict(&r.bottom, |j| j <= k), &none, BTreeMap::new()),
                    left: datum(restrict(&l.bottom, |j| j < k), &none, with_first(BTreeMap::new(), c)),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(with_first(restrict(&r.bottom, |j| j > k), c), &r.partition, r.top.clone()),
                    left: datum(restrict(&l.bottom, |j| j >= k), &l.partition, l.top.clone()),
                    base: v.mu_bar(k - 1),
                };
                (low, high)
            } else {
                return Err(Error::DiagonalNotActive);
            }
        }
        Diagonal::Top(k) if k >= 2 => {
            if (v.mu_bar_top(k) - v.mu_top(k - 1)).omega0() == 0 {
                let e = (v.mu_top(k - 1) - v.mu_bar_top(k)).omega1();
                let low = MVPolytope {
                    right: datum(r.bottom.clone(), &r.partition, restrict(&r.top, |j| j >= k)),
                    left: datum(l.bottom.clone(), &l.partition, with_first(restrict(&l.top, |j| j > k), e)),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(with_first(BTreeMap::new(), e), &none, restrict(&r.top, |j| j < k)),
                    left: datum(BTreeMap::new(), &none, restrict(&l.top, |j| j <= k)),
                    base: v.mu_bar_top(k),
                };
                (low, high)
            } else if (v.mu_top(k) - v.mu_bar_top(k - 1)).omega1() == 0 {
                let e = (v.mu_bar_top(k - 1) - v.mu_top(k)).omega0();
                let low = MVPolytope {
                    right: datum(r.bottom.clone(), &r.partition, with_first(restrict(&r.top, |j| j > k), e)),
                    left: datum(l.bottom.clone(), &l.partition, restrict(&l.top, |j| j >= k)),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(BTreeMap::new(), &none, restrict(&r.top, |j| j <= k)),
                    left: datum(with_first(BTreeMap::new(), e), &none, restrict(&l.top, |j| j < k)),
                    base: v.mu_top(k),
                };
                (low, high)
            } else {
                return Err(Error::DiagonalNotActive);
            }
        }
        Diagonal::Delta => {
            let d = v.mu_inf() - v.mu_bar_inf();
            if d.c0 == 0 {
                let low = MVPolytope {
                    right: datum(r.bottom.clone(), &none, BTreeMap::new()),
                    left: datum(l.bottom.clone(), &none, with_first(BTreeMap::new(), d.c1)),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(with_first(BTreeMap::new(), d.c1), &r.partition, r.top.clone()),
                    left: datum(BTreeMap::new(), &l.partition, l.top.clone()),
                    base: v.mu_bar_inf(),
                };
                (low, high)
            } else if d.c1 == 0 {
                let low = MVPolytope {
                    right: datum(r.bottom.clone(), &none, with_first(BTreeMap::new(), -d.c0)),
                    left: datum(l.bottom.clone(), &none, BTreeMap::new()),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(BTreeMap::new(), &r.partition, r.top.clone()),
                    left: datum(with_first(BTreeMap::new(), -d.c0), &l.partition, l.top.clone()),
                    base: v.mu_inf(),
                };
                (low, high)
            } else {
                return Err(Error::DiagonalNotActive);
            }
        }
        Diagonal::TopDelta => {
            let d = v.mu_top_inf() - v.mu_bar_top_inf();
            if d.c0 == 0 {
                let low = MVPolytope {
                    right: datum(r.bottom.clone(), &r.partition, BTreeMap::new()),
                    left: datum(l.bottom.clone(), &l.partition, with_first(BTreeMap::new(), d.c1)),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(with_first(BTreeMap::new(), d.c1), &none, r.top.clone()),
                    left: datum(BTreeMap::new(), &none, l.top.clone()),
                    base: v.mu_bar_top_inf(),
                };
                (low, high)
            } else if d.c1 == 0 {
                let low = MVPolytope {
                    right: datum(r.bottom.clone(), &r.partition, with_first(BTreeMap::new(), -d.c0)),
                    left: datum(l.bottom.clone(), &l.partition, BTreeMap::new()),
                    base: p.base,
                };
                let high = MVPolytope {
                    right: datum(BTreeMap::new(), &none, r.top.clone()),
                    left: datum(with_first(BTreeMap::new(), -d.c0), &none, l.top.clone()),
                    base: v.mu_top_inf(),
                };
                (low, high)
            } else {
                return Err(Error::DiagonalNotActive);
            }
        }
        _ => return Err(Error::DiagonalNotActive),
    };
    Ok((low, high))
}

/// The piece above `[mu_bar_inf, mu_inf]`, based at `0`.
pub fn delta_top_part(p: &MVPolytope) -> Result<MVPolytope> {
    Ok(cut_at_active_diagonal(p, Diagonal::Delta)?.1.normalized())
}

/// The piece above `[mu_bar^inf, mu^inf]`, based at `0`.
pub fn top_part(p: &MVPolytope) -> Result<MVPolytope> {
    Ok(cut_at_active_diagonal(p, Diagonal::TopDelta)?.1.normalized())
}

/// Multisets of real roots `a1 + (k-1) delta` (kind 1) and `a0 + (k-1) delta` (kind 0), `k <= bound`, summing to `w`.
fn real_decompositions(w: LatticePoint, bound: usize) -> Vec<(BTreeMap<usize, i64>, BTreeMap<usize, i64>)> {
    let mut roots = Vec::new();
    for k in 1..=bound {
        roots.push((1usize, k, a1_root(k)));
        roots.push((0usize, k, a0_root(k)));
    }
    let mut out = Vec::new();
    let mut cur = (BTreeMap::new(), BTreeMap::new());
    fn go(
        rem: LatticePoint,
        roots: &[(usize, usize, LatticePoint)],
        cur: &mut (BTreeMap<usize, i64>, BTreeMap<usize, i64>),
        out: &mut Vec<(BTreeMap<usize, i64>, BTreeMap<usize, i64>)>,
    ) {
        if rem == LatticePoint::ZERO {
            out.push(cur.clone());
            return;
        }
        let Some((&(kind, k, r), rest)) = roots.split_first() else { return };
        if r.c0 > rem.c0 || r.c1 > rem.c1 {
            // later roots are larger in both coordinates except the pair partner
            go(rem, rest, cur, out);
            return;
        }
        let mut n = 0;
        let mut left = rem;
        loop {
            if n > 0 {
                let m = if kind == 1 { &mut cur.1 } else { &mut cur.0 };
                m.insert(k, n);
            }
            go(left, rest, cur, out);
            left = left - r;
            if !left.is_nonnegative() {
                break;
            }
            n += 1;
        }
        let m = if kind == 1 { &mut cur.1 } else { &mut cur.0 };
        m.remove(&k);
    }
    if w.is_nonnegative() {
        go(w, &roots, &mut cur, &mut out);
    }
    out
}

/// All Lusztig data of weight `w` on `side` with indices at most `bound`.
pub fn data_of_weight(side: Side, w: LatticePoint, bound: usize) -> Vec<LusztigDatum> {
    let mut out = Vec::new();
    if !w.is_nonnegative() {
        return out;
    }
    for n in 0..=w.c0.min(w.c1) {
        let rest = w - n * LatticePoint::DELTA;
        let reals = real_decompositions(rest, bound);
        for lam in Partition::all(n) {
            for (kind0, kind1) in &reals {
                let (bottom, top) = match side {
                    Side::Right => (kind1.clone(), kind0.clone()),
                    Side::Left => (kind0.clone(), kind1.clone()),
                };
                out.push(LusztigDatum { bottom, partition: lam.clone(), top });
            }
        }
    }
    out
}

/// Natural index bound for weight `w`: no root of index above it fits.
pub fn default_bound(w: LatticePoint) -> usize {
    (w.c0.max(w.c1).max(0) + 1) as usize
}

/// Every valid polytope of weight `w` based at `0`, with indices at most `bound`.
/// Checks that right data and left data are each pairwise distinct.
pub fn enumerate_mv(w: LatticePoint, bound: usize) -> Result<Vec<MVPolytope>> {
    let rights = data_of_weight(Side::Right, w, bound);
    let lefts = data_of_weight(Side::Left, w, bound);
    let found: Vec<MVPolytope> = rights
        .par_iter()
        .flat_map_iter(|r| {
            lefts.iter().filter_map(move |l| {
                let p = MVPolytope { left: l.clone(), right: r.clone(), base: LatticePoint::ZERO };
                validate(&p).passed().then_some(p)
            })
        })
        .collect();
    let mut rs: Vec<&LusztigDatum> = found.iter().map(|p| &p.right).collect();
    let mut ls: Vec<&LusztigDatum> = found.iter().map(|p| &p.left).collect();
    rs.sort();
    rs.dedup();
    ls.sort();
    ls.dedup();
    if rs.len() != found.len() || ls.len() != found.len() {
        return Err(Error::CompletionNotUnique(found.len()));
    }
    Ok(found)
}

/// Bottom inequality `(i)` at `k` for bottom vertex lists `mu` (right) and `mu_bar` (left).
fn bottom_ok(mu: &[LatticePoint], mu_bar: &[LatticePoint], k: usize) -> bool {
    let a = (at(mu_bar, k) - at(mu, k - 1)).omega1();
    let b = (at(mu, k) - at(mu_bar, k - 1)).omega0();
    one_sided(a, b)
}

/// Bottoms on `side` of total weight at most `w` satisfying `(i)` against `known`.
fn compatible_bottoms(side: Side, known: &[LatticePoint], w: LatticePoint, bound: usize) -> Vec<BTreeMap<usize, i64>> {
    let bot = side.roots().0;
    let base = known[0];
    let mut out = Vec::new();
    let mut lower = vec![base];
    let mut cur = BTreeMap::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        side: Side,
        bot: RootAt,
        known: &[LatticePoint],
        w: LatticePoint,
        bound: usize,
        lower: &mut Vec<LatticePoint>,
        cur: &mut BTreeMap<usize, i64>,
        out: &mut Vec<BTreeMap<usize, i64>>,
    ) {
        if k > bound {
            out.push(cur.clone());
            return;
        }
        let r = bot(k);
        let mut x = 0;
        loop {
            let v = lower[k - 1] + x * r;
            if !(w - (v - known[0])).is_nonnegative() {
                break;
            }
            lower.push(v);
            let ok = k < 2
                || match side {
                    Side::Left => bottom_ok(known, lower, k),
                    Side::Right => bottom_ok(lower, known, k),
                };
            if ok {
                if x > 0 {
                    cur.insert(k, x);
                }
                go(k + 1, side, bot, known, w, bound, lower, cur, out);
                cur.remove(&k);
            }
            lower.pop();
            x += 1;
        }
    }
    go(1, side, bot, known, w, bound, &mut lower, &mut cur, &mut out);
    out
}

/// Multisets of `root(1), ..., root(bound)` summing to `w`.
fn single_kind(w: LatticePoint, root: RootAt, bound: usize) -> Vec<BTreeMap<usize, i64>> {
    fn go(
        w: LatticePoint,
        root: RootAt,
        k: usize,
        cur: &mut BTreeMap<usize, i64>,
        out: &mut Vec<BTreeMap<usize, i64>>,
    ) {
        if w == LatticePoint::ZERO {
            out.push(cur.clone());
            return;
        }
        if k == 0 {
            return;
        }
        let r = root(k);
        let mut x = 0;
        let mut rem = w;
        while rem.is_nonnegative() {
            if x > 0 {
                cur.insert(k, x);
            }
            go(rem, root, k - 1, cur, out);
            rem = rem - r;
            x += 1;
        }
        cur.remove(&k);
    }
    let mut out = Vec::new();
    if w.is_nonnegative() {
        go(w, root, bound, &mut BTreeMap::new(), &mut out);
    }
    out
}

/// The unique polytope whose datum on `side` is `d`.
///
/// The other bottom is grown under `(i)`; the partition is then one of three
/// candidates and the top is a single-kind decomposition of what remains.
pub fn complete(side: Side, d: &LusztigDatum, base: LatticePoint) -> Result<MVPolytope> {
    let w = d.weight(side);
    let bound = default_bound(w);
    let other = side.other();
    let (known, _) = side_vertices(base, d, side, bound);
    let (bot, top) = other.roots();
    let mut found = Vec::new();
    for bottom in compatible_bottoms(other, &known, w, bound) {
        let low: LatticePoint = bottom.iter().map(|(&k, &x)| x * bot(k)).fold(LatticePoint::ZERO, |a, b| a + b);
        let s = match side {
            Side::Right => (known[bound] - base - low).half_alpha1(),
            Side::Left => (low - (known[bound] - base)).half_alpha1(),
        };
        let lam = &d.partition;
        let mut parts = vec![lam.clone()];
        if s > 0 {
            parts.push(lam.with_part(s));
            parts.extend(lam.without_part(s));
        }
        for part in parts {
            let rest = w - low - part.size() * LatticePoint::DELTA;
            for t in single_kind(rest, top, bound) {
                let o = LusztigDatum { bottom: bottom.clone(), partition: part.clone(), top: t };
                let (left, right) = match side {
                    Side::Right => (o, d.clone()),
                    Side::Left => (d.clone(), o),
                };
                let p = MVPolytope { left, right, base };
                if validate(&p).passed() {
                    found.push(p);
                }
            }
        }
    }
    match found.len() {
        0 => Err(Error::CompletionNotFound),
        1 => Ok(found.into_iter().next().expect("one")),
        n => Err(Error::CompletionNotUnique(n)),
    }
}

/// `f_1` adds one to `a_1`, `f_0` adds one to `a_bar_1`.
pub fn crystal_f(p: &MVPolytope, i: usize) -> Result<MVPolytope> {
    let side = Side::of_index(i);
    let mut d = p.datum(side).clone();
    d.set_bottom(1, d.bottom_at(1) + 1);
    complete(side, &d, p.base)
}

/// Inverse of [`crystal_f`]; undefined when the first entry is zero.
pub fn crystal_e(p: &MVPolytope, i: usize) -> Result<MVPolytope> {
    let side = Side::of_index(i);
    let mut d = p.datum(side).clone();
    let a = d.bottom_at(1);
    if a == 0 {
        return Err(Error::OperatorUndefined);
    }
    d.set_bottom(1, a - 1);
    complete(side, &d, p.base)
}

/// Polytope of `f_{i1} ... f_{in}(b_0)` where `word` lists indices in application order.
pub fn polytope_of_word(word: &[usize]) -> Result<MVPolytope> {
    word.iter().try_fold(MVPolytope::point(), |p, &i| crystal_f(&p, i))
}

/// Indices in application order of an f-word taking the point to `p`.
pub fn lowering_word(p: &MVPolytope) -> Result<Vec<usize>> {
    let mut cur = p.normalized();
    let mut rev = Vec::new();
    while cur != MVPolytope::point() {
        let i = (0..2).find(|&i| cur.epsilon(i) > 0).ok_or(Error::OperatorUndefined)?;
        cur = crystal_e(&cur, i)?;
        rev.push(i);
    }
    rev.reverse();
    Ok(rev)
}

/// Top, delta-top or general.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Top,
    DeltaTop,
    /// Both first bottom entries positive and nothing else at the bottom.
    DeltaTopAmbiguous,
    General,
}

pub fn classify(p: &MVPolytope) -> Class {
    let beyond_first = |d: &LusztigDatum| d.bottom.keys().any(|&k| k > 1);
    if beyond_first(&p.left) || beyond_first(&p.right) {
        return Class::General;
    }
    if p.left.bottom_at(1) > 0 && p.right.bottom_at(1) > 0 {
        return Class::DeltaTopAmbiguous;
    }
    if p.left.partition.is_empty() && p.right.partition.is_empty() {
        Class::Top
    } else {
        Class::DeltaTop
    }
}

/// `Lambda - pi(1)` in the polytope lattice, for a path starting at `0`.
pub fn path_weight(path: &Path) -> Result<LatticePoint> {
    LatticePoint::from_coroot(&path.shape().sub(&path.endpoint()))
}

/// Bottom multiplicities `(a_bar_k, a_k)` read off the path.
pub fn path_bottom_data(datum: &RootDatum, path: &Path) -> Result<(Vec<i64>, Vec<i64>)> {
    let cap = 8 + 4 * path_weight(path)?.height().max(0) as usize;
    let left = bottom_vertices(datum, path, 0, cap)?.multiplicities;
    let right = bottom_vertices(datum, path, 1, cap)?.multiplicities;
    Ok((left, right))
}

/// Polytope of a path: bottom data from the path, partitions from its decoration, top data by search.
/// Ties between top data are broken by the crystal word of the path.
pub fn reconstruct_from_path(datum: &RootDatum, path: &Path) -> Result<MVPolytope> {
    let w = path_weight(path)?;
    let (lb, rb) = path_bottom_data(datum, path)?;
    let (lam_bar, lam) = decorations::decorate(datum, path)?;
    let mut right = LusztigDatum::new(&rb, lam, &[]);
    let mut left = LusztigDatum::new(&lb, lam_bar, &[]);
    let (rw, lw) = (w - right.weight(Side::Right), w - left.weight(Side::Left));
    if !rw.is_nonnegative() || !lw.is_nonnegative() {
        return Err(Error::NoMatch);
    }
    let bound = default_bound(w);
    let rtops: Vec<BTreeMap<usize, i64>> =
        real_decompositions(rw, bound).into_iter().filter(|(_, k1)| k1.is_empty()).map(|(k0, _)| k0).collect();
    let ltops: Vec<BTreeMap<usize, i64>> =
        real_decompositions(lw, bound).into_iter().filter(|(k0, _)| k0.is_empty()).map(|(_, k1)| k1).collect();
    let mut found = Vec::new();
    for rt in &rtops {
        for lt in &ltops {
            right.top = rt.clone();
            left.top = lt.clone();
            let p = MVPolytope { left: left.clone(), right: right.clone(), base: LatticePoint::ZERO };
            if validate(&p).passed() {
                found.push(p);
            }
        }
    }
    match found.len() {
        0 => Err(Error::NoMatch),
        1 => Ok(found.pop().expect("one")),
        n => {
            // bottoms and partitions leave the top data open; the crystal word decides
            let via_word = polytope_of_word(&raising_word(datum, path)?)?;
            if found.contains(&via_word) {
                Ok(via_word)
            } else {
                Err(Error::MultipleMatches(n))
            }
        }
    }
}

/// Indices in application order of an f-word taking the highest element to `path`.
pub fn raising_word(datum: &RootDatum, path: &Path) -> Result<Vec<usize>> {
    let mut cur = path.clone();
    let mut rev = Vec::new();
    loop {
        let mut moved = false;
        for i in 0..2 {
            if epsilon(&cur, &datum.simple(i))? > 0 {
                cur = root_operator(datum, &cur, i, Direction::Raise, Power::Times(1)).expect("eps > 0");
                rev.push(i);
                moved = true;
                break;
            }
        }
        if !moved {
            rev.reverse();
            return Ok(rev);
        }
    }
}

/// Result of reducing a path to the element of its delta-top part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// `(index, exponent)` in application order, all exponents positive.
    pub e_word: Vec<(usize, u32)>,
    pub h: u32,
    pub i0: usize,
    pub reduced: Path,
}

/// Bottom data and weight of the delta-top part, computed from the bottom data of the path.
fn delta_top_target(left: &[i64], right: &[i64], w: LatticePoint) -> (usize, i64, LatticePoint) {
    let mu_inf = right.iter().enumerate().fold(LatticePoint::ZERO, |acc, (j, &a)| acc + a * a1_root(j + 1));
    let mu_bar_inf = left.iter().enumerate().fold(LatticePoint::ZERO, |acc, (j, &a)| acc + a * a0_root(j + 1));
    let d = mu_inf - mu_bar_inf;
    if d.c0 == 0 {
        (1, d.c1, w - mu_bar_inf)
    } else {
        (0, -d.c0, w - mu_inf)
    }
}

fn is_delta_top_shape(left: &[i64], right: &[i64]) -> bool {
    left.len() <= 1 && right.len() <= 1 && (left.is_empty() || right.is_empty())
}

/// Finds `f_{i0}^h e_{ir}^{kr} ... e_{i1}^{k1}` taking `path` to the element of its delta-top part.
///
/// Raises alternately by maximal powers, trying both starting indices, and stops at the
/// first stage where lowering by the weight difference gives the expected bottom data and weight.
pub fn genpol_reduce(datum: &RootDatum, path: &Path) -> Result<Reduction> {
    let w = path_weight(path)?;
    let (lb, rb) = path_bottom_data(datum, path)?;
    if is_delta_top_shape(&lb, &rb) {
        return Ok(Reduction { e_word: vec![], h: 0, i0: 0, reduced: path.clone() });
    }
    let (i0, first, target_w) = delta_top_target(&lb, &rb, w);
    let mut target_left = vec![];
    let mut target_right = vec![];
    if first > 0 {
        if i0 == 0 {
            target_left.push(first);
        } else {
            target_right.push(first);
        }
    }
    let check = |c: &Path| -> Result<Option<(u32, Path)>> {
        let diff = path_weight(c)? - target_w;
        let h = if i0 == 0 { diff.c0 } else { diff.c1 };
        let other = if i0 == 0 { diff.c1 } else { diff.c0 };
        if other != 0 || h > 0 || h < -first {
            return Ok(None);
        }
        let h = (-h) as u32;
        let Some(lowered) = root_operator(datum, c, i0, Direction::Lower, Power::Times(h)) else {
            return Ok(None);
        };
        let (l, r) = path_bottom_data(datum, &lowered)?;
        Ok((l == target_left && r == target_right).then_some((h, lowered)))
    };
    let cap = 4 * w.height().max(1) as usize + 4;
    let mut best: Option<Reduction> = None;
    for start in [1usize, 0] {
        let mut c = path.clone();
        let mut word = Vec::new();
        let mut i = start;
        let mut zeros = 0;
        for _ in 0..cap {
            let k = epsilon(&c, &datum.simple(i))?;
            if k > 0 {
                c = root_operator(datum, &c, i, Direction::Raise, Power::Max).expect("Max is total");
                word.push((i, k as u32));
                zeros = 0;
                if let Some((h, reduced)) = check(&c)? {
                    if best.as_ref().is_none_or(|b| word.len() < b.e_word.len()) {
                        best = Some(Reduction { e_word: word.clone(), h, i0, reduced });
                    }
                    break;
                }
            } else {
                zeros += 1;
                if zeros == 2 {
                    break;
                }
            }
            i = 1 - i;
        }
    }
    best.ok_or(Error::ReductionFailed)
}

/// Whether `k` is an index carrying an active bottom diagonal.
pub fn active_bottom(p: &MVPolytope, k: usize) -> bool {
    cut_at_active_diagonal(p, Diagonal::Bottom(k)).is_ok()
}

/// Raises by `K` on index `i`, then reads `eps_{1-i}` (path side).
pub fn eps_after_raise(datum: &RootDatum, path: &Path, i: usize, k: u32) -> Option<i64> {
    let raised = root_operator(datum, path, i, Direction::Raise, Power::Times(k))?;
    epsilon(&raised, &datum.simple(1 - i)).ok()
}
