//! Piecewise-linear paths with exact breakpoints.
//!
//! A path is a start point plus `(direction, duration)` segments whose
//! durations sum to 1. Root operators use levels relative to the start point,
//! sections use absolute levels.

use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, q, to_int, Form, Vector, Q};
use crate::rootdata::{RealRoot, Root, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub dir: Vector,
    pub dur: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: Vector,
    segments: Vec<Segment>,
    shape: Vector,
}

/// Point and one-sided derivatives at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub point: Vector,
    pub left: Option<Vector>,
    pub right: Option<Vector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Zero,
    Stable,
    DirectedUp,
    DirectedDown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub start: Q,
    pub end: Q,
    pub kind: SectionKind,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPartition {
    pub root: Root,
    pub sections: Vec<Section>,
}

impl SectionPartition {
    pub fn stable(&self) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(|s| s.kind == SectionKind::Stable)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Power {
    Times(u32),
    Max,
}

/// Values of a linear form along a path, at every breakpoint.
#[derive(Clone, Debug)]
pub(crate) struct Profile {
    pub times: Vec<Q>,
    pub values: Vec<Q>,
}

impl Profile {
    /// Index `j` with `times[j] <= t < times[j+1]`, or the last segment at `t = 1`.
    fn segment_at(&self, t: &Q) -> usize {
        let n = self.times.len() - 1;
        (0..n).find(|&j| &self.times[j + 1] > t).unwrap_or(n - 1)
    }

    fn slope_sign(&self, j: usize) -> i32 {
        crate::linalg::sign(&(&self.values[j + 1] - &self.values[j]))
    }

    pub fn min(&self) -> Q {
        self.values.iter().min().cloned().expect("nonempty")
    }

    /// Maximal closed intervals on which the profile equals `target`, in order.
    pub fn hits(&self, target: &Q) -> Vec<(Q, Q)> {
        let mut out: Vec<(Q, Q)> = Vec::new();
        let mut push = |a: Q, b: Q| {
            if let Some(last) = out.last_mut() {
                if last.1 >= a {
                    if b > last.1 {
                        last.1 = b;
                    }
                    return;
                }
            }
            out.push((a, b));
        };
        for j in 0..self.times.len() - 1 {
            let (t0, t1) = (&self.times[j], &self.times[j + 1]);
            let (h0, h1) = (&self.values[j], &self.values[j + 1]);
            if h0 == target && h1 == target {
                push(t0.clone(), t1.clone());
            } else if (h0 <= target && target <= h1) || (h1 <= target && target <= h0) {
                let t = t0 + (target - h0) * (t1 - t0) / (h1 - h0);
                push(t.clone(), t);
            }
        }
        out
    }

    fn first_hit_after(&self, t: &Q, target: &Q) -> Option<Q> {
        self.hits(target).into_iter().find(|(a, _)| a > t).map(|(a, _)| a)
    }
}

impl Path {
    pub fn new(start: Vector, segments: Vec<Segment>, shape: Vector) -> Result<Path> {
        let n = start.dim();
        shape.check_dim(n)?;
        if segments.is_empty() {
            return Err(Error::MalformedPath("no segments".into()));
        }
        let mut total = Q::zero();
        for s in &segments {
            s.dir.check_dim(n)?;
            if !s.dur.is_positive() {
                return Err(Error::MalformedPath(format!("non-positive duration {}", fmt_q(&s.dur))));
            }
            total += &s.dur;
        }
        if total != Q::one() {
            return Err(Error::MalformedPath(format!("durations sum to {}", fmt_q(&total))));
        }
        Ok(Path::from_raw(start, segments, shape))
    }

    /// Builds and normalizes without validation.
    fn from_raw(start: Vector, segments: Vec<Segment>, shape: Vector) -> Path {
        let mut merged: Vec<Segment> = Vec::with_capacity(segments.len());
        for s in segments {
            if s.dur.is_zero() {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.dir == s.dir => last.dur += s.dur,
                _ => merged.push(s),
            }
        }
        Path { start, segments: merged, shape }
    }

    /// The straight path `t -> t * lambda` for a dominant integral `lambda`.
    pub fn straight(datum: &RootDatum, lambda: &Vector) -> Result<Path> {
        lambda.check_dim(datum.dim_y)?;
        if !datum.is_dominant(lambda) || !lambda.is_integral() {
            return Err(Error::NotDominant);
        }
        Ok(Path {
            start: Vector::zeros(datum.dim_y),
            segments: vec![Segment { dir: lambda.clone(), dur: Q::one() }],
            shape: lambda.clone(),
        })
    }

    pub fn start(&self) -> &Vector {
        &self.start
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn shape(&self) -> &Vector {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.start.dim()
    }

    pub fn endpoint(&self) -> Vector {
        self.segments.iter().fold(self.start.clone(), |p, s| p.axpy(&s.dur, &s.dir))
    }

    /// Breakpoint times, from 0 to 1.
    pub fn times(&self) -> Vec<Q> {
        let mut t = Q::zero();
        let mut out = vec![t.clone()];
        for s in &self.segments {
            t += &s.dur;
            out.push(t.clone());
        }
        out
    }

    /// Points at the breakpoint times.
    pub fn points(&self) -> Vec<Vector> {
        let mut p = self.start.clone();
        let mut out = vec![p.clone()];
        for s in &self.segments {
            p = p.axpy(&s.dur, &s.dir);
            out.push(p.clone());
        }
        out
    }

    pub(crate) fn profile(&self, f: &Form) -> Profile {
        let mut h = f.eval(&self.start);
        let mut t = Q::zero();
        let mut times = vec![t.clone()];
        let mut values = vec![h.clone()];
        for s in &self.segments {
            t += &s.dur;
            h += f.eval(&s.dir) * &s.dur;
            times.push(t.clone());
            values.push(h.clone());
        }
        Profile { times, values }
    }

    /// Values of `f` at the breakpoints.
    pub fn levels(&self, f: &Form) -> Vec<Q> {
        self.profile(f).values
    }

    pub fn sample(&self, t: &Q) -> Result<Sample> {
        if t.is_negative() || t > &Q::one() {
            return Err(Error::OutOfRange(fmt_q(t)));
        }
        let mut p = self.start.clone();
        let mut t0 = Q::zero();
        let n = self.segments.len();
        for (j, s) in self.segments.iter().enumerate() {
            let t1 = &t0 + &s.dur;
            if t < &t1 || j == n - 1 {
                let point = p.axpy(&(t - &t0), &s.dir);
                let (left, right) = if *t == t0 {
                    let left = (j > 0).then(|| self.segments[j - 1].dir.clone());
                    (left, Some(s.dir.clone()))
                } else if *t == t1 {
                    (Some(s.dir.clone()), None)
                } else {
                    (Some(s.dir.clone()), Some(s.dir.clone()))
                };
                return Ok(Sample { point, left, right });
            }
            p = p.axpy(&s.dur, &s.dir);
            t0 = t1;
        }
        unreachable!("durations sum to 1")
    }

    pub fn translate(&self, v: &Vector) -> Path {
        Path { start: self.start.add(v), segments: self.segments.clone(), shape: self.shape.clone() }
    }

    /// Applies a linear map to the start point and every direction.
    pub fn map_linear(&self, f: impl Fn(&Vector) -> Vector) -> Path {
        let segments = self.segments.iter().map(|s| Segment { dir: f(&s.dir), dur: s.dur.clone() }).collect();
        Path::from_raw(f(&self.start), segments, self.shape.clone())
    }

    /// Pointwise Weyl action `t -> w(pi(t))`.
    pub fn weyl_act(&self, datum: &RootDatum, word: &[usize]) -> Path {
        self.map_linear(|v| datum.weyl_act(word, v))
    }

    /// Concatenation `self * other`, each traversed at double speed; shapes add.
    pub fn concat(&self, other: &Path) -> Path {
        let half = Q::new(1.into(), 2.into());
        let two = Q::from_integer(2.into());
        let segments = self
            .segments
            .iter()
            .chain(&other.segments)
            .map(|s| Segment { dir: s.dir.scale(&two), dur: &s.dur * &half })
            .collect();
        Path::from_raw(self.start.clone(), segments, self.shape.add(&other.shape))
    }

    /// Pieces `(t0, t1, dir)` after cutting at the given times.
    fn pieces(&self, cuts: &[Q]) -> Vec<(Q, Q, Vector)> {
        let mut out = Vec::new();
        let mut t0 = Q::zero();
        for s in &self.segments {
            let t1 = &t0 + &s.dur;
            let mut a = t0.clone();
            let mut inner: Vec<&Q> = cuts.iter().filter(|c| **c > t0 && **c < t1).collect();
            inner.sort();
            inner.dedup();
            for c in inner {
                out.push((a.clone(), c.clone(), s.dir.clone()));
                a = c.clone();
            }
            out.push((a, t1.clone(), s.dir.clone()));
            t0 = t1;
        }
        out
    }

    /// Replaces directions on `[a, b]` by their image under a linear map.
    pub fn map_interval(&self, a: &Q, b: &Q, f: impl Fn(&Vector) -> Vector) -> Path {
        let segments = self
            .pieces(&[a.clone(), b.clone()])
            .into_iter()
            .map(|(t0, t1, dir)| {
                let dir = if &t0 >= a && &t1 <= b { f(&dir) } else { dir };
                Segment { dir, dur: t1 - t0 }
            })
            .collect();
        Path::from_raw(self.start.clone(), segments, self.shape.clone())
    }

    /// Reflects the piece on `[a, b]` by the linear reflection of `root`.
    pub fn reflect_interval(&self, a: &Q, b: &Q, root: &Root) -> Path {
        self.map_interval(a, b, |v| root.reflect(v))
    }

    /// Reflects the prefix `[0, b]` by the affine reflection `s_{root,k}`, keeping `pi(b)` fixed
    /// when it lies on the wall.
    pub fn reflect_prefix_affine(&self, b: &Q, root: &Root, k: &Q) -> Path {
        let moved = self.map_interval(&Q::zero(), b, |v| root.reflect(v));
        Path { start: root.affine_reflect(k, &self.start), ..moved }
    }

    /// Checks that every direction lies in `W . shape` and the endpoints are integral.
    pub fn check_lambda_path(&self, datum: &RootDatum) -> Result<()> {
        if !self.start.is_integral() || !self.endpoint().is_integral() {
            return Err(Error::MalformedPath("endpoints are not integral".into()));
        }
        for s in &self.segments {
            if !datum.in_orbit(&s.dir, &self.shape) {
                return Err(Error::MalformedPath(format!("direction {} not in W.shape", s.dir)));
            }
        }
        Ok(())
    }

    /// Weight `pi(1) - pi(0)`.
    pub fn weight(&self) -> Vector {
        self.endpoint().sub(&self.start)
    }
}

/// Section partition of a path against a (positive) root, by forward scan.
pub fn sections(path: &Path, root: &Root) -> Result<SectionPartition> {
    let prof = path.profile(&root.form);
    let one = Q::one();
    let mut out = Vec::new();
    let mut t = Q::zero();
    let mut level_q = prof.values[0].clone();
    let mut level = to_int(&level_q).ok_or_else(|| Error::NonIntegralLevel(fmt_q(&level_q)))?;
    while t < one {
        let j = prof.segment_at(&t);
        match prof.slope_sign(j) {
            0 => {
                let mut k = j;
                while k + 1 < prof.times.len() - 1 && prof.slope_sign(k + 1) == 0 {
                    k += 1;
                }
                let end = prof.times[k + 1].clone();
                out.push(Section { start: t.clone(), end: end.clone(), kind: SectionKind::Zero, level });
                t = end;
            }
            1 => {
                let back = prof.first_hit_after(&t, &level_q);
                let up = prof.first_hit_after(&t, &(&level_q + &one));
                match (back, up) {
                    (Some(r), _) => {
                        out.push(Section { start: t.clone(), end: r.clone(), kind: SectionKind::Stable, level });
                        t = r;
                    }
                    (None, Some(u)) => {
                        out.push(Section { start: t.clone(), end: u.clone(), kind: SectionKind::DirectedUp, level });
                        t = u;
                        level += 1;
                        level_q += &one;
                    }
                    _ => return Err(Error::NonIntegralLevel(fmt_q(&prof.values[prof.values.len() - 1]))),
                }
            }
            _ => {
                let down = prof.first_hit_after(&t, &(&level_q - &one));
                let back = prof.first_hit_after(&t, &level_q);
                match (down, back) {
                    (Some(d), b) if b.as_ref().is_none_or(|b| &d < b) => {
                        out.push(Section { start: t.clone(), end: d.clone(), kind: SectionKind::DirectedDown, level });
                        t = d;
                        level -= 1;
                        level_q -= &one;
                    }
                    (_, Some(b)) => {
                        let lo = prof.values.iter().filter(|v| **v < level_q).min().cloned().unwrap_or(q(0));
                        let _ = b;
                        return Err(Error::NonIntegralLevel(fmt_q(&lo)));
                    }
                    _ => return Err(Error::NonIntegralLevel(fmt_q(&prof.values[prof.values.len() - 1]))),
                }
            }
        }
    }
    Ok(SectionPartition { root: root.clone(), sections: out })
}

/// `-min` of the level relative to the start.
pub fn epsilon(path: &Path, root: &Root) -> Result<i64> {
    let prof = path.profile(&root.form);
    let m = prof.min() - &prof.values[0];
    to_int(&m).map(|m| -m).ok_or_else(|| Error::NonIntegralLevel(fmt_q(&m)))
}

/// End level minus minimum level.
pub fn phi(path: &Path, root: &Root) -> Result<i64> {
    let prof = path.profile(&root.form);
    let d = &prof.values[prof.values.len() - 1] - prof.min();
    to_int(&d).ok_or_else(|| Error::NonIntegralLevel(fmt_q(&d)))
}

/// One application of `f_root`, `None` when undefined.
pub fn lower(path: &Path, root: &Root) -> Option<Path> {
    let prof = path.profile(&root.form);
    let qmin = prof.min();
    if !(&qmin - &prof.values[0]).is_integer() {
        return None;
    }
    if prof.values[prof.values.len() - 1].clone() - &qmin < Q::one() {
        return None;
    }
    let p = prof.hits(&qmin).last()?.1.clone();
    let x = prof.first_hit_after(&p, &(&qmin + Q::one()))?;
    Some(path.reflect_interval(&p, &x, root))
}

/// One application of `e_root`, `None` when undefined.
pub fn raise(path: &Path, root: &Root) -> Option<Path> {
    let prof = path.profile(&root.form);
    let qmin = prof.min();
    let rel = &qmin - &prof.values[0];
    if !rel.is_integer() || rel.is_zero() {
        return None;
    }
    let qt = prof.hits(&qmin).first()?.0.clone();
    let y = prof.hits(&(&qmin + Q::one())).into_iter().filter(|(_, b)| b < &qt).next_back()?.1;
    Some(path.reflect_interval(&y, &qt, root))
}

/// `f^n` in one pass: the direction is reflected exactly where the profile runs along its
/// future minimum `F(t) = min_{[t,1]} h` below `min h + n`.
fn lower_n(path: &Path, prof: &Profile, root: &Root, n: u32) -> Path {
    let cap = prof.min() + Q::from_integer(n.into());
    let k = prof.values.len();
    let mut future = prof.values.clone();
    for j in (0..k - 1).rev() {
        if future[j + 1] < future[j] {
            future[j] = future[j + 1].clone();
        }
    }
    let mut out = Vec::with_capacity(path.segments.len() + 2);
    for (j, seg) in path.segments.iter().enumerate() {
        let (h0, h1) = (&prof.values[j], &prof.values[j + 1]);
        let upper = (&future[j + 1]).min(&cap);
        if h1 <= h0 || h0 >= upper {
            out.push(seg.clone());
            continue;
        }
        let cut = &seg.dur * (upper - h0) / (h1 - h0);
        let rest = &seg.dur - &cut;
        out.push(Segment { dir: root.reflect(&seg.dir), dur: cut });
        out.push(Segment { dir: seg.dir.clone(), dur: rest });
    }
    Path::from_raw(path.start.clone(), out, path.shape.clone())
}

/// Same start, segments in reverse order with negated directions.
fn reversed(path: &Path) -> Path {
    let segs = path.segments.iter().rev().map(|s| Segment { dir: s.dir.neg(), dur: s.dur.clone() }).collect();
    Path { start: path.start.clone(), segments: segs, shape: path.shape.clone() }
}

pub fn apply_root(path: &Path, root: &Root, dir: Direction, power: Power) -> Option<Path> {
    if power == Power::Times(0) {
        return Some(path.clone());
    }
    let prof = path.profile(&root.form);
    let m = prof.min();
    let h0 = &prof.values[0];
    if !(&m - h0).is_integer() {
        return (power == Power::Max).then(|| path.clone());
    }
    let steps = match dir {
        Direction::Lower => (&prof.values[prof.values.len() - 1] - &m).floor().to_integer(),
        Direction::Raise => (h0 - &m).to_integer(),
    };
    let steps = u32::try_from(steps).expect("step count fits u32");
    let n = match power {
        Power::Times(n) if n > steps => return None,
        Power::Times(n) => n,
        Power::Max => steps,
    };
    if n == 0 {
        return Some(path.clone());
    }
    Some(match dir {
        Direction::Lower => lower_n(path, &prof, root, n),
        Direction::Raise => {
            let r = reversed(path);
            reversed(&lower_n(&r, &r.profile(&root.form), root, n))
        }
    })
}

/// Root operator at a simple index.
pub fn root_operator(datum: &RootDatum, path: &Path, i: usize, dir: Direction, power: Power) -> Option<Path> {
    apply_root(path, &datum.simple(i), dir, power)
}

/// Reflects exactly the stable sections by the linear reflection of `root`.
pub fn flip(path: &Path, root: &Root) -> Result<Path> {
    let part = sections(path, root)?;
    let mut out = path.clone();
    for s in part.stable() {
        out = out.reflect_interval(&s.start, &s.end, root);
    }
    Ok(out)
}

/// Integer levels of `f` crossed on `(t0, t1]` while moving along one segment.
fn integer_levels(h0: &Q, h1: &Q) -> Vec<i64> {
    let (lo, hi, lo_open) = if h0 < h1 { (h0, h1, true) } else { (h1, h0, false) };
    let mut a = lo.ceil().to_integer();
    if lo_open && lo.is_integer() {
        a += 1;
    }
    let mut b = hi.floor().to_integer();
    if !lo_open && hi.is_integer() {
        b -= 1;
    }
    let a = i64::try_from(a).expect("level fits i64");
    let b = i64::try_from(b).expect("level fits i64");
    (a..=b).collect()
}

/// A crossing of the wall `M(beta, level)` counted by `ddim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallContact {
    pub time: Q,
    /// Negative real root `beta`.
    pub root: RealRoot,
    pub level: i64,
    /// Whether the path bends at the wall, its next direction being the `beta`-reflection.
    pub fold: bool,
}

/// Every wall contact counted by `ddim`, in root order then time order.
pub fn ddim_contacts(datum: &RootDatum, path: &Path, word: &[usize], cutoff: i64) -> Result<Vec<WallContact>> {
    let rev: Vec<usize> = word.iter().rev().copied().collect();
    let segs = path.segments();
    let mut out = Vec::new();
    for gamma in RealRoot::positive_roots(datum, cutoff)? {
        let beta = gamma.neg();
        // Side of the sector germ w.S_{-inf} relative to walls of beta.
        let pre = datum.weyl_act_form(&rev, &beta.root.form);
        let sgn = datum.root_sign(&pre);
        let prof = path.profile(&beta.root.form);
        for (j, s) in segs.iter().enumerate() {
            let slope = crate::linalg::sign(&beta.root.form.eval(&s.dir));
            if slope * sgn >= 0 {
                continue;
            }
            let (h0, h1) = (&prof.values[j], &prof.values[j + 1]);
            for level in integer_levels(h0, h1) {
                let time = &prof.times[j] + (q(level) - h0) * &s.dur / (h1 - h0);
                let fold =
                    time == prof.times[j + 1] && segs.get(j + 1).is_some_and(|n| n.dir == beta.root.reflect(&s.dir));
                out.push(WallContact { time, root: beta.clone(), level, fold });
            }
        }
    }
    Ok(out)
}

fn ddim_raw(datum: &RootDatum, path: &Path, word: &[usize], cutoff: i64) -> Result<u64> {
    Ok(ddim_contacts(datum, path, word, cutoff)?.len() as u64)
}

/// Number of walls of negative real roots left positively by the path with respect to
/// `w.S_{-inf}`; self-checks stability of the count at `cutoff + 1`.
pub fn ddim(datum: &RootDatum, path: &Path, word: &[usize], cutoff: i64) -> Result<u64> {
    if !datum.is_affine() {
        return Err(Error::NotAffine);
    }
    let a = ddim_raw(datum, path, word, cutoff)?;
    let b = ddim_raw(datum, path, word, cutoff + 1)?;
    if a != b {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    Ok(a)
}

/// `rho(lambda - mu)` with `mu = pi(1) - pi(0)`.
pub fn rho_defect(datum: &RootDatum, path: &Path) -> Q {
    datum.rho.eval(&path.shape().sub(&path.weight()))
}

/// `rho(lambda - w^{-1} mu)` with `mu = pi(1) - pi(0)`: the bound on `ddim^w` for Hecke paths
/// relative to `w.S_{-inf}`, attained by LS paths.
pub fn twisted_rho_defect(datum: &RootDatum, path: &Path, word: &[usize]) -> Q {
    let rev: Vec<usize> = word.iter().rev().copied().collect();
    datum.rho.eval(&path.shape().sub(&datum.weyl_act(&rev, &path.weight())))
}

/// A word `f_{i1}^{k1} ... f_{ir}^{kr}` as written; the rightmost factor acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FWord(pub Vec<(usize, u32)>);

impl FWord {
    pub fn apply(&self, datum: &RootDatum, path: &Path) -> Option<Path> {
        self.0
            .iter()
            .rev()
            .try_fold(path.clone(), |p, &(i, k)| root_operator(datum, &p, i, Direction::Lower, Power::Times(k)))
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&(_, k)| k).sum()
    }
}

/// One crystal element with the f-indices that produced it, in application order.
#[derive(Clone, Debug)]
pub struct Element {
    pub path: Path,
    pub depth: usize,
    pub word: Vec<usize>,
}

/// Truncated path crystal generated from a straight path by lowering operators.
#[derive(Clone, Debug)]
pub struct Crystal {
    pub shape: Vector,
    pub depth: usize,
    pub elements: Vec<Element>,
    index: HashMap<Path, usize>,
}

impl Crystal {
    pub fn generate(datum: &RootDatum, shape: &Vector, depth: usize) -> Result<Crystal> {
        use rayon::prelude::*;
        let root = Path::straight(datum, shape)?;
        let mut elements = vec![Element { path: root.clone(), depth: 0, word: vec![] }];
        let mut index = HashMap::new();
        index.insert(root, 0usize);
        let mut frontier = vec![0usize];
        for d in 1..=depth {
            let children: Vec<Vec<(usize, Path)>> = frontier
                .par_iter()
                .map(|&e| {
                    (0..datum.rank())
                        .filter_map(|i| lower(&elements[e].path, &datum.simple(i)).map(|p| (i, p)))
                        .collect()
                })
                .collect();
            let mut next = Vec::new();
            for (&parent, kids) in frontier.iter().zip(children) {
                for (i, p) in kids {
                    if index.contains_key(&p) {
                        continue;
                    }
                    let mut word = elements[parent].word.clone();
                    word.push(i);
                    index.insert(p.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(Element { path: p, depth: d, word });
                }
            }
            frontier = next;
        }
        Ok(Crystal { shape: shape.clone(), depth, elements, index })
    }

    pub fn contains(&self, path: &Path) -> bool {
        self.index.contains_key(path)
    }

    pub fn position(&self, path: &Path) -> Option<usize> {
        self.index.get(path).copied()
    }

    pub fn at_depth(&self, d: usize) -> impl Iterator<Item = &Element> {
        self.elements.iter().filter(move |e| e.depth == d)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Membership in the crystal generated from the straight path of shape `lambda`.
pub fn is_ls_member(datum: &RootDatum, path: &Path, lambda: &Vector, depth: usize) -> Result<bool> {
    if path.shape() != lambda {
        return Ok(false);
    }
    let defect = rho_defect(datum, path);
    let d = to_int(&defect).ok_or_else(|| Error::NonIntegralLevel(fmt_q(&defect)))?;
    if d < 0 {
        return Ok(false);
    }
    if d as usize > depth {
        return Err(Error::DepthExceeded { defect: d, depth });
    }
    if !path.start().is_zero() {
        return Ok(false);
    }
    let crystal = Crystal::generate(datum, lambda, d as usize)?;
    Ok(crystal.contains(path))
}
