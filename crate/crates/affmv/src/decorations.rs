//! Zigzags and the partitions they decorate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::mvpoly::{genpol_reduce, Partition};
use crate::paths::{epsilon, sections, Path, SectionKind};
use crate::rootdata::RootDatum;

/// An `a_i`-zigzag `[s, v]` at level `k` witnessed by `[t, u]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zigzag {
    pub i: usize,
    pub k: i64,
    pub s: Q,
    pub v: Q,
    pub t: Q,
    pub u: Q,
}

fn min_on(path: &Path, form: &crate::linalg::Form, a: &Q, b: &Q) -> Result<Q> {
    let mut m = form.eval(&path.sample(a)?.point).min(form.eval(&path.sample(b)?.point));
    for t in path.times().iter().filter(|t| *t > a && *t < b) {
        m = m.min(form.eval(&path.sample(t)?.point));
    }
    Ok(m)
}

/// Zigzags against `a_i`, one per overlapping pair of stable sections at levels `k` and `-k`.
pub fn find_zigzags(datum: &RootDatum, path: &Path, i: usize) -> Result<Vec<Zigzag>> {
    let (ai, aj) = (datum.simple(i), datum.simple(1 - i));
    let si = sections(path, &ai)?;
    let sj = sections(path, &aj)?;
    let mut out: Vec<Zigzag> = Vec::new();
    for a in si.stable() {
        for b in sj.stable().filter(|b| b.level == -a.level) {
            if !(a.start <= b.start && b.start < a.end && a.end <= b.end) {
                continue;
            }
            let (s, v) = (&a.start, &b.end);
            if min_on(path, &ai.form, s, v)? < q(a.level) || min_on(path, &aj.form, s, v)? < q(b.level) {
                continue;
            }
            out.push(Zigzag { i, k: a.level, s: s.clone(), v: v.clone(), t: b.start.clone(), u: a.end.clone() });
        }
    }
    Ok(out)
}

/// `m_{i,k}` for `k > 0`.
pub fn zigzag_multiplicities(datum: &RootDatum, path: &Path, i: usize) -> Result<BTreeMap<i64, i64>> {
    let mut m = BTreeMap::new();
    for z in find_zigzags(datum, path, i)? {
        if z.k > 0 {
            *m.entry(z.k).or_insert(0) += 1;
        }
    }
    Ok(m)
}

/// Whether `min a_j = -n`, at the last time it is attained, lies inside an `a_i`-stable section at `n`, `j = 1 - i`.
pub fn min_in_stable_section(datum: &RootDatum, path: &Path, i: usize, n: i64) -> Result<bool> {
    let aj = datum.simple(1 - i);
    let prof = path.profile(&aj.form);
    let m = prof.min();
    if m != q(-n) {
        return Ok(false);
    }
    let p = prof.hits(&m).pop().expect("minimum is reached").1;
    let sec = sections(path, &datum.simple(i))?;
    let found = sec.stable().filter(|s| s.level == n).any(|s| s.start < p && p < s.end);
    Ok(found)
}

/// `(lambda_bar(pi), lambda(pi))` for a path with exactly one of `eps_0, eps_1` positive.
pub fn read_partitions(datum: &RootDatum, path: &Path) -> Result<(Partition, Partition)> {
    let eps0 = epsilon(path, &datum.simple(0))?;
    let eps1 = epsilon(path, &datum.simple(1))?;
    match (eps0, eps1) {
        (n, 0) if n > 0 => {
            let lam_bar = Partition::from_multiplicities(&zigzag_multiplicities(datum, path, 1)?);
            let lam = if min_in_stable_section(datum, path, 1, n)? { lam_bar.with_part(n) } else { lam_bar.clone() };
            Ok((lam_bar, lam))
        }
        (0, n) if n > 0 => {
            let lam = Partition::from_multiplicities(&zigzag_multiplicities(datum, path, 0)?);
            let lam_bar = if min_in_stable_section(datum, path, 0, n)? { lam.with_part(n) } else { lam.clone() };
            Ok((lam_bar, lam))
        }
        _ => Err(Error::HypothesisNotMet { eps0, eps1 }),
    }
}

/// Partitions `(lambda_bar, lambda)` decorating the polytope of `path`.
pub fn decorate(datum: &RootDatum, path: &Path) -> Result<(Partition, Partition)> {
    let red = genpol_reduce(datum, path)?;
    let eps0 = epsilon(&red.reduced, &datum.simple(0))?;
    let eps1 = epsilon(&red.reduced, &datum.simple(1))?;
    match (eps0, eps1) {
        (0, 0) => Ok((Partition::empty(), Partition::empty())),
        (a, b) if a > 0 && b > 0 => Err(Error::DeltaTopAmbiguous),
        _ => read_partitions(datum, &red.reduced),
    }
}

/// Stable sections of `path` against `a_i`, as `(start, end, level)`.
pub fn stable_sections(datum: &RootDatum, path: &Path, i: usize) -> Result<Vec<(Q, Q, i64)>> {
    Ok(sections(path, &datum.simple(i))?
        .sections
        .into_iter()
        .filter(|s| s.kind == SectionKind::Stable)
        .map(|s| (s.start, s.end, s.level))
        .collect())
}
