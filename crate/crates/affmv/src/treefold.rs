//! Folded paths: a combinatorial model of one retraction step.
//!
//! A folded path is `Upsilon'_w(pi)` together with one coefficient per stable
//! section against `w(a_i)`. Folding reflects the prefix up to the first
//! minimum and every stable section whose cumulative coefficient, summed
//! backwards from `t = 1` within its level, is nonzero.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{qr, Q};
use crate::paths::{ddim, ddim_contacts, sections, Path};
use crate::rootdata::{Root, RootDatum};
use crate::upsilon::{is_reduced, upsilon_prime};

/// A stable section with its wall level and coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marker {
    pub start: Q,
    pub end: Q,
    pub level: i64,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedPath {
    pub base: Path,
    /// `-w(a_i)`.
    pub root: Root,
    /// Ordered by time.
    pub markers: Vec<Marker>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParameterKind {
    FreeLine,
    PuncturedLine,
}

/// One parameter per wall contact counted by `ddim`; a contact where the path bends is punctured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSpace {
    pub count: usize,
    pub kinds: Vec<ParameterKind>,
}

impl ParameterSpace {
    pub fn of_path(datum: &RootDatum, path: &Path, word: &[usize], cutoff: i64) -> Result<Self> {
        let kinds: Vec<ParameterKind> = ddim_contacts(datum, path, word, cutoff)?
            .iter()
            .map(|c| if c.fold { ParameterKind::PuncturedLine } else { ParameterKind::FreeLine })
            .collect();
        debug_assert_eq!(kinds.len() as u64, ddim(datum, path, word, cutoff)?);
        Ok(ParameterSpace { count: kinds.len(), kinds })
    }
}

/// Levels of the stable sections of `base` against `w(a_i)`, in time order.
pub fn marker_levels(datum: &RootDatum, base: &Path, word: &[usize], i: usize) -> Result<Vec<i64>> {
    let wa = datum.root_image(word, i);
    Ok(sections(base, &wa)?.stable().map(|s| s.level).collect())
}

impl FoldedPath {
    /// Attaches `coeffs` to the stable sections of `base` against `w(a_i)`.
    pub fn over(datum: &RootDatum, base: Path, word: &[usize], i: usize, coeffs: &[Q]) -> Result<Self> {
        let wa = datum.root_image(word, i);
        let stable: Vec<_> = sections(&base, &wa)?.stable().cloned().collect();
        if stable.len() != coeffs.len() {
            return Err(Error::LengthMismatch { expected: stable.len(), got: coeffs.len() });
        }
        let markers = stable
            .into_iter()
            .zip(coeffs)
            .map(|(s, c)| Marker { start: s.start, end: s.end, level: s.level, coeff: c.clone() })
            .collect();
        Ok(FoldedPath { base, root: wa.neg(), markers })
    }

    /// Minimal level `m` of `w(a_i)` and the first time `q` it is reached.
    pub fn first_minimum(&self) -> (Q, Q) {
        let prof = self.base.profile(&self.root.neg().form);
        let m = prof.min();
        let q = prof.hits(&m)[0].0.clone();
        (m, q)
    }

    /// Markers after the first minimum, the ones folding acts on.
    pub fn active_markers(&self) -> impl Iterator<Item = &Marker> {
        let (_, q) = self.first_minimum();
        self.markers.iter().filter(move |mk| mk.start >= q)
    }

    pub fn is_generic(&self) -> bool {
        genericity(&self.markers)
    }
}

/// Backward cumulative coefficient of each marker within its level group.
fn backward_sums<'a>(markers: impl DoubleEndedIterator<Item = &'a Marker>) -> Vec<(&'a Marker, Q)> {
    let mut acc: BTreeMap<i64, Q> = BTreeMap::new();
    let mut out: Vec<(&Marker, Q)> = markers
        .rev()
        .map(|mk| {
            let s = acc.entry(mk.level).or_insert_with(Q::zero);
            *s += &mk.coeff;
            (mk, s.clone())
        })
        .collect();
    out.reverse();
    out
}

/// Every backward prefix sum within a level group is nonzero.
pub fn genericity(markers: &[Marker]) -> bool {
    backward_sums(markers.iter()).iter().all(|(_, s)| !s.is_zero())
}

/// `build_folded` on `Upsilon'_w(pi)`.
pub fn build_folded(datum: &RootDatum, path: &Path, word: &[usize], i: usize, coeffs: &[Q]) -> Result<FoldedPath> {
    let mut longer = word.to_vec();
    longer.push(i);
    if !is_reduced(datum, &longer) {
        return Err(Error::NonReducedWord(longer));
    }
    FoldedPath::over(datum, upsilon_prime(datum, path, word)?, word, i, coeffs)
}

/// Reflects the prefix `[0, q]` about the minimal wall and each active stable section
/// with nonzero cumulative coefficient about its own wall.
pub fn fold_plus(eta: &FoldedPath) -> Path {
    let (m, q) = eta.first_minimum();
    let mut out = eta.base.reflect_prefix_affine(&q, &eta.root, &m);
    let active: Vec<&Marker> = eta.markers.iter().filter(|mk| mk.start >= q).collect();
    for (mk, sum) in backward_sums(active.into_iter()) {
        if !sum.is_zero() {
            out = out.reflect_interval(&mk.start, &mk.end, &eta.root);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractStep {
    pub result: Path,
    pub is_generic: bool,
}

/// One induction step `w -> w s_i`. Generic coefficients give `Upsilon'_{w s_i}(pi)`.
pub fn retract_step(datum: &RootDatum, path: &Path, word: &[usize], i: usize, coeffs: &[Q]) -> Result<RetractStep> {
    let eta = build_folded(datum, path, word, i, coeffs)?;
    Ok(RetractStep { result: fold_plus(&eta), is_generic: eta.is_generic() })
}

/// Folds along `word` letter by letter, each step acting on the previous output.
/// `coeffs` receives the marker levels of each step and returns its coefficients.
pub fn retract_chain(
    datum: &RootDatum,
    path: &Path,
    word: &[usize],
    mut coeffs: impl FnMut(&[i64]) -> Vec<Q>,
) -> Result<Vec<Path>> {
    if !is_reduced(datum, word) {
        return Err(Error::NonReducedWord(word.to_vec()));
    }
    let mut out = vec![path.clone()];
    for n in 0..word.len() {
        let base = out[n].clone();
        let levels = marker_levels(datum, &base, &word[..n], word[n])?;
        let c = coeffs(&levels);
        let eta = FoldedPath::over(datum, base, &word[..n], word[n], &c)?;
        out.push(fold_plus(&eta));
    }
    Ok(out)
}

/// Nonzero rational in `[-6, 6]` with denominator at most 6.
pub fn sample_coeff(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let n: i64 = rng.gen_range(-6..=6);
        if n != 0 {
            return qr(n, rng.gen_range(1..=6));
        }
    }
}

/// Random coefficients for markers at `levels` satisfying the genericity condition.
pub fn sample_generic(rng: &mut ChaCha8Rng, levels: &[i64]) -> Vec<Q> {
    loop {
        let c: Vec<Q> = levels.iter().map(|_| sample_coeff(rng)).collect();
        let markers: Vec<Marker> = levels
            .iter()
            .zip(&c)
            .map(|(&level, coeff)| Marker { start: Q::zero(), end: Q::zero(), level, coeff: coeff.clone() })
            .collect();
        if genericity(&markers) {
            return c;
        }
    }
}
