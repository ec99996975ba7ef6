//! `Theta_k`, `Upsilon_w`, `Upsilon'_w` and bottom vertices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{to_int, Vector, Q};
use crate::paths::{epsilon, root_operator, Direction, Path, Power};
use crate::rootdata::{Root, RootDatum};

/// `[pi, f_{i1}^max pi, f_{i2}^max f_{i1}^max pi, ...]`.
pub fn theta_sequence(datum: &RootDatum, path: &Path, word: &[usize]) -> Vec<Path> {
    let mut out = vec![path.clone()];
    for &i in word {
        let last = out.last().expect("nonempty");
        let next = root_operator(datum, last, i, Direction::Lower, Power::Max).expect("Max is total");
        out.push(next);
    }
    out
}

/// A word is reduced iff every root `s_{i1} ... s_{i(k-1)}(a_{ik})` is positive.
pub fn is_reduced(datum: &RootDatum, word: &[usize]) -> bool {
    (0..word.len()).all(|k| datum.root_sign(&datum.weyl_act_form(&word[..k], &datum.simple_roots[word[k]])) > 0)
}

/// All reduced words of a finite Weyl group, grouped by element.
pub fn reduced_words(datum: &RootDatum) -> Result<Vec<Vec<Vec<usize>>>> {
    if datum.is_affine() {
        return Err(Error::InvalidDatum("Weyl group is infinite".into()));
    }
    let reg = datum.regular_vector();
    let mut groups: BTreeMap<Vec<Q>, Vec<Vec<usize>>> = BTreeMap::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in layer {
            for i in 0..datum.rank() {
                let mut longer = w.clone();
                longer.push(i);
                if is_reduced(datum, &longer) {
                    next.push(longer);
                }
            }
            groups.entry(datum.weyl_act(&w, reg).0).or_default().push(w);
        }
        layer = next;
    }
    Ok(groups.into_values().collect())
}

/// `Upsilon_w(pi) = w . Theta_n`.
pub fn upsilon(datum: &RootDatum, path: &Path, word: &[usize]) -> Result<Path> {
    if !is_reduced(datum, word) {
        return Err(Error::NonReducedWord(word.to_vec()));
    }
    let theta = theta_sequence(datum, path, word);
    Ok(theta.last().expect("nonempty").weyl_act(datum, word))
}

/// `Upsilon_w` translated so that it ends at `pi(1)`.
pub fn upsilon_prime(datum: &RootDatum, path: &Path, word: &[usize]) -> Result<Path> {
    let u = upsilon(datum, path, word)?;
    Ok(u.translate(&path.endpoint().sub(&u.endpoint())))
}

/// The alternating word `i, i+1, i, ...` of length `n` in affine rank 2.
pub fn alternating(first: usize, n: usize) -> Vec<usize> {
    (0..n).map(|k| (first + k) % 2).collect()
}

/// Bottom vertices on one side of the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottomData {
    /// Index starting the alternating word.
    pub side: usize,
    /// `Upsilon'_w(pi)(0)` for the prefixes `w` of the alternating word, up to stabilization.
    pub vertices: Vec<Vector>,
    /// `eps_{i_k}(Theta_{k-1})`, trailing zeros removed.
    pub multiplicities: Vec<i64>,
}

impl BottomData {
    /// `vertices[0] - vertices[k]`: the vertices measured upward from the bottom of the polytope.
    pub fn polytope_vertices(&self) -> Vec<Vector> {
        self.vertices.iter().map(|v| self.vertices[0].sub(v)).collect()
    }

    pub fn multiplicity(&self, k: usize) -> i64 {
        k.checked_sub(1).and_then(|j| self.multiplicities.get(j)).copied().unwrap_or(0)
    }
}

/// Largest index `k` with `a_{i} + (k-1) delta <= Lambda - pi(1)` for either simple root.
fn index_bound(path: &Path) -> Result<usize> {
    let nu = path.shape().sub(&path.weight());
    let c = |j: usize| to_int(&nu.0[j]).ok_or_else(|| Error::MalformedPath(format!("weight {nu} is not integral")));
    Ok((c(0)?.max(c(1)?).max(0) + 1) as usize)
}

/// Runs the alternating words from `first` up to the largest index the weight allows.
///
/// A zero multiplicity does not freeze `Theta` (`f^max` still acts), so two consecutive
/// zeros do not imply stabilization; the weight bound does.
pub fn bottom_vertices(datum: &RootDatum, path: &Path, first: usize, cap: usize) -> Result<BottomData> {
    if !datum.is_affine() {
        return Err(Error::NotAffine);
    }
    let limit = index_bound(path)?;
    if limit > cap {
        return Err(Error::StabilizationCapExceeded(cap));
    }
    let mu = path.endpoint();
    let mut theta = path.clone();
    let mut word: Vec<usize> = Vec::new();
    let mut vertices = vec![path.start().clone()];
    let mut mult = Vec::new();
    for k in 0..limit {
        let i = (first + k) % 2;
        let a = epsilon(&theta, &datum.simple(i))?;
        theta = root_operator(datum, &theta, i, Direction::Lower, Power::Max).expect("Max is total");
        word.push(i);
        let w_end = datum.weyl_act(&word, &theta.endpoint().sub(theta.start()));
        vertices.push(mu.sub(&w_end));
        mult.push(a);
    }
    while mult.last() == Some(&0) {
        mult.pop();
        vertices.pop();
    }
    Ok(BottomData { side: first, vertices, multiplicities: mult })
}

/// Outcome of the minimum-level and wall-reflection checks for `(w, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionCheck {
    /// Minimum of `w(a_i)` along `Upsilon'_w(pi)`.
    pub m: i64,
    /// `w(a)(mu - Upsilon_w(pi)(1)) - eps_a(Theta_w)`.
    pub m_formula: i64,
    /// First and last times at which the minimum is reached.
    pub q: Q,
    pub p: Q,
    /// Reflection identity on `[0, q]`.
    pub ok: bool,
    /// Reflection identity on `[0, p]`.
    pub ok_to_last_min: bool,
    /// Reflection identity on all of `[0, 1]`.
    pub ok_full: bool,
}

/// Whether `b(t) = s(a(t))` at every breakpoint of either path inside `[0, until]`.
fn agree_on(a: &Path, b: &Path, until: &Q, map: impl Fn(&Vector) -> Vector) -> Result<bool> {
    let mut times: Vec<Q> = a.times().into_iter().chain(b.times()).filter(|t| t <= until).collect();
    times.push(until.clone());
    times.sort();
    times.dedup();
    for t in &times {
        if b.sample(t)?.point != map(&a.sample(t)?.point) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes `m` directly and by formula, and tests
/// `Upsilon'_{w s_i}(pi)(t) = s_{-w(a_i), m}(Upsilon'_w(pi)(t))`.
pub fn min_level_and_reflection_check(
    datum: &RootDatum,
    path: &Path,
    word: &[usize],
    i: usize,
) -> Result<ReflectionCheck> {
    let mut longer = word.to_vec();
    longer.push(i);
    if !is_reduced(datum, &longer) {
        return Err(Error::NonReducedWord(longer));
    }
    let mu = path.endpoint();
    let theta = theta_sequence(datum, path, word);
    let theta_w = theta.last().expect("nonempty");
    let ups = theta_w.weyl_act(datum, word);
    let ups_p = ups.translate(&mu.sub(&ups.endpoint()));
    let wa: Root = datum.root_image(word, i);
    let prof = ups_p.profile(&wa.form);
    let m_q = prof.min();
    let m = to_int(&m_q).ok_or_else(|| Error::NonIntegralLevel(crate::linalg::fmt_q(&m_q)))?;
    let eps = epsilon(theta_w, &datum.simple(i))?;
    let mf = wa.form.eval(&mu.sub(&ups.endpoint())) - Q::from_integer(eps.into());
    let m_formula = to_int(&mf).ok_or_else(|| Error::NonIntegralLevel(crate::linalg::fmt_q(&mf)))?;
    let hits = prof.hits(&m_q);
    let q = hits.first().expect("minimum is reached").0.clone();
    let p = hits.last().expect("minimum is reached").1.clone();
    let target = upsilon_prime(datum, path, &longer)?;
    let wall = wa.neg();
    let refl = |x: &Vector| wall.affine_reflect(&m_q, x);
    Ok(ReflectionCheck {
        m,
        m_formula,
        ok: agree_on(&ups_p, &target, &q, refl)?,
        ok_to_last_min: agree_on(&ups_p, &target, &p, refl)?,
        ok_full: agree_on(&ups_p, &target, &Q::from_integer(1.into()), refl)?,
        q,
        p,
    })
}

/// Both sides of the consecutive-difference identity for `word = w s_{in}`:
/// `Upsilon'_{w s_{in}}(pi)(0) - Upsilon'_w(pi)(0)` and `-eps_{a_{in}}(Theta_{n-1}) w(a_{in}^v)`.
/// Start points descend, so the polytope side uses `pi(0) - Upsilon'_w(pi)(0)`.
pub fn consecutive_difference(datum: &RootDatum, path: &Path, word: &[usize]) -> Result<(Vector, Vector)> {
    let n = word.len();
    assert!(n > 0, "word must be nonempty");
    let w = &word[..n - 1];
    let lhs = upsilon_prime(datum, path, word)?.start().sub(upsilon_prime(datum, path, w)?.start());
    let theta = theta_sequence(datum, path, w);
    let eps = epsilon(theta.last().expect("nonempty"), &datum.simple(word[n - 1]))?;
    let beta = datum.weyl_act(w, &datum.simple_coroots[word[n - 1]]);
    let rhs = beta.scale(&Q::from_integer((-eps).into()));
    Ok((lhs, rhs))
}
