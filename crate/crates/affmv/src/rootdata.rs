//! Cartan data, the rational coweight space and Weyl group actions.
//!
//! The affine sl2 realization uses the basis `(a0v, a1v, d)` of the
//! coweight space, with `a0(d) = 1`, `a1(d) = 0` and `rho(d) = 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, rank, solve, Form, Vector, Q};

/// Generalized Cartan matrix, `entry(i, j) = a_j(a_i^v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j && row[j] > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is positive")));
                }
                if (row[j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!("zero pattern broken at ({i},{j})")));
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    pub fn a2() -> Self {
        CartanMatrix { entries: vec![vec![2, -1], vec![-1, 2]] }
    }

    pub fn b2() -> Self {
        CartanMatrix { entries: vec![vec![2, -2], vec![-1, 2]] }
    }

    pub fn affine_a1() -> Self {
        CartanMatrix { entries: vec![vec![2, -2], vec![-2, 2]] }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// A root together with its coroot, acting on the coweight space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub form: Form,
    pub coroot: Vector,
}

impl Root {
    pub fn neg(&self) -> Root {
        Root { form: self.form.neg(), coroot: self.coroot.neg() }
    }

    /// Linear reflection `v - a(v) a^v`.
    pub fn reflect(&self, v: &Vector) -> Vector {
        let c = self.form.eval(v);
        if c.is_zero() {
            v.clone()
        } else {
            v.axpy(&-c, &self.coroot)
        }
    }

    /// Affine reflection `s_{a,k}(x) = x - (a(x) + k) a^v`, fixing the wall `a(x) + k = 0`.
    pub fn affine_reflect(&self, k: &Q, x: &Vector) -> Vector {
        let c = self.form.eval(x) + k;
        x.axpy(&-c, &self.coroot)
    }
}

/// Root generating system on a rational coweight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan: CartanMatrix,
    pub dim_y: usize,
    pub simple_coroots: Vec<Vector>,
    pub simple_roots: Vec<Form>,
    pub rho: Form,
    affine: bool,
    chamber: Vector,
}

impl RootDatum {
    pub fn new(
        cartan: CartanMatrix,
        simple_coroots: Vec<Vector>,
        simple_roots: Vec<Form>,
        rho: Form,
        affine: bool,
    ) -> Result<Self> {
        let n = cartan.rank();
        if simple_coroots.len() != n || simple_roots.len() != n {
            return Err(Error::InvalidDatum("wrong number of simple (co)roots".into()));
        }
        let dim_y = rho.dim();
        for v in &simple_coroots {
            v.check_dim(dim_y)?;
        }
        for f in &simple_roots {
            if f.dim() != dim_y {
                return Err(Error::DimensionMismatch { expected: dim_y, got: f.dim() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if simple_roots[j].eval(&simple_coroots[i]) != q(cartan.entry(i, j)) {
                    return Err(Error::InvalidDatum(format!("pairing ({i},{j}) disagrees with Cartan")));
                }
            }
            if rho.eval(&simple_coroots[i]) != Q::one() {
                return Err(Error::InvalidDatum(format!("rho(a{i}^v) != 1")));
            }
        }
        let roots: Vec<Vec<Q>> = simple_roots.iter().map(|f| f.0.clone()).collect();
        let coroots: Vec<Vec<Q>> = simple_coroots.iter().map(|v| v.0.clone()).collect();
        if rank(&roots) != n || rank(&coroots) != n {
            return Err(Error::InvalidDatum("simple (co)roots are linearly dependent".into()));
        }
        // A vector with a_i(v) = 1 for every i: positive roots are positive on it.
        let chamber = {
            let mut rows = roots.clone();
            let mut rhs = vec![Q::one(); n];
            // Complete to a square system using coordinate functionals.
            for k in 0..dim_y {
                if rows.len() == dim_y {
                    break;
                }
                let mut e = vec![Q::zero(); dim_y];
                e[k] = Q::one();
                let mut trial = rows.clone();
                trial.push(e);
                if rank(&trial) == trial.len() {
                    rows = trial;
                    rhs.push(Q::zero());
                }
            }
            Vector(solve(&rows, &rhs).ok_or_else(|| Error::InvalidDatum("singular system".into()))?)
        };
        Ok(RootDatum { cartan, dim_y, simple_coroots, simple_roots, rho, affine, chamber })
    }

    /// Finite-type datum on the coroot lattice: `a_i^v = e_i`.
    pub fn finite(cartan: CartanMatrix) -> Result<Self> {
        let n = cartan.rank();
        let coroots = (0..n)
            .map(|i| {
                let mut v = Vector::zeros(n);
                v.0[i] = Q::one();
                v
            })
            .collect();
        let roots = (0..n).map(|j| Form((0..n).map(|i| q(cartan.entry(i, j))).collect())).collect();
        let rho = Form(vec![Q::one(); n]);
        RootDatum::new(cartan, coroots, roots, rho, false)
    }

    /// Affine sl2 on `(a0v, a1v, d)`.
    pub fn affine_sl2() -> Self {
        let c = CartanMatrix::affine_a1();
        let coroots = vec![Vector::from_ints(&[1, 0, 0]), Vector::from_ints(&[0, 1, 0])];
        let roots = vec![Form::from_ints(&[2, -2, 1]), Form::from_ints(&[-2, 2, 0])];
        let rho = Form::from_ints(&[1, 1, 0]);
        RootDatum::new(c, coroots, roots, rho, true).expect("affine sl2 datum is valid")
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    /// `delta = a0 + a1` (affine sl2 only).
    pub fn delta(&self) -> Option<Form> {
        self.affine.then(|| self.simple_roots[0].add(&self.simple_roots[1]))
    }

    /// Central coroot `K = a0v + a1v` (affine sl2 only).
    pub fn central(&self) -> Option<Vector> {
        self.affine.then(|| self.simple_coroots[0].add(&self.simple_coroots[1]))
    }

    pub fn simple(&self, i: usize) -> Root {
        Root { form: self.simple_roots[i].clone(), coroot: self.simple_coroots[i].clone() }
    }

    pub fn pair(&self, form: &Form, v: &Vector) -> Result<Q> {
        if form.dim() != self.dim_y {
            return Err(Error::DimensionMismatch { expected: self.dim_y, got: form.dim() });
        }
        v.check_dim(self.dim_y)?;
        Ok(form.eval(v))
    }

    pub fn simple_reflection(&self, i: usize, v: &Vector) -> Vector {
        self.simple(i).reflect(v)
    }

    pub fn affine_reflection(&self, root: &Root, k: &Q, x: &Vector) -> Vector {
        root.affine_reflect(k, x)
    }

    /// `w(v)` for `w = s_{i1} ... s_{in}`: the rightmost letter acts first.
    pub fn weyl_act(&self, word: &[usize], v: &Vector) -> Vector {
        word.iter().rev().fold(v.clone(), |acc, &i| self.simple_reflection(i, &acc))
    }

    /// `w(f)` for a linear form, `(w f)(v) = f(w^{-1} v)`.
    pub fn weyl_act_form(&self, word: &[usize], f: &Form) -> Form {
        word.iter().rev().fold(f.clone(), |acc, &i| {
            let c = acc.eval(&self.simple_coroots[i]);
            if c.is_zero() {
                acc
            } else {
                acc.sub(&self.simple_roots[i].scale(&c))
            }
        })
    }

    /// Image of the simple root `a_i` and its coroot under `w`.
    pub fn root_image(&self, word: &[usize], i: usize) -> Root {
        Root {
            form: self.weyl_act_form(word, &self.simple_roots[i]),
            coroot: self.weyl_act(word, &self.simple_coroots[i]),
        }
    }

    /// A fixed vector of the open fundamental chamber.
    pub fn regular_vector(&self) -> &Vector {
        &self.chamber
    }

    /// Sign of a real root, read on a fixed vector of the open fundamental chamber.
    pub fn root_sign(&self, f: &Form) -> i32 {
        crate::linalg::sign(&f.eval(&self.chamber))
    }

    pub fn is_dominant(&self, v: &Vector) -> bool {
        self.simple_roots.iter().all(|a| !a.eval(v).is_negative())
    }

    pub fn is_w_fixed(&self, v: &Vector) -> bool {
        self.simple_roots.iter().all(|a| a.eval(v).is_zero())
    }

    /// Greedy descent to the dominant chamber; returns `(v_dom, w)` with `w(v_dom) = v`.
    pub fn dominant_representative(&self, v: &Vector) -> Result<(Vector, Vec<usize>)> {
        v.check_dim(self.dim_y)?;
        if self.affine {
            let d = self.delta().expect("affine");
            if !d.eval(v).is_positive() && !self.is_w_fixed(v) {
                return Err(Error::NotInTitsConeInterior);
            }
        }
        let mut cur = v.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.simple_roots[i].eval(&cur).is_negative()) {
            cur = self.simple_reflection(i, &cur);
            word.push(i);
        }
        Ok((cur, word))
    }

    /// Whether `v` lies in the Weyl orbit of the dominant vector `shape`.
    pub fn in_orbit(&self, v: &Vector, shape: &Vector) -> bool {
        matches!(self.dominant_representative(v), Ok((d, _)) if &d == shape)
    }
}

/// Affine sl2 real root `sign * a_i + k delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRoot {
    pub index: usize,
    pub negated: bool,
    pub delta_multiple: i64,
    pub root: Root,
}

impl RealRoot {
    pub fn new(datum: &RootDatum, index: usize, negated: bool, k: i64) -> Result<Self> {
        let delta = datum.delta().ok_or(Error::NotAffine)?;
        let kc = datum.central().ok_or(Error::NotAffine)?;
        let s = if negated { q(-1) } else { q(1) };
        let form = datum.simple_roots[index].scale(&s).add(&delta.scale(&q(k)));
        let coroot = datum.simple_coroots[index].scale(&s).add(&kc.scale(&q(k)));
        Ok(RealRoot { index, negated, delta_multiple: k, root: Root { form, coroot } })
    }

    pub fn is_positive(&self) -> bool {
        self.delta_multiple > 0 || (self.delta_multiple == 0 && !self.negated)
    }

    pub fn neg(&self) -> RealRoot {
        RealRoot {
            index: self.index,
            negated: !self.negated,
            delta_multiple: -self.delta_multiple,
            root: self.root.neg(),
        }
    }

    /// Positive real roots `a1 + k delta` (k >= 0) and `-a1 + k delta` (k >= 1), `k <= cutoff`.
    /// Every real root has exactly one presentation on index 1.
    pub fn positive_roots(datum: &RootDatum, cutoff: i64) -> Result<Vec<RealRoot>> {
        let mut out = Vec::new();
        for k in 0..=cutoff {
            out.push(RealRoot::new(datum, 1, false, k)?);
            if k >= 1 {
                out.push(RealRoot::new(datum, 1, true, k)?);
            }
        }
        Ok(out)
    }
}
