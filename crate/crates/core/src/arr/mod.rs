//! Arrangements, multiarrangements and affine arrangements.
//!
//! Linear forms are stored as primitive integer vectors whose first nonzero
//! coordinate is positive, which makes hyperplane identity a plain vector
//! comparison.

mod flat;
mod format;

pub use flat::Flat;
pub use format::{parse, ParsedArrangement};

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, sparse::integer_row, Echelon, Matrix, Scalar};

/// Coefficient vector of a linear form.
pub type Form = Vec<Scalar>;

/// Index of the hyperplane at infinity in a coned arrangement.
pub const CONE_INFINITY: usize = 0;

/// Scales a nonzero form to a primitive integer vector with positive
/// leading coefficient; `None` for the zero form.
pub fn normalize_form(f: &[Scalar]) -> Option<Form> {
    let row = integer_row(f);
    if row.is_empty() {
        return None;
    }
    let mut out = vec![Scalar::zero(); f.len()];
    for (c, v) in row {
        out[c] = Scalar::from_integer(v);
    }
    Some(out)
}

fn form_from_i64(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_integer(x.into())).collect()
}

/// A central arrangement of distinct hyperplanes in a space of dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<Form>,
}

impl Arrangement {
    /// Builds an arrangement, normalizing forms and rejecting zero or
    /// repeated hyperplanes.
    pub fn new(dim: usize, forms: Vec<Form>) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "form {i} has {} coefficients, expected {dim}",
                    f.len()
                )));
            }
            let n = normalize_form(f)
                .ok_or_else(|| Error::InvalidInput(format!("form {i} is zero")))?;
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateHyperplane { line: i + 1 });
            }
            out.push(n);
        }
        Ok(Arrangement { dim, forms: out })
    }

    pub fn from_i64(dim: usize, forms: &[&[i64]]) -> Result<Self> {
        Arrangement::new(dim, forms.iter().map(|f| form_from_i64(f)).collect())
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            forms: Vec::new(),
        }
    }

    /// Coordinate hyperplanes `z_i = 0`.
    pub fn boolean(dim: usize) -> Self {
        let forms = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Arrangement { dim, forms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &Form {
        &self.forms[i]
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.dim);
        for f in &self.forms {
            e.insert(integer_row(f));
        }
        e
    }

    /// Index of a hyperplane, if present.
    pub fn position(&self, form: &[Scalar]) -> Option<usize> {
        let n = normalize_form(form)?;
        self.forms.iter().position(|f| *f == n)
    }

    /// Sub-arrangement on the given hyperplane indices (in the given order).
    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        Arrangement {
            dim: self.dim,
            forms: indices.iter().map(|&i| self.forms[i].clone()).collect(),
        }
    }

    pub fn simple(&self) -> Multiarrangement {
        Multiarrangement {
            base: self.clone(),
            mult: vec![1; self.len()],
        }
    }

    /// Hyperplanes containing the flat `x`.
    pub fn localize(&self, x: &Flat) -> Result<Arrangement> {
        Ok(self.subarrangement(&self.localize_indices(x)?))
    }

    pub fn localize_indices(&self, x: &Flat) -> Result<Vec<usize>> {
        if x.ambient_dim() != self.dim || x.arrangement_len() != self.len() {
            return Err(Error::InvalidFlat);
        }
        let idx = x.hyperplane_indices();
        let closure = Flat::closure(self, &idx);
        if closure.hyperplane_indices() != idx || closure.rank() != x.rank() {
            return Err(Error::InvalidFlat);
        }
        Ok(idx)
    }

    /// Coordinates `w = T z` in which hyperplane `h` becomes `w_1 = 0`:
    /// `w_1 = α_h` and the remaining coordinates are the `z_j` with `j`
    /// different from the leading index of `α_h`, in order.
    pub fn adapted_to(&self, h: usize) -> Arrangement {
        let alpha = &self.forms[h];
        let p = alpha
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero form");
        let forms = self
            .forms
            .iter()
            .map(|a| {
                let ratio = &a[p] / &alpha[p];
                let mut out = Vec::with_capacity(self.dim);
                out.push(ratio.clone());
                for j in (0..self.dim).filter(|&j| j != p) {
                    out.push(&a[j] - &ratio * &alpha[j]);
                }
                normalize_form(&out).expect("invertible change of coordinates")
            })
            .collect();
        Arrangement {
            dim: self.dim,
            forms,
        }
    }

    /// Ziegler restriction onto hyperplane `h`, in the coordinates of
    /// [`Arrangement::adapted_to`] with `w_1` dropped.
    pub fn restrict(&self, h: usize) -> Multiarrangement {
        self.restrict_with_sources(h).0
    }

    /// Restriction together with, for each restricted hyperplane, the
    /// indices of the hyperplanes of `self` meeting `H_h` in it.
    pub fn restrict_with_sources(&self, h: usize) -> (Multiarrangement, Vec<Vec<usize>>) {
        assert!(h < self.len(), "hyperplane index out of range");
        let adapted = self.adapted_to(h);
        let mut forms: Vec<Form> = Vec::new();
        let mut sources: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Form, usize> = HashMap::new();
        for (i, f) in adapted.forms.iter().enumerate() {
            if i == h {
                continue;
            }
            let r =
                normalize_form(&f[1..]).expect("distinct hyperplanes restrict to nonzero forms");
            match index.get(&r) {
                Some(&k) => sources[k].push(i),
                None => {
                    index.insert(r.clone(), forms.len());
                    forms.push(r);
                    sources.push(vec![i]);
                }
            }
        }
        let mult = sources.iter().map(|s| s.len() as u32).collect();
        let base = Arrangement {
            dim: self.dim - 1,
            forms,
        };
        (Multiarrangement { base, mult }, sources)
    }

    /// Quotient by the common intersection of all hyperplanes. Returns the
    /// arrangement in dimension `rank` together with the rank.
    pub fn essentialize(&self) -> (Arrangement, usize) {
        let rref = self.echelon().into_rref();
        let pivots = rref.pivots;
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let c: Vec<Scalar> = pivots.iter().map(|&p| f[p].clone()).collect();
                normalize_form(&c).expect("nonzero form")
            })
            .collect();
        let r = pivots.len();
        (Arrangement { dim: r, forms }, r)
    }

    /// Irreducible direct summands, as connected components of the linear
    /// matroid on the normals. Each summand is returned essentialized,
    /// together with the indices of its hyperplanes in `self`.
    pub fn decompose(&self) -> Vec<Summand> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        let mut basis: Vec<usize> = Vec::new();
        let mut ech = Echelon::new(self.dim);
        for i in 0..n {
            if ech.insert(integer_row(&self.forms[i])) {
                basis.push(i);
            }
        }
        for e in 0..n {
            if basis.contains(&e) {
                continue;
            }
            // fundamental circuit of e with respect to the basis
            let cols = basis.len() + 1;
            let rows: Vec<Vec<Scalar>> = (0..self.dim)
                .map(|c| {
                    basis
                        .iter()
                        .map(|&b| self.forms[b][c].clone())
                        .chain(std::iter::once(self.forms[e][c].clone()))
                        .collect()
                })
                .collect();
            let ker = crate::exact::kernel_basis(&Matrix::from_rows(rows, cols));
            debug_assert_eq!(ker.len(), 1);
            for (k, &b) in basis.iter().enumerate() {
                if !ker[0][k].is_zero() {
                    uf.union(b, e);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_group: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = uf.find(i);
            let g = *root_group.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        groups
            .into_iter()
            .map(|indices| {
                let (arrangement, _) = self.subarrangement(&indices).essentialize();
                Summand {
                    indices,
                    arrangement,
                }
            })
            .collect()
    }

    /// Applies the coordinate change `w = M z`; forms transform as `a ↦ a M⁻¹`.
    pub fn transform(&self, m: &Matrix) -> Result<Arrangement> {
        let inv = m
            .inverse()
            .ok_or_else(|| Error::InvalidInput("singular coordinate change".into()))?;
        let forms = self
            .forms
            .iter()
            .map(|a| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|i| &a[i] * &inv[(i, j)]).sum())
                    .collect()
            })
            .collect();
        Arrangement::new(self.dim, forms)
    }

    /// Direct sum: `self` on the first coordinates, `other` on the rest.
    pub fn direct_sum(&self, other: &Arrangement) -> Arrangement {
        let dim = self.dim + other.dim;
        let mut forms = Vec::with_capacity(self.len() + other.len());
        for f in &self.forms {
            let mut v = f.clone();
            v.resize(dim, Scalar::zero());
            forms.push(v);
        }
        for f in &other.forms {
            let mut v = vec![Scalar::zero(); self.dim];
            v.extend(f.iter().cloned());
            forms.push(v);
        }
        Arrangement { dim, forms }
    }

    /// Defining polynomial `Q = ∏ α_H`.
    pub fn defining_polynomial(&self) -> crate::exact::MPoly {
        self.simple().defining_polynomial()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for f in &self.forms {
            s.push_str(&join_form(f));
            s.push('\n');
        }
        s
    }
}

fn join_form(f: &[Scalar]) -> String {
    f.iter().map(fmt_scalar).collect::<Vec<_>>().join(" ")
}

/// Direct summand of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub indices: Vec<usize>,
    pub arrangement: Arrangement,
}

/// Arrangement with a multiplicity per hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiarrangement {
    base: Arrangement,
    mult: Vec<u32>,
}

impl Multiarrangement {
    pub fn new(base: Arrangement, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != base.len() {
            return Err(Error::InvalidInput(format!(
                "{} multiplicities for {} hyperplanes",
                mult.len(),
                base.len()
            )));
        }
        Ok(Multiarrangement { base, mult })
    }

    pub fn constant(base: Arrangement, k: u32) -> Self {
        let mult = vec![k; base.len()];
        Multiarrangement { base, mult }
    }

    pub fn base(&self) -> &Arrangement {
        &self.base
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// `|k| = Σ k(H)`.
    pub fn total(&self) -> u64 {
        self.mult.iter().map(|&k| k as u64).sum()
    }

    pub fn forms(&self) -> &[Form] {
        self.base.forms()
    }

    /// Restricts the multiplicity to the hyperplanes containing `x`.
    pub fn localize(&self, x: &Flat) -> Result<Multiarrangement> {
        let idx = self.base.localize_indices(x)?;
        Ok(Multiarrangement {
            base: self.base.subarrangement(&idx),
            mult: idx.iter().map(|&i| self.mult[i]).collect(),
        })
    }

    pub fn essentialize(&self) -> (Multiarrangement, usize) {
        let (base, r) = self.base.essentialize();
        (
            Multiarrangement {
                base,
                mult: self.mult.clone(),
            },
            r,
        )
    }

    /// `Q(A, k) = ∏ α_H^{k(H)}`.
    pub fn defining_polynomial(&self) -> crate::exact::MPoly {
        let n = self.dim();
        self.base
            .forms
            .iter()
            .zip(&self.mult)
            .fold(crate::exact::MPoly::one(n), |acc, (f, &k)| {
                &acc * &crate::exact::MPoly::linear(f).pow(k)
            })
    }

    /// Drops hyperplanes of multiplicity zero.
    pub fn support(&self) -> Multiarrangement {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| self.mult[i] > 0).collect();
        Multiarrangement {
            base: self.base.subarrangement(&idx),
            mult: idx.iter().map(|&i| self.mult[i]).collect(),
        }
    }

    pub fn transform(&self, m: &Matrix) -> Result<Multiarrangement> {
        Ok(Multiarrangement {
            base: self.base.transform(m)?,
            mult: self.mult.clone(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim());
        for (f, k) in self.base.forms.iter().zip(&self.mult) {
            s.push_str(&format!("{} | {k}\n", join_form(f)));
        }
        s
    }
}

/// Affine hyperplanes `{v : α(v) = c}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineArrangement {
    dim: usize,
    hyperplanes: Vec<(Form, Scalar)>,
}

impl AffineArrangement {
    pub fn new(dim: usize, hyperplanes: Vec<(Form, Scalar)>) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(hyperplanes.len());
        for (i, (f, c)) in hyperplanes.into_iter().enumerate() {
            if f.len() != dim {
                return Err(Error::InvalidInput(format!("form {i} has wrong length")));
            }
            if f.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidInput(format!("form {i} is zero")));
            }
            let mut v = f;
            v.push(c);
            // the leading entry lies in the linear part, so (α, c) and (−α, −c) agree
            let n = integer_row(&v);
            let mut dense = vec![Scalar::zero(); dim + 1];
            for (col, x) in n {
                dense[col] = Scalar::from_integer(x);
            }
            let offset = dense.pop().unwrap();
            if seen.insert((dense.clone(), offset.clone()), i).is_some() {
                return Err(Error::DuplicateHyperplane { line: i + 1 });
            }
            out.push((dense, offset));
        }
        Ok(AffineArrangement {
            dim,
            hyperplanes: out,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[(Form, Scalar)] {
        &self.hyperplanes
    }

    /// Homogenization `{α − c·x_0} ∪ {x_0}` in dimension `dim + 1`; the new
    /// coordinate is index 0 and `x_0 = 0` is hyperplane [`CONE_INFINITY`].
    pub fn cone(&self) -> Arrangement {
        let d = self.dim + 1;
        let mut forms = Vec::with_capacity(self.len() + 1);
        let mut inf = vec![Scalar::zero(); d];
        inf[0] = Scalar::one();
        forms.push(inf);
        for (f, c) in &self.hyperplanes {
            let mut v = Vec::with_capacity(d);
            v.push(-c.clone());
            v.extend(f.iter().cloned());
            forms.push(v);
        }
        Arrangement::new(d, forms)
            .expect("cone of a valid affine arrangement has distinct hyperplanes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for (f, c) in &self.hyperplanes {
            s.push_str(&format!("{} = {}\n", join_form(f), fmt_scalar(c)));
        }
        s
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Serializable view of forms as canonical rational strings.
#[derive(Debug, Clone, Serialize)]
pub struct FormsJson {
    pub dim: usize,
    pub forms: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<u32>>,
}

impl From<&Arrangement> for FormsJson {
    fn from(a: &Arrangement) -> Self {
        FormsJson {
            dim: a.dim,
            forms: a
                .forms
                .iter()
                .map(|f| f.iter().map(fmt_scalar).collect())
                .collect(),
            mult: None,
        }
    }
}

impl From<&Multiarrangement> for FormsJson {
    fn from(m: &Multiarrangement) -> Self {
        FormsJson {
            mult: Some(m.mult.clone()),
            ..FormsJson::from(&m.base)
        }
    }
}
