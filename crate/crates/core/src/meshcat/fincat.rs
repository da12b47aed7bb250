//! Finite `k`-linear categories given by hom bases and structure constants.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::ringlin::{Matrix, RingSpec};

/// Objects: the points `(i, j)` of the translation quiver and a formal zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Obj {
    Zero,
    Pt(usize, usize),
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Zero => write!(f, "0"),
            Obj::Pt(i, j) => write!(f, "({i},{j})"),
        }
    }
}

/// An irreducible map `(i, j) -> (i-1, j)` or `(i, j) -> (i, j-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub src: (usize, usize),
    pub tgt: (usize, usize),
}

/// How a basis element is written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    /// Composite of arrows in traversal order; empty for an identity.
    Path(Vec<Arrow>),
    /// `left · phi_i · right`, `right` traversed first.
    Word { left: Vec<Arrow>, i: usize, right: Vec<Arrow> },
}

impl Label {
    pub fn is_bimodule(&self) -> bool {
        matches!(self, Label::Word { .. })
    }
}

/// A morphism as coordinates over the hom basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub src: usize,
    pub tgt: usize,
    pub v: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    pub field: RingSpec,
    pub objects: Vec<Obj>,
    pub index: HashMap<Obj, usize>,
    /// Basis labels of `hom(x, y)` at `x * N + y`.
    pub labels: Vec<Vec<Label>>,
    /// Structure constants at `(x * N + y) * N + z`, laid out `[b][a][c]`
    /// for basis `a` of `hom(x, y)`, `b` of `hom(y, z)`, `c` of `hom(x, z)`.
    comp: Vec<Vec<u32>>,
}

impl FinCat {
    /// Builds the category from labels and a composition rule on basis
    /// elements: `rule(x, y, z, b, a)` is the coordinate vector of `b ∘ a`.
    pub fn build(
        field: RingSpec,
        objects: Vec<Obj>,
        labels: Vec<Vec<Label>>,
        rule: impl Fn(usize, usize, usize, usize, usize) -> Vec<u32>,
    ) -> FinCat {
        let n = objects.len();
        let index = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                let dxy = labels[x * n + y].len();
                for z in 0..n {
                    let dyz = labels[y * n + z].len();
                    let dxz = labels[x * n + z].len();
                    let mut t = Vec::with_capacity(dyz * dxy * dxz);
                    if dxz > 0 {
                        for b in 0..dyz {
                            for a in 0..dxy {
                                let c = rule(x, y, z, b, a);
                                debug_assert_eq!(c.len(), dxz);
                                t.extend(c);
                            }
                        }
                    }
                    comp.push(t);
                }
            }
        }
        FinCat { field, objects, index, labels, comp }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn idx(&self, o: Obj) -> usize {
        self.index[&o]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.labels[x * self.len() + y].len()
    }

    pub fn basis_labels(&self, x: usize, y: usize) -> &[Label] {
        &self.labels[x * self.len() + y]
    }

    pub fn zero(&self, x: usize, y: usize) -> Mor {
        Mor { src: x, tgt: y, v: vec![0; self.dim(x, y)] }
    }

    pub fn basis(&self, x: usize, y: usize, a: usize) -> Mor {
        let mut m = self.zero(x, y);
        m.v[a] = 1;
        m
    }

    /// The identity; its coordinates are found among the basis labels.
    pub fn identity(&self, x: usize) -> Mor {
        let mut m = self.zero(x, x);
        if let Some(a) = self.basis_labels(x, x).iter().position(|l| *l == Label::Path(vec![])) {
            m.v[a] = 1;
        }
        m
    }

    pub fn compose(&self, g: &Mor, f: &Mor) -> Mor {
        assert_eq!(f.tgt, g.src, "composable morphisms");
        let (x, y, z) = (f.src, f.tgt, g.tgt);
        let n = self.len();
        let k = self.field;
        let dxy = self.dim(x, y);
        let dxz = self.dim(x, z);
        let t = &self.comp[(x * n + y) * n + z];
        let mut out = vec![0; dxz];
        if dxz == 0 {
            return Mor { src: x, tgt: z, v: out };
        }
        for (b, &gb) in g.v.iter().enumerate() {
            if gb == 0 {
                continue;
            }
            for (a, &fa) in f.v.iter().enumerate() {
                if fa == 0 {
                    continue;
                }
                let c = k.mul(gb, fa);
                let base = (b * dxy + a) * dxz;
                for (o, &s) in out.iter_mut().zip(&t[base..base + dxz]) {
                    *o = k.add(*o, k.mul(c, s));
                }
            }
        }
        Mor { src: x, tgt: z, v: out }
    }

    pub fn add(&self, a: &Mor, b: &Mor) -> Mor {
        assert_eq!((a.src, a.tgt), (b.src, b.tgt));
        Mor { v: a.v.iter().zip(&b.v).map(|(&x, &y)| self.field.add(x, y)).collect(), ..a.clone() }
    }

    pub fn scale(&self, c: u32, a: &Mor) -> Mor {
        Mor { v: a.v.iter().map(|&x| self.field.mul(c, x)).collect(), ..a.clone() }
    }

    pub fn is_zero(&self, m: &Mor) -> bool {
        m.v.iter().all(|&x| x == 0)
    }

    /// Hom dimension table over all ordered pairs of objects.
    pub fn dim_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|x| (0..self.len()).map(|y| self.dim(x, y)).collect()).collect()
    }

    /// Is `End(x)` local: every basis element other than the identity is
    /// nilpotent and products of such elements have no identity component.
    /// Returns a non-nilpotent witness otherwise.
    pub fn check_local(&self, x: usize) -> Result<(), Mor> {
        let d = self.dim(x, x);
        let id = self.identity(x);
        if d == 0 {
            return Ok(());
        }
        let id_pos = id.v.iter().position(|&c| c == 1);
        for a in 0..d {
            if Some(a) == id_pos {
                continue;
            }
            let e = self.basis(x, x, a);
            let mut p = e.clone();
            for _ in 0..d {
                p = self.compose(&e, &p);
            }
            if !self.is_zero(&p) {
                return Err(e);
            }
            for b in 0..d {
                if Some(b) == id_pos {
                    continue;
                }
                let prod = self.compose(&self.basis(x, x, b), &e);
                if id_pos.is_some_and(|i| prod.v[i] != 0) {
                    return Err(prod);
                }
            }
        }
        Ok(())
    }

    /// Coordinates of the given morphisms as columns.
    pub fn columns(&self, x: usize, y: usize, ms: &[Mor]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(x, y), ms.len());
        for (j, f) in ms.iter().enumerate() {
            for (i, &c) in f.v.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }
}

/// A morphism of the additive completion: `entries[r][c]` in
/// `hom(src[c], tgt[r])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddMor {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub entries: Vec<Vec<Mor>>,
}

/// The free additive category on a finite category: finite sequences of
/// objects with matrices of morphisms.
pub struct Additive<'a> {
    pub base: &'a FinCat,
}

impl<'a> Additive<'a> {
    pub fn new(base: &'a FinCat) -> Self {
        Additive { base }
    }

    pub fn hom_dim(&self, xs: &[usize], ys: &[usize]) -> usize {
        xs.iter().map(|&x| ys.iter().map(|&y| self.base.dim(x, y)).sum::<usize>()).sum()
    }

    pub fn zero(&self, xs: &[usize], ys: &[usize]) -> AddMor {
        AddMor {
            src: xs.to_vec(),
            tgt: ys.to_vec(),
            entries: ys.iter().map(|&y| xs.iter().map(|&x| self.base.zero(x, y)).collect()).collect(),
        }
    }

    pub fn identity(&self, xs: &[usize]) -> AddMor {
        let mut m = self.zero(xs, xs);
        for (r, &x) in xs.iter().enumerate() {
            m.entries[r][r] = self.base.identity(x);
        }
        m
    }

    pub fn compose(&self, g: &AddMor, f: &AddMor) -> AddMor {
        assert_eq!(f.tgt, g.src);
        let mut out = self.zero(&f.src, &g.tgt);
        for r in 0..g.tgt.len() {
            for c in 0..f.src.len() {
                let mut acc = self.base.zero(f.src[c], g.tgt[r]);
                for m in 0..f.tgt.len() {
                    acc = self.base.add(&acc, &self.base.compose(&g.entries[r][m], &f.entries[m][c]));
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    /// All morphisms `xs -> ys`; only for tiny hom spaces.
    pub fn enumerate(&self, xs: &[usize], ys: &[usize]) -> Vec<AddMor> {
        let p = self.base.field.p;
        let total = self.hom_dim(xs, ys);
        let mut out = vec![];
        let count = (p as usize).pow(total as u32);
        for mut code in 0..count {
            let mut m = self.zero(xs, ys);
            for r in 0..ys.len() {
                for c in 0..xs.len() {
                    for t in 0..m.entries[r][c].v.len() {
                        m.entries[r][c].v[t] = (code % p as usize) as u32;
                        code /= p as usize;
                    }
                }
            }
            out.push(m);
        }
        out
    }

    /// Iso classes by Krull-Schmidt: sorted multisets of indecomposables,
    /// after checking that every object involved has a local endomorphism
    /// ring. Zero objects are dropped.
    pub fn iso_class(&self, xs: &[usize]) -> Result<Vec<usize>, (usize, Mor)> {
        let mut v = vec![];
        for &x in xs {
            if self.base.objects[x] == Obj::Zero {
                continue;
            }
            self.base.check_local(x).map_err(|w| (x, w))?;
            v.push(x);
        }
        v.sort();
        Ok(v)
    }

    pub fn is_isomorphic(&self, xs: &[usize], ys: &[usize]) -> Result<bool, (usize, Mor)> {
        Ok(self.iso_class(xs)? == self.iso_class(ys)?)
    }

    /// Exhaustive search for mutually inverse morphisms.
    pub fn find_iso_by_search(&self, xs: &[usize], ys: &[usize]) -> Option<(AddMor, AddMor)> {
        let id_x = self.identity(xs);
        let id_y = self.identity(ys);
        let backs = self.enumerate(ys, xs);
        for f in self.enumerate(xs, ys) {
            for g in &backs {
                if self.compose(g, &f) == id_x && self.compose(&f, g) == id_y {
                    return Some((f, g.clone()));
                }
            }
        }
        None
    }
}
