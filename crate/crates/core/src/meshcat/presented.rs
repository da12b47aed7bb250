//! `k`-linear categories presented by an acyclic quiver and relations.
//!
//! `hom(x, y)` is computed from the homs out of the targets of the arrows
//! leaving `x`: it is `k·id_x (if x = y) (+) ⊕_{a: x -> x'} hom(x', y)` modulo
//! the relations starting at `x` composed with `hom(t, y)`. A basis is a set
//! of paths, and any path reduces to coordinates over it.

use crate::error::{Error, Result};
use crate::ringlin::RingSpec;

use super::fincat::{Arrow, FinCat, Label, Obj};

/// `sum coeff * path`, each path a sequence of arrow indices from `src` to `tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub src: usize,
    pub tgt: usize,
    pub terms: Vec<(u32, Vec<usize>)>,
}

/// Row-reduced span of vectors over a field, with full back-substitution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<(usize, Vec<u32>)>,
}

impl Rref {
    pub fn reduce(&self, k: RingSpec, v: &mut [u32]) {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                let c = k.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = k.add(*x, k.mul(c, r));
                }
            }
        }
    }

    pub fn insert(&mut self, k: RingSpec, mut v: Vec<u32>) -> bool {
        self.reduce(k, &mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = k.inv(v[p]).expect("field");
        for x in v.iter_mut() {
            *x = k.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let c = k.neg(c);
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = k.add(*x, k.mul(c, r));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.iter().any(|(p, _)| *p == c)
    }
}

#[derive(Clone, Debug, Default)]
struct HomData {
    /// Raw coordinate of the identity, when `x = y`.
    id: Option<usize>,
    /// `(arrow, offset)` for each arrow out of `x`.
    blocks: Vec<(usize, usize)>,
    raw_dim: usize,
    rel: Rref,
    /// Raw coordinates that survive as basis elements.
    basis: Vec<usize>,
    paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct PresentedCategory {
    pub field: RingSpec,
    pub objects: Vec<Obj>,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
    homs: Vec<HomData>,
}

impl PresentedCategory {
    pub fn new(
        field: RingSpec,
        objects: Vec<Obj>,
        arrows: Vec<(usize, usize)>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        let n = objects.len();
        let order = reverse_topological(n, &arrows)?;
        let mut cat = PresentedCategory {
            field,
            objects,
            arrows,
            relations,
            homs: vec![HomData::default(); n * n],
        };
        for x in order {
            for y in 0..n {
                let h = cat.compute_hom(x, y);
                cat.homs[x * n + y] = h;
            }
        }
        Ok(cat)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    fn hom(&self, x: usize, y: usize) -> &HomData {
        &self.homs[x * self.len() + y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).basis.len()
    }

    pub fn basis_paths(&self, x: usize, y: usize) -> &[Vec<usize>] {
        &self.hom(x, y).paths
    }

    fn path_end(&self, x: usize, path: &[usize]) -> usize {
        path.iter().fold(x, |at, &a| {
            debug_assert_eq!(self.arrows[a].0, at, "path is not composable");
            self.arrows[a].1
        })
    }

    /// Unreduced coordinates of a path in the raw space of `hom(x, y)`.
    fn raw(&self, y: usize, path: &[usize], h: &HomData) -> Vec<u32> {
        let mut v = vec![0; h.raw_dim];
        match path.split_first() {
            None => {
                if let Some(i) = h.id {
                    v[i] = 1;
                }
            }
            Some((&a, rest)) => {
                let (_, off) = *h.blocks.iter().find(|(b, _)| *b == a).expect("arrow out of x");
                let w = self.reduce_path(self.arrows[a].1, y, rest);
                v[off..off + w.len()].copy_from_slice(&w);
            }
        }
        v
    }

    fn compute_hom(&self, x: usize, y: usize) -> HomData {
        let k = self.field;
        let mut h = HomData::default();
        let mut off = 0;
        if x == y {
            h.id = Some(0);
            off = 1;
        }
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            if s == x {
                h.blocks.push((a, off));
                off += self.dim(t, y);
            }
        }
        h.raw_dim = off;
        for r in self.relations.iter().filter(|r| r.src == x) {
            for hp in self.basis_paths(r.tgt, y).to_vec() {
                let mut v = vec![0; h.raw_dim];
                for (c, p) in &r.terms {
                    let mut full = p.clone();
                    full.extend(&hp);
                    let w = self.raw(y, &full, &h);
                    for (acc, &wi) in v.iter_mut().zip(&w) {
                        *acc = k.add(*acc, k.mul(*c, wi));
                    }
                }
                h.rel.insert(k, v);
            }
        }
        for c in 0..h.raw_dim {
            if h.rel.is_pivot(c) {
                continue;
            }
            h.basis.push(c);
            let path = if Some(c) == h.id {
                vec![]
            } else {
                let &(a, o) = h
                    .blocks
                    .iter()
                    .find(|&&(a, o)| o <= c && c < o + self.dim(self.arrows[a].1, y))
                    .expect("block");
                let mut p = vec![a];
                p.extend(self.basis_paths(self.arrows[a].1, y)[c - o].iter());
                p
            };
            h.paths.push(path);
        }
        h
    }

    /// Coordinates of a path from `x` over the basis of `hom(x, y)`.
    pub fn reduce_path(&self, x: usize, y: usize, path: &[usize]) -> Vec<u32> {
        let h = self.hom(x, y);
        if self.path_end(x, path) != y {
            return vec![0; h.basis.len()];
        }
        let mut v = self.raw(y, path, h);
        h.rel.reduce(self.field, &mut v);
        h.basis.iter().map(|&c| v[c]).collect()
    }

    pub fn arrow(&self, a: usize) -> Arrow {
        let pt = |o: Obj| match o {
            Obj::Pt(i, j) => (i, j),
            Obj::Zero => unreachable!("presented objects are points"),
        };
        let (s, t) = self.arrows[a];
        Arrow { src: pt(self.objects[s]), tgt: pt(self.objects[t]) }
    }

    pub fn path_label(&self, path: &[usize]) -> Vec<Arrow> {
        path.iter().map(|&a| self.arrow(a)).collect()
    }

    /// The category with explicit structure constants.
    pub fn to_fincat(&self) -> FinCat {
        let n = self.len();
        let labels = (0..n * n)
            .map(|xy| self.homs[xy].paths.iter().map(|p| Label::Path(self.path_label(p))).collect())
            .collect();
        FinCat::build(self.field, self.objects.clone(), labels, |x, y, z, b, a| {
            let mut p = self.basis_paths(x, y)[a].clone();
            p.extend(&self.basis_paths(y, z)[b]);
            self.reduce_path(x, z, &p)
        })
    }
}

/// Objects ordered so that arrow targets come before their sources.
fn reverse_topological(n: usize, arrows: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut state = vec![0u8; n];
    let mut out = Vec::with_capacity(n);
    fn visit(v: usize, arrows: &[(usize, usize)], state: &mut [u8], out: &mut Vec<usize>) -> bool {
        match state[v] {
            2 => return true,
            1 => return false,
            _ => {}
        }
        state[v] = 1;
        for &(s, t) in arrows {
            if s == v && !visit(t, arrows, state, out) {
                return false;
            }
        }
        state[v] = 2;
        out.push(v);
        true
    }
    for v in 0..n {
        if !visit(v, arrows, &mut state, &mut out) {
            return Err(Error::Invalid("quiver has an oriented cycle".into()));
        }
    }
    Ok(out)
}

/// The mesh category of the Auslander-Reiten quiver of `0 -> 1 -> .. -> n`:
/// objects `(i, j)` with `0 <= i <= j <= n`, arrows `(i, j) -> (i-1, j)` and
/// `(i, j) -> (i, j-1)`, commuting squares for `0 < i < j <= n` and zero
/// composites `(i, i) -> (i-1, i) -> (i-1, i-1)` for `0 < i <= n`.
#[derive(Clone, Debug)]
pub struct MeshCategory {
    pub n: usize,
    pub pres: PresentedCategory,
    pub cat: FinCat,
}

impl MeshCategory {
    pub fn objects(n: usize) -> Vec<Obj> {
        let mut v = vec![];
        for i in 0..=n {
            for j in i..=n {
                v.push(Obj::Pt(i, j));
            }
        }
        v
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        self.cat.idx(Obj::Pt(i, j))
    }

    /// The arrow index of `(i, j) -> (i-1, j)`.
    pub fn ne(&self, i: usize, j: usize) -> usize {
        self.find_arrow((i, j), (i - 1, j))
    }

    /// The arrow index of `(i, j) -> (i, j-1)`.
    pub fn se(&self, i: usize, j: usize) -> usize {
        self.find_arrow((i, j), (i, j - 1))
    }

    fn find_arrow(&self, s: (usize, usize), t: (usize, usize)) -> usize {
        let (s, t) = (self.idx(s.0, s.1), self.idx(t.0, t.1));
        self.pres.arrows.iter().position(|&a| a == (s, t)).expect("arrow")
    }

    /// The canonical basis element `(i1, j1) -> (i2, j2)`, if the hom is nonzero.
    pub fn nu(&self, a: (usize, usize), b: (usize, usize)) -> Option<Vec<u32>> {
        let (x, y) = (self.idx(a.0, a.1), self.idx(b.0, b.1));
        (self.cat.dim(x, y) > 0).then(|| {
            let mut v = vec![0; self.cat.dim(x, y)];
            v[0] = 1;
            v
        })
    }
}

pub fn build_mesh(n: usize, field: RingSpec) -> MeshCategory {
    let objects = MeshCategory::objects(n);
    let idx = |i: usize, j: usize| objects.iter().position(|&o| o == Obj::Pt(i, j)).unwrap();
    let mut arrows = vec![];
    for &o in &objects {
        let Obj::Pt(i, j) = o else { unreachable!() };
        if i > 0 {
            arrows.push((idx(i, j), idx(i - 1, j)));
        }
        if j > i {
            arrows.push((idx(i, j), idx(i, j - 1)));
        }
    }
    let arrow = |s: usize, t: usize| arrows.iter().position(|&a| a == (s, t)).unwrap();
    let mut relations = vec![];
    for i in 1..=n {
        for j in i + 1..=n {
            // (i,j) -> (i-1,j) -> (i-1,j-1) equals (i,j) -> (i,j-1) -> (i-1,j-1)
            let up = vec![arrow(idx(i, j), idx(i - 1, j)), arrow(idx(i - 1, j), idx(i - 1, j - 1))];
            let down = vec![arrow(idx(i, j), idx(i, j - 1)), arrow(idx(i, j - 1), idx(i - 1, j - 1))];
            relations.push(Relation {
                src: idx(i, j),
                tgt: idx(i - 1, j - 1),
                terms: vec![(1, up), (field.neg(1), down)],
            });
        }
        let through = vec![arrow(idx(i, i), idx(i - 1, i)), arrow(idx(i - 1, i), idx(i - 1, i - 1))];
        relations.push(Relation { src: idx(i, i), tgt: idx(i - 1, i - 1), terms: vec![(1, through)] });
    }
    let pres = PresentedCategory::new(field, objects, arrows, relations).expect("mesh quiver is acyclic");
    let cat = pres.to_fincat();
    MeshCategory { n, pres, cat }
}

/// `[i2 <= i1 <= j2 <= j1]`.
pub fn mesh_hom_predicate(a: (usize, usize), b: (usize, usize)) -> usize {
    usize::from(b.0 <= a.0 && a.0 <= b.1 && b.1 <= a.1)
}
