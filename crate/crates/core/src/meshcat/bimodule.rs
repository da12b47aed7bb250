//! The bimodule `D_n` over the mesh category, semidirect products and the
//! formal zero object.
//!
//! `D_n(x, y)` is spanned by words `u · phi_i · v` with `v: x -> (0, i-1)` and
//! `u: (i, n) -> y`, so its raw space is `⊕_i C((i, n), y) ⊗ C(x, (0, i-1))`,
//! cut down by the bimodule generated by
//! `((i+1, n) -> (i, n)) · phi_{i+1} = phi_i · ((0, i) -> (0, i-1))` and
//! `((1, n) -> (0, n)) · phi_1 = 0` and `phi_n · ((0, n) -> (0, n-1)) = 0`.

use super::fincat::{FinCat, Label, Obj};
use super::presented::{MeshCategory, Rref};
use crate::ringlin::RingSpec;

#[derive(Clone, Debug, Default)]
struct WordSpace {
    /// `(i, offset, left dim, right dim)` per generator `phi_i`.
    blocks: Vec<(usize, usize, usize, usize)>,
    raw_dim: usize,
    rel: Rref,
    basis: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Bimodule {
    pub n: usize,
    pub field: RingSpec,
    spaces: Vec<WordSpace>,
    objects: usize,
}

impl Bimodule {
    fn space(&self, x: usize, y: usize) -> &WordSpace {
        &self.spaces[x * self.objects + y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.space(x, y).basis.len()
    }

    fn raw_word(ws: &WordSpace, k: RingSpec, i: usize, u: &[u32], v: &[u32]) -> Vec<u32> {
        let mut raw = vec![0; ws.raw_dim];
        let &(_, off, dl, dr) = ws.blocks.iter().find(|b| b.0 == i).expect("generator block");
        for a in 0..dl {
            for b in 0..dr {
                raw[off + a * dr + b] = k.mul(u[a], v[b]);
            }
        }
        raw
    }

    /// Coordinates of `u · phi_i · v` in `D(x, y)`, with `u` and `v` given by
    /// mesh coordinates.
    pub fn word(&self, x: usize, y: usize, i: usize, u: &[u32], v: &[u32]) -> Vec<u32> {
        let ws = self.space(x, y);
        let mut raw = Self::raw_word(ws, self.field, i, u, v);
        ws.rel.reduce(self.field, &mut raw);
        ws.basis.iter().map(|&c| raw[c]).collect()
    }

    /// `(i, left basis index, right basis index)` of a basis element.
    fn basis_word(&self, x: usize, y: usize, a: usize) -> (usize, usize, usize) {
        let ws = self.space(x, y);
        let c = ws.basis[a];
        let &(i, off, _, dr) = ws.blocks.iter().find(|b| b.1 <= c && c < b.1 + b.2 * b.3).expect("block");
        (i, (c - off) / dr, (c - off) % dr)
    }

    /// `c · d` for `c` in `C(y, z)` and `d` in `D(x, y)`, both on bases.
    pub fn act_left(&self, mesh: &MeshCategory, x: usize, y: usize, z: usize, c: usize, d: usize) -> Vec<u32> {
        let (i, ul, vr) = self.basis_word(x, y, d);
        let gi = mesh.idx(i, self.n);
        let u = mesh.cat.compose(&mesh.cat.basis(y, z, c), &mesh.cat.basis(gi, y, ul));
        let v = mesh.cat.basis(x, mesh.idx(0, i - 1), vr);
        self.word(x, z, i, &u.v, &v.v)
    }

    /// `d · f` for `d` in `D(x, y)` and `f` in `C(w, x)`.
    pub fn act_right(&self, mesh: &MeshCategory, w: usize, x: usize, y: usize, d: usize, f: usize) -> Vec<u32> {
        let (i, ul, vr) = self.basis_word(x, y, d);
        let src = mesh.idx(0, i - 1);
        let v = mesh.cat.compose(&mesh.cat.basis(x, src, vr), &mesh.cat.basis(w, x, f));
        let u = mesh.cat.basis(mesh.idx(i, self.n), y, ul);
        self.word(w, y, i, &u.v, &v.v)
    }

    pub fn labels(&self, mesh: &MeshCategory, x: usize, y: usize) -> Vec<Label> {
        (0..self.dim(x, y))
            .map(|a| {
                let (i, ul, vr) = self.basis_word(x, y, a);
                let left = mesh.pres.basis_paths(mesh.idx(i, self.n), y)[ul].clone();
                let right = mesh.pres.basis_paths(x, mesh.idx(0, i - 1))[vr].clone();
                Label::Word { left: mesh.pres.path_label(&left), i, right: mesh.pres.path_label(&right) }
            })
            .collect()
    }

    pub fn dim_table(&self) -> Vec<Vec<usize>> {
        (0..self.objects).map(|x| (0..self.objects).map(|y| self.dim(x, y)).collect()).collect()
    }
}

pub fn build_dn(mesh: &MeshCategory) -> Bimodule {
    let n = mesh.n;
    let c = &mesh.cat;
    let k = c.field;
    let m = c.len();
    let mut spaces = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            let mut ws = WordSpace::default();
            let mut off = 0;
            for i in 1..=n {
                let dl = c.dim(mesh.idx(i, n), y);
                let dr = c.dim(x, mesh.idx(0, i - 1));
                ws.blocks.push((i, off, dl, dr));
                off += dl * dr;
            }
            ws.raw_dim = off;
            let mut rels = vec![];
            for i in 1..n {
                let (gi, gi1) = (mesh.idx(i, n), mesh.idx(i + 1, n));
                let (ti, ti1) = (mesh.idx(0, i - 1), mesh.idx(0, i));
                let a = c.basis(gi1, gi, 0);
                let b = c.basis(ti1, ti, 0);
                debug_assert_eq!(c.basis_labels(gi1, gi).len(), 1);
                for ul in 0..c.dim(gi, y) {
                    let u = c.basis(gi, y, ul);
                    let ua = c.compose(&u, &a);
                    for vr in 0..c.dim(x, ti1) {
                        let v = c.basis(x, ti1, vr);
                        let bv = c.compose(&b, &v);
                        let mut r = Bimodule::raw_word(&ws, k, i + 1, &ua.v, &v.v);
                        let s = Bimodule::raw_word(&ws, k, i, &u.v, &bv.v);
                        for (p, q) in r.iter_mut().zip(&s) {
                            *p = k.sub(*p, *q);
                        }
                        rels.push(r);
                    }
                }
            }
            if n >= 1 {
                let (g1, g0) = (mesh.idx(1, n), mesh.idx(0, n));
                let a = c.basis(g1, g0, 0);
                let t0 = mesh.idx(0, 0);
                for ul in 0..c.dim(g0, y) {
                    let ua = c.compose(&c.basis(g0, y, ul), &a);
                    for vr in 0..c.dim(x, t0) {
                        let v = c.basis(x, t0, vr);
                        rels.push(Bimodule::raw_word(&ws, k, 1, &ua.v, &v.v));
                    }
                }
                let (gn, tn, tn1) = (mesh.idx(n, n), mesh.idx(0, n), mesh.idx(0, n - 1));
                let b = c.basis(tn, tn1, 0);
                for ul in 0..c.dim(gn, y) {
                    let u = c.basis(gn, y, ul);
                    for vr in 0..c.dim(x, tn) {
                        let bv = c.compose(&b, &c.basis(x, tn, vr));
                        rels.push(Bimodule::raw_word(&ws, k, n, &u.v, &bv.v));
                    }
                }
            }
            for r in rels {
                ws.rel.insert(k, r);
            }
            ws.basis = (0..ws.raw_dim).filter(|&col| !ws.rel.is_pivot(col)).collect();
            spaces.push(ws);
        }
    }
    Bimodule { n, field: k, spaces, objects: m }
}

/// `[i1 + 1 <= i2 <= j1 + 1 <= j2]`.
pub fn dn_predicate(a: (usize, usize), b: (usize, usize)) -> usize {
    usize::from(a.0 < b.0 && b.0 <= a.1 + 1 && a.1 < b.1)
}

/// `D ⋊ C` with homs `D(x, y) (+) C(x, y)` (bimodule basis first) and
/// composition `(b, g)(a, f) = (b·f + g·a, gf)`.
pub fn semidirect(d: &Bimodule, mesh: &MeshCategory) -> FinCat {
    let c = &mesh.cat;
    let m = c.len();
    let labels: Vec<Vec<Label>> = (0..m * m)
        .map(|xy| {
            let (x, y) = (xy / m, xy % m);
            let mut l = d.labels(mesh, x, y);
            l.extend(c.basis_labels(x, y).iter().cloned());
            l
        })
        .collect();
    FinCat::build(c.field, c.objects.clone(), labels, |x, y, z, b, a| {
        let (dxy, dyz, dxz) = (d.dim(x, y), d.dim(y, z), d.dim(x, z));
        let mut out = vec![0; dxz + c.dim(x, z)];
        match (b < dyz, a < dxy) {
            (true, true) => {}
            (false, true) => out[..dxz].copy_from_slice(&d.act_left(mesh, x, y, z, b - dyz, a)),
            (true, false) => out[..dxz].copy_from_slice(&d.act_right(mesh, x, y, z, b, a - dxy)),
            (false, false) => {
                let g = c.compose(&c.basis(y, z, b - dyz), &c.basis(x, y, a - dxy));
                out[dxz..].copy_from_slice(&g.v);
            }
        }
        out
    })
}

/// `C_+`: `C` with a zero object added at index 0.
pub fn add_zero(c: &FinCat) -> FinCat {
    let m = c.len();
    let mut objects = vec![Obj::Zero];
    objects.extend(c.objects.iter().copied());
    let n = m + 1;
    let labels: Vec<Vec<Label>> = (0..n * n)
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            if x == 0 || y == 0 {
                vec![]
            } else {
                c.basis_labels(x - 1, y - 1).to_vec()
            }
        })
        .collect();
    FinCat::build(c.field, objects, labels, |x, y, z, b, a| {
        let g = c.basis(y - 1, z - 1, b);
        let f = c.basis(x - 1, y - 1, a);
        c.compose(&g, &f).v
    })
}
