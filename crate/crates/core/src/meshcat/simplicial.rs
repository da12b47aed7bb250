//! The simplicial `k`-linear category `D_•(k)`: level 0 is the zero category
//! and level `n+1` is `(D_n ⋊ mesh_n)_+`. Faces and degeneracies are given on
//! objects, on mesh arrows and on the generators `phi_i`, and extended to
//! every basis word by functoriality.

use serde::Serialize;

use super::bimodule::{add_zero, build_dn, semidirect, Bimodule};
use super::fincat::{Arrow, FinCat, Label, Mor, Obj};
use super::presented::{build_mesh, MeshCategory};
use crate::error::{Error, Result};
use crate::ringlin::{Matrix, RingSpec};

/// Which object formula to use for `d_0(0, j)`, `j < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceZero {
    /// `(j, n-1)`, the formula matching cofiber quotients of `S_•`.
    Adopted,
    /// `(j+1, n-1)`, as displayed in the original list of formulas.
    Displayed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
}

impl Op {
    pub fn target_level(&self, m: usize) -> usize {
        match self {
            Op::Face(_) => m - 1,
            Op::Degeneracy(_) => m + 1,
        }
    }
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Op::Face(i) => write!(f, "d{i}"),
            Op::Degeneracy(i) => write!(f, "s{i}"),
        }
    }
}

/// Image of an object of level `m` (whose mesh has index `n = m - 1`).
pub fn op_on_object(op: Op, m: usize, o: Obj, d0: FaceZero) -> Obj {
    let Obj::Pt(i, j) = o else { return Obj::Zero };
    let n = m - 1;
    match op {
        Op::Face(0) => {
            if i == 0 && j == n {
                Obj::Zero
            } else if i == 0 {
                match d0 {
                    FaceZero::Adopted => Obj::Pt(j, n - 1),
                    FaceZero::Displayed => Obj::Pt(j + 1, n - 1),
                }
            } else {
                Obj::Pt(i - 1, j - 1)
            }
        }
        Op::Face(f) => {
            let t = f - 1;
            if t < i {
                Obj::Pt(i - 1, j - 1)
            } else if t <= j && i < j {
                Obj::Pt(i, j - 1)
            } else if i == t && t == j {
                Obj::Zero
            } else {
                Obj::Pt(i, j)
            }
        }
        Op::Degeneracy(s) => {
            let t = s as isize - 1;
            let (ii, jj) = (i as isize, j as isize);
            if t < ii {
                Obj::Pt(i + 1, j + 1)
            } else if t <= jj {
                Obj::Pt(i, j + 1)
            } else {
                Obj::Pt(i, j)
            }
        }
    }
}

/// Objects of level `m`.
pub fn level_objects(m: usize) -> Vec<Obj> {
    let mut v = vec![Obj::Zero];
    if m > 0 {
        v.extend(MeshCategory::objects(m - 1));
    }
    v
}

pub fn in_range(o: Obj, m: usize) -> bool {
    match o {
        Obj::Zero => true,
        Obj::Pt(i, j) => m > 0 && i <= j && j < m,
    }
}

/// Object map of `op` on level `m`, failing with the first object sent out
/// of range.
pub fn object_map(op: Op, m: usize, d0: FaceZero) -> Result<Vec<Obj>> {
    let tgt = op.target_level(m);
    level_objects(m)
        .into_iter()
        .map(|o| {
            let img = op_on_object(op, m, o, d0);
            if in_range(img, tgt) {
                Ok(img)
            } else {
                Err(Error::OutOfRange(format!("{op} sends {o} at level {m} to {img}, not an object of level {tgt}")))
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Level {
    pub m: usize,
    pub parts: Option<(MeshCategory, Bimodule)>,
    /// `(D ⋊ mesh)_+` with the zero object at index 0.
    pub cat: FinCat,
}

impl Level {
    pub fn build(field: RingSpec, m: usize) -> Level {
        if m == 0 {
            let cat = FinCat::build(field, vec![Obj::Zero], vec![vec![]], |_, _, _, _, _| vec![]);
            return Level { m, parts: None, cat };
        }
        let mesh = build_mesh(m - 1, field);
        let dn = build_dn(&mesh);
        let cat = add_zero(&semidirect(&dn, &mesh));
        Level { m, parts: Some((mesh, dn)), cat }
    }

    pub fn n(&self) -> usize {
        self.m - 1
    }

    pub fn idx(&self, o: Obj) -> usize {
        self.cat.idx(o)
    }

    /// Number of bimodule basis elements in `hom(x, y)`.
    pub fn d_dim(&self, x: usize, y: usize) -> usize {
        self.cat.basis_labels(x, y).iter().take_while(|l| l.is_bimodule()).count()
    }

    /// The canonical mesh morphism `a -> b`, zero if an endpoint is zero.
    pub fn nu(&self, a: Obj, b: Obj) -> Result<Mor> {
        let (x, y) = (self.idx(a), self.idx(b));
        if a == Obj::Zero || b == Obj::Zero {
            return Ok(self.cat.zero(x, y));
        }
        let d = self.d_dim(x, y);
        if self.cat.dim(x, y) == d {
            return Err(Error::Invalid(format!("no mesh morphism {a} -> {b} at level {}", self.m)));
        }
        Ok(self.cat.basis(x, y, d))
    }

    /// The canonical morphism `a -> b`: the mesh morphism when there is one,
    /// otherwise the bimodule generator
    /// `((i2, n) -> b) · phi_{i2} · (a -> (0, i2-1))`.
    pub fn canonical(&self, a: Obj, b: Obj) -> Result<Mor> {
        if let Ok(m) = self.nu(a, b) {
            return Ok(m);
        }
        let (Obj::Pt(i1, j1), Obj::Pt(i2, j2)) = (a, b) else { unreachable!() };
        if crate::meshcat::dn_predicate((i1, j1), (i2, j2)) == 0 {
            return Err(Error::Invalid(format!("no morphism {a} -> {b} at level {}", self.m)));
        }
        let n = self.n();
        let u = self.nu(Obj::Pt(i2, n), b)?;
        let v = self.nu(a, Obj::Pt(0, i2 - 1))?;
        Ok(self.cat.compose(&u, &self.cat.compose(&self.phi(i2), &v)))
    }

    /// The generator `phi_i: (0, i-1) -> (i, n)`.
    pub fn phi(&self, i: usize) -> Mor {
        let (mesh, dn) = self.parts.as_ref().expect("nonzero level");
        let n = self.n();
        let (s, t) = (mesh.idx(0, i - 1), mesh.idx(i, n));
        let u = mesh.cat.identity(t);
        let v = mesh.cat.identity(s);
        let d = dn.word(s, t, i, &u.v, &v.v);
        let (x, y) = (self.idx(Obj::Pt(0, i - 1)), self.idx(Obj::Pt(i, n)));
        let mut m = self.cat.zero(x, y);
        m.v[..d.len()].copy_from_slice(&d);
        m
    }

    /// The mesh arrow as a morphism of this level.
    pub fn arrow(&self, a: &Arrow) -> Result<Mor> {
        self.nu(Obj::Pt(a.src.0, a.src.1), Obj::Pt(a.tgt.0, a.tgt.1))
    }

    /// Generating morphisms: mesh arrows and the `phi_i`.
    pub fn generators(&self) -> Vec<Mor> {
        let Some((mesh, _)) = &self.parts else { return vec![] };
        let mut g: Vec<Mor> = (0..mesh.pres.arrows.len())
            .map(|a| self.arrow(&mesh.pres.arrow(a)).expect("arrow"))
            .collect();
        g.extend((1..=self.n()).map(|i| self.phi(i)));
        g
    }
}

/// A linear functor between two levels, as an object map and one matrix per
/// ordered pair of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFunctor {
    pub src: usize,
    pub tgt: usize,
    pub obj: Vec<usize>,
    mats: Vec<Matrix>,
    n_src: usize,
}

impl LinFunctor {
    pub fn mat(&self, x: usize, y: usize) -> &Matrix {
        &self.mats[x * self.n_src + y]
    }

    pub fn apply(&self, tgt: &FinCat, f: &Mor) -> Mor {
        let m = self.mat(f.src, f.tgt);
        let v = m.dot(&Matrix::column(tgt.field, &f.v)).col(0);
        Mor { src: self.obj[f.src], tgt: self.obj[f.tgt], v }
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &LinFunctor) -> LinFunctor {
        assert_eq!(g.tgt, self.src);
        let obj: Vec<usize> = g.obj.iter().map(|&o| self.obj[o]).collect();
        let n = g.n_src;
        let mut mats = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mats.push(self.mat(g.obj[x], g.obj[y]).dot(g.mat(x, y)));
            }
        }
        LinFunctor { src: g.src, tgt: self.tgt, obj, mats, n_src: n }
    }

    pub fn identity(level: &Level) -> LinFunctor {
        let n = level.cat.len();
        let mut mats = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mats.push(Matrix::identity(level.cat.field, level.cat.dim(x, y)));
            }
        }
        LinFunctor { src: level.m, tgt: level.m, obj: (0..n).collect(), mats, n_src: n }
    }
}

/// Image of `phi_i` under `op` at level `src`.
fn op_on_phi(op: Op, src: &Level, tgt: &Level, i: usize, d0: FaceZero) -> Result<Mor> {
    let n = src.n();
    let a = op_on_object(op, src.m, Obj::Pt(0, i - 1), d0);
    let b = op_on_object(op, src.m, Obj::Pt(i, n), d0);
    let (x, y) = (tgt.idx(a), tgt.idx(b));
    if a == Obj::Zero || b == Obj::Zero {
        return Ok(tgt.cat.zero(x, y));
    }
    let img = match op {
        Op::Face(0) => tgt.cat.identity(tgt.idx(Obj::Pt(i - 1, n - 1))),
        Op::Face(f) => {
            let t = f - 1;
            if t == 0 && i == 1 {
                tgt.cat.zero(x, y)
            } else if t < i {
                tgt.phi(i - 1)
            } else {
                tgt.phi(i)
            }
        }
        Op::Degeneracy(0) => {
            let nu = tgt.nu(Obj::Pt(1, i), Obj::Pt(0, i))?;
            tgt.cat.compose(&tgt.phi(i + 1), &nu)
        }
        Op::Degeneracy(s) => {
            let t = s - 1;
            if t < i {
                tgt.phi(i + 1)
            } else {
                tgt.phi(i)
            }
        }
    };
    if (img.src, img.tgt) != (x, y) {
        return Err(Error::Invalid(format!(
            "{op}(phi_{i}) at level {} is {} -> {}, but the object formula gives {a} -> {b}",
            src.m, tgt.cat.objects[img.src], tgt.cat.objects[img.tgt]
        )));
    }
    Ok(img)
}

fn image_of_path(op: Op, src: &Level, tgt: &Level, x: usize, path: &[Arrow], d0: FaceZero) -> Result<Mor> {
    let fx = tgt.idx(op_on_object(op, src.m, src.cat.objects[x], d0));
    let mut acc = tgt.cat.identity(fx);
    for a in path {
        let s = op_on_object(op, src.m, Obj::Pt(a.src.0, a.src.1), d0);
        let t = op_on_object(op, src.m, Obj::Pt(a.tgt.0, a.tgt.1), d0);
        let img = if s == t { tgt.cat.identity(tgt.idx(s)) } else { tgt.canonical(s, t)? };
        acc = tgt.cat.compose(&img, &acc);
    }
    Ok(acc)
}

/// The functor `op` from `src` to `tgt`.
pub fn build_functor(op: Op, src: &Level, tgt: &Level, d0: FaceZero) -> Result<LinFunctor> {
    assert_eq!(op.target_level(src.m), tgt.m);
    let objs = object_map(op, src.m, d0)?;
    let obj: Vec<usize> = objs.iter().map(|&o| tgt.idx(o)).collect();
    let n = src.cat.len();
    let mut phis = vec![];
    if src.m > 0 {
        for i in 1..=src.n() {
            phis.push(op_on_phi(op, src, tgt, i, d0)?);
        }
    }
    let mut mats = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let labels = src.cat.basis_labels(x, y);
            let mut m = Matrix::zeros(tgt.cat.field, tgt.cat.dim(obj[x], obj[y]), labels.len());
            for (c, l) in labels.iter().enumerate() {
                let img = match l {
                    Label::Path(p) => image_of_path(op, src, tgt, x, p, d0)?,
                    Label::Word { left, i, right } => {
                        let mid_tgt = src.idx(Obj::Pt(*i, src.n()));
                        let r = image_of_path(op, src, tgt, x, right, d0)?;
                        let l = image_of_path(op, src, tgt, mid_tgt, left, d0)?;
                        tgt.cat.compose(&l, &tgt.cat.compose(&phis[i - 1], &r))
                    }
                };
                for (r, &v) in img.v.iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            mats.push(m);
        }
    }
    Ok(LinFunctor { src: src.m, tgt: tgt.m, obj, mats, n_src: n })
}

pub struct SimplicialFamily {
    pub field: RingSpec,
    pub levels: Vec<Level>,
    pub d0: FaceZero,
}

pub fn simplicial_family(field: RingSpec, max_level: usize) -> SimplicialFamily {
    SimplicialFamily::with_face_zero(field, max_level, FaceZero::Adopted)
}

impl SimplicialFamily {
    pub fn with_face_zero(field: RingSpec, max_level: usize, d0: FaceZero) -> SimplicialFamily {
        SimplicialFamily { field, levels: (0..=max_level).map(|m| Level::build(field, m)).collect(), d0 }
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn functor(&self, op: Op, m: usize) -> Result<LinFunctor> {
        let t = op.target_level(m);
        build_functor(op, &self.levels[m], &self.levels[t], self.d0)
    }
}

/// One simplicial identity instance `lhs = rhs` on a given source level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityInstance {
    pub family: String,
    pub level: usize,
    /// Operators applied right to left.
    pub lhs: Vec<Op>,
    pub rhs: Vec<Op>,
}

/// All instances of the five identity families with source level `m`.
pub fn identity_instances(m: usize) -> Vec<IdentityInstance> {
    let mut v = vec![];
    let mk = |family: &str, lhs: Vec<Op>, rhs: Vec<Op>| IdentityInstance { family: family.into(), level: m, lhs, rhs };
    use Op::{Degeneracy as S, Face as D};
    if m >= 2 {
        for j in 0..=m {
            for i in 0..j {
                v.push(mk("face-face", vec![D(i), D(j)], vec![D(j - 1), D(i)]));
            }
        }
    }
    for j in 0..=m {
        for i in 0..=j {
            v.push(mk("degeneracy-degeneracy", vec![S(i), S(j)], vec![S(j + 1), S(i)]));
        }
    }
    for j in 0..=m {
        for i in 0..j {
            v.push(mk("face-degeneracy-below", vec![D(i), S(j)], vec![S(j - 1), D(i)]));
        }
        v.push(mk("face-degeneracy-identity", vec![D(j), S(j)], vec![]));
        v.push(mk("face-degeneracy-identity", vec![D(j + 1), S(j)], vec![]));
        for i in j + 2..=m + 1 {
            v.push(mk("face-degeneracy-above", vec![D(i), S(j)], vec![S(j), D(i - 1)]));
        }
    }
    v
}

/// Applies operators (rightmost first) to objects of level `m`.
fn apply_objects(ops: &[Op], m: usize, d0: FaceZero) -> Result<Vec<Obj>> {
    let mut objs = level_objects(m);
    let mut level = m;
    for &op in ops.iter().rev() {
        let map = object_map(op, level, d0)?;
        let src = level_objects(level);
        objs = objs.iter().map(|o| map[src.iter().position(|s| s == o).unwrap()]).collect();
        level = op.target_level(level);
    }
    Ok(objs)
}

fn apply_functors(fam: &SimplicialFamily, ops: &[Op], m: usize) -> Result<LinFunctor> {
    let mut f = LinFunctor::identity(&fam.levels[m]);
    let mut level = m;
    for &op in ops.iter().rev() {
        let g = fam.functor(op, level)?;
        f = g.after(&f);
        level = op.target_level(level);
    }
    Ok(f)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimplicialReport {
    pub object_checks: usize,
    pub morphism_checks: usize,
    pub functoriality_checks: usize,
    pub failures: Vec<String>,
}

impl SimplicialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the identities on objects for source levels `<= obj_levels` and on
/// every basis morphism (hence on the generators) for source levels
/// `<= mor_levels`; also checks that each face and degeneracy preserves
/// composition and identities and sends every mesh morphism
/// `(i1, j1) -> (i2, j2)` to the canonical one between the images.
pub fn check_simplicial_identities(fam: &SimplicialFamily, obj_levels: usize, mor_levels: usize) -> SimplicialReport {
    let mut rep = SimplicialReport::default();
    for m in 0..=obj_levels {
        for inst in identity_instances(m) {
            rep.object_checks += 1;
            match (apply_objects(&inst.lhs, m, fam.d0), apply_objects(&inst.rhs, m, fam.d0)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => {
                    let bad = (0..a.len()).find(|&t| a[t] != b[t]).unwrap();
                    rep.failures.push(format!(
                        "{inst:?}: object {} goes to {} and {}",
                        level_objects(m)[bad], a[bad], b[bad]
                    ));
                }
                (Err(e), _) | (_, Err(e)) => rep.failures.push(format!("{inst:?}: {e}")),
            }
        }
    }
    if mor_levels + 2 > fam.max_level() {
        rep.failures.push(format!("family built to level {} only", fam.max_level()));
        return rep;
    }
    for m in 0..=mor_levels {
        for inst in identity_instances(m) {
            rep.morphism_checks += 1;
            match (apply_functors(fam, &inst.lhs, m), apply_functors(fam, &inst.rhs, m)) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        rep.failures.push(format!("{inst:?}: functors differ on morphisms"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => rep.failures.push(format!("{inst:?}: {e}")),
            }
        }
    }
    for m in 0..=mor_levels + 1 {
        let mut ops: Vec<Op> = (0..=m).map(Op::Degeneracy).collect();
        if m > 0 {
            ops.extend((0..=m).map(Op::Face));
        }
        for op in ops {
            rep.functoriality_checks += 1;
            match fam.functor(op, m) {
                Ok(f) => {
                    let tgt = &fam.levels[op.target_level(m)];
                    if let Err(e) = check_functor(&fam.levels[m], tgt, &f) {
                        rep.failures.push(format!("{op} at level {m}: {e}"));
                    }
                }
                Err(e) => rep.failures.push(format!("{op} at level {m}: {e}")),
            }
        }
    }
    rep
}

/// Composition, identities and the canonical mesh morphisms are preserved.
pub fn check_functor(src: &Level, tgt: &Level, f: &LinFunctor) -> std::result::Result<(), String> {
    let c = &src.cat;
    let n = c.len();
    for x in 0..n {
        if f.apply(&tgt.cat, &c.identity(x)) != tgt.cat.identity(f.obj[x]) {
            return Err(format!("identity of {} not preserved", c.objects[x]));
        }
        for y in 0..n {
            for z in 0..n {
                for a in 0..c.dim(x, y) {
                    for b in 0..c.dim(y, z) {
                        let (fa, fb) = (c.basis(x, y, a), c.basis(y, z, b));
                        let lhs = f.apply(&tgt.cat, &c.compose(&fb, &fa));
                        let rhs = tgt.cat.compose(&f.apply(&tgt.cat, &fb), &f.apply(&tgt.cat, &fa));
                        if lhs != rhs {
                            return Err(format!(
                                "composite {} -> {} -> {} not preserved",
                                c.objects[x], c.objects[y], c.objects[z]
                            ));
                        }
                    }
                }
            }
            let (a, b) = (c.objects[x], c.objects[y]);
            if a == Obj::Zero || b == Obj::Zero {
                continue;
            }
            if let Ok(nu) = src.nu(a, b) {
                let (fa, fb) = (tgt.cat.objects[f.obj[x]], tgt.cat.objects[f.obj[y]]);
                let want = if fa == fb && fa != Obj::Zero {
                    tgt.cat.identity(f.obj[x])
                } else if tgt.cat.dim(f.obj[x], f.obj[y]) == 0 {
                    tgt.cat.zero(f.obj[x], f.obj[y])
                } else {
                    tgt.canonical(fa, fb).map_err(|e| e.to_string())?
                };
                if f.apply(&tgt.cat, &nu) != want {
                    return Err(format!("canonical morphism {a} -> {b} not sent to {fa} -> {fb}"));
                }
            }
        }
    }
    Ok(())
}

/// Does `f` keep the mesh part inside the mesh part, and the bimodule part
/// inside the bimodule part.
pub fn preserves_parts(src: &Level, tgt: &Level, f: &LinFunctor) -> (bool, bool) {
    let c = &src.cat;
    let n = c.len();
    let (mut mesh_ok, mut bimodule_ok) = (true, true);
    for x in 0..n {
        for y in 0..n {
            let d = src.d_dim(x, y);
            let td = tgt.d_dim(f.obj[x], f.obj[y]);
            for a in 0..c.dim(x, y) {
                let img = f.apply(&tgt.cat, &c.basis(x, y, a));
                if a >= d && img.v[..td].iter().any(|&v| v != 0) {
                    mesh_ok = false;
                }
                if a < d && img.v[td..].iter().any(|&v| v != 0) {
                    bimodule_ok = false;
                }
            }
        }
    }
    (mesh_ok, bimodule_ok)
}
