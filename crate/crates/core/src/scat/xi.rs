//! The comparison functor `ξ: D_n(k) -> Ho(Fun([n], mod R)^cof)` sending
//! `(i, j)` to `M̃_{i,j}`, and the checks that it is an isomorphism onto its
//! image compatible with faces and degeneracies.

use std::collections::HashMap;

use super::sobject::{apply_op, apply_op_morphism};
use super::{ring_name, usize_table, Certificate, Status};
use crate::diagcat::{
    find_ho_iso, ho_hom, ho_hom_with, htrivial, interval_diagram, is_contractible, levelwise_null_dim, mtilde,
    ne_lift, nontrivial, phi_tilde, se_lift, DiagMorphism, Diagram, HoHomSpace, Replacement,
};
use crate::error::{Error, Result};
use crate::meshcat::{
    dn_predicate, mesh_hom_predicate, object_map, Arrow, FaceZero, Label, Level, Mor, Obj, Op, SimplicialFamily,
};
use crate::modcat::{is_stably_zero, stable_hom, FgModule, Space};
use crate::ringlin::RingSpec;

/// `ξ` on one level `D_{m-1}(k)`, `m >= 1`: the image of every object and
/// of every basis morphism.
#[derive(Clone, Debug)]
pub struct XiLevel {
    pub ring: RingSpec,
    pub level: Level,
    /// Indexed like the objects of `level.cat`.
    pub objects: Vec<Diagram>,
    images: Vec<Vec<DiagMorphism>>,
}

impl XiLevel {
    pub fn new(ring: RingSpec, level: Level) -> Result<XiLevel> {
        if level.m == 0 {
            return Err(Error::OutOfRange("the comparison functor needs level >= 1".into()));
        }
        let n = level.n();
        let cat = &level.cat;
        let objects = cat
            .objects
            .iter()
            .map(|o| match *o {
                Obj::Zero => Ok(Diagram::zero(ring, n)),
                Obj::Pt(i, j) => Ok(mtilde(i, j, n, ring)?.0),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut xi = XiLevel { ring, level: level.clone(), objects, images: vec![] };
        let len = cat.len();
        for x in 0..len {
            for y in 0..len {
                let imgs = cat
                    .basis_labels(x, y)
                    .iter()
                    .map(|l| xi.label_image(cat.objects[x], l))
                    .collect::<Result<Vec<_>>>()?;
                xi.images.push(imgs);
            }
        }
        Ok(xi)
    }

    pub fn build(ring: RingSpec, m: usize) -> Result<XiLevel> {
        XiLevel::new(ring, Level::build(ring.residue_field(), m))
    }

    pub fn n(&self) -> usize {
        self.level.n()
    }

    fn path_image(&self, start: (usize, usize), arrows: &[Arrow]) -> Result<DiagMorphism> {
        let n = self.n();
        let (x, _) = mtilde(start.0, start.1, n, self.ring)?;
        let mut acc = DiagMorphism::identity(&x);
        for a in arrows {
            let step = if a.tgt.0 + 1 == a.src.0 {
                ne_lift(a.src.0, a.src.1, n, self.ring)?
            } else {
                se_lift(a.src.0, a.src.1, n, self.ring)?
            };
            acc = step.after(&acc);
        }
        Ok(acc)
    }

    fn label_image(&self, src: Obj, l: &Label) -> Result<DiagMorphism> {
        let Obj::Pt(i1, j1) = src else {
            return Err(Error::Invalid("basis morphism out of the zero object".into()));
        };
        match l {
            Label::Path(arrows) => self.path_image((i1, j1), arrows),
            Label::Word { left, i, right } => {
                let v = self.path_image((i1, j1), right)?;
                let phi = phi_tilde(*i, self.n(), self.ring)?;
                let u = self.path_image((*i, self.n()), left)?;
                Ok(u.after(&phi.after(&v)))
            }
        }
    }

    pub fn basis_image(&self, x: usize, y: usize, a: usize) -> &DiagMorphism {
        &self.images[x * self.level.cat.len() + y][a]
    }

    /// `ξ(f)` for a morphism given by coordinates.
    pub fn apply(&self, f: &Mor) -> DiagMorphism {
        let mut acc = DiagMorphism::zero(&self.objects[f.src], &self.objects[f.tgt]);
        for (a, &c) in f.v.iter().enumerate() {
            if c != 0 {
                acc = acc.plus(&self.basis_image(f.src, f.tgt, a).scale(c));
            }
        }
        acc
    }
}

/// Solves `coords = sum c_a basis_a` over `k`.
fn coordinates_in(k: RingSpec, basis: &[Vec<u32>], coords: &[u32]) -> Option<Vec<u32>> {
    let s = Space::new(k, vec![false; coords.len()]);
    s.solve_in_span(basis, coords)
}

fn pt(o: Obj) -> (usize, usize) {
    match o {
        Obj::Pt(i, j) => (i, j),
        Obj::Zero => unreachable!("nonzero object"),
    }
}

/// Checks that `ξ` is an isomorphism of `D_n(k)` onto the full subcategory of
/// the `M̃_{i,j}` in the homotopy category.
pub fn verify_iso1(ring: RingSpec, n: usize) -> Result<Certificate> {
    let k = ring.residue_field();
    let mut cert = Certificate::new("verify-iso1", ring_name(ring), ring.p, Some(n));
    let xi = XiLevel::build(ring, n + 1)?;
    let cat = &xi.level.cat;
    let objs: Vec<usize> = (1..cat.len()).collect();
    let mut ho: HashMap<(usize, usize), HoHomSpace> = HashMap::new();
    for &x in &objs {
        for &y in &objs {
            ho.insert((x, y), ho_hom(&xi.objects[x], &xi.objects[y])?);
        }
    }
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        objs.iter().map(|&x| objs.iter().map(|&y| f(x, y)).collect()).collect()
    };
    let hom_dims = table(&|x, y| cat.dim(x, y));
    let ho_dims = table(&|x, y| ho[&(x, y)].dim as usize);
    let d_dims = table(&|x, y| xi.level.d_dim(x, y));
    cert.table("hom_dims", usize_table(&hom_dims));
    cert.table("ho_dims", usize_table(&ho_dims));
    cert.table("bimodule_dims", usize_table(&d_dims));
    cert.require(hom_dims == ho_dims, || "hom dimensions differ from the homotopy hom dimensions".into());

    // the basis images form a basis of each homotopy hom space
    let mut basis_coords: HashMap<(usize, usize), Vec<Vec<u32>>> = HashMap::new();
    for &x in &objs {
        for &y in &objs {
            let h = &ho[&(x, y)];
            let cols: Vec<Vec<u32>> =
                (0..cat.dim(x, y)).map(|a| h.coords(xi.basis_image(x, y, a))).collect();
            let s = Space::new(k, vec![false; h.dim as usize]);
            if s.log_span(&cols) as usize != cols.len() || cols.len() != h.dim as usize {
                cert.fail(format!("images of the basis of hom({}, {}) are not a basis", cat.objects[x], cat.objects[y]));
            }
            basis_coords.insert((x, y), cols);
        }
    }

    // functoriality and the composition constants in the image basis
    let mut constants = vec![];
    for &x in &objs {
        for &y in &objs {
            for &z in &objs {
                let hxz = &ho[&(x, z)];
                for a in 0..cat.dim(x, y) {
                    for b in 0..cat.dim(y, z) {
                        let lhs = xi.basis_image(y, z, b).after(xi.basis_image(x, y, a));
                        let want = cat.compose(&cat.basis(y, z, b), &cat.basis(x, y, a));
                        if !hxz.homotopic(&lhs, &xi.apply(&want)) {
                            cert.fail(format!(
                                "xi does not preserve the composite of basis {b} of hom({}, {}) and basis {a} of hom({}, {})",
                                cat.objects[y], cat.objects[z], cat.objects[x], cat.objects[y]
                            ));
                        }
                        let c = coordinates_in(k, &basis_coords[&(x, z)], &hxz.coords(&lhs));
                        let mut row = vec![x as i64, y as i64, z as i64, a as i64, b as i64];
                        match c {
                            Some(c) => row.extend(c.iter().map(|&v| v as i64)),
                            None => row.push(-1),
                        }
                        constants.push(row);
                        let both_d = a < xi.level.d_dim(x, y) && b < xi.level.d_dim(y, z);
                        if both_d && !hxz.is_null(&lhs) {
                            cert.fail(format!("product of two bimodule elements {}->{}->{} is not null", cat.objects[x], cat.objects[y], cat.objects[z]));
                        }
                    }
                }
            }
        }
    }
    cert.table("composition", constants);

    // the bimodule part is the levelwise null part, and vanishes levelwise
    let mut lw = vec![];
    for &x in &objs {
        let mut row = vec![];
        for &y in &objs {
            let h = &ho[&(x, y)];
            let d = levelwise_null_dim(h)? as usize;
            row.push(d);
            for a in 0..xi.level.d_dim(x, y) {
                if !xi.basis_image(x, y, a).comps.iter().all(is_stably_zero) {
                    cert.fail(format!("bimodule basis {a} of hom({}, {}) is not levelwise null", cat.objects[x], cat.objects[y]));
                }
            }
        }
        lw.push(row);
    }
    cert.require(lw == d_dims, || "levelwise null dimensions differ from the bimodule dimensions".into());
    cert.table("levelwise_null_dims", usize_table(&lw));

    // the two kinds of morphism M̃_{a} -> M_{b}
    for &x in &objs {
        for &y in &objs {
            let (a, b) = (pt(cat.objects[x]), pt(cat.objects[y]));
            let mesh = mesh_hom_predicate(a, b) == 1;
            let dn = dn_predicate(a, b) == 1;
            let factored = b.0 <= a.0 && a.1 < b.1;
            if !(dn || factored) {
                continue;
            }
            let (tilde, r) = mtilde(a.0, a.1, n, ring)?;
            let m_a = interval_diagram(a.0, a.1, n, ring)?;
            let m_b = interval_diagram(b.0, b.1, n, ring)?;
            let h = ho_hom_with(Replacement { tilde, r }, &m_a, &m_b)?;
            if factored {
                let f = htrivial(a.0, a.1, b.0, b.1, n, ring)?;
                match h.homotopy(&f) {
                    Some(hh) => {
                        let ok = h.eps.after(&hh) == f;
                        cert.require(ok, || format!("homotopy for {}->{} does not recompose", cat.objects[x], cat.objects[y]));
                    }
                    None => cert.fail(format!("factored morphism {} -> {} is not null", cat.objects[x], cat.objects[y])),
                }
                cert.require(!mesh || h.dim >= 1, || format!("no mesh class {} -> {}", cat.objects[x], cat.objects[y]));
            }
            if dn {
                let f = nontrivial(a.0, a.1, b.0, b.1, n, ring)?;
                cert.require(!h.is_null(&f), || format!("bimodule generator {} -> {} is null", cat.objects[x], cat.objects[y]));
            }
        }
    }
    Ok(cert)
}

fn op_code(op: Op) -> (i64, i64) {
    match op {
        Op::Face(t) => (0, t as i64),
        Op::Degeneracy(t) => (1, t as i64),
    }
}

/// `u = λ v` over `k`, with `v` nonzero.
fn ratio(k: RingSpec, u: &[u32], v: &[u32]) -> Option<u32> {
    let t = v.iter().position(|&x| x != 0)?;
    let lambda = k.mul(u[t], k.inv(v[t])?);
    u.iter().zip(v).all(|(&a, &b)| a == k.mul(lambda, b)).then_some(lambda)
}

/// Checks that `S(op) ∘ ξ ≅ ξ ∘ op` for every face and degeneracy out of
/// level `n + 1`: objects go to isomorphic objects, and rescaled
/// isomorphisms `θ_a` make every basis square commute in the homotopy
/// category.
pub fn verify_iso2(ring: RingSpec, n: usize, cap: u32) -> Result<Certificate> {
    let k = ring.residue_field();
    let m = n + 1;
    let mut cert = Certificate::new("verify-iso2", ring_name(ring), ring.p, Some(n));
    cert.cap = Some(cap);
    let fam = SimplicialFamily::with_face_zero(k, m + 1, FaceZero::Adopted);
    let mut xis: HashMap<usize, XiLevel> = HashMap::new();
    for l in [m - 1, m, m + 1] {
        if l >= 1 {
            xis.insert(l, XiLevel::new(ring, fam.levels[l].clone())?);
        }
    }
    let src = &xis[&m];
    let cat = &src.level.cat;
    let mut ops: Vec<Op> = vec![];
    if m >= 2 {
        ops.extend((0..=m).map(Op::Face));
    }
    ops.extend((0..=m).map(Op::Degeneracy));
    let mut object_rows = vec![];
    let mut squares = 0i64;
    for &op in &ops {
        let f = fam.functor(op, m)?;
        let tgt = &xis[&op.target_level(m)];
        let tcat = &tgt.level.cat;
        let (kind, t) = op_code(op);
        // θ0_a: ξ(op a) -> S(op)(ξ a)
        let mut theta: Vec<Option<DiagMorphism>> = vec![None; cat.len()];
        for x in 1..cat.len() {
            let fx = f.obj[x];
            let s_img = apply_op(op, &src.objects[x])?;
            object_rows.push(vec![kind, t, x as i64, fx as i64]);
            if fx == 0 {
                cert.require(is_contractible(&s_img)?, || format!("{op:?} of xi{} is not contractible", cat.objects[x]));
                continue;
            }
            let want = &tgt.objects[fx];
            if &s_img == want {
                theta[x] = Some(DiagMorphism::identity(want));
            } else {
                match find_ho_iso(want, &s_img, cap)? {
                    Some(iso) => theta[x] = Some(iso),
                    None => cert.fail(format!("{op:?}: xi{} is not isomorphic to S(op) xi{}", tcat.objects[fx], cat.objects[x])),
                }
            }
        }
        // constraints c_b v = c_a u on every basis square
        let mut edges: Vec<(usize, usize, Vec<u32>, Vec<u32>, String)> = vec![];
        for x in 1..cat.len() {
            for y in 1..cat.len() {
                let (Some(tx), Some(ty)) = (&theta[x], &theta[y]) else { continue };
                let fx = f.obj[x];
                let h = ho_hom(&tgt.objects[fx], &ty.target)?;
                for a in 0..cat.dim(x, y) {
                    let basis = cat.basis(x, y, a);
                    let s_f = apply_op_morphism(op, src.basis_image(x, y, a))?;
                    let u = h.coords(&s_f.after(tx));
                    let image = f.apply(tcat, &basis);
                    let v = h.coords(&ty.after(&tgt.apply(&image)));
                    squares += 1;
                    let name = format!("{op:?} on basis {a} of hom({}, {})", cat.objects[x], cat.objects[y]);
                    edges.push((x, y, u, v, name));
                }
            }
        }
        let mut c: Vec<Option<u32>> = vec![None; cat.len()];
        for start in 1..cat.len() {
            if theta[start].is_none() || c[start].is_some() {
                continue;
            }
            c[start] = Some(1);
            let mut changed = true;
            while changed {
                changed = false;
                for (x, y, u, v, _) in &edges {
                    let (Some(lambda), true) = (ratio(k, u, v), u.iter().any(|&e| e != 0)) else { continue };
                    match (c[*x], c[*y]) {
                        (Some(cx), None) => {
                            c[*y] = Some(k.mul(cx, lambda));
                            changed = true;
                        }
                        (None, Some(cy)) => {
                            c[*x] = Some(k.mul(cy, k.inv(lambda).expect("nonzero ratio")));
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
        for (x, y, u, v, name) in &edges {
            let (cx, cy) = (c[*x].unwrap_or(1), c[*y].unwrap_or(1));
            let lhs: Vec<u32> = v.iter().map(|&e| k.mul(cy, e)).collect();
            let rhs: Vec<u32> = u.iter().map(|&e| k.mul(cx, e)).collect();
            cert.require(lhs == rhs, || format!("square does not commute: {name}"));
        }
    }
    cert.table("object_images", object_rows);
    cert.table("squares", vec![vec![squares]]);
    if m >= 2 {
        if let Err(e) = object_map(Op::Face(0), m, FaceZero::Displayed) {
            cert.notes.push(format!("displayed d0 object formula: {e}"));
        }
        cert.notes.push("d0 uses (0,j) -> (j,n-1), the quotient of M~(0,j) by its first term".into());
    }
    Ok(cert)
}

/// Runs the comparison over `F_p[e]` and `Z/p^2` and checks that every table
/// expressed in the image basis agrees; at `n = 0` compares the stable hom
/// tables on `{k, R}`.
pub fn independence_check(p: u32, n: usize, cap: u32) -> Result<Certificate> {
    let rings = [RingSpec::fp_eps(p)?, RingSpec::zp2(p)?];
    let mut cert = Certificate::new("independence", "fp-eps,zp2".into(), p, Some(n));
    cert.cap = Some(cap);
    let mut tables = vec![];
    for ring in rings {
        let mut t = std::collections::BTreeMap::new();
        if n == 0 {
            let mods = [FgModule::residue(ring, 1), FgModule::free(ring, 1)];
            let dims = mods
                .iter()
                .map(|a| mods.iter().map(|b| Ok(stable_hom(a, b)?.dim as i64)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            t.insert("stable_hom_dims".to_string(), dims);
        } else {
            let c1 = verify_iso1(ring, n)?;
            let c2 = verify_iso2(ring, n, cap)?;
            for c in [&c1, &c2] {
                if !c.passed() {
                    cert.fail(format!("{} failed over {}", c.check, c.ring));
                }
                for (name, rows) in &c.tables {
                    t.insert(format!("{}/{}", c.check, name), rows.clone());
                }
            }
        }
        tables.push(t);
    }
    for (name, rows) in &tables[0] {
        let same = tables[1].get(name) == Some(rows);
        cert.require(same, || format!("table {name} differs between the two rings"));
        cert.table(name, rows.clone());
    }
    if cert.status == Status::Pass && tables[0].len() != tables[1].len() {
        cert.fail("the two rings produce different table sets".into());
    }
    Ok(cert)
}
