//! The subfamily `B_•(k) ⊂ E_•(k)` on the zero object and the `(i, n)`,
//! compared with `S_•(mod k)` through `(i, n) ↦ M_{i,n}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sobject::{apply_op, apply_op_morphism};
use super::{ring_name, usize_table, Certificate};
use crate::diagcat::{DiagMorphism, Diagram};
use crate::error::{Error, Result};
use crate::meshcat::{op_on_object, FaceZero, Level, Obj, Op, SimplicialFamily};
use crate::modcat::{FgModule, ModMorphism};
use crate::quiverrep::{decompose, hom_dim, is_isomorphic, IntervalModule, QuiverRep};
use crate::ringlin::{Matrix, RingSpec};

/// `M_{i,j}` over the field `k` as a diagram of `k`-modules.
pub fn field_interval(k: RingSpec, i: usize, j: usize, n: usize) -> Diagram {
    let one = FgModule::free(k, 1);
    let zero = FgModule::zero(k);
    let objects: Vec<FgModule> = (0..=n).map(|t| if i <= t && t <= j { one } else { zero }).collect();
    let maps = (0..n)
        .map(|t| {
            if objects[t].is_zero() || objects[t + 1].is_zero() {
                ModMorphism::zero(objects[t], objects[t + 1])
            } else {
                ModMorphism::identity(one)
            }
        })
        .collect();
    Diagram { ring: k, objects, maps }
}

fn image_diagram(k: RingSpec, o: Obj, n: usize) -> Diagram {
    match o {
        Obj::Zero => Diagram::zero(k, n),
        Obj::Pt(i, j) => field_interval(k, i, j, n),
    }
}

/// The diagram as a representation of `A_{n+1}`.
pub fn to_rep(x: &Diagram) -> Result<QuiverRep> {
    let dims = x.objects.iter().map(|o| o.gens()).collect();
    QuiverRep::new(x.ring, dims, x.maps.iter().map(|f| f.lift()).collect())
}

/// The inclusion `M_{i,n} -> M_{i',n}`, `i' <= i`: identities where both are `k`.
fn inclusion(k: RingSpec, a: Obj, b: Obj, n: usize) -> Result<DiagMorphism> {
    let (x, y) = (image_diagram(k, a, n), image_diagram(k, b, n));
    let comps = x
        .objects
        .iter()
        .zip(&y.objects)
        .map(|(s, t)| if s.is_zero() || t.is_zero() { ModMorphism::zero(*s, *t) } else { ModMorphism::identity(*s) })
        .collect();
    DiagMorphism::new(&x, &y, comps)
}

fn random_injection<R: Rng>(k: RingSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    loop {
        let data: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..k.p)).collect()).collect();
        let m = Matrix::from_rows(k, &data);
        let m = if rows == 0 { Matrix::zeros(k, 0, cols) } else { m };
        if m.rank() == cols {
            return m;
        }
    }
}

/// A random chain of injections `k^{d_0} ↣ ... ↣ k^{d_n}`.
pub fn random_filtration<R: Rng>(k: RingSpec, n: usize, max_dim: usize, rng: &mut R) -> QuiverRep {
    let mut dims = vec![rng.gen_range(0..=max_dim.min(1))];
    for _ in 0..n {
        let last = *dims.last().expect("nonempty");
        dims.push(rng.gen_range(last..=max_dim.max(last)));
    }
    let maps = (0..n).map(|t| random_injection(k, dims[t + 1], dims[t], rng)).collect();
    QuiverRep::new(k, dims, maps).expect("shapes match")
}

pub fn b_family_check(k: RingSpec, n: usize) -> Result<Certificate> {
    if !k.is_field() {
        return Err(Error::Invalid(format!("{k} is not a field")));
    }
    let m = n + 1;
    let mut cert = Certificate::new("b-family", ring_name(k), k.p, Some(n));
    let fam = SimplicialFamily::with_face_zero(k, m + 1, FaceZero::Adopted);
    let level: &Level = &fam.levels[m];
    let objs: Vec<Obj> = (0..=n).map(|i| Obj::Pt(i, n)).collect();
    cert.notes.push(format!("objects of B at level {m}: 0, {}", objs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")));

    // hom spaces agree with those between the M_{i,n}
    let mut dims = vec![];
    for &a in &objs {
        let mut row = vec![];
        for &b in &objs {
            let d = level.cat.dim(level.idx(a), level.idx(b));
            let want = hom_dim(&to_rep(&image_diagram(k, a, n))?, &to_rep(&image_diagram(k, b, n))?)?;
            cert.require(d == want, || format!("hom({a}, {b}) has dimension {d}, but {want} between the intervals"));
            row.push(d);
        }
        dims.push(row);
    }
    cert.table("hom_dims", usize_table(&dims));

    // faces and degeneracies on objects and on the arrows (i, n) -> (i-1, n)
    let mut ops: Vec<Op> = (0..=m).map(Op::Degeneracy).collect();
    if m >= 2 {
        ops.extend((0..=m).map(Op::Face));
    }
    let mut rows = vec![];
    for &op in &ops {
        let tm = op.target_level(m);
        let tn = tm - 1;
        let f = fam.functor(op, m)?;
        let tcat = &fam.levels[tm].cat;
        for &a in &objs {
            let img = op_on_object(op, m, a, FaceZero::Adopted);
            let in_b = match img {
                Obj::Zero => true,
                Obj::Pt(_, j) => j == tn,
            };
            cert.require(in_b, || format!("{op} sends {a} to {img}, outside B"));
            let s = apply_op(op, &image_diagram(k, a, n))?;
            let want = image_diagram(k, img, tn);
            let same = is_isomorphic(&to_rep(&s)?, &to_rep(&want)?)?;
            cert.require(same, || format!("{op} of M{a} is not M{img}"));
            rows.push(vec![i64::from(matches!(op, Op::Degeneracy(_))), op_index(op), a_index(a), a_index(img)]);
        }
        for i in 1..=n {
            let (a, b) = (Obj::Pt(i, n), Obj::Pt(i - 1, n));
            let arrow = level.nu(a, b)?;
            let image = f.apply(tcat, &arrow);
            let (fa, fb) = (tcat.objects[image.src], tcat.objects[image.tgt]);
            let s = apply_op_morphism(op, &inclusion(k, a, b, n)?)?;
            // the coefficient of the canonical morphism in the image
            let c = if fa == Obj::Zero || fb == Obj::Zero || image.v.iter().all(|&x| x == 0) {
                0
            } else {
                let canon = fam.levels[tm].canonical(fa, fb)?;
                let t = canon.v.iter().position(|&x| x != 0).expect("nonzero canonical morphism");
                image.v[t]
            };
            let want = if c == 0 {
                DiagMorphism::zero(&s.source, &s.target)
            } else {
                inclusion(k, fa, fb, tn)?.scale(c)
            };
            let same = s.source == want.source && s.target == want.target && s == want;
            cert.require(same, || format!("{op} of the inclusion M{a} -> M{b} is not {c} times the inclusion"));
        }
    }
    cert.table("object_images", rows);

    // E'_n is a basis: chains of injections split into the M_{i,n}
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(k.p) * 100 + n as u64);
    for trial in 0..50 {
        let x = random_filtration(k, n, 3, &mut rng);
        let parts = decompose(&x);
        cert.require(parts.iter().all(|p| p.j == n), || format!("trial {trial}: a summand does not end at {n}"));
        let back = QuiverRep::sum_of_intervals(k, n, &parts);
        cert.require(is_isomorphic(&back, &x)?, || format!("trial {trial}: the summands do not reassemble"));
    }
    let basis: Vec<IntervalModule> = (0..=n).map(|i| IntervalModule::new(i, n)).collect();
    cert.notes.push(format!("basis at level {m}: {}", basis.iter().map(|b| format!("M({},{})", b.i, b.j)).collect::<Vec<_>>().join(", ")));
    Ok(cert)
}

fn op_index(op: Op) -> i64 {
    match op {
        Op::Face(t) | Op::Degeneracy(t) => t as i64,
    }
}

fn a_index(o: Obj) -> i64 {
    match o {
        Obj::Zero => -1,
        Obj::Pt(i, _) => i as i64,
    }
}
