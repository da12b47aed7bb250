//! Two squares `(k -α-> R) -> (R -q-> k)`, with components `(0, q)` and
//! `(α, 0)`, that are nonzero in the homotopy category but sum to zero
//! there. The first is `f: (k -α-> R) -> (0 -> k)` followed by an
//! isomorphism, and the second is a shift of `Σf`.

use super::{ring_name, Certificate};
use crate::diagcat::{
    find_ho_iso, ho_hom, interval_diagram, is_ho_iso, mtilde, suspend, suspend_morphism, DiagMorphism, Diagram,
};
use crate::error::{Error, Result};
use crate::modcat::{FgModule, ModMorphism};
use crate::ringlin::{Matrix, RingSpec};

fn entry(src: FgModule, tgt: FgModule, code: u32) -> ModMorphism {
    if src.is_zero() || tgt.is_zero() {
        return ModMorphism::zero(src, tgt);
    }
    let mut l = Matrix::zeros(src.ring, 1, 1);
    l.set(0, 0, code);
    ModMorphism::from_lift(src, tgt, &l).expect("entry preserves relations")
}

fn square(x: &Diagram, y: &Diagram, codes: [u32; 2]) -> Result<DiagMorphism> {
    let comps = (0..2).map(|t| entry(x.objects[t], y.objects[t], codes[t])).collect();
    DiagMorphism::new(x, y, comps)
}

/// `(R -q-> k)`.
pub fn quotient_arrow(ring: RingSpec) -> Result<Diagram> {
    let (r, k) = (FgModule::free(ring, 1), FgModule::residue(ring, 1));
    Diagram::new(ring, vec![r, k], vec![entry(r, k, 1)])
}

pub fn verify_remark(ring: RingSpec, cap: u32) -> Result<Certificate> {
    if ring.is_field() {
        return Err(Error::Invalid(format!("{ring} is a field")));
    }
    let mut cert = Certificate::new("remark", ring_name(ring), ring.p, Some(1));
    cert.cap = Some(cap);
    let alpha = ring.alpha();
    let x = mtilde(0, 0, 1, ring)?.0;
    let y = quotient_arrow(ring)?;
    let z0 = interval_diagram(1, 1, 1, ring)?;
    let k0 = interval_diagram(0, 0, 1, ring)?;

    let a = square(&x, &y, [0, 1])?;
    let b = square(&x, &y, [alpha, 0])?;
    let xy = ho_hom(&x, &y)?;
    cert.table("ho_dims", vec![vec![i64::from(xy.dim)]]);
    cert.require(!xy.is_null(&a), || "the square (0, q) is null".into());
    cert.require(!xy.is_null(&b), || "the square (alpha, 0) is null".into());
    match xy.homotopy(&a.plus(&b)) {
        Some(h) => cert.witnesses.push(format!("(0,q) + (alpha,0) = eps . H with H components {:?}", comps(&h))),
        None => cert.fail("the sum of the two squares is not null".into()),
    }

    // (0, q) = ι ∘ f with ι: (0 -> k) -> (R -> k) an isomorphism
    let f = square(&x, &z0, [0, 1])?;
    let iota = square(&z0, &y, [0, 1])?;
    cert.require(iota.after(&f) == a, || "(0, q) does not factor as iota . f".into());
    cert.require(is_ho_iso(&iota, &ho_hom(&z0, &y)?)?, || "(0 -> k) -> (R -> k) is not an isomorphism".into());

    // (α, 0) = g ∘ π with π: (k -> R) -> (k -> 0) an isomorphism
    let g = square(&k0, &y, [alpha, 0])?;
    let pi = square(&x, &k0, [1, 0])?;
    cert.require(g.after(&pi) == b, || "(alpha, 0) does not factor as g . pi".into());
    cert.require(is_ho_iso(&pi, &ho_hom(&x, &k0)?)?, || "(k -> R) -> (k -> 0) is not an isomorphism".into());

    // Σf is g up to a unit
    let sf = suspend_morphism(&f)?;
    if sf.source == k0 && sf.target == y {
        let h = ho_hom(&k0, &y)?;
        let r = &h.replacement.r;
        let (u, v) = (h.coords(&sf.after(r)), h.coords(&g.after(r)));
        let k = ring.residue_field();
        let unit = (1..ring.p).find(|&c| u.iter().zip(&v).all(|(&s, &t)| s == k.mul(c, t)));
        match unit {
            Some(c) => cert.witnesses.push(format!("suspension of f = {c} * g in Ho((k -> 0), (R -> k))")),
            None => cert.fail("the suspension of f is not a unit multiple of g".into()),
        }
    } else {
        cert.fail(format!("suspension of f runs {} -> {}, expected (k -> 0) -> (R -> k)", sf.source, sf.target));
    }

    // the suspension of (k -α-> R) against (R -q-> k)
    let sx = suspend(&x)?;
    cert.witnesses.push(format!("suspension of (k -> R) is {sx}"));
    match find_ho_iso(&sx, &y, cap)? {
        Some(_) => cert.witnesses.push("suspension of (k -> R) is isomorphic to (R -> k)".into()),
        None => cert.fail(format!("suspension of (k -> R) is {sx}, not isomorphic to (R -> k) in Ho")),
    }
    let sz = suspend(&z0)?;
    if find_ho_iso(&sz, &y, cap)?.is_some() {
        cert.notes.push(format!("suspension of (0 -> k) is {sz}, isomorphic to (R -> k)"));
    }
    let zero = Diagram::zero(ring, 1);
    cert.require(suspend(&zero)?.is_zero(), || "suspension of the zero diagram is not zero".into());
    Ok(cert)
}

fn comps(f: &DiagMorphism) -> Vec<Vec<Vec<u32>>> {
    f.comps.iter().map(|c| c.lift().to_rows()).collect()
}
