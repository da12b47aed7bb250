//! The explicit models: interval diagrams `M_{i,j}`, their cofibrant
//! replacements `M̃_{i,j}`, the mesh arrows and their lifts, and `φ̃_i`.
//!
//! Every module here is `0`, `k` or `R`, and every component is the map
//! given by a single presentation entry.

use super::{DiagMorphism, Diagram};
use crate::error::{Error, Result};
use crate::modcat::{FgModule, ModMorphism};
use crate::ringlin::{Matrix, RingSpec};

fn local(ring: RingSpec) -> Result<()> {
    if ring.is_field() {
        return Err(Error::Invalid(format!("{ring} is a field; diagrams need k = R/alpha")));
    }
    Ok(())
}

fn check_interval(i: usize, j: usize, n: usize) -> Result<()> {
    if i > j || j > n {
        return Err(Error::OutOfRange(format!("({i},{j}) is not an interval of [0,{n}]")));
    }
    Ok(())
}

/// The map `src -> tgt` with presentation entry `code`, zero if either end is zero.
fn unit_map(src: FgModule, tgt: FgModule, code: u32) -> ModMorphism {
    if src.is_zero() || tgt.is_zero() {
        return ModMorphism::zero(src, tgt);
    }
    let mut l = Matrix::zeros(src.ring, 1, 1);
    l.set(0, 0, code);
    ModMorphism::from_lift(src, tgt, &l).expect("entry preserves relations")
}

fn from_modules(ring: RingSpec, objects: Vec<FgModule>, code: impl Fn(usize) -> u32) -> Diagram {
    let maps = (0..objects.len() - 1).map(|t| unit_map(objects[t], objects[t + 1], code(t))).collect();
    Diagram { ring, objects, maps }
}

fn levelwise(x: &Diagram, y: &Diagram, code: impl Fn(usize) -> u32) -> Result<DiagMorphism> {
    let comps = (0..x.objects.len()).map(|t| unit_map(x.objects[t], y.objects[t], code(t))).collect();
    DiagMorphism::new(x, y, comps)
}

/// `M_{i,j}`: `k` on positions `i..=j` with identities, zero elsewhere.
pub fn interval_diagram(i: usize, j: usize, n: usize, ring: RingSpec) -> Result<Diagram> {
    local(ring)?;
    check_interval(i, j, n)?;
    let k = FgModule::residue(ring, 1);
    let objects = (0..=n).map(|t| if i <= t && t <= j { k } else { FgModule::zero(ring) }).collect();
    Ok(from_modules(ring, objects, |_| 1))
}

/// `M̃_{i,j}`: `k` on `i..=j`, then `alpha: k -> R` and `R` up to `n`, with
/// `r_{i,j}: M̃_{i,j} -> M_{i,j}` the identity on the `k` positions.
pub fn mtilde(i: usize, j: usize, n: usize, ring: RingSpec) -> Result<(Diagram, DiagMorphism)> {
    local(ring)?;
    check_interval(i, j, n)?;
    let k = FgModule::residue(ring, 1);
    let r = FgModule::free(ring, 1);
    let objects = (0..=n)
        .map(|t| {
            if t < i {
                FgModule::zero(ring)
            } else if t <= j {
                k
            } else {
                r
            }
        })
        .collect();
    let alpha = ring.alpha();
    let tilde = from_modules(ring, objects, |t| if t == j { alpha } else { 1 });
    let m = interval_diagram(i, j, n, ring)?;
    let rij = levelwise(&tilde, &m, |t| u32::from(t <= j))?;
    Ok((tilde, rij))
}

/// `ν_{i1,j1;i2,j2}: M_{i1,j1} -> M_{i2,j2}`, defined when `i2 <= i1 <= j2 <= j1`.
pub fn nu(i1: usize, j1: usize, i2: usize, j2: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if !(i2 <= i1 && i1 <= j2 && j2 <= j1) {
        return Err(Error::Invalid(format!("no mesh morphism ({i1},{j1}) -> ({i2},{j2})")));
    }
    let x = interval_diagram(i1, j1, n, ring)?;
    let y = interval_diagram(i2, j2, n, ring)?;
    levelwise(&x, &y, |_| 1)
}

/// The arrow `(i,j) -> (i-1,j)`.
pub fn ne_step(i: usize, j: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if i == 0 {
        return Err(Error::OutOfRange(format!("no arrow out of ({i},{j}) to the north-east")));
    }
    nu(i, j, i - 1, j, n, ring)
}

/// The arrow `(i,j) -> (i,j-1)`.
pub fn se_step(i: usize, j: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if j == i {
        return Err(Error::OutOfRange(format!("no arrow out of ({i},{j}) to the south-east")));
    }
    nu(i, j, i, j - 1, n, ring)
}

/// The lift `M̃_{i,j} -> M̃_{i-1,j}` of the north-east arrow: identities.
pub fn ne_lift(i: usize, j: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if i == 0 {
        return Err(Error::OutOfRange(format!("no arrow out of ({i},{j}) to the north-east")));
    }
    let (x, _) = mtilde(i, j, n, ring)?;
    let (y, _) = mtilde(i - 1, j, n, ring)?;
    levelwise(&x, &y, |_| 1)
}

/// The lift `M̃_{i,j} -> M̃_{i,j-1}` of the south-east arrow: identities
/// except `alpha: k -> R` at position `j`.
pub fn se_lift(i: usize, j: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if j == i {
        return Err(Error::OutOfRange(format!("no arrow out of ({i},{j}) to the south-east")));
    }
    let (x, _) = mtilde(i, j, n, ring)?;
    let (y, _) = mtilde(i, j - 1, n, ring)?;
    let alpha = ring.alpha();
    levelwise(&x, &y, |t| if t == j { alpha } else { 1 })
}

/// `ν̃_{i1,j1;i2,j2}`: north-east lifts down to `i2`, then south-east lifts
/// down to `j2`.
pub fn nu_lift(i1: usize, j1: usize, i2: usize, j2: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if !(i2 <= i1 && i1 <= j2 && j2 <= j1) {
        return Err(Error::Invalid(format!("({i1},{j1}) >= ({i2},{j2}) is not a monotone path")));
    }
    let (start, _) = mtilde(i1, j1, n, ring)?;
    let mut acc = DiagMorphism::identity(&start);
    for i in (i2 + 1..=i1).rev() {
        acc = ne_lift(i, j1, n, ring)?.after(&acc);
    }
    for j in (j2 + 1..=j1).rev() {
        acc = se_lift(i2, j, n, ring)?.after(&acc);
    }
    Ok(acc)
}

/// `φ̃_i: M̃_{0,i-1} -> M_{i,n}`: zero on the `k` positions and `q` on the `R` ones.
pub fn phi_tilde(i: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if i == 0 || i > n {
        return Err(Error::OutOfRange(format!("phi_{i} needs 0 < i <= {n}")));
    }
    let (x, _) = mtilde(0, i - 1, n, ring)?;
    let y = interval_diagram(i, n, n, ring)?;
    levelwise(&x, &y, |_| 1)
}

/// `ν_{i2,n;i2,j2} φ̃_{i2} ν̃_{i1,j1;0,i2-1}: M̃_{i1,j1} -> M_{i2,j2}`, for
/// `i1 + 1 <= i2 <= j1 + 1 <= j2`.
pub fn nontrivial(i1: usize, j1: usize, i2: usize, j2: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if !(i1 < i2 && i2 <= j1 + 1 && j1 < j2) {
        return Err(Error::Invalid(format!("no bimodule generator ({i1},{j1}) -> ({i2},{j2})")));
    }
    let v = nu_lift(i1, j1, 0, i2 - 1, n, ring)?;
    let phi = phi_tilde(i2, n, ring)?;
    let u = nu(i2, n, i2, j2, n, ring)?;
    Ok(u.after(&phi.after(&v)))
}

/// `M̃_{i1,j1} -> M_{i2,j2}`, zero on the `k` positions and `q` on the `R`
/// positions up to `j2`, for `i2 <= i1` and `j1 < j2`.
pub fn htrivial(i1: usize, j1: usize, i2: usize, j2: usize, n: usize, ring: RingSpec) -> Result<DiagMorphism> {
    if !(i2 <= i1 && j1 < j2) {
        return Err(Error::Invalid(format!("no factored morphism ({i1},{j1}) -> ({i2},{j2})")));
    }
    let (x, _) = mtilde(i1, j1, n, ring)?;
    let y = interval_diagram(i2, j2, n, ring)?;
    levelwise(&x, &y, |t| u32::from(t > j1))
}
