//! Filtered objects `X_0 ↣ ... ↣ X_n` with chosen cofibers, and the face and
//! degeneracy operators of `S_•` on diagrams and their morphisms.

use crate::diagcat::{DiagMorphism, Diagram};
use crate::error::{Error, Result};
use crate::meshcat::Op;
use crate::modcat::{cokernel_of_any, factor_through, Cokernel, FgModule, ModMorphism};

/// A cofibrant diagram together with the cofibers `X_j / X_i` for `i < j`.
#[derive(Clone, Debug)]
pub struct SObject {
    pub diagram: Diagram,
    /// `cofibers[i][j - i - 1]` is the cokernel of `X_i -> X_j`.
    pub cofibers: Vec<Vec<Cokernel>>,
}

impl SObject {
    pub fn new(diagram: Diagram) -> Result<SObject> {
        if !diagram.is_cofibrant() {
            return Err(Error::NotMono);
        }
        let n = diagram.n();
        let cofibers = (0..=n)
            .map(|i| (i + 1..=n).map(|j| cokernel_of_any(&diagram.transition(i, j))).collect())
            .collect();
        Ok(SObject { diagram, cofibers })
    }

    pub fn cofiber(&self, i: usize, j: usize) -> &Cokernel {
        &self.cofibers[i][j - i - 1]
    }
}

fn check_op(op: Op, n: usize) -> Result<()> {
    let ok = match op {
        Op::Face(t) => n >= 1 && t <= n + 1,
        Op::Degeneracy(t) => t <= n + 1,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{op:?} on a diagram with {} objects", n + 1)))
    }
}

/// The quotient of `X` by `X_0`: `X_1 / X_0 -> ... -> X_n / X_0`.
fn quotient_by_first(x: &Diagram) -> Result<(Diagram, Vec<Cokernel>)> {
    let n = x.n();
    let q: Vec<Cokernel> = (1..=n).map(|t| cokernel_of_any(&x.transition(0, t))).collect();
    let mut maps = vec![];
    for t in 1..n {
        let h = q[t].projection.after(&x.maps[t]);
        let g = factor_through(&q[t - 1].projection, &h)
            .ok_or_else(|| Error::Invalid("connecting map does not descend to the quotient".into()))?;
        maps.push(g);
    }
    let objects = q.iter().map(|c| c.module).collect();
    Ok((Diagram::new(x.ring, objects, maps)?, q))
}

/// `S(op)` on objects: `d_0` divides by `X_0`, `d_{t+1}` drops `X_t`, `s_0`
/// puts `0` in front and `s_{t+1}` repeats `X_t`.
pub fn apply_op(op: Op, x: &Diagram) -> Result<Diagram> {
    let n = x.n();
    check_op(op, n)?;
    let ring = x.ring;
    Ok(match op {
        Op::Face(0) => quotient_by_first(x)?.0,
        Op::Face(s) => {
            let t = s - 1;
            let mut objects = x.objects.clone();
            objects.remove(t);
            let mut maps = x.maps.clone();
            if t == n {
                maps.pop();
            } else if t == 0 {
                maps.remove(0);
            } else {
                let merged = x.maps[t].after(&x.maps[t - 1]);
                maps.remove(t);
                maps[t - 1] = merged;
            }
            Diagram::new(ring, objects, maps)?
        }
        Op::Degeneracy(0) => {
            let z = FgModule::zero(ring);
            let mut objects = vec![z];
            objects.extend(x.objects.iter().copied());
            let mut maps = vec![ModMorphism::zero(z, x.objects[0])];
            maps.extend(x.maps.iter().cloned());
            Diagram::new(ring, objects, maps)?
        }
        Op::Degeneracy(s) => {
            let t = s - 1;
            let mut objects = x.objects.clone();
            objects.insert(t, x.objects[t]);
            let mut maps = x.maps.clone();
            maps.insert(t, ModMorphism::identity(x.objects[t]));
            Diagram::new(ring, objects, maps)?
        }
    })
}

/// `S(op)` on a morphism of diagrams.
pub fn apply_op_morphism(op: Op, f: &DiagMorphism) -> Result<DiagMorphism> {
    let n = f.source.n();
    check_op(op, n)?;
    let src = apply_op(op, &f.source)?;
    let tgt = apply_op(op, &f.target)?;
    let comps = match op {
        Op::Face(0) => {
            let (_, qx) = quotient_by_first(&f.source)?;
            let (_, qy) = quotient_by_first(&f.target)?;
            let mut comps = vec![];
            for t in 1..=n {
                let h = qy[t - 1].projection.after(&f.comps[t]);
                let g = factor_through(&qx[t - 1].projection, &h)
                    .ok_or_else(|| Error::Invalid("morphism does not descend to the quotient".into()))?;
                comps.push(g);
            }
            comps
        }
        Op::Face(s) => {
            let mut comps = f.comps.clone();
            comps.remove(s - 1);
            comps
        }
        Op::Degeneracy(0) => {
            let mut comps = vec![ModMorphism::zero(FgModule::zero(f.source.ring), FgModule::zero(f.source.ring))];
            comps.extend(f.comps.iter().cloned());
            comps
        }
        Op::Degeneracy(s) => {
            let mut comps = f.comps.clone();
            comps.insert(s - 1, f.comps[s - 1].clone());
            comps
        }
    };
    DiagMorphism::new(&src, &tgt, comps)
}
