//! `K_0` presentations: the Waldhausen side on `mod R` with monomorphisms and
//! stable equivalences, and the derivator side read off the faces of
//! `D_2(k)`.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ring_name, Certificate};
use crate::error::{Error, Result};
use crate::meshcat::{level_objects, op_on_object, FaceZero, Obj, Op};
use crate::modcat::{cokernel_of_any, hom_space, is_mono, FgModule, ModMorphism};
use crate::ringlin::{smith_over_z, RingSpec};

/// Morphism spaces with at most `p^ENUMERATE_LOG` elements are enumerated;
/// larger ones are sampled.
const ENUMERATE_LOG: u32 = 10;
const SAMPLES: usize = 400;

/// A finitely generated abelian group `Z^free ⊕ Z/t_1 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Generators, relation rows (one coefficient per generator) and the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<i64>>,
    pub group: AbelianGroup,
}

impl KPresentation {
    fn new(generators: Vec<String>, relations: BTreeSet<Vec<i64>>) -> KPresentation {
        let relations: Vec<Vec<i64>> = relations.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
        let g = generators.len();
        let matrix: Vec<Vec<i64>> = (0..g).map(|i| relations.iter().map(|r| r[i]).collect()).collect();
        let s = smith_over_z(&matrix);
        let group = AbelianGroup { free_rank: s.coker_free_rank(), torsion: s.coker_torsion() };
        KPresentation { generators, relations, group }
    }
}

/// `R^a ⊕ k^b` with `a + b <= cap`.
fn modules(ring: RingSpec, cap: usize) -> Vec<FgModule> {
    let mut v = vec![];
    for a in 0..=cap {
        for b in 0..=cap - a {
            v.push(FgModule::new(ring, a, b).expect("valid module"));
        }
    }
    v
}

fn class(m: &FgModule) -> Vec<i64> {
    vec![m.free as i64, m.residue as i64]
}

fn morphisms(a: &FgModule, b: &FgModule, rng: &mut ChaCha8Rng) -> Result<Vec<ModMorphism>> {
    let h = hom_space(a, b)?;
    if h.log_size() <= ENUMERATE_LOG {
        return Ok(h.enumerate());
    }
    let s = h.space();
    let size = a.ring.size();
    Ok((0..SAMPLES)
        .map(|_| {
            let v: Vec<u32> = (0..s.dim()).map(|_| rng.gen_range(0..size)).collect();
            ModMorphism::from_element(*a, *b, &s.canonical(v))
        })
        .collect())
}

/// Generators `[R], [k]`; relations `[B] = [A] + [B/A]` for monomorphisms
/// `A ↣ B` between modules of rank at most `cap`, and `[A] = [B]` for
/// stably equivalent modules of rank at most `cap`.
pub fn k0_waldhausen(ring: RingSpec, cap: usize) -> Result<KPresentation> {
    if ring.is_field() {
        return Err(Error::Invalid(format!("{ring} is a field")));
    }
    if cap < 2 {
        return Err(Error::OutOfRange(format!("rank cap {cap} < 2")));
    }
    let mods = modules(ring, cap);
    let mut rels = BTreeSet::new();
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(ring.p) * 1000 + cap as u64);
    for a in &mods {
        for b in &mods {
            if a.residue == b.residue {
                rels.insert(vec![b.free as i64 - a.free as i64, 0]);
            }
            for f in morphisms(a, b, &mut rng)? {
                if !is_mono(&f) {
                    continue;
                }
                let c = cokernel_of_any(&f).module;
                let (ca, cb, cc) = (class(a), class(b), class(&c));
                rels.insert((0..2).map(|i| cb[i] - ca[i] - cc[i]).collect());
            }
        }
    }
    Ok(KPresentation::new(vec!["R".into(), "k".into()], rels))
}

/// Generators: the nonzero objects of `D_1(k)`; relations
/// `[d_1 Y] = [d_2 Y] + [d_0 Y]` for sums `Y` of at most `cap` objects of
/// `D_2(k)`.
pub fn k0_derivator(k: RingSpec, cap: usize) -> Result<KPresentation> {
    if !k.is_field() {
        return Err(Error::Invalid(format!("{k} is not a field")));
    }
    if cap < 2 {
        return Err(Error::OutOfRange(format!("rank cap {cap} < 2")));
    }
    let gens: Vec<Obj> = level_objects(1).into_iter().filter(|o| *o != Obj::Zero).collect();
    let level2: Vec<Obj> = level_objects(2).into_iter().filter(|o| *o != Obj::Zero).collect();
    let face_class = |t: usize, o: Obj| -> Vec<i64> {
        let img = op_on_object(Op::Face(t), 2, o, FaceZero::Adopted);
        gens.iter().map(|g| i64::from(*g == img)).collect()
    };
    let single: Vec<Vec<i64>> = level2
        .iter()
        .map(|&o| {
            let (d0, d1, d2) = (face_class(0, o), face_class(1, o), face_class(2, o));
            (0..gens.len()).map(|i| d1[i] - d2[i] - d0[i]).collect()
        })
        .collect();
    // every multiset of at most `cap` level-2 objects
    let mut rels = BTreeSet::new();
    let mut counts = vec![0usize; level2.len()];
    loop {
        let total: usize = counts.iter().sum();
        if total <= cap {
            let row: Vec<i64> = (0..gens.len())
                .map(|i| counts.iter().zip(&single).map(|(&c, r)| c as i64 * r[i]).sum())
                .collect();
            rels.insert(row);
        }
        let mut t = 0;
        loop {
            if t == counts.len() {
                let names = gens.iter().map(|g| format!("{g}")).collect();
                return Ok(KPresentation::new(names, rels));
            }
            counts[t] += 1;
            if counts[t] <= cap {
                break;
            }
            counts[t] = 0;
            t += 1;
        }
    }
}

/// Both presentations for every cap in `2..=max_cap`: each side must be
/// stable in the cap, and the two groups must agree.
pub fn k0_check(ring: RingSpec, max_cap: usize) -> Result<Certificate> {
    let mut cert = Certificate::new("k0", ring_name(ring), ring.p, None);
    cert.cap = Some(max_cap as u32);
    let mut rows = vec![];
    let mut groups = vec![];
    for cap in 2..=max_cap.max(2) {
        let w = k0_waldhausen(ring, cap)?;
        let d = k0_derivator(ring.residue_field(), cap)?;
        let mut row = vec![cap as i64, w.group.free_rank as i64, d.group.free_rank as i64];
        row.push(w.group.torsion.len() as i64);
        row.extend(w.group.torsion.iter().copied());
        row.push(d.group.torsion.len() as i64);
        row.extend(d.group.torsion.iter().copied());
        rows.push(row);
        cert.require(w.group == d.group, || {
            format!("cap {cap}: Waldhausen side {} but derivator side {}", w.group, d.group)
        });
        if cap == max_cap.max(2) {
            cert.notes.push(format!("Waldhausen K0 = {} on generators {:?}", w.group, w.generators));
            cert.notes.push(format!("derivator K0 = {} on generators {:?}", d.group, d.generators));
            cert.notes.push("derivator relations read [d1 Y] = [d2 Y] + [d0 Y] on D_2(k)".into());
        }
        groups.push((w.group, d.group));
    }
    cert.require(groups.windows(2).all(|g| g[0] == g[1]), || "groups change with the rank cap".into());
    cert.table("groups_by_cap", rows);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_and_split_relations() {
        let ring = RingSpec::zp2(2).unwrap();
        let w = k0_waldhausen(ring, 2).unwrap();
        // [R] = [k] + [k] from k ↣ R
        assert!(w.relations.contains(&vec![1, -2]));
        // 0 ↪ k gives [k] = [k], which is dropped as trivial
        assert!(w.relations.iter().all(|r| r.iter().any(|&x| x != 0)));
    }

    #[test]
    fn both_sides_are_z_mod_2() {
        let z2 = AbelianGroup { free_rank: 0, torsion: vec![2] };
        for p in [2, 3] {
            for ring in [RingSpec::fp_eps(p).unwrap(), RingSpec::zp2(p).unwrap()] {
                assert_eq!(k0_waldhausen(ring, 2).unwrap().group, z2, "{ring}");
            }
            assert_eq!(k0_derivator(RingSpec::field(p).unwrap(), 2).unwrap().group, z2);
        }
        assert_eq!(z2.to_string(), "Z/2");
    }

    #[test]
    fn derivator_relation_of_the_first_row() {
        let d = k0_derivator(RingSpec::field(2).unwrap(), 2).unwrap();
        assert_eq!(d.generators, vec!["(0,0)".to_string()]);
        // Y = (0,0): d1 Y = 0, d2 Y = d0 Y = (0,0)
        assert!(d.relations.contains(&vec![-2]));
    }
}
