use super::*;
use crate::meshcat::{dn_predicate, mesh_hom_predicate};
use crate::ringlin::{make_ring, Matrix, RingKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z4() -> RingSpec {
    make_ring(RingKind::ZModP2, 2).unwrap()
}

fn rings() -> Vec<RingSpec> {
    let mut v = vec![];
    for p in [2, 3] {
        v.push(make_ring(RingKind::FpEps, p).unwrap());
        v.push(make_ring(RingKind::ZModP2, p).unwrap());
    }
    v
}

fn intervals(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

fn replacement(i: usize, j: usize, n: usize, r: RingSpec) -> Replacement {
    let (tilde, r) = mtilde(i, j, n, r).unwrap();
    Replacement { tilde, r }
}

fn ho_interval(a: (usize, usize), b: (usize, usize), n: usize, r: RingSpec) -> HoHomSpace {
    let x = interval_diagram(a.0, a.1, n, r).unwrap();
    let y = interval_diagram(b.0, b.1, n, r).unwrap();
    ho_hom_with(replacement(a.0, a.1, n, r), &x, &y).unwrap()
}

#[test]
fn mtilde_examples() {
    let r = z4();
    let (t, rr) = mtilde(0, 0, 1, r).unwrap();
    assert_eq!(t.objects, vec![FgModule::residue(r, 1), FgModule::free(r, 1)]);
    assert_eq!(t.maps[0].lift().get(0, 0), r.alpha());
    assert!(rr.comps[0].is_identity());
    assert!(rr.comps[1].is_zero());
    for n in 0..=3 {
        for i in 0..=n {
            let (t, rr) = mtilde(i, n, n, r).unwrap();
            assert_eq!(t, interval_diagram(i, n, n, r).unwrap());
            assert!(rr.is_identity());
        }
    }
    let e = make_ring(RingKind::FpEps, 2).unwrap();
    let (t, _) = mtilde(1, 1, 2, e).unwrap();
    assert_eq!(t.objects, vec![FgModule::zero(e), FgModule::residue(e, 1), FgModule::free(e, 1)]);
    assert!(t.is_cofibrant());
    assert!(mtilde(2, 1, 3, e).is_err());
    assert!(mtilde(0, 4, 3, e).is_err());
}

#[test]
fn lifts_cover_the_mesh_morphisms() {
    for r in rings() {
        for n in 0..=3 {
            for a in intervals(n) {
                for b in intervals(n) {
                    let Ok(v) = nu(a.0, a.1, b.0, b.1, n, r) else {
                        assert_eq!(mesh_hom_predicate(a, b), 0);
                        continue;
                    };
                    let vt = nu_lift(a.0, a.1, b.0, b.1, n, r).unwrap();
                    let (_, ra) = mtilde(a.0, a.1, n, r).unwrap();
                    let (_, rb) = mtilde(b.0, b.1, n, r).unwrap();
                    assert_eq!(rb.after(&vt), v.after(&ra));
                }
            }
        }
    }
}

#[test]
fn single_steps() {
    let r = z4();
    let ne = ne_lift(1, 1, 2, r).unwrap();
    assert!(ne.comps.iter().skip(1).all(|c| c.is_identity()));
    let se = se_lift(0, 1, 2, r).unwrap();
    assert!(se.comps[0].is_identity());
    assert_eq!(se.comps[1].lift().get(0, 0), r.alpha());
    assert!(se.comps[2].is_identity());
    assert!(nu_lift(1, 2, 1, 2, 2, r).unwrap().is_identity());
    assert!(nu_lift(0, 1, 1, 1, 2, r).is_err());
}

#[test]
fn cofibrant_replacement_basics() {
    let r = z4();
    let (t, _) = mtilde(0, 1, 2, r).unwrap();
    let rep = cofibrant_replace(&t);
    assert_eq!(rep.tilde, t);
    assert!(rep.r.is_identity());
    let z = Diagram::zero(r, 2);
    assert_eq!(cofibrant_replace(&z).tilde, z);
    let m = interval_diagram(0, 0, 1, r).unwrap();
    let rep = cofibrant_replace(&m);
    assert!(rep.tilde.is_cofibrant());
    assert!(!m.is_cofibrant());
    let (mt, _) = mtilde(0, 0, 1, r).unwrap();
    assert!(find_ho_iso(&rep.tilde, &mt, 4).unwrap().is_some());
    // r is a levelwise stable equivalence
    assert!(rep.r.comps.iter().all(crate::modcat::is_stable_equivalence));
}

#[test]
fn replacements_give_the_same_homotopy_classes() {
    for r in rings() {
        for n in 0..=2 {
            for a in intervals(n) {
                let x = interval_diagram(a.0, a.1, n, r).unwrap();
                for b in intervals(n) {
                    let y = interval_diagram(b.0, b.1, n, r).unwrap();
                    let generic = ho_hom(&x, &y).unwrap();
                    let model = ho_hom_with(replacement(a.0, a.1, n, r), &x, &y).unwrap();
                    assert_eq!(generic.dim, model.dim, "{r} n={n} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn homotopy_hom_table_is_mesh_plus_bimodule() {
    for r in rings() {
        for n in 0..=2 {
            for a in intervals(n) {
                for b in intervals(n) {
                    let h = ho_interval(a, b, n, r);
                    let want = mesh_hom_predicate(a, b) + dn_predicate(a, b);
                    assert_eq!(h.dim as usize, want, "{r} n={n} {a:?} {b:?}");
                    assert_eq!(levelwise_null_dim(&h).unwrap() as usize, dn_predicate(a, b));
                }
            }
        }
    }
}

#[test]
fn ho_hom_examples() {
    let r = z4();
    let x = interval_diagram(1, 1, 1, r).unwrap();
    let y = interval_diagram(0, 1, 1, r).unwrap();
    assert_eq!(ho_hom(&x, &y).unwrap().dim, 1);
    for r in rings() {
        for n in 1..=3 {
            for a in intervals(n) {
                for b in intervals(n) {
                    if let Ok(f) = htrivial(a.0, a.1, b.0, b.1, n, r) {
                        let h = ho_interval(a, b, n, r);
                        assert!(h.is_null(&f), "{r} {a:?} {b:?}");
                        let w = h.homotopy(&f).unwrap();
                        assert_eq!(h.eps.after(&w), f);
                    }
                    if let Ok(f) = nontrivial(a.0, a.1, b.0, b.1, n, r) {
                        let h = ho_interval(a, b, n, r);
                        assert!(!h.is_null(&f), "{r} {a:?} {b:?}");
                        assert!(h.homotopy(&f).is_none());
                    }
                }
            }
        }
    }
}

#[test]
fn phi_tilde_relations() {
    let r = z4();
    let phi = phi_tilde(1, 1, r).unwrap();
    assert!(phi.comps[0].is_zero());
    assert_eq!(phi.comps[1].lift().get(0, 0), 1);
    assert_eq!(phi.comps[1].source, FgModule::free(r, 1));
    for r in rings() {
        for n in 1..=3 {
            for i in 1..n {
                let lhs = ne_step(i + 1, n, n, r).unwrap().after(&phi_tilde(i + 1, n, r).unwrap());
                let rhs = phi_tilde(i, n, r).unwrap().after(&se_lift(0, i, n, r).unwrap());
                let h = ho_interval((0, i), (i, n), n, r);
                assert!(h.homotopic(&lhs, &rhs));
            }
            let last = ne_step(1, n, n, r).unwrap().after(&phi_tilde(1, n, r).unwrap());
            assert!(ho_interval((0, 0), (0, n), n, r).is_null(&last));
            let tail = phi_tilde(n, n, r).unwrap().after(&se_lift(0, n, n, r).unwrap());
            assert!(ho_interval((0, n), (n, n), n, r).is_null(&tail));
            for i2 in 0..=n {
                for i3 in (i2 + 1)..=n {
                    let v = nu_lift(i2, n, 0, i3 - 1, n, r).unwrap();
                    assert!(phi_tilde(i3, n, r).unwrap().after(&v).is_zero());
                }
            }
        }
    }
}

#[test]
fn ideal_squares_to_zero() {
    for r in rings() {
        for n in 2..=3 {
            for a in intervals(n) {
                for b in intervals(n) {
                    let Ok(f) = nontrivial(a.0, a.1, b.0, b.1, n, r) else { continue };
                    let ab = ho_interval(a, b, n, r);
                    for c in intervals(n) {
                        let Ok(g) = nontrivial(b.0, b.1, c.0, c.1, n, r) else { continue };
                        let ac = ho_interval(a, c, n, r);
                        let gf = ho_compose(&g, &f, &ab, &replacement(b.0, b.1, n, r)).unwrap();
                        assert!(ac.is_null(&gf), "{r} {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn null_morphisms_form_an_ideal() {
    for r in rings() {
        let n = 2;
        for a in intervals(n) {
            for b in intervals(n) {
                let Ok(f) = htrivial(a.0, a.1, b.0, b.1, n, r) else { continue };
                for c in intervals(n) {
                    if let Ok(g) = nu(b.0, b.1, c.0, c.1, n, r) {
                        assert!(ho_interval(a, c, n, r).is_null(&g.after(&f)));
                    }
                    if let Ok(h) = nu_lift(c.0, c.1, a.0, a.1, n, r) {
                        assert!(ho_interval(c, b, n, r).is_null(&f.after(&h)));
                    }
                }
            }
        }
    }
}

#[test]
fn coordinates_round_trip() {
    for r in rings() {
        let h = ho_interval((0, 0), (1, 1), 1, r);
        assert_eq!(h.dim, 1);
        for c in 0..r.p {
            let f = h.from_coords(&[c]);
            assert_eq!(h.coords(&f), vec![c]);
            assert!(h.is_null(&f.scale(r.alpha())));
        }
    }
}

#[test]
fn suspension_examples() {
    let r = z4();
    let k = interval_diagram(0, 0, 0, r).unwrap();
    assert_eq!(suspend(&k).unwrap(), k);
    let z = Diagram::zero(r, 1);
    assert!(suspend(&z).unwrap().is_zero());
    for r in rings() {
        let (x, _) = mtilde(0, 0, 1, r).unwrap();
        let sx = suspend(&x).unwrap();
        let q = interval_diagram(1, 1, 1, r).unwrap();
        let target = Diagram::new(
            r,
            vec![FgModule::free(r, 1), FgModule::residue(r, 1)],
            vec![ModMorphism::from_lift(FgModule::free(r, 1), FgModule::residue(r, 1), &Matrix::identity(r, 1)).unwrap()],
        )
        .unwrap();
        // the cofiber of k -> R over k -> k is k -> 0, which differs from
        // R -> k already at level 0
        let k0 = interval_diagram(0, 0, 1, r).unwrap();
        assert_eq!(sx, k0);
        assert!(find_ho_iso(&sx, &target, 4).unwrap().is_none(), "{r}: {sx}");
        assert!(find_ho_iso(&sx, &q, 4).unwrap().is_none());
        // R -> k is instead the suspension of 0 -> k
        let s01 = suspend(&q).unwrap();
        assert!(find_ho_iso(&s01, &target, 4).unwrap().is_some(), "{r}: {s01}");
        let (c, m) = cone(&x);
        assert!(is_contractible(&c).unwrap());
        assert!(m.comps.iter().all(crate::modcat::is_mono));
    }
}

fn random_free_diagram(rng: &mut ChaCha8Rng, r: RingSpec, n: usize) -> Diagram {
    let objects: Vec<FgModule> = (0..=n).map(|_| FgModule::free(r, rng.gen_range(0..=2))).collect();
    let maps = (0..n)
        .map(|i| {
            let (a, b) = (objects[i], objects[i + 1]);
            let mut l = Matrix::zeros(r, b.gens(), a.gens());
            for s in 0..b.gens() {
                for t in 0..a.gens() {
                    l.set(s, t, rng.gen_range(0..r.size()));
                }
            }
            ModMorphism::from_lift(a, b, &l).unwrap()
        })
        .collect();
    Diagram::new(r, objects, maps).unwrap()
}

fn random_morphism(rng: &mut ChaCha8Rng, x: &Diagram, y: &Diagram) -> DiagMorphism {
    let h = diag_hom(x, y).unwrap();
    let c: Vec<u32> = h.gens.iter().map(|_| rng.gen_range(0..x.ring.size())).collect();
    h.combine(&c)
}

#[test]
fn factorizations_through_free_diagrams_are_null() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for r in rings() {
        for n in 0..=1 {
            for a in intervals(n) {
                for b in intervals(n) {
                    let h = ho_interval(a, b, n, r);
                    for _ in 0..6 {
                        let p = random_free_diagram(&mut rng, r, n);
                        let f = random_morphism(&mut rng, h.tilde(), &p);
                        let g = random_morphism(&mut rng, &p, &h.target);
                        assert!(h.is_null(&g.after(&f)));
                    }
                }
            }
        }
    }
}
