use std::collections::BTreeSet;

use super::*;
use crate::ringlin::{make_ring, RingKind};
use proptest::prelude::*;

fn z4() -> RingSpec {
    make_ring(RingKind::ZModP2, 2).unwrap()
}

fn local_rings(primes: &[u32]) -> Vec<RingSpec> {
    let mut v = vec![];
    for &p in primes {
        v.push(make_ring(RingKind::FpEps, p).unwrap());
        v.push(make_ring(RingKind::ZModP2, p).unwrap());
    }
    v
}

fn modules(ring: RingSpec, max_gens: usize) -> Vec<FgModule> {
    let mut v = vec![];
    for a in 0..=max_gens {
        for b in 0..=max_gens - a {
            v.push(FgModule { ring, free: a, residue: b });
        }
    }
    v
}

fn alpha_map(r: RingSpec) -> ModMorphism {
    let mut f = ModMorphism::zero(FgModule::residue(r, 1), FgModule::free(r, 1));
    f.kr.set(0, 0, 1);
    f
}

fn q_map(r: RingSpec) -> ModMorphism {
    let mut f = ModMorphism::zero(FgModule::free(r, 1), FgModule::residue(r, 1));
    f.rk.set(0, 0, 1);
    f
}

/// Composition of lifted matrices read back as a morphism.
fn compose_by_lift(g: &ModMorphism, f: &ModMorphism) -> ModMorphism {
    ModMorphism::from_lift(f.source, g.target, &g.lift().dot(&f.lift())).unwrap()
}

/// The set of values of `f` on all elements.
fn image_set(f: &ModMorphism) -> BTreeSet<Element> {
    f.source.space().enumerate().iter().map(|x| f.apply(x)).collect()
}

#[test]
fn hom_space_examples() {
    let r = z4();
    let rr = hom_space(&FgModule::free(r, 1), &FgModule::free(r, 1)).unwrap();
    assert_eq!(rr.rr_rank, 1);
    assert_eq!(rr.enumerate().len(), 4);
    let kr = hom_space(&FgModule::residue(r, 1), &FgModule::free(r, 1)).unwrap();
    assert_eq!(kr.log_size(), 1);
    let kk = hom_space(&FgModule::residue(r, 1), &FgModule::residue(r, 1)).unwrap();
    assert_eq!(kk.log_size(), 1);
    let other = make_ring(RingKind::FpEps, 2).unwrap();
    assert!(matches!(
        hom_space(&FgModule::free(r, 1), &FgModule::free(other, 1)),
        Err(Error::RingMismatch(..))
    ));
}

#[test]
fn hom_from_k_to_r_by_additive_enumeration() {
    // additive maps Z/2 -> Z/4 are determined by the image y of 1 with 2y = 0;
    // each is automatically Z/4-linear
    let r = z4();
    let count = (0..4u32).filter(|&y| r.mul(2, y) == 0).count();
    let hom = hom_space(&FgModule::residue(r, 1), &FgModule::free(r, 1)).unwrap();
    assert_eq!(hom.enumerate().len(), count);
    let images: BTreeSet<u32> = hom.enumerate().iter().map(|f| f.apply(&[1])[0]).collect();
    assert_eq!(images, BTreeSet::from([0, 2]));
}

#[test]
fn compose_examples() {
    for r in local_rings(&[2, 3]) {
        let zero = q_map(r).after(&alpha_map(r));
        assert!(zero.is_zero());
        assert_eq!(zero.source, FgModule::residue(r, 1));
        let aq = alpha_map(r).after(&q_map(r));
        assert_eq!(aq.rr.get(0, 0), r.alpha());
        assert_eq!(aq, compose_by_lift(&alpha_map(r), &q_map(r)));
        let id = ModMorphism::identity(FgModule::free(r, 1));
        assert_eq!(q_map(r).after(&id), q_map(r));
        assert_eq!(id.after(&alpha_map(r)), alpha_map(r));
        assert!(q_map(r).compose(&q_map(r)).is_err());
    }
}

#[test]
fn block_composition_matches_presentation_exhaustively() {
    for r in local_rings(&[2]) {
        let mods = modules(r, 2);
        for a in &mods {
            for b in &mods {
                let fs = hom_space(a, b).unwrap().enumerate();
                for c in &mods {
                    let gs = hom_space(b, c).unwrap().enumerate();
                    for f in &fs {
                        for g in &gs {
                            assert_eq!(g.after(f), compose_by_lift(g, f));
                        }
                    }
                }
            }
        }
    }
}

fn arb_morphism(ring: RingSpec, m: FgModule, n: FgModule) -> impl Strategy<Value = ModMorphism> {
    let s = hom_space(&m, &n).unwrap().space();
    let bounds: Vec<u32> = s.residue.iter().map(|&res| if res { ring.p } else { ring.size() }).collect();
    bounds
        .into_iter()
        .map(|b| 0..b)
        .collect::<Vec<_>>()
        .prop_map(move |v| ModMorphism::from_element(m, n, &v))
}

fn arb_triple() -> impl Strategy<Value = (ModMorphism, ModMorphism, ModMorphism)> {
    (0..2usize, proptest::collection::vec((0..3usize, 0..3usize), 4)).prop_flat_map(|(kind, dims)| {
        let ring = make_ring([RingKind::FpEps, RingKind::ZModP2][kind], 3).unwrap();
        let m: Vec<FgModule> = dims
            .iter()
            .map(|&(a, b)| FgModule { ring, free: a.min(2), residue: b.min(2 - a.min(2)) })
            .collect();
        (arb_morphism(ring, m[0], m[1]), arb_morphism(ring, m[1], m[2]), arb_morphism(ring, m[2], m[3]))
    })
}

proptest! {
    #[test]
    fn random_composition_over_f3((f, g, h) in arb_triple()) {
        prop_assert_eq!(g.after(&f), compose_by_lift(&g, &f));
        prop_assert_eq!(h.after(&g).after(&f), h.after(&g.after(&f)));
    }
}

#[test]
fn lift_equality_is_equality_modulo_relations() {
    let r = z4();
    let m = FgModule { ring: r, free: 1, residue: 1 };
    let all = hom_space(&m, &m).unwrap().enumerate();
    for f in &all {
        for g in &all {
            let diff = f.lift().minus(&g.lift());
            let in_relations = (0..diff.cols).all(|j| m.space().is_zero(&diff.col(j)));
            assert_eq!(f == g, in_relations);
        }
    }
}

/// Injectivity and surjectivity checked on all elements.
fn brute_mono_epi(f: &ModMorphism) -> (bool, bool) {
    let img = image_set(f);
    let n_src = f.source.space().enumerate().len();
    let n_tgt = f.target.space().enumerate().len();
    (img.len() == n_src, img.len() == n_tgt)
}

#[test]
fn mono_and_epi_examples() {
    let r = z4();
    assert!(is_mono(&alpha_map(r)) && !is_epi(&alpha_map(r)));
    assert!(!is_mono(&q_map(r)) && is_epi(&q_map(r)));
    let id = ModMorphism::identity(FgModule::free(r, 1));
    assert!(is_mono(&id) && is_epi(&id));
}

#[test]
fn mono_and_epi_match_enumeration() {
    for r in local_rings(&[2]) {
        let mods = modules(r, 2);
        for a in &mods {
            for b in &mods {
                for f in hom_space(a, b).unwrap().enumerate() {
                    assert_eq!((is_mono(&f), is_epi(&f)), brute_mono_epi(&f), "{f}");
                }
            }
        }
    }
}

#[test]
fn cokernel_examples() {
    for r in local_rings(&[2, 3]) {
        let zk = ModMorphism::zero(FgModule::zero(r), FgModule::residue(r, 1));
        let c = cokernel(&zk).unwrap();
        assert_eq!(c.module, FgModule::residue(r, 1));
        assert!(c.projection.is_identity());

        let c = cokernel(&alpha_map(r)).unwrap();
        assert_eq!(c.module, FgModule::residue(r, 1));
        assert_eq!(c.projection, q_map(r));

        let c = cokernel(&ModMorphism::identity(FgModule::free(r, 1))).unwrap();
        assert_eq!(c.module, FgModule::zero(r));

        assert_eq!(cokernel(&q_map(r)), Err(Error::NotMono));
    }
}

#[test]
fn cokernel_universal_property() {
    for r in local_rings(&[2]) {
        let mods = modules(r, 2);
        let tests: Vec<FgModule> = modules(r, 1);
        for a in &mods {
            for b in &mods {
                for f in hom_space(a, b).unwrap().enumerate() {
                    if !is_mono(&f) {
                        continue;
                    }
                    let c = cokernel(&f).unwrap();
                    let p = &c.projection;
                    assert!(is_epi(p));
                    assert!(p.after(&f).is_zero());
                    assert_eq!(c.module.log_size() + a.log_size(), b.log_size());
                    for t in &tests {
                        for h in hom_space(b, t).unwrap().enumerate() {
                            let g = factor_through(p, &h);
                            assert_eq!(g.is_some(), h.after(&f).is_zero());
                            if let Some(g) = g {
                                assert_eq!(g.after(p), h);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn covers_and_embeddings() {
    for r in local_rings(&[2, 3]) {
        let k = FgModule::residue(r, 1);
        let (f, eps) = free_cover(&k);
        assert_eq!(f, FgModule::free(r, 1));
        assert_eq!(eps, q_map(r));
        let (i, iota) = injective_embed(&k);
        assert_eq!(i, FgModule::free(r, 1));
        assert_eq!(iota, alpha_map(r));
        let one = FgModule::free(r, 1);
        assert!(free_cover(&one).1.is_identity());
        assert!(injective_embed(&one).1.is_identity());
        for m in modules(r, 3) {
            assert!(is_epi(&free_cover(&m).1));
            assert!(is_mono(&injective_embed(&m).1));
        }
        let rk = FgModule { ring: r, free: 1, residue: 1 };
        let (f, eps) = free_cover(&rk);
        assert_eq!(f, FgModule::free(r, 2));
        assert!(eps.rr.get(0, 0) == 1 && eps.rk.get(0, 1) == 1);
    }
}

#[test]
fn maps_from_projectives_lift_along_the_cover() {
    for r in local_rings(&[2]) {
        for n in modules(r, 2) {
            let (_, eps) = free_cover(&n);
            for p in [FgModule::free(r, 1), FgModule::free(r, 2)] {
                for h in hom_space(&p, &n).unwrap().enumerate() {
                    let l = lift_through(&eps, &h).expect("projective source lifts");
                    assert_eq!(eps.after(&l), h);
                }
            }
        }
    }
}

/// Maps `M -> N` that factor as `M -> R^m -> N` for some `m <= 2`.
fn brute_null(m: &FgModule, n: &FgModule) -> BTreeSet<Element> {
    let r = m.ring;
    let mut out = BTreeSet::new();
    for k in 0..=2 {
        let p = FgModule::free(r, k);
        let hs = hom_space(m, &p).unwrap().enumerate();
        let gs = hom_space(&p, n).unwrap().enumerate();
        for h in &hs {
            for g in &gs {
                out.insert(g.after(h).to_element());
            }
        }
    }
    out
}

#[test]
fn stable_hom_matches_brute_force_factorizations() {
    let r = z4();
    let k = FgModule::residue(r, 1);
    let rr = FgModule::free(r, 1);
    let kr = FgModule { ring: r, free: 1, residue: 1 };
    for (m, n, dim) in [(k, k, 1), (rr, k, 0), (kr, k, 1)] {
        let s = stable_hom(&m, &n).unwrap();
        assert_eq!(s.dim, dim);
        let null = brute_null(&m, &n);
        let total = s.hom.enumerate().len();
        assert_eq!(total / null.len(), (r.p as usize).pow(dim));
        for f in s.hom.enumerate() {
            assert_eq!(s.is_null(&f), null.contains(&f.to_element()));
        }
    }
    for r in local_rings(&[2]) {
        for m in modules(r, 2) {
            for n in modules(r, 2) {
                let s = stable_hom(&m, &n).unwrap();
                let null = brute_null(&m, &n);
                for f in s.hom.enumerate() {
                    assert_eq!(s.is_null(&f), null.contains(&f.to_element()), "{f}");
                }
            }
        }
    }
}

#[test]
fn include_residue_examples() {
    let r = z4();
    assert_eq!(include_residue(r, 2), FgModule { ring: r, free: 0, residue: 2 });
    assert!(include_residue(r, 0).is_zero());
    assert_eq!(stable_hom(&include_residue(r, 1), &include_residue(r, 2)).unwrap().dim, 2);
}

#[test]
fn stable_category_is_mod_k() {
    for r in local_rings(&[2, 3]) {
        let k = r.residue_field();
        for m in modules(r, 3) {
            for n in modules(r, 3) {
                let s = stable_hom(&m, &n).unwrap();
                let bb = (m.residue * n.residue) as u32;
                assert_eq!(s.dim, bb, "{m} -> {n}");
                assert_eq!(s.reps.len() as u32, bb);
                // KK-block morphisms map a basis of Hom_k(k^b, k^b') to
                // independent classes
                let sp = s.hom.space();
                let mut gens = s.null.clone();
                let base = sp.log_span(&gens);
                for i in 0..n.residue {
                    for j in 0..m.residue {
                        let mut e = Matrix::zeros(k, n.residue, m.residue);
                        e.set(i, j, 1);
                        let mut f = ModMorphism::zero(m, n);
                        f.kk = e;
                        gens.push(f.to_element());
                    }
                }
                assert_eq!(sp.log_span(&gens) - base, bb);
                for f in s.reps.iter() {
                    assert!(!f.kk.is_zero());
                }
            }
        }
    }
}

#[test]
fn stably_zero_iff_residue_block_vanishes() {
    for r in local_rings(&[2]) {
        for m in modules(r, 2) {
            for n in modules(r, 2) {
                for f in hom_space(&m, &n).unwrap().enumerate() {
                    assert_eq!(is_stably_zero(&f), f.kk.is_zero());
                }
            }
        }
    }
}

#[test]
fn direct_sum_of_morphisms() {
    let r = z4();
    let f = alpha_map(r).direct_sum(&q_map(r));
    assert_eq!(f.source, FgModule { ring: r, free: 1, residue: 1 });
    assert_eq!(f.target, FgModule { ring: r, free: 1, residue: 1 });
    // k (+) R -> R (+) k in normal-form coordinates
    assert_eq!(f.kr.get(0, 0), 1);
    assert_eq!(f.rk.get(0, 0), 1);
    assert!(f.rr.is_zero() && f.kk.is_zero());
}

#[test]
fn pairs_and_projections() {
    for r in local_rings(&[2, 3]) {
        let (a, b, c) = (FgModule::new(r, 1, 1).unwrap(), FgModule::new(r, 0, 2).unwrap(), FgModule::free(r, 2));
        let homs_ab = hom_space(&a, &b).unwrap().basis();
        let homs_ac = hom_space(&a, &c).unwrap().basis();
        for f in &homs_ab {
            for g in &homs_ac {
                let p = ModMorphism::pair(f, g);
                assert_eq!(ModMorphism::proj_first(b, c).after(&p), *f);
                assert_eq!(ModMorphism::proj_second(b, c).after(&p), *g);
            }
        }
        let sum = ModMorphism::copair(&ModMorphism::incl_first(b, c), &ModMorphism::incl_second(b, c));
        assert!(sum.is_identity());
        let f = &homs_ab[0];
        assert_eq!(ModMorphism::pair(f, &ModMorphism::zero(a, c)), ModMorphism::incl_first(b, c).after(f));
    }
}
