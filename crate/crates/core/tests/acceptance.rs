//! Acceptance checks, one printed line per criterion. Every comparison is
//! exact; the only tolerances are the wall-clock limits below.

use std::time::{Duration, Instant};

use derivk_core::meshcat::{
    build_dn, build_mesh, check_simplicial_identities, dn_predicate, mesh_hom_predicate, simplicial_family,
};
use derivk_core::modcat::{stable_hom, FgModule};
use derivk_core::quiverrep::{decompose, ext1, hom_dim, is_isomorphic, IntervalModule, QuiverRep};
use derivk_core::ringlin::RingSpec;
use derivk_core::scat::{independence_check, k0_check, verify_iso1, verify_iso2, verify_remark};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SIMPLICIAL_LIMIT: Duration = Duration::from_secs(60);
const ISO1_LIMIT: Duration = Duration::from_secs(300);
const SEARCH_CAP: u32 = 4;

fn field(p: u32) -> RingSpec {
    RingSpec::field(p).unwrap()
}

fn local_rings() -> Vec<RingSpec> {
    let mut v = vec![];
    for p in [2, 3] {
        v.push(RingSpec::fp_eps(p).unwrap());
        v.push(RingSpec::zp2(p).unwrap());
    }
    v
}

fn intervals(n: usize) -> Vec<(usize, usize)> {
    IntervalModule::all(n).into_iter().map(|m| (m.i, m.j)).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok_detail }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn simplicial_identities() -> Outcome {
    let start = Instant::now();
    let mut failures = vec![];
    let mut checks = 0;
    for p in [2, 3] {
        let fam = simplicial_family(field(p), 6);
        let r = check_simplicial_identities(&fam, 5, 4);
        checks += r.object_checks + r.morphism_checks + r.functoriality_checks;
        failures.extend(r.failures.into_iter().map(|f| format!("F{p}: {f}")));
    }
    let t = start.elapsed();
    if t > SIMPLICIAL_LIMIT {
        failures.push(format!("took {t:?}"));
    }
    outcome(failures, format!("{checks} identity and functor checks in {t:?}"))
}

fn mesh_hom_table() -> Outcome {
    let mut failures = vec![];
    for n in 0..=5 {
        let k = field(2);
        let mesh = build_mesh(n, k);
        for a in intervals(n) {
            for b in intervals(n) {
                let d = mesh.cat.dim(mesh.idx(a.0, a.1), mesh.idx(b.0, b.1));
                let ra = QuiverRep::interval(k, n, IntervalModule::new(a.0, a.1));
                let rb = QuiverRep::interval(k, n, IntervalModule::new(b.0, b.1));
                let reps = hom_dim(&ra, &rb).unwrap();
                if d != mesh_hom_predicate(a, b) || d != reps {
                    failures.push(format!("n={n} {a:?}->{b:?}: {d}, predicate {}, reps {reps}", mesh_hom_predicate(a, b)));
                }
            }
        }
    }
    outcome(failures, "n <= 5, predicate and representation homs agree".into())
}

fn bimodule_ext_table() -> Outcome {
    let mut failures = vec![];
    for p in [2, 3] {
        let k = field(p);
        for n in 0..=4 {
            let mesh = build_mesh(n, k);
            let d = build_dn(&mesh);
            for a in intervals(n) {
                for b in intervals(n) {
                    let dim = d.dim(mesh.idx(a.0, a.1), mesh.idx(b.0, b.1));
                    let ra = QuiverRep::interval(k, n, IntervalModule::new(a.0, a.1));
                    let rb = QuiverRep::interval(k, n, IntervalModule::new(b.0, b.1));
                    let e = ext1(&ra, &rb).unwrap();
                    if dim != e || dim != dn_predicate(a, b) {
                        failures.push(format!("F{p} n={n} {a:?}->{b:?}: {dim} vs ext {e}"));
                    }
                }
            }
        }
    }
    outcome(failures, "n <= 4 over F2 and F3".into())
}

fn comparison_isomorphism() -> Outcome {
    let start = Instant::now();
    let mut failures = vec![];
    for ring in local_rings() {
        for n in 1..=2 {
            let c = verify_iso1(ring, n).unwrap();
            if !c.passed() {
                failures.push(format!("{ring} n={n}: {:?}", c.witnesses));
            }
        }
    }
    let t = start.elapsed();
    if t > ISO1_LIMIT {
        failures.push(format!("took {t:?}"));
    }
    outcome(failures, format!("four rings, n in {{1, 2}}, {t:?}"))
}

fn ring_independence() -> Outcome {
    let mut failures = vec![];
    for p in [2, 3] {
        for n in 0..=2 {
            let c = independence_check(p, n, SEARCH_CAP).unwrap();
            if !c.passed() {
                failures.push(format!("p={p} n={n}: {:?}", c.witnesses));
            }
        }
    }
    outcome(failures, "tables identical for p in {2, 3}, n <= 2".into())
}

fn stable_category_is_mod_k() -> Outcome {
    let mut failures = vec![];
    let mut pairs = 0;
    for ring in local_rings() {
        let mods: Vec<FgModule> = (0..=3)
            .flat_map(|a| (0..=3 - a).map(move |b| FgModule::new(ring, a, b).unwrap()))
            .collect();
        let k = ring.residue_field();
        for m in &mods {
            for n in &mods {
                pairs += 1;
                let s = stable_hom(m, n).unwrap().dim as usize;
                // Hom_k(k^b, k^b') between the residue parts
                let rm = QuiverRep::new(k, vec![m.residue], vec![]).unwrap();
                let rn = QuiverRep::new(k, vec![n.residue], vec![]).unwrap();
                let want = hom_dim(&rm, &rn).unwrap();
                if s != want {
                    failures.push(format!("{ring}: {m} -> {n}: {s} vs {want}"));
                }
            }
        }
    }
    outcome(failures, format!("{pairs} module pairs of rank <= 3"))
}

fn k0_comparison() -> Outcome {
    let mut failures = vec![];
    let mut notes = vec![];
    for ring in local_rings() {
        let c = k0_check(ring, 4).unwrap();
        if !c.passed() {
            failures.push(format!("{ring}: {:?}", c.witnesses));
        }
        notes.push(format!("{ring}: {}", c.notes.first().cloned().unwrap_or_default()));
    }
    outcome(failures, format!("caps 2..4 stable and isomorphic; {}", notes.join(", ")))
}

fn remark() -> Outcome {
    let mut failures = vec![];
    for ring in [RingSpec::zp2(2).unwrap(), RingSpec::fp_eps(2).unwrap()] {
        let c = verify_remark(ring, SEARCH_CAP).unwrap();
        if !c.passed() {
            failures.push(format!("{ring}: {}", c.witnesses.last().cloned().unwrap_or_default()));
        }
    }
    outcome(failures, "squares nonzero, sum null, suspension identified".into())
}

fn krull_schmidt() -> Outcome {
    let mut failures = vec![];
    let mut total = 0;
    for p in [2, 3] {
        let k = field(p);
        for n in 0..=4 {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p) * 31 + n as u64);
            for trial in 0..200 {
                let x = QuiverRep::random(k, n, 3, &mut rng);
                let parts = decompose(&x);
                total += 1;
                if !is_isomorphic(&QuiverRep::sum_of_intervals(k, n, &parts), &x).unwrap() {
                    failures.push(format!("F{p} n={n} trial {trial}"));
                }
            }
        }
    }
    outcome(failures, format!("{total} of {total} round trips"))
}

fn face_zero_resolution(simplicial: &Outcome) -> Outcome {
    let mut failures = vec![];
    if !simplicial.pass {
        failures.push("simplicial identities fail".into());
    }
    let mut witness = String::new();
    for ring in local_rings() {
        for n in 0..=2 {
            let c = verify_iso2(ring, n, SEARCH_CAP).unwrap();
            if !c.passed() {
                failures.push(format!("{ring} n={n}: {:?}", c.witnesses));
            }
            if n >= 1 {
                match c.notes.iter().find(|s| s.contains("displayed d0")) {
                    Some(s) => witness = s.clone(),
                    None => failures.push(format!("{ring} n={n}: no displayed-formula witness")),
                }
            }
        }
    }
    outcome(failures, witness)
}

#[test]
fn acceptance_criteria() {
    let c1 = simplicial_identities();
    let c10 = face_zero_resolution(&c1);
    let results = vec![
        ("1 simplicial identities", c1),
        ("2 mesh hom table", mesh_hom_table()),
        ("3 bimodule = Ext^1", bimodule_ext_table()),
        ("4 comparison isomorphism", comparison_isomorphism()),
        ("5 ring independence", ring_independence()),
        ("6 stable category = mod k", stable_category_is_mod_k()),
        ("7 K_0 comparison", k0_comparison()),
        ("8 remark", remark()),
        ("9 Krull-Schmidt round trip", krull_schmidt()),
        ("10 d0 resolution", c10),
    ];
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.1.pass).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
