//! The `derivk` command line: runs checks, prints tables or JSON lines and
//! maps the outcome to an exit code (0 pass, 1 a check failed, 2 usage).

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::meshcat::{build_dn, build_mesh, check_simplicial_identities, simplicial_family, MeshCategory};
use crate::quiverrep::{decompose, ext1, hom_dim, is_isomorphic, IntervalModule, QuiverRep};
use crate::ringlin::RingSpec;
use crate::scat::{
    b_family_check, independence_check, k0_check, ring_name, usize_table, verify_iso1, verify_iso2, verify_remark,
    Certificate,
};

pub const MAX_SIMPLICIAL_LEVEL: usize = 6;
pub const MAX_ISO_LEVEL: usize = 3;
pub const MAX_TABLE_LEVEL: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    FpEps,
    Zp2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    JsonLines,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Simplicial identities of D_•(k) on objects and morphisms.
    CheckSimplicial,
    /// Hom dimensions of the mesh category against interval modules.
    HomTable,
    /// Dimensions of the bimodule D_n against Ext^1 of interval modules.
    ExtTable,
    /// The comparison functor is an isomorphism onto its image.
    VerifyIso1,
    /// The comparison functor commutes with faces and degeneracies.
    VerifyIso2,
    /// Tables over F_p[e]/e^2 and Z/p^2 agree.
    Independence,
    /// K_0 presentations on both sides.
    K0,
    /// The squares (k -> R) -> (R -> k) and their suspensions.
    Remark,
    /// B_•(k) against filtered vector spaces.
    BFamily,
    /// Random representations split into intervals and reassemble.
    Decompose,
    /// Every check at default parameters.
    All,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "derivk", version, about = "Exact checks for the mesh category D(k) and diagram homotopy categories")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Ring family; both when omitted.
    #[arg(long, global = true, value_enum)]
    pub ring: Option<RingArg>,
    /// Diagram length n (objects X_0..X_n).
    #[arg(long, global = true)]
    pub level: Option<usize>,
    #[arg(long = "max-level", global = true)]
    pub max_level: Option<usize>,
    /// Rank cap for K_0 and bound on Ho-isomorphism searches.
    #[arg(long, global = true, default_value_t = 3)]
    pub cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
}

/// One unit of work.
#[derive(Clone, Debug)]
enum Job {
    Simplicial { p: u32, max_level: usize },
    HomTable { p: u32, n: usize },
    ExtTable { p: u32, n: usize },
    Iso1 { ring: RingSpec, n: usize },
    Iso2 { ring: RingSpec, n: usize, cap: u32 },
    Independence { p: u32, n: usize, cap: u32 },
    K0 { ring: RingSpec, cap: usize },
    Remark { ring: RingSpec, cap: u32 },
    BFamily { p: u32, n: usize },
    Decompose { p: u32, n: usize },
}

fn field(p: u32) -> Result<RingSpec> {
    RingSpec::field(p)
}

fn rings(cfg: &RunConfig) -> Result<Vec<RingSpec>> {
    Ok(match cfg.ring {
        Some(RingArg::FpEps) => vec![RingSpec::fp_eps(cfg.p)?],
        Some(RingArg::Zp2) => vec![RingSpec::zp2(cfg.p)?],
        None => vec![RingSpec::fp_eps(cfg.p)?, RingSpec::zp2(cfg.p)?],
    })
}

fn bounded(name: &str, v: usize, max: usize) -> std::result::Result<usize, String> {
    if v > max {
        Err(format!("{name} {v} is beyond the supported bound {max}"))
    } else {
        Ok(v)
    }
}

/// Expands the configuration into jobs; errors are usage errors.
fn jobs(cfg: &RunConfig) -> std::result::Result<Vec<Job>, String> {
    let p = cfg.p;
    RingSpec::field(p).map_err(|e| e.to_string())?;
    let level = |default: usize, max: usize| bounded("level", cfg.level.or(cfg.max_level).unwrap_or(default), max);
    let ring_list = || rings(cfg).map_err(|e| e.to_string());
    let cap = cfg.cap;
    if cap < 2 {
        return Err(format!("cap {cap} < 2"));
    }
    Ok(match cfg.command {
        Command::CheckSimplicial => {
            let m = bounded("max level", cfg.max_level.or(cfg.level).unwrap_or(3), MAX_SIMPLICIAL_LEVEL)?;
            vec![Job::Simplicial { p, max_level: m }]
        }
        Command::HomTable => vec![Job::HomTable { p, n: level(3, MAX_TABLE_LEVEL)? }],
        Command::ExtTable => vec![Job::ExtTable { p, n: level(3, MAX_TABLE_LEVEL)? }],
        Command::VerifyIso1 => {
            let n = level(2, MAX_ISO_LEVEL)?;
            ring_list()?.into_iter().map(|ring| Job::Iso1 { ring, n }).collect()
        }
        Command::VerifyIso2 => {
            let n = level(2, MAX_ISO_LEVEL)?;
            ring_list()?.into_iter().map(|ring| Job::Iso2 { ring, n, cap }).collect()
        }
        Command::Independence => vec![Job::Independence { p, n: level(2, MAX_ISO_LEVEL)?, cap }],
        Command::K0 => ring_list()?.into_iter().map(|ring| Job::K0 { ring, cap: cap as usize }).collect(),
        Command::Remark => ring_list()?.into_iter().map(|ring| Job::Remark { ring, cap }).collect(),
        Command::BFamily => vec![Job::BFamily { p, n: level(3, MAX_TABLE_LEVEL)? }],
        Command::Decompose => vec![Job::Decompose { p, n: level(4, MAX_TABLE_LEVEL)? }],
        Command::All => {
            let mut v = vec![
                Job::Simplicial { p, max_level: 3 },
                Job::HomTable { p, n: 3 },
                Job::ExtTable { p, n: 3 },
                Job::Independence { p, n: 2, cap },
                Job::BFamily { p, n: 3 },
                Job::Decompose { p, n: 4 },
            ];
            for ring in ring_list()? {
                v.push(Job::Iso1 { ring, n: 2 });
                v.push(Job::Iso2 { ring, n: 2, cap });
                v.push(Job::K0 { ring, cap: cap as usize });
                v.push(Job::Remark { ring, cap });
            }
            v
        }
    })
}

fn simplicial(p: u32, max_level: usize) -> Result<Certificate> {
    let k = field(p)?;
    let mut cert = Certificate::new("check-simplicial", ring_name(k), p, Some(max_level));
    let mor = max_level.min(4);
    let fam = simplicial_family(k, max_level.max(mor + 2));
    let r = check_simplicial_identities(&fam, max_level, mor);
    cert.table(
        "checks",
        vec![vec![r.object_checks as i64, r.morphism_checks as i64, r.functoriality_checks as i64]],
    );
    cert.notes.push(format!("objects through level {max_level}, morphisms through level {mor}"));
    for f in r.failures {
        cert.fail(f);
    }
    Ok(cert)
}

fn interval_reps(k: RingSpec, n: usize) -> Vec<(IntervalModule, QuiverRep)> {
    IntervalModule::all(n).into_iter().map(|m| (m, QuiverRep::interval(k, n, m))).collect()
}

fn hom_table(p: u32, n: usize) -> Result<Certificate> {
    let k = field(p)?;
    let mut cert = Certificate::new("hom-table", ring_name(k), p, Some(n));
    let mesh: MeshCategory = build_mesh(n, k);
    let reps = interval_reps(k, n);
    let mut table = vec![];
    for (a, xa) in &reps {
        let mut row = vec![];
        for (b, xb) in &reps {
            let d = mesh.cat.dim(mesh.idx(a.i, a.j), mesh.idx(b.i, b.j));
            let want = hom_dim(xa, xb)?;
            cert.require(d == want, || format!("hom(({},{}), ({},{})) is {d}, representations give {want}", a.i, a.j, b.i, b.j));
            row.push(d);
        }
        table.push(row);
    }
    cert.table("mesh_hom_dims", usize_table(&table));
    Ok(cert)
}

fn ext_table(p: u32, n: usize) -> Result<Certificate> {
    let k = field(p)?;
    let mut cert = Certificate::new("ext-table", ring_name(k), p, Some(n));
    let mesh = build_mesh(n, k);
    let d = build_dn(&mesh);
    let reps = interval_reps(k, n);
    let mut table = vec![];
    for (a, xa) in &reps {
        let mut row = vec![];
        for (b, xb) in &reps {
            let dim = d.dim(mesh.idx(a.i, a.j), mesh.idx(b.i, b.j));
            let want = ext1(xa, xb)?;
            cert.require(dim == want, || format!("D(({},{}), ({},{})) is {dim}, Ext^1 is {want}", a.i, a.j, b.i, b.j));
            row.push(dim);
        }
        table.push(row);
    }
    cert.table("bimodule_dims", usize_table(&table));
    Ok(cert)
}

/// Krull-Schmidt round trip on 200 random representations of each length up to `n`.
fn decompose_check(p: u32, n: usize) -> Result<Certificate> {
    let k = field(p)?;
    let mut cert = Certificate::new("decompose", ring_name(k), p, Some(n));
    let mut rows = vec![];
    for len in 0..=n {
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p) * 1000 + len as u64);
        let mut ok = 0;
        for trial in 0..200 {
            let x = QuiverRep::random(k, len, 3, &mut rng);
            let parts = decompose(&x);
            if is_isomorphic(&QuiverRep::sum_of_intervals(k, len, &parts), &x)? {
                ok += 1;
            } else {
                cert.fail(format!("length {len}, trial {trial}: summands do not reassemble"));
            }
        }
        rows.push(vec![len as i64, 200, ok]);
    }
    cert.table("round_trips", rows);
    Ok(cert)
}

fn run_job(job: &Job) -> Result<Certificate> {
    match *job {
        Job::Simplicial { p, max_level } => simplicial(p, max_level),
        Job::HomTable { p, n } => hom_table(p, n),
        Job::ExtTable { p, n } => ext_table(p, n),
        Job::Iso1 { ring, n } => verify_iso1(ring, n),
        Job::Iso2 { ring, n, cap } => verify_iso2(ring, n, cap),
        Job::Independence { p, n, cap } => independence_check(p, n, cap),
        Job::K0 { ring, cap } => k0_check(ring, cap),
        Job::Remark { ring, cap } => verify_remark(ring, cap),
        Job::BFamily { p, n } => b_family_check(field(p)?, n),
        Job::Decompose { p, n } => decompose_check(p, n),
    }
}

fn sort_key(c: &Certificate) -> (String, String, u32, Option<usize>, Option<u32>) {
    (c.check.clone(), c.ring.clone(), c.p, c.n, c.cap)
}

/// Runs the jobs, `parallel` at a time, and returns the certificates sorted
/// by check and parameters.
fn run_jobs(jobs: &[Job], parallel: usize) -> Result<Vec<Certificate>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let results: Vec<Result<Certificate>> = pool.install(|| jobs.par_iter().map(run_job).collect());
    let mut certs = results.into_iter().collect::<Result<Vec<_>>>()?;
    certs.sort_by_key(sort_key);
    Ok(certs)
}

pub fn render_table(c: &Certificate) -> String {
    let mut s = String::new();
    let n = c.n.map_or("-".to_string(), |n| n.to_string());
    let cap = c.cap.map_or("-".to_string(), |n| n.to_string());
    let status = serde_json::to_value(c.status).expect("status").as_str().unwrap_or_default().to_string();
    let _ = writeln!(s, "{} ring={} p={} n={} cap={}: {}", c.check, c.ring, c.p, n, cap, status);
    for (name, rows) in &c.tables {
        let _ = writeln!(s, "  {name}:");
        for r in rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>2}")).collect();
            let _ = writeln!(s, "    {}", cells.join(" "));
        }
    }
    for w in &c.witnesses {
        let _ = writeln!(s, "  witness: {w}");
    }
    for note in &c.notes {
        let _ = writeln!(s, "  note: {note}");
    }
    s
}

pub fn render(certs: &[Certificate], format: Format) -> String {
    match format {
        Format::JsonLines => certs.iter().map(|c| c.to_json() + "\n").collect(),
        Format::Table => certs.iter().map(render_table).collect::<Vec<_>>().join("\n"),
    }
}

/// Parses `args` (program name first), runs and returns the exit code with
/// the rendered output. Usage errors give exit code 2 and the message.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let jobs = match jobs(&cfg) {
        Ok(j) => j,
        Err(msg) => return (2, format!("error: {msg}\n")),
    };
    let certs = match run_jobs(&jobs, cfg.parallel) {
        Ok(c) => c,
        Err(e) => return (1, format!("error: {e}\n")),
    };
    let out = render(&certs, cfg.format);
    let code = if certs.iter().all(|c| c.passed()) { 0 } else { 1 };
    if let Some(path) = &cfg.output {
        if let Err(e) = std::fs::write(path, &out) {
            return (2, format!("error: cannot write {}: {e}\n", path.display()));
        }
        let summary = format!("{} certificates written to {}\n", certs.len(), path.display());
        return (code, summary);
    }
    (code, out)
}
