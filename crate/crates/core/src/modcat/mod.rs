//! Finitely generated modules `R^a (+) k^b` and their morphisms, with the
//! Waldhausen structure (cofibrations = monomorphisms) and the stable category.
//!
//! Every morphism also has a lift to a matrix over `R` between the
//! presentations `R^{a+b} / (0, .., 0, alpha, .., alpha)`; the lift is the
//! reference against which the block arithmetic is tested.

pub mod linear;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ringlin::{Matrix, NormalForm, RingSpec};
pub use linear::{Element, LinMap, Space};

/// The module `R^free (+) k^residue`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FgModule {
    pub ring: RingSpec,
    pub free: usize,
    pub residue: usize,
}

impl FgModule {
    pub fn new(ring: RingSpec, free: usize, residue: usize) -> Result<Self> {
        if ring.is_field() && residue > 0 {
            return Err(Error::Invalid(format!("{ring} has no residue summands distinct from R")));
        }
        Ok(FgModule { ring, free, residue })
    }

    pub fn zero(ring: RingSpec) -> Self {
        FgModule { ring, free: 0, residue: 0 }
    }

    pub fn free(ring: RingSpec, n: usize) -> Self {
        FgModule { ring, free: n, residue: 0 }
    }

    pub fn residue(ring: RingSpec, n: usize) -> Self {
        FgModule { ring, free: 0, residue: n }
    }

    pub fn gens(&self) -> usize {
        self.free + self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.gens() == 0
    }

    pub fn is_projective(&self) -> bool {
        self.residue == 0
    }

    /// log_p of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.free as u32 * self.ring.length() + self.residue as u32
    }

    /// Elements: free coordinates first, then residue coordinates.
    pub fn space(&self) -> Space {
        let mut r = vec![false; self.free];
        r.extend(std::iter::repeat_n(true, self.residue));
        Space::new(self.ring, r)
    }

    pub fn direct_sum(&self, o: &FgModule) -> FgModule {
        FgModule { ring: self.ring, free: self.free + o.free, residue: self.residue + o.residue }
    }

    /// Relation columns of the presentation.
    pub fn relation_matrix(&self) -> Matrix {
        self.space().relation_matrix()
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.free, self.residue) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "R^{a}"),
            (0, b) => write!(f, "k^{b}"),
            (a, b) => write!(f, "R^{a}+k^{b}"),
        }
    }
}

/// `rr` is over `R`; the other blocks are over `k`. `kr = c` stands for the
/// map `k -> R` sending `x` to `alpha * c * x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMorphism {
    pub source: FgModule,
    pub target: FgModule,
    pub rr: Matrix,
    pub rk: Matrix,
    pub kr: Matrix,
    pub kk: Matrix,
}

fn check_ring(a: &FgModule, b: &FgModule) -> Result<()> {
    a.ring.check_same(&b.ring)
}

impl ModMorphism {
    pub fn zero(source: FgModule, target: FgModule) -> Self {
        let r = source.ring;
        let k = r.residue_field();
        ModMorphism {
            source,
            target,
            rr: Matrix::zeros(r, target.free, source.free),
            rk: Matrix::zeros(k, target.residue, source.free),
            kr: Matrix::zeros(k, target.free, source.residue),
            kk: Matrix::zeros(k, target.residue, source.residue),
        }
    }

    pub fn identity(m: FgModule) -> Self {
        let mut f = Self::zero(m, m);
        f.rr = Matrix::identity(m.ring, m.free);
        f.kk = Matrix::identity(m.ring.residue_field(), m.residue);
        f
    }

    pub fn from_blocks(
        source: FgModule,
        target: FgModule,
        rr: Matrix,
        rk: Matrix,
        kr: Matrix,
        kk: Matrix,
    ) -> Result<Self> {
        check_ring(&source, &target)?;
        let r = source.ring;
        let k = r.residue_field();
        let want = [
            (&rr, r, target.free, source.free, "RR"),
            (&rk, k, target.residue, source.free, "RK"),
            (&kr, k, target.free, source.residue, "KR"),
            (&kk, k, target.residue, source.residue, "KK"),
        ];
        for (m, ring, rows, cols, name) in want {
            m.ring.check_same(&ring)?;
            if m.shape() != (rows, cols) {
                return Err(Error::Shape(format!(
                    "{name} block is {:?}, expected {:?}",
                    m.shape(),
                    (rows, cols)
                )));
            }
        }
        Ok(ModMorphism { source, target, rr, rk, kr, kk })
    }

    /// The lift `[[RR, alpha KR], [RK, KK]]` on presentations.
    pub fn lift(&self) -> Matrix {
        let r = self.source.ring;
        let mut l = Matrix::zeros(r, self.target.gens(), self.source.gens());
        let (a, a2) = (self.source.free, self.target.free);
        l.paste(0, 0, &self.rr);
        l.paste(0, a, &self.kr.lift_to(r).scale(r.alpha()));
        l.paste(a2, 0, &self.rk.lift_to(r));
        l.paste(a2, a, &self.kk.lift_to(r));
        l
    }

    /// Reads a matrix on presentations back as a morphism; it must send
    /// relations to relations.
    pub fn from_lift(source: FgModule, target: FgModule, l: &Matrix) -> Result<Self> {
        check_ring(&source, &target)?;
        if l.shape() != (target.gens(), source.gens()) {
            return Err(Error::Shape(format!("lift is {:?}", l.shape())));
        }
        let (a, a2) = (source.free, target.free);
        let (n, n2) = (source.gens(), target.gens());
        let upper_right = l.submatrix(0, a2, a, n);
        if !upper_right.residue().is_zero() {
            return Err(Error::Invalid("matrix does not preserve relations".into()));
        }
        Ok(ModMorphism {
            source,
            target,
            rr: l.submatrix(0, a2, 0, a),
            rk: l.submatrix(a2, n2, 0, a).residue(),
            kr: upper_right.alpha_digits(),
            kk: l.submatrix(a2, n2, a, n).residue(),
        })
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ModMorphism) -> Result<ModMorphism> {
        if f.target != self.source {
            return Err(Error::Shape(format!("cannot compose {} -> {} after {} -> {}",
                self.source, self.target, f.source, f.target)));
        }
        let r = f.source.ring;
        let g = self;
        // the k -> R -> k composite through alpha vanishes, while R -> k -> R
        // survives as alpha times the lifted product
        let rr = g.rr.dot(&f.rr).plus(&g.kr.dot(&f.rk).lift_to(r).scale(r.alpha()));
        let kr = g.rr.residue().dot(&f.kr).plus(&g.kr.dot(&f.kk));
        let rk = g.rk.dot(&f.rr.residue()).plus(&g.kk.dot(&f.rk));
        let kk = g.kk.dot(&f.kk);
        Ok(ModMorphism { source: f.source, target: g.target, rr, rk, kr, kk })
    }

    /// `self ∘ f`, panicking on mismatched endpoints.
    pub fn after(&self, f: &ModMorphism) -> ModMorphism {
        self.compose(f).expect("composable morphisms")
    }

    pub fn plus(&self, o: &ModMorphism) -> ModMorphism {
        assert_eq!((self.source, self.target), (o.source, o.target));
        ModMorphism {
            rr: self.rr.plus(&o.rr),
            rk: self.rk.plus(&o.rk),
            kr: self.kr.plus(&o.kr),
            kk: self.kk.plus(&o.kk),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> ModMorphism {
        ModMorphism {
            rr: self.rr.neg(),
            rk: self.rk.neg(),
            kr: self.kr.neg(),
            kk: self.kk.neg(),
            ..self.clone()
        }
    }

    pub fn minus(&self, o: &ModMorphism) -> ModMorphism {
        self.plus(&o.neg())
    }

    /// Multiplication by a ring element.
    pub fn scale(&self, c: u32) -> ModMorphism {
        let r = self.source.ring;
        let lifted = self.lift().scale(c);
        ModMorphism::from_lift(self.source, self.target, &lifted).unwrap_or_else(|_| {
            unreachable!("scaling by {} preserves relations", r.scalar(c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rr.is_zero() && self.rk.is_zero() && self.kr.is_zero() && self.kk.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == ModMorphism::identity(self.source)
    }

    pub fn apply(&self, x: &[u32]) -> Element {
        LinMap { src: self.source.space(), tgt: self.target.space(), mat: self.lift() }.apply(x)
    }

    pub fn as_linmap(&self) -> LinMap {
        LinMap { src: self.source.space(), tgt: self.target.space(), mat: self.lift() }
    }

    /// Blockwise direct sum `self (+) o`.
    pub fn direct_sum(&self, o: &ModMorphism) -> ModMorphism {
        let src = self.source.direct_sum(&o.source);
        let tgt = self.target.direct_sum(&o.target);
        let r = src.ring;
        let mut l = Matrix::zeros(r, tgt.gens(), src.gens());
        let (ls, lo) = (self.lift(), o.lift());
        // reorder: free parts first, then residue parts
        let src_pos = interleave(self.source, o.source);
        let tgt_pos = interleave(self.target, o.target);
        for i in 0..ls.rows {
            for j in 0..ls.cols {
                l.set(tgt_pos.0[i], src_pos.0[j], ls.get(i, j));
            }
        }
        for i in 0..lo.rows {
            for j in 0..lo.cols {
                l.set(tgt_pos.1[i], src_pos.1[j], lo.get(i, j));
            }
        }
        ModMorphism::from_lift(src, tgt, &l).expect("direct sum of morphisms")
    }

    /// `(f, g): A -> B (+) C`.
    pub fn pair(f: &ModMorphism, g: &ModMorphism) -> ModMorphism {
        assert_eq!(f.source, g.source);
        let tgt = f.target.direct_sum(&g.target);
        let mut l = Matrix::zeros(tgt.ring, tgt.gens(), f.source.gens());
        let (pf, pg) = interleave(f.target, g.target);
        for (lift, pos) in [(f.lift(), pf), (g.lift(), pg)] {
            for i in 0..lift.rows {
                for j in 0..lift.cols {
                    l.set(pos[i], j, lift.get(i, j));
                }
            }
        }
        ModMorphism::from_lift(f.source, tgt, &l).expect("pair of morphisms")
    }

    /// `[f g]: A (+) B -> C`.
    pub fn copair(f: &ModMorphism, g: &ModMorphism) -> ModMorphism {
        assert_eq!(f.target, g.target);
        let src = f.source.direct_sum(&g.source);
        let mut l = Matrix::zeros(src.ring, f.target.gens(), src.gens());
        let (pf, pg) = interleave(f.source, g.source);
        for (lift, pos) in [(f.lift(), pf), (g.lift(), pg)] {
            for i in 0..lift.rows {
                for j in 0..lift.cols {
                    l.set(i, pos[j], lift.get(i, j));
                }
            }
        }
        ModMorphism::from_lift(src, f.target, &l).expect("copair of morphisms")
    }

    /// Projection `A (+) B -> A`.
    pub fn proj_first(a: FgModule, b: FgModule) -> ModMorphism {
        ModMorphism::copair(&ModMorphism::identity(a), &ModMorphism::zero(b, a))
    }

    /// Projection `A (+) B -> B`.
    pub fn proj_second(a: FgModule, b: FgModule) -> ModMorphism {
        ModMorphism::copair(&ModMorphism::zero(a, b), &ModMorphism::identity(b))
    }

    /// Inclusion `A -> A (+) B`.
    pub fn incl_first(a: FgModule, b: FgModule) -> ModMorphism {
        ModMorphism::pair(&ModMorphism::identity(a), &ModMorphism::zero(a, b))
    }

    /// Inclusion `B -> A (+) B`.
    pub fn incl_second(a: FgModule, b: FgModule) -> ModMorphism {
        ModMorphism::pair(&ModMorphism::zero(b, a), &ModMorphism::identity(b))
    }

    /// Coordinates in `hom_space(source, target)`.
    pub fn to_element(&self) -> Element {
        let mut v = self.rr.entries().to_vec();
        v.extend_from_slice(self.rk.entries());
        v.extend_from_slice(self.kr.entries());
        v.extend_from_slice(self.kk.entries());
        v
    }

    pub fn from_element(source: FgModule, target: FgModule, v: &[u32]) -> ModMorphism {
        let r = source.ring;
        let k = r.residue_field();
        let (a, b, a2, b2) = (source.free, source.residue, target.free, target.residue);
        let mut pos = 0;
        let mut take = |ring: RingSpec, rows: usize, cols: usize| {
            let mut m = Matrix::zeros(ring, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, v[pos] % ring.size());
                    pos += 1;
                }
            }
            m
        };
        let rr = take(r, a2, a);
        let rk = take(k, b2, a);
        let kr = take(k, a2, b);
        let kk = take(k, b2, b);
        ModMorphism { source, target, rr, rk, kr, kk }
    }
}

/// Positions of the two summands' coordinates inside the direct sum.
fn interleave(m: FgModule, n: FgModule) -> (Vec<usize>, Vec<usize>) {
    let a = m.free + n.free;
    let first = (0..m.free).chain((0..m.residue).map(|i| a + i)).collect();
    let second =
        (m.free..a).chain((0..n.residue).map(|i| a + m.residue + i)).collect();
    (first, second)
}

impl fmt::Display for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}", self.source, self.target, self.lift())
    }
}

/// `Hom_R(M, N)` as a space of block coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSpace {
    #[serde(skip)]
    pub source: FgModule,
    #[serde(skip)]
    pub target: FgModule,
    /// `R`-rank of the free block.
    pub rr_rank: usize,
    pub rk_dim: usize,
    pub kr_dim: usize,
    pub kk_dim: usize,
}

impl HomSpace {
    pub fn space(&self) -> Space {
        let n = self.rr_rank;
        let m = self.rk_dim + self.kr_dim + self.kk_dim;
        let mut r = vec![false; n];
        r.extend(std::iter::repeat_n(true, m));
        Space::new(self.source.ring, r)
    }

    /// log_p of `|Hom(M, N)|`.
    pub fn log_size(&self) -> u32 {
        self.space().log_size()
    }

    /// Coordinate unit morphisms; they generate the hom set over `R`.
    pub fn basis(&self) -> Vec<ModMorphism> {
        let s = self.space();
        (0..s.dim()).map(|j| ModMorphism::from_element(self.source, self.target, &s.unit(j))).collect()
    }

    pub fn enumerate(&self) -> Vec<ModMorphism> {
        self.space()
            .enumerate()
            .into_iter()
            .map(|v| ModMorphism::from_element(self.source, self.target, &v))
            .collect()
    }
}

pub fn hom_space(m: &FgModule, n: &FgModule) -> Result<HomSpace> {
    check_ring(m, n)?;
    Ok(HomSpace {
        source: *m,
        target: *n,
        rr_rank: n.free * m.free,
        rk_dim: n.residue * m.free,
        kr_dim: n.free * m.residue,
        kk_dim: n.residue * m.residue,
    })
}

pub fn is_mono(f: &ModMorphism) -> bool {
    f.as_linmap().is_injective()
}

pub fn is_epi(f: &ModMorphism) -> bool {
    f.as_linmap().is_surjective()
}

/// Is `f` an isomorphism.
pub fn is_iso(f: &ModMorphism) -> bool {
    f.source.log_size() == f.target.log_size() && is_mono(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub module: FgModule,
    pub projection: ModMorphism,
}

pub fn cokernel(f: &ModMorphism) -> Result<Cokernel> {
    if !is_mono(f) {
        return Err(Error::NotMono);
    }
    Ok(cokernel_of_any(f))
}

/// Cokernel of an arbitrary morphism, in normal form with a deterministic
/// projection.
pub fn cokernel_of_any(f: &ModMorphism) -> Cokernel {
    let n = f.target;
    let ring = n.ring;
    let c = f.lift().hstack(&n.relation_matrix());
    let nf = NormalForm::compute(&c);
    let r = nf.rank();
    let mut free_rows = Vec::new();
    let mut res_rows = Vec::new();
    for i in 0..n.gens() {
        if i >= r {
            free_rows.push(i);
        } else if !ring.is_unit(nf.diag[i]) {
            res_rows.push(i);
        }
    }
    let q = FgModule { ring, free: free_rows.len(), residue: res_rows.len() };
    let mut p = Matrix::zeros(ring, q.gens(), n.gens());
    for (t, &i) in free_rows.iter().chain(&res_rows).enumerate() {
        for j in 0..n.gens() {
            p.set(t, j, nf.u.get(i, j));
        }
    }
    let projection = ModMorphism::from_lift(n, q, &p).expect("normal form rows preserve relations");
    Cokernel { module: q, projection }
}

/// `R^{a+b} -> M`, identity on the free part and `q` on the residue part.
pub fn free_cover(m: &FgModule) -> (FgModule, ModMorphism) {
    let f = FgModule::free(m.ring, m.gens());
    let eps = ModMorphism::from_lift(f, *m, &Matrix::identity(m.ring, m.gens())).expect("cover");
    (f, eps)
}

/// `M -> R^{a+b}`, identity on the free part and `alpha` on the residue part.
pub fn injective_embed(m: &FgModule) -> (FgModule, ModMorphism) {
    let i = FgModule::free(m.ring, m.gens());
    let mut l = Matrix::identity(m.ring, m.gens());
    for t in m.free..m.gens() {
        l.set(t, t, m.ring.alpha());
    }
    let iota = ModMorphism::from_lift(*m, i, &l).expect("embedding");
    (i, iota)
}

/// `Hom(M, N)` modulo the maps factoring through a projective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableHom {
    pub hom: HomSpace,
    /// Generators of the maps that factor through the free cover of `N`.
    pub null: Vec<Element>,
    pub dim: u32,
    /// One representative per basis vector of the quotient.
    pub reps: Vec<ModMorphism>,
}

impl StableHom {
    pub fn is_null(&self, f: &ModMorphism) -> bool {
        self.hom.space().in_span(&self.null, &f.to_element())
    }
}

pub fn stable_hom(m: &FgModule, n: &FgModule) -> Result<StableHom> {
    let hom = hom_space(m, n)?;
    let (cover, eps) = free_cover(n);
    let through = hom_space(m, &cover)?;
    let null: Vec<Element> = through.basis().iter().map(|g| eps.after(g).to_element()).collect();
    let s = hom.space();
    let dim = s.log_size() - s.log_span(&null);
    let mut chosen = null.clone();
    let mut reps = Vec::new();
    let mut candidates = Vec::new();
    for j in 0..s.dim() {
        candidates.push(s.unit(j));
        if !s.residue[j] {
            candidates.push(s.scale(m.ring.alpha(), &s.unit(j)));
        }
    }
    for c in candidates {
        if reps.len() as u32 == dim {
            break;
        }
        if !s.in_span(&chosen, &c) {
            chosen.push(c.clone());
            reps.push(ModMorphism::from_element(*m, *n, &c));
        }
    }
    Ok(StableHom { hom, null, dim, reps })
}

/// Does `f` factor through a projective module.
pub fn is_stably_zero(f: &ModMorphism) -> bool {
    stable_hom(&f.source, &f.target).expect("same ring").is_null(f)
}

/// Is `f` an isomorphism in the stable category.
pub fn is_stable_equivalence(f: &ModMorphism) -> bool {
    f.kk.is_invertible()
}

/// The `k`-vector space `k^b` viewed as an `R`-module.
pub fn include_residue(ring: RingSpec, b: usize) -> FgModule {
    FgModule::residue(ring, b)
}

/// A `k`-linear map viewed as a map of `R`-modules between residue modules.
pub fn include_residue_map(ring: RingSpec, m: &Matrix) -> ModMorphism {
    let mut f = ModMorphism::zero(FgModule::residue(ring, m.cols), FgModule::residue(ring, m.rows));
    f.kk = m.clone();
    f
}

/// The linear map `Hom(B, C) -> Hom(A, C)`, `g ↦ g ∘ f`.
pub fn precompose_map(f: &ModMorphism, c: &FgModule) -> LinMap {
    let src = hom_space(&f.target, c).expect("same ring");
    let tgt = hom_space(&f.source, c).expect("same ring");
    let b = f.target;
    LinMap::from_fn(src.space(), tgt.space(), |v| {
        ModMorphism::from_element(b, *c, v).after(f).to_element()
    })
}

/// The linear map `Hom(C, A) -> Hom(C, B)`, `g ↦ f ∘ g`.
pub fn postcompose_map(f: &ModMorphism, c: &FgModule) -> LinMap {
    let src = hom_space(c, &f.source).expect("same ring");
    let tgt = hom_space(c, &f.target).expect("same ring");
    let a = f.source;
    LinMap::from_fn(src.space(), tgt.space(), |v| {
        f.after(&ModMorphism::from_element(*c, a, v)).to_element()
    })
}

/// Some `g` with `g ∘ p = h`, for `p: A -> B` and `h: A -> C`.
pub fn factor_through(p: &ModMorphism, h: &ModMorphism) -> Option<ModMorphism> {
    let map = precompose_map(p, &h.target);
    map.preimage(&h.to_element()).map(|v| ModMorphism::from_element(p.target, h.target, &v))
}

/// Some `g` with `i ∘ g = h`, for `i: B -> C` and `h: A -> C`.
pub fn lift_through(i: &ModMorphism, h: &ModMorphism) -> Option<ModMorphism> {
    let map = postcompose_map(i, &h.source);
    map.preimage(&h.to_element()).map(|v| ModMorphism::from_element(h.source, i.source, &v))
}

#[cfg(test)]
mod tests;
