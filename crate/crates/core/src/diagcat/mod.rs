//! Diagrams `X_0 -> X_1 -> ... -> X_n` of finitely generated modules, their
//! morphisms, cofibrant replacement and the hom spaces of the homotopy
//! category for levelwise stable equivalences.

pub mod models;

use std::fmt;

use crate::error::{Error, Result};
use crate::modcat::{
    cokernel_of_any, factor_through, free_cover, hom_space, injective_embed, is_mono, stable_hom, Element, FgModule,
    LinMap, ModMorphism, Space,
};
use crate::ringlin::RingSpec;

pub use models::{
    htrivial, interval_diagram, mtilde, ne_lift, ne_step, nontrivial, nu, nu_lift, phi_tilde, se_lift, se_step,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub ring: RingSpec,
    pub objects: Vec<FgModule>,
    /// `maps[i]: X_i -> X_{i+1}`.
    pub maps: Vec<ModMorphism>,
}

impl Diagram {
    pub fn new(ring: RingSpec, objects: Vec<FgModule>, maps: Vec<ModMorphism>) -> Result<Diagram> {
        if objects.is_empty() || maps.len() + 1 != objects.len() {
            return Err(Error::Shape(format!("{} objects with {} maps", objects.len(), maps.len())));
        }
        for o in &objects {
            ring.check_same(&o.ring)?;
        }
        for (i, f) in maps.iter().enumerate() {
            if f.source != objects[i] || f.target != objects[i + 1] {
                return Err(Error::Shape(format!("map {} does not go from X_{i} to X_{}", i + 1, i + 1)));
            }
        }
        Ok(Diagram { ring, objects, maps })
    }

    pub fn zero(ring: RingSpec, n: usize) -> Diagram {
        Diagram::constant(FgModule::zero(ring), n)
    }

    /// `M -> M -> ... -> M` with identities.
    pub fn constant(m: FgModule, n: usize) -> Diagram {
        Diagram { ring: m.ring, objects: vec![m; n + 1], maps: vec![ModMorphism::identity(m); n] }
    }

    pub fn n(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.objects.iter().all(|o| o.is_zero())
    }

    /// Every connecting map is a monomorphism.
    pub fn is_cofibrant(&self) -> bool {
        self.maps.iter().all(is_mono)
    }

    /// The composite `X_i -> X_j`, `i <= j`.
    pub fn transition(&self, i: usize, j: usize) -> ModMorphism {
        let mut f = ModMorphism::identity(self.objects[i]);
        for t in i..j {
            f = self.maps[t].after(&f);
        }
        f
    }

    pub fn direct_sum(&self, o: &Diagram) -> Diagram {
        let objects = self.objects.iter().zip(&o.objects).map(|(a, b)| a.direct_sum(b)).collect();
        let maps = self.maps.iter().zip(&o.maps).map(|(a, b)| a.direct_sum(b)).collect();
        Diagram { ring: self.ring, objects, maps }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.objects.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

/// A levelwise morphism with commuting squares.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagMorphism {
    pub source: Diagram,
    pub target: Diagram,
    pub comps: Vec<ModMorphism>,
}

impl DiagMorphism {
    pub fn new(source: &Diagram, target: &Diagram, comps: Vec<ModMorphism>) -> Result<DiagMorphism> {
        if source.n() != target.n() || comps.len() != source.objects.len() {
            return Err(Error::Shape("diagrams of different length".into()));
        }
        source.ring.check_same(&target.ring)?;
        for (i, h) in comps.iter().enumerate() {
            if h.source != source.objects[i] || h.target != target.objects[i] {
                return Err(Error::Shape(format!("component {i} has the wrong endpoints")));
            }
        }
        for i in 0..source.n() {
            let a = comps[i + 1].after(&source.maps[i]);
            let b = target.maps[i].after(&comps[i]);
            if a != b {
                return Err(Error::Invalid(format!("square {} -> {} does not commute", i, i + 1)));
            }
        }
        Ok(DiagMorphism { source: source.clone(), target: target.clone(), comps })
    }

    pub fn zero(source: &Diagram, target: &Diagram) -> DiagMorphism {
        let comps = source.objects.iter().zip(&target.objects).map(|(a, b)| ModMorphism::zero(*a, *b)).collect();
        DiagMorphism { source: source.clone(), target: target.clone(), comps }
    }

    pub fn identity(x: &Diagram) -> DiagMorphism {
        let comps = x.objects.iter().map(|o| ModMorphism::identity(*o)).collect();
        DiagMorphism { source: x.clone(), target: x.clone(), comps }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &DiagMorphism) -> DiagMorphism {
        assert_eq!(f.target, self.source, "composable diagram morphisms");
        let comps = self.comps.iter().zip(&f.comps).map(|(g, h)| g.after(h)).collect();
        DiagMorphism { source: f.source.clone(), target: self.target.clone(), comps }
    }

    fn zip_with(&self, o: &DiagMorphism, op: impl Fn(&ModMorphism, &ModMorphism) -> ModMorphism) -> DiagMorphism {
        assert_eq!((&self.source, &self.target), (&o.source, &o.target));
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| op(a, b)).collect();
        DiagMorphism { comps, ..self.clone() }
    }

    pub fn plus(&self, o: &DiagMorphism) -> DiagMorphism {
        self.zip_with(o, |a, b| a.plus(b))
    }

    pub fn minus(&self, o: &DiagMorphism) -> DiagMorphism {
        self.zip_with(o, |a, b| a.minus(b))
    }

    pub fn scale(&self, c: u32) -> DiagMorphism {
        DiagMorphism { comps: self.comps.iter().map(|a| a.scale(c)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.comps.iter().all(|c| c.is_identity())
    }

    pub fn direct_sum(&self, o: &DiagMorphism) -> DiagMorphism {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.direct_sum(b)).collect();
        DiagMorphism { source: self.source.direct_sum(&o.source), target: self.target.direct_sum(&o.target), comps }
    }

    pub fn to_element(&self) -> Element {
        self.comps.iter().flat_map(|c| c.to_element()).collect()
    }
}

/// `Hom(X, Y)` as the kernel of the naturality map on `⊕_i Hom(X_i, Y_i)`.
#[derive(Clone, Debug)]
pub struct DiagHom {
    pub source: Diagram,
    pub target: Diagram,
    /// `⊕_i Hom(X_i, Y_i)`.
    pub ambient: Space,
    /// Generators over `R` of the natural transformations.
    pub gens: Vec<Element>,
    blocks: Vec<usize>,
}

impl DiagHom {
    pub fn morphism(&self, v: &[u32]) -> DiagMorphism {
        let mut pos = 0;
        let comps = (0..self.blocks.len())
            .map(|i| {
                let h = ModMorphism::from_element(
                    self.source.objects[i],
                    self.target.objects[i],
                    &v[pos..pos + self.blocks[i]],
                );
                pos += self.blocks[i];
                h
            })
            .collect();
        DiagMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn log_size(&self) -> u32 {
        self.ambient.log_span(&self.gens)
    }

    pub fn combine(&self, coeffs: &[u32]) -> DiagMorphism {
        self.morphism(&combine(&self.ambient, &self.gens, coeffs))
    }
}

pub(crate) fn combine(space: &Space, gens: &[Element], coeffs: &[u32]) -> Element {
    let mut acc = space.zero();
    for (g, &c) in gens.iter().zip(coeffs) {
        acc = space.add(&acc, &space.scale(c, g));
    }
    acc
}

pub fn diag_hom(x: &Diagram, y: &Diagram) -> Result<DiagHom> {
    if x.n() != y.n() {
        return Err(Error::Shape(format!("diagrams of lengths {} and {}", x.n(), y.n())));
    }
    x.ring.check_same(&y.ring)?;
    let levels: Vec<Space> =
        x.objects.iter().zip(&y.objects).map(|(a, b)| hom_space(a, b).map(|h| h.space())).collect::<Result<_>>()?;
    let blocks: Vec<usize> = levels.iter().map(|s| s.dim()).collect();
    let ambient = Space::concat(x.ring, &levels.iter().collect::<Vec<_>>());
    let squares: Vec<Space> = (0..x.n())
        .map(|i| hom_space(&x.objects[i], &y.objects[i + 1]).map(|h| h.space()))
        .collect::<Result<_>>()?;
    let codomain = Space::concat(x.ring, &squares.iter().collect::<Vec<_>>());
    let proto = DiagHom { source: x.clone(), target: y.clone(), ambient: ambient.clone(), gens: vec![], blocks };
    let naturality = LinMap::from_fn(ambient.clone(), codomain, |v| {
        let h = proto.morphism(v);
        (0..x.n())
            .flat_map(|i| h.comps[i + 1].after(&x.maps[i]).minus(&y.maps[i].after(&h.comps[i])).to_element())
            .collect()
    });
    let gens = if naturality.tgt.dim() == 0 {
        (0..ambient.dim()).map(|j| ambient.unit(j)).collect()
    } else {
        naturality.kernel()
    };
    Ok(DiagHom { gens, ..proto })
}

/// A cofibrant diagram with a levelwise stable equivalence onto the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    pub tilde: Diagram,
    pub r: DiagMorphism,
}

/// `X̃_0 = X_0` and `X̃_i = X_i (+) I(X̃_{i-1})` with connecting map
/// `(f_i r_{i-1}, iota)` and `r_i` the projection; cofibrant input is
/// returned unchanged.
pub fn cofibrant_replace(x: &Diagram) -> Replacement {
    if x.is_cofibrant() {
        return Replacement { tilde: x.clone(), r: DiagMorphism::identity(x) };
    }
    let mut objects = vec![x.objects[0]];
    let mut maps = vec![];
    let mut rs = vec![ModMorphism::identity(x.objects[0])];
    for i in 1..=x.n() {
        let prev = objects[i - 1];
        let g = x.maps[i - 1].after(&rs[i - 1]);
        let (inj, iota) = injective_embed(&prev);
        maps.push(ModMorphism::pair(&g, &iota));
        objects.push(x.objects[i].direct_sum(&inj));
        rs.push(ModMorphism::proj_first(x.objects[i], inj));
    }
    let tilde = Diagram { ring: x.ring, objects, maps };
    let r = DiagMorphism { source: tilde.clone(), target: x.clone(), comps: rs };
    Replacement { tilde, r }
}

/// Levelwise free covers `F(Y)_i = R^{gens(Y_i)}` with connecting maps the
/// presentation lifts of those of `Y`, and the cover `eps: F(Y) -> Y`.
pub fn free_cover_diagram(y: &Diagram) -> (Diagram, DiagMorphism) {
    let covers: Vec<(FgModule, ModMorphism)> = y.objects.iter().map(free_cover).collect();
    let objects: Vec<FgModule> = covers.iter().map(|c| c.0).collect();
    let maps = y
        .maps
        .iter()
        .enumerate()
        .map(|(i, g)| ModMorphism::from_lift(objects[i], objects[i + 1], &g.lift()).expect("free source"))
        .collect();
    let f = Diagram { ring: y.ring, objects, maps };
    let eps = DiagMorphism { source: f.clone(), target: y.clone(), comps: covers.into_iter().map(|c| c.1).collect() };
    (f, eps)
}

/// `Ho(X, Y) = Hom(X̃, Y) / ~`, where `f ~ g` iff `g - f = eps ∘ H` for a
/// morphism `H: X̃ -> F(Y)`.
#[derive(Clone, Debug)]
pub struct HoHomSpace {
    pub source: Diagram,
    pub replacement: Replacement,
    pub target: Diagram,
    pub cover: Diagram,
    pub eps: DiagMorphism,
    pub homs: DiagHom,
    /// `Hom(X̃, F(Y))`.
    pub through: DiagHom,
    /// `eps ∘ h` for each generator `h` of `through`.
    pub null: Vec<Element>,
    pub dim: u32,
    /// Representatives of a `k`-basis.
    pub reps: Vec<DiagMorphism>,
}

impl HoHomSpace {
    pub fn tilde(&self) -> &Diagram {
        &self.replacement.tilde
    }

    pub fn is_null(&self, f: &DiagMorphism) -> bool {
        self.homs.ambient.in_span(&self.null, &f.to_element())
    }

    pub fn homotopic(&self, f: &DiagMorphism, g: &DiagMorphism) -> bool {
        self.is_null(&g.minus(f))
    }

    /// `H: X̃ -> F(Y)` with `eps ∘ H = f`.
    pub fn homotopy(&self, f: &DiagMorphism) -> Option<DiagMorphism> {
        let s = &self.homs.ambient;
        if s.is_zero(&f.to_element()) {
            return Some(DiagMorphism::zero(&self.through.source, &self.through.target));
        }
        let c = s.solve_in_span(&self.null, &f.to_element())?;
        Some(self.through.combine(&c))
    }

    /// Coordinates of the class of `f` in the basis `reps`.
    pub fn coords(&self, f: &DiagMorphism) -> Vec<u32> {
        let s = &self.homs.ambient;
        let mut gens: Vec<Element> = self.reps.iter().map(|r| r.to_element()).collect();
        gens.extend(self.null.iter().cloned());
        let c = s.solve_in_span(&gens, &f.to_element()).expect("morphism lies in the hom space");
        let ring = self.source.ring;
        c[..self.reps.len()].iter().map(|&x| ring.residue(x)).collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> DiagMorphism {
        let mut acc = DiagMorphism::zero(self.tilde(), &self.target);
        for (r, &c) in self.reps.iter().zip(coords) {
            acc = acc.plus(&r.scale(c));
        }
        acc
    }
}

pub fn ho_hom(x: &Diagram, y: &Diagram) -> Result<HoHomSpace> {
    ho_hom_with(cofibrant_replace(x), x, y)
}

/// `ho_hom` with a given cofibrant replacement of the source.
pub fn ho_hom_with(replacement: Replacement, x: &Diagram, y: &Diagram) -> Result<HoHomSpace> {
    let tilde = &replacement.tilde;
    let homs = diag_hom(tilde, y)?;
    let (cover, eps) = free_cover_diagram(y);
    let through = diag_hom(tilde, &cover)?;
    let null: Vec<Element> = through.gens.iter().map(|g| eps.after(&through.morphism(g)).to_element()).collect();
    let s = &homs.ambient;
    let dim = homs.log_size() - s.log_span(&null);
    let mut chosen = null.clone();
    let mut reps = vec![];
    let alpha = x.ring.alpha();
    let candidates = homs.gens.iter().flat_map(|g| [g.clone(), s.scale(alpha, g)]);
    for c in candidates {
        if reps.len() as u32 == dim {
            break;
        }
        if !s.in_span(&chosen, &c) {
            chosen.push(c.clone());
            reps.push(homs.morphism(&c));
        }
    }
    if reps.len() as u32 != dim {
        return Err(Error::Invalid(format!("homotopy classes from {x} to {y} do not form a k-vector space")));
    }
    Ok(HoHomSpace { source: x.clone(), replacement, target: y.clone(), cover, eps, homs, through, null, dim, reps })
}

/// A morphism `X̃ -> Ỹ` whose composite with `r_Y` is homotopic to `a`,
/// where `a: X̃ -> Y` lies in `xy`.
pub fn lift_to_replacement(a: &DiagMorphism, xy: &HoHomSpace, y: &Replacement) -> Result<DiagMorphism> {
    let into = diag_hom(xy.tilde(), &y.tilde)?;
    let s = &xy.homs.ambient;
    let mut gens: Vec<Element> = into.gens.iter().map(|g| y.r.after(&into.morphism(g)).to_element()).collect();
    let m = gens.len();
    gens.extend(xy.null.iter().cloned());
    let c = s
        .solve_in_span(&gens, &a.to_element())
        .ok_or_else(|| Error::NoSolution("no lift along the cofibrant replacement".into()))?;
    Ok(into.combine(&c[..m]))
}

/// The composite in the homotopy category of `a ∈ Ho(X, Y)` and
/// `b ∈ Ho(Y, Z)`, as a morphism `X̃ -> Z`.
pub fn ho_compose(b: &DiagMorphism, a: &DiagMorphism, xy: &HoHomSpace, y: &Replacement) -> Result<DiagMorphism> {
    Ok(b.after(&lift_to_replacement(a, xy, y)?))
}

/// Solves `sum c_g T(g) ~ target` in `space`, where `null` spans the
/// null-homotopic morphisms.
fn solve_mod_null(space: &Space, images: &[Element], null: &[Element], target: &[u32]) -> Option<Vec<u32>> {
    let mut gens = images.to_vec();
    gens.extend(null.iter().cloned());
    space.solve_in_span(&gens, target).map(|c| c[..images.len()].to_vec())
}

/// Is the class of `a: X̃ -> Y` an isomorphism in the homotopy category.
pub fn is_ho_iso(a: &DiagMorphism, xy: &HoHomSpace) -> Result<bool> {
    let (x, y) = (&xy.source, &xy.target);
    let xx = ho_hom_with(xy.replacement.clone(), x, x)?;
    let yx = ho_hom(y, x)?;
    let yy = ho_hom_with(yx.replacement.clone(), y, y)?;
    // left inverse: b ∘ lift(a) ~ r_X
    let a_lift = lift_to_replacement(a, xy, &yx.replacement)?;
    let left: Vec<Element> = yx.homs.gens.iter().map(|g| yx.homs.morphism(g).after(&a_lift).to_element()).collect();
    if solve_mod_null(&xx.homs.ambient, &left, &xx.null, &xy.replacement.r.to_element()).is_none() {
        return Ok(false);
    }
    // right inverse: a ∘ lift(c) ~ r_Y
    let mut right = vec![];
    for g in &yx.homs.gens {
        let c = yx.homs.morphism(g);
        right.push(a.after(&lift_to_replacement(&c, &yx, &xy.replacement)?).to_element());
    }
    Ok(solve_mod_null(&yy.homs.ambient, &right, &yy.null, &yx.replacement.r.to_element()).is_some())
}

/// Searches the classes of `Ho(X, Y)` for an isomorphism; fails when the
/// space has more than `p^cap` elements.
pub fn find_ho_iso(x: &Diagram, y: &Diagram, cap: u32) -> Result<Option<DiagMorphism>> {
    let xy = ho_hom(x, y)?;
    let yx = ho_hom(y, x)?;
    if xy.dim != yx.dim && (xy.dim == 0 || yx.dim == 0) {
        return Ok(None);
    }
    if xy.dim > cap {
        return Err(Error::Invalid(format!("Ho({x}, {y}) has dimension {} > cap {cap}", xy.dim)));
    }
    let p = x.ring.p;
    let d = xy.dim as usize;
    let mut coords = vec![0u32; d];
    loop {
        let a = xy.from_coords(&coords);
        if is_ho_iso(&a, &xy)? {
            return Ok(Some(a));
        }
        let mut t = 0;
        loop {
            if t == d {
                return Ok(None);
            }
            coords[t] += 1;
            if coords[t] < p {
                break;
            }
            coords[t] = 0;
            t += 1;
        }
    }
}

/// The subspace of `Ho(X, Y)` of classes that vanish levelwise in the
/// stable category; returns its dimension.
pub fn levelwise_null_dim(xy: &HoHomSpace) -> Result<u32> {
    let s = &xy.homs.ambient;
    let tilde = xy.tilde();
    let mut level_null: Vec<Element> = vec![];
    let mut offset = 0;
    for (a, b) in tilde.objects.iter().zip(&xy.target.objects) {
        let st = stable_hom(a, b)?;
        let width = st.hom.space().dim();
        for g in &st.null {
            let mut v = s.zero();
            v[offset..offset + width].copy_from_slice(g);
            level_null.push(v);
        }
        offset += width;
    }
    let inter = intersect(s, &xy.homs.gens, &level_null);
    let mut with_null = inter;
    with_null.extend(xy.null.iter().cloned());
    Ok(s.log_span(&with_null) - s.log_span(&xy.null))
}

/// Generators of `span(a) ∩ span(b)`.
pub fn intersect(s: &Space, a: &[Element], b: &[Element]) -> Vec<Element> {
    let coeffs = Space::new(s.ring, vec![false; a.len() + b.len()]);
    let map = LinMap::from_fn(coeffs, s.clone(), |c| {
        let x = combine(s, a, &c[..a.len()]);
        let y = combine(s, b, &c[a.len()..]);
        s.sub(&x, &y)
    });
    map.kernel().iter().map(|c| combine(s, a, &c[..a.len()])).filter(|v| !s.is_zero(v)).collect()
}

/// A contractible levelwise free diagram `C(X)` with a cofibration `X -> C(X)`.
pub fn cone(x: &Diagram) -> (Diagram, DiagMorphism) {
    let n = x.n();
    let (inj, iota) = injective_embed(&x.objects[n]);
    let c = Diagram::constant(inj, n);
    let comps = (0..=n).map(|i| iota.after(&x.transition(i, n))).collect();
    let m = DiagMorphism { source: x.clone(), target: c.clone(), comps };
    (c, m)
}

/// `ΣX`, the levelwise cokernel of `X -> C(X)`.
pub fn suspend(x: &Diagram) -> Result<Diagram> {
    if !x.is_cofibrant() {
        return Err(Error::NotMono);
    }
    let (c, m) = cone(x);
    let cokers: Vec<_> = m.comps.iter().map(cokernel_of_any).collect();
    let objects: Vec<FgModule> = cokers.iter().map(|q| q.module).collect();
    let mut maps = vec![];
    for i in 0..x.n() {
        let h = cokers[i + 1].projection.after(&c.maps[i]);
        let g = factor_through(&cokers[i].projection, &h)
            .ok_or_else(|| Error::Invalid("cone map does not descend to cokernels".into()))?;
        maps.push(g);
    }
    Diagram::new(x.ring, objects, maps)
}

/// `Σf: ΣX -> ΣY`, induced on cokernels by an extension `C(X) -> C(Y)` of
/// `f` along the cone inclusions.
pub fn suspend_morphism(f: &DiagMorphism) -> Result<DiagMorphism> {
    let (x, y) = (&f.source, &f.target);
    if !x.is_cofibrant() || !y.is_cofibrant() {
        return Err(Error::NotMono);
    }
    let n = x.n();
    let (_, mx) = cone(x);
    let (_, my) = cone(y);
    let (_, ix) = injective_embed(&x.objects[n]);
    let (_, iy) = injective_embed(&y.objects[n]);
    let h = factor_through(&ix, &iy.after(&f.comps[n]))
        .ok_or_else(|| Error::NoSolution("no extension of f to the cones".into()))?;
    let sx = suspend(x)?;
    let sy = suspend(y)?;
    let mut comps = vec![];
    for i in 0..=n {
        let qx = cokernel_of_any(&mx.comps[i]).projection;
        let qy = cokernel_of_any(&my.comps[i]).projection;
        let g = factor_through(&qx, &qy.after(&h))
            .ok_or_else(|| Error::Invalid("cone map does not descend to cokernels".into()))?;
        comps.push(g);
    }
    DiagMorphism::new(&sx, &sy, comps)
}

/// Is the identity of `X` null in the homotopy category.
pub fn is_contractible(x: &Diagram) -> Result<bool> {
    let xx = ho_hom(x, x)?;
    Ok(xx.is_null(&xx.replacement.r))
}

#[cfg(test)]
mod tests;
