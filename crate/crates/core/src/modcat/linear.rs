//! Linear algebra on finite modules of the form `R^a (+) k^b`, with the
//! coordinates in any order.
//!
//! An element is a vector of ring codes; residue coordinates are only
//! meaningful modulo `alpha` and are kept reduced to digits `0..p`. Hom sets
//! between such modules are again of this form, which lets every kernel,
//! image and homotopy computation run through the same solver.

use crate::ringlin::{howell_solve, Matrix, NormalForm, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub ring: RingSpec,
    /// `true` marks a residue (`k`) coordinate, `false` a free (`R`) one.
    pub residue: Vec<bool>,
}

pub type Element = Vec<u32>;

impl Space {
    pub fn new(ring: RingSpec, residue: Vec<bool>) -> Self {
        debug_assert!(!ring.is_field() || residue.iter().all(|r| !r));
        Space { ring, residue }
    }

    pub fn empty(ring: RingSpec) -> Self {
        Space { ring, residue: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.residue.len()
    }

    pub fn n_residue(&self) -> usize {
        self.residue.iter().filter(|&&r| r).count()
    }

    /// log_p of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.residue.iter().map(|&r| if r { 1 } else { self.ring.length() }).sum()
    }

    pub fn concat(ring: RingSpec, parts: &[&Space]) -> Space {
        Space { ring, residue: parts.iter().flat_map(|s| s.residue.iter().copied()).collect() }
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dim()]
    }

    pub fn unit(&self, j: usize) -> Element {
        let mut v = self.zero();
        v[j] = 1;
        v
    }

    pub fn canon(&self, v: &mut [u32]) {
        for (x, &r) in v.iter_mut().zip(&self.residue) {
            if r {
                *x = self.ring.residue(*x);
            }
        }
    }

    pub fn canonical(&self, mut v: Element) -> Element {
        self.canon(&mut v);
        v
    }

    pub fn is_zero(&self, v: &[u32]) -> bool {
        v.iter().zip(&self.residue).all(|(&x, &r)| if r { self.ring.residue(x) == 0 } else { x == 0 })
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Element {
        self.canonical(a.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect())
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Element {
        self.canonical(a.iter().zip(b).map(|(&x, &y)| self.ring.sub(x, y)).collect())
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Element {
        self.canonical(a.iter().map(|&x| self.ring.mul(c, x)).collect())
    }

    /// Columns `alpha * e_r` for each residue coordinate `r`.
    pub fn relation_matrix(&self) -> Matrix {
        let res: Vec<usize> = (0..self.dim()).filter(|&i| self.residue[i]).collect();
        let mut m = Matrix::zeros(self.ring, self.dim(), res.len());
        for (c, &i) in res.iter().enumerate() {
            m.set(i, c, self.ring.alpha());
        }
        m
    }

    fn gens_matrix(&self, gens: &[Element]) -> Matrix {
        let mut m = Matrix::zeros(self.ring, self.dim(), gens.len());
        for (j, g) in gens.iter().enumerate() {
            for i in 0..self.dim() {
                m.set(i, j, g[i]);
            }
        }
        m.hstack(&self.relation_matrix())
    }

    /// log_p of the size of the submodule spanned by `gens`.
    pub fn log_span(&self, gens: &[Element]) -> u32 {
        let m = self.gens_matrix(gens);
        NormalForm::compute(&m).log_span_size(&self.ring) - self.n_residue() as u32
    }

    /// Coefficients `c` with `sum c_i gens_i = v`, if `v` lies in the span.
    pub fn solve_in_span(&self, gens: &[Element], v: &[u32]) -> Option<Vec<u32>> {
        let m = self.gens_matrix(gens);
        let sol = howell_solve(&m, &Matrix::column(self.ring, v)).expect("shapes");
        sol.particular.map(|x| x.col(0)[..gens.len()].to_vec())
    }

    pub fn in_span(&self, gens: &[Element], v: &[u32]) -> bool {
        self.is_zero(v) || self.solve_in_span(gens, v).is_some()
    }

    /// All elements; only for tiny spaces.
    pub fn enumerate(&self) -> Vec<Element> {
        let mut out = vec![vec![]];
        for &r in &self.residue {
            let n = if r { self.ring.p } else { self.ring.size() };
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// An `R`-linear map between spaces, given by a matrix on lifted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub src: Space,
    pub tgt: Space,
    pub mat: Matrix,
}

impl LinMap {
    /// Builds the matrix by evaluating `f` on unit vectors.
    pub fn from_fn(src: Space, tgt: Space, f: impl Fn(&Element) -> Element) -> LinMap {
        let mut mat = Matrix::zeros(src.ring, tgt.dim(), src.dim());
        for j in 0..src.dim() {
            let col = f(&src.unit(j));
            for (i, x) in col.into_iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        LinMap { src, tgt, mat }
    }

    pub fn apply(&self, x: &[u32]) -> Element {
        let y = self.mat.dot(&Matrix::column(self.src.ring, x)).col(0);
        self.tgt.canonical(y)
    }

    fn augmented(&self) -> Matrix {
        self.mat.hstack(&self.tgt.relation_matrix())
    }

    /// Generators of the kernel as a submodule of the source.
    pub fn kernel(&self) -> Vec<Element> {
        let a = self.augmented();
        let k = a.kernel();
        let mut out: Vec<Element> = Vec::new();
        for g in k {
            let v = self.src.canonical(g[..self.src.dim()].to_vec());
            if !self.src.is_zero(&v) && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Some `x` with `f(x) = y`.
    pub fn preimage(&self, y: &[u32]) -> Option<Element> {
        let a = self.augmented();
        let sol = howell_solve(&a, &Matrix::column(self.src.ring, y)).expect("shapes");
        sol.particular.map(|x| self.src.canonical(x.col(0)[..self.src.dim()].to_vec()))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        let images: Vec<Element> = (0..self.src.dim()).map(|j| self.apply(&self.src.unit(j))).collect();
        self.tgt.log_span(&images) == self.tgt.log_size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringlin::{make_ring, RingKind};

    #[test]
    fn span_sizes() {
        let r = make_ring(RingKind::ZModP2, 2).unwrap();
        // R (+) k
        let s = Space::new(r, vec![false, true]);
        assert_eq!(s.log_size(), 3);
        assert_eq!(s.enumerate().len(), 8);
        assert_eq!(s.log_span(&[vec![2, 0]]), 1);
        assert_eq!(s.log_span(&[vec![1, 1]]), 2);
        assert_eq!(s.log_span(&[vec![1, 1], vec![0, 1]]), 3);
        assert!(s.in_span(&[vec![1, 1]], &[2, 0]));
        assert!(!s.in_span(&[vec![1, 1]], &[0, 1]));
    }

    #[test]
    fn kernel_of_multiplication_by_alpha() {
        let r = make_ring(RingKind::FpEps, 3).unwrap();
        let s = Space::new(r, vec![false]);
        let f = LinMap::from_fn(s.clone(), s.clone(), |x| vec![r.mul(r.alpha(), x[0])]);
        let k = f.kernel();
        assert_eq!(s.log_span(&k), 1);
        assert!(!f.is_injective());
        assert!(!f.is_surjective());
        assert_eq!(f.preimage(&[r.alpha()]).map(|x| f.apply(&x)), Some(vec![r.alpha()]));
        assert_eq!(f.preimage(&[1]), None);
    }
}
