//! Two-sided elimination over the chain rings.
//!
//! Every matrix `A` over `R` is brought to `U A V = diag(d_0, .., d_{r-1}, 0, ..)`
//! with `U`, `V` invertible and each `d_i` either `1` or `alpha`. Pivots are
//! taken from the leftmost column holding a unit (lowest row first); only when
//! no unit remains is an `alpha`-multiple chosen, by the same scan order.
//! Since every remaining entry then has valuation at least that of the pivot,
//! the pivot row and column clear exactly.

use super::{Matrix, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub u: Matrix,
    pub v: Matrix,
    /// Pivots `1` or `alpha`, in order.
    pub diag: Vec<u32>,
}

impl NormalForm {
    pub fn compute(a: &Matrix) -> NormalForm {
        let ring = a.ring;
        let (m, n) = a.shape();
        let mut w = a.clone();
        let mut u = Matrix::identity(ring, m);
        let mut v = Matrix::identity(ring, n);
        let mut diag = Vec::new();
        let mut k = 0;
        while k < m.min(n) {
            let Some((pi, pj)) = find_pivot(&w, k) else { break };
            w.swap_rows(k, pi);
            u.swap_rows(k, pi);
            w.swap_cols(k, pj);
            v.swap_cols(k, pj);
            // normalize pivot to 1 or alpha
            let e = w.get(k, k);
            let unit_part = if ring.is_unit(e) { e } else { ring.alpha_digit(e) };
            let inv = ring.inv(unit_part).expect("unit part");
            w.scale_row(k, inv);
            u.scale_row(k, inv);
            let piv = w.get(k, k);
            for i in 0..m {
                if i != k && w.get(i, k) != 0 {
                    let c = ring.div_exact(w.get(i, k), piv).expect("pivot divides column");
                    let c = ring.neg(c);
                    w.add_row_multiple(i, k, c);
                    u.add_row_multiple(i, k, c);
                }
            }
            for j in 0..n {
                if j != k && w.get(k, j) != 0 {
                    let c = ring.div_exact(w.get(k, j), piv).expect("pivot divides row");
                    let c = ring.neg(c);
                    w.add_col_multiple(j, k, c);
                    v.add_col_multiple(j, k, c);
                }
            }
            diag.push(piv);
            k += 1;
        }
        NormalForm { u, v, diag }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// log_p of the size of the column span.
    pub fn log_span_size(&self, ring: &RingSpec) -> u32 {
        self.diag.iter().map(|&d| if ring.is_unit(d) { ring.length() } else { 1 }).sum()
    }
}

fn find_pivot(w: &Matrix, k: usize) -> Option<(usize, usize)> {
    let ring = w.ring;
    for want_unit in [true, false] {
        for j in k..w.cols {
            for i in k..w.rows {
                let x = w.get(i, j);
                if x != 0 && ring.is_unit(x) == want_unit {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Solutions of `A X = B`: one particular solution (if any) and generators of
/// the right kernel `{x : A x = 0}` as an `R`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Matrix>,
    pub kernel: Vec<Vec<u32>>,
}

pub fn howell_solve(a: &Matrix, b: &Matrix) -> Result<Solution> {
    a.ring.check_same(&b.ring)?;
    if a.rows != b.rows {
        return Err(Error::Shape(format!(
            "A has {} rows but B has {}",
            a.rows, b.rows
        )));
    }
    let nf = NormalForm::compute(a);
    Ok(solve_with(&nf, a, b))
}

pub(crate) fn solve_with(nf: &NormalForm, a: &Matrix, b: &Matrix) -> Solution {
    let ring = a.ring;
    let (m, n) = a.shape();
    let c = nf.u.dot(b);
    let r = nf.rank();
    let mut y = Matrix::zeros(ring, n, b.cols);
    let mut ok = true;
    'cols: for col in 0..b.cols {
        for i in 0..m {
            let ci = c.get(i, col);
            if i < r {
                match ring.div_exact(ci, nf.diag[i]) {
                    Some(x) => y.set(i, col, x),
                    None => {
                        ok = false;
                        break 'cols;
                    }
                }
            } else if ci != 0 {
                ok = false;
                break 'cols;
            }
        }
    }
    let particular = ok.then(|| nf.v.dot(&y));
    let mut kernel = Vec::new();
    for i in 0..n {
        let gen = if i < r {
            if ring.is_unit(nf.diag[i]) {
                continue;
            }
            ring.alpha()
        } else {
            1
        };
        kernel.push(nf.v.col(i).iter().map(|&x| ring.mul(gen, x)).collect());
    }
    Solution { particular, kernel }
}

impl Matrix {
    pub fn rank(&self) -> usize {
        NormalForm::compute(self).rank()
    }

    /// Kernel generators; over a field these form a basis.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let nf = NormalForm::compute(self);
        solve_with(&nf, self, &Matrix::zeros(self.ring, self.rows, 0)).kernel
    }

    /// Square matrix invertibility.
    pub fn is_invertible(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let nf = NormalForm::compute(self);
        nf.rank() == self.rows && nf.diag.iter().all(|&d| self.ring.is_unit(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringlin::{make_ring, RingKind};
    use proptest::prelude::*;

    fn z4() -> RingSpec {
        make_ring(RingKind::ZModP2, 2).unwrap()
    }

    fn all_vectors(ring: RingSpec, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = vec![];
            for v in &out {
                for x in ring.elements() {
                    let mut w = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    fn apply(a: &Matrix, x: &[u32]) -> Vec<u32> {
        a.dot(&Matrix::column(a.ring, x)).col(0)
    }

    /// R-span of the generators, by enumeration of all coefficient vectors.
    fn span(ring: RingSpec, n: usize, gens: &[Vec<u32>]) -> std::collections::BTreeSet<Vec<u32>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; n]);
        for g in gens {
            let cur: Vec<Vec<u32>> = set.iter().cloned().collect();
            for v in cur {
                for c in ring.elements() {
                    set.insert(v.iter().zip(g).map(|(&a, &b)| ring.add(a, ring.mul(c, b))).collect());
                }
            }
        }
        set
    }

    fn check_against_enumeration(a: &Matrix, b: &[u32]) {
        let ring = a.ring;
        let n = a.cols;
        let sol = howell_solve(a, &Matrix::column(ring, b)).unwrap();
        let brute: Vec<Vec<u32>> =
            all_vectors(ring, n).into_iter().filter(|x| apply(a, x) == b).collect();
        let zero = vec![0; a.rows];
        let brute_kernel: std::collections::BTreeSet<Vec<u32>> =
            all_vectors(ring, n).into_iter().filter(|x| apply(a, x) == zero).collect();
        for k in &sol.kernel {
            assert_eq!(apply(a, k), zero);
        }
        assert_eq!(span(ring, n, &sol.kernel), brute_kernel, "kernel of {a}");
        match &sol.particular {
            Some(x) => {
                assert_eq!(apply(a, &x.col(0)), b);
            }
            None => assert!(brute.is_empty(), "missed solution of {a} x = {b:?}"),
        }
    }

    #[test]
    fn spec_examples_over_z4() {
        let r = z4();
        let s = howell_solve(&Matrix::from_rows(r, &[vec![2]]), &Matrix::from_rows(r, &[vec![2]])).unwrap();
        assert_eq!(s.particular.unwrap().get(0, 0), 1);
        assert_eq!(s.kernel, vec![vec![2]]);
        let s = howell_solve(&Matrix::from_rows(r, &[vec![1]]), &Matrix::from_rows(r, &[vec![3]])).unwrap();
        assert_eq!(s.particular.unwrap().get(0, 0), 3);
        assert!(s.kernel.is_empty());
        let s = howell_solve(&Matrix::from_rows(r, &[vec![2]]), &Matrix::from_rows(r, &[vec![1]])).unwrap();
        assert!(s.particular.is_none());
    }

    #[test]
    fn errors() {
        let r = z4();
        let f = make_ring(RingKind::FpEps, 2).unwrap();
        assert!(matches!(
            howell_solve(&Matrix::zeros(r, 2, 2), &Matrix::zeros(r, 3, 1)),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            howell_solve(&Matrix::zeros(r, 2, 2), &Matrix::zeros(f, 2, 1)),
            Err(Error::RingMismatch(..))
        ));
    }

    #[test]
    fn exhaustive_two_by_two() {
        for kind in [RingKind::ZModP2, RingKind::FpEps] {
            let ring = make_ring(kind, 2).unwrap();
            for entries in all_vectors(ring, 4) {
                let a = Matrix::from_rows(ring, &[entries[..2].to_vec(), entries[2..].to_vec()]);
                for b in all_vectors(ring, 2) {
                    check_against_enumeration(&a, &b);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]
        #[test]
        fn random_up_to_three_by_three(
            eps in any::<bool>(),
            rows in 1usize..=3,
            cols in 1usize..=3,
            seed in proptest::collection::vec(0u32..4, 12),
        ) {
            let ring = make_ring(if eps { RingKind::FpEps } else { RingKind::ZModP2 }, 2).unwrap();
            let mut a = Matrix::zeros(ring, rows, cols);
            for i in 0..rows { for j in 0..cols { a.set(i, j, seed[i * 3 + j]); } }
            let b: Vec<u32> = (0..rows).map(|i| seed[9 + i]).collect();
            check_against_enumeration(&a, &b);
        }
    }

    #[test]
    fn deterministic() {
        let r = z4();
        let a = Matrix::from_rows(r, &[vec![2, 1, 3], vec![0, 2, 2], vec![2, 3, 1]]);
        let b = Matrix::from_rows(r, &[vec![1], vec![2], vec![3]]);
        assert_eq!(howell_solve(&a, &b).unwrap(), howell_solve(&a, &b).unwrap());
    }

    #[test]
    fn normal_form_diagonalizes() {
        let r = make_ring(RingKind::FpEps, 3).unwrap();
        let a = Matrix::from_rows(r, &[vec![3, 6, 1], vec![0, 3, 4], vec![3, 0, 5]]);
        let nf = NormalForm::compute(&a);
        let d = nf.u.dot(&a).dot(&nf.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j && i < nf.rank() { nf.diag[i] } else { 0 };
                assert_eq!(d.get(i, j), expect);
            }
        }
        assert!(nf.u.is_invertible() && nf.v.is_invertible());
    }
}
