use std::fmt;

use super::RingSpec;
use crate::error::{Error, Result};

/// Dense matrix of canonical scalar codes over one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar_diag(ring: RingSpec, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(ring: RingSpec, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % ring.size());
            }
        }
        m
    }

    pub fn column(ring: RingSpec, v: &[u32]) -> Self {
        let mut m = Self::zeros(ring, v.len(), 1);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, 0, x % ring.size());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        self.ring.check_same(&o.ring)?;
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if b != 0 {
                        let v = r.add(out.get(i, j), r.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplication that panics on shape errors; for internally consistent data.
    pub fn dot(&self, o: &Matrix) -> Matrix {
        self.mul(o).expect("matrix shapes")
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.ring.check_same(&o.ring)?;
        if self.shape() != o.shape() {
            return Err(Error::Shape(format!("cannot add {:?} and {:?}", self.shape(), o.shape())));
        }
        let r = self.ring;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| r.add(a, b)).collect();
        Ok(Matrix { ring: r, rows: self.rows, cols: self.cols, data })
    }

    pub fn plus(&self, o: &Matrix) -> Matrix {
        self.add(o).expect("matrix shapes")
    }

    pub fn neg(&self) -> Matrix {
        let r = self.ring;
        Matrix { data: self.data.iter().map(|&a| r.neg(a)).collect(), ..self.clone() }
    }

    pub fn minus(&self, o: &Matrix) -> Matrix {
        self.plus(&o.neg())
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let r = self.ring;
        Matrix { data: self.data.iter().map(|&a| r.mul(c, a)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise residue map into the residue field.
    pub fn residue(&self) -> Matrix {
        let r = self.ring;
        Matrix {
            ring: r.residue_field(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| r.residue(a)).collect(),
        }
    }

    /// Entrywise `alpha`-digit, as a matrix over the residue field.
    pub fn alpha_digits(&self) -> Matrix {
        let r = self.ring;
        Matrix {
            ring: r.residue_field(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| r.alpha_digit(a)).collect(),
        }
    }

    /// Reinterpret a residue-field matrix over `ring` using digit lifts `0..p`.
    pub fn lift_to(&self, ring: RingSpec) -> Matrix {
        debug_assert!(self.ring.is_field() && self.ring.p == ring.p);
        Matrix { ring, rows: self.rows, cols: self.cols, data: self.data.clone() }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zeros(self.ring, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j));
            }
        }
        m
    }

    /// Paste `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.ring, self.rows, self.cols + o.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, o);
        m
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut m = Matrix::zeros(self.ring, self.rows + o.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, o);
        m
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: u32) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        for j in 0..self.cols {
            let v = r.add(self.get(dst, j), r.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: u32) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        for i in 0..self.rows {
            let v = r.add(self.get(i, dst), r.mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: u32) {
        let r = self.ring;
        for j in 0..self.cols {
            let v = r.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    /// Row-major nested vectors of codes.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.ring.scalar(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringlin::{make_ring, RingKind};
    use proptest::prelude::*;

    fn arb_matrix(ring: RingSpec, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0..ring.size(), r * c).prop_map(move |v| {
            let rows: Vec<Vec<u32>> = v.chunks(c.max(1)).take(r).map(|ch| ch.to_vec()).collect();
            if c == 0 {
                Matrix::zeros(ring, r, 0)
            } else {
                Matrix::from_rows(ring, &rows)
            }
        })
    }

    fn ring_strategy() -> impl Strategy<Value = RingSpec> {
        (prop_oneof![Just(2u32), Just(3u32)], 0..3usize).prop_map(|(p, k)| {
            let kind = [RingKind::FieldFp, RingKind::FpEps, RingKind::ZModP2][k];
            make_ring(kind, p).unwrap()
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_distributive(
            (a, b, c, d) in ring_strategy().prop_flat_map(|r| (
                arb_matrix(r, 2, 3), arb_matrix(r, 3, 2), arb_matrix(r, 2, 3), arb_matrix(r, 3, 3)
            ))
        ) {
            prop_assert_eq!(a.dot(&b).dot(&a), a.dot(&b.dot(&a)));
            prop_assert_eq!(b.dot(&a.plus(&c)), b.dot(&a).plus(&b.dot(&c)));
            prop_assert_eq!(a.plus(&c).dot(&d), a.dot(&d).plus(&c.dot(&d)));
        }
    }

    #[test]
    fn shape_and_ring_errors() {
        let z4 = make_ring(RingKind::ZModP2, 2).unwrap();
        let f2 = make_ring(RingKind::FieldFp, 2).unwrap();
        let a = Matrix::zeros(z4, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Shape(_))));
        assert!(matches!(a.mul(&Matrix::zeros(f2, 3, 1)), Err(Error::RingMismatch(..))));
    }
}
