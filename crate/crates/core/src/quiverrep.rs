//! Representations of the linear quiver `0 -> 1 -> .. -> n` over `F_p`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ringlin::{Matrix, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverRep {
    pub field: RingSpec,
    pub n: usize,
    pub dims: Vec<usize>,
    /// `maps[i-1]: V_{i-1} -> V_i` for `i = 1..=n`.
    pub maps: Vec<Matrix>,
}

/// The interval module `M_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntervalModule {
    pub i: usize,
    pub j: usize,
}

impl IntervalModule {
    pub fn new(i: usize, j: usize) -> Self {
        IntervalModule { i, j }
    }

    pub fn all(n: usize) -> Vec<IntervalModule> {
        let mut v = vec![];
        for i in 0..=n {
            for j in i..=n {
                v.push(IntervalModule { i, j });
            }
        }
        v
    }
}

/// Levelwise matrices `h_i: X_i -> Y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    pub maps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn after(&self, f: &RepMorphism) -> RepMorphism {
        RepMorphism { maps: self.maps.iter().zip(&f.maps).map(|(g, f)| g.dot(f)).collect() }
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_invertible())
    }
}

impl QuiverRep {
    pub fn new(field: RingSpec, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::Invalid(format!("{field} is not a field")));
        }
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} dims but {} maps", dims.len(), maps.len())));
        }
        for (i, m) in maps.iter().enumerate() {
            m.ring.check_same(&field)?;
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Shape(format!("map {} is {:?}", i + 1, m.shape())));
            }
        }
        Ok(QuiverRep { field, n: dims.len() - 1, dims, maps })
    }

    pub fn zero(field: RingSpec, n: usize) -> Self {
        QuiverRep {
            field,
            n,
            dims: vec![0; n + 1],
            maps: (0..n).map(|_| Matrix::zeros(field, 0, 0)).collect(),
        }
    }

    pub fn interval(field: RingSpec, n: usize, m: IntervalModule) -> Self {
        let dims: Vec<usize> = (0..=n).map(|t| usize::from(m.i <= t && t <= m.j)).collect();
        let maps = (1..=n)
            .map(|t| {
                let mut a = Matrix::zeros(field, dims[t], dims[t - 1]);
                if dims[t] == 1 && dims[t - 1] == 1 {
                    a.set(0, 0, 1);
                }
                a
            })
            .collect();
        QuiverRep { field, n, dims, maps }
    }

    pub fn direct_sum(&self, o: &QuiverRep) -> QuiverRep {
        assert_eq!(self.n, o.n);
        let dims: Vec<usize> = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = (0..self.n)
            .map(|t| {
                let mut m = Matrix::zeros(self.field, dims[t + 1], dims[t]);
                m.paste(0, 0, &self.maps[t]);
                m.paste(self.dims[t + 1], self.dims[t], &o.maps[t]);
                m
            })
            .collect();
        QuiverRep { field: self.field, n: self.n, dims, maps }
    }

    pub fn sum_of_intervals(field: RingSpec, n: usize, parts: &[IntervalModule]) -> QuiverRep {
        parts.iter().fold(QuiverRep::zero(field, n), |acc, &m| acc.direct_sum(&QuiverRep::interval(field, n, m)))
    }

    pub fn random<R: Rng>(field: RingSpec, n: usize, max_dim: usize, rng: &mut R) -> QuiverRep {
        let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=max_dim)).collect();
        let maps = (1..=n)
            .map(|t| {
                let mut m = Matrix::zeros(field, dims[t], dims[t - 1]);
                for i in 0..dims[t] {
                    for j in 0..dims[t - 1] {
                        m.set(i, j, rng.gen_range(0..field.p));
                    }
                }
                m
            })
            .collect();
        QuiverRep { field, n, dims, maps }
    }

    /// The composite `V_a -> V_b` for `a <= b`.
    pub fn composite(&self, a: usize, b: usize) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[a]);
        for t in a + 1..=b {
            m = self.maps[t - 1].dot(&m);
        }
        m
    }

    pub fn is_morphism(&self, y: &QuiverRep, h: &RepMorphism) -> bool {
        h.maps.len() == self.n + 1
            && (0..=self.n).all(|t| h.maps[t].shape() == (y.dims[t], self.dims[t]))
            && (1..=self.n).all(|t| h.maps[t].dot(&self.maps[t - 1]) == y.maps[t - 1].dot(&h.maps[t - 1]))
    }
}

fn check_compatible(x: &QuiverRep, y: &QuiverRep) -> Result<()> {
    x.field.check_same(&y.field)?;
    if x.n != y.n {
        return Err(Error::Shape(format!("quiver lengths {} and {}", x.n, y.n)));
    }
    Ok(())
}

/// Offsets of the blocks `h_t` inside the unknown vector.
fn hom_offsets(x: &QuiverRep, y: &QuiverRep) -> Vec<usize> {
    let mut off = vec![0];
    for t in 0..=x.n {
        off.push(off[t] + y.dims[t] * x.dims[t]);
    }
    off
}

/// The map `(h_t) ↦ (h_t x_t - y_t h_{t-1})_{t = 1..n}`.
fn naturality_matrix(x: &QuiverRep, y: &QuiverRep) -> Matrix {
    let k = x.field;
    let off = hom_offsets(x, y);
    let mut rows = 0;
    let mut row_off = vec![];
    for t in 1..=x.n {
        row_off.push(rows);
        rows += y.dims[t] * x.dims[t - 1];
    }
    let mut m = Matrix::zeros(k, rows, off[x.n + 1]);
    for t in 1..=x.n {
        let (xm, ym) = (&x.maps[t - 1], &y.maps[t - 1]);
        let (a, b, c) = (y.dims[t], x.dims[t], x.dims[t - 1]);
        let d = y.dims[t - 1];
        for r in 0..a {
            for s in 0..c {
                let row = row_off[t - 1] + r * c + s;
                // (h_t x)_{r,s} = sum_l h_t[r,l] x[l,s]
                for l in 0..b {
                    let col = off[t] + r * b + l;
                    m.set(row, col, k.add(m.get(row, col), xm.get(l, s)));
                }
                // (y h_{t-1})_{r,s} = sum_l y[r,l] h_{t-1}[l,s]
                for l in 0..d {
                    let col = off[t - 1] + l * c + s;
                    m.set(row, col, k.sub(m.get(row, col), ym.get(r, l)));
                }
            }
        }
    }
    m
}

fn unpack(x: &QuiverRep, y: &QuiverRep, v: &[u32]) -> RepMorphism {
    let off = hom_offsets(x, y);
    let maps = (0..=x.n)
        .map(|t| {
            let mut m = Matrix::zeros(x.field, y.dims[t], x.dims[t]);
            for r in 0..y.dims[t] {
                for s in 0..x.dims[t] {
                    m.set(r, s, v[off[t] + r * x.dims[t] + s]);
                }
            }
            m
        })
        .collect();
    RepMorphism { maps }
}

/// A basis of `Hom(X, Y)`.
pub fn rep_hom(x: &QuiverRep, y: &QuiverRep) -> Result<Vec<RepMorphism>> {
    check_compatible(x, y)?;
    let m = naturality_matrix(x, y);
    Ok(m.kernel().iter().map(|v| unpack(x, y, v)).collect())
}

pub fn hom_dim(x: &QuiverRep, y: &QuiverRep) -> Result<usize> {
    check_compatible(x, y)?;
    let m = naturality_matrix(x, y);
    Ok(m.cols - m.rank())
}

/// `dim Ext^1(X, Y)` as the cokernel dimension of the naturality map.
pub fn ext1(x: &QuiverRep, y: &QuiverRep) -> Result<usize> {
    check_compatible(x, y)?;
    let m = naturality_matrix(x, y);
    Ok(m.rows - m.rank())
}

/// `[i2 <= i1 <= j2 <= j1]`.
pub fn interval_hom_dim(a: IntervalModule, b: IntervalModule) -> usize {
    usize::from(b.i <= a.i && a.i <= b.j && b.j <= a.j)
}

/// `[i1 + 1 <= i2 <= j1 + 1 <= j2]`.
pub fn interval_ext_dim(a: IntervalModule, b: IntervalModule) -> usize {
    usize::from(a.i < b.i && b.i <= a.j + 1 && a.j < b.j)
}

/// Interval multiplicities by the rank formula.
pub fn decompose(x: &QuiverRep) -> Vec<IntervalModule> {
    let n = x.n as isize;
    let rank = |a: isize, b: isize| -> isize {
        if a < 0 || b > n {
            0
        } else if a == b {
            x.dims[a as usize] as isize
        } else {
            x.composite(a as usize, b as usize).rank() as isize
        }
    };
    let mut out = vec![];
    for m in IntervalModule::all(x.n) {
        let (i, j) = (m.i as isize, m.j as isize);
        let mult = rank(i, j) - rank(i - 1, j) - rank(i, j + 1) + rank(i - 1, j + 1);
        debug_assert!(mult >= 0);
        out.extend(std::iter::repeat_n(m, mult as usize));
    }
    out
}

/// Column basis of the span of the given columns.
fn column_basis(cols: &[Vec<u32>], k: RingSpec, dim: usize) -> Vec<Vec<u32>> {
    let mut basis: Vec<Vec<u32>> = vec![];
    for c in cols {
        let mut trial = basis.clone();
        trial.push(c.clone());
        if as_matrix(&trial, k, dim).rank() == trial.len() {
            basis = trial;
        }
    }
    basis
}

fn as_matrix(cols: &[Vec<u32>], k: RingSpec, dim: usize) -> Matrix {
    let mut m = Matrix::zeros(k, dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..dim {
            m.set(i, j, c[i]);
        }
    }
    m
}

fn kernel_basis(m: &Matrix) -> Vec<Vec<u32>> {
    m.kernel()
}

fn image_basis(m: &Matrix) -> Vec<Vec<u32>> {
    let cols: Vec<Vec<u32>> = (0..m.cols).map(|j| m.col(j)).collect();
    column_basis(&cols, m.ring, m.rows)
}

fn intersection(a: &[Vec<u32>], b: &[Vec<u32>], k: RingSpec, dim: usize) -> Vec<Vec<u32>> {
    let ma = as_matrix(a, k, dim);
    let both = ma.hstack(&as_matrix(b, k, dim).neg());
    let gens: Vec<Vec<u32>> = both
        .kernel()
        .iter()
        .map(|v| ma.dot(&Matrix::column(k, &v[..a.len()])).col(0))
        .collect();
    column_basis(&gens, k, dim)
}

/// An explicit isomorphism from a direct sum of intervals onto `X`, built from
/// bases adapted to the kernel and image filtrations at every vertex.
pub fn interval_basis(x: &QuiverRep) -> (Vec<IntervalModule>, RepMorphism) {
    let k = x.field;
    let n = x.n;
    let mut parts: Vec<(IntervalModule, Vec<u32>)> = vec![];
    for i in 0..=n {
        let d = x.dims[i];
        // K[j] = vectors at i dying after j
        let kill = |j: usize| -> Vec<Vec<u32>> {
            if j == n {
                (0..d).map(|t| (0..d).map(|s| u32::from(s == t)).collect()).collect()
            } else {
                kernel_basis(&x.composite(i, j + 1))
            }
        };
        let im = if i == 0 { vec![] } else { image_basis(&x.maps[i - 1]) };
        let mut prev_kill: Vec<Vec<u32>> = vec![];
        for j in i..=n {
            let kj = kill(j);
            let mut s = prev_kill.clone();
            s.extend(intersection(&im, &kj, k, d));
            let mut span = column_basis(&s, k, d);
            for v in &kj {
                let mut trial = span.clone();
                trial.push(v.clone());
                if as_matrix(&trial, k, d).rank() == trial.len() {
                    span = trial;
                    parts.push((IntervalModule::new(i, j), v.clone()));
                }
            }
            prev_kill = kj;
        }
    }
    parts.sort_by_key(|a| a.0);
    let intervals: Vec<IntervalModule> = parts.iter().map(|p| p.0).collect();
    let src = QuiverRep::sum_of_intervals(k, n, &intervals);
    let maps = (0..=n)
        .map(|t| {
            let cols: Vec<Vec<u32>> = parts
                .iter()
                .filter(|(m, _)| m.i <= t && t <= m.j)
                .map(|(m, v)| x.composite(m.i, t).dot(&Matrix::column(k, v)).col(0))
                .collect();
            let m = as_matrix(&cols, k, x.dims[t]);
            debug_assert_eq!(m.cols, src.dims[t]);
            m
        })
        .collect();
    (intervals, RepMorphism { maps })
}

fn inverse(m: &Matrix) -> Matrix {
    let sol = crate::ringlin::howell_solve(m, &Matrix::identity(m.ring, m.rows)).expect("square");
    sol.particular.expect("invertible")
}

/// An isomorphism `X -> Y` if one exists; the witness is checked to be a
/// morphism and levelwise invertible.
pub fn find_isomorphism(x: &QuiverRep, y: &QuiverRep) -> Result<Option<RepMorphism>> {
    check_compatible(x, y)?;
    if x.dims != y.dims {
        return Ok(None);
    }
    let (ix, px) = interval_basis(x);
    let (iy, py) = interval_basis(y);
    if ix != iy || !px.is_iso() || !py.is_iso() {
        return Ok(None);
    }
    let px_inv = RepMorphism { maps: px.maps.iter().map(inverse).collect() };
    let h = py.after(&px_inv);
    Ok((x.is_morphism(y, &h) && h.is_iso()).then_some(h))
}

pub fn is_isomorphic(x: &QuiverRep, y: &QuiverRep) -> Result<bool> {
    Ok(find_isomorphism(x, y)?.is_some())
}

/// Multiplicities keyed by interval.
pub fn multiplicities(parts: &[IntervalModule]) -> BTreeMap<IntervalModule, usize> {
    let mut m = BTreeMap::new();
    for &p in parts {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}
