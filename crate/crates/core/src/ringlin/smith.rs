use serde::Serialize;

/// Smith normal form summary of an integer matrix `A: Z^cols -> Z^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntSmith {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<i64>,
}

impl IntSmith {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Free rank of `coker(A) = Z^rows / im(A)`.
    pub fn coker_free_rank(&self) -> usize {
        self.rows - self.rank()
    }

    /// Torsion of `coker(A)`: the invariant factors greater than one.
    pub fn coker_torsion(&self) -> Vec<i64> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn smith_over_z(a: &[Vec<i64>]) -> IntSmith {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if m[i][j] % m[t][t] != 0 {
                            for jj in t..cols {
                                m[t][jj] += m[i][jj];
                            }
                            done = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    IntSmith { rows, cols, invariant_factors: diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let s = smith_over_z(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.invariant_factors, vec![1, 6]);
        assert_eq!(s.coker_torsion(), vec![6]);
        assert_eq!(s.coker_free_rank(), 0);

        let s = smith_over_z(&[vec![0]]);
        assert_eq!(s.coker_free_rank(), 1);
        assert!(s.coker_torsion().is_empty());

        let s = smith_over_z(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(s.coker_free_rank(), 0);
        assert!(s.coker_torsion().is_empty());
    }

    #[test]
    fn divisibility_chain_and_determinant() {
        let a = vec![vec![4, 6, 2], vec![6, 9, 3], vec![2, 4, 8]];
        let s = smith_over_z(&a);
        for w in s.invariant_factors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        // |det| = 0 here since row 2 = 1.5 row 1; rank 2
        assert_eq!(s.rank(), 2);
        let b = vec![vec![2, 1], vec![1, 2]];
        let s = smith_over_z(&b);
        assert_eq!(s.invariant_factors.iter().product::<i64>(), 3);
    }
}
