//! Dense integer matrices and the Smith normal form with unimodular transforms.

use std::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: &[Vec<i128>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0i128; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += vi * a;
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let r = other.left_mul(self.row(i));
            out.data[i * other.cols..(i + 1) * other.cols].copy_from_slice(&r);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += q * v;
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += q * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] = -self.data[r * self.cols + j];
        }
    }

    /// Smith normal form `U·A·V = D`.
    pub fn smith(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        let mut v_inv = IntMatrix::identity(n);
        let mut rank = 0;
        for t in 0..m.min(n) {
            loop {
                let mut pivot = None;
                for i in t..m {
                    for j in t..n {
                        let x = d[(i, j)];
                        if x != 0 && pivot.is_none_or(|(_, _, best): (usize, usize, i128)| x.abs() < best) {
                            pivot = Some((i, j, x.abs()));
                        }
                    }
                }
                let Some((pi, pj, _)) = pivot else {
                    return SmithForm::finish(d, u, v, v_inv, rank);
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
                let p = d[(t, t)];
                let mut clean = true;
                for i in t + 1..m {
                    let q = d[(i, t)] / p;
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                    clean &= d[(i, t)] == 0;
                }
                for j in t + 1..n {
                    let q = d[(t, j)] / p;
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                    v_inv.add_row(t, j, q);
                    clean &= d[(t, j)] == 0;
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
                match offender {
                    Some(i) => {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                    }
                    None => break,
                }
            }
            if d[(t, t)] < 0 {
                d.negate_row(t);
                u.negate_row(t);
            }
            rank += 1;
        }
        SmithForm::finish(d, u, v, v_inv, rank)
    }

    pub fn rank(&self) -> usize {
        self.smith().rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i128]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Result of [`IntMatrix::smith`]: `u · a · v = diag(diagonal)` padded with zeros.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Positive invariant factors, each dividing the next.
    pub diagonal: Vec<i128>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, v_inv: IntMatrix, rank: usize) -> Self {
        let diagonal = (0..rank).map(|i| d[(i, i)]).collect();
        SmithForm { diagonal, rank, u, v, v_inv }
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<i128> {
        self.diagonal.iter().copied().filter(|&x| x > 1).collect()
    }

    /// Solves the row-vector system `x · A = b` over the integers.
    pub fn solve_left(&self, b: &[i128]) -> Option<Vec<i128>> {
        // x·U⁻¹·D = b·V, so y = x·U⁻¹ has y_k = (bV)_k / d_k.
        let bv = self.v.left_mul(b);
        let mut y = vec![0i128; self.u.rows()];
        for (k, &c) in bv.iter().enumerate() {
            if k < self.rank {
                if c % self.diagonal[k] != 0 {
                    return None;
                }
                y[k] = c / self.diagonal[k];
            } else if c != 0 {
                return None;
            }
        }
        Some(self.u.left_mul(&y))
    }

    /// A basis of the row lattice of `A`, as rows.
    pub fn row_lattice_basis(&self) -> Vec<Vec<i128>> {
        (0..self.rank)
            .map(|k| self.v_inv.row(k).iter().map(|&x| x * self.diagonal[k]).collect())
            .collect()
    }

    /// Coordinates of `b` in [`Self::row_lattice_basis`], if `b` lies in the row lattice.
    pub fn lattice_coordinates(&self, b: &[i128]) -> Option<Vec<i128>> {
        let bv = self.v.left_mul(b);
        let mut out = Vec::with_capacity(self.rank);
        for (k, &c) in bv.iter().enumerate() {
            if k < self.rank {
                if c % self.diagonal[k] != 0 {
                    return None;
                }
                out.push(c / self.diagonal[k]);
            } else if c != 0 {
                return None;
            }
        }
        Some(out)
    }
}

/// Rank and torsion of `L / M` for row lattices `M ⊆ L ⊆ Zᴺ` given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientShape {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

/// Computes the shape of `span(l) / span(m)`. Returns `None` if `m ⊄ span(l)`.
pub fn quotient_shape(l: &[Vec<i128>], m: &[Vec<i128>], dim: usize) -> Option<QuotientShape> {
    let sl = IntMatrix::from_rows(l, dim).smith();
    let coords = m.iter().map(|r| sl.lattice_coordinates(r)).collect::<Option<Vec<_>>>()?;
    let sm = IntMatrix::from_rows(&coords, sl.rank).smith();
    Some(QuotientShape { rank: sl.rank - sm.rank, torsion: sm.torsion() })
}
