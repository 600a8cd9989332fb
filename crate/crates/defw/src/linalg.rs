//! Dense exact rational linear algebra: reduced row echelon form, kernels,
//! and deterministic subspace bases. Pieces here are desk-scale (at most a
//! few hundred columns), so dense arithmetic over `BigRational` is fine.

use num_traits::{One, Zero};

use crate::element::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        debug_assert!(rows.iter().all(|x| x.len() == c));
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        self.row(i).to_vec()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let add = a * b;
                        out[(i, j)] += add;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = {
                let p = self[(r, c)].clone();
                p.recip()
            };
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of {x : A x = 0}, one vector per free column, deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row_idx, &p) in pivots.iter().enumerate() {
                v[p] = -m[(row_idx, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve A x = b; returns None when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row_idx, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row_idx, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, None when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Deterministic row-reduced basis of a subspace of Q^n. The representation
/// (RREF rows plus pivot columns) is unique for a given subspace, which is
/// what makes coset normal forms and golden outputs stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return Self::empty(ambient_dim);
        }
        let mut m = RatMatrix::from_rows(vectors.to_vec());
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|i| m.row_vec(i)).collect();
        Subspace {
            ambient_dim,
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtract basis rows to clear the pivot coordinates of `v`.
    /// The result is the canonical coset representative of v + (this space).
    pub fn reduce_vec(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce_vec(v).iter().all(|x| x.is_zero())
    }

    /// Coefficients of `v` in the RREF basis rows, None if v is outside.
    pub fn express(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let mut out = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p].clone();
            coeffs.push(f.clone());
            if !f.is_zero() {
                for (o, r) in out.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *o -= &f * r;
                    }
                }
            }
        }
        out.iter().all(|x| x.is_zero()).then_some(coeffs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_space(&self, other: &Subspace) -> bool {
        // RREF is unique per subspace
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let mut m = RatMatrix::from_rows(vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]);
        let p = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let m = RatMatrix::from_rows(vec![v(&[1, 0, -1]), v(&[0, 1, 2])]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));

        let b = v(&[3, 4]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        let inconsistent = RatMatrix::from_rows(vec![v(&[1, 1]), v(&[2, 2])]);
        assert!(inconsistent.solve(&v(&[1, 3])).is_none());
    }

    #[test]
    fn subspace_reduce_and_express() {
        let s = Subspace::from_spanning(3, &[v(&[1, 1, 0]), v(&[0, 2, 2])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 2, 1])));
        assert!(!s.contains(&v(&[1, 0, 1])));
        let coeffs = s.express(&v(&[2, 3, 1])).unwrap();
        // reconstruct
        let mut rec = vec![Rat::zero(); 3];
        for (c, row) in coeffs.iter().zip(s.rows()) {
            for (r, x) in rec.iter_mut().zip(row) {
                *r += c * x;
            }
        }
        assert_eq!(rec, v(&[2, 3, 1]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_rows(vec![v(&[2, 1]), v(&[1, 1])]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        let sing = RatMatrix::from_rows(vec![v(&[1, 2]), v(&[2, 4])]);
        assert!(sing.inverse().is_none());
    }
}
