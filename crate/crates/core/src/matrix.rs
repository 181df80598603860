//! Dense exact linear algebra over [`Scalar`].
//!
//! Row-major matrices with reduced row echelon form as the single primitive;
//! rank, kernel bases, solving and span membership are derived from it.
//! Everything is exact — the entries are rationals or prime-field elements,
//! never floats.

use crate::scalar::{Characteristic, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
    ch: Characteristic,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, ch: Characteristic) -> Self {
        Matrix { rows, cols, data: vec![ch.zero(); rows * cols], ch }
    }

    pub fn identity(n: usize, ch: Characteristic) -> Self {
        let mut m = Matrix::zero(n, n, ch);
        for i in 0..n {
            m.set(i, i, ch.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, ch: Characteristic) -> Self {
        let mut m = Matrix::zero(rows.len(), cols, ch);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn characteristic(&self) -> Characteristic {
        self.ch
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, self.ch);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols, self.ch);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ch.zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-vector application `v * M` (the convention for right-module maps).
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = self.ch.zero();
                for i in 0..self.rows {
                    if !v[i].is_zero() {
                        let a = self.get(i, j);
                        if !a.is_zero() {
                            acc = acc.add(&v[i].mul(a));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Basis of the left kernel `{x : xM = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel_basis()
    }

    /// Solve `X * B = T` row by row, given that the rows of `B` are linearly
    /// independent. `None` when some row of `T` is outside the row span.
    pub fn express_rows(b: &Matrix, t: &Matrix) -> Option<Matrix> {
        assert_eq!(b.cols, t.cols);
        let ch = b.ch;
        // solve B^T x^T = t_i^T for every row of T with a single elimination
        let mut aug = Matrix::zero(b.cols, b.rows + t.rows, ch);
        for i in 0..b.rows {
            for j in 0..b.cols {
                aug.set(j, i, b.get(i, j).clone());
            }
        }
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.set(j, b.rows + i, t.get(i, j).clone());
            }
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= b.rows) {
            return None;
        }
        let mut x = Matrix::zero(t.rows, b.rows, ch);
        for (r, &c) in pivots.iter().enumerate() {
            for i in 0..t.rows {
                x.set(i, c, aug.get(r, b.rows + i).clone());
            }
        }
        Some(x)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).add(other.get(i, j)));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.mul(c);
        }
        out
    }

    /// Vertical stack: `self` above `other`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Matrix::zero(self.rows + other.rows, self.cols, self.ch);
        out.data[..self.data.len()].clone_from_slice(&self.data);
        out.data[self.data.len()..].clone_from_slice(&other.data);
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.rows, self.cols + other.cols, self.ch);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Exact inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hcat(&Matrix::identity(n, self.ch));
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut inv = Matrix::zero(n, n, self.ch);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Exact determinant by Gaussian elimination with pivot tracking.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.ch.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.ch.zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = det.neg();
            }
            let pivot = m.get(c, c).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).mul(&inv);
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, echelonized over the free
    /// (non-pivot) columns in ascending order — deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_row: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![self.ch.zero(); self.cols];
            v[free] = self.ch.one();
            for (&pc, &pr) in &pivot_row {
                let coef = m.get(pr, free);
                if !coef.is_zero() {
                    v[pc] = coef.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution of `Mx = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.ch);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.ch.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Reduce all entries into F_p. `None` when a denominator dies mod p.
    pub fn to_fp(&self, p: u64) -> Option<Matrix> {
        let mut out = Matrix::zero(self.rows, self.cols, Characteristic::Prime(p));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).to_fp(p)?);
            }
        }
        Some(out)
    }
}

/// Row-space container with incremental membership tests: keeps its rows in
/// reduced echelon form.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    ch: Characteristic,
    rows: Vec<Vec<Scalar>>, // echelonized, each with leading 1
    lead: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize, ch: Characteristic) -> Self {
        RowSpace { cols, ch, rows: Vec::new(), lead: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn characteristic(&self) -> Characteristic {
        self.ch
    }

    /// Reduce `v` against the space; the residue is zero iff `v` is in span.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &l) in self.rows.iter().zip(&self.lead) {
            if !v[l].is_zero() {
                let f = v[l].clone();
                for j in l..self.cols {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(l) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[l].inv();
        for x in &mut v[l..] {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        // keep fully reduced: clear column l in existing rows
        for (row, &rl) in self.rows.iter_mut().zip(&self.lead) {
            if !row[l].is_zero() && rl != l {
                let f = row[l].clone();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        row[j] = row[j].sub(&f.mul(&v[j]));
                    }
                }
            }
        }
        let at = self.lead.partition_point(|&x| x < l);
        self.rows.insert(at, v);
        self.lead.insert(at, l);
        true
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::integer(n)
    }

    #[test]
    fn rref_rank_kernel() {
        // [1 2 3; 2 4 6; 1 0 1] has rank 2, kernel dim 1
        let m = Matrix::from_rows(
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(1), q(0), q(1)],
            ],
            3,
            Characteristic::Zero,
        );
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(
            vec![vec![q(1), q(1)], vec![q(1), q(-1)]],
            2,
            Characteristic::Zero,
        );
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let singular = Matrix::from_rows(
            vec![vec![q(1), q(1)], vec![q(2), q(2)]],
            2,
            Characteristic::Zero,
        );
        assert!(singular.solve(&[q(0), q(1)]).is_none());
    }

    #[test]
    fn rank_drops_mod_p_but_never_rises() {
        // det = 5, so invertible over Q but singular mod 5
        let m = Matrix::from_rows(
            vec![vec![q(1), q(2)], vec![q(3), q(11)]],
            2,
            Characteristic::Zero,
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.to_fp(5).unwrap().rank(), 1);
        assert_eq!(m.to_fp(7).unwrap().rank(), 2);
    }

    #[test]
    fn rowspace_membership() {
        let mut s = RowSpace::new(3, Characteristic::Zero);
        assert!(s.insert(vec![q(1), q(1), q(0)]));
        assert!(s.insert(vec![q(0), q(1), q(1)]));
        assert!(!s.insert(vec![q(1), q(2), q(1)]));
        assert!(s.contains(&[q(2), q(3), q(1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.dim(), 2);
    }
}
