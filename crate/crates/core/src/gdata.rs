//! Degreewise multiplication tables for nonnegatively graded algebras.
//!
//! A [`GradedAlgebraData`] stores each graded piece as a bare coordinate
//! space with labels and a table for every product of degrees inside the
//! computed window. It is the common output format for orbit algebras and
//! cohomology algebras, and the common input for center computations —
//! anything that needs products but not a presentation.

use std::collections::BTreeMap;

use crate::algebra::{SCAlgebra, SparseVec};
use crate::scalar::{Characteristic, Scalar};

/// Access to a graded algebra by degreewise coordinates. `mul_basis` must be
/// defined whenever `i + j <= max_computed_degree()`.
pub trait GradedCarrier {
    fn characteristic(&self) -> Characteristic;
    fn dim(&self, degree: usize) -> usize;
    fn max_computed_degree(&self) -> usize;
    fn mul_basis(&self, i: usize, j: usize, xi: usize, yj: usize) -> SparseVec;
    fn label(&self, degree: usize, index: usize) -> String;

    fn mul(&self, i: usize, j: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for &(xi, ref a) in x {
            for &(yj, ref b) in y {
                let c = a.mul(b);
                if c.is_zero() {
                    continue;
                }
                for (k, v) in self.mul_basis(i, j, xi, yj) {
                    let e = acc.entry(k).or_insert_with(|| self.characteristic().zero());
                    *e = e.add(&v.mul(&c));
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Explicit tables: every product of basis vectors inside the window,
/// stored densely by degree pair.
#[derive(Clone, Debug)]
pub struct GradedAlgebraData {
    pub ch: Characteristic,
    /// Internal degree `d` sits in cohomological degree `stride * d`; this
    /// only matters for sign rules (graded commutators) downstream.
    pub stride: usize,
    /// `dims[i]` = dimension of the degree-`i` piece; the window is
    /// `0 ..= dims.len() - 1`.
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// `tables[(i, j)][x][y]` = the product of basis vectors, as coordinates
    /// in degree `i + j`. Present for all `i + j` inside the window.
    pub tables: BTreeMap<(usize, usize), Vec<Vec<SparseVec>>>,
    /// The identity of the degree-zero part, when there is one.
    pub unit: SparseVec,
}

impl GradedAlgebraData {
    pub fn max_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Brute-force associativity over the whole window; for tests and
    /// cross-checks of independently constructed tables.
    pub fn verify_associative(&self) -> bool {
        let d = self.max_degree();
        for i in 0..=d {
            for j in 0..=d - i {
                for k in 0..=d - i - j {
                    for x in 0..self.dims[i] {
                        let bx: SparseVec = vec![(x, self.ch.one())];
                        for y in 0..self.dims[j] {
                            for z in 0..self.dims[k] {
                                let bz: SparseVec = vec![(z, self.ch.one())];
                                let xy = self.mul_basis(i, j, x, y);
                                let yz = self.mul_basis(j, k, y, z);
                                let left = self.mul(i + j, k, &xy, &bz);
                                let right = self.mul(i, j + k, &bx, &yz);
                                if left != right {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The unit must really be a two-sided identity on the window.
    pub fn verify_unit(&self) -> bool {
        for i in 0..self.dims.len() {
            for x in 0..self.dims[i] {
                let b: SparseVec = vec![(x, self.ch.one())];
                if self.mul(0, i, &self.unit, &b) != b || self.mul(i, 0, &b, &self.unit) != b {
                    return false;
                }
            }
        }
        true
    }

    /// Rank certificate that every degree `d >= 2` is spanned by products
    /// `A_1 · A_{d-1}`. When it holds, commuting with degrees 0 and 1 implies
    /// commuting with everything, so window-centrality in degree `d` is
    /// genuine centrality as soon as the window reaches `d + 1`.
    pub fn generated_in_degree_one(&self) -> bool {
        for d in 2..=self.max_degree() {
            let mut space = crate::matrix::RowSpace::new(self.dims[d], self.ch);
            for x in 0..self.dims[1] {
                for y in 0..self.dims[d - 1] {
                    let mut row = vec![self.ch.zero(); self.dims[d]];
                    for (k, c) in self.mul_basis(1, d - 1, x, y) {
                        row[k] = c;
                    }
                    space.insert(row);
                }
            }
            if space.dim() != self.dims[d] {
                return false;
            }
        }
        true
    }
}

/// A finite-dimensional graded algebra seen degreewise. The window covers
/// the whole algebra, so window-centrality downstream is genuine centrality.
pub struct AlgebraCarrier<'a> {
    alg: &'a SCAlgebra,
    by_degree: Vec<Vec<usize>>,
    pos: Vec<(usize, usize)>,
}

impl<'a> AlgebraCarrier<'a> {
    pub fn new(alg: &'a SCAlgebra) -> AlgebraCarrier<'a> {
        let top = alg.max_degree() as usize;
        let mut by_degree = vec![Vec::new(); top + 1];
        let mut pos = vec![(0usize, 0usize); alg.dim()];
        for b in 0..alg.dim() {
            let d = alg.degree(b) as usize;
            pos[b] = (d, by_degree[d].len());
            by_degree[d].push(b);
        }
        AlgebraCarrier { alg, by_degree, pos }
    }

    /// Whole-algebra basis index of a degreewise coordinate.
    pub fn global(&self, degree: usize, index: usize) -> usize {
        self.by_degree[degree][index]
    }
}

impl GradedCarrier for AlgebraCarrier<'_> {
    fn characteristic(&self) -> Characteristic {
        self.alg.characteristic()
    }

    fn dim(&self, degree: usize) -> usize {
        self.by_degree.get(degree).map_or(0, |v| v.len())
    }

    fn max_computed_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    fn mul_basis(&self, i: usize, j: usize, xi: usize, yj: usize) -> SparseVec {
        let one = self.alg.characteristic().one();
        let x = self.by_degree[i][xi];
        let y = self.by_degree[j][yj];
        self.alg
            .mul(&[(x, one.clone())], &[(y, one)])
            .into_iter()
            .map(|(g, c)| {
                let (d, l) = self.pos[g];
                debug_assert_eq!(d, i + j, "graded product respects degrees");
                (l, c)
            })
            .collect()
    }

    fn label(&self, degree: usize, index: usize) -> String {
        self.alg.name(self.global(degree, index)).to_string()
    }
}

impl GradedCarrier for GradedAlgebraData {
    fn characteristic(&self) -> Characteristic {
        self.ch
    }

    fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    fn max_computed_degree(&self) -> usize {
        self.max_degree()
    }

    fn mul_basis(&self, i: usize, j: usize, xi: usize, yj: usize) -> SparseVec {
        self.tables
            .get(&(i, j))
            .map(|t| t[xi][yj].clone())
            .unwrap_or_default()
    }

    fn label(&self, degree: usize, index: usize) -> String {
        self.labels
            .get(degree)
            .and_then(|l| l.get(index))
            .cloned()
            .unwrap_or_else(|| format!("{degree}.{index}"))
    }
}
