//! Linear combinations of paths with exact coefficients.
//!
//! A [`PathElement`] is the free-algebra element Σ cᵢ·pᵢ over one quiver.
//! Zero coefficients are never stored, so structural equality is semantic
//! equality. Multiplication distributes composition over the terms; products
//! of non-composable paths vanish.

use crate::error::StructuralError;
use crate::quiver::{ArrowGrading, Path, Quiver, VertexId};
use crate::scalar::{Characteristic, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathElement {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Path, Scalar>,
}

impl PathElement {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        PathElement { quiver, terms: BTreeMap::new() }
    }

    pub fn from_path(quiver: Arc<Quiver>, p: Path, c: Scalar) -> Self {
        assert!(quiver.owns(&p), "path does not belong to this quiver");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        PathElement { quiver, terms }
    }

    pub fn unit(quiver: Arc<Quiver>, v: VertexId, ch: &Characteristic) -> Self {
        let p = quiver.lazy(v);
        PathElement::from_path(quiver, p, ch.one())
    }

    pub fn from_terms(
        quiver: Arc<Quiver>,
        entries: impl IntoIterator<Item = (Path, Scalar)>,
    ) -> Self {
        let mut out = PathElement::zero(quiver);
        for (p, c) in entries {
            out.add_term(p, c);
        }
        out
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        assert!(self.quiver.owns(&p), "path does not belong to this quiver");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same_quiver(&self, other: &PathElement) -> Result<(), StructuralError> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver {
            Ok(())
        } else {
            Err(StructuralError::QuiverMismatch)
        }
    }

    pub fn add(&self, other: &PathElement) -> Result<PathElement, StructuralError> {
        self.check_same_quiver(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PathElement) -> Result<PathElement, StructuralError> {
        self.add(&other.scale_by_neg_one())
    }

    fn scale_by_neg_one(&self) -> PathElement {
        let terms = self.terms.iter().map(|(p, c)| (p.clone(), c.neg())).collect();
        PathElement { quiver: self.quiver.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        if c.is_zero() {
            return PathElement::zero(self.quiver.clone());
        }
        let terms = self.terms.iter().map(|(p, k)| (p.clone(), k.mul(c))).collect();
        PathElement { quiver: self.quiver.clone(), terms }
    }

    /// Free-algebra product: distributes composition, drops non-composable
    /// pairs.
    pub fn mul(&self, other: &PathElement) -> Result<PathElement, StructuralError> {
        self.check_same_quiver(other)?;
        let mut out = PathElement::zero(self.quiver.clone());
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = self.quiver.compose(p, q) {
                    out.add_term(pq, a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Left/right multiplication by bare paths.
    pub fn mul_path_left(&self, p: &Path) -> PathElement {
        let mut out = PathElement::zero(self.quiver.clone());
        for (q, c) in &self.terms {
            if let Some(pq) = self.quiver.compose(p, q) {
                out.add_term(pq, c.clone());
            }
        }
        out
    }

    pub fn mul_path_right(&self, p: &Path) -> PathElement {
        let mut out = PathElement::zero(self.quiver.clone());
        for (q, c) in &self.terms {
            if let Some(qp) = self.quiver.compose(q, p) {
                out.add_term(qp, c.clone());
            }
        }
        out
    }

    /// `Some((source, target))` when every term shares both endpoints;
    /// `None` for zero or mixed-endpoint elements.
    pub fn uniform_endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source(), self.quiver.target(first));
        for p in it {
            if (p.source(), self.quiver.target(p)) != ends {
                return None;
            }
        }
        Some(ends)
    }

    /// Degree when homogeneous under `g`, else `None`. Zero is homogeneous
    /// of every degree; reported as `Some(0)`.
    pub fn homogeneous_degree(&self, g: &ArrowGrading) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(p) => g.path_degree(p),
            None => return Some(0),
        };
        for p in it {
            if g.path_degree(p) != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self, g: &ArrowGrading) -> BTreeMap<u32, PathElement> {
        let mut out: BTreeMap<u32, PathElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(g.path_degree(p))
                .or_insert_with(|| PathElement::zero(self.quiver.clone()))
                .add_term(p.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", self.quiver.display_path(p))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn kronecker2() -> Arc<Quiver> {
        Quiver::new()
            .vertex("1")
            .vertex("2")
            .arrow("x", "1", "2")
            .arrow("y", "1", "2")
            .build()
            .unwrap()
    }

    #[test]
    fn zero_coefficients_vanish() {
        let q = kronecker2();
        let x = q.path(&["x"]).unwrap();
        let mut e = PathElement::zero(q.clone());
        e.add_term(x.clone(), Scalar::integer(2));
        e.add_term(x, Scalar::integer(-2));
        assert!(e.is_zero());
    }

    #[test]
    fn non_composable_products_vanish() {
        let q = kronecker2();
        let x = PathElement::from_path(q.clone(), q.path(&["x"]).unwrap(), Scalar::integer(1));
        let y = PathElement::from_path(q.clone(), q.path(&["y"]).unwrap(), Scalar::integer(1));
        assert!(x.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn idempotent_units_act_as_identity() {
        let q = kronecker2();
        let ch = Characteristic::Zero;
        let e1 = PathElement::unit(q.clone(), q.vertex_by_name("1").unwrap(), &ch);
        let e2 = PathElement::unit(q.clone(), q.vertex_by_name("2").unwrap(), &ch);
        let x = PathElement::from_path(q.clone(), q.path(&["x"]).unwrap(), Scalar::integer(1));
        assert_eq!(e1.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&e2).unwrap(), x);
        assert!(x.mul(&e1).unwrap().is_zero());
    }

    #[test]
    fn homogeneity_detection() {
        let q = kronecker2();
        let g = ArrowGrading::from_degrees(&q, vec![1, 2]).unwrap();
        let x = q.path(&["x"]).unwrap();
        let y = q.path(&["y"]).unwrap();
        let mixed = PathElement::from_terms(
            q.clone(),
            [(x, Scalar::integer(1)), (y, Scalar::integer(1))],
        );
        assert_eq!(mixed.homogeneous_degree(&g), None);
        let uni = ArrowGrading::uniform(&q, 1);
        assert_eq!(mixed.homogeneous_degree(&uni), Some(1));
    }
}
