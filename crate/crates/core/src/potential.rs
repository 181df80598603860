//! Superpotentials on quivers and their Jacobian algebras.
//!
//! A potential is a linear combination of cycles considered up to cyclic
//! rotation; its partial derivative with respect to an arrow collects, for
//! every occurrence of the arrow in every term, the cycle rotated to start
//! just after that occurrence. The Jacobian algebra is the quotient by all
//! such derivatives.

use std::sync::Arc;

use crate::elem::PathElement;
use crate::error::StructuralError;
use crate::present::Presentation;
use crate::quiver::{ArrowGrading, ArrowId, Path, Quiver};
use crate::scalar::{Characteristic, Scalar};

/// A sum of cyclic paths, each stored in its canonical rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    quiver: Arc<Quiver>,
    terms: Vec<(Scalar, Path)>,
}

/// The lexicographically least rotation, so equality ignores the starting
/// point of each cycle.
fn canonical_rotation(quiver: &Quiver, p: &Path) -> Path {
    let arrows = p.arrows();
    let mut best: Option<Vec<ArrowId>> = None;
    for k in 0..arrows.len() {
        let mut rot = Vec::with_capacity(arrows.len());
        rot.extend_from_slice(&arrows[k..]);
        rot.extend_from_slice(&arrows[..k]);
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    let rot = best.expect("cycles are nonempty");
    let source = quiver.arrow(rot[0]).source;
    Path::from_parts(source, rot)
}

impl Potential {
    /// Build from terms; every path must be a nonempty cycle.
    pub fn new(
        quiver: Arc<Quiver>,
        terms: Vec<(Scalar, Path)>,
    ) -> Result<Potential, StructuralError> {
        let mut canonical: Vec<(Scalar, Path)> = Vec::new();
        for (c, p) in terms {
            if !quiver.owns(&p) {
                return Err(StructuralError::QuiverMismatch);
            }
            if p.is_lazy() || quiver.target(&p) != p.source() {
                return Err(StructuralError::Algebra(
                    "potential terms must be nonempty cycles".into(),
                ));
            }
            if c.is_zero() {
                continue;
            }
            let p = canonical_rotation(&quiver, &p);
            match canonical.iter_mut().find(|(_, q)| *q == p) {
                Some((acc, _)) => *acc = acc.add(&c),
                None => canonical.push((c, p)),
            }
        }
        canonical.retain(|(c, _)| !c.is_zero());
        canonical.sort_by(|(_, p), (_, q)| p.cmp(q));
        Ok(Potential { quiver, terms: canonical })
    }

    pub fn from_named_cycles(
        quiver: &Arc<Quiver>,
        cycles: &[(i64, &[&str])],
    ) -> Result<Potential, StructuralError> {
        let terms = cycles
            .iter()
            .map(|(c, names)| Ok((Scalar::integer(*c), quiver.path(names)?)))
            .collect::<Result<Vec<_>, StructuralError>>()?;
        Potential::new(quiver.clone(), terms)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn characteristic(&self) -> Characteristic {
        self.terms
            .first()
            .map(|(c, _)| c.characteristic())
            .unwrap_or(Characteristic::Zero)
    }

    /// Sum over every occurrence of `a` of the cycle rotated to start right
    /// after that occurrence, with `a` removed.
    pub fn cyclic_derivative(&self, a: ArrowId) -> PathElement {
        let mut out = PathElement::zero(self.quiver.clone());
        for (c, p) in &self.terms {
            let arrows = p.arrows();
            for (i, x) in arrows.iter().enumerate() {
                if *x != a {
                    continue;
                }
                let mut rest = Vec::with_capacity(arrows.len() - 1);
                rest.extend_from_slice(&arrows[i + 1..]);
                rest.extend_from_slice(&arrows[..i]);
                let path = if rest.is_empty() {
                    self.quiver.lazy(self.quiver.arrow(a).target)
                } else {
                    Path::from_parts(self.quiver.arrow(a).target, rest)
                };
                out.add_term(path, c.clone());
            }
        }
        out
    }

    /// All nonzero derivatives, in arrow order.
    pub fn jacobian_relations(&self) -> Vec<PathElement> {
        self.quiver
            .arrow_ids()
            .map(|a| self.cyclic_derivative(a))
            .filter(|r| !r.is_zero())
            .collect()
    }

    /// The Jacobian algebra as a graded presentation.
    pub fn jacobian_presentation(
        &self,
        grading: ArrowGrading,
    ) -> Result<Presentation, StructuralError> {
        Presentation::new(
            self.quiver.clone(),
            grading,
            self.jacobian_relations(),
            self.characteristic(),
        )
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::quiver::Quiver;

    /// Two parallel four-cycles on the square, mixed-sign crossing terms.
    pub(crate) fn square_dimer_quiver() -> Arc<Quiver> {
        let mut b = Quiver::new().vertex("1").vertex("2").vertex("3").vertex("4");
        for (x, s, t) in
            [("x1", "1", "2"), ("x2", "2", "3"), ("x3", "3", "4"), ("x4", "4", "1")]
        {
            b = b.arrow(x, s, t);
        }
        for (y, s, t) in
            [("y1", "1", "2"), ("y2", "2", "3"), ("y3", "3", "4"), ("y4", "4", "1")]
        {
            b = b.arrow(y, s, t);
        }
        b.build().unwrap()
    }

    pub(crate) fn square_dimer_potential() -> Potential {
        let q = square_dimer_quiver();
        Potential::from_named_cycles(
            &q,
            &[
                (1, &["x1", "x2", "x3", "x4"]),
                (1, &["y1", "y2", "y3", "y4"]),
                (-1, &["x1", "y2", "x3", "y4"]),
                (-1, &["y1", "x2", "y3", "x4"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_cycle_derivatives() {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .arrow("a", "1", "2")
            .arrow("b", "2", "1")
            .build()
            .unwrap();
        let w = Potential::from_named_cycles(&q, &[(1, &["a", "b"])]).unwrap();
        let da = w.cyclic_derivative(q.arrow_by_name("a").unwrap());
        let db = w.cyclic_derivative(q.arrow_by_name("b").unwrap());
        assert_eq!(da, PathElement::from_path(q.clone(), q.path(&["b"]).unwrap(), Scalar::integer(1)));
        assert_eq!(db, PathElement::from_path(q.clone(), q.path(&["a"]).unwrap(), Scalar::integer(1)));
    }

    #[test]
    fn square_dimer_derivatives_match_expected() {
        let w = square_dimer_potential();
        let q = w.quiver().clone();
        let mk = |terms: &[(&[&str], i64)]| {
            let mut e = PathElement::zero(q.clone());
            for (names, c) in terms {
                e.add_term(q.path(names).unwrap(), Scalar::integer(*c));
            }
            e
        };
        let dx4 = w.cyclic_derivative(q.arrow_by_name("x4").unwrap());
        assert_eq!(dx4, mk(&[(&["x1", "x2", "x3"], 1), (&["y1", "x2", "y3"], -1)]));
        let dy4 = w.cyclic_derivative(q.arrow_by_name("y4").unwrap());
        assert_eq!(dy4, mk(&[(&["y1", "y2", "y3"], 1), (&["x1", "y2", "x3"], -1)]));
        assert_eq!(w.jacobian_relations().len(), 8);
        assert!(w
            .jacobian_relations()
            .iter()
            .all(|r| r.terms().all(|(p, _)| p.len() == 3)));
    }

    #[test]
    fn rotation_leaves_the_potential_and_derivatives_unchanged() {
        let q = square_dimer_quiver();
        let rotated = Potential::from_named_cycles(
            &q,
            &[
                (1, &["x3", "x4", "x1", "x2"]),
                (1, &["y2", "y3", "y4", "y1"]),
                (-1, &["y4", "x1", "y2", "x3"]),
                (-1, &["x4", "y1", "x2", "y3"]),
            ],
        )
        .unwrap();
        let original = square_dimer_potential();
        assert_eq!(original, rotated);
        for a in q.arrow_ids() {
            assert_eq!(original.cyclic_derivative(a), rotated.cyclic_derivative(a));
        }
    }

    #[test]
    fn three_cycle_jacobian_dimensions() {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .vertex("3")
            .arrow("a", "1", "2")
            .arrow("b", "2", "3")
            .arrow("c", "3", "1")
            .build()
            .unwrap();
        let w = Potential::from_named_cycles(&q, &[(1, &["a", "b", "c"])]).unwrap();
        let g = ArrowGrading::uniform(&q, 1);
        let pres = w.jacobian_presentation(g).unwrap();
        // relations bc, ca, ab kill everything past length 1
        let dims = pres.graded_dimensions(3, 8, 8).unwrap();
        assert_eq!(dims, vec![3, 3, 0, 0]);
    }
}
