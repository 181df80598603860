//! Dimer models on the quiver-with-potential side.
//!
//! Faces are the potential's cycles, split by sign; a perfect matching is a
//! set of arrows meeting every face exactly once. A matching puts its arrows
//! in degree 1 and makes every Jacobian relation homogeneous. Consistency is
//! checked as feasibility of the standard R-charge system, decided exactly
//! by Fourier–Motzkin elimination over the rationals.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Inconclusive, KernelError, StageExt, StructuralError};
use crate::gb::LanguageSize;
use crate::potential::Potential;
use crate::present::Presentation;
use crate::quiver::{ArrowGrading, ArrowId, Path, Quiver};
use crate::scalar::Scalar;

/// A quiver with potential whose faces satisfy the dimer duality condition:
/// every arrow lies on exactly one positive and one negative face.
#[derive(Debug, Clone)]
pub struct DimerQP {
    quiver: Arc<Quiver>,
    positive: Vec<Path>,
    negative: Vec<Path>,
}

impl DimerQP {
    pub fn new(
        quiver: Arc<Quiver>,
        positive: Vec<Path>,
        negative: Vec<Path>,
    ) -> Result<DimerQP, StructuralError> {
        let mut counts = vec![[0usize; 2]; quiver.arrow_count()];
        for (side, faces) in [(0, &positive), (1, &negative)] {
            for p in faces {
                if !quiver.owns(p) {
                    return Err(StructuralError::QuiverMismatch);
                }
                if p.is_lazy() || quiver.target(p) != p.source() {
                    return Err(StructuralError::Algebra(
                        "faces must be nonempty cycles".into(),
                    ));
                }
                for a in p.arrows() {
                    counts[a.0 as usize][side] += 1;
                }
            }
        }
        for (i, c) in counts.iter().enumerate() {
            if *c != [1, 1] {
                return Err(StructuralError::Algebra(format!(
                    "arrow {} must lie on exactly one positive and one negative face",
                    quiver.arrow(ArrowId(i as u32)).name
                )));
            }
        }
        Ok(DimerQP { quiver, positive, negative })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn positive_faces(&self) -> &[Path] {
        &self.positive
    }

    pub fn negative_faces(&self) -> &[Path] {
        &self.negative
    }

    /// The superpotential Σ(positive) − Σ(negative). Degenerate models with
    /// coinciding faces of both signs cancel to an empty potential.
    pub fn potential(&self) -> Result<Potential, StructuralError> {
        let mut terms = Vec::new();
        for p in &self.positive {
            terms.push((Scalar::integer(1), p.clone()));
        }
        for p in &self.negative {
            terms.push((Scalar::integer(-1), p.clone()));
        }
        Potential::new(self.quiver.clone(), terms)
    }

    fn faces(&self) -> impl Iterator<Item = &Path> {
        self.positive.iter().chain(self.negative.iter())
    }

    /// Does the arrow set meet every face exactly once?
    pub fn is_perfect_matching(&self, arrows: &BTreeSet<ArrowId>) -> bool {
        self.faces().all(|p| {
            p.arrows().iter().filter(|a| arrows.contains(a)).count() == 1
        })
    }

    /// All perfect matchings by exact-cover backtracking over the faces,
    /// enumerated deterministically (arrows in precedence order).
    pub fn perfect_matchings(&self) -> Vec<BTreeSet<ArrowId>> {
        let faces: Vec<&Path> = self.faces().collect();
        // arrow -> faces it lies on; face -> arrows on it
        let mut on_faces = vec![Vec::new(); self.quiver.arrow_count()];
        let mut face_arrows = vec![Vec::new(); faces.len()];
        for (f, p) in faces.iter().enumerate() {
            for a in p.arrows() {
                on_faces[a.0 as usize].push(f);
                face_arrows[f].push(*a);
            }
        }
        for arrows in &mut face_arrows {
            arrows.sort();
            arrows.dedup();
        }
        let mut covered = vec![false; faces.len()];
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        fn search(
            covered: &mut Vec<bool>,
            chosen: &mut Vec<ArrowId>,
            on_faces: &[Vec<usize>],
            face_arrows: &[Vec<ArrowId>],
            out: &mut Vec<BTreeSet<ArrowId>>,
        ) {
            let Some(next) = covered.iter().position(|c| !c) else {
                out.push(chosen.iter().copied().collect());
                return;
            };
            for &a in &face_arrows[next] {
                if on_faces[a.0 as usize].iter().any(|&f| covered[f]) {
                    continue;
                }
                for &f in &on_faces[a.0 as usize] {
                    covered[f] = true;
                }
                chosen.push(a);
                search(covered, chosen, on_faces, face_arrows, out);
                chosen.pop();
                for &f in &on_faces[a.0 as usize] {
                    covered[f] = false;
                }
            }
        }
        search(&mut covered, &mut chosen, &on_faces, &face_arrows, &mut out);
        out.sort();
        out
    }

    /// Degree 1 on the matched arrows, 0 elsewhere.
    pub fn matching_grading(
        &self,
        matching: &BTreeSet<ArrowId>,
    ) -> Result<ArrowGrading, StructuralError> {
        if !self.is_perfect_matching(matching) {
            return Err(StructuralError::Algebra(
                "arrow set is not a perfect matching".into(),
            ));
        }
        ArrowGrading::from_degrees(
            &self.quiver,
            self.quiver
                .arrow_ids()
                .map(|a| if matching.contains(&a) { 1 } else { 0 })
                .collect(),
        )
    }

    /// Feasibility of the R-charge system: charges R(a) ∈ (0, 2) with every
    /// face summing to 2 and Σ(1 − R(a)) = 2 around every vertex.
    pub fn consistency_feasible(&self) -> bool {
        let n = self.quiver.arrow_count();
        let mut equalities: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for p in self.faces() {
            let mut row = vec![BigRational::zero(); n];
            for a in p.arrows() {
                row[a.0 as usize] += BigRational::one();
            }
            equalities.push((row, BigRational::from_integer(2.into())));
        }
        for v in self.quiver.vertices() {
            // incidences: loops count twice
            let mut row = vec![BigRational::zero(); n];
            let mut incidences = 0i64;
            for a in self.quiver.arrow_ids() {
                let arr = self.quiver.arrow(a);
                let mut m = 0;
                if arr.source == v {
                    m += 1;
                }
                if arr.target == v {
                    m += 1;
                }
                incidences += m;
                row[a.0 as usize] += BigRational::from_integer(m.into());
            }
            equalities
                .push((row, BigRational::from_integer((incidences - 2).into())));
        }
        let mut bounds: Vec<(Vec<BigRational>, BigRational, bool)> = Vec::new();
        for i in 0..n {
            let mut low = vec![BigRational::zero(); n];
            low[i] = -BigRational::one();
            bounds.push((low, BigRational::zero(), true));
            let mut high = vec![BigRational::zero(); n];
            high[i] = BigRational::one();
            bounds.push((high, BigRational::from_integer(2.into()), true));
        }
        rational_system_feasible(n, equalities, bounds)
    }
}

/// Exact feasibility of `Σ c·x = r` and `Σ c·x ≤ r` (strict when flagged):
/// Gaussian elimination on the equalities, then Fourier–Motzkin.
fn rational_system_feasible(
    n: usize,
    mut equalities: Vec<(Vec<BigRational>, BigRational)>,
    mut inequalities: Vec<(Vec<BigRational>, BigRational, bool)>,
) -> bool {
    // eliminate one variable per equality
    let mut e = 0;
    while e < equalities.len() {
        let Some(pivot) = equalities[e].0.iter().position(|c| !c.is_zero()) else {
            if !equalities[e].1.is_zero() {
                return false;
            }
            equalities.remove(e);
            continue;
        };
        let (prow, prhs) = equalities[e].clone();
        let pc = prow[pivot].clone();
        let substitute = |row: &mut Vec<BigRational>, rhs: &mut BigRational| {
            if row[pivot].is_zero() {
                return;
            }
            let f = row[pivot].clone() / pc.clone();
            for k in 0..n {
                let adj = &f * &prow[k];
                row[k] -= adj;
            }
            *rhs -= &f * &prhs;
        };
        for (j, (row, rhs)) in equalities.iter_mut().enumerate() {
            if j != e {
                substitute(row, rhs);
            }
        }
        for (row, rhs, _) in inequalities.iter_mut() {
            substitute(row, rhs);
        }
        e += 1;
    }
    // Fourier–Motzkin on the remaining inequalities
    for x in 0..n {
        let mut uppers = Vec::new();
        let mut lowers = Vec::new();
        let mut rest = Vec::new();
        for (row, rhs, strict) in inequalities {
            if row[x].is_zero() {
                rest.push((row, rhs, strict));
            } else if row[x].is_positive() {
                uppers.push((row, rhs, strict));
            } else {
                lowers.push((row, rhs, strict));
            }
        }
        for (urow, urhs, ustrict) in &uppers {
            let uc = urow[x].clone();
            for (lrow, lrhs, lstrict) in &lowers {
                let lc = -lrow[x].clone();
                let mut row = vec![BigRational::zero(); n];
                for k in 0..n {
                    row[k] = &urow[k] * &lc + &lrow[k] * &uc;
                }
                let rhs = urhs * &lc + lrhs * &uc;
                rest.push((row, rhs, *ustrict || *lstrict));
            }
        }
        inequalities = rest;
    }
    inequalities.iter().all(|(_, rhs, strict)| {
        if *strict {
            rhs.is_positive()
        } else {
            !rhs.is_negative()
        }
    })
}

/// Finiteness report for the degree-0 part of a graded presentation.
#[derive(Debug, Clone)]
pub enum ZeroPartSize {
    Finite { dim: usize },
    Infinite { cycle: Path },
}

/// Decide finiteness of the degree-0 component by cycle search on the
/// normal-word extension graph restricted to degree-0 arrows.
pub fn degree_zero_finite(
    pres: &Presentation,
    gb_bound: usize,
    probe_len: usize,
) -> Result<ZeroPartSize, KernelError> {
    let gb = pres.groebner(gb_bound).stage("groebner")?;
    match gb.zero_degree_size(pres.grading(), probe_len) {
        LanguageSize::Finite { words, max_len } => {
            // a truncated basis can only overcount; certify the words exact
            match gb.exactness() {
                crate::gb::Exactness::AllLengths => Ok(ZeroPartSize::Finite { dim: words }),
                crate::gb::Exactness::UpToLength(l) if max_len <= l => {
                    Ok(ZeroPartSize::Finite { dim: words })
                }
                _ => Err(Inconclusive {
                    bound: gb_bound,
                    reason: "degree-0 words finite but uncertified at this basis bound"
                        .into(),
                    suggestion: Some(gb_bound * 2),
                })
                .stage("degree-zero"),
            }
        }
        LanguageSize::Infinite { cycle } => Ok(ZeroPartSize::Infinite { cycle }),
        LanguageSize::Unknown(inc) => Err(inc).stage("degree-zero"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::degree_zero_part;
    use crate::scalar::Characteristic;

    fn square_dimer() -> DimerQP {
        let w = crate::potential::tests::square_dimer_potential();
        let q = w.quiver().clone();
        let positive =
            vec![q.path(&["x1", "x2", "x3", "x4"]).unwrap(), q.path(&["y1", "y2", "y3", "y4"]).unwrap()];
        let negative =
            vec![q.path(&["x1", "y2", "x3", "y4"]).unwrap(), q.path(&["y1", "x2", "y3", "x4"]).unwrap()];
        DimerQP::new(q, positive, negative).unwrap()
    }

    fn named(q: &Arc<Quiver>, names: &[&str]) -> BTreeSet<ArrowId> {
        names.iter().map(|s| q.arrow_by_name(s).unwrap()).collect()
    }

    #[test]
    fn square_model_matchings_agree_with_subset_scan() {
        let d = square_dimer();
        let q = d.quiver().clone();
        let found = d.perfect_matchings();
        assert!(found.contains(&named(&q, &["x4", "y4"])));
        // oracle: scan all arrow subsets
        let n = q.arrow_count();
        let mut expected = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: BTreeSet<ArrowId> =
                (0..n).filter(|i| mask & (1 << i) != 0).map(|i| ArrowId(i as u32)).collect();
            if d.is_perfect_matching(&set) {
                expected.push(set);
            }
        }
        expected.sort();
        assert_eq!(found, expected);
        for m in &found {
            assert!(d.is_perfect_matching(m));
        }
    }

    #[test]
    fn degenerate_two_face_model() {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .arrow("a", "1", "2")
            .arrow("b", "2", "1")
            .build()
            .unwrap();
        let cycle = q.path(&["a", "b"]).unwrap();
        let d = DimerQP::new(q.clone(), vec![cycle.clone()], vec![cycle]).unwrap();
        let found = d.perfect_matchings();
        assert_eq!(found, vec![named(&q, &["a"]), named(&q, &["b"])]);
        // R(a) + R(b) = 2 at the faces but 0 from the vertex condition
        assert!(!d.consistency_feasible());
    }

    #[test]
    fn square_model_is_consistent() {
        assert!(square_dimer().consistency_feasible());
    }

    #[test]
    fn matching_grading_makes_relations_homogeneous() {
        let d = square_dimer();
        let q = d.quiver().clone();
        let g = d.matching_grading(&named(&q, &["x4", "y4"])).unwrap();
        let w = d.potential().unwrap();
        for r in w.jacobian_relations() {
            assert!(r.homogeneous_degree(&g).is_some());
        }
        let bad = named(&q, &["x4", "x1"]);
        assert!(d.matching_grading(&bad).is_err());
    }

    #[test]
    fn square_model_degree_zero_part() {
        let d = square_dimer();
        let q = d.quiver().clone();
        let g = d.matching_grading(&named(&q, &["x4", "y4"])).unwrap();
        let pres = d.potential().unwrap().jacobian_presentation(g).unwrap();
        match degree_zero_finite(&pres, 8, 12).unwrap() {
            ZeroPartSize::Finite { dim } => assert_eq!(dim, 24),
            other => panic!("expected finite, got {other:?}"),
        }
        let part = degree_zero_part(&pres, 8, 12).unwrap();
        assert_eq!(part.algebra.dim(), 24);
        assert!(part.algebra.verify_associative());
    }

    #[test]
    fn loops_in_degree_zero_are_reported() {
        let q = Quiver::new().vertex("v").arrow("x", "v", "v").build().unwrap();
        let g = ArrowGrading::uniform(&q, 0);
        let pres = Presentation::new(q.clone(), g, vec![], Characteristic::Zero).unwrap();
        match degree_zero_finite(&pres, 8, 6).unwrap() {
            ZeroPartSize::Infinite { cycle } => {
                assert_eq!(cycle, q.path(&["x"]).unwrap());
            }
            other => panic!("expected infinite, got {other:?}"),
        }
    }

    #[test]
    fn all_arrows_matched_leaves_the_vertices() {
        let q = Quiver::new()
            .vertex("v")
            .arrow("x", "v", "v")
            .build()
            .unwrap();
        let g = ArrowGrading::uniform(&q, 1);
        let pres = Presentation::new(q, g, vec![], Characteristic::Zero).unwrap();
        match degree_zero_finite(&pres, 8, 6).unwrap() {
            ZeroPartSize::Finite { dim } => assert_eq!(dim, 1),
            other => panic!("expected finite, got {other:?}"),
        }
    }
}
