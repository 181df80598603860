//! Graded presentations of quotient path algebras and the passages between
//! the presented and the materialized worlds.
//!
//! A [`Presentation`] is a quiver, an arrow grading, and homogeneous
//! relations. Materializing one produces an [`FDAlgebra`]: a certified
//! finite-dimensional algebra whose basis is the set of normal words of a
//! Gröbner basis. In the other direction, [`gabriel_presentation`] recovers
//! a presentation from any split basic structure-constant algebra — arrows
//! from `rad/rad²`, relations as minimal generators of the kernel along the
//! length filtration — and certifies the result by a dimension count.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{SCAlgebra, SparseVec};
use crate::elem::PathElement;
use crate::error::{Inconclusive, KernelError, StageExt, StructuralError};
use crate::gb::{buchberger, GrobnerBasis, LanguageSize};
use crate::matrix::{Matrix, RowSpace};
use crate::order::MonomialOrder;
use crate::quiver::{ArrowGrading, ArrowId, Path, Quiver, VertexId};
use crate::scalar::{Characteristic, Scalar};

#[derive(Debug, Clone)]
pub struct Presentation {
    quiver: Arc<Quiver>,
    grading: ArrowGrading,
    relations: Vec<PathElement>,
    ch: Characteristic,
}

impl Presentation {
    pub fn new(
        quiver: Arc<Quiver>,
        grading: ArrowGrading,
        relations: Vec<PathElement>,
        ch: Characteristic,
    ) -> Result<Self, StructuralError> {
        for r in &relations {
            if !Arc::ptr_eq(r.quiver(), &quiver) && **r.quiver() != *quiver {
                return Err(StructuralError::QuiverMismatch);
            }
            if r.is_zero() {
                continue;
            }
            if r.uniform_endpoints().is_none() {
                return Err(StructuralError::NonUniformRelation);
            }
            if r.homogeneous_degree(&grading).is_none() {
                return Err(StructuralError::InhomogeneousRelation);
            }
            for (p, c) in r.terms() {
                if p.is_lazy() {
                    return Err(StructuralError::Algebra(
                        "relations must lie in the arrow ideal".into(),
                    ));
                }
                if c.characteristic() != ch {
                    return Err(StructuralError::Algebra(
                        "relation coefficient in the wrong field".into(),
                    ));
                }
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Presentation { quiver, grading, relations, ch })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn grading(&self) -> &ArrowGrading {
        &self.grading
    }

    pub fn relations(&self) -> &[PathElement] {
        &self.relations
    }

    pub fn characteristic(&self) -> Characteristic {
        self.ch
    }

    pub fn default_order(&self) -> MonomialOrder {
        if self.grading.is_trivial() {
            MonomialOrder::LengthLex
        } else {
            MonomialOrder::DegreeLengthLex(self.grading.clone())
        }
    }

    pub fn groebner(&self, superposition_bound: usize) -> Result<GrobnerBasis, StructuralError> {
        buchberger(&self.quiver, self.default_order(), &self.relations, superposition_bound)
    }

    /// Dimensions of the graded components `0..=max_degree`.
    pub fn graded_dimensions(
        &self,
        max_degree: u32,
        gb_bound: usize,
        length_cap: usize,
    ) -> Result<Vec<usize>, KernelError> {
        let gb = self.groebner(gb_bound).stage("groebner")?;
        gb.graded_dimensions(&self.grading, max_degree, length_cap).stage("dimensions")
    }

    /// Materialize into a certified finite-dimensional algebra.
    pub fn materialize(&self, gb_bound: usize, length_cap: usize) -> Result<FDAlgebra, KernelError> {
        let gb = self.groebner(gb_bound).stage("groebner")?;
        let size = gb.restricted_language_size(&|_| true, length_cap);
        let max_len = match size {
            LanguageSize::Finite { max_len, .. } => max_len,
            LanguageSize::Infinite { .. } => {
                return Err(KernelError::Structural {
                    stage: "materialize",
                    source: StructuralError::Algebra(
                        "algebra is infinite-dimensional; it cannot be materialized".into(),
                    ),
                });
            }
            LanguageSize::Unknown(inc) => {
                return Err(inc).stage("materialize");
            }
        };
        match gb.exactness() {
            crate::gb::Exactness::AllLengths => {}
            crate::gb::Exactness::UpToLength(l) if max_len <= l => {}
            _ => {
                return Err(Inconclusive {
                    bound: gb_bound,
                    reason: "truncated basis does not certify the full basis of normal words"
                        .into(),
                    suggestion: Some(gb_bound * 2),
                })
                .stage("materialize");
            }
        }
        let mut basis: Vec<Path> =
            gb.normal_words_by_length(max_len).into_iter().flatten().collect();
        basis.sort();
        let index: BTreeMap<Path, usize> =
            basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(FDAlgebra { pres: self.clone(), gb, basis, index })
    }
}

/// A finite-dimensional quotient path algebra with its normal-word basis.
#[derive(Debug, Clone)]
pub struct FDAlgebra {
    pres: Presentation,
    gb: GrobnerBasis,
    basis: Vec<Path>,
    index: BTreeMap<Path, usize>,
}

impl FDAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn groebner(&self) -> &GrobnerBasis {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn word(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn index_of(&self, w: &Path) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.pres.quiver()
    }

    pub fn characteristic(&self) -> Characteristic {
        self.pres.ch
    }

    /// Expand an element in the normal-word basis.
    pub fn expand(&self, x: &PathElement) -> SparseVec {
        let nf = self.gb.normal_form(x);
        nf.terms()
            .map(|(p, c)| (*self.index.get(p).expect("normal word in basis"), c.clone()))
            .collect()
    }

    pub fn mul_words(&self, i: usize, j: usize) -> SparseVec {
        let Some(p) = self.quiver().compose(&self.basis[i], &self.basis[j]) else {
            return Vec::new();
        };
        self.expand(&PathElement::from_path(
            self.quiver().clone(),
            p,
            self.pres.ch.one(),
        ))
    }

    /// Degree of a basis word under the presentation grading.
    pub fn word_degree(&self, i: usize) -> u32 {
        self.pres.grading.path_degree(&self.basis[i])
    }

    pub fn word_endpoints(&self, i: usize) -> (VertexId, VertexId) {
        let w = &self.basis[i];
        (w.source(), self.quiver().target(w))
    }

    /// Forget the presentation: structure constants on the normal-word basis.
    pub fn to_sc(&self) -> SCAlgebra {
        let n = self.dim();
        let q = self.quiver();
        let products: Vec<Vec<SparseVec>> =
            (0..n).map(|i| (0..n).map(|j| self.mul_words(i, j)).collect()).collect();
        let idempotents: Vec<usize> = q
            .vertices()
            .map(|v| self.index_of(&q.lazy(v)).expect("lazy words are normal"))
            .collect();
        SCAlgebra::new(
            self.pres.ch,
            q.vertex_count(),
            idempotents,
            (0..n)
                .map(|i| {
                    let (s, t) = self.word_endpoints(i);
                    (s.0 as usize, t.0 as usize)
                })
                .collect(),
            (0..n).map(|i| self.word_degree(i)).collect(),
            (0..n).map(|i| q.display_path(&self.basis[i]).to_string()).collect(),
            products,
        )
        .expect("well-formed by construction")
    }
}

/// Trivial extension by the dual bimodule: basis `A ⊕ A*`, `A` in degree 0,
/// the dual part in degree 1, dual-square zero. With `c` the structure
/// constants of `A`, the mixed products are
/// `b_s · b_j* = Σ_m c_{ms}^j b_m*` and `b_j* · b_s = Σ_m c_{sm}^j b_m*`.
/// The dual of `e_u x e_v` lives in `e_v ΔA e_u`. Any grading on `A` is
/// forgotten: the extension is graded with `A` in degree 0 only.
pub fn trivial_extension(sc: &SCAlgebra) -> SCAlgebra {
    let n = sc.dim();
    let ch = sc.characteristic();
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            products[i][j] = sc.product(i, j).clone();
        }
    }
    // b_s · b_j*  — entry (j, coeff) of c[m][s] contributes coeff·b_m*
    for m in 0..n {
        for s in 0..n {
            for (j, coeff) in sc.product(m, s) {
                products[s][n + j].push((n + m, coeff.clone()));
            }
        }
    }
    // b_j* · b_s  — entry (j, coeff) of c[s][m] contributes coeff·b_m*
    for s in 0..n {
        for m in 0..n {
            for (j, coeff) in sc.product(s, m) {
                products[n + j][s].push((n + m, coeff.clone()));
            }
        }
    }
    for row in &mut products {
        for cell in row {
            cell.sort_by_key(|(k, _)| *k);
        }
    }
    let mut endpoints = Vec::with_capacity(2 * n);
    let mut degrees = Vec::with_capacity(2 * n);
    let mut names = Vec::with_capacity(2 * n);
    for i in 0..n {
        endpoints.push(sc.endpoints(i));
        degrees.push(0);
        names.push(sc.name(i).to_string());
    }
    for i in 0..n {
        let (u, v) = sc.endpoints(i);
        endpoints.push((v, u));
        degrees.push(1);
        names.push(format!("d_{}", sanitize(sc.name(i))));
    }
    let idempotents = (0..sc.vertex_count()).map(|v| sc.idempotent(v)).collect();
    SCAlgebra::new(ch, sc.vertex_count(), idempotents, endpoints, degrees, names, products)
        .expect("well-formed by construction")
}

/// Tensor product of presentations: product quiver, lifted relations from
/// each factor, and the commuting squares `(a,v)(u',b) − (u,b)(a,v')` for
/// every pair of arrows `a: u→u'` and `b: v→v'`.
pub fn tensor_presentation(
    left: &Presentation,
    right: &Presentation,
) -> Result<Presentation, StructuralError> {
    if left.characteristic() != right.characteristic() {
        return Err(StructuralError::Algebra("mismatched coefficient fields".into()));
    }
    let ch = left.characteristic();
    let (ql, qr) = (left.quiver(), right.quiver());
    let vname = |u: VertexId, v: VertexId| {
        format!("{}_{}", sanitize(ql.vertex_name(u)), sanitize(qr.vertex_name(v)))
    };
    let mut builder = Quiver::new();
    for u in ql.vertices() {
        for v in qr.vertices() {
            builder = builder.vertex(&vname(u, v));
        }
    }
    // arrows (a, v) then (u, b), with degrees inherited from the factors
    let mut degrees = Vec::new();
    for a in ql.arrow_ids() {
        let arr = ql.arrow(a);
        for v in qr.vertices() {
            builder = builder.arrow(
                &format!("{}_{}", sanitize(&arr.name), sanitize(qr.vertex_name(v))),
                &vname(arr.source, v),
                &vname(arr.target, v),
            );
            degrees.push(left.grading().degree(a));
        }
    }
    for u in ql.vertices() {
        for b in qr.arrow_ids() {
            let arr = qr.arrow(b);
            builder = builder.arrow(
                &format!("{}_{}", sanitize(ql.vertex_name(u)), sanitize(&arr.name)),
                &vname(u, arr.source),
                &vname(u, arr.target),
            );
            degrees.push(right.grading().degree(b));
        }
    }
    let quiver = builder.build()?;
    let grading = ArrowGrading::from_degrees(&quiver, degrees)?;
    let arrow_left = |a: ArrowId, v: VertexId| {
        let name =
            format!("{}_{}", sanitize(&ql.arrow(a).name), sanitize(qr.vertex_name(v)));
        quiver.arrow_by_name(&name).expect("declared")
    };
    let arrow_right = |u: VertexId, b: ArrowId| {
        let name =
            format!("{}_{}", sanitize(ql.vertex_name(u)), sanitize(&qr.arrow(b).name));
        quiver.arrow_by_name(&name).expect("declared")
    };
    let mut relations = Vec::new();
    for r in left.relations() {
        for v in qr.vertices() {
            let mut lifted = PathElement::zero(quiver.clone());
            for (p, c) in r.terms() {
                let arrows: Vec<ArrowId> =
                    p.arrows().iter().map(|a| arrow_left(*a, v)).collect();
                lifted.add_term(quiver.path_from_arrows(&arrows)?, c.clone());
            }
            relations.push(lifted);
        }
    }
    for r in right.relations() {
        for u in ql.vertices() {
            let mut lifted = PathElement::zero(quiver.clone());
            for (p, c) in r.terms() {
                let arrows: Vec<ArrowId> =
                    p.arrows().iter().map(|b| arrow_right(u, *b)).collect();
                lifted.add_term(quiver.path_from_arrows(&arrows)?, c.clone());
            }
            relations.push(lifted);
        }
    }
    for a in ql.arrow_ids() {
        let (u, u2) = (ql.arrow(a).source, ql.arrow(a).target);
        for b in qr.arrow_ids() {
            let (v, v2) = (qr.arrow(b).source, qr.arrow(b).target);
            let mut square = PathElement::zero(quiver.clone());
            square.add_term(
                quiver.path_from_arrows(&[arrow_left(a, v), arrow_right(u2, b)])?,
                ch.one(),
            );
            square.add_term(
                quiver.path_from_arrows(&[arrow_right(u, b), arrow_left(a, v2)])?,
                ch.from_int(-1),
            );
            relations.push(square);
        }
    }
    Presentation::new(quiver, grading, relations, ch)
}

/// The degree-0 subalgebra of a graded quotient, as a multiplication table.
#[derive(Debug, Clone)]
pub struct DegreeZeroPart {
    pub algebra: SCAlgebra,
    /// The normal words realizing the basis, parallel to the table's basis.
    pub words: Vec<Path>,
}

/// Extract the degree-0 part of a presented graded algebra. The degree-0
/// normal words must be finite in number and certified, otherwise the growth
/// witness is reported through the error.
pub fn degree_zero_part(
    pres: &Presentation,
    gb_bound: usize,
    probe_len: usize,
) -> Result<DegreeZeroPart, KernelError> {
    let gb = pres.groebner(gb_bound).stage("groebner")?;
    let grading = pres.grading();
    match gb.zero_degree_size(grading, probe_len) {
        LanguageSize::Finite { .. } => {}
        LanguageSize::Infinite { cycle } => {
            return Err(KernelError::Structural {
                stage: "degree-zero",
                source: StructuralError::Algebra(format!(
                    "degree-0 part is infinite dimensional: the cycle {} pumps normal words",
                    pres.quiver().display_path(&cycle)
                )),
            });
        }
        LanguageSize::Unknown(inc) => return Err(inc).stage("degree-zero"),
    }
    let quiver = pres.quiver();
    let allowed = |a: ArrowId| grading.degree(a) == 0;
    let mut words: Vec<Path> = Vec::new();
    let mut level: Vec<Path> = quiver.vertices().map(|v| quiver.lazy(v)).collect();
    while !level.is_empty() {
        words.extend(level.iter().cloned());
        level = gb.extend_restricted(&level, &allowed);
    }
    words.sort();
    let max_len = words.iter().map(|w| w.len()).max().unwrap_or(0);
    // structure constants need exact normal forms for products of the words
    match gb.exactness() {
        crate::gb::Exactness::AllLengths => {}
        crate::gb::Exactness::UpToLength(l) if 2 * max_len <= l => {}
        _ => {
            return Err(Inconclusive {
                bound: gb_bound,
                reason: "basis not certified up to twice the longest degree-0 word".into(),
                suggestion: Some((2 * max_len).max(gb_bound * 2)),
            })
            .stage("degree-zero");
        }
    }
    let index: BTreeMap<&Path, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let ch = pres.characteristic();
    let n = words.len();
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let Some(p) = quiver.compose(&words[i], &words[j]) else { continue };
            let nf =
                gb.normal_form(&PathElement::from_path(quiver.clone(), p, ch.one()));
            products[i][j] = nf
                .terms()
                .map(|(w, c)| (*index.get(w).expect("degree-0 normal word"), c.clone()))
                .collect();
        }
    }
    let idempotents = quiver
        .vertices()
        .map(|v| *index.get(&quiver.lazy(v)).expect("lazy word"))
        .collect();
    let algebra = SCAlgebra::new(
        ch,
        quiver.vertex_count(),
        idempotents,
        words
            .iter()
            .map(|w| (w.source().0 as usize, quiver.target(w).0 as usize))
            .collect(),
        vec![0; n],
        words.iter().map(|w| quiver.display_path(w).to_string()).collect(),
        products,
    )
    .expect("well-formed by construction");
    Ok(DegreeZeroPart { algebra, words })
}

/// Lengths of a minimal generating set of the ideal, with the quadratic flag.
/// A relation's length is its longest path; candidates are dropped exactly
/// when certified to lie in the ideal of the others.
#[derive(Debug, Clone)]
pub struct RelationDegrees {
    pub degrees: Vec<usize>,
    pub quadratic: bool,
}

pub fn minimal_relation_degrees(pres: &Presentation) -> RelationDegrees {
    let mut candidates: Vec<PathElement> = pres.relations().to_vec();
    candidates.sort_by_key(|r| r.max_len());
    let mut keep = vec![true; candidates.len()];
    for idx in 0..candidates.len() {
        let mut others = Vec::new();
        for (j, e) in candidates.iter().enumerate() {
            if j != idx && (j > idx || keep[j]) {
                others.push(e.clone());
            }
        }
        if in_ideal(pres.quiver(), pres.grading(), &others, &candidates[idx]) {
            keep[idx] = false;
        }
    }
    let mut degrees: Vec<usize> = candidates
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(r, _)| r.max_len())
        .collect();
    degrees.sort();
    let quadratic = degrees.iter().all(|&d| d == 2);
    RelationDegrees { degrees, quadratic }
}

/// Output of presentation extraction.
#[derive(Debug, Clone)]
pub struct GabrielOutput {
    pub presentation: Presentation,
    /// Image of each new arrow inside the input algebra.
    pub arrow_images: Vec<SparseVec>,
    /// Filtration level at which each minimal relation appears.
    pub relation_degrees: Vec<usize>,
}

/// Recover a quiver presentation from a split basic algebra.
///
/// Arrows: a homogeneous basis of `rad/rad²`, blockwise over vertex pairs and
/// degrees. Relations: minimal generators of the kernel of `kQ → A` along
/// the path-length filtration (new generators at level `d` are classes of
/// `I ∩ F_d` modulo `I ∩ F_{d-1}` and products of lower kernel elements with
/// arrows). The extraction is certified by comparing total dimensions.
pub fn gabriel_presentation(
    sc: &SCAlgebra,
    vertex_names: &[String],
) -> Result<GabrielOutput, KernelError> {
    let n = sc.dim();
    let ch = sc.characteristic();
    assert_eq!(vertex_names.len(), sc.vertex_count());
    let rad = sc.radical().stage("radical")?;
    // rad² as a row space
    let rad_vecs: Vec<SparseVec> = rad
        .basis()
        .iter()
        .map(|r| r.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    let mut rad2 = RowSpace::new(n, ch);
    for x in &rad_vecs {
        for y in &rad_vecs {
            let p = sc.mul(x, y);
            if !p.is_empty() {
                rad2.insert(sparse_to_dense(&p, n, ch));
            }
        }
    }
    // arrows: extend rad² to rad, blockwise in (source, target, degree)
    let mut arrow_images: Vec<SparseVec> = Vec::new();
    let mut arrow_data: Vec<(usize, usize, u32, String)> = Vec::new();
    let mut seen_names: BTreeMap<String, usize> = BTreeMap::new();
    for u in 0..sc.vertex_count() {
        for v in 0..sc.vertex_count() {
            for d in 0..=sc.max_degree() {
                let coords: Vec<usize> = (0..n)
                    .filter(|&i| sc.endpoints(i) == (u, v) && sc.degree(i) == d)
                    .collect();
                if coords.is_empty() {
                    continue;
                }
                // project radical into this block and echelonize
                let mut block = RowSpace::new(n, ch);
                for r in rad.basis() {
                    let mut proj = vec![ch.zero(); n];
                    for &i in &coords {
                        proj[i] = r[i].clone();
                    }
                    block.insert(proj);
                }
                let mut low = RowSpace::new(n, ch);
                for r in rad2.basis() {
                    let mut proj = vec![ch.zero(); n];
                    for &i in &coords {
                        proj[i] = r[i].clone();
                    }
                    low.insert(proj);
                }
                for r in block.basis() {
                    if low.insert(r.clone()) {
                        let img: SparseVec = r
                            .iter()
                            .cloned()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect();
                        let name = arrow_name(sc, &img, &mut seen_names);
                        arrow_images.push(img);
                        arrow_data.push((u, v, d, name));
                    }
                }
            }
        }
    }
    // build the quiver
    let mut builder = Quiver::new();
    for name in vertex_names {
        builder = builder.vertex(name);
    }
    for (u, v, _, name) in &arrow_data {
        builder = builder.arrow(name, &vertex_names[*u], &vertex_names[*v]);
    }
    let quiver = builder.build().stage("quiver")?;
    let grading = ArrowGrading::from_degrees(
        &quiver,
        arrow_data.iter().map(|(_, _, d, _)| *d).collect(),
    )
    .stage("quiver")?;

    // kernel along the length filtration
    let mut relations: Vec<PathElement> = Vec::new();
    let mut relation_degrees: Vec<usize> = Vec::new();
    // paths of each exact length with their images
    let mut frontier: Vec<(Path, SparseVec)> = quiver
        .vertices()
        .map(|v| {
            let p = quiver.lazy(v);
            let img = vec![(sc.idempotent(v.0 as usize), ch.one())];
            (p, img)
        })
        .collect();
    let mut all_paths: Vec<(Path, SparseVec)> = frontier.clone();
    // kernel vectors of the previous filtration level, as path elements
    let mut prev_kernel: Vec<PathElement> = Vec::new();
    let safety = n + 2;
    for length in 1..=safety {
        let mut next = Vec::new();
        for (p, img) in &frontier {
            let end = quiver.target(p);
            for a in quiver.arrow_ids() {
                if quiver.arrow(a).source != end {
                    continue;
                }
                let mut arr = p.arrows().to_vec();
                arr.push(a);
                let q2 = Path::from_parts(p.source(), arr);
                let img2 = sc.mul(img, &arrow_images[a.0 as usize]);
                next.push((q2, img2));
            }
        }
        frontier = next;
        let exhausted = frontier.is_empty();
        if exhausted {
            // no further paths, so no further relations: certify and stop
            let pres =
                Presentation::new(quiver.clone(), grading.clone(), relations.clone(), ch)
                    .stage("presentation")?;
            let bound = (2 * length).max(8);
            let gb = pres.groebner(bound).stage("groebner")?;
            if gb.total_dimension(n + 1).stage("dimensions")? == n {
                return Ok(GabrielOutput { presentation: pres, arrow_images, relation_degrees });
            }
            break;
        }
        all_paths.extend(frontier.iter().cloned());
        // kernel of evaluation on paths of length <= current
        let cols = all_paths.len();
        let mut m = Matrix::zero(n, cols, ch);
        for (j, (_, img)) in all_paths.iter().enumerate() {
            for (k, c) in img {
                m.set(*k, j, c.clone());
            }
        }
        let kernel = m.kernel_basis();
        let kernel_elems: Vec<PathElement> = kernel
            .iter()
            .map(|v| {
                let mut e = PathElement::zero(quiver.clone());
                for (j, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        e.add_term(all_paths[j].0.clone(), c.clone());
                    }
                }
                e
            })
            .collect();
        // known part: previous kernel + arrow·(prev kernel) + (prev kernel)·arrow
        let path_index: BTreeMap<&Path, usize> =
            all_paths.iter().enumerate().map(|(j, (p, _))| (p, j)).collect();
        let mut known = RowSpace::new(cols, ch);
        let push_elem = |space: &mut RowSpace, e: &PathElement| -> bool {
            let mut dense = vec![ch.zero(); cols];
            for (p, c) in e.terms() {
                let Some(&j) = path_index.get(p) else { return false };
                dense[j] = c.clone();
            }
            space.insert(dense)
        };
        for e in &prev_kernel {
            push_elem(&mut known, e);
            for a in quiver.arrow_ids() {
                let ap = quiver.path_from_arrows(&[a]).expect("arrow path");
                let left = e.mul_path_left(&ap);
                if !left.is_zero() {
                    push_elem(&mut known, &left);
                }
                let right = e.mul_path_right(&ap);
                if !right.is_zero() {
                    push_elem(&mut known, &right);
                }
            }
        }
        // candidate generators at this level: kernel vectors not explained by
        // one-arrow extensions of the previous kernel
        let mut fresh: Vec<PathElement> = Vec::new();
        for e in &kernel_elems {
            let mut dense = vec![ch.zero(); cols];
            for (p, c) in e.terms() {
                dense[*path_index.get(p).expect("path listed")] = c.clone();
            }
            if known.insert(dense) {
                fresh.push(e.clone());
            }
        }
        // consequences can also arise from cancellations above this length;
        // drop candidates lying in the ideal of everything else
        let mut keep = vec![true; fresh.len()];
        for idx in 0..fresh.len() {
            let mut others = relations.clone();
            for (j, e) in fresh.iter().enumerate() {
                if j != idx && (j > idx || keep[j]) {
                    others.push(e.clone());
                }
            }
            if in_ideal(&quiver, &grading, &others, &fresh[idx]) {
                keep[idx] = false;
            }
        }
        for (idx, e) in fresh.into_iter().enumerate() {
            if keep[idx] {
                relations.push(e);
                relation_degrees.push(length);
            }
        }
        prev_kernel = kernel_elems;
        // certification: equal dimensions means the ideal is fully generated
        if length >= 2 {
            let pres =
                Presentation::new(quiver.clone(), grading.clone(), relations.clone(), ch)
                    .stage("presentation")?;
            let bound = (2 * length).max(8);
            if let Ok(gb) = pres.groebner(bound) {
                if let Ok(total) = gb.total_dimension(n + 1) {
                    if total == n {
                        return Ok(GabrielOutput {
                            presentation: pres,
                            arrow_images,
                            relation_degrees,
                        });
                    }
                }
            }
        }
    }
    Err(KernelError::Structural {
        stage: "presentation",
        source: StructuralError::Algebra(
            "presentation extraction failed to close up; the input may not be split basic"
                .into(),
        ),
    })
}

/// Certified ideal membership, escalating the completion bound a few times.
/// Inconclusive answers count as "not a member" — that keeps a possibly
/// redundant generator, never loses one.
fn in_ideal(
    quiver: &Arc<Quiver>,
    grading: &ArrowGrading,
    gens: &[PathElement],
    x: &PathElement,
) -> bool {
    let order = if grading.is_trivial() {
        MonomialOrder::LengthLex
    } else {
        MonomialOrder::DegreeLengthLex(grading.clone())
    };
    for bound in [8usize, 16, 32] {
        let Ok(gb) = buchberger(quiver, order.clone(), gens, bound) else {
            return false;
        };
        match gb.contains(x) {
            Ok(ans) => return ans,
            Err(_) => continue,
        }
    }
    false
}

fn sparse_to_dense(x: &SparseVec, n: usize, ch: Characteristic) -> Vec<Scalar> {
    let mut out = vec![ch.zero(); n];
    for (k, c) in x {
        out[*k] = c.clone();
    }
    out
}

fn arrow_name(
    sc: &SCAlgebra,
    img: &SparseVec,
    seen: &mut BTreeMap<String, usize>,
) -> String {
    let base = if img.len() == 1 && img[0].1.is_one() {
        sanitize(sc.name(img[0].0))
    } else {
        "arr".to_string()
    };
    let count = seen.entry(base.clone()).or_insert(0);
    *count += 1;
    if *count == 1 && base != "arr" {
        base
    } else {
        format!("{base}{count}")
    }
}

fn sanitize(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if cleaned.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        format!("x{cleaned}")
    } else {
        cleaned
    }
}

/// Do two homogeneous generating sets cut out the same ideal?
pub fn ideals_equal(
    quiver: &Arc<Quiver>,
    order: MonomialOrder,
    first: &[PathElement],
    second: &[PathElement],
    gb_bound: usize,
) -> Result<bool, KernelError> {
    let gb1 = buchberger(quiver, order.clone(), first, gb_bound).stage("groebner")?;
    let gb2 = buchberger(quiver, order, second, gb_bound).stage("groebner")?;
    for r in second {
        if !gb1.contains(r).stage("membership")? {
            return Ok(false);
        }
    }
    for r in first {
        if !gb2.contains(r).stage("membership")? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path algebra of the triangle 1→2→3 with shortcut 1→3.
    fn triangle() -> FDAlgebra {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .vertex("3")
            .arrow("a1", "1", "2")
            .arrow("a2", "2", "3")
            .arrow("b", "1", "3")
            .build()
            .unwrap();
        let g = ArrowGrading::uniform(&q, 0);
        let pres = Presentation::new(q, g, vec![], Characteristic::Zero).unwrap();
        pres.materialize(16, 16).unwrap()
    }

    #[test]
    fn triangle_materializes_to_dim_seven() {
        let alg = triangle();
        assert_eq!(alg.dim(), 7);
        let sc = alg.to_sc();
        assert!(sc.verify_associative());
    }

    #[test]
    fn trivial_extension_is_symmetric_in_dimension() {
        let alg = triangle();
        let ext = trivial_extension(&alg.to_sc());
        assert_eq!(ext.dim(), 14);
        assert!(ext.verify_associative());
        assert_eq!(ext.graded_dims(), vec![7, 7]);
    }

    #[test]
    fn extension_of_triangle_presents_with_two_new_arrows() {
        let alg = triangle();
        let ext = trivial_extension(&alg.to_sc());
        let names: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let out = gabriel_presentation(&ext, &names).unwrap();
        let q = out.presentation.quiver();
        assert_eq!(q.arrow_count(), 5);
        let degs: Vec<u32> =
            q.arrow_ids().map(|a| out.presentation.grading().degree(a)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 0).count(), 3);
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2);
        let mut rel_degs = out.relation_degrees.clone();
        rel_degs.sort();
        assert_eq!(rel_degs, vec![2, 2, 2, 2, 3, 3]);
        // quotient dimensions match the extension, split by degree
        let dims = out.presentation.graded_dimensions(1, 16, 16).unwrap();
        assert_eq!(dims, vec![7, 7]);
    }

    #[test]
    fn extracted_ideal_matches_written_relations() {
        let alg = triangle();
        let ext = trivial_extension(&alg.to_sc());
        let names: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let out = gabriel_presentation(&ext, &names).unwrap();
        let q = out.presentation.quiver().clone();
        // duals of the two socle words become the degree-1 arrows
        let mk = |terms: &[(&[&str], i64)]| {
            let mut e = PathElement::zero(q.clone());
            for (names, c) in terms {
                e.add_term(q.path(names).unwrap(), Scalar::integer(*c));
            }
            e
        };
        let expected = vec![
            mk(&[(&["b", "d_b"], 1), (&["a1", "a2", "d_a1_a2"], -1)]),
            mk(&[(&["d_b", "b"], 1), (&["d_a1_a2", "a1", "a2"], -1)]),
            mk(&[(&["a2", "d_b"], 1)]),
            mk(&[(&["d_b", "a1"], 1)]),
            mk(&[(&["b", "d_a1_a2"], 1)]),
            mk(&[(&["d_a1_a2", "b"], 1)]),
        ];
        let order = out.presentation.default_order();
        assert!(ideals_equal(&q, order, out.presentation.relations(), &expected, 16).unwrap());
    }

    #[test]
    fn tensor_square_of_a2_is_the_commutative_square() {
        let q = Quiver::new().vertex("1").vertex("2").arrow("t", "1", "2").build().unwrap();
        let g = ArrowGrading::uniform(&q, 0);
        let pres = Presentation::new(q, g, vec![], Characteristic::Zero).unwrap();
        let sq = tensor_presentation(&pres, &pres).unwrap();
        assert_eq!(sq.quiver().vertex_count(), 4);
        assert_eq!(sq.quiver().arrow_count(), 4);
        assert_eq!(sq.relations().len(), 1);
        assert_eq!(sq.materialize(16, 16).unwrap().dim(), 9);
    }

    #[test]
    fn degree_zero_part_strips_positive_arrows() {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .vertex("3")
            .arrow("a1", "1", "2")
            .arrow("a2", "2", "3")
            .arrow("b", "1", "3")
            .build()
            .unwrap();
        let g = ArrowGrading::from_degrees(&q, vec![0, 0, 1]).unwrap();
        let pres = Presentation::new(q, g, vec![], Characteristic::Zero).unwrap();
        let part = degree_zero_part(&pres, 16, 16).unwrap();
        assert_eq!(part.algebra.dim(), 6);
        assert!(part.algebra.verify_associative());
        assert!(part.words.iter().all(|w| pres.grading().path_degree(w) == 0));
    }

    #[test]
    fn redundant_relations_are_dropped_from_the_minimal_multiset() {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .vertex("3")
            .arrow("a1", "1", "2")
            .arrow("a2", "2", "3")
            .build()
            .unwrap();
        let g = ArrowGrading::uniform(&q, 0);
        let r = PathElement::from_path(q.clone(), q.path(&["a1", "a2"]).unwrap(), Scalar::integer(1));
        let doubled = r.scale(&Scalar::integer(2));
        let pres =
            Presentation::new(q, g, vec![r, doubled], Characteristic::Zero).unwrap();
        let out = minimal_relation_degrees(&pres);
        assert_eq!(out.degrees, vec![2]);
        assert!(out.quadratic);
    }
}
