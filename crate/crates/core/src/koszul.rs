//! Bigraded Ext tables of the degree-zero part over a graded algebra, and
//! the Koszul-type dual algebra read off the diagonal.
//!
//! The table entry at `(i, j)` is `Ext^i(T, T⟨j⟩)` for `T` the degree-zero
//! part as a module. It is computed honestly from a minimal graded projective
//! resolution: per twist `j`, the graded Hom spaces pick out the shift-`j`
//! summands and the induced differentials need not vanish, since `T` is not
//! semisimple in general.
//!
//! When the table is supported on the line `i = m·j`, the diagonal carries an
//! algebra under Yoneda composition — products lift one cocycle to a chain
//! map and compose — which is returned in the same table format as the orbit
//! algebra for dimension-by-dimension comparison.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{SCAlgebra, SparseVec};
use crate::complex::{realize_map, realize_term, FreeKind, FreeMap, FreeTerm, Realized};
use crate::error::{KernelError, ParameterError, StageExt, StructuralError};
use crate::gdata::GradedAlgebraData;
use crate::matrix::{Matrix, RowSpace};
use crate::rep::{BlockMap, Elem, GradedModule, Slot};
use crate::resolve::{realize_generator_map, resolve_capped, Resolution};
use crate::scalar::{Characteristic, Scalar};

/// Basis bookkeeping for the degree-zero part: which algebra basis elements
/// land at each vertex, and where each sits in its vertex list.
pub struct DegreeZeroBasis {
    pub per_vertex: Vec<Vec<usize>>,
    pub pos: BTreeMap<usize, (usize, usize)>,
}

impl DegreeZeroBasis {
    fn of(alg: &SCAlgebra) -> DegreeZeroBasis {
        let mut per_vertex = vec![Vec::new(); alg.vertex_count()];
        let mut pos = BTreeMap::new();
        for b in 0..alg.dim() {
            if alg.degree(b) == 0 {
                let v = alg.endpoints(b).1;
                pos.insert(b, (v, per_vertex[v].len()));
                per_vertex[v].push(b);
            }
        }
        DegreeZeroBasis { per_vertex, pos }
    }

}

/// The degree-zero part as a graded right module (positive degrees act by
/// zero), together with its basis bookkeeping.
pub fn degree_zero_module(alg: &Arc<SCAlgebra>) -> (GradedModule, DegreeZeroBasis) {
    let basis = DegreeZeroBasis::of(alg);
    let ch = alg.characteristic();
    let mut dims: BTreeMap<Slot, usize> = BTreeMap::new();
    for (v, list) in basis.per_vertex.iter().enumerate() {
        if !list.is_empty() {
            dims.insert((v, 0), list.len());
        }
    }
    let mut action: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
    for b in 0..alg.dim() {
        if alg.degree(b) != 0 || alg.idempotent_index(b).is_some() {
            continue;
        }
        let (src, tgt) = alg.endpoints(b);
        let (rows, cols) = (basis.per_vertex[src].len(), basis.per_vertex[tgt].len());
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = Matrix::zero(rows, cols, ch);
        let mut nonzero = false;
        for (i, &x) in basis.per_vertex[src].iter().enumerate() {
            for (k, c) in alg.mul(&[(x, ch.one())], &[(b, ch.one())]) {
                let (w, j) = basis.pos[&k];
                debug_assert_eq!(w, tgt);
                if !c.is_zero() {
                    nonzero = true;
                }
                m.set(i, j, m.get(i, j).add(&c));
            }
        }
        if nonzero {
            action.insert((b, 0), m);
        }
    }
    let module = GradedModule::new(alg.clone(), dims, action).expect("degree-zero part is a module");
    (module, basis)
}

/// `dims[(i, j)] = dim Ext^i(T, T⟨j⟩)` for `i ≤ i_bound`.
#[derive(Debug, Clone)]
pub struct ExtTable {
    pub i_bound: usize,
    pub dims: BTreeMap<(usize, i64), usize>,
}

impl ExtTable {
    pub fn dim(&self, i: usize, j: i64) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn supported(&self) -> Vec<(usize, i64)> {
        self.dims.iter().filter(|&(_, &d)| d > 0).map(|(&k, _)| k).collect()
    }

    /// Supported entries off the line `i = m·j`.
    pub fn off_line(&self, m: usize) -> Vec<(usize, i64)> {
        self.supported()
            .into_iter()
            .filter(|&(i, j)| j < 0 || i as i64 != (m as i64) * j)
            .collect()
    }

    /// True when every supported entry sits on `i = m·j`.
    pub fn concentrated_on_line(&self, m: usize) -> bool {
        self.off_line(m).is_empty()
    }
}

/// Everything retained from the Ext computation that the dual needs: the
/// resolution, the Hom bases per (step, twist), and the Hom differentials.
pub struct ExtMachine {
    pub alg: Arc<SCAlgebra>,
    pub resolution: Resolution,
    pub t: GradedModule,
    pub basis: DegreeZeroBasis,
    /// `(k, j) -> [(summand, local index in T at the summand's vertex)]`.
    hom_bases: BTreeMap<(usize, i64), Vec<(usize, usize)>>,
    /// `(k, j) -> matrix of Hom(P_{k-1}, T⟨j⟩) -> Hom(P_k, T⟨j⟩)`,
    /// applied to row vectors.
    deltas: BTreeMap<(usize, i64), Matrix>,
    pub i_bound: usize,
}

impl ExtMachine {
    pub fn hom_dim(&self, k: usize, j: i64) -> usize {
        self.hom_bases.get(&(k, j)).map_or(0, |b| b.len())
    }

    fn term(&self, k: usize) -> Option<&FreeTerm> {
        self.resolution.complex.term(-(k as i32))
    }

    /// Dimensions of the cohomology of the Hom complex.
    pub fn table(&self) -> ExtTable {
        let mut dims = BTreeMap::new();
        for (&(k, j), basis) in &self.hom_bases {
            if k > self.i_bound {
                continue;
            }
            let rank_in = self.deltas.get(&(k, j)).map_or(0, Matrix::rank);
            let rank_out = self.deltas.get(&(k + 1, j)).map_or(0, Matrix::rank);
            let d = basis.len() - rank_in - rank_out;
            if d > 0 {
                dims.insert((k, j as i64), d);
            }
        }
        ExtTable { i_bound: self.i_bound, dims }
    }

    /// Representatives of `Ext^k(T, T⟨j⟩)`: cocycle rows reduced against the
    /// coboundary space, plus the space itself for later expression.
    pub fn cohomology(&self, k: usize, j: i64) -> CohomologyPiece {
        let ch = self.alg.characteristic();
        let n = self.hom_dim(k, j);
        let cocycles: Vec<Vec<Scalar>> = match self.deltas.get(&(k + 1, j)) {
            Some(d) => d.left_kernel(),
            None => (0..n)
                .map(|i| {
                    let mut v = vec![ch.zero(); n];
                    v[i] = ch.one();
                    v
                })
                .collect(),
        };
        let mut bound = RowSpace::new(n, ch);
        if let Some(d) = self.deltas.get(&(k, j)) {
            for i in 0..d.rows {
                bound.insert(d.row(i).to_vec());
            }
        }
        let mut reps: Vec<Vec<Scalar>> = Vec::new();
        let mut probe = RowSpace::new(n, ch);
        for r in bound.basis() {
            probe.insert(r.clone());
        }
        for z in cocycles {
            let red = bound.reduce(z);
            if probe.insert(red.clone()) {
                reps.push(red);
            }
        }
        CohomologyPiece { k, j, reps, bound, hom_dim: n, ch }
    }

    /// Interpret a Hom vector as generator images in `T⟨j⟩`.
    pub fn hom_vector_images(&self, k: usize, j: i64, v: &[Scalar]) -> Vec<Elem> {
        let term = self.term(k).cloned().unwrap_or_default();
        let mut images = vec![Elem::new(); term.len()];
        let Some(basis) = self.hom_bases.get(&(k, j)) else { return images };
        for (pos, &(s, local)) in basis.iter().enumerate() {
            if v[pos].is_zero() {
                continue;
            }
            let (vx, _) = term.summands[s];
            let slot = (vx, j);
            let e = images[s].entry(slot).or_insert_with(|| {
                vec![self.alg.characteristic().zero(); self.basis.per_vertex[vx].len()]
            });
            e[local] = e[local].add(&v[pos]);
        }
        images
    }

    /// Read generator images in `T⟨j⟩` back into a Hom vector; `None` when
    /// an image sits at a slot the graded Hom space does not reach.
    pub fn images_to_hom_vector(&self, k: usize, j: i64, images: &[Elem]) -> Option<Vec<Scalar>> {
        let ch = self.alg.characteristic();
        let term = self.term(k)?;
        let basis = self.hom_bases.get(&(k, j))?;
        let mut out = vec![ch.zero(); basis.len()];
        for (s, img) in images.iter().enumerate() {
            let (vx, _) = term.summands[s];
            for (&slot, vals) in img {
                if vals.iter().all(|c| c.is_zero()) {
                    continue;
                }
                if slot != (vx, j) {
                    return None;
                }
                for (local, c) in vals.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let pos = basis.iter().position(|&(s2, l2)| (s2, l2) == (s, local))?;
                    out[pos] = out[pos].add(c);
                }
            }
        }
        Some(out)
    }
}

/// A cohomology space with chosen representatives, in Hom coordinates.
pub struct CohomologyPiece {
    pub k: usize,
    pub j: i64,
    pub reps: Vec<Vec<Scalar>>,
    bound: RowSpace,
    pub hom_dim: usize,
    ch: Characteristic,
}

impl CohomologyPiece {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cocycle in the representative basis, modulo
    /// coboundaries. `None` when the vector is not in the span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let red = self.bound.reduce(v.to_vec());
        if self.reps.is_empty() {
            return red.iter().all(|c| c.is_zero()).then(Vec::new);
        }
        let m = Matrix::from_rows(self.reps.clone(), self.hom_dim, self.ch);
        let t = Matrix::from_rows(vec![red], self.hom_dim, self.ch);
        Matrix::express_rows(&m, &t).map(|x| x.row(0).to_vec())
    }
}

/// Compute the bigraded Ext table of the degree-zero part up to `i_bound`.
pub fn ext_machine(alg: &Arc<SCAlgebra>, i_bound: usize) -> Result<ExtMachine, KernelError> {
    Ok(ext_machine_capped(alg, i_bound, usize::MAX)?.0)
}

/// Like [`ext_machine`], but gives up on resolution covers larger than
/// `dim_cap` realized dimensions. The machine comes back with its `i_bound`
/// lowered to what the shortened resolution still supports, and the flag
/// reports whether the cap fired.
pub fn ext_machine_capped(
    alg: &Arc<SCAlgebra>,
    i_bound: usize,
    dim_cap: usize,
) -> Result<(ExtMachine, bool), KernelError> {
    let (t, basis) = degree_zero_module(alg);
    let (resolution, capped) =
        resolve_capped(alg, &t, i_bound + 1, dim_cap).stage("ext table")?;
    let i_bound = if resolution.complete || resolution.len == i_bound + 1 {
        i_bound
    } else {
        // the last built stage has no outgoing differential to cut by
        resolution.len.saturating_sub(1).min(i_bound)
    };
    let ch = alg.characteristic();
    let mut hom_bases: BTreeMap<(usize, i64), Vec<(usize, usize)>> = BTreeMap::new();
    let steps = resolution.len;
    for k in 0..=steps {
        let Some(term) = resolution.complex.term(-(k as i32)) else { continue };
        for (s, &(v, sh)) in term.summands.iter().enumerate() {
            for local in 0..basis.per_vertex[v].len() {
                hom_bases.entry((k, sh)).or_default().push((s, local));
            }
        }
    }
    let mut deltas: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
    for k in 1..=steps {
        let Some(d) = resolution.complex.diff(-(k as i32)) else { continue };
        let prev = resolution.complex.term(-(k as i32) + 1).expect("differential has a target");
        let cur = resolution.complex.term(-(k as i32)).expect("differential has a source");
        let twists: std::collections::BTreeSet<i64> = prev
            .summands
            .iter()
            .chain(cur.summands.iter())
            .map(|&(_, sh)| sh)
            .collect();
        for j in twists {
            let rows = hom_bases.get(&(k - 1, j)).map_or(0, |b| b.len());
            let cols = hom_bases.get(&(k, j)).map_or(0, |b| b.len());
            if rows == 0 || cols == 0 {
                continue;
            }
            let row_basis = hom_bases[&(k - 1, j)].clone();
            let col_basis = hom_bases[&(k, j)].clone();
            let mut m = Matrix::zero(rows, cols, ch);
            for (r, &(t_s, local)) in row_basis.iter().enumerate() {
                if prev.summands[t_s].1 != j {
                    continue;
                }
                let x = basis.per_vertex[prev.summands[t_s].0][local];
                for (c, &(u_s, u_local)) in col_basis.iter().enumerate() {
                    if cur.summands[u_s].1 != j {
                        continue;
                    }
                    let entry = &d.entries[t_s][u_s];
                    if entry.is_empty() {
                        continue;
                    }
                    let prod = alg.mul(&[(x, ch.one())], entry);
                    for (b, coeff) in prod {
                        debug_assert_eq!(alg.degree(b), 0, "Hom differential stays in degree 0");
                        let (w, l) = basis.pos[&b];
                        debug_assert_eq!(w, cur.summands[u_s].0);
                        if l == u_local {
                            m.set(r, c, m.get(r, c).add(&coeff));
                        }
                    }
                }
            }
            deltas.insert((k, j), m);
        }
    }
    let machine = ExtMachine { alg: alg.clone(), resolution, t, basis, hom_bases, deltas, i_bound };
    Ok((machine, capped))
}

/// One memoized Yoneda lift: chain maps `P_{mj+k} -> P_k⟨j⟩` over the same
/// resolution, realized for evaluation.
struct YonedaLift {
    j: i64,
    realized_stages: Vec<BlockMap>,
}

/// Shared realization cache for twisted terms of the resolution.
struct TwistCache {
    terms: BTreeMap<(usize, i64), Realized>,
    diffs: BTreeMap<(usize, i64), BlockMap>,
}

impl TwistCache {
    fn term(
        &mut self,
        alg: &Arc<SCAlgebra>,
        r: &Resolution,
        k: usize,
        j: i64,
    ) -> Option<&Realized> {
        let key = (k, j);
        if !self.terms.contains_key(&key) {
            let term = r.complex.term(-(k as i32))?;
            let twisted =
                FreeTerm::new(term.summands.iter().map(|&(v, s)| (v, s + j)).collect());
            self.terms.insert(key, realize_term(alg, FreeKind::Projective, &twisted));
        }
        self.terms.get(&key)
    }

    /// Realized `d_k⟨j⟩ : P_k⟨j⟩ -> P_{k-1}⟨j⟩`.
    fn diff(
        &mut self,
        alg: &Arc<SCAlgebra>,
        r: &Resolution,
        k: usize,
        j: i64,
    ) -> Option<&BlockMap> {
        let key = (k, j);
        if !self.diffs.contains_key(&key) {
            let d = r.complex.diff(-(k as i32))?.clone();
            self.term(alg, r, k, j)?;
            self.term(alg, r, k - 1, j)?;
            let src = self.terms[&(k, j)].clone();
            let tgt = self.terms[&(k - 1, j)].clone();
            self.diffs
                .insert(key, realize_map(alg, FreeKind::Projective, &src, &tgt, &d));
        }
        self.diffs.get(&key)
    }
}

fn solve_row(
    map: &BlockMap,
    slot: Slot,
    target: Option<&Vec<Scalar>>,
    rows: usize,
    ch: Characteristic,
) -> Option<Vec<Scalar>> {
    match map.block(slot) {
        Some(block) => {
            let t = match target {
                Some(t) => t.clone(),
                None => vec![ch.zero(); block.cols],
            };
            block.transpose().solve(&t)
        }
        None => match target {
            Some(t) if t.iter().any(|c| !c.is_zero()) => None,
            _ => Some(vec![ch.zero(); rows]),
        },
    }
}

/// Extend a Yoneda lift of the cocycle `psi` (at stage `mj`, twist `j`) out
/// to `to_stage`.
#[allow(clippy::too_many_arguments)]
fn extend_lift(
    alg: &Arc<SCAlgebra>,
    machine: &ExtMachine,
    cache: &mut TwistCache,
    lift: &mut YonedaLift,
    psi_images: &[Elem],
    mj: usize,
    to_stage: usize,
) -> Result<(), StructuralError> {
    let ch = alg.characteristic();
    let r = &machine.resolution;
    for k in lift.realized_stages.len()..=to_stage {
        let src_idx = -((mj + k) as i32);
        let Some(src_term) = r.complex.term(src_idx) else {
            lift.realized_stages.push(BlockMap::new());
            continue;
        };
        let src_r = &r.realized[&src_idx];
        let tgt_exists = cache.term(alg, r, k, lift.j).is_some();
        let mut blocks_src: Vec<(Slot, Vec<Scalar>)> = Vec::new();
        for s in 0..src_term.len() {
            let (slot, coord) = src_r.generator(alg, src_term, s);
            let mut gen = vec![ch.zero(); src_r.module.dim_at(slot)];
            gen[coord] = ch.one();
            let mut gen_elem = Elem::new();
            gen_elem.insert(slot, gen);
            let constraint = if k == 0 {
                psi_images[s].clone()
            } else {
                let d = &r.realized_diffs[&src_idx];
                lift.realized_stages[k - 1].apply(&d.apply(&gen_elem))
            };
            if !tgt_exists {
                if constraint.values().all(|v| v.iter().all(|c| c.is_zero())) {
                    blocks_src.push((slot, Vec::new()));
                    continue;
                }
                return Err(StructuralError::Algebra(
                    "Yoneda lift failed: resolution ended before the required stage".into(),
                ));
            }
            let solver: BlockMap = if k == 0 {
                r.augment.shift(lift.j)
            } else {
                cache.diff(alg, r, k, lift.j).expect("twisted differential").clone()
            };
            let rows = cache.term(alg, r, k, lift.j).unwrap().module.dim_at(slot);
            let y = solve_row(&solver, slot, constraint.get(&slot), rows, ch).ok_or_else(|| {
                StructuralError::Algebra("Yoneda lift failed: target is not in the image".into())
            })?;
            debug_assert!(
                constraint.iter().all(|(&sl, v)| sl == slot || v.iter().all(|c| c.is_zero())),
                "graded lift constraint concentrates on the generator slot"
            );
            blocks_src.push((slot, y));
        }
        let realized = if tgt_exists {
            let tgt_r = cache.term(alg, r, k, lift.j).unwrap();
            let mut entries =
                vec![vec![SparseVec::new(); src_term.len()]; tgt_r.coords.values().flatten().map(|&(s, _)| s + 1).max().unwrap_or(0)];
            for (s, (slot, y)) in blocks_src.iter().enumerate() {
                if y.is_empty() {
                    continue;
                }
                let mut e = Elem::new();
                e.insert(*slot, y.clone());
                for (t, u) in tgt_r.symbolic(&e).into_iter().enumerate() {
                    entries[t][s] = u;
                }
            }
            let fm = FreeMap { entries };
            let src_c = src_r.clone();
            realize_map(alg, FreeKind::Projective, &src_c, tgt_r, &fm)
        } else {
            BlockMap::new()
        };
        lift.realized_stages.push(realized);
    }
    Ok(())
}

/// The dual algebra on the diagonal `Ext^{m·d}(T, T⟨d⟩)`, with Yoneda
/// products, as explicit tables up to `degree_bound`.
pub fn koszul_dual(
    alg: &Arc<SCAlgebra>,
    m: usize,
    degree_bound: usize,
) -> Result<GradedAlgebraData, KernelError> {
    if m == 0 {
        return Err(KernelError::Parameter {
            stage: "dual algebra",
            source: ParameterError::Invalid("the diagonal slope must be at least 1".into()),
        });
    }
    let machine = ext_machine(alg, m * degree_bound)?;
    let ch = alg.characteristic();
    let pieces: Vec<CohomologyPiece> =
        (0..=degree_bound).map(|d| machine.cohomology(m * d, d as i64)).collect();
    let dims: Vec<usize> = pieces.iter().map(CohomologyPiece::dim).collect();
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(d, &n)| (0..n).map(|k| format!("x{d}.{k}")).collect())
        .collect();

    let mut cache = TwistCache { terms: BTreeMap::new(), diffs: BTreeMap::new() };
    // lifts[(j, y)] for y a representative index in degree j
    let mut lifts: BTreeMap<(usize, usize), YonedaLift> = BTreeMap::new();

    // Hom-vector images of every representative, by degree
    let images: Vec<Vec<Vec<Elem>>> = pieces
        .iter()
        .enumerate()
        .map(|(d, p)| {
            p.reps
                .iter()
                .map(|v| machine.hom_vector_images(m * d, d as i64, v))
                .collect()
        })
        .collect();

    // φ_x as a realized map P_{m·i} -> T⟨i⟩, per representative
    let mut phi: Vec<Vec<BlockMap>> = Vec::new();
    for (d, p) in pieces.iter().enumerate() {
        let mut per = Vec::new();
        let idx = -((m * d) as i32);
        for imgs in &images[d] {
            let map = match machine.resolution.complex.term(idx) {
                Some(term) => realize_generator_map(
                    alg,
                    term,
                    &machine.resolution.realized[&idx],
                    imgs,
                    &machine.t.shift(d as i64),
                ),
                None => BlockMap::new(),
            };
            per.push(map);
        }
        let _ = p;
        phi.push(per);
    }

    let mut tables: BTreeMap<(usize, usize), Vec<Vec<SparseVec>>> = BTreeMap::new();
    for i in 0..=degree_bound {
        for j in 0..=degree_bound - i {
            let mut table = vec![vec![SparseVec::new(); dims[j]]; dims[i]];
            let total = m * (i + j);
            let src_idx = -(total as i32);
            let have_term = machine.resolution.complex.term(src_idx).is_some();
            for yj in 0..dims[j] {
                let lift = lifts.entry((j, yj)).or_insert_with(|| YonedaLift {
                    j: j as i64,
                    realized_stages: Vec::new(),
                });
                extend_lift(
                    alg,
                    &machine,
                    &mut cache,
                    lift,
                    &images[j][yj],
                    m * j,
                    m * i,
                )
                .stage("dual algebra")?;
                if !have_term {
                    continue;
                }
                let src_term = machine.resolution.complex.term(src_idx).unwrap().clone();
                let src_r = &machine.resolution.realized[&src_idx];
                for xi in 0..dims[i] {
                    // χ = φ_x⟨j⟩ ∘ Ỹ_{m·i}: apply the lift, then the cocycle
                    let composed = lift.realized_stages[m * i].compose(&phi[i][xi].shift(j as i64));
                    let mut imgs = vec![Elem::new(); src_term.len()];
                    for (s, img) in imgs.iter_mut().enumerate() {
                        let (slot, coord) = src_r.generator(alg, &src_term, s);
                        let mut gen = vec![ch.zero(); src_r.module.dim_at(slot)];
                        gen[coord] = ch.one();
                        let mut e = Elem::new();
                        e.insert(slot, gen);
                        *img = composed.apply(&e);
                    }
                    let hv = machine
                        .images_to_hom_vector(total, (i + j) as i64, &imgs)
                        .ok_or(KernelError::Structural {
                            stage: "dual algebra",
                            source: StructuralError::Algebra(
                                "Yoneda product left the expected twist".into(),
                            ),
                        })?;
                    let coeffs = pieces[i + j].express(&hv).ok_or(KernelError::Structural {
                        stage: "dual algebra",
                        source: StructuralError::Algebra(
                            "Yoneda product is not a cocycle in the diagonal piece".into(),
                        ),
                    })?;
                    table[xi][yj] = coeffs
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                }
            }
            tables.insert((i, j), table);
        }
    }

    // the identity of Ext⁰ is the class of the augmentation
    let unit = {
        let idx = 0;
        let term = machine.resolution.complex.term(idx).expect("resolution has a cover");
        let src_r = &machine.resolution.realized[&idx];
        let mut imgs = vec![Elem::new(); term.len()];
        for (s, img) in imgs.iter_mut().enumerate() {
            let (slot, coord) = src_r.generator(alg, term, s);
            let mut gen = vec![ch.zero(); src_r.module.dim_at(slot)];
            gen[coord] = ch.one();
            let mut e = Elem::new();
            e.insert(slot, gen);
            *img = machine.resolution.augment.apply(&e);
        }
        let hv = machine
            .images_to_hom_vector(0, 0, &imgs)
            .expect("augmentation lives in twist zero");
        pieces[0]
            .express(&hv)
            .expect("augmentation class is a cocycle")
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    };

    Ok(GradedAlgebraData { ch, stride: m, dims, labels, tables, unit })
}

/// Outcome of the graded-symmetry scan: is there a degree-`top` linear form
/// making all pairings nondegenerate? Always certified — the moment-curve
/// scan runs past every determinant's degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricReport {
    pub symmetric: bool,
    pub top_degree: u32,
    pub reason: String,
}

/// Decide whether the graded algebra carries a symmetric structure: a linear
/// form on the top degree with `f(uv) = f(vu)` whose induced pairings
/// `Λ_d × Λ_{top-d} -> k` are all nondegenerate.
pub fn graded_symmetric_check(alg: &SCAlgebra) -> SymmetricReport {
    let ch = alg.characteristic();
    let top = alg.max_degree();
    let by_degree: Vec<Vec<usize>> = (0..=top)
        .map(|d| (0..alg.dim()).filter(|&b| alg.degree(b) == d).collect())
        .collect();
    let top_basis = &by_degree[top as usize];
    let nt = top_basis.len();
    let pos_top: BTreeMap<usize, usize> =
        top_basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();

    // dimension pairing must already be balanced
    for d in 0..=top {
        if by_degree[d as usize].len() != by_degree[(top - d) as usize].len() {
            return SymmetricReport {
                symmetric: false,
                top_degree: top,
                reason: format!(
                    "degree {d} and degree {} have different dimensions",
                    top - d
                ),
            };
        }
    }

    // f(uv - vu) = 0 for all homogeneous pairs: rows constrain f ∈ D(Λ_top)
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for d in 0..=top {
        for &u in &by_degree[d as usize] {
            for &v in &by_degree[(top - d) as usize] {
                let mut row = vec![ch.zero(); nt];
                for (b, c) in alg.mul(&[(u, ch.one())], &[(v, ch.one())]) {
                    row[pos_top[&b]] = row[pos_top[&b]].add(&c);
                }
                for (b, c) in alg.mul(&[(v, ch.one())], &[(u, ch.one())]) {
                    row[pos_top[&b]] = row[pos_top[&b]].sub(&c);
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let constraint = Matrix::from_rows(rows, nt, ch);
    let space = constraint.kernel_basis();
    if space.is_empty() {
        return SymmetricReport {
            symmetric: false,
            top_degree: top,
            reason: "no nonzero trace form balances uv against vu".into(),
        };
    }

    // scan f = Σ tᵏ f_k on the moment curve; past the total determinant
    // degree either some point works or none ever will
    let scan_bound: usize =
        (0..=top).map(|d| by_degree[d as usize].len()).sum::<usize>() * space.len() + 1;
    for t in 0..=scan_bound as i64 {
        let mut f = vec![ch.zero(); nt];
        let mut tk = ch.one();
        for fk in &space {
            for (i, c) in fk.iter().enumerate() {
                f[i] = f[i].add(&c.mul(&tk));
            }
            tk = tk.mul(&ch.from_int(t));
        }
        let mut all_good = true;
        for d in 0..=top {
            let rows_b = &by_degree[d as usize];
            let cols_b = &by_degree[(top - d) as usize];
            let mut p = Matrix::zero(rows_b.len(), cols_b.len(), ch);
            for (i, &u) in rows_b.iter().enumerate() {
                for (j, &v) in cols_b.iter().enumerate() {
                    let mut acc = ch.zero();
                    for (b, c) in alg.mul(&[(u, ch.one())], &[(v, ch.one())]) {
                        acc = acc.add(&c.mul(&f[pos_top[&b]]));
                    }
                    p.set(i, j, acc);
                }
            }
            if p.rank() != rows_b.len() {
                all_good = false;
                break;
            }
        }
        if all_good {
            return SymmetricReport {
                symmetric: true,
                top_degree: top,
                reason: format!("nondegenerate balanced trace form found (scan point {t})"),
            };
        }
    }
    SymmetricReport {
        symmetric: false,
        top_degree: top,
        reason: "every balanced trace form has a degenerate pairing".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::{trivial_extension, Presentation};
    use crate::quiver::{ArrowGrading, Quiver};

    fn kronecker_delta() -> Arc<SCAlgebra> {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .arrow("a", "1", "2")
            .arrow("b", "1", "2")
            .build()
            .unwrap();
        let grading = ArrowGrading::uniform(&q, 0);
        let p = Presentation::new(q, grading, Vec::new(), Characteristic::Zero).unwrap();
        let a = p.materialize(8, 8).unwrap().to_sc();
        Arc::new(trivial_extension(&a))
    }

    fn a2_delta() -> Arc<SCAlgebra> {
        let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2").build().unwrap();
        let grading = ArrowGrading::uniform(&q, 0);
        let p = Presentation::new(q, grading, Vec::new(), Characteristic::Zero).unwrap();
        let a = p.materialize(8, 8).unwrap().to_sc();
        Arc::new(trivial_extension(&a))
    }

    #[test]
    fn trivial_extensions_are_graded_symmetric_with_top_degree_one() {
        for alg in [kronecker_delta(), a2_delta()] {
            let r = graded_symmetric_check(&alg);
            assert!(r.symmetric, "{}", r.reason);
            assert_eq!(r.top_degree, 1);
        }
    }

    #[test]
    fn ext_of_extended_kronecker_sits_on_the_double_line() {
        let alg = kronecker_delta();
        let machine = ext_machine(&alg, 6).unwrap();
        let table = machine.table();
        assert!(table.concentrated_on_line(2), "off-line: {:?}", table.off_line(2));
        // the diagonal dimensions are the orbit algebra dimensions
        assert_eq!(table.dim(0, 0), 4);
        assert_eq!(table.dim(2, 1), 12);
        assert_eq!(table.dim(4, 2), 20);
        assert_eq!(table.dim(6, 3), 28);
    }

    #[test]
    fn ext_of_extended_a2_strays_off_the_line() {
        let alg = a2_delta();
        let machine = ext_machine(&alg, 4).unwrap();
        let table = machine.table();
        assert!(!table.concentrated_on_line(2));
    }

    #[test]
    fn dual_of_extended_kronecker_matches_orbit_dimensions() {
        let alg = kronecker_delta();
        let dual = koszul_dual(&alg, 2, 3).unwrap();
        assert_eq!(dual.dims, vec![4, 12, 20, 28]);
        assert!(dual.verify_unit());
        assert!(dual.verify_associative());
    }

    #[test]
    fn dual_degree_zero_is_the_whole_endomorphism_ring() {
        let alg = a2_delta();
        let dual = koszul_dual(&alg, 2, 0).unwrap();
        // End(T) ≅ T for the degree-zero part of a trivial extension
        assert_eq!(dual.dims, vec![3]);
    }
}
