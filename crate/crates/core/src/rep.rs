//! Graded right modules over a split-basic structure-constant algebra.
//!
//! A module is stored blockwise: one coordinate space per (vertex, internal
//! degree) slot. The action of a basis element `b` of degree `e` with
//! endpoints `u -> v` is a family of matrices, one per source slot `(u, d)`,
//! mapping into the slot `(v, d + e)`. Vectors are rows and matrices act on
//! the right, so acting by a product is acting by the factors left to right.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{SCAlgebra, SparseVec};
use crate::error::StructuralError;
use crate::matrix::{Matrix, RowSpace};
use crate::scalar::Scalar;

/// (vertex, internal degree) of a graded component.
pub type Slot = (usize, i64);

/// A module element, sparse over slots; missing slots are zero.
pub type Elem = BTreeMap<Slot, Vec<Scalar>>;

#[derive(Clone)]
pub struct GradedModule {
    alg: Arc<SCAlgebra>,
    dims: BTreeMap<Slot, usize>,
    /// `(basis element, source degree) -> action block`; missing keys are zero.
    /// Idempotents are implicit and never stored.
    action: BTreeMap<(usize, i64), Matrix>,
}

impl GradedModule {
    pub fn new(
        alg: Arc<SCAlgebra>,
        dims: BTreeMap<Slot, usize>,
        action: BTreeMap<(usize, i64), Matrix>,
    ) -> Result<Self, StructuralError> {
        let dims: BTreeMap<Slot, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let mut kept = BTreeMap::new();
        for ((b, d), m) in action {
            if alg.idempotent_index(b).is_some() {
                return Err(StructuralError::Algebra(
                    "module action on idempotents is implicit; do not store it".into(),
                ));
            }
            let (src, tgt) = alg.endpoints(b);
            let from = dims.get(&(src, d)).copied().unwrap_or(0);
            let to = dims.get(&(tgt, d + i64::from(alg.degree(b)))).copied().unwrap_or(0);
            if m.is_zero() {
                continue;
            }
            if m.rows != from || m.cols != to {
                return Err(StructuralError::Algebra(
                    "module action block does not match the slot dimensions".into(),
                ));
            }
            kept.insert((b, d), m);
        }
        let module = GradedModule { alg, dims, action: kept };
        debug_assert!(module.verify(), "module action is not multiplicative");
        Ok(module)
    }

    pub fn zero(alg: Arc<SCAlgebra>) -> Self {
        GradedModule { alg, dims: BTreeMap::new(), action: BTreeMap::new() }
    }

    /// Simple module at a vertex, concentrated in internal degree `d`.
    pub fn simple(alg: Arc<SCAlgebra>, v: usize, d: i64) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert((v, d), 1);
        GradedModule { alg, dims, action: BTreeMap::new() }
    }

    pub fn alg(&self) -> &Arc<SCAlgebra> {
        &self.alg
    }

    pub fn dims(&self) -> &BTreeMap<Slot, usize> {
        &self.dims
    }

    pub fn dim_at(&self, slot: Slot) -> usize {
        self.dims.get(&slot).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension at each vertex, summed over internal degrees.
    pub fn dim_vector(&self) -> Vec<usize> {
        let mut v = vec![0; self.alg.vertex_count()];
        for (&(vertex, _), &n) in &self.dims {
            v[vertex] += n;
        }
        v
    }

    /// The action block of basis element `b` out of degree `d`, if nonzero.
    pub fn action_block(&self, b: usize, d: i64) -> Option<&Matrix> {
        self.action.get(&(b, d))
    }

    /// Apply a basis element to a vector sitting in `slot`.
    pub fn act(&self, slot: Slot, b: usize, x: &[Scalar]) -> Option<(Slot, Vec<Scalar>)> {
        debug_assert_eq!(x.len(), self.dim_at(slot));
        if let Some(v) = self.alg.idempotent_index(b) {
            return if slot.0 == v { Some((slot, x.to_vec())) } else { None };
        }
        let (src, tgt) = self.alg.endpoints(b);
        if src != slot.0 {
            return None;
        }
        let out = (tgt, slot.1 + i64::from(self.alg.degree(b)));
        match self.action.get(&(b, slot.1)) {
            Some(m) => Some((out, m.apply_row(x))),
            None => {
                if self.dim_at(out) == 0 {
                    None
                } else {
                    Some((out, vec![self.alg.characteristic().zero(); self.dim_at(out)]))
                }
            }
        }
    }

    /// Apply an endpoint- and degree-homogeneous algebra element.
    pub fn act_elem(&self, slot: Slot, u: &SparseVec, x: &[Scalar]) -> Elem {
        let ch = self.alg.characteristic();
        let mut out: Elem = BTreeMap::new();
        for (b, c) in u {
            if let Some((tgt, y)) = self.act(slot, *b, x) {
                let acc = out.entry(tgt).or_insert_with(|| vec![ch.zero(); y.len()]);
                for (a, yi) in acc.iter_mut().zip(&y) {
                    *a = a.add(&c.mul(yi));
                }
            }
        }
        out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        out
    }

    /// Apply a (not necessarily homogeneous) algebra element to a full element.
    pub fn act_full(&self, x: &Elem, u: &SparseVec) -> Elem {
        let ch = self.alg.characteristic();
        let mut out: Elem = BTreeMap::new();
        for (&slot, xs) in x {
            for (slot2, ys) in self.act_elem(slot, u, xs) {
                let acc = out.entry(slot2).or_insert_with(|| vec![ch.zero(); ys.len()]);
                for (a, yi) in acc.iter_mut().zip(&ys) {
                    *a = a.add(yi);
                }
            }
        }
        out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        out
    }

    /// Regrade by `d -> d + j`, realizing the shift functor `⟨j⟩`.
    pub fn shift(&self, j: i64) -> GradedModule {
        GradedModule {
            alg: self.alg.clone(),
            dims: self.dims.iter().map(|(&(v, d), &n)| ((v, d + j), n)).collect(),
            action: self.action.iter().map(|(&(b, d), m)| ((b, d + j), m.clone())).collect(),
        }
    }

    /// The dual module over the opposite algebra: degrees negate, blocks
    /// transpose. `op` must be `self.alg().opposite()` (same basis order).
    pub fn dual(&self, op: &Arc<SCAlgebra>) -> GradedModule {
        debug_assert_eq!(op.dim(), self.alg.dim());
        let dims = self.dims.iter().map(|(&(v, d), &n)| ((v, -d), n)).collect();
        let action = self
            .action
            .iter()
            .map(|(&(b, d), m)| ((b, -(d + i64::from(self.alg.degree(b)))), m.transpose()))
            .collect();
        GradedModule { alg: op.clone(), dims, action }
    }

    /// Direct sum, with `self` coordinates first in every slot.
    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut dims = self.dims.clone();
        for (&slot, &n) in &other.dims {
            *dims.entry(slot).or_insert(0) += n;
        }
        let ch = self.alg.characteristic();
        let mut action = BTreeMap::new();
        let keys: std::collections::BTreeSet<(usize, i64)> =
            self.action.keys().chain(other.action.keys()).copied().collect();
        for (b, d) in keys {
            let (src, tgt) = self.alg.endpoints(b);
            let to = (tgt, d + i64::from(self.alg.degree(b)));
            let rows = dims.get(&(src, d)).copied().unwrap_or(0);
            let cols = dims.get(&to).copied().unwrap_or(0);
            let mut m = Matrix::zero(rows, cols, ch);
            let (r0, c0) = (self.dim_at((src, d)), self.dim_at(to));
            if let Some(a) = self.action.get(&(b, d)) {
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
            }
            if let Some(a) = other.action.get(&(b, d)) {
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        m.set(r0 + i, c0 + j, a.get(i, j).clone());
                    }
                }
            }
            action.insert((b, d), m);
        }
        GradedModule { alg: self.alg.clone(), dims, action }
    }

    /// Full multiplicativity check of the action against the product table.
    pub fn verify(&self) -> bool {
        let alg = &self.alg;
        let ch = alg.characteristic();
        let non_idem: Vec<usize> =
            (0..alg.dim()).filter(|&i| alg.idempotent_index(i).is_none()).collect();
        for &b in &non_idem {
            for &c in &non_idem {
                let (_, tb) = alg.endpoints(b);
                let (sc, _) = alg.endpoints(c);
                if tb != sc {
                    continue;
                }
                let prod = alg.product(b, c);
                for (&(vb, d), &n) in &self.dims {
                    if vb != alg.endpoints(b).0 {
                        continue;
                    }
                    // x (b then c) must equal x (b·c) on every slot basis vector
                    for i in 0..n {
                        let mut x = vec![ch.zero(); n];
                        x[i] = ch.one();
                        let via = match self.act((vb, d), b, &x) {
                            Some((mid, y)) => self.act(mid, c, &y),
                            None => None,
                        };
                        let mut direct = self.act_elem((vb, d), prod, &x);
                        if let Some((slot, y)) = via {
                            if y.iter().any(|s| !s.is_zero()) {
                                let zero = vec![ch.zero(); y.len()];
                                let d0 = direct.remove(&slot).unwrap_or(zero);
                                if d0 != y {
                                    return false;
                                }
                            }
                        }
                        if direct.values().any(|v| v.iter().any(|s| !s.is_zero())) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub(crate) fn from_parts(
        alg: Arc<SCAlgebra>,
        dims: BTreeMap<Slot, usize>,
        action: BTreeMap<(usize, i64), Matrix>,
    ) -> Self {
        let dims: BTreeMap<Slot, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let action = action
            .into_iter()
            .filter(|((b, d), m)| {
                let (src, tgt) = alg.endpoints(*b);
                !m.is_zero()
                    && dims.contains_key(&(src, *d))
                    && dims.contains_key(&(tgt, d + i64::from(alg.degree(*b))))
            })
            .collect();
        GradedModule { alg, dims, action }
    }
}

/// A degree-zero module map, stored as one matrix per shared slot.
/// Missing blocks are zero; rows index the source, columns the target.
#[derive(Clone)]
pub struct BlockMap {
    blocks: BTreeMap<Slot, Matrix>,
}

impl BlockMap {
    pub fn new() -> Self {
        BlockMap { blocks: BTreeMap::new() }
    }

    pub fn from_blocks(blocks: BTreeMap<Slot, Matrix>) -> Self {
        BlockMap { blocks: blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect() }
    }

    pub fn block(&self, slot: Slot) -> Option<&Matrix> {
        self.blocks.get(&slot)
    }

    pub fn blocks(&self) -> &BTreeMap<Slot, Matrix> {
        &self.blocks
    }

    pub fn set_block(&mut self, slot: Slot, m: Matrix) {
        if m.is_zero() {
            self.blocks.remove(&slot);
        } else {
            self.blocks.insert(slot, m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(|m| m.clone().rank()).sum()
    }

    /// `self` then `g`.
    pub fn compose(&self, g: &BlockMap) -> BlockMap {
        let mut out = BTreeMap::new();
        for (&slot, m) in &self.blocks {
            if let Some(n) = g.blocks.get(&slot) {
                let p = m.mul(n);
                if !p.is_zero() {
                    out.insert(slot, p);
                }
            }
        }
        BlockMap { blocks: out }
    }

    pub fn add(&self, other: &BlockMap) -> BlockMap {
        let mut out = self.blocks.clone();
        for (&slot, m) in &other.blocks {
            match out.remove(&slot) {
                Some(n) => {
                    let s = n.add(m);
                    if !s.is_zero() {
                        out.insert(slot, s);
                    }
                }
                None => {
                    out.insert(slot, m.clone());
                }
            }
        }
        BlockMap { blocks: out }
    }

    pub fn scale(&self, c: &Scalar) -> BlockMap {
        if c.is_zero() {
            return BlockMap::new();
        }
        BlockMap { blocks: self.blocks.iter().map(|(&s, m)| (s, m.scale(c))).collect() }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        let mut out = BTreeMap::new();
        for (&slot, xs) in x {
            if let Some(m) = self.blocks.get(&slot) {
                let y = m.apply_row(xs);
                if y.iter().any(|c| !c.is_zero()) {
                    out.insert(slot, y);
                }
            }
        }
        out
    }

    /// Transposed blocks, for dualizing a map between dualized modules.
    pub fn dual(&self) -> BlockMap {
        BlockMap { blocks: self.blocks.iter().map(|(&(v, d), m)| ((v, -d), m.transpose())).collect() }
    }

    /// The same map between `j`-shifted modules.
    pub fn shift(&self, j: i64) -> BlockMap {
        BlockMap { blocks: self.blocks.iter().map(|(&(v, d), m)| ((v, d + j), m.clone())).collect() }
    }

    /// Checks `f(x·b) = f(x)·b` between the given modules.
    pub fn is_module_map(&self, src: &GradedModule, tgt: &GradedModule) -> bool {
        let alg = src.alg();
        let ch = alg.characteristic();
        for (&slot, &n) in src.dims() {
            for b in 0..alg.dim() {
                if alg.idempotent_index(b).is_some() {
                    continue;
                }
                for i in 0..n {
                    let mut x = vec![ch.zero(); n];
                    x[i] = ch.one();
                    let lhs = match src.act(slot, b, &x) {
                        Some((mid, y)) => {
                            let mut e = Elem::new();
                            e.insert(mid, y);
                            self.apply(&e)
                        }
                        None => Elem::new(),
                    };
                    let rhs = {
                        let mut e = Elem::new();
                        e.insert(slot, x);
                        let fx = self.apply(&e);
                        let mut out = Elem::new();
                        for (&s2, v) in &fx {
                            if let Some((s3, y)) = tgt.act(s2, b, v) {
                                out.insert(s3, y);
                            }
                        }
                        out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
                        out
                    };
                    let mut lhs = lhs;
                    lhs.retain(|_, v| v.iter().any(|c| !c.is_zero()));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Default for BlockMap {
    fn default() -> Self {
        BlockMap::new()
    }
}

/// Kernel of a degree-zero map, with its inclusion into the source.
pub fn kernel_module(
    src: &GradedModule,
    f: &BlockMap,
    tgt: &GradedModule,
) -> (GradedModule, BlockMap) {
    let ch = src.alg().characteristic();
    let mut dims = BTreeMap::new();
    let mut incl = BTreeMap::new();
    for (&slot, &n) in src.dims() {
        let rows = match f.block(slot) {
            Some(m) => {
                debug_assert_eq!(m.cols, tgt.dim_at(slot));
                m.left_kernel()
            }
            None => (0..n)
                .map(|i| {
                    let mut v = vec![ch.zero(); n];
                    v[i] = ch.one();
                    v
                })
                .collect(),
        };
        if rows.is_empty() {
            continue;
        }
        dims.insert(slot, rows.len());
        incl.insert(slot, Matrix::from_rows(rows, n, ch));
    }
    let incl = BlockMap::from_blocks(incl);
    let mut action = BTreeMap::new();
    for (&slot, &kn) in &dims {
        let inc = incl.block(slot).expect("kernel inclusion block");
        for b in 0..src.alg().dim() {
            if src.alg().idempotent_index(b).is_some() {
                continue;
            }
            let (s, t) = src.alg().endpoints(b);
            if s != slot.0 {
                continue;
            }
            let out = (t, slot.1 + i64::from(src.alg().degree(b)));
            let Some(&on) = dims.get(&out) else { continue };
            let Some(a) = src.action_block(b, slot.1) else { continue };
            let image = inc.mul(a);
            if image.is_zero() {
                continue;
            }
            let out_inc = incl.block(out).expect("kernel inclusion block");
            let x = Matrix::express_rows(out_inc, &image)
                .expect("kernel is closed under the action");
            debug_assert_eq!(x.rows, kn);
            debug_assert_eq!(x.cols, on);
            action.insert((b, slot.1), x);
        }
    }
    let kernel = GradedModule::from_parts(src.alg().clone(), dims, action);
    (kernel, incl)
}

/// A subquotient span/bound presentation: `module` has basis the rows of
/// `reps` (independent modulo `bound`), and `express` rewrites an ambient
/// vector in that basis, failing when it is not in span(reps) + bound.
pub struct Subquotient {
    pub module: GradedModule,
    pub reps: BTreeMap<Slot, Matrix>,
    bound: BTreeMap<Slot, RowSpace>,
}

impl Subquotient {
    pub fn express(&self, slot: Slot, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let ch = self.module.alg().characteristic();
        let residue = match self.bound.get(&slot) {
            Some(b) => b.reduce(x.to_vec()),
            None => x.to_vec(),
        };
        match self.reps.get(&slot) {
            Some(r) => {
                let t = Matrix::from_rows(vec![residue], r.cols, ch);
                Matrix::express_rows(r, &t).map(|m| m.row(0).to_vec())
            }
            None => {
                if residue.iter().all(|c| c.is_zero()) {
                    Some(Vec::new())
                } else {
                    None
                }
            }
        }
    }

    /// The representative rows of the chosen basis at a slot.
    pub fn reps_at(&self, slot: Slot) -> Option<&Matrix> {
        self.reps.get(&slot)
    }
}

/// Build the subquotient (span of `cycles` + `bound`) / `bound` of `ambient`,
/// with the induced action. The cycle span must be action-stable modulo the
/// bound; this is asserted during construction.
pub fn subquotient(
    ambient: &GradedModule,
    cycles: &BTreeMap<Slot, Vec<Vec<Scalar>>>,
    bound: BTreeMap<Slot, RowSpace>,
) -> Subquotient {
    let ch = ambient.alg().characteristic();
    let mut reps = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for (&slot, rows) in cycles {
        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        let mut probe = RowSpace::new(ambient.dim_at(slot), ch);
        if let Some(b) = bound.get(&slot) {
            for r in b.basis() {
                probe.insert(r.clone());
            }
        }
        for row in rows {
            // store representatives reduced against the boundary space, so
            // that `express` can solve exactly instead of modulo `bound`
            let red = match bound.get(&slot) {
                Some(b) => b.reduce(row.clone()),
                None => row.clone(),
            };
            if probe.insert(red.clone()) {
                chosen.push(red);
            }
        }
        if !chosen.is_empty() {
            dims.insert(slot, chosen.len());
            reps.insert(slot, Matrix::from_rows(chosen, ambient.dim_at(slot), ch));
        }
    }
    // induced action on representatives
    let shell = Subquotient {
        module: GradedModule::from_parts(ambient.alg().clone(), dims.clone(), BTreeMap::new()),
        reps,
        bound,
    };
    let mut action = BTreeMap::new();
    for (&slot, reps) in &shell.reps {
        for b in 0..ambient.alg().dim() {
            if ambient.alg().idempotent_index(b).is_some() {
                continue;
            }
            let (s, t) = ambient.alg().endpoints(b);
            if s != slot.0 {
                continue;
            }
            let out = (t, slot.1 + i64::from(ambient.alg().degree(b)));
            let Some(&on) = dims.get(&out) else {
                // action must map into the span ∪ bound; verify it dies
                for i in 0..reps.rows {
                    if let Some((o, y)) = ambient.act(slot, b, reps.row(i)) {
                        let dead = match shell.bound.get(&o) {
                            Some(bd) => bd.contains(&y),
                            None => y.iter().all(|c| c.is_zero()),
                        };
                        assert!(dead, "subquotient span is not action-stable");
                    }
                }
                continue;
            };
            let mut m = Matrix::zero(reps.rows, on, ch);
            let mut nonzero = false;
            for i in 0..reps.rows {
                if let Some((o, y)) = ambient.act(slot, b, reps.row(i)) {
                    debug_assert_eq!(o, out);
                    let coeffs =
                        shell.express(o, &y).expect("subquotient span is not action-stable");
                    for (j, c) in coeffs.into_iter().enumerate() {
                        if !c.is_zero() {
                            nonzero = true;
                        }
                        m.set(i, j, c);
                    }
                }
            }
            if nonzero {
                action.insert((b, slot.1), m);
            }
        }
    }
    Subquotient {
        module: GradedModule::from_parts(ambient.alg().clone(), dims, action),
        reps: shell.reps,
        bound: shell.bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::Presentation;
    use crate::quiver::{ArrowGrading, Quiver};
    use crate::scalar::Characteristic;

    fn kronecker() -> Arc<SCAlgebra> {
        let q = Quiver::new()
            .vertex("1")
            .vertex("2")
            .arrow("a", "1", "2")
            .arrow("b", "1", "2")
            .build()
            .unwrap();
        let grading = ArrowGrading::uniform(&q, 0);
        let p = Presentation::new(q, grading, Vec::new(), Characteristic::Zero).unwrap();
        let fd = p.materialize(8, 8).unwrap();
        Arc::new(fd.to_sc())
    }

    #[test]
    fn simple_module_has_one_slot() {
        let alg = kronecker();
        let s = GradedModule::simple(alg, 1, 0);
        assert_eq!(s.total_dim(), 1);
        assert_eq!(s.dim_vector(), vec![0, 1]);
    }

    #[test]
    fn dual_negates_degrees_and_transposes() {
        let alg = kronecker();
        let op = Arc::new(alg.opposite());
        assert!(op.verify_associative());
        // regular module of the Kronecker algebra: slots (0,0) dim 1, (1,0) dim 3
        let mut dims = BTreeMap::new();
        dims.insert((0, 0), 1);
        dims.insert((1, 0), 3);
        let ch = alg.characteristic();
        let mut action = BTreeMap::new();
        // basis order in to_sc: e_0, e_1, a, b — find arrow indices by name
        let a = (0..alg.dim()).find(|&i| alg.name(i) == "a").unwrap();
        let b = (0..alg.dim()).find(|&i| alg.name(i) == "b").unwrap();
        // coordinates at vertex 1: (e_1-target basis) a, b and the slot of e_1 itself
        // regular module coords at (1,0): [e_1? no — basis elements with target 1: a, b, e_1]
        // build instead from the product table through act checks: use from_parts with
        // the left regular blocks
        let mut ma = Matrix::zero(1, 3, ch);
        ma.set(0, 0, ch.one());
        let mut mb = Matrix::zero(1, 3, ch);
        mb.set(0, 1, ch.one());
        action.insert((a, 0), ma);
        action.insert((b, 0), mb);
        let m = GradedModule::new(alg.clone(), dims, action).unwrap();
        let d = m.dual(&op);
        assert_eq!(d.dim_at((0, 0)), 1);
        assert_eq!(d.dim_at((1, 0)), 3);
        assert!(d.verify());
    }

    #[test]
    fn kernel_of_projection_is_stable() {
        let alg = kronecker();
        let ch = alg.characteristic();
        let a = (0..alg.dim()).find(|&i| alg.name(i) == "a").unwrap();
        // P_0 realized by hand: slot (0,0) = {e_0}, slot (1,0) = {a, b}
        let mut dims = BTreeMap::new();
        dims.insert((0, 0), 1);
        dims.insert((1, 0), 2);
        let mut action = BTreeMap::new();
        let mut ma = Matrix::zero(1, 2, ch);
        ma.set(0, 0, ch.one());
        let b = (0..alg.dim()).find(|&i| alg.name(i) == "b").unwrap();
        let mut mb = Matrix::zero(1, 2, ch);
        mb.set(0, 1, ch.one());
        action.insert((a, 0), ma);
        action.insert((b, 0), mb);
        let p0 = GradedModule::new(alg.clone(), dims, action).unwrap();
        // quotient map onto the simple at vertex 0
        let s0 = GradedModule::simple(alg.clone(), 0, 0);
        let mut f = BlockMap::new();
        f.set_block((0, 0), Matrix::identity(1, ch));
        assert!(f.is_module_map(&p0, &s0));
        let (k, incl) = kernel_module(&p0, &f, &s0);
        assert_eq!(k.total_dim(), 2);
        assert_eq!(k.dim_vector(), vec![0, 2]);
        assert!(!incl.is_zero());
        assert!(k.verify());
    }
}
