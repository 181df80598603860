//! Noncommutative Gröbner bases for path-algebra ideals, with bounded
//! completion.
//!
//! The completion loop keeps the basis tip-interreduced: alive lead words
//! form an antichain under the subword relation. Superpositions longer than
//! the configured bound are skipped and recorded, so a finished basis knows
//! whether it is complete outright or only certified up to a length.
//!
//! Certification rule: a skipped superposition can only matter for ideal
//! elements whose words are longer than the bound. When every generator is
//! homogeneous in word length, components of length `<= bound` are exact;
//! without that homogeneity a truncated basis certifies nothing beyond
//! upper bounds on graded dimensions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::elem::PathElement;
use crate::error::{Inconclusive, StructuralError};
use crate::order::MonomialOrder;
use crate::quiver::{ArrowGrading, ArrowId, Path, Quiver};
use crate::scalar::Scalar;

/// Largest term of an element under `order`; `None` for zero.
pub fn lead_term<'a>(
    order: &MonomialOrder,
    x: &'a PathElement,
) -> Option<(&'a Path, &'a Scalar)> {
    x.terms().max_by(|(p, _), (q, _)| order.cmp(p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompleteTo {
    /// Every superposition was processed; the basis is a full Gröbner basis.
    All,
    /// Superpositions longer than this were skipped.
    Length(usize),
}

/// Which graded components the basis computes exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    AllLengths,
    UpToLength(usize),
    /// Truncated on generators that are not length-homogeneous: normal-word
    /// counts are only upper bounds.
    UpperBoundsOnly,
}

#[derive(Debug, Clone)]
pub struct GrobnerBasis {
    quiver: Arc<Quiver>,
    order: MonomialOrder,
    elements: Vec<PathElement>,
    leads: Vec<Path>,
    complete_to: CompleteTo,
    length_homogeneous: bool,
    max_lead_len: usize,
}

/// Run bounded completion on `gens`.
///
/// `superposition_bound` caps the length of superposition words considered;
/// anything longer is skipped and recorded in the result's completeness.
pub fn buchberger(
    quiver: &Arc<Quiver>,
    order: MonomialOrder,
    gens: &[PathElement],
    superposition_bound: usize,
) -> Result<GrobnerBasis, StructuralError> {
    let mut length_homogeneous = true;
    for g in gens {
        if !Arc::ptr_eq(g.quiver(), quiver) && **g.quiver() != **quiver {
            return Err(StructuralError::QuiverMismatch);
        }
        let mut lens = g.terms().map(|(p, _)| p.len());
        if let Some(first) = lens.next() {
            if lens.any(|l| l != first) {
                length_homogeneous = false;
            }
        }
    }
    let mut st = Completion {
        quiver: quiver.clone(),
        order,
        elements: Vec::new(),
        leads: Vec::new(),
        alive: Vec::new(),
        queue: BTreeSet::new(),
        cands: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
        skipped: false,
        bound: superposition_bound,
    };
    st.run()?;
    Ok(st.finish(length_homogeneous))
}

struct Completion {
    quiver: Arc<Quiver>,
    order: MonomialOrder,
    elements: Vec<PathElement>,
    leads: Vec<Path>,
    alive: Vec<bool>,
    /// (superposition length, i, j, overlap) — popped smallest-first.
    queue: BTreeSet<(usize, usize, usize, usize)>,
    cands: VecDeque<PathElement>,
    skipped: bool,
    bound: usize,
}

impl Completion {
    fn run(&mut self) -> Result<(), StructuralError> {
        loop {
            if let Some(h) = self.cands.pop_front() {
                self.insert(h)?;
                continue;
            }
            let Some(&key) = self.queue.iter().next() else { break };
            self.queue.remove(&key);
            let (slen, i, j, t) = key;
            if !self.alive[i] || !self.alive[j] {
                continue;
            }
            if slen > self.bound {
                self.skipped = true;
                continue;
            }
            let s = self.spoly(i, j, t);
            if !s.is_zero() {
                self.cands.push_back(s);
            }
        }
        Ok(())
    }

    /// S-polynomial for the overlap `suffix_t(lead_i) = prefix_t(lead_j)`.
    fn spoly(&self, i: usize, j: usize, t: usize) -> PathElement {
        let u = &self.leads[i];
        let v = &self.leads[j];
        let u_head = u.slice(&self.quiver, 0, u.len() - t);
        let v_tail = v.slice(&self.quiver, t, v.len());
        let left = self.elements[i].mul_path_right(&v_tail);
        let right = self.elements[j].mul_path_left(&u_head);
        left.sub(&right).expect("same quiver")
    }

    fn insert(&mut self, h: PathElement) -> Result<(), StructuralError> {
        let h = reduce_full(
            &self.quiver,
            &self.order,
            &self.elements,
            &self.leads,
            Some(&self.alive),
            h,
        );
        if h.is_zero() {
            return Ok(());
        }
        let (lw, lc) = lead_term(&self.order, &h).expect("nonzero");
        if lw.is_lazy() {
            return Err(StructuralError::Algebra(
                "ideal contains a combination of vertex idempotents".into(),
            ));
        }
        let lw = lw.clone();
        let h = h.scale(&lc.clone().inv());
        let k = self.elements.len();
        for i in 0..k {
            if self.alive[i] && find_occurrence(&lw, &self.leads[i]).is_some() {
                self.alive[i] = false;
                self.cands.push_back(self.elements[i].clone());
            }
        }
        self.elements.push(h);
        self.leads.push(lw);
        self.alive.push(true);
        for i in 0..=k {
            if !self.alive[i] {
                continue;
            }
            self.enqueue_overlaps(i, k);
            if i != k {
                self.enqueue_overlaps(k, i);
            }
        }
        Ok(())
    }

    /// Proper overlaps: a suffix of `lead_i` equal to a prefix of `lead_j`.
    fn enqueue_overlaps(&mut self, i: usize, j: usize) {
        let u = &self.leads[i];
        let v = &self.leads[j];
        let max_t = u.len().min(v.len());
        for t in 1..max_t {
            if u.arrows()[u.len() - t..] == v.arrows()[..t] {
                self.queue.insert((u.len() + v.len() - t, i, j, t));
            }
        }
        // equal-length distinct leads can only overlap fully when they
        // coincide, which interreduction rules out; t == max_t would be a
        // subword division, also ruled out.
    }

    fn finish(mut self, length_homogeneous: bool) -> GrobnerBasis {
        // tail-reduce: no tail word can contain the element's own lead, so
        // reducing against the whole alive basis is safe.
        for idx in 0..self.elements.len() {
            if !self.alive[idx] {
                continue;
            }
            let lead_path = self.leads[idx].clone();
            let lead_elem = PathElement::from_path(
                self.quiver.clone(),
                lead_path,
                // monic by construction
                lead_term(&self.order, &self.elements[idx]).unwrap().1.clone(),
            );
            let tail = self.elements[idx].sub(&lead_elem).expect("same quiver");
            let tail = reduce_full(
                &self.quiver,
                &self.order,
                &self.elements,
                &self.leads,
                Some(&self.alive),
                tail,
            );
            self.elements[idx] = lead_elem.add(&tail).expect("same quiver");
        }
        let mut pairs: Vec<(Path, PathElement)> = self
            .alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| (self.leads[i].clone(), self.elements[i].clone()))
            .collect();
        let order = self.order;
        pairs.sort_by(|(a, _), (b, _)| order.cmp(a, b));
        let max_lead_len = pairs.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let (leads, elements) = pairs.into_iter().unzip();
        GrobnerBasis {
            quiver: self.quiver,
            order,
            elements,
            leads,
            complete_to: if self.skipped {
                CompleteTo::Length(self.bound)
            } else {
                CompleteTo::All
            },
            length_homogeneous,
            max_lead_len,
        }
    }
}

/// First occurrence of `u` as a contiguous subword of `w`.
fn find_occurrence(u: &Path, w: &Path) -> Option<usize> {
    if u.len() > w.len() || u.is_lazy() {
        return None;
    }
    (0..=w.len() - u.len()).find(|&pos| w.arrows()[pos..pos + u.len()] == *u.arrows())
}

/// Full reduction: repeatedly rewrite the order-largest reducible word.
fn reduce_full(
    quiver: &Arc<Quiver>,
    order: &MonomialOrder,
    elements: &[PathElement],
    leads: &[Path],
    alive: Option<&[bool]>,
    mut x: PathElement,
) -> PathElement {
    let live = |i: usize| alive.map_or(true, |a| a[i]);
    loop {
        let mut best: Option<(Path, usize, usize)> = None;
        for (w, _) in x.terms() {
            if let Some((bw, _, _)) = &best {
                if order.cmp(w, bw) != std::cmp::Ordering::Greater {
                    continue;
                }
            }
            let hit = (0..leads.len())
                .filter(|&i| live(i))
                .find_map(|i| find_occurrence(&leads[i], w).map(|pos| (i, pos)));
            if let Some((i, pos)) = hit {
                best = Some((w.clone(), i, pos));
            }
        }
        let Some((w, i, pos)) = best else { return x };
        let c = x.coefficient(&w).expect("term present").clone();
        let u_len = leads[i].len();
        let prefix = w.slice(quiver, 0, pos);
        let suffix = w.slice(quiver, pos + u_len, w.len());
        let repl = elements[i].mul_path_left(&prefix).mul_path_right(&suffix);
        x = x.sub(&repl.scale(&c)).expect("same quiver");
    }
}

/// Result of a normal-word finiteness probe.
#[derive(Debug, Clone)]
pub enum LanguageSize {
    /// The language is certainly finite. `words` counts normal words of this
    /// basis (an upper bound for the true count when the basis is truncated).
    Finite { words: usize, max_len: usize },
    /// Certainly infinite (requires a complete basis); `cycle` is a closed
    /// path whose repetitions stay normal forever.
    Infinite { cycle: Path },
    Unknown(Inconclusive),
}

impl GrobnerBasis {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[PathElement] {
        &self.elements
    }

    pub fn leads(&self) -> &[Path] {
        &self.leads
    }

    pub fn complete_to(&self) -> CompleteTo {
        self.complete_to
    }

    pub fn is_complete(&self) -> bool {
        self.complete_to == CompleteTo::All
    }

    pub fn max_lead_len(&self) -> usize {
        self.max_lead_len
    }

    pub fn exactness(&self) -> Exactness {
        match self.complete_to {
            CompleteTo::All => Exactness::AllLengths,
            CompleteTo::Length(l) if self.length_homogeneous => Exactness::UpToLength(l),
            CompleteTo::Length(_) => Exactness::UpperBoundsOnly,
        }
    }

    pub fn normal_form(&self, x: &PathElement) -> PathElement {
        reduce_full(&self.quiver, &self.order, &self.elements, &self.leads, None, x.clone())
    }

    /// Ideal membership. `Ok(true)` is always sound; `Ok(false)` needs the
    /// basis to be exact on every length occurring in `x`.
    pub fn contains(&self, x: &PathElement) -> Result<bool, Inconclusive> {
        let nf = self.normal_form(x);
        if nf.is_zero() {
            return Ok(true);
        }
        match self.exactness() {
            Exactness::AllLengths => Ok(false),
            Exactness::UpToLength(l) => {
                if x.max_len() <= l && nf.max_len() <= l {
                    Ok(false)
                } else {
                    Err(self.truncation_report())
                }
            }
            Exactness::UpperBoundsOnly => Err(self.truncation_report()),
        }
    }

    fn truncation_report(&self) -> Inconclusive {
        let bound = match self.complete_to {
            CompleteTo::All => unreachable!("complete bases are exact"),
            CompleteTo::Length(l) => l,
        };
        Inconclusive {
            bound,
            reason: "basis truncated; normal forms beyond the bound are uncertified".into(),
            suggestion: Some(bound * 2),
        }
    }

    /// `true` when the word is divisible by no lead.
    pub fn is_normal_word(&self, w: &Path) -> bool {
        self.leads.iter().all(|u| find_occurrence(u, w).is_none())
    }

    /// Extend a level of normal words by one arrow, restricted to `allowed`.
    /// Only the new suffix needs checking: the rest of the word is normal.
    fn extend_level(&self, level: &[Path], allowed: &dyn Fn(ArrowId) -> bool) -> Vec<Path> {
        let mut next = Vec::new();
        for w in level {
            let end = self.quiver.target(w);
            for a in self.quiver.arrow_ids() {
                if !allowed(a) || self.quiver.arrow(a).source != end {
                    continue;
                }
                let mut arr = Vec::with_capacity(w.len() + 1);
                arr.extend_from_slice(w.arrows());
                arr.push(a);
                let blocked = self.leads.iter().any(|u| {
                    u.len() <= arr.len() && arr[arr.len() - u.len()..] == *u.arrows()
                });
                if !blocked {
                    next.push(Path::from_parts(w.source(), arr));
                }
            }
        }
        next
    }

    /// One-arrow extensions of a set of normal words, restricted to `allowed`.
    pub fn extend_restricted(
        &self,
        level: &[Path],
        allowed: &dyn Fn(ArrowId) -> bool,
    ) -> Vec<Path> {
        self.extend_level(level, allowed)
    }

    fn lazy_level(&self) -> Vec<Path> {
        self.quiver.vertices().map(|v| self.quiver.lazy(v)).collect()
    }

    /// Normal words grouped by length, `levels[l]` = words of length `l`,
    /// up to and including `max_len`.
    pub fn normal_words_by_length(&self, max_len: usize) -> Vec<Vec<Path>> {
        let mut levels = vec![self.lazy_level()];
        for l in 0..max_len {
            let next = self.extend_level(&levels[l], &|_| true);
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        levels
    }

    /// Dimensions of the graded components `0..=max_degree` of the quotient,
    /// counted through normal words. Exact or an honest refusal: the result
    /// accounts for basis truncation and for the enumeration cap.
    ///
    /// Words are not materialized. Whether an extension stays normal depends
    /// only on the last `max_lead_len - 1` arrows, so the frontier collapses
    /// to counts over (suffix window, degree) states — wild growth in the
    /// word count costs nothing here.
    pub fn graded_dimensions(
        &self,
        grading: &ArrowGrading,
        max_degree: u32,
        length_cap: usize,
    ) -> Result<Vec<usize>, Inconclusive> {
        let exact_len = match self.exactness() {
            Exactness::AllLengths => usize::MAX,
            Exactness::UpToLength(l) => l,
            Exactness::UpperBoundsOnly => {
                return Err(self.truncation_report());
            }
        };
        let window = self.max_lead_len().max(1) - 1;
        let mut counts = vec![0usize; max_degree as usize + 1];
        // states (end vertex, suffix window, degree) with multiplicities;
        // degrees only grow along extensions, so the frontier can drop
        // anything already past max_degree
        let mut level: BTreeMap<(u32, Vec<ArrowId>, u32), usize> = BTreeMap::new();
        for v in self.quiver.vertices() {
            level.insert((v.0, Vec::new(), 0), 1);
        }
        let mut len = 0usize;
        loop {
            if !level.is_empty() && len > exact_len {
                return Err(self.truncation_report());
            }
            for (&(_, _, d), &n) in &level {
                counts[d as usize] += n;
            }
            let mut next: BTreeMap<(u32, Vec<ArrowId>, u32), usize> = BTreeMap::new();
            for (&(end, ref suffix, d), &n) in &level {
                for a in self.quiver.arrow_ids() {
                    let arrow = self.quiver.arrow(a);
                    if arrow.source.0 != end {
                        continue;
                    }
                    let nd = d + grading.degree(a);
                    if nd > max_degree {
                        continue;
                    }
                    let mut arr = suffix.clone();
                    arr.push(a);
                    // a new lead occurrence must end at the new last letter,
                    // and leads fit inside window + 1
                    let blocked = self.leads.iter().any(|u| {
                        u.len() <= arr.len() && arr[arr.len() - u.len()..] == *u.arrows()
                    });
                    if blocked {
                        continue;
                    }
                    if arr.len() > window {
                        arr.remove(0);
                    }
                    *next.entry((arrow.target.0, arr, nd)).or_insert(0) += n;
                }
            }
            if next.is_empty() {
                return Ok(counts);
            }
            if len == length_cap {
                return Err(Inconclusive {
                    bound: length_cap,
                    reason: "normal words still open at the length cap".into(),
                    suggestion: Some(length_cap.max(1) * 2),
                });
            }
            level = next;
            len += 1;
        }
    }

    /// Normal words grouped by degree, `words[d]` = basis of the degree-`d`
    /// component, up to and including `max_degree`. Same exactness and cap
    /// accounting as [`graded_dimensions`](Self::graded_dimensions).
    pub fn normal_words_by_degree(
        &self,
        grading: &ArrowGrading,
        max_degree: u32,
        length_cap: usize,
    ) -> Result<Vec<Vec<Path>>, Inconclusive> {
        let exact_len = match self.exactness() {
            Exactness::AllLengths => usize::MAX,
            Exactness::UpToLength(l) => l,
            Exactness::UpperBoundsOnly => {
                return Err(self.truncation_report());
            }
        };
        let mut words: Vec<Vec<Path>> = vec![Vec::new(); max_degree as usize + 1];
        // degrees only grow along extensions: pruning the frontier by degree
        // is exact and keeps wild languages affordable
        let mut level = self.lazy_level();
        let mut len = 0usize;
        loop {
            if !level.is_empty() && len > exact_len {
                return Err(self.truncation_report());
            }
            for w in &level {
                let d = grading.path_degree(w);
                words[d as usize].push(w.clone());
            }
            let mut next = self.extend_level(&level, &|_| true);
            next.retain(|w| grading.path_degree(w) <= max_degree);
            if next.is_empty() {
                return Ok(words);
            }
            if len == length_cap {
                return Err(Inconclusive {
                    bound: length_cap,
                    reason: "normal words still open at the length cap".into(),
                    suggestion: Some(length_cap.max(1) * 2),
                });
            }
            level = next;
            len += 1;
        }
    }

    /// Total dimension of the quotient, when finite and certified.
    pub fn total_dimension(&self, length_cap: usize) -> Result<usize, Inconclusive> {
        let trivial = ArrowGrading::uniform(&self.quiver, 0);
        Ok(self.graded_dimensions(&trivial, 0, length_cap)?[0])
    }

    /// Finiteness of the set of normal words built from `allowed` arrows.
    ///
    /// Exhaustive enumeration decides small cases; otherwise a cycle search
    /// on the suffix graph (nodes: normal words of window length, edges:
    /// one-arrow extensions). No cycle means finite; a cycle is conclusive
    /// only for a complete basis, since a truncated basis admits too many
    /// words.
    pub fn restricted_language_size(
        &self,
        allowed: &dyn Fn(ArrowId) -> bool,
        probe_len: usize,
    ) -> LanguageSize {
        let relevant: Vec<&Path> = self
            .leads
            .iter()
            .filter(|u| u.arrows().iter().all(|&a| allowed(a)))
            .collect();
        let window = relevant.iter().map(|u| u.len()).max().unwrap_or(1).max(2) - 1;
        let horizon = probe_len.max(window);

        let mut levels = vec![self.lazy_level()];
        let mut total = levels[0].len();
        loop {
            let l = levels.len() - 1;
            let next = self.extend_level(&levels[l], allowed);
            if next.is_empty() {
                return LanguageSize::Finite { words: total, max_len: l };
            }
            total += next.len();
            levels.push(next);
            if levels.len() > horizon {
                break;
            }
        }

        // suffix graph on the window level
        let nodes = &levels[window];
        let index: BTreeMap<&Path, usize> =
            nodes.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut adj: Vec<Vec<(usize, ArrowId)>> = vec![Vec::new(); nodes.len()];
        for (i, w) in nodes.iter().enumerate() {
            for ext in self.extend_level(std::slice::from_ref(w), allowed) {
                let suffix = ext.slice(&self.quiver, ext.len() - window, ext.len());
                if let Some(&j) = index.get(&suffix) {
                    adj[i].push((j, *ext.arrows().last().expect("extended word")));
                }
            }
        }
        let Some((start, arrows)) = find_cycle(&adj) else {
            // acyclic suffix graph: keep enumerating, exhaustion is assured
            let safety = window + nodes.len() + 2;
            loop {
                let l = levels.len() - 1;
                let next = self.extend_level(&levels[l], allowed);
                if next.is_empty() {
                    return LanguageSize::Finite { words: total, max_len: l };
                }
                total += next.len();
                levels.push(next);
                assert!(levels.len() <= safety, "acyclic suffix graph must exhaust");
            }
        };
        if self.is_complete() {
            // arrows appended around the cycle form a closed pumpable path
            let cycle = Path::from_parts(self.quiver.target(&nodes[start]), arrows);
            return LanguageSize::Infinite { cycle };
        }
        let bound = match self.complete_to {
            CompleteTo::Length(l) => l,
            CompleteTo::All => unreachable!(),
        };
        LanguageSize::Unknown(Inconclusive {
            bound,
            reason: "suffix graph has a cycle but the basis is truncated".into(),
            suggestion: Some(bound * 2),
        })
    }

    /// Finiteness of the degree-zero part under `grading`.
    pub fn zero_degree_size(&self, grading: &ArrowGrading, probe_len: usize) -> LanguageSize {
        self.restricted_language_size(&|a| grading.degree(a) == 0, probe_len)
    }
}

/// First directed cycle by DFS: the node it passes through and the arrow
/// labels around it, in traversal order.
fn find_cycle(adj: &[Vec<(usize, ArrowId)>]) -> Option<(usize, Vec<ArrowId>)> {
    // iterative three-color DFS; the gray stack is the current path
    #[derive(Clone, Copy, PartialEq)]
    enum C {
        White,
        Gray,
        Black,
    }
    let mut color = vec![C::White; adj.len()];
    for start in 0..adj.len() {
        if color[start] != C::White {
            continue;
        }
        let mut stack: Vec<(usize, usize, Option<ArrowId>)> = vec![(start, 0, None)];
        color[start] = C::Gray;
        while let Some(&mut (v, ref mut i, _)) = stack.last_mut() {
            if *i < adj[v].len() {
                let (w, a) = adj[v][*i];
                *i += 1;
                match color[w] {
                    C::Gray => {
                        let p = stack
                            .iter()
                            .position(|&(node, _, _)| node == w)
                            .expect("gray nodes are on the stack");
                        let mut arrows: Vec<ArrowId> =
                            stack[p + 1..].iter().map(|&(_, _, a)| a.expect("entered via edge")).collect();
                        arrows.push(a);
                        return Some((w, arrows));
                    }
                    C::White => {
                        color[w] = C::Gray;
                        stack.push((w, 0, Some(a)));
                    }
                    C::Black => {}
                }
            } else {
                color[v] = C::Black;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn two_loops() -> Arc<Quiver> {
        Quiver::new()
            .vertex("v")
            .arrow("x", "v", "v")
            .arrow("y", "v", "v")
            .build()
            .unwrap()
    }

    fn elem(q: &Arc<Quiver>, terms: &[(&[&str], i64)]) -> PathElement {
        let mut out = PathElement::zero(q.clone());
        for (names, c) in terms {
            out.add_term(q.path(names).unwrap(), Scalar::integer(*c));
        }
        out
    }

    #[test]
    fn commuting_nilsquare_loops() {
        let q = two_loops();
        let gens = vec![
            elem(&q, &[(&["x", "y"], 1), (&["y", "x"], -1)]),
            elem(&q, &[(&["x", "x"], 1)]),
            elem(&q, &[(&["y", "y"], 1)]),
        ];
        let gb = buchberger(&q, MonomialOrder::LengthLex, &gens, 12).unwrap();
        assert!(gb.is_complete());
        let trivial = ArrowGrading::uniform(&q, 1);
        let dims = gb.graded_dimensions(&trivial, 4, 16).unwrap();
        assert_eq!(dims, vec![1, 2, 1, 0, 0]);
        assert_eq!(gb.total_dimension(16).unwrap(), 4);
        // membership: the ideal contains x*y*x but not x*y
        assert!(gb.contains(&elem(&q, &[(&["x", "y", "x"], 1)])).unwrap());
        assert!(!gb.contains(&elem(&q, &[(&["x", "y"], 1)])).unwrap());
    }

    #[test]
    fn normal_form_is_canonical() {
        let q = two_loops();
        let gens = vec![elem(&q, &[(&["y", "x"], 1), (&["x", "y"], -1)])];
        let gb = buchberger(&q, MonomialOrder::LengthLex, &gens, 10).unwrap();
        // y*x rewrites to x*y; normal form of y*x - x*y is zero
        let z = elem(&q, &[(&["y", "x"], 1), (&["x", "y"], -1)]);
        assert!(gb.normal_form(&z).is_zero());
        let nf = gb.normal_form(&elem(&q, &[(&["y", "x"], 1)]));
        assert_eq!(nf, elem(&q, &[(&["x", "y"], 1)]));
    }

    #[test]
    fn free_loop_is_infinite() {
        let q = Quiver::new().vertex("v").arrow("x", "v", "v").build().unwrap();
        let gb = buchberger(&q, MonomialOrder::LengthLex, &[], 10).unwrap();
        assert!(gb.is_complete());
        match gb.restricted_language_size(&|_| true, 6) {
            LanguageSize::Infinite { cycle } => {
                assert_eq!(cycle, q.path(&["x"]).unwrap());
            }
            other => panic!("expected infinite, got {other:?}"),
        }
    }

    #[test]
    fn nilpotent_loop_is_finite() {
        let q = Quiver::new().vertex("v").arrow("x", "v", "v").build().unwrap();
        let x3 = {
            let mut e = PathElement::zero(q.clone());
            e.add_term(q.path(&["x", "x", "x"]).unwrap(), Scalar::integer(1));
            e
        };
        let gb = buchberger(&q, MonomialOrder::LengthLex, &[x3], 10).unwrap();
        match gb.restricted_language_size(&|_| true, 64) {
            LanguageSize::Finite { words: 3, max_len: 2 } => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn completion_finds_hidden_elements() {
        // yx - xy and yy: the overlap y·yx forces yxy -> xyy -> 0 checks;
        // completion must add xyy (reduced from yxy) to stay confluent.
        let q = two_loops();
        let gens = vec![
            elem(&q, &[(&["y", "x"], 1), (&["x", "y"], -1)]),
            elem(&q, &[(&["y", "y"], 1)]),
        ];
        let gb = buchberger(&q, MonomialOrder::LengthLex, &gens, 12).unwrap();
        assert!(gb.is_complete());
        // x*y*y must reduce to zero: it equals (yx-xy, yy) combination
        assert!(gb.contains(&elem(&q, &[(&["x", "y", "y"], 1)])).unwrap());
        // quotient is k[x,y]/(y^2) transcribed: dims 1, 2, 2, 2, ...
        let trivial = ArrowGrading::uniform(&q, 1);
        let dims = gb.graded_dimensions(&trivial, 3, 8).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 2]);
    }

    #[test]
    fn truncated_runs_report_honestly() {
        // xyx - xxy generates an ideal whose completion does not stop early;
        // with a tight bound the basis must flag truncation and refuse
        // uncertified membership claims.
        let q = two_loops();
        let gens = vec![elem(&q, &[(&["x", "y", "x"], 1), (&["x", "x", "y"], -1)])];
        let gb = buchberger(&q, MonomialOrder::LengthLex, &gens, 6).unwrap();
        assert_eq!(gb.complete_to(), CompleteTo::Length(6));
        assert_eq!(gb.exactness(), Exactness::UpToLength(6));
        let long_word = elem(&q, &[(&["x", "y", "x", "y", "x", "y", "x", "y"], 1)]);
        assert!(gb.contains(&long_word).is_err());
    }

    #[test]
    fn degree_zero_part_detection() {
        // one loop of degree 0, one of degree 1, relation x^2: the degree-0
        // part is spanned by e, x even though words like t, xt, ... go on
        let q = two_loops(); // x, y; grade y with 1
        let g = ArrowGrading::from_degrees(&q, vec![0, 1]).unwrap();
        let x2 = elem(&q, &[(&["x", "x"], 1)]);
        let gb = buchberger(&q, MonomialOrder::DegreeLengthLex(g.clone()), &[x2], 10).unwrap();
        match gb.zero_degree_size(&g, 8) {
            LanguageSize::Finite { words: 2, max_len: 1 } => {}
            other => panic!("unexpected: {other:?}"),
        }
        // degree-d words alternate y's between dead x-runs, so each graded
        // piece is finite even though the language is not
        let dims = gb.graded_dimensions(&g, 1, 12).unwrap();
        assert_eq!(dims, vec![2, 4]); // {e, x} and {y, xy, yx, xyx}
        // with no relations at all the degree-1 piece really is infinite
        let free = buchberger(&q, MonomialOrder::LengthLex, &[], 10).unwrap();
        assert!(free.graded_dimensions(&g, 1, 12).is_err());
    }
}
