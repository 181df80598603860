//! Quivers, paths and arrow gradings.
//!
//! A quiver is a finite directed multigraph with named vertices and arrows.
//! Arrow declaration order is significant: it is the default precedence used
//! by monomial orders. Paths compose left to right, so `p.compose(q)` means
//! "first travel `p`, then `q`" and is defined when `p` ends where `q`
//! starts. The lazy path at a vertex is the unit for composition there.

use crate::error::StructuralError;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Vertices and arrows are addressed by dense ids in
/// declaration order; names are unique within their kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> QuiverBuilder {
        QuiverBuilder { vertices: Vec::new(), arrows: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0 as usize]
    }

    pub fn vertex_name(&self, id: VertexId) -> &str {
        &self.vertex_names[id.0 as usize]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    /// The lazy (length-zero) path at `v`.
    pub fn lazy(&self, v: VertexId) -> Path {
        assert!((v.0 as usize) < self.vertex_count(), "foreign vertex");
        Path { source: v, arrows: Vec::new() }
    }

    /// Path from a sequence of arrow names. Errors on unknown names or
    /// non-composable consecutive arrows.
    pub fn path(&self, names: &[&str]) -> Result<Path, StructuralError> {
        let mut ids = Vec::with_capacity(names.len());
        for n in names {
            let id = self
                .arrow_by_name(n)
                .ok_or_else(|| StructuralError::UnknownArrow(n.to_string()))?;
            ids.push(id);
        }
        self.path_from_arrows(&ids)
    }

    pub fn path_from_arrows(&self, ids: &[ArrowId]) -> Result<Path, StructuralError> {
        if ids.is_empty() {
            return Err(StructuralError::EmptyPathNeedsVertex);
        }
        for w in ids.windows(2) {
            let (a, b) = (self.arrow(w[0]), self.arrow(w[1]));
            if a.target != b.source {
                return Err(StructuralError::NonComposable {
                    first: a.name.clone(),
                    second: b.name.clone(),
                });
            }
        }
        Ok(Path { source: self.arrow(ids[0]).source, arrows: ids.to_vec() })
    }

    /// Composition `p` then `q`; `None` when endpoints do not match.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.target(p) != q.source {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { source: p.source, arrows })
    }

    pub fn target(&self, p: &Path) -> VertexId {
        match p.arrows.last() {
            Some(a) => self.arrow(*a).target,
            None => p.source,
        }
    }

    /// Checks that a path's arrows exist here and compose; used to reject
    /// paths that belong to a different quiver.
    pub fn owns(&self, p: &Path) -> bool {
        if (p.source.0 as usize) >= self.vertex_count() {
            return false;
        }
        let mut at = p.source;
        for id in &p.arrows {
            if (id.0 as usize) >= self.arrows.len() {
                return false;
            }
            let a = self.arrow(*id);
            if a.source != at {
                return false;
            }
            at = a.target;
        }
        true
    }

    pub fn display_path<'a>(&'a self, p: &'a Path) -> PathDisplay<'a> {
        PathDisplay { quiver: self, path: p }
    }
}

#[derive(Debug)]
pub struct QuiverBuilder {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
}

impl QuiverBuilder {
    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn arrow(mut self, name: &str, source: &str, target: &str) -> Self {
        self.arrows.push((name.to_string(), source.to_string(), target.to_string()));
        self
    }

    pub fn build(self) -> Result<Arc<Quiver>, StructuralError> {
        let mut vertex_index = BTreeMap::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), VertexId(i as u32)).is_some() {
                return Err(StructuralError::DuplicateName(name.clone()));
            }
        }
        let mut arrow_index = BTreeMap::new();
        let mut arrows = Vec::new();
        for (i, (name, src, tgt)) in self.arrows.iter().enumerate() {
            if vertex_index.contains_key(name) || arrow_index.contains_key(name) {
                return Err(StructuralError::DuplicateName(name.clone()));
            }
            let source = *vertex_index
                .get(src)
                .ok_or_else(|| StructuralError::UnknownVertex(src.clone()))?;
            let target = *vertex_index
                .get(tgt)
                .ok_or_else(|| StructuralError::UnknownVertex(tgt.clone()))?;
            arrow_index.insert(name.clone(), ArrowId(i as u32));
            arrows.push(Arrow { name: name.clone(), source, target });
        }
        Ok(Arc::new(Quiver {
            vertex_names: self.vertices,
            arrows,
            vertex_index,
            arrow_index,
        }))
    }
}

/// A path: a start vertex plus a composable arrow sequence (possibly empty).
/// Ordering is by length, then arrow ids pointwise, then source; monomial
/// orders refine this through [`crate::order::MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    arrows: Vec<ArrowId>,
    source: VertexId,
}

impl Path {
    /// Unchecked assembly — callers must guarantee composability.
    pub(crate) fn from_parts(source: VertexId, arrows: Vec<ArrowId>) -> Path {
        Path { source, arrows }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Subpath `[from, to)` of the arrow sequence; lazy subpaths need the
    /// quiver to locate their vertex.
    pub fn slice(&self, quiver: &Quiver, from: usize, to: usize) -> Path {
        assert!(from <= to && to <= self.arrows.len());
        if from == to {
            let v = if from == 0 {
                self.source
            } else {
                quiver.arrow(self.arrows[from - 1]).target
            };
            return Path { source: v, arrows: Vec::new() };
        }
        Path {
            source: quiver.arrow(self.arrows[from]).source,
            arrows: self.arrows[from..to].to_vec(),
        }
    }
}

pub struct PathDisplay<'a> {
    quiver: &'a Quiver,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_lazy() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.path.source));
        }
        let names: Vec<&str> =
            self.path.arrows.iter().map(|a| self.quiver.arrow(*a).name.as_str()).collect();
        write!(f, "{}", names.join("*"))
    }
}

/// Assignment of a non-negative degree to every arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowGrading {
    degrees: Vec<u32>,
}

impl ArrowGrading {
    pub fn uniform(quiver: &Quiver, degree: u32) -> Self {
        ArrowGrading { degrees: vec![degree; quiver.arrow_count()] }
    }

    pub fn from_degrees(quiver: &Quiver, degrees: Vec<u32>) -> Result<Self, StructuralError> {
        if degrees.len() != quiver.arrow_count() {
            return Err(StructuralError::GradingSize {
                expected: quiver.arrow_count(),
                got: degrees.len(),
            });
        }
        Ok(ArrowGrading { degrees })
    }

    pub fn degree(&self, a: ArrowId) -> u32 {
        self.degrees[a.0 as usize]
    }

    pub fn path_degree(&self, p: &Path) -> u32 {
        p.arrows().iter().map(|a| self.degree(*a)).sum()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(|d| *d == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_step() -> Arc<Quiver> {
        Quiver::new()
            .vertex("1")
            .vertex("2")
            .vertex("3")
            .arrow("a", "1", "2")
            .arrow("b", "2", "3")
            .build()
            .unwrap()
    }

    #[test]
    fn composition_respects_endpoints() {
        let q = two_step();
        let a = q.path(&["a"]).unwrap();
        let b = q.path(&["b"]).unwrap();
        let ab = q.compose(&a, &b).unwrap();
        assert_eq!(ab.len(), 2);
        assert_eq!(q.target(&ab), q.vertex_by_name("3").unwrap());
        assert!(q.compose(&b, &a).is_none());
    }

    #[test]
    fn lazy_paths_are_units() {
        let q = two_step();
        let a = q.path(&["a"]).unwrap();
        let e1 = q.lazy(q.vertex_by_name("1").unwrap());
        let e2 = q.lazy(q.vertex_by_name("2").unwrap());
        assert_eq!(q.compose(&e1, &a).unwrap(), a);
        assert_eq!(q.compose(&a, &e2).unwrap(), a);
        assert!(q.compose(&a, &e1).is_none());
    }

    #[test]
    fn path_degree_adds_along_composition() {
        let q = two_step();
        let g = ArrowGrading::from_degrees(&q, vec![1, 3]).unwrap();
        let ab = q.path(&["a", "b"]).unwrap();
        assert_eq!(g.path_degree(&ab), 4);
        assert_eq!(g.path_degree(&q.lazy(VertexId(0))), 0);
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = Quiver::new().vertex("v").vertex("v").build();
        assert!(r.is_err());
    }

    #[test]
    fn non_composable_path_rejected() {
        let q = two_step();
        assert!(q.path(&["b", "a"]).is_err());
    }
}
