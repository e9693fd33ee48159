//! Plain undirected simple graphs with the subgraph predicates and
//! rewrites (subdivide, contract, delete) everything else builds on.
//!
//! Values are immutable after construction; rewrites return new graphs.
//! Fresh vertex ids are allocated monotonically, so construction
//! sequences are deterministic and reproducible.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::label::{EdgeColor, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered pair of distinct vertices, stored normalized (lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Edge {
        assert_ne!(a, b, "self-loops are not representable");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(&self) -> VertexId {
        self.0
    }

    pub fn hi(&self) -> VertexId {
        self.1
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`; panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            assert_eq!(self.1, v, "vertex not on edge");
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} not in graph")]
    MissingVertex(VertexId),
    #[error("edge {0} not in graph")]
    MissingEdge(Edge),
    #[error("edge {0} already present")]
    DuplicateEdge(Edge),
    #[error("label {0} already used by vertex {1}")]
    DuplicateLabel(VertexLabel, VertexId),
    #[error("contracting {0} would create a parallel edge through common neighbor {1}")]
    ContractionNotSimple(Edge, VertexId),
    #[error("edge subset does not belong to this graph")]
    ForeignSubset,
    #[error("graph has no vertices")]
    Empty,
}

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

/// Undirected simple graph over opaque vertex ids, with optional vertex
/// labels and edge colors.
#[derive(Debug, Clone)]
pub struct Graph {
    id: u64,
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
    labels: BTreeMap<VertexId, VertexLabel>,
    label_index: BTreeMap<VertexLabel, VertexId>,
    colors: BTreeMap<Edge, EdgeColor>,
    next_vertex: u32,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.labels == other.labels
            && self.colors == other.colors
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Graph {
        Graph {
            id: NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed),
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
            labels: BTreeMap::new(),
            label_index: BTreeMap::new(),
            colors: BTreeMap::new(),
            next_vertex: 0,
        }
    }

    /// Structural identity used to pin `EdgeSubset`s to their host.
    pub fn host_id(&self) -> u64 {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn label(&self, v: VertexId) -> Option<VertexLabel> {
        self.labels.get(&v).copied()
    }

    pub fn vertex_by_label(&self, l: VertexLabel) -> Option<VertexId> {
        self.label_index.get(&l).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = (VertexId, VertexLabel)> + '_ {
        self.labels.iter().map(|(v, l)| (*v, *l))
    }

    pub fn color(&self, e: Edge) -> EdgeColor {
        self.colors.get(&e).copied().unwrap_or(EdgeColor::Neutral)
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter(|e| e.touches(v))
            .map(|e| e.other(v))
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Adds a vertex with a fresh monotonically allocated id.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(v);
        v
    }

    pub fn add_labeled_vertex(&mut self, label: VertexLabel) -> Result<VertexId, GraphError> {
        let v = self.add_vertex();
        self.set_label(v, label)?;
        Ok(v)
    }

    pub fn set_label(&mut self, v: VertexId, label: VertexLabel) -> Result<(), GraphError> {
        if !self.vertices.contains(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        if let Some(&owner) = self.label_index.get(&label) {
            if owner != v {
                return Err(GraphError::DuplicateLabel(label, owner));
            }
        }
        if let Some(old) = self.labels.insert(v, label) {
            self.label_index.remove(&old);
        }
        self.label_index.insert(label, v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<Edge, GraphError> {
        if !self.vertices.contains(&a) {
            return Err(GraphError::MissingVertex(a));
        }
        if !self.vertices.contains(&b) {
            return Err(GraphError::MissingVertex(b));
        }
        let e = Edge::new(a, b);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e));
        }
        Ok(e)
    }

    pub fn add_colored_edge(
        &mut self,
        a: VertexId,
        b: VertexId,
        color: EdgeColor,
    ) -> Result<Edge, GraphError> {
        let e = self.add_edge(a, b)?;
        self.set_color(e, color);
        Ok(e)
    }

    pub fn set_color(&mut self, e: Edge, color: EdgeColor) {
        debug_assert!(self.edges.contains(&e));
        if color == EdgeColor::Neutral {
            self.colors.remove(&e);
        } else {
            self.colors.insert(e, color);
        }
    }

    /// Builds a graph from explicit vertex ids and edges; ids are kept as
    /// given (useful for fixtures and parsing).
    pub fn from_parts<I, J>(vertices: I, edges: J) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = u32>,
        J: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.vertices.insert(VertexId(v));
            g.next_vertex = g.next_vertex.max(v + 1);
        }
        for (a, b) in edges {
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    // ---- rewrites -------------------------------------------------------

    /// Replaces `e` by two edges through a fresh vertex carrying `label`.
    /// Both halves inherit the color of `e`.
    pub fn subdivide_edge(
        &self,
        e: Edge,
        label: VertexLabel,
    ) -> Result<(Graph, VertexId), GraphError> {
        if !self.edges.contains(&e) {
            return Err(GraphError::MissingEdge(e));
        }
        let mut g = self.clone();
        g.id = NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed);
        let color = g.color(e);
        g.edges.remove(&e);
        g.colors.remove(&e);
        let w = g.add_vertex();
        g.set_label(w, label)?;
        let (a, b) = e.endpoints();
        g.add_colored_edge(a, w, color)?;
        g.add_colored_edge(w, b, color)?;
        Ok((g, w))
    }

    /// Merges the endpoints of `e` into one fresh vertex carrying `label`.
    /// Errors if the endpoints have a common neighbor, which would break
    /// simplicity.
    pub fn contract_edge(
        &self,
        e: Edge,
        label: VertexLabel,
    ) -> Result<(Graph, VertexId), GraphError> {
        if !self.edges.contains(&e) {
            return Err(GraphError::MissingEdge(e));
        }
        let (u, v) = e.endpoints();
        let nu: BTreeSet<_> = self.neighbors(u).into_iter().collect();
        let nv: BTreeSet<_> = self.neighbors(v).into_iter().collect();
        if let Some(&c) = nu.intersection(&nv).next() {
            return Err(GraphError::ContractionNotSimple(e, c));
        }
        let mut g = self.clone();
        g.id = NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed);
        let w = g.add_vertex();
        g.set_label(w, label)?;
        for old in [u, v] {
            for n in self.neighbors(old) {
                if n == u || n == v {
                    continue;
                }
                let oe = Edge::new(old, n);
                let color = self.color(oe);
                g.edges.remove(&oe);
                g.colors.remove(&oe);
                g.add_colored_edge(w, n, color)?;
            }
        }
        g.edges.remove(&e);
        g.colors.remove(&e);
        for old in [u, v] {
            g.vertices.remove(&old);
            if let Some(l) = g.labels.remove(&old) {
                g.label_index.remove(&l);
            }
        }
        Ok((g, w))
    }

    /// Removes `v` and all incident edges.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        if !self.vertices.contains(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        let mut g = self.clone();
        g.id = NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed);
        g.edges.retain(|e| !e.touches(v));
        g.colors.retain(|e, _| !e.touches(v));
        g.vertices.remove(&v);
        if let Some(l) = g.labels.remove(&v) {
            g.label_index.remove(&l);
        }
        Ok(g)
    }

    // ---- connectivity ---------------------------------------------------

    /// Connected components of (V, E \ skip), as sorted vertex sets.
    pub fn components_without(&self, skip: &BTreeSet<Edge>) -> Vec<BTreeSet<VertexId>> {
        let mut uf = UnionFind::new(self.vertices.iter().copied());
        for e in &self.edges {
            if !skip.contains(e) {
                uf.union(e.lo(), e.hi());
            }
        }
        uf.components()
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        self.components_without(&BTreeSet::new())
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components().len() == 1
    }
}

/// Union-find over vertex ids.
pub(crate) struct UnionFind {
    parent: BTreeMap<VertexId, VertexId>,
}

impl UnionFind {
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> UnionFind {
        UnionFind {
            parent: vertices.into_iter().map(|v| (v, v)).collect(),
        }
    }

    pub fn find(&mut self, v: VertexId) -> VertexId {
        let p = self.parent[&v];
        if p == v {
            return v;
        }
        let root = self.find(p);
        self.parent.insert(v, root);
        root
    }

    /// Returns false if the two were already in the same set.
    pub fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }

    pub fn components(&mut self) -> Vec<BTreeSet<VertexId>> {
        let keys: Vec<VertexId> = self.parent.keys().copied().collect();
        let mut by_root: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for v in keys {
            let r = self.find(v);
            by_root.entry(r).or_default().insert(v);
        }
        by_root.into_values().collect()
    }
}

/// A subset of a fixed host graph's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubset {
    host: u64,
    edges: BTreeSet<Edge>,
}

impl EdgeSubset {
    pub fn new<I: IntoIterator<Item = Edge>>(host: &Graph, edges: I) -> Result<EdgeSubset, GraphError> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            if !host.has_edge(*e) {
                return Err(GraphError::MissingEdge(*e));
            }
        }
        Ok(EdgeSubset {
            host: host.host_id(),
            edges,
        })
    }

    pub fn empty(host: &Graph) -> EdgeSubset {
        EdgeSubset {
            host: host.host_id(),
            edges: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Vertices covered by the subset's edges.
    pub fn endpoints(&self) -> BTreeSet<VertexId> {
        let mut s = BTreeSet::new();
        for e in &self.edges {
            s.insert(e.lo());
            s.insert(e.hi());
        }
        s
    }

    fn check_host(&self, g: &Graph) -> Result<(), GraphError> {
        if self.host != g.host_id() {
            return Err(GraphError::ForeignSubset);
        }
        for e in &self.edges {
            if !g.has_edge(*e) {
                return Err(GraphError::MissingEdge(*e));
            }
        }
        Ok(())
    }
}

/// True iff (V(g), E(g) \ r) is connected; vertices isolated by the
/// removal count as separated components.
pub fn is_connected_after_removal(g: &Graph, r: &EdgeSubset) -> Result<bool, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    r.check_host(g)?;
    Ok(g.components_without(r.edge_set()).len() == 1)
}

/// True iff `s` is nonempty and forms a tree on the vertices its edges
/// touch (connected and acyclic). The empty set is a caller-side
/// convention, not a tree here.
pub fn is_tree(g: &Graph, s: &EdgeSubset) -> Result<bool, GraphError> {
    s.check_host(g)?;
    if s.is_empty() {
        return Ok(false);
    }
    let verts = s.endpoints();
    let mut uf = UnionFind::new(verts.iter().copied());
    for e in s.iter() {
        if !uf.union(e.lo(), e.hi()) {
            return Ok(false); // cycle
        }
    }
    Ok(s.len() == verts.len() - 1)
}

/// True iff `s` has |V(g)| - 1 edges and (V(g), s) is connected.
pub fn is_spanning_tree(g: &Graph, s: &EdgeSubset) -> Result<bool, GraphError> {
    s.check_host(g)?;
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    if s.len() != g.vertex_count() - 1 {
        return Ok(false);
    }
    let mut uf = UnionFind::new(g.vertices());
    for e in s.iter() {
        uf.union(e.lo(), e.hi());
    }
    Ok(uf.components().len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Sign;

    fn edge(a: u32, b: u32) -> Edge {
        Edge::new(VertexId(a), VertexId(b))
    }

    /// The 5-vertex, 7-edge counterexample graph: vertices a..e mapped to
    /// 0..4, edges ae, ed, db, dc, ab, bc, ca.
    fn fig2() -> Graph {
        // a=0 b=1 c=2 d=3 e=4
        Graph::from_parts(
            0..5,
            [(0, 4), (4, 3), (3, 1), (3, 2), (0, 1), (1, 2), (2, 0)],
        )
        .unwrap()
    }

    fn k4() -> Graph {
        Graph::from_parts(0..4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_parts(0..3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn removal_connectivity_on_fig2() {
        let g = fig2();
        // abca is nonseparating
        let abca = EdgeSubset::new(&g, [edge(0, 1), edge(1, 2), edge(2, 0)]).unwrap();
        assert!(is_connected_after_removal(&g, &abca).unwrap());
        // removing nothing keeps it connected
        let none = EdgeSubset::empty(&g);
        assert!(is_connected_after_removal(&g, &none).unwrap());
        // a-b-d-e-a isolates nothing vertex-wise but cuts e off:
        // remaining edges are bc, ca, dc.
        let abdea =
            EdgeSubset::new(&g, [edge(0, 1), edge(1, 3), edge(3, 4), edge(4, 0)]).unwrap();
        assert!(!is_connected_after_removal(&g, &abdea).unwrap());
        let comps = g.components_without(abdea.edge_set());
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().any(|c| c.len() == 1 && c.contains(&VertexId(4))));
    }

    #[test]
    fn removal_rejects_foreign_edges() {
        let g = triangle();
        let h = k4();
        let sub = EdgeSubset::new(&h, [edge(0, 3)]).unwrap();
        assert!(is_connected_after_removal(&g, &sub).is_err());
    }

    #[test]
    fn tree_predicates() {
        let g = k4();
        // path c-a-d-b as edges ac, ad, bd
        let s = EdgeSubset::new(&g, [edge(0, 2), edge(0, 3), edge(1, 3)]).unwrap();
        assert!(is_tree(&g, &s).unwrap());

        let t = triangle();
        let cycle = EdgeSubset::new(&t, [edge(0, 1), edge(1, 2), edge(2, 0)]).unwrap();
        assert!(!is_tree(&t, &cycle).unwrap());
        let single = EdgeSubset::new(&t, [edge(0, 1)]).unwrap();
        assert!(is_tree(&t, &single).unwrap());
    }

    #[test]
    fn spanning_tree_predicates() {
        let g = fig2();
        // complement of abca: ae, ed, db, dc
        let s =
            EdgeSubset::new(&g, [edge(0, 4), edge(4, 3), edge(3, 1), edge(3, 2)]).unwrap();
        assert!(is_spanning_tree(&g, &s).unwrap());

        let path = Graph::from_parts(0..3, [(0, 1), (1, 2)]).unwrap();
        let all = EdgeSubset::new(&path, path.edges()).unwrap();
        assert!(is_spanning_tree(&path, &all).unwrap());

        let k = k4();
        let wrong = EdgeSubset::new(&k, [edge(0, 1), edge(2, 3)]).unwrap();
        assert!(!is_spanning_tree(&k, &wrong).unwrap());
    }

    #[test]
    fn spanning_tree_implies_tree() {
        let g = k4();
        let s = EdgeSubset::new(&g, [edge(0, 1), edge(1, 2), edge(2, 3)]).unwrap();
        assert!(is_spanning_tree(&g, &s).unwrap());
        assert!(is_tree(&g, &s).unwrap());
    }

    #[test]
    fn subdivide_single_edge() {
        let g = Graph::from_parts(0..2, [(0, 1)]).unwrap();
        let (h, w) = g
            .subdivide_edge(edge(0, 1), VertexLabel::B { var: 1, clause: 1 })
            .unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 2);
        assert!(h.has_edge(Edge::new(VertexId(0), w)));
        assert!(h.has_edge(Edge::new(w, VertexId(1))));
        assert!(!h.has_edge(edge(0, 1)));
    }

    #[test]
    fn subdivide_triangle_stays_connected() {
        let g = triangle();
        let (h, _) = g
            .subdivide_edge(edge(0, 1), VertexLabel::Omega { var: 1, index: 0 })
            .unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 4);
        assert!(h.is_connected());
    }

    #[test]
    fn subdivide_inherits_color() {
        let mut g = Graph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        let e = g.add_colored_edge(a, b, EdgeColor::Plus).unwrap();
        let (h, w) = g
            .subdivide_edge(e, VertexLabel::B { var: 1, clause: 1 })
            .unwrap();
        assert_eq!(h.color(Edge::new(a, w)), EdgeColor::Plus);
        assert_eq!(h.color(Edge::new(w, b)), EdgeColor::Plus);
        assert_eq!(
            h.vertex_by_label(VertexLabel::B { var: 1, clause: 1 }),
            Some(w)
        );
    }

    #[test]
    fn contract_path_edge() {
        let g = Graph::from_parts(0..3, [(0, 1), (1, 2)]).unwrap();
        let (h, w) = g.contract_edge(edge(0, 1), VertexLabel::Y { var: 1 }).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert!(h.has_edge(Edge::new(w, VertexId(2))));
    }

    #[test]
    fn contract_triangle_edge_fails() {
        let g = triangle();
        let err = g.contract_edge(edge(0, 1), VertexLabel::Y { var: 1 }).unwrap_err();
        assert!(matches!(err, GraphError::ContractionNotSimple(_, _)));
    }

    #[test]
    fn delete_vertex_cases() {
        let g = k4();
        let h = g.delete_vertex(VertexId(3)).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);

        let star = Graph::from_parts(0..4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = star.delete_vertex(VertexId(0)).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.vertex_count(), 3);
        assert!(!h.is_connected());
    }

    #[test]
    fn rewrite_counts() {
        let g = k4();
        let (h, w) = g
            .subdivide_edge(edge(0, 1), VertexLabel::A { var: 1, clause: 1 })
            .unwrap();
        assert_eq!(h.vertex_count(), g.vertex_count() + 1);
        assert_eq!(h.edge_count(), g.edge_count() + 1);
        let (back, _) = h
            .contract_edge(Edge::new(VertexId(0), w), VertexLabel::Y { var: 9 })
            .unwrap();
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edge_count(), g.edge_count());
    }

    #[test]
    fn labels_are_unique() {
        let mut g = Graph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.set_label(a, VertexLabel::S).unwrap();
        assert!(matches!(
            g.set_label(b, VertexLabel::S),
            Err(GraphError::DuplicateLabel(_, _))
        ));
    }

    #[test]
    fn fresh_ids_are_monotonic() {
        let mut g = Graph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        assert!(a < b);
        let g2 = g.delete_vertex(b).unwrap();
        let mut g3 = g2.clone();
        let c = g3.add_vertex();
        assert!(c > b, "ids are never reused");
    }

    #[test]
    fn no_parallel_edges_or_loops() {
        let mut g = Graph::new();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, b).unwrap();
        assert!(matches!(g.add_edge(b, a), Err(GraphError::DuplicateEdge(_))));
    }

    // Independent DFS connectivity used to cross-check the union-find.
    fn dfs_component_count(g: &Graph, skip: &BTreeSet<Edge>) -> usize {
        let verts: Vec<VertexId> = g.vertices().collect();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut count = 0;
        for &start in &verts {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for e in g.edges() {
                    if e.touches(v) && !skip.contains(&e) {
                        let w = e.other(v);
                        if seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn union_find_matches_dfs_on_random_removals() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7usize);
            let mut g = Graph::new();
            let vs: Vec<VertexId> = (0..n).map(|_| g.add_vertex()).collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(vs[i], vs[j]).unwrap();
                    }
                }
            }
            let removed: BTreeSet<Edge> =
                g.edges().filter(|_| rng.gen_bool(0.3)).collect();
            let sub = EdgeSubset::new(&g, removed.iter().copied()).unwrap();
            let uf_connected = is_connected_after_removal(&g, &sub).unwrap();
            assert_eq!(uf_connected, dfs_component_count(&g, &removed) == 1);
        }
    }

    #[test]
    fn subdivide_then_contract_restores_up_to_labels() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let n = rng.gen_range(2..=8usize);
            let mut g = Graph::new();
            let vs: Vec<VertexId> = (0..n).map(|_| g.add_vertex()).collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(vs[i], vs[j]).unwrap();
                    }
                }
            }
            let edges: Vec<Edge> = g.edges().collect();
            if edges.is_empty() {
                continue;
            }
            let e = edges[rng.gen_range(0..edges.len())];
            let (h, w) = g.subdivide_edge(e, VertexLabel::S).unwrap();
            let half = Edge::new(e.lo(), w);
            let (back, merged) = h.contract_edge(half, VertexLabel::T).unwrap();
            // Label-forgetting isomorphism: same edge multiset after
            // renaming the merged vertex back to the original endpoint.
            let rename = |v: VertexId| if v == merged { e.lo() } else { v };
            let mut got: BTreeSet<Edge> = BTreeSet::new();
            for be in back.edges() {
                got.insert(Edge::new(rename(be.lo()), rename(be.hi())));
            }
            let want: BTreeSet<Edge> = g.edges().collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn colored_edge_subdivision_keeps_sign() {
        let mut g = Graph::new();
        let x = g.add_vertex();
        let c = g.add_vertex();
        let e = g.add_colored_edge(x, c, EdgeColor::from_sign(Sign::Plus)).unwrap();
        let (h, b) = g
            .subdivide_edge(e, VertexLabel::B { var: 1, clause: 1 })
            .unwrap();
        for he in h.edges() {
            assert_eq!(h.color(he), EdgeColor::Plus);
        }
        assert_eq!(h.degree(b), 2);
    }
}
