//! Combinatorial embeddings: rotation systems, face traversal, the
//! genus-0 Euler check, exhaustive embedding search for small graphs,
//! and dual-graph construction.
//!
//! The rotation convention is counterclockwise. Faces are orbits of the
//! next-dart-after-arrival rule; an embedding of a connected graph is
//! planar iff V - E + F = 2.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("rotation at {0} does not match its adjacency set")]
    NeighborMismatch(VertexId),
    #[error("graph is disconnected; embed components separately")]
    Disconnected,
    #[error("rotation system is not a plane embedding (V - E + F = {0})")]
    NonPlanar(i64),
    #[error("graph has {0} vertices, above the search bound {1}; an explicit embedding is required")]
    EmbeddingRequired(usize, usize),
}

/// Cyclic counterclockwise neighbor order for every vertex of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    order: BTreeMap<VertexId, Vec<VertexId>>,
}

impl RotationSystem {
    pub fn new(order: BTreeMap<VertexId, Vec<VertexId>>) -> RotationSystem {
        RotationSystem { order }
    }

    pub fn order(&self, v: VertexId) -> &[VertexId] {
        self.order.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[VertexId])> {
        self.order.iter().map(|(v, ns)| (*v, ns.as_slice()))
    }

    /// The neighbor multiset at every vertex must equal its adjacency set.
    pub fn validate(&self, g: &Graph) -> Result<(), EmbedError> {
        for v in g.vertices() {
            let rot: BTreeSet<VertexId> = self.order(v).iter().copied().collect();
            let adj: BTreeSet<VertexId> = g.neighbors(v).into_iter().collect();
            if rot != adj || self.order(v).len() != adj.len() {
                return Err(EmbedError::NeighborMismatch(v));
            }
        }
        if self.order.keys().any(|v| !g.has_vertex(*v)) {
            return Err(EmbedError::NeighborMismatch(
                *self.order.keys().find(|v| !g.has_vertex(**v)).unwrap(),
            ));
        }
        Ok(())
    }
}

/// A face boundary walk as a cyclic sequence of directed edges.
pub type FaceWalk = Vec<(VertexId, VertexId)>;

/// A dart is one of the two directed sides of an edge; `end` names the
/// endpoint it leaves from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn twin(self) -> Dart {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// Embedded multigraph over dense vertex indices; loops and parallel
/// edges are permitted. Used for dual graphs, which are kept strictly
/// separate from the simple `Graph` type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    /// Per vertex, counterclockwise cyclic order of outgoing darts.
    rotations: Vec<Vec<Dart>>,
}

impl Multigraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        rotations: Vec<Vec<Dart>>,
    ) -> Multigraph {
        debug_assert_eq!(rotations.len(), vertex_count);
        Multigraph {
            vertex_count,
            edges,
            rotations,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn dart_tail(&self, d: Dart) -> usize {
        if d.end == 0 {
            self.edges[d.edge].0
        } else {
            self.edges[d.edge].1
        }
    }

    pub fn dart_head(&self, d: Dart) -> usize {
        if d.end == 0 {
            self.edges[d.edge].1
        } else {
            self.edges[d.edge].0
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Vertex count of the graph after removing `skip`, as components.
    pub fn component_count_without(&self, skip: &BTreeSet<usize>) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if !skip.contains(&i) {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                parent[ra] = rb;
            }
        }
        (0..self.vertex_count)
            .map(|v| find(&mut parent, v))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count_without(&BTreeSet::new()) == 1
    }

    /// Face orbits of the next-dart rule: after crossing dart `d`, continue
    /// with the counterclockwise successor of `d`'s twin at the head vertex.
    pub fn face_orbits(&self) -> Vec<Vec<Dart>> {
        let next = |d: Dart| -> Dart {
            let head = self.dart_head(d);
            let rot = &self.rotations[head];
            let pos = rot
                .iter()
                .position(|&x| x == d.twin())
                .expect("twin dart present in head rotation");
            rot[(pos + 1) % rot.len()]
        };
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut orbits = Vec::new();
        let mut all_darts: Vec<Dart> = Vec::new();
        for rot in &self.rotations {
            all_darts.extend_from_slice(rot);
        }
        all_darts.sort();
        for &start in &all_darts {
            if seen.contains(&start) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                orbit.push(d);
                seen.insert(d);
                d = next(d);
                if d == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn face_count(&self) -> usize {
        self.face_orbits().len()
    }

    /// V - E + F, meaningful for connected multigraphs.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.face_count() as i64
    }

    /// Dual of a connected plane multigraph: one vertex per face, one edge
    /// per edge, rotations read off the face walks.
    pub fn dual(&self) -> Multigraph {
        let orbits = self.face_orbits();
        let mut face_of_dart: BTreeMap<Dart, usize> = BTreeMap::new();
        for (f, orbit) in orbits.iter().enumerate() {
            for &d in orbit {
                face_of_dart.insert(d, f);
            }
        }
        // Edge k of the dual crosses primal edge k. Its dart 0 sits in the
        // face containing the primal dart (k, 0).
        let dual_edges: Vec<(usize, usize)> = (0..self.edges.len())
            .map(|e| {
                let f0 = face_of_dart[&Dart { edge: e, end: 0 }];
                let f1 = face_of_dart[&Dart { edge: e, end: 1 }];
                (f0, f1)
            })
            .collect();
        let rotations: Vec<Vec<Dart>> = orbits
            .iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .map(|d| Dart {
                        edge: d.edge,
                        end: d.end,
                    })
                    .collect()
            })
            .collect();
        Multigraph::new(orbits.len(), dual_edges, rotations)
    }
}

/// Converts a simple embedded graph into the dart representation, keeping
/// the vertex order; returns the dense-index mapping alongside.
pub fn to_multigraph(g: &Graph, rot: &RotationSystem) -> (Multigraph, Vec<VertexId>, Vec<Edge>) {
    let vertex_ids: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        vertex_ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let edge_ids: Vec<Edge> = g.edges().collect();
    let edge_index: BTreeMap<Edge, usize> =
        edge_ids.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let edges: Vec<(usize, usize)> = edge_ids
        .iter()
        .map(|e| (index[&e.lo()], index[&e.hi()]))
        .collect();
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); vertex_ids.len()];
    for (i, v) in vertex_ids.iter().enumerate() {
        for n in rot.order(*v) {
            let e = Edge::new(*v, *n);
            let k = edge_index[&e];
            let end = if e.lo() == *v { 0 } else { 1 };
            rotations[i].push(Dart { edge: k, end });
        }
    }
    (Multigraph::new(vertex_ids.len(), edges, rotations), vertex_ids, edge_ids)
}

/// Complete set of face walks; every directed edge appears in exactly one.
pub fn faces(g: &Graph, rot: &RotationSystem) -> Result<Vec<FaceWalk>, EmbedError> {
    rot.validate(g)?;
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    let (mg, vertex_ids, _) = to_multigraph(g, rot);
    let walks = mg
        .face_orbits()
        .into_iter()
        .map(|orbit| {
            orbit
                .into_iter()
                .map(|d| (vertex_ids[mg.dart_tail(d)], vertex_ids[mg.dart_head(d)]))
                .collect()
        })
        .collect();
    Ok(walks)
}

/// Genus-0 test: true iff V - E + F = 2 under face traversal.
pub fn check_planar_embedding(g: &Graph, rot: &RotationSystem) -> Result<bool, EmbedError> {
    let walks = faces(g, rot)?;
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + walks.len() as i64;
    Ok(chi == 2)
}

pub const DEFAULT_EMBED_SEARCH_BOUND: usize = 12;

/// Exhaustive search over rotation systems for a plane embedding of a
/// connected graph, or `None` when no rotation passes the Euler check.
/// Cyclic symmetry is pruned by pinning each vertex's first neighbor and
/// reflection by orienting the first branch vertex.
pub fn find_planar_embedding(g: &Graph) -> Result<Option<RotationSystem>, EmbedError> {
    find_planar_embedding_bounded(g, DEFAULT_EMBED_SEARCH_BOUND)
}

pub fn find_planar_embedding_bounded(
    g: &Graph,
    max_vertices: usize,
) -> Result<Option<RotationSystem>, EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    if g.vertex_count() > max_vertices {
        return Err(EmbedError::EmbeddingRequired(g.vertex_count(), max_vertices));
    }
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    if v >= 3 && e > 3 * v - 6 {
        return Ok(None); // too dense for genus 0
    }

    let vertices: Vec<VertexId> = g.vertices().collect();
    let mut neighbor_lists: Vec<Vec<VertexId>> = Vec::new();
    for &vid in &vertices {
        let mut ns = g.neighbors(vid);
        ns.sort();
        neighbor_lists.push(ns);
    }
    let reflect_pin = vertices
        .iter()
        .position(|&vid| g.degree(vid) >= 3)
        .unwrap_or(usize::MAX);

    let mut chosen: Vec<Vec<VertexId>> = vec![Vec::new(); vertices.len()];
    let mut found: Option<RotationSystem> = None;
    search(
        g,
        &vertices,
        &neighbor_lists,
        reflect_pin,
        0,
        &mut chosen,
        &mut found,
    );
    return Ok(found);

    fn search(
        g: &Graph,
        vertices: &[VertexId],
        neighbor_lists: &[Vec<VertexId>],
        reflect_pin: usize,
        at: usize,
        chosen: &mut Vec<Vec<VertexId>>,
        found: &mut Option<RotationSystem>,
    ) {
        if found.is_some() {
            return;
        }
        if at == vertices.len() {
            let rot = RotationSystem::new(
                vertices
                    .iter()
                    .copied()
                    .zip(chosen.iter().cloned())
                    .collect(),
            );
            if check_planar_embedding(g, &rot) == Ok(true) {
                *found = Some(rot);
            }
            return;
        }
        let ns = &neighbor_lists[at];
        if ns.len() <= 2 {
            chosen[at] = ns.clone();
            search(g, vertices, neighbor_lists, reflect_pin, at + 1, chosen, found);
            return;
        }
        // First neighbor pinned: iterate permutations of the rest.
        let mut rest: Vec<VertexId> = ns[1..].to_vec();
        permute(&mut rest, 0, &mut |perm: &[VertexId]| {
            if found.is_some() {
                return;
            }
            if at == reflect_pin && perm[0] > perm[perm.len() - 1] {
                return; // mirror image of an order already tried
            }
            let mut order = Vec::with_capacity(ns.len());
            order.push(ns[0]);
            order.extend_from_slice(perm);
            chosen[at] = order;
            search(g, vertices, neighbor_lists, reflect_pin, at + 1, chosen, found);
        });
    }

    fn permute(items: &mut Vec<VertexId>, k: usize, visit: &mut impl FnMut(&[VertexId])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
}

/// Dual of a simple connected plane graph, with the primal-edge bijection.
#[derive(Debug, Clone)]
pub struct DualGraph {
    mg: Multigraph,
    /// Dual edge index -> primal edge (a bijection).
    primal_edges: Vec<Edge>,
}

impl DualGraph {
    pub fn multigraph(&self) -> &Multigraph {
        &self.mg
    }

    pub fn face_count(&self) -> usize {
        self.mg.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.mg.edge_count()
    }

    pub fn primal_edge(&self, dual_edge: usize) -> Edge {
        self.primal_edges[dual_edge]
    }

    pub fn dual_edge(&self, primal: Edge) -> Option<usize> {
        self.primal_edges.iter().position(|e| *e == primal)
    }
}

pub fn dual(g: &Graph, rot: &RotationSystem) -> Result<DualGraph, EmbedError> {
    if !check_planar_embedding(g, rot)? {
        let (mg, _, _) = to_multigraph(g, rot);
        return Err(EmbedError::NonPlanar(mg.euler_characteristic()));
    }
    let (mg, _, edge_ids) = to_multigraph(g, rot);
    let d = mg.dual();
    debug_assert_eq!(d.edge_count(), g.edge_count());
    Ok(DualGraph {
        mg: d,
        primal_edges: edge_ids,
    })
}

/// Brute-force multigraph isomorphism for tiny instances (test support
/// and the double-dual check).
pub fn multigraph_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    let norm = |edges: Vec<(usize, usize)>| -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
            .collect();
        v.sort();
        v
    };
    let target = norm(b.edges().to_vec());
    let mut perm: Vec<usize> = (0..n).collect();
    return permute_check(&mut perm, 0, &|perm: &[usize]| {
        let mapped: Vec<(usize, usize)> = a
            .edges()
            .iter()
            .map(|&(x, y)| (perm[x], perm[y]))
            .collect();
        norm(mapped) == target
    });

    fn permute_check(perm: &mut Vec<usize>, k: usize, ok: &dyn Fn(&[usize]) -> bool) -> bool {
        if k == perm.len() {
            return ok(perm);
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if permute_check(perm, k + 1, ok) {
                perm.swap(k, i);
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
}
