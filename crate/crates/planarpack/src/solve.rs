//! Exact desk-scale decision oracles and witness checkers for
//! nonseparating cycles, nonseparating s-t paths, tree + spanning-tree
//! partitions, and acyclic cuts (with the dual route).
//!
//! All searches are exhaustive with two sound prunes: candidates through
//! degree-2 vertices are skipped (removing such a candidate always
//! isolates the vertex), and a branch dies as soon as removing the
//! partial edge set already disconnects the host, which only ever
//! discards separating completions. Budgets are explicit and exceeding
//! one is an error distinct from a NO answer.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::embed::{self, EmbedError, Multigraph, RotationSystem};
use crate::graph::{self, Edge, EdgeSubset, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget of {0} steps exceeded")]
    Budget(u64),
    #[error("graph has {0} edges, above the search bound {1}; raise the budget explicitly")]
    TooManyEdges(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Explicit resource limits for the exponential searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_edges: usize,
    pub max_steps: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_edges: 64,
            max_steps: 20_000_000,
        }
    }
}

impl SearchLimits {
    /// Limits sized for reduction outputs, which exceed the conservative
    /// default edge gate by construction.
    pub fn for_reductions() -> SearchLimits {
        SearchLimits {
            max_edges: 100_000,
            max_steps: 100_000_000,
        }
    }
}

/// Problem certificate: a cycle edge set, an s-t path edge sequence, or
/// an edge bipartition into a tree and a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Cycle(EdgeSubset),
    Path(Vec<Edge>),
    Partition { tree: EdgeSubset, spanning: EdgeSubset },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Cycle,
    StPath,
    Partition,
    AcyclicCut,
}

impl ProblemKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Cycle => "cycle",
            ProblemKind::StPath => "stpath",
            ProblemKind::Partition => "partition",
            ProblemKind::AcyclicCut => "acyclic-cut",
        }
    }

    pub fn from_tag(tag: &str) -> Option<ProblemKind> {
        match tag {
            "cycle" => Some(ProblemKind::Cycle),
            "stpath" => Some(ProblemKind::StPath),
            "partition" => Some(ProblemKind::Partition),
            "acyclic-cut" => Some(ProblemKind::AcyclicCut),
            _ => None,
        }
    }
}

// ---- indexed scratch view ---------------------------------------------------

struct Indexed {
    verts: Vec<VertexId>,
    edges: Vec<Edge>,
    /// Per vertex: (neighbor index, edge index), sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Indexed {
    fn new(g: &Graph) -> Indexed {
        let verts: Vec<VertexId> = g.vertices().collect();
        let vidx: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges: Vec<Edge> = g.edges().collect();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()];
        for (k, e) in edges.iter().enumerate() {
            let a = vidx[&e.lo()];
            let b = vidx[&e.hi()];
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        for list in &mut adj {
            list.sort();
        }
        Indexed { verts, edges, adj }
    }

    fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    /// True iff the graph minus the flagged edges is connected.
    fn connected_without(&self, removed: &[bool], scratch: &mut Scratch) -> bool {
        let n = self.verts.len();
        if n == 0 {
            return false;
        }
        scratch.stamp += 1;
        let stamp = scratch.stamp;
        scratch.stack.clear();
        scratch.stack.push(0);
        scratch.seen[0] = stamp;
        let mut count = 1;
        while let Some(v) = scratch.stack.pop() {
            for &(w, e) in &self.adj[v] {
                if !removed[e] && scratch.seen[w] != stamp {
                    scratch.seen[w] = stamp;
                    count += 1;
                    scratch.stack.push(w);
                }
            }
        }
        count == n
    }
}

struct Scratch {
    seen: Vec<u64>,
    stack: Vec<usize>,
    stamp: u64,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            seen: vec![0; n],
            stack: Vec::new(),
            stamp: 0,
        }
    }
}

struct Budget {
    steps: u64,
    max: u64,
}

impl Budget {
    fn new(limits: &SearchLimits) -> Budget {
        Budget {
            steps: 0,
            max: limits.max_steps,
        }
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.steps += 1;
        if self.steps > self.max {
            Err(SolveError::Budget(self.max))
        } else {
            Ok(())
        }
    }
}

fn gate_edges(g: &Graph, limits: &SearchLimits) -> Result<(), SolveError> {
    if g.edge_count() > limits.max_edges {
        Err(SolveError::TooManyEdges(g.edge_count(), limits.max_edges))
    } else {
        Ok(())
    }
}

// ---- nonseparating cycle ----------------------------------------------------

/// Finds a minimum-length nonseparating simple cycle, or `None`.
/// Cycles through degree-2 vertices are pruned whenever the graph has a
/// second vertex to strand.
pub fn find_nonseparating_cycle(
    g: &Graph,
    limits: &SearchLimits,
) -> Result<Option<Witness>, SolveError> {
    if g.vertex_count() == 0 {
        return Err(SolveError::InvalidInput("empty graph".into()));
    }
    gate_edges(g, limits)?;
    if !g.is_connected() {
        return Ok(None); // removal can never reconnect it
    }
    let ix = Indexed::new(g);
    let allowed: Vec<bool> = if ix.vertex_count() >= 2 {
        (0..ix.vertex_count()).map(|v| ix.adj[v].len() >= 3).collect()
    } else {
        vec![true; ix.vertex_count()]
    };

    let mut budget = Budget::new(limits);
    let mut scratch = Scratch::new(ix.vertex_count());
    let mut removed = vec![false; ix.edges.len()];
    let mut on_path = vec![false; ix.vertex_count()];
    let mut best: Option<Vec<usize>> = None;

    for start in 0..ix.vertex_count() {
        if !allowed[start] {
            continue;
        }
        on_path[start] = true;
        let mut path_edges: Vec<usize> = Vec::new();
        let mut path_verts: Vec<usize> = vec![start];
        dfs_cycle(
            &ix,
            &allowed,
            start,
            start,
            &mut path_edges,
            &mut path_verts,
            &mut removed,
            &mut on_path,
            &mut scratch,
            &mut budget,
            &mut best,
        )?;
        on_path[start] = false;
    }

    Ok(best.map(|edge_idxs| {
        let edges: Vec<Edge> = edge_idxs.iter().map(|&k| ix.edges[k]).collect();
        Witness::Cycle(EdgeSubset::new(g, edges).expect("cycle edges in host"))
    }))
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycle(
    ix: &Indexed,
    allowed: &[bool],
    start: usize,
    current: usize,
    path_edges: &mut Vec<usize>,
    path_verts: &mut Vec<usize>,
    removed: &mut Vec<bool>,
    on_path: &mut Vec<bool>,
    scratch: &mut Scratch,
    budget: &mut Budget,
    best: &mut Option<Vec<usize>>,
) -> Result<(), SolveError> {
    budget.tick()?;
    if let Some(b) = best {
        // one extra edge still has to close the cycle
        if path_edges.len() + 1 >= b.len() {
            return Ok(());
        }
    }
    for &(next, eidx) in &ix.adj[current] {
        if next == start && path_verts.len() >= 3 {
            // dedup direction: second vertex smaller than the last
            if path_verts[1] > current {
                continue;
            }
            removed[eidx] = true;
            if ix.connected_without(removed, scratch) {
                let mut cycle = path_edges.clone();
                cycle.push(eidx);
                let better = match best {
                    None => true,
                    Some(b) => cycle.len() < b.len() || (cycle.len() == b.len() && cycle < *b),
                };
                if better {
                    *best = Some(cycle);
                }
            }
            removed[eidx] = false;
        } else if next > start && allowed[next] && !on_path[next] {
            removed[eidx] = true;
            if ix.connected_without(removed, scratch) {
                path_edges.push(eidx);
                path_verts.push(next);
                on_path[next] = true;
                dfs_cycle(
                    ix, allowed, start, next, path_edges, path_verts, removed, on_path, scratch,
                    budget, best,
                )?;
                on_path[next] = false;
                path_verts.pop();
                path_edges.pop();
            }
            removed[eidx] = false;
        }
    }
    Ok(())
}

// ---- nonseparating s-t path -------------------------------------------------

/// Finds a minimum-length nonseparating simple s-t path, or `None`.
/// Interior vertices of degree 2 are pruned for the same stranding
/// reason as in the cycle search.
pub fn find_nonseparating_st_path(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    limits: &SearchLimits,
) -> Result<Option<Witness>, SolveError> {
    if s == t {
        return Err(SolveError::InvalidInput(format!(
            "s = t = {s}; distinguished endpoints must differ"
        )));
    }
    if !g.has_vertex(s) {
        return Err(SolveError::Graph(graph::GraphError::MissingVertex(s)));
    }
    if !g.has_vertex(t) {
        return Err(SolveError::Graph(graph::GraphError::MissingVertex(t)));
    }
    gate_edges(g, limits)?;
    if !g.is_connected() {
        return Ok(None);
    }
    let ix = Indexed::new(g);
    let vidx: BTreeMap<VertexId, usize> =
        ix.verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let (si, ti) = (vidx[&s], vidx[&t]);
    let allowed: Vec<bool> = (0..ix.vertex_count())
        .map(|v| v == si || v == ti || ix.adj[v].len() >= 3)
        .collect();

    let mut budget = Budget::new(limits);
    let mut scratch = Scratch::new(ix.vertex_count());
    let mut removed = vec![false; ix.edges.len()];
    let mut on_path = vec![false; ix.vertex_count()];
    on_path[si] = true;
    let mut path_edges: Vec<usize> = Vec::new();
    let mut best: Option<Vec<usize>> = None;
    dfs_path(
        &ix,
        &allowed,
        si,
        ti,
        &mut path_edges,
        &mut removed,
        &mut on_path,
        &mut scratch,
        &mut budget,
        &mut best,
    )?;

    Ok(best.map(|edge_idxs| {
        Witness::Path(edge_idxs.iter().map(|&k| ix.edges[k]).collect())
    }))
}

#[allow(clippy::too_many_arguments)]
fn dfs_path(
    ix: &Indexed,
    allowed: &[bool],
    current: usize,
    target: usize,
    path_edges: &mut Vec<usize>,
    removed: &mut Vec<bool>,
    on_path: &mut Vec<bool>,
    scratch: &mut Scratch,
    budget: &mut Budget,
    best: &mut Option<Vec<usize>>,
) -> Result<(), SolveError> {
    budget.tick()?;
    if let Some(b) = best {
        if path_edges.len() + 1 >= b.len() {
            return Ok(());
        }
    }
    for &(next, eidx) in &ix.adj[current] {
        if on_path[next] {
            continue;
        }
        if next == target {
            removed[eidx] = true;
            if ix.connected_without(removed, scratch) {
                let mut path = path_edges.clone();
                path.push(eidx);
                let better = match best {
                    None => true,
                    Some(b) => path.len() < b.len() || (path.len() == b.len() && path < *b),
                };
                if better {
                    *best = Some(path);
                }
            }
            removed[eidx] = false;
        } else if allowed[next] {
            removed[eidx] = true;
            if ix.connected_without(removed, scratch) {
                path_edges.push(eidx);
                on_path[next] = true;
                dfs_path(
                    ix, allowed, next, target, path_edges, removed, on_path, scratch, budget,
                    best,
                )?;
                on_path[next] = false;
                path_edges.pop();
            }
            removed[eidx] = false;
        }
    }
    Ok(())
}

// ---- tree + spanning tree partition ------------------------------------------

/// Decides whether E(g) splits into a tree and a spanning tree, returning
/// the first partition found. The tree side is grown edge by edge
/// (connected and acyclic by construction, each candidate tree visited
/// once via a forbidden set); a branch is cut as soon as the removed set
/// disconnects the host. The empty tree is accepted exactly when g is
/// itself a tree.
pub fn find_tree_spanning_tree_partition(
    g: &Graph,
    limits: &SearchLimits,
) -> Result<Option<Witness>, SolveError> {
    if g.vertex_count() == 0 {
        return Err(SolveError::InvalidInput("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(SolveError::InvalidInput(
            "tree + spanning tree partition needs a connected graph".into(),
        ));
    }
    gate_edges(g, limits)?;
    let mu = g.edge_count() + 1 - g.vertex_count();
    if mu == 0 {
        // g is a tree; by convention the empty tree plus g itself.
        return Ok(Some(Witness::Partition {
            tree: EdgeSubset::empty(g),
            spanning: EdgeSubset::new(g, g.edges()).expect("own edges"),
        }));
    }

    let ix = Indexed::new(g);
    let m = ix.edges.len();
    let mut budget = Budget::new(limits);
    let mut scratch = Scratch::new(ix.vertex_count());

    for root in 0..m {
        let mut in_tree = vec![false; m];
        let mut removed = vec![false; m];
        let mut forbidden = vec![false; m];
        let mut vert_in_tree = vec![false; ix.vertex_count()];
        in_tree[root] = true;
        removed[root] = true;
        let (a, b) = {
            let e = ix.edges[root];
            (e.lo(), e.hi())
        };
        let ai = ix.verts.iter().position(|v| *v == a).unwrap();
        let bi = ix.verts.iter().position(|v| *v == b).unwrap();
        vert_in_tree[ai] = true;
        vert_in_tree[bi] = true;
        if !ix.connected_without(&removed, &mut scratch) {
            continue;
        }
        if let Some(tree_edges) = grow_tree(
            &ix,
            root,
            mu,
            1,
            &mut in_tree,
            &mut removed,
            &mut forbidden,
            &mut vert_in_tree,
            &mut scratch,
            &mut budget,
        )? {
            let tree: Vec<Edge> = tree_edges.iter().map(|&k| ix.edges[k]).collect();
            let tree_set: BTreeSet<usize> = tree_edges.into_iter().collect();
            let spanning: Vec<Edge> = (0..m)
                .filter(|k| !tree_set.contains(k))
                .map(|k| ix.edges[k])
                .collect();
            let w = Witness::Partition {
                tree: EdgeSubset::new(g, tree).expect("tree edges in host"),
                spanning: EdgeSubset::new(g, spanning).expect("spanning edges in host"),
            };
            debug_assert!(check_witness(g, &w, ProblemKind::Partition, None).ok);
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Branches on the smallest eligible frontier edge: take it into the
/// tree or forbid it for the rest of this subtree of the search.
#[allow(clippy::too_many_arguments)]
fn grow_tree(
    ix: &Indexed,
    root: usize,
    mu: usize,
    size: usize,
    in_tree: &mut Vec<bool>,
    removed: &mut Vec<bool>,
    forbidden: &mut Vec<bool>,
    vert_in_tree: &mut Vec<bool>,
    scratch: &mut Scratch,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, SolveError> {
    budget.tick()?;
    if size == mu {
        return Ok(Some(
            (0..ix.edges.len()).filter(|&k| in_tree[k]).collect(),
        ));
    }
    // smallest eligible frontier edge: above the root, unused, exactly one
    // endpoint in the tree
    let mut pick: Option<(usize, usize)> = None; // (edge, fresh vertex)
    let mut undecided = 0usize;
    for k in (root + 1)..ix.edges.len() {
        if in_tree[k] || forbidden[k] {
            continue;
        }
        undecided += 1;
        if pick.is_none() {
            let e = ix.edges[k];
            let ai = vert_index(ix, e.lo());
            let bi = vert_index(ix, e.hi());
            match (vert_in_tree[ai], vert_in_tree[bi]) {
                (true, false) => pick = Some((k, bi)),
                (false, true) => pick = Some((k, ai)),
                _ => {}
            }
        }
    }
    if size + undecided < mu {
        return Ok(None);
    }
    let (k, fresh) = match pick {
        Some(p) => p,
        None => return Ok(None),
    };

    // take k
    in_tree[k] = true;
    removed[k] = true;
    let fresh_was = vert_in_tree[fresh];
    vert_in_tree[fresh] = true;
    if ix.connected_without(removed, scratch) {
        if let Some(found) = grow_tree(
            ix, root, mu, size + 1, in_tree, removed, forbidden, vert_in_tree, scratch, budget,
        )? {
            return Ok(Some(found));
        }
    }
    in_tree[k] = false;
    removed[k] = false;
    vert_in_tree[fresh] = fresh_was;

    // forbid k
    forbidden[k] = true;
    let found = grow_tree(
        ix, root, mu, size, in_tree, removed, forbidden, vert_in_tree, scratch, budget,
    )?;
    forbidden[k] = false;
    Ok(found)
}

fn vert_index(ix: &Indexed, v: VertexId) -> usize {
    ix.verts.binary_search(&v).expect("vertex present")
}

// ---- acyclic cuts -------------------------------------------------------------

/// Dual route: a nonseparating cycle in the dual graph, mapped back
/// through the edge bijection, is an acyclic cut of the primal.
pub fn find_acyclic_cut(
    g: &Graph,
    rot: &RotationSystem,
    limits: &SearchLimits,
) -> Result<Option<BTreeSet<Edge>>, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::InvalidInput(
            "acyclic cut search needs a connected graph".into(),
        ));
    }
    let d = embed::dual(g, rot)?;
    let cycle = find_nonseparating_cycle_multi(d.multigraph(), limits)?;
    Ok(cycle.map(|edge_idxs| edge_idxs.into_iter().map(|k| d.primal_edge(k)).collect()))
}

/// Brute-force twin: enumerate vertex bipartitions and return the first
/// whose crossing edge set contains no cycle.
pub fn find_acyclic_cut_bruteforce(g: &Graph) -> Result<Option<BTreeSet<Edge>>, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::InvalidInput(
            "acyclic cut search needs a connected graph".into(),
        ));
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    if n > 16 {
        return Err(SolveError::TooManyEdges(n, 16));
    }
    if n < 2 {
        return Ok(None); // no nontrivial bipartition
    }
    // fix verts[0] on side A to halve the enumeration
    for mask in 0..(1u32 << (n - 1)) {
        let side = |i: usize| -> bool { i != 0 && (mask >> (i - 1)) & 1 == 1 };
        if (1..n).all(|i| !side(i)) {
            continue; // side B empty
        }
        let cut: BTreeSet<Edge> = g
            .edges()
            .filter(|e| {
                let a = verts.binary_search(&e.lo()).unwrap();
                let b = verts.binary_search(&e.hi()).unwrap();
                side(a) != side(b)
            })
            .collect();
        if edge_set_is_forest(&cut) {
            return Ok(Some(cut));
        }
    }
    Ok(None)
}

fn edge_set_is_forest(edges: &BTreeSet<Edge>) -> bool {
    let verts: BTreeSet<VertexId> = edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
    let mut uf = crate::graph::UnionFind::new(verts.iter().copied());
    edges.iter().all(|e| uf.union(e.lo(), e.hi()))
}

/// Nonseparating cycle search on a multigraph: a loop is a length-1
/// cycle, a pair of parallel edges a length-2 cycle. Used only on dual
/// graphs, which are small; no degree pruning (loops would break it).
fn find_nonseparating_cycle_multi(
    mg: &Multigraph,
    limits: &SearchLimits,
) -> Result<Option<Vec<usize>>, SolveError> {
    if mg.edge_count() > limits.max_edges {
        return Err(SolveError::TooManyEdges(mg.edge_count(), limits.max_edges));
    }
    // loops: removing one never disconnects anything
    for e in 0..mg.edge_count() {
        if mg.is_loop(e) {
            return Ok(Some(vec![e]));
        }
    }
    // parallel pairs
    for e in 0..mg.edge_count() {
        for f in (e + 1)..mg.edge_count() {
            let (a, b) = mg.edge_endpoints(e);
            let (c, d) = mg.edge_endpoints(f);
            if (a, b) == (c, d) || (a, b) == (d, c) {
                let skip: BTreeSet<usize> = [e, f].into_iter().collect();
                if mg.component_count_without(&skip) == 1 {
                    return Ok(Some(vec![e, f]));
                }
            }
        }
    }
    // simple cycles on >= 3 distinct vertices
    let n = mg.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &(a, b)) in mg.edges().iter().enumerate() {
        if a != b {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
    }
    for list in &mut adj {
        list.sort();
    }
    let mut budget = Budget::new(limits);
    let mut best: Option<Vec<usize>> = None;
    let mut on_path = vec![false; n];
    let mut used = BTreeSet::new();

    fn dfs(
        mg: &Multigraph,
        adj: &[Vec<(usize, usize)>],
        start: usize,
        current: usize,
        depth: usize,
        first_nbr: usize,
        path: &mut Vec<usize>,
        used: &mut BTreeSet<usize>,
        on_path: &mut Vec<bool>,
        budget: &mut Budget,
        best: &mut Option<Vec<usize>>,
    ) -> Result<(), SolveError> {
        budget.tick()?;
        if let Some(b) = best {
            if path.len() + 1 >= b.len() {
                return Ok(());
            }
        }
        for &(next, eidx) in &adj[current] {
            if used.contains(&eidx) {
                continue;
            }
            if next == start && depth >= 3 {
                if first_nbr > current {
                    continue;
                }
                used.insert(eidx);
                if mg.component_count_without(used) == 1 {
                    let mut cycle = path.clone();
                    cycle.push(eidx);
                    let better = match best {
                        None => true,
                        Some(b) => {
                            cycle.len() < b.len() || (cycle.len() == b.len() && cycle < *b)
                        }
                    };
                    if better {
                        *best = Some(cycle);
                    }
                }
                used.remove(&eidx);
            } else if next > start && !on_path[next] {
                used.insert(eidx);
                if mg.component_count_without(used) == 1 {
                    path.push(eidx);
                    on_path[next] = true;
                    let fnbr = if depth == 1 { next } else { first_nbr };
                    dfs(
                        mg, adj, start, next, depth + 1, fnbr, path, used, on_path, budget, best,
                    )?;
                    on_path[next] = false;
                    path.pop();
                }
                used.remove(&eidx);
            }
        }
        Ok(())
    }

    for start in 0..n {
        on_path[start] = true;
        let mut path = Vec::new();
        dfs(
            mg, &adj, start, start, 1, usize::MAX, &mut path, &mut used, &mut on_path,
            &mut budget, &mut best,
        )?;
        on_path[start] = false;
    }
    Ok(best)
}

// ---- witness checking ----------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub ok: bool,
    pub diagnostic: String,
}

impl CheckOutcome {
    fn pass() -> CheckOutcome {
        CheckOutcome {
            ok: true,
            diagnostic: "ok".into(),
        }
    }

    fn fail(diagnostic: String) -> CheckOutcome {
        CheckOutcome { ok: false, diagnostic }
    }
}

/// Validates witness shape and the problem predicate; the diagnostic
/// names the first violated condition.
pub fn check_witness(
    g: &Graph,
    w: &Witness,
    expect: ProblemKind,
    st: Option<(VertexId, VertexId)>,
) -> CheckOutcome {
    match (expect, w) {
        (ProblemKind::Cycle, Witness::Cycle(edges)) => check_cycle_witness(g, edges),
        (ProblemKind::StPath, Witness::Path(seq)) => {
            let (s, t) = match st {
                Some(p) => p,
                None => return CheckOutcome::fail("missing s/t for path witness".into()),
            };
            check_path_witness(g, seq, s, t)
        }
        (ProblemKind::Partition, Witness::Partition { tree, spanning }) => {
            check_partition_witness(g, tree, spanning)
        }
        _ => CheckOutcome::fail(format!(
            "witness shape does not match problem {}",
            expect.tag()
        )),
    }
}

fn disconnect_diagnostic(g: &Graph, removed: &BTreeSet<Edge>) -> String {
    let comps = g.components_without(removed);
    let smallest = comps
        .iter()
        .min_by_key(|c| c.len())
        .expect("nonempty graph");
    let v = smallest.iter().next().expect("nonempty component");
    format!(
        "removal disconnects: vertex {v} separated in a component of {} vertex(es)",
        smallest.len()
    )
}

fn check_cycle_witness(g: &Graph, edges: &EdgeSubset) -> CheckOutcome {
    for e in edges.iter() {
        if !g.has_edge(e) {
            return CheckOutcome::fail(format!("edge {e} not in host graph"));
        }
    }
    if edges.len() < 3 {
        return CheckOutcome::fail(format!("{} edges cannot form a simple cycle", edges.len()));
    }
    let verts = edges.endpoints();
    if verts.len() != edges.len() {
        return CheckOutcome::fail(format!(
            "edge set on {} vertices with {} edges is not a single cycle",
            verts.len(),
            edges.len()
        ));
    }
    for &v in &verts {
        let d = edges.iter().filter(|e| e.touches(v)).count();
        if d != 2 {
            return CheckOutcome::fail(format!("vertex {v} has degree {d} in the witness"));
        }
    }
    // connected + all degrees 2 + |E| = |V| => a single simple cycle
    let mut uf = crate::graph::UnionFind::new(verts.iter().copied());
    for e in edges.iter() {
        uf.union(e.lo(), e.hi());
    }
    if uf.components().len() != 1 {
        return CheckOutcome::fail("witness edges split into several cycles".into());
    }
    match graph::is_connected_after_removal(g, edges) {
        Ok(true) => CheckOutcome::pass(),
        Ok(false) => CheckOutcome::fail(disconnect_diagnostic(g, edges.edge_set())),
        Err(e) => CheckOutcome::fail(e.to_string()),
    }
}

fn check_path_witness(g: &Graph, seq: &[Edge], s: VertexId, t: VertexId) -> CheckOutcome {
    if seq.is_empty() {
        return CheckOutcome::fail("empty path witness".into());
    }
    for e in seq {
        if !g.has_edge(*e) {
            return CheckOutcome::fail(format!("edge {e} not in host graph"));
        }
    }
    // walk the sequence from s
    let mut at = s;
    let mut visited: BTreeSet<VertexId> = [s].into();
    for e in seq {
        if !e.touches(at) {
            return CheckOutcome::fail(format!("edge {e} does not continue the walk at {at}"));
        }
        at = e.other(at);
        if !visited.insert(at) {
            return CheckOutcome::fail(format!("vertex {at} repeated; path is not simple"));
        }
    }
    if at != t {
        return CheckOutcome::fail(format!("walk ends at {at}, not at t = {t}"));
    }
    let subset = match EdgeSubset::new(g, seq.iter().copied()) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::fail(e.to_string()),
    };
    if subset.len() != seq.len() {
        return CheckOutcome::fail("repeated edge in path witness".into());
    }
    match graph::is_connected_after_removal(g, &subset) {
        Ok(true) => CheckOutcome::pass(),
        Ok(false) => CheckOutcome::fail(disconnect_diagnostic(g, subset.edge_set())),
        Err(e) => CheckOutcome::fail(e.to_string()),
    }
}

fn check_partition_witness(g: &Graph, tree: &EdgeSubset, spanning: &EdgeSubset) -> CheckOutcome {
    if let Some(e) = tree.iter().find(|e| spanning.contains(*e)) {
        return CheckOutcome::fail(format!("parts share edge {e}"));
    }
    if tree.len() + spanning.len() != g.edge_count() {
        return CheckOutcome::fail(format!(
            "parts cover {} of {} edges",
            tree.len() + spanning.len(),
            g.edge_count()
        ));
    }
    match graph::is_spanning_tree(g, spanning) {
        Ok(true) => {}
        Ok(false) => return CheckOutcome::fail("second part is not a spanning tree".into()),
        Err(e) => return CheckOutcome::fail(e.to_string()),
    }
    if tree.is_empty() {
        // valid exactly when g is itself a tree
        return if g.edge_count() + 1 == g.vertex_count() {
            CheckOutcome::pass()
        } else {
            CheckOutcome::fail("empty tree part but the host is not a tree".into())
        };
    }
    match graph::is_tree(g, tree) {
        Ok(true) => CheckOutcome::pass(),
        Ok(false) => CheckOutcome::fail("first part is not a tree".into()),
        Err(e) => CheckOutcome::fail(e.to_string()),
    }
}

/// Cut validity used by the acyclic-cut harness checks: the edge set must
/// be exactly the crossing set of some bipartition, and contain no cycle.
pub fn check_acyclic_cut(g: &Graph, cut: &BTreeSet<Edge>) -> CheckOutcome {
    for e in cut {
        if !g.has_edge(*e) {
            return CheckOutcome::fail(format!("edge {e} not in host graph"));
        }
    }
    if cut.is_empty() {
        return CheckOutcome::fail("empty cut".into());
    }
    if !edge_set_is_forest(cut) {
        return CheckOutcome::fail("cut contains a cycle".into());
    }
    // Components of g - cut must 2-color so that every cut edge crosses.
    let comps = g.components_without(cut);
    let comp_of = |v: VertexId| -> usize {
        comps.iter().position(|c| c.contains(&v)).expect("component")
    };
    let mut color: Vec<Option<bool>> = vec![None; comps.len()];
    color[0] = Some(false);
    loop {
        let mut changed = false;
        for e in cut {
            let a = comp_of(e.lo());
            let b = comp_of(e.hi());
            if a == b {
                return CheckOutcome::fail(format!(
                    "cut edge {e} joins vertices on the same shore"
                ));
            }
            match (color[a], color[b]) {
                (Some(x), Some(y)) if x == y => {
                    return CheckOutcome::fail("cut is not a bipartition crossing set".into())
                }
                (Some(x), None) => {
                    color[b] = Some(!x);
                    changed = true;
                }
                (None, Some(y)) => {
                    color[a] = Some(!y);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if color.iter().any(|c| c.is_none()) {
        // component untouched by the cut: put it anywhere; with all cut
        // edges crossing two colored shores this cannot happen in a
        // connected graph
        return CheckOutcome::fail("cut does not touch every component".into());
    }
    CheckOutcome::pass()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: u32, b: u32) -> Edge {
        Edge::new(VertexId(a), VertexId(b))
    }

    fn fig2() -> Graph {
        Graph::from_parts(
            0..5,
            [(0, 4), (4, 3), (3, 1), (3, 2), (0, 1), (1, 2), (2, 0)],
        )
        .unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_parts(0..3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_parts(0..4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn square() -> Graph {
        Graph::from_parts(0..4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn cycle_oracle_on_fig2_finds_abca() {
        let g = fig2();
        let w = find_nonseparating_cycle(&g, &SearchLimits::default())
            .unwrap()
            .expect("fig2 has a nonseparating cycle");
        let Witness::Cycle(edges) = &w else { panic!() };
        assert_eq!(edges.len(), 3, "abca is the unique shortest");
        assert_eq!(
            edges.edge_set().iter().copied().collect::<Vec<_>>(),
            vec![edge(0, 1), edge(0, 2), edge(1, 2)]
        );
        assert!(check_witness(&g, &w, ProblemKind::Cycle, None).ok);
    }

    #[test]
    fn cycle_oracle_on_triangle_is_none() {
        assert_eq!(
            find_nonseparating_cycle(&triangle(), &SearchLimits::default()).unwrap(),
            None
        );
    }

    #[test]
    fn cycle_oracle_on_k4_finds_a_triangle() {
        let g = k4();
        let w = find_nonseparating_cycle(&g, &SearchLimits::default())
            .unwrap()
            .expect("any triangle of K4 works");
        let Witness::Cycle(edges) = &w else { panic!() };
        assert_eq!(edges.len(), 3);
        assert!(check_witness(&g, &w, ProblemKind::Cycle, None).ok);
    }

    #[test]
    fn cycle_witness_diagnostics_name_the_stranded_vertex() {
        let g = fig2();
        let abca = Witness::Cycle(
            EdgeSubset::new(&g, [edge(0, 1), edge(1, 2), edge(2, 0)]).unwrap(),
        );
        assert!(check_witness(&g, &abca, ProblemKind::Cycle, None).ok);

        let abdea = Witness::Cycle(
            EdgeSubset::new(&g, [edge(0, 1), edge(1, 3), edge(3, 4), edge(4, 0)]).unwrap(),
        );
        let out = check_witness(&g, &abdea, ProblemKind::Cycle, None);
        assert!(!out.ok);
        assert!(out.diagnostic.contains("vertex 4"), "{}", out.diagnostic);
    }

    #[test]
    fn path_oracle_on_square() {
        let g = square();
        let w = find_nonseparating_st_path(&g, VertexId(0), VertexId(1), &SearchLimits::default())
            .unwrap()
            .expect("edge ab leaves a spanning path");
        let Witness::Path(seq) = &w else { panic!() };
        assert_eq!(seq, &vec![edge(0, 1)]);
        assert!(check_witness(
            &g,
            &w,
            ProblemKind::StPath,
            Some((VertexId(0), VertexId(1)))
        )
        .ok);
    }

    #[test]
    fn path_oracle_on_path_graph_is_none() {
        let g = Graph::from_parts(0..3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            find_nonseparating_st_path(&g, VertexId(0), VertexId(2), &SearchLimits::default())
                .unwrap(),
            None
        );
    }

    #[test]
    fn path_oracle_on_k4_takes_the_direct_edge() {
        let g = k4();
        for (s, t) in [(0u32, 1u32), (1, 3), (2, 3)] {
            let w = find_nonseparating_st_path(
                &g,
                VertexId(s),
                VertexId(t),
                &SearchLimits::default(),
            )
            .unwrap()
            .expect("K4 minus one edge stays connected");
            let Witness::Path(seq) = &w else { panic!() };
            assert_eq!(seq, &vec![edge(s, t)]);
        }
    }

    #[test]
    fn path_oracle_rejects_equal_endpoints() {
        let g = k4();
        assert!(matches!(
            find_nonseparating_st_path(&g, VertexId(0), VertexId(0), &SearchLimits::default()),
            Err(SolveError::InvalidInput(_))
        ));
    }

    #[test]
    fn partition_oracle_on_k4() {
        let g = k4();
        let w = find_tree_spanning_tree_partition(&g, &SearchLimits::default())
            .unwrap()
            .expect("K4 partitions into a path and a spanning tree");
        let Witness::Partition { tree, spanning } = &w else { panic!() };
        assert_eq!(spanning.len(), 3);
        assert_eq!(tree.len(), 3);
        assert!(check_witness(&g, &w, ProblemKind::Partition, None).ok);
    }

    #[test]
    fn partition_oracle_on_triangle_and_square() {
        for (g, tree_len) in [(triangle(), 1usize), (square(), 1usize)] {
            let w = find_tree_spanning_tree_partition(&g, &SearchLimits::default())
                .unwrap()
                .expect("single chord plus spanning path");
            let Witness::Partition { tree, .. } = &w else { panic!() };
            assert_eq!(tree.len(), tree_len);
            assert!(check_witness(&g, &w, ProblemKind::Partition, None).ok);
        }
    }

    #[test]
    fn partition_oracle_accepts_bare_trees() {
        let g = Graph::from_parts(0..4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let w = find_tree_spanning_tree_partition(&g, &SearchLimits::default())
            .unwrap()
            .expect("a tree is trivially a spanning tree plus the empty tree");
        let Witness::Partition { tree, spanning } = &w else { panic!() };
        assert!(tree.is_empty());
        assert_eq!(spanning.len(), 3);
        assert!(check_witness(&g, &w, ProblemKind::Partition, None).ok);
    }

    #[test]
    fn budget_errors_are_distinct_from_no() {
        let g = k4();
        let limits = SearchLimits {
            max_edges: 64,
            max_steps: 2,
        };
        assert!(matches!(
            find_nonseparating_cycle(&g, &limits),
            Err(SolveError::Budget(2))
        ));
        let tiny = SearchLimits {
            max_edges: 3,
            max_steps: 1000,
        };
        assert!(matches!(
            find_nonseparating_cycle(&g, &tiny),
            Err(SolveError::TooManyEdges(6, 3))
        ));
    }

    #[test]
    fn acyclic_cut_on_triangle_agrees_both_ways() {
        let g = triangle();
        let rot = embed::find_planar_embedding(&g).unwrap().unwrap();
        let by_dual = find_acyclic_cut(&g, &rot, &SearchLimits::default()).unwrap();
        let by_brute = find_acyclic_cut_bruteforce(&g).unwrap();
        assert!(by_dual.is_some());
        assert!(by_brute.is_some());
        assert!(check_acyclic_cut(&g, &by_dual.unwrap()).ok);
        assert!(check_acyclic_cut(&g, &by_brute.unwrap()).ok);
    }

    #[test]
    fn acyclic_cut_on_single_edge() {
        let g = Graph::from_parts(0..2, [(0, 1)]).unwrap();
        let rot = embed::find_planar_embedding(&g).unwrap().unwrap();
        let by_dual = find_acyclic_cut(&g, &rot, &SearchLimits::default())
            .unwrap()
            .expect("loop in the dual");
        assert_eq!(by_dual.len(), 1);
        let by_brute = find_acyclic_cut_bruteforce(&g).unwrap().expect("trivial cut");
        assert_eq!(by_dual, by_brute);
        assert!(check_acyclic_cut(&g, &by_dual).ok);
    }

    #[test]
    fn partition_witness_cardinalities() {
        for g in [k4(), square(), fig2()] {
            if let Some(Witness::Partition { tree, spanning }) =
                find_tree_spanning_tree_partition(&g, &SearchLimits::default()).unwrap()
            {
                assert_eq!(spanning.len(), g.vertex_count() - 1);
                assert_eq!(tree.len(), g.edge_count() + 1 - g.vertex_count());
            }
        }
    }

    // naive subset-enumeration references, kept independent of the search code

    fn subsets(edges: &[Edge]) -> impl Iterator<Item = Vec<Edge>> + '_ {
        (0u32..(1 << edges.len())).map(move |mask| {
            edges
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, e)| *e)
                .collect()
        })
    }

    fn naive_has_nonseparating_cycle(g: &Graph) -> bool {
        let edges: Vec<Edge> = g.edges().collect();
        let found = subsets(&edges).any(|sub| {
            if sub.len() < 3 {
                return false;
            }
            let subset = EdgeSubset::new(g, sub.iter().copied()).unwrap();
            let verts = subset.endpoints();
            let degrees_ok = verts
                .iter()
                .all(|&v| sub.iter().filter(|e| e.touches(v)).count() == 2);
            let mut uf = crate::graph::UnionFind::new(verts.iter().copied());
            for e in &sub {
                uf.union(e.lo(), e.hi());
            }
            degrees_ok
                && verts.len() == sub.len()
                && uf.components().len() == 1
                && graph::is_connected_after_removal(g, &subset).unwrap()
        });
        found
    }

    #[test]
    fn cycle_oracle_matches_naive_reference_on_small_graphs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 60 {
            let n = rng.gen_range(2..=5usize);
            let mut g = Graph::new();
            let vs: Vec<VertexId> = (0..n).map(|_| g.add_vertex()).collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.55) {
                        g.add_edge(vs[i], vs[j]).unwrap();
                    }
                }
            }
            if !g.is_connected() {
                continue;
            }
            checked += 1;
            let got = find_nonseparating_cycle(&g, &SearchLimits::default())
                .unwrap()
                .is_some();
            assert_eq!(got, naive_has_nonseparating_cycle(&g));
        }
    }
}
