//! The three gadget reductions from planar boolean expressions to planar
//! graph instances, plus witness translation in both directions.
//!
//! Every variable of the expression is replaced by a ladder of two
//! colored parallel paths that cross at regular intervals, decorated
//! with degree-2 connectors that force any nonseparating cycle to commit
//! to exactly one path per variable; clause edges are re-attached to
//! same-colored ladder edges through degree-2 taps, tying clause
//! satisfaction to the committed side. The rotation system is maintained
//! through every rewrite so the output is a plane embedding by
//! construction, and the Euler check re-verifies it.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::embed::{self, EmbedError, RotationSystem};
use crate::graph::{Edge, Graph, GraphError, VertexId};
use crate::label::{EdgeColor, Sign, VertexLabel};
use crate::sat::{Assignment, PlanarCnf, SatError};
use crate::solve::{check_witness, ProblemKind, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("clause {0} is empty; the expression is trivially unsatisfiable and has no connected associated graph")]
    EmptyClause(u32),
    #[error("rotation system is not a plane embedding of the associated graph: {0}")]
    BadEmbedding(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("assignment does not satisfy the expression")]
    NotSatisfying,
    #[error("operation needs a {expected} instance, got {got}")]
    WrongKind { expected: &'static str, got: &'static str },
    #[error("witness is not a union of ladder paths: {0}")]
    NotPathUnion(String),
    #[error(transparent)]
    Sat(#[from] SatError),
}

/// Which of the three problems the instance encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Cycle,
    StPath,
    TreePartition,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Cycle => "cycle",
            ReductionKind::StPath => "stpath",
            ReductionKind::TreePartition => "partition",
        }
    }

    pub fn problem(self) -> ProblemKind {
        match self {
            ReductionKind::Cycle => ProblemKind::Cycle,
            ReductionKind::StPath => ProblemKind::StPath,
            ReductionKind::TreePartition => ProblemKind::Partition,
        }
    }
}

/// Back-map entry for one clause occurrence: the ladder tap, the clause
/// tap, and the ladder block hosting the tap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TapEntry {
    pub a: VertexId,
    pub b: VertexId,
    pub block: u32,
}

/// A labeled embedded graph produced by one of the reductions, with the
/// metadata needed to translate witnesses.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    kind: ReductionKind,
    cnf: PlanarCnf,
    graph: Graph,
    rot: RotationSystem,
    ladder_k: BTreeMap<u32, u32>,
    taps: BTreeMap<(u32, u32), TapEntry>,
    s: Option<VertexId>,
    t: Option<VertexId>,
}

pub fn reduce_to_cycle_packing(
    cnf: &PlanarCnf,
    emb: &RotationSystem,
) -> Result<ReducedInstance, ReduceError> {
    reduce(cnf, emb, ReductionKind::Cycle)
}

pub fn reduce_to_path_packing(
    cnf: &PlanarCnf,
    emb: &RotationSystem,
) -> Result<ReducedInstance, ReduceError> {
    reduce(cnf, emb, ReductionKind::StPath)
}

pub fn reduce_to_tree_partition(
    cnf: &PlanarCnf,
    emb: &RotationSystem,
) -> Result<ReducedInstance, ReduceError> {
    reduce(cnf, emb, ReductionKind::TreePartition)
}

/// Ladder parameter: twice the number of clause taps at the variable,
/// floored at one block pair so isolated variables still get the full
/// connector pattern.
pub fn ladder_parameter(occurrences: usize) -> u32 {
    ((2 * occurrences) as u32).max(1)
}

/// Exact vertex and edge counts of the reduction output.
pub fn expected_size(cnf: &PlanarCnf, kind: ReductionKind) -> (usize, usize) {
    let n = cnf.var_count() as usize;
    let m = cnf.clause_count();
    let l: usize = cnf.total_literals();
    let k_total: usize = (1..=cnf.var_count())
        .map(|i| ladder_parameter(cnf.occurrences(i)) as usize)
        .sum();
    let v = 4 * n + m + 10 * k_total + 2 * l;
    let e = 6 * n + 14 * k_total + 3 * l;
    match kind {
        ReductionKind::Cycle => (v, e),
        // one junction contraction is replaced by an edge deletion
        ReductionKind::StPath => (v + 1, e),
        ReductionKind::TreePartition => (v + 5, e + 6),
    }
}

// ---- the construction -------------------------------------------------------

/// Rotation-list builder: the cyclic adjacency vector at each vertex IS
/// the embedding, so every rewrite below preserves planarity by local
/// surgery.
struct Builder {
    adj: BTreeMap<VertexId, Vec<VertexId>>,
    colors: BTreeMap<Edge, EdgeColor>,
    labels: BTreeMap<VertexId, VertexLabel>,
    next: u32,
}

impl Builder {
    fn from_embedded(g: &Graph, rot: &RotationSystem) -> Builder {
        let adj: BTreeMap<VertexId, Vec<VertexId>> = g
            .vertices()
            .map(|v| (v, rot.order(v).to_vec()))
            .collect();
        let colors = g
            .edges()
            .filter(|e| g.color(*e) != EdgeColor::Neutral)
            .map(|e| (e, g.color(e)))
            .collect();
        let labels = g.labels().collect();
        let next = g.vertices().map(|v| v.0 + 1).max().unwrap_or(0);
        Builder { adj, colors, labels, next }
    }

    fn fresh(&mut self, label: Option<VertexLabel>) -> VertexId {
        let v = VertexId(self.next);
        self.next += 1;
        self.adj.insert(v, Vec::new());
        if let Some(l) = label {
            self.labels.insert(v, l);
        }
        v
    }

    fn color(&self, e: Edge) -> EdgeColor {
        self.colors.get(&e).copied().unwrap_or(EdgeColor::Neutral)
    }

    fn set_color(&mut self, a: VertexId, b: VertexId, c: EdgeColor) {
        let e = Edge::new(a, b);
        if c == EdgeColor::Neutral {
            self.colors.remove(&e);
        } else {
            self.colors.insert(e, c);
        }
    }

    fn replace_neighbor(&mut self, v: VertexId, old: VertexId, new: VertexId) {
        let list = self.adj.get_mut(&v).expect("vertex present");
        let pos = list.iter().position(|&x| x == old).expect("old neighbor present");
        list[pos] = new;
    }

    fn insert_after(&mut self, v: VertexId, anchor: VertexId, w: VertexId) {
        let list = self.adj.get_mut(&v).expect("vertex present");
        let pos = list.iter().position(|&x| x == anchor).expect("anchor present");
        list.insert(pos + 1, w);
    }

    /// Splits edge (a, b) at a fresh vertex; both halves keep the color.
    fn subdivide(&mut self, a: VertexId, b: VertexId, label: Option<VertexLabel>) -> VertexId {
        let e = Edge::new(a, b);
        let color = self.color(e);
        self.colors.remove(&e);
        let w = self.fresh(label);
        self.replace_neighbor(a, b, w);
        self.replace_neighbor(b, a, w);
        self.adj.insert(w, vec![a, b]);
        self.set_color(a, w, color);
        self.set_color(w, b, color);
        w
    }

    fn delete_vertex(&mut self, v: VertexId) {
        let neighbors = self.adj.remove(&v).expect("vertex present");
        for n in neighbors {
            self.adj.get_mut(&n).unwrap().retain(|&x| x != v);
            self.colors.remove(&Edge::new(v, n));
        }
        self.labels.remove(&v);
    }

    fn delete_edge(&mut self, a: VertexId, b: VertexId) {
        self.adj.get_mut(&a).unwrap().retain(|&x| x != b);
        self.adj.get_mut(&b).unwrap().retain(|&x| x != a);
        self.colors.remove(&Edge::new(a, b));
    }

    /// Contracts edge (u, v) into a fresh labeled vertex; the merged
    /// rotation is u's order from just past v spliced with v's order from
    /// just past u.
    fn contract(&mut self, u: VertexId, v: VertexId, label: VertexLabel) -> VertexId {
        let ru = self.adj[&u].clone();
        let rv = self.adj[&v].clone();
        assert!(
            !ru.iter().any(|x| *x != v && rv.contains(x)),
            "contraction would break simplicity"
        );
        let w = self.fresh(Some(label));
        let splice = |rot: &[VertexId], skip: VertexId| -> Vec<VertexId> {
            let pos = rot.iter().position(|&x| x == skip).expect("edge endpoint");
            let mut out = Vec::with_capacity(rot.len() - 1);
            for off in 1..rot.len() {
                out.push(rot[(pos + off) % rot.len()]);
            }
            out
        };
        let mut merged = splice(&ru, v);
        merged.extend(splice(&rv, u));
        for &n in &merged {
            let old = if ru.contains(&n) { u } else { v };
            let color = self.color(Edge::new(old, n));
            self.colors.remove(&Edge::new(old, n));
            self.replace_neighbor(n, old, w);
            self.set_color(w, n, color);
        }
        self.colors.remove(&Edge::new(u, v));
        self.adj.remove(&u);
        self.adj.remove(&v);
        self.labels.remove(&u);
        self.labels.remove(&v);
        self.adj.insert(w, merged);
        w
    }

    fn finish(self) -> Result<(Graph, RotationSystem), GraphError> {
        let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (v, ns) in &self.adj {
            for n in ns {
                let (a, b) = if v.0 < n.0 { (v.0, n.0) } else { (n.0, v.0) };
                edges.insert((a, b));
            }
        }
        let mut g = Graph::from_parts(self.adj.keys().map(|v| v.0), edges)?;
        for (v, l) in &self.labels {
            g.set_label(*v, *l)?;
        }
        for (e, c) in &self.colors {
            g.set_color(*e, *c);
        }
        let rot = RotationSystem::new(self.adj);
        Ok((g, rot))
    }
}

/// Side of the ladder a path occupies within one block: the minus path
/// starts on the clause-arc side of the first block and the two paths
/// swap sides at every crossing.
fn minus_on_top(block: u32) -> bool {
    block % 2 == 0
}

fn block_of_index(j: u32) -> u32 {
    (j + 2) / 4
}

struct GadgetVertices {
    // index j -> vertex; crossings stored in both paths' slots
    u: Vec<VertexId>,
    v: Vec<VertexId>,
    omega: BTreeMap<u32, VertexId>,
    sigma: BTreeMap<u32, VertexId>,
    tau: BTreeMap<u32, VertexId>,
}

impl GadgetVertices {
    fn path(&self, sign: Sign, j: u32) -> VertexId {
        match sign {
            Sign::Minus => self.u[j as usize],
            Sign::Plus => self.v[j as usize],
        }
    }
}

fn reduce(
    cnf: &PlanarCnf,
    emb: &RotationSystem,
    kind: ReductionKind,
) -> Result<ReducedInstance, ReduceError> {
    for j in 1..=cnf.clause_count() as u32 {
        if cnf.clause(j).is_empty() {
            return Err(ReduceError::EmptyClause(j));
        }
    }
    let assoc = cnf.associated_graph();
    emb.validate(&assoc)?;
    if !embed::check_planar_embedding(&assoc, emb)? {
        return Err(ReduceError::BadEmbedding(
            "Euler check fails on the provided rotation system".into(),
        ));
    }

    let n = cnf.var_count();
    let mut b = Builder::from_embedded(&assoc, emb);

    // Subdivide every cycle edge x_i x_{i+1} into x_i t_i s_{i+1} x_{i+1}.
    let mut t_of: BTreeMap<u32, VertexId> = BTreeMap::new();
    let mut s_of: BTreeMap<u32, VertexId> = BTreeMap::new();
    for i in 1..=n {
        let xi = cnf.var_vertex(i);
        let xnext = cnf.var_vertex(if i == n { 1 } else { i + 1 });
        // junction vertices stay unlabeled until contraction or s/t naming
        let ti = b.subdivide(xi, xnext, None);
        let si = b.subdivide(ti, xnext, None);
        t_of.insert(i, ti);
        s_of.insert(if i == n { 1 } else { i + 1 }, si);
    }

    let mut ladder_k: BTreeMap<u32, u32> = BTreeMap::new();
    let mut taps: BTreeMap<(u32, u32), TapEntry> = BTreeMap::new();

    for i in 1..=n {
        let xi = cnf.var_vertex(i);
        let ti = t_of[&i];
        let si = s_of[&i];

        // Clause arcs around x_i: rotation order starting just past t_i.
        // The arc before s_i hangs on the tap side of the minus path's
        // first block ("top"), the rest on the other side.
        let rot_xi = b.adj[&xi].clone();
        let t_pos = rot_xi.iter().position(|&x| x == ti).expect("t_i adjacent");
        let mut top_arc: Vec<u32> = Vec::new(); // clause indices
        let mut bottom_arc: Vec<u32> = Vec::new();
        let mut past_s = false;
        for off in 1..rot_xi.len() {
            let nb = rot_xi[(t_pos + off) % rot_xi.len()];
            if nb == si {
                past_s = true;
                continue;
            }
            let clause = match b.labels.get(&nb) {
                Some(VertexLabel::Clause { clause }) => *clause,
                other => panic!("unexpected neighbor label {other:?} at variable {i}"),
            };
            if past_s {
                bottom_arc.push(clause);
            } else {
                top_arc.push(clause);
            }
        }

        // Clause-edge taps, allocated in rotation order.
        let mut beta_of: BTreeMap<u32, VertexId> = BTreeMap::new();
        for &j in top_arc.iter().chain(bottom_arc.iter()) {
            let beta = b.subdivide(
                xi,
                cnf.clause_vertex(j),
                Some(VertexLabel::B { var: i, clause: j }),
            );
            beta_of.insert(j, beta);
        }

        b.delete_vertex(xi);

        let occ = beta_of.len();
        let k = ladder_parameter(occ);
        ladder_k.insert(i, k);
        let top_count = 4 * k; // highest ladder index

        // Ladder vertices by index; crossings shared between both paths.
        let mut gv = GadgetVertices {
            u: Vec::with_capacity((top_count + 1) as usize),
            v: Vec::with_capacity((top_count + 1) as usize),
            omega: BTreeMap::new(),
            sigma: BTreeMap::new(),
            tau: BTreeMap::new(),
        };
        for j in 0..=top_count {
            if j % 4 == 2 {
                let x = b.fresh(Some(VertexLabel::Cross { var: i, index: j }));
                gv.u.push(x);
                gv.v.push(x);
            } else {
                let u = b.fresh(Some(VertexLabel::PathV { var: i, sign: Sign::Minus, index: j }));
                let v = b.fresh(Some(VertexLabel::PathV { var: i, sign: Sign::Plus, index: j }));
                gv.u.push(u);
                gv.v.push(v);
            }
        }
        // Connectors by index: one splitter per block, one bridge pair per
        // crossing.
        for j in (0..=top_count).step_by(4) {
            gv.omega.insert(j, b.fresh(Some(VertexLabel::Omega { var: i, index: j })));
        }
        for j in (2..=top_count).step_by(4) {
            gv.sigma.insert(j, b.fresh(Some(VertexLabel::Sigma { var: i, index: j })));
            gv.tau.insert(j, b.fresh(Some(VertexLabel::Tau { var: i, index: j })));
        }

        wire_gadget(&mut b, &gv, si, ti, k);

        // Tap placement: one shared strictly-increasing block counter per
        // variable, so taps at one variable always land in pairwise
        // distinct blocks. The top arc is walked from the s_i end (reverse
        // rotation order), the bottom arc from the s_i end (rotation
        // order); blocks grow toward t_i on both sides, which keeps the
        // tap chords crossing-free.
        let mut next_block: u32 = 0;
        let placements: Vec<(u32, bool)> = top_arc
            .iter()
            .rev()
            .map(|&j| (j, true))
            .chain(bottom_arc.iter().map(|&j| (j, false)))
            .collect();
        for (j, on_top) in placements {
            let color = cnf
                .literal_sign(i, j)
                .expect("beta exists only for literals of the clause");
            // which path runs on this side of block `blk`
            let mut blk = next_block;
            loop {
                assert!(blk <= k, "ladder has room for every tap");
                let path_here = if minus_on_top(blk) == on_top { Sign::Minus } else { Sign::Plus };
                if path_here == color {
                    break;
                }
                blk += 1;
            }
            next_block = blk + 1;

            let (left, right) = if blk == 0 {
                (si, gv.path(color, 0))
            } else {
                (gv.path(color, 4 * blk - 1), gv.path(color, 4 * blk))
            };
            let a = b.subdivide(left, right, Some(VertexLabel::A { var: i, clause: j }));
            let beta = beta_of[&j];
            if on_top {
                // ccw at the tap: right, beta, left
                let list = b.adj.get_mut(&a).unwrap();
                debug_assert_eq!(list.as_slice(), &[left, right]);
                list.push(beta);
            } else {
                b.insert_after(a, left, beta);
            }
            b.adj.get_mut(&beta).unwrap().push(a);
            taps.insert((i, j), TapEntry { a, b: beta, block: blk });
        }
    }

    // Junction contractions, and the s/t split for the path variants.
    let mut s_vertex = None;
    let mut t_vertex = None;
    let contract_until = if kind == ReductionKind::Cycle { n } else { n - 1 };
    for i in 1..=contract_until {
        let next = if i == n { 1 } else { i + 1 };
        b.contract(t_of[&i], s_of[&next], VertexLabel::Y { var: i });
    }
    if kind != ReductionKind::Cycle {
        let s = s_of[&1];
        let t = t_of[&n];
        b.delete_edge(t, s);
        b.labels.insert(s, VertexLabel::S);
        b.labels.insert(t, VertexLabel::T);
        s_vertex = Some(s);
        t_vertex = Some(t);
        if kind == ReductionKind::TreePartition {
            let sp = b.fresh(Some(VertexLabel::SPrime));
            let spp = b.fresh(Some(VertexLabel::SDoublePrime));
            let tp = b.fresh(Some(VertexLabel::TPrime));
            let tpp = b.fresh(Some(VertexLabel::TDoublePrime));
            let s_rot = b.adj.get_mut(&s).unwrap();
            debug_assert_eq!(s_rot.len(), 2);
            s_rot.insert(1, spp);
            s_rot.insert(1, sp);
            b.adj.insert(sp, vec![s, spp]);
            b.adj.insert(spp, vec![sp, s]);
            let t_rot = b.adj.get_mut(&t).unwrap();
            debug_assert_eq!(t_rot.len(), 2);
            t_rot.insert(0, tp);
            t_rot.push(tpp);
            b.adj.insert(tp, vec![t, tpp]);
            b.adj.insert(tpp, vec![tp, t]);
        }
    }

    let (graph, rot) = b.finish()?;
    let inst = ReducedInstance {
        kind,
        cnf: cnf.clone(),
        graph,
        rot,
        ladder_k,
        taps,
        s: s_vertex,
        t: t_vertex,
    };
    match embed::check_planar_embedding(&inst.graph, &inst.rot) {
        Ok(true) => {}
        other => {
            return Err(ReduceError::BadEmbedding(format!(
                "constructed instance failed the Euler check: {other:?}"
            )))
        }
    }
    let (ev, ee) = expected_size(cnf, kind);
    assert_eq!(
        (inst.graph.vertex_count(), inst.graph.edge_count()),
        (ev, ee),
        "size formula violated"
    );
    Ok(inst)
}

/// Installs the two colored paths, their crossings, and the connector
/// pattern between s_i and t_i, with rotations transcribed from the
/// plane drawing of the gadget.
fn wire_gadget(b: &mut Builder, gv: &GadgetVertices, si: VertexId, ti: VertexId, k: u32) {
    let top = 4 * k;
    // path edges
    for sign in [Sign::Minus, Sign::Plus] {
        let color = EdgeColor::from_sign(sign);
        b.set_color(si, gv.path(sign, 0), color);
        for j in 0..top {
            b.set_color(gv.path(sign, j), gv.path(sign, j + 1), color);
        }
        b.set_color(gv.path(sign, top), ti, color);
    }

    // rotations of the endpoints: s keeps its outer neighbor between the
    // two path starts, t keeps its outer neighbor before them
    let ext_s = b.adj[&si][0];
    b.adj.insert(si, vec![gv.path(Sign::Minus, 0), ext_s, gv.path(Sign::Plus, 0)]);
    let ext_t = b.adj[&ti][0];
    let (t_top, t_bot) = if minus_on_top(k) {
        (gv.path(Sign::Minus, top), gv.path(Sign::Plus, top))
    } else {
        (gv.path(Sign::Plus, top), gv.path(Sign::Minus, top))
    };
    b.adj.insert(ti, vec![ext_t, t_top, t_bot]);

    for j in 0..=top {
        if j % 4 == 2 {
            // crossing: both paths pass straight through; the cyclic order
            // alternates path membership, flipping with the crossing parity
            let c = (j + 2) / 4;
            let x = gv.path(Sign::Minus, j);
            let u_prev = prev_vertex(gv, si, Sign::Minus, j);
            let u_next = next_vertex(gv, ti, Sign::Minus, j, top);
            let v_prev = prev_vertex(gv, si, Sign::Plus, j);
            let v_next = next_vertex(gv, ti, Sign::Plus, j, top);
            let order = if c % 2 == 1 {
                vec![u_prev, v_prev, u_next, v_next]
            } else {
                vec![u_prev, v_next, u_next, v_prev]
            };
            b.adj.insert(x, order);
            continue;
        }
        for sign in [Sign::Minus, Sign::Plus] {
            let w = gv.path(sign, j);
            let on_top = (sign == Sign::Minus) == minus_on_top(block_of_index(j));
            let prev = prev_vertex(gv, si, sign, j);
            let next = next_vertex(gv, ti, sign, j, top);
            let (conn, conn_outside) = match j % 4 {
                0 => (gv.omega[&j], false),
                1 => match sign {
                    Sign::Minus => (gv.sigma[&(j + 1)], true),
                    Sign::Plus => (gv.tau[&(j + 1)], true),
                },
                3 => match sign {
                    Sign::Minus => (gv.tau[&(j - 1)], true),
                    Sign::Plus => (gv.sigma[&(j - 1)], true),
                },
                _ => unreachable!(),
            };
            // outside connectors sit between next and prev as seen from the
            // top side; the splitter sits inside the block
            let order = match (on_top, conn_outside) {
                (true, true) | (false, false) => vec![next, conn, prev],
                (true, false) | (false, true) => vec![next, prev, conn],
            };
            b.adj.insert(w, order);
        }
    }

    // connector rotations (degree 2, any cyclic order)
    for (&j, &w) in &gv.omega {
        b.adj.insert(w, vec![gv.path(Sign::Minus, j), gv.path(Sign::Plus, j)]);
    }
    for (&j, &w) in &gv.sigma {
        b.adj.insert(
            w,
            vec![gv.path(Sign::Minus, j - 1), gv.path(Sign::Plus, j + 1)],
        );
    }
    for (&j, &w) in &gv.tau {
        b.adj.insert(
            w,
            vec![gv.path(Sign::Plus, j - 1), gv.path(Sign::Minus, j + 1)],
        );
    }
}

fn prev_vertex(gv: &GadgetVertices, si: VertexId, sign: Sign, j: u32) -> VertexId {
    if j == 0 {
        si
    } else {
        gv.path(sign, j - 1)
    }
}

fn next_vertex(gv: &GadgetVertices, ti: VertexId, sign: Sign, j: u32, top: u32) -> VertexId {
    if j == top {
        ti
    } else {
        gv.path(sign, j + 1)
    }
}

// ---- instance accessors and witness translation ------------------------------

impl ReducedInstance {
    pub fn kind(&self) -> ReductionKind {
        self.kind
    }

    pub fn cnf(&self) -> &PlanarCnf {
        &self.cnf
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rot
    }

    pub fn ladder_parameter_of(&self, var: u32) -> u32 {
        self.ladder_k[&var]
    }

    pub fn ladder_parameters(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.ladder_k.iter().map(|(v, k)| (*v, *k))
    }

    pub fn tap(&self, var: u32, clause: u32) -> Option<TapEntry> {
        self.taps.get(&(var, clause)).copied()
    }

    pub fn taps(&self) -> impl Iterator<Item = ((u32, u32), TapEntry)> + '_ {
        self.taps.iter().map(|(k, v)| (*k, *v))
    }

    pub fn s_vertex(&self) -> Option<VertexId> {
        self.s
    }

    pub fn t_vertex(&self) -> Option<VertexId> {
        self.t
    }

    fn anchor_start(&self, var: u32) -> VertexId {
        if var == 1 {
            match self.kind {
                ReductionKind::Cycle => self
                    .graph
                    .vertex_by_label(VertexLabel::Y { var: self.cnf.var_count() })
                    .expect("wraparound junction"),
                _ => self.s.expect("s designated"),
            }
        } else {
            self.graph
                .vertex_by_label(VertexLabel::Y { var: var - 1 })
                .expect("junction present")
        }
    }

    fn anchor_end(&self, var: u32) -> VertexId {
        if var == self.cnf.var_count() {
            match self.kind {
                ReductionKind::Cycle => self
                    .graph
                    .vertex_by_label(VertexLabel::Y { var })
                    .expect("wraparound junction"),
                _ => self.t.expect("t designated"),
            }
        } else {
            self.graph
                .vertex_by_label(VertexLabel::Y { var })
                .expect("junction present")
        }
    }

    /// Ordered edge sequence of the `sign` ladder path of `var`, from the
    /// junction before the gadget to the one after it. Tap subdivisions
    /// are part of the path.
    pub fn ladder_path(&self, var: u32, sign: Sign) -> Vec<Edge> {
        let start = self.anchor_start(var);
        let end = self.anchor_end(var);
        let want = EdgeColor::from_sign(sign);
        let in_gadget = |v: VertexId| -> bool {
            self.graph.label(v).and_then(|l| l.var()) == Some(var)
        };
        let first = self
            .graph
            .neighbors(start)
            .into_iter()
            .find(|&nb| self.graph.color(Edge::new(start, nb)) == want && in_gadget(nb))
            .expect("ladder start edge");
        let mut path = vec![Edge::new(start, first)];
        let mut prev = start;
        let mut at = first;
        while at != end {
            let next = self
                .graph
                .neighbors(at)
                .into_iter()
                .find(|&nb| nb != prev && self.graph.color(Edge::new(at, nb)) == want)
                .expect("ladder continues");
            path.push(Edge::new(at, next));
            prev = at;
            at = next;
        }
        path
    }

    /// Certificate from a satisfying assignment: the union of the ladder
    /// paths opposite to the assigned signs, a simple cycle through every
    /// junction (or a simple s-t path on the path variant).
    pub fn forward_witness(&self, f: &Assignment) -> Result<Witness, WitnessError> {
        if !self.cnf.eval(f)? {
            return Err(WitnessError::NotSatisfying);
        }
        let n = self.cnf.var_count();
        match self.kind {
            ReductionKind::Cycle => {
                let mut edges = Vec::new();
                for i in 1..=n {
                    edges.extend(self.ladder_path(i, f.get(i).negate()));
                }
                let w = Witness::Cycle(
                    crate::graph::EdgeSubset::new(&self.graph, edges).expect("ladder edges"),
                );
                debug_assert!(check_witness(&self.graph, &w, ProblemKind::Cycle, None).ok);
                Ok(w)
            }
            ReductionKind::StPath => {
                let mut seq = Vec::new();
                for i in 1..=n {
                    seq.extend(self.ladder_path(i, f.get(i).negate()));
                }
                let w = Witness::Path(seq);
                debug_assert!(
                    check_witness(
                        &self.graph,
                        &w,
                        ProblemKind::StPath,
                        Some((self.s.unwrap(), self.t.unwrap()))
                    )
                    .ok
                );
                Ok(w)
            }
            ReductionKind::TreePartition => Err(WitnessError::WrongKind {
                expected: "cycle or stpath",
                got: "partition",
            }),
        }
    }

    /// Assignment from a nonseparating witness: detect which ladder path
    /// each gadget contributes and flip the signs back.
    pub fn backward_witness(&self, w: &Witness) -> Result<Assignment, WitnessError> {
        let edges: BTreeSet<Edge> = match w {
            Witness::Cycle(set) => set.iter().collect(),
            Witness::Path(seq) => seq.iter().copied().collect(),
            Witness::Partition { .. } => {
                return Err(WitnessError::WrongKind { expected: "cycle or stpath", got: "partition" })
            }
        };
        // A witness covering both edges of a degree-2 vertex would isolate
        // it; path endpoints touch such vertices with one edge only.
        let mut incident: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in &edges {
            for v in [e.lo(), e.hi()] {
                *incident.entry(v).or_insert(0) += 1;
            }
        }
        for (v, count) in &incident {
            if *count == 2 && self.graph.degree(*v) == 2 {
                let name = self
                    .graph
                    .label(*v)
                    .map(|l| l.to_string())
                    .unwrap_or_else(|| v.to_string());
                return Err(WitnessError::NotPathUnion(format!(
                    "witness passes through degree-2 vertex {name}, which its removal would isolate"
                )));
            }
        }
        let n = self.cnf.var_count();
        let mut signs = Vec::with_capacity(n as usize);
        let mut covered = 0usize;
        for i in 1..=n {
            let minus: BTreeSet<Edge> = self.ladder_path(i, Sign::Minus).into_iter().collect();
            let plus: BTreeSet<Edge> = self.ladder_path(i, Sign::Plus).into_iter().collect();
            let side = if minus.is_subset(&edges) {
                covered += minus.len();
                Sign::Minus
            } else if plus.is_subset(&edges) {
                covered += plus.len();
                Sign::Plus
            } else {
                return Err(WitnessError::NotPathUnion(format!(
                    "gadget of variable {i} contributes neither ladder path completely"
                )));
            };
            signs.push(side.negate());
        }
        if covered != edges.len() {
            return Err(WitnessError::NotPathUnion(format!(
                "{} witness edges lie outside every ladder path",
                edges.len() - covered
            )));
        }
        let f = Assignment::new(signs);
        if !self.cnf.eval(&f)? {
            return Err(WitnessError::NotPathUnion(
                "extracted assignment does not satisfy the expression; witness cannot be nonseparating"
                    .into(),
            ));
        }
        Ok(f)
    }

    /// Constructive tree + spanning-tree partition from a satisfying
    /// assignment. The assigned-side path union grows into a spanning
    /// tree by absorbing the connectors and the clause attachments, with
    /// one cycle repair per already-connected tap; the opposite path
    /// union plus the repair edges and the two pendant triangle edges
    /// form the tree.
    pub fn forward_witness_partition(&self, f: &Assignment) -> Result<Witness, WitnessError> {
        if self.kind != ReductionKind::TreePartition {
            return Err(WitnessError::WrongKind {
                expected: "partition",
                got: self.kind.name(),
            });
        }
        if !self.cnf.eval(f)? {
            return Err(WitnessError::NotSatisfying);
        }
        let g = &self.graph;
        let n = self.cnf.var_count();

        let mut q_plus: BTreeSet<Edge> = BTreeSet::new();
        let mut q_minus: BTreeSet<Edge> = BTreeSet::new();
        for i in 1..=n {
            q_plus.extend(self.ladder_path(i, f.get(i)));
            q_minus.extend(self.ladder_path(i, f.get(i).negate()));
        }
        // absorb all connector edges into the spanning side
        for (v, l) in g.labels() {
            if matches!(
                l,
                VertexLabel::Omega { .. } | VertexLabel::Sigma { .. } | VertexLabel::Tau { .. }
            ) {
                for nb in g.neighbors(v) {
                    q_plus.insert(Edge::new(v, nb));
                }
            }
        }
        assert!(edge_set_is_tree(&q_plus), "path union plus connectors must be a tree");

        let vertex_set = |edges: &BTreeSet<Edge>| -> BTreeSet<VertexId> {
            edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect()
        };

        for j in 1..=self.cnf.clause_count() as u32 {
            let mut entries: Vec<(u32, TapEntry)> = self
                .taps
                .iter()
                .filter(|((_, cj), _)| *cj == j)
                .map(|((i, _), t)| (*i, *t))
                .collect();
            entries.sort_by_key(|(i, _)| *i);
            let c_vertex = self.cnf_clause_vertex(j);

            let v_plus = vertex_set(&q_plus);
            let first = entries
                .iter()
                .find(|(_, t)| v_plus.contains(&t.a))
                .map(|(i, _)| *i)
                .expect("a satisfied literal puts a tap on the assigned side");
            let attach_edges =
                |t: &TapEntry| [Edge::new(t.a, t.b), Edge::new(t.b, c_vertex)];

            // anchor the clause vertex at the first assigned-side tap
            let first_tap = entries.iter().find(|(i, _)| *i == first).unwrap().1;
            q_plus.extend(attach_edges(&first_tap));
            assert!(edge_set_is_tree(&q_plus), "spanning side stays a tree");

            // taps already connected to the spanning side: attaching them
            // closes one cycle, repaired by handing the first edge that
            // meets the tree side over to it
            for (i, tap) in &entries {
                if *i == first || !vertex_set(&q_plus).contains(&tap.a) {
                    continue;
                }
                let path = tree_path(&q_plus, tap.a, c_vertex);
                q_plus.extend(attach_edges(tap));
                let v_minus = vertex_set(&q_minus);
                let mut moved = None;
                for win in path.windows(2) {
                    let (w, z) = (win[0], win[1]);
                    if v_minus.contains(&z) {
                        moved = Some(Edge::new(w, z));
                        break;
                    }
                }
                let e = moved.expect("distinct-block taps guarantee the repair edge");
                q_plus.remove(&e);
                q_minus.insert(e);
                assert!(edge_set_is_tree(&q_plus), "spanning side stays a tree");
                assert!(edge_set_is_tree(&q_minus), "tree side stays a tree");
            }

            // remaining taps hang off the tree side; their attachment
            // paths join the spanning side as pendants
            for (i, tap) in &entries {
                if *i == first || vertex_set(&q_plus).contains(&tap.a) {
                    continue;
                }
                q_plus.extend(attach_edges(tap));
                assert!(edge_set_is_tree(&q_plus), "spanning side stays a tree");
            }
        }

        // the two attached triangles: long sides to the spanning tree,
        // pendant bases to the tree
        let by_label = |l: VertexLabel| g.vertex_by_label(l).expect("triangle vertex");
        let s = self.s.unwrap();
        let t = self.t.unwrap();
        let (sp, spp) = (by_label(VertexLabel::SPrime), by_label(VertexLabel::SDoublePrime));
        let (tp, tpp) = (by_label(VertexLabel::TPrime), by_label(VertexLabel::TDoublePrime));
        q_plus.insert(Edge::new(s, sp));
        q_plus.insert(Edge::new(sp, spp));
        q_plus.insert(Edge::new(t, tp));
        q_plus.insert(Edge::new(tp, tpp));
        q_minus.insert(Edge::new(s, spp));
        q_minus.insert(Edge::new(t, tpp));

        let tree = crate::graph::EdgeSubset::new(g, q_minus.iter().copied()).expect("host edges");
        let spanning = crate::graph::EdgeSubset::new(g, q_plus.iter().copied()).expect("host edges");
        assert_eq!(tree.len() + spanning.len(), g.edge_count(), "parts must partition E");
        assert!(crate::graph::is_tree(g, &tree).unwrap(), "tree side is a tree");
        assert!(
            crate::graph::is_spanning_tree(g, &spanning).unwrap(),
            "spanning side is a spanning tree"
        );
        Ok(Witness::Partition { tree, spanning })
    }

    fn cnf_clause_vertex(&self, j: u32) -> VertexId {
        self.graph
            .vertex_by_label(VertexLabel::Clause { clause: j })
            .expect("clause vertex survives the reduction")
    }
}

fn edge_set_is_tree(edges: &BTreeSet<Edge>) -> bool {
    if edges.is_empty() {
        return true;
    }
    let verts: BTreeSet<VertexId> = edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
    let mut uf = crate::graph::UnionFind::new(verts.iter().copied());
    for e in edges {
        if !uf.union(e.lo(), e.hi()) {
            return false;
        }
    }
    edges.len() == verts.len() - 1
}

/// Unique path between two vertices of a tree given as an edge set.
fn tree_path(edges: &BTreeSet<Edge>, from: VertexId, to: VertexId) -> Vec<VertexId> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut stack = vec![from];
    parent.insert(from, from);
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &n in adj.get(&v).into_iter().flatten() {
            if !parent.contains_key(&n) {
                parent.insert(n, v);
                stack.push(n);
            }
        }
    }
    let mut path = vec![to];
    let mut at = to;
    while at != from {
        at = parent[&at];
        path.push(at);
    }
    path.reverse();
    path
}

// ---- structural validation -----------------------------------------------------

/// Structural facts checked on every emitted instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceStats {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub euler_ok: bool,
}

/// Verifies the embedding, the degree profile, the exact size formula,
/// and the distinct-block rule; returns the stats or the first violation.
pub fn validate_instance(inst: &ReducedInstance) -> Result<InstanceStats, String> {
    let g = inst.graph();
    let cnf = inst.cnf();
    let euler_ok = embed::check_planar_embedding(g, inst.rotation()).map_err(|e| e.to_string())?;
    if !euler_ok {
        return Err("instance embedding fails the Euler check".into());
    }

    let (ev, ee) = expected_size(cnf, inst.kind());
    if (g.vertex_count(), g.edge_count()) != (ev, ee) {
        return Err(format!(
            "size formula: expected ({ev}, {ee}), got ({}, {})",
            g.vertex_count(),
            g.edge_count()
        ));
    }

    // degree profile per label kind
    let mut degree2_expected: BTreeSet<VertexId> = BTreeSet::new();
    for (v, l) in g.labels() {
        let d = g.degree(v);
        let want: Option<usize> = match l {
            VertexLabel::Y { .. } | VertexLabel::Cross { .. } => Some(4),
            VertexLabel::PathV { .. } | VertexLabel::A { .. } => Some(3),
            VertexLabel::Omega { .. }
            | VertexLabel::Sigma { .. }
            | VertexLabel::Tau { .. }
            | VertexLabel::B { .. } => Some(2),
            VertexLabel::Clause { clause } => Some(cnf.clause(clause).len()),
            VertexLabel::S | VertexLabel::T => match inst.kind() {
                ReductionKind::StPath => Some(2),
                ReductionKind::TreePartition => Some(4),
                ReductionKind::Cycle => None,
            },
            VertexLabel::SPrime
            | VertexLabel::SDoublePrime
            | VertexLabel::TPrime
            | VertexLabel::TDoublePrime => Some(2),
        };
        match want {
            Some(w) if w != d => {
                return Err(format!("vertex {v} ({l}) has degree {d}, expected {w}"))
            }
            None => return Err(format!("unexpected label {l} on {v} for {}", inst.kind().name())),
            _ => {}
        }
        if d == 2 {
            degree2_expected.insert(v);
        }
    }
    let degree2_actual: BTreeSet<VertexId> =
        g.vertices().filter(|&v| g.degree(v) == 2).collect();
    if degree2_actual != degree2_expected {
        return Err("degree-2 vertices do not match the connector set".into());
    }
    // connectors and clause-edge taps are exactly the label kinds above
    for v in &degree2_actual {
        match g.label(*v) {
            Some(
                VertexLabel::Omega { .. }
                | VertexLabel::Sigma { .. }
                | VertexLabel::Tau { .. }
                | VertexLabel::B { .. },
            ) => {}
            Some(VertexLabel::Clause { clause }) if cnf.clause(clause).len() == 2 => {}
            Some(VertexLabel::S | VertexLabel::T) if inst.kind() == ReductionKind::StPath => {}
            Some(
                VertexLabel::SPrime
                | VertexLabel::SDoublePrime
                | VertexLabel::TPrime
                | VertexLabel::TDoublePrime,
            ) if inst.kind() == ReductionKind::TreePartition => {}
            other => {
                return Err(format!(
                    "degree-2 vertex {v} has unexpected label {other:?}"
                ))
            }
        }
    }

    // ladder parameters and the distinct-block rule
    for i in 1..=cnf.var_count() {
        let expect_k = ladder_parameter(cnf.occurrences(i));
        if inst.ladder_parameter_of(i) != expect_k {
            return Err(format!("ladder parameter of variable {i} is not {expect_k}"));
        }
        let blocks: Vec<u32> = inst
            .taps()
            .filter(|((var, _), _)| *var == i)
            .map(|(_, t)| t.block)
            .collect();
        let distinct: BTreeSet<u32> = blocks.iter().copied().collect();
        if distinct.len() != blocks.len() {
            return Err(format!("taps of variable {i} share a ladder block"));
        }
        if let Some(&max_b) = distinct.iter().max() {
            if max_b > expect_k {
                return Err(format!("tap block {max_b} beyond ladder of variable {i}"));
            }
        }
    }

    Ok(InstanceStats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        euler_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{embed_associated_graph, Literal};
    use crate::solve::{self, SearchLimits};

    fn phi0() -> PlanarCnf {
        PlanarCnf::normalize(
            3,
            vec![
                vec![Literal::pos(1), Literal::pos(2)],
                vec![Literal::neg(1), Literal::neg(2)],
            ],
        )
        .unwrap()
    }

    fn build(cnf: &PlanarCnf, kind: ReductionKind) -> ReducedInstance {
        let emb = embed_associated_graph(cnf).expect("planar fixture");
        reduce(cnf, &emb, kind).expect("reduction succeeds")
    }

    #[test]
    fn phi0_cycle_instance_structure() {
        let cnf = phi0();
        let inst = build(&cnf, ReductionKind::Cycle);
        assert_eq!(inst.ladder_parameter_of(1), 4);
        assert_eq!(inst.ladder_parameter_of(2), 4);
        assert_eq!(inst.ladder_parameter_of(3), 1, "isolated variable gets the floor");
        assert_eq!(inst.taps().count(), 4, "four clause occurrences, four taps");
        let stats = validate_instance(&inst).expect("all invariants hold");
        assert_eq!(stats.vertices, 112);
        assert_eq!(stats.edges, 156);
        assert_eq!(stats.max_degree, 4);
    }

    #[test]
    fn zero_clause_instance_has_no_taps() {
        let cnf = PlanarCnf::normalize(3, vec![]).unwrap();
        for kind in [
            ReductionKind::Cycle,
            ReductionKind::StPath,
            ReductionKind::TreePartition,
        ] {
            let inst = build(&cnf, kind);
            assert_eq!(inst.taps().count(), 0);
            assert!(!inst
                .graph()
                .labels()
                .any(|(_, l)| matches!(l, VertexLabel::A { .. } | VertexLabel::B { .. })));
            validate_instance(&inst).expect("invariants");
        }
    }

    #[test]
    fn st_and_partition_variants_have_designated_vertices() {
        let cnf = phi0();
        let st = build(&cnf, ReductionKind::StPath);
        assert!(st.s_vertex().is_some());
        assert!(st.t_vertex().is_some());
        assert_eq!(st.graph().degree(st.s_vertex().unwrap()), 2);
        validate_instance(&st).expect("invariants");

        let pt = build(&cnf, ReductionKind::TreePartition);
        assert_eq!(pt.graph().degree(pt.s_vertex().unwrap()), 4);
        validate_instance(&pt).expect("invariants");
    }

    #[test]
    fn reduction_is_deterministic() {
        let cnf = phi0();
        let emb = embed_associated_graph(&cnf).unwrap();
        let a = reduce(&cnf, &emb, ReductionKind::Cycle).unwrap();
        let b = reduce(&cnf, &emb, ReductionKind::Cycle).unwrap();
        assert_eq!(a.graph(), b.graph());
        assert_eq!(a.rotation(), b.rotation());
        assert_eq!(
            a.taps().collect::<Vec<_>>(),
            b.taps().collect::<Vec<_>>()
        );
    }

    #[test]
    fn forward_witness_on_phi0_is_nonseparating() {
        let cnf = phi0();
        let inst = build(&cnf, ReductionKind::Cycle);
        let f = Assignment::new(vec![Sign::Plus, Sign::Minus, Sign::Plus]);
        let w = inst.forward_witness(&f).expect("satisfying assignment");
        let out = check_witness(inst.graph(), &w, ProblemKind::Cycle, None);
        assert!(out.ok, "{}", out.diagnostic);
    }

    #[test]
    fn forward_witness_refuses_unsatisfying_assignment() {
        let cnf = phi0();
        let inst = build(&cnf, ReductionKind::Cycle);
        let f = Assignment::new(vec![Sign::Plus, Sign::Plus, Sign::Plus]);
        assert!(matches!(
            inst.forward_witness(&f),
            Err(WitnessError::NotSatisfying)
        ));
    }

    #[test]
    fn backward_round_trips_every_satisfying_assignment() {
        let cnf = phi0();
        for kind in [ReductionKind::Cycle, ReductionKind::StPath] {
            let inst = build(&cnf, kind);
            for f in cnf.all_satisfying(10).unwrap() {
                let w = inst.forward_witness(&f).unwrap();
                let back = inst.backward_witness(&w).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn backward_rejects_witness_through_connector() {
        let cnf = phi0();
        let inst = build(&cnf, ReductionKind::Cycle);
        // Fabricate the 4-cycle anchor - u0 - omega0 - v0 - anchor of a
        // block whose entry edges are not tap-subdivided (variable 3 has
        // no taps).
        let g = inst.graph();
        let (omega, _) = g
            .labels()
            .find(|(_, l)| matches!(l, VertexLabel::Omega { var: 3, index: 0 }))
            .unwrap();
        let nbrs = g.neighbors(omega);
        let common: Vec<VertexId> = g
            .neighbors(nbrs[0])
            .into_iter()
            .filter(|v| *v != omega && g.neighbors(nbrs[1]).contains(v))
            .collect();
        let anchor = common[0];
        let edges = vec![
            Edge::new(omega, nbrs[0]),
            Edge::new(omega, nbrs[1]),
            Edge::new(anchor, nbrs[0]),
            Edge::new(anchor, nbrs[1]),
        ];
        let w = Witness::Cycle(crate::graph::EdgeSubset::new(g, edges).unwrap());
        let err = inst.backward_witness(&w).unwrap_err();
        assert!(matches!(err, WitnessError::NotPathUnion(_)), "{err:?}");
        assert!(err.to_string().contains("omega"), "{err}");
    }

    #[test]
    fn partition_builder_passes_the_checker() {
        let cnf = phi0();
        let inst = build(&cnf, ReductionKind::TreePartition);
        for f in cnf.all_satisfying(10).unwrap() {
            let w = inst.forward_witness_partition(&f).unwrap();
            let out = check_witness(inst.graph(), &w, ProblemKind::Partition, None);
            assert!(out.ok, "{}", out.diagnostic);
        }
    }

    #[test]
    fn partition_builder_on_zero_clause_instance() {
        let cnf = PlanarCnf::normalize(3, vec![]).unwrap();
        let inst = build(&cnf, ReductionKind::TreePartition);
        let f = Assignment::new(vec![Sign::Plus, Sign::Plus, Sign::Plus]);
        let w = inst.forward_witness_partition(&f).unwrap();
        let Witness::Partition { tree, .. } = &w else { panic!() };
        // opposite-side paths plus the two pendant triangle edges
        let expect: usize = (1..=3)
            .map(|i| inst.ladder_path(i, Sign::Minus).len())
            .sum::<usize>()
            + 2;
        assert_eq!(tree.len(), expect);
        assert!(check_witness(inst.graph(), &w, ProblemKind::Partition, None).ok);
    }

    #[test]
    fn unsatisfiable_pair_reduces_to_no_instances() {
        let cnf = PlanarCnf::normalize(
            3,
            vec![vec![Literal::pos(1)], vec![Literal::neg(1)]],
        )
        .unwrap();
        let inst = build(&cnf, ReductionKind::Cycle);
        validate_instance(&inst).expect("invariants hold on NO instances too");
        let got = solve::find_nonseparating_cycle(inst.graph(), &SearchLimits::for_reductions())
            .unwrap();
        assert_eq!(got, None);
    }

    #[test]
    fn satisfiable_fixture_reduces_to_yes_instances() {
        let cnf = phi0();
        let inst = build(&cnf, ReductionKind::Cycle);
        let w = solve::find_nonseparating_cycle(inst.graph(), &SearchLimits::for_reductions())
            .unwrap()
            .expect("phi0 is satisfiable");
        let f = inst.backward_witness(&w).expect("oracle witness decomposes");
        assert!(cnf.eval(&f).unwrap());
    }

    #[test]
    fn empty_clause_is_rejected() {
        let cnf = PlanarCnf::normalize(3, vec![vec![]]).unwrap();
        let emb = RotationSystem::new(BTreeMap::new());
        assert!(matches!(
            reduce(&cnf, &emb, ReductionKind::Cycle),
            Err(ReduceError::EmptyClause(1))
        ));
    }
}
