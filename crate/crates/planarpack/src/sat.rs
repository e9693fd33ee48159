//! Boolean expressions with a cyclic variable order, their associated
//! graphs, satisfaction semantics, and a brute-force satisfiability
//! oracle for desk-scale instances.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::embed::{self, RotationSystem};
use crate::graph::{Graph, VertexId};
use crate::label::{EdgeColor, Sign, VertexLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("variable index {0} out of range 1..={1}")]
    VarOutOfRange(u32, u32),
    #[error("{0} variables exceed the brute-force bound {1}")]
    TooManyVariables(u32, u32),
    #[error("assignment covers {0} variables, expected {1}")]
    PartialAssignment(usize, u32),
    #[error("bad DIMACS input: {0}")]
    Dimacs(String),
}

/// A signed variable occurrence. Variables are numbered 1..=n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub sign: Sign,
}

impl Literal {
    pub fn pos(var: u32) -> Literal {
        Literal { var, sign: Sign::Plus }
    }

    pub fn neg(var: u32) -> Literal {
        Literal { var, sign: Sign::Minus }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "x{}", self.var),
            Sign::Minus => write!(f, "-x{}", self.var),
        }
    }
}

/// Normalized boolean expression: variables x1..xn in cyclic index order
/// plus clauses of deduplicated literals, none containing a
/// complementary pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarCnf {
    n: u32,
    clauses: Vec<Vec<Literal>>,
}

/// Total assignment of signs to variables 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    signs: Vec<Sign>,
}

impl Assignment {
    pub fn new(signs: Vec<Sign>) -> Assignment {
        Assignment { signs }
    }

    pub fn var_count(&self) -> u32 {
        self.signs.len() as u32
    }

    pub fn get(&self, var: u32) -> Sign {
        self.signs[(var - 1) as usize]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// The k-th assignment in lexicographic order over (x1, ..., xn)
    /// with + before -.
    pub fn from_rank(n: u32, rank: u64) -> Assignment {
        let signs = (1..=n)
            .map(|var| {
                if (rank >> (n - var)) & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        Assignment { signs }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .signs
            .iter()
            .enumerate()
            .map(|(i, s)| format!("x{}={}", i + 1, s))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl PlanarCnf {
    /// Normalizes a raw clause list: duplicate literals are deduplicated,
    /// clauses containing a complementary pair are dropped (they are
    /// satisfied by every assignment), and fewer than three variables are
    /// padded with unused dummies so the variable cycle stays simple.
    pub fn normalize(n: u32, raw: Vec<Vec<Literal>>) -> Result<PlanarCnf, SatError> {
        let padded_n = n.max(3);
        let mut clauses = Vec::new();
        'clause: for c in raw {
            let mut by_var: BTreeMap<u32, Sign> = BTreeMap::new();
            for lit in c {
                if lit.var == 0 || lit.var > n.max(1) {
                    return Err(SatError::VarOutOfRange(lit.var, n));
                }
                match by_var.get(&lit.var) {
                    Some(&s) if s != lit.sign => continue 'clause, // tautology, omit
                    _ => {
                        by_var.insert(lit.var, lit.sign);
                    }
                }
            }
            clauses.push(by_var.into_iter().map(|(var, sign)| Literal { var, sign }).collect());
        }
        Ok(PlanarCnf { n: padded_n, clauses })
    }

    pub fn var_count(&self) -> u32 {
        self.n
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Clause `j` is 1-based, matching vertex labels.
    pub fn clause(&self, j: u32) -> &[Literal] {
        &self.clauses[(j - 1) as usize]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[Literal]> {
        self.clauses.iter().map(Vec::as_slice)
    }

    /// Number of clause occurrences of variable `var`.
    pub fn occurrences(&self, var: u32) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.var == var))
            .count()
    }

    pub fn total_literals(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    /// The sign with which `var` occurs in clause `j`, if it does.
    pub fn literal_sign(&self, var: u32, j: u32) -> Option<Sign> {
        self.clause(j).iter().find(|l| l.var == var).map(|l| l.sign)
    }

    // ---- associated graph ------------------------------------------------

    /// Vertex id of x_i in the associated graph.
    pub fn var_vertex(&self, var: u32) -> VertexId {
        VertexId(var - 1)
    }

    /// Vertex id of clause C^j in the associated graph.
    pub fn clause_vertex(&self, j: u32) -> VertexId {
        VertexId(self.n + j - 1)
    }

    /// The associated graph: one vertex per variable and clause, edges
    /// between each clause and its variables (colored by literal sign)
    /// plus the neutral variable cycle x_i x_{i+1}.
    pub fn associated_graph(&self) -> Graph {
        let mut g = Graph::new();
        let xs: Vec<VertexId> = (1..=self.n).map(|_| g.add_vertex()).collect();
        for j in 1..=self.clauses.len() as u32 {
            let c = g.add_vertex();
            debug_assert_eq!(c, self.clause_vertex(j));
            g.set_label(c, VertexLabel::Clause { clause: j }).unwrap();
        }
        for i in 0..self.n as usize {
            let a = xs[i];
            let b = xs[(i + 1) % self.n as usize];
            g.add_edge(a, b).unwrap();
        }
        for (cj, clause) in self.clauses.iter().enumerate() {
            let c = self.clause_vertex(cj as u32 + 1);
            for lit in clause {
                g.add_colored_edge(self.var_vertex(lit.var), c, EdgeColor::from_sign(lit.sign))
                    .unwrap();
            }
        }
        g
    }

    // ---- semantics ---------------------------------------------------------

    /// True iff every clause contains a literal that `f` makes positive.
    pub fn eval(&self, f: &Assignment) -> Result<bool, SatError> {
        if f.var_count() != self.n {
            return Err(SatError::PartialAssignment(f.signs.len(), self.n));
        }
        Ok(self
            .clauses
            .iter()
            .all(|c| c.iter().any(|lit| f.get(lit.var) == lit.sign)))
    }

    pub const DEFAULT_SAT_BOUND: u32 = 20;

    /// Lexicographically first satisfying assignment (+ before -), or
    /// `None` after all 2^n assignments fail.
    pub fn brute_force_sat(&self) -> Result<Option<Assignment>, SatError> {
        self.brute_force_sat_bounded(Self::DEFAULT_SAT_BOUND)
    }

    pub fn brute_force_sat_bounded(&self, bound: u32) -> Result<Option<Assignment>, SatError> {
        if self.n > bound {
            return Err(SatError::TooManyVariables(self.n, bound));
        }
        for rank in 0..(1u64 << self.n) {
            let f = Assignment::from_rank(self.n, rank);
            if self.eval(&f)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// All satisfying assignments in lexicographic order.
    pub fn all_satisfying(&self, bound: u32) -> Result<Vec<Assignment>, SatError> {
        if self.n > bound {
            return Err(SatError::TooManyVariables(self.n, bound));
        }
        let mut out = Vec::new();
        for rank in 0..(1u64 << self.n) {
            let f = Assignment::from_rank(self.n, rank);
            if self.eval(&f)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    // ---- DIMACS ------------------------------------------------------------

    pub fn from_dimacs(text: &str) -> Result<PlanarCnf, SatError> {
        let mut n: Option<u32> = None;
        let mut raw: Vec<Vec<Literal>> = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let mut parts = rest.split_whitespace();
                if parts.next() != Some("cnf") {
                    return Err(SatError::Dimacs("expected 'p cnf n m' header".into()));
                }
                let nv = parts
                    .next()
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or_else(|| SatError::Dimacs("bad variable count".into()))?;
                let _m = parts
                    .next()
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or_else(|| SatError::Dimacs("bad clause count".into()))?;
                n = Some(nv);
                continue;
            }
            for tok in line.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| SatError::Dimacs(format!("bad literal token {tok:?}")))?;
                if v == 0 {
                    raw.push(std::mem::take(&mut current));
                } else if v > 0 {
                    current.push(Literal::pos(v as u32));
                } else {
                    current.push(Literal::neg((-v) as u32));
                }
            }
        }
        if !current.is_empty() {
            return Err(SatError::Dimacs("unterminated clause".into()));
        }
        let n = n.ok_or_else(|| SatError::Dimacs("missing 'p cnf' header".into()))?;
        PlanarCnf::normalize(n, raw)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p cnf {} {}\n", self.n, self.clauses.len()));
        for c in &self.clauses {
            let lits: Vec<String> = c
                .iter()
                .map(|l| match l.sign {
                    Sign::Plus => format!("{}", l.var),
                    Sign::Minus => format!("-{}", l.var),
                })
                .collect();
            out.push_str(&lits.join(" "));
            if !lits.is_empty() {
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

// ---- plane embedding of associated graphs ---------------------------------

/// Finds a plane embedding of the associated graph by placing each clause
/// star, in index order, into a face of the partial embedding whose
/// boundary covers all its attachment vertices; backtracks over face and
/// corner choices. Exhaustive for graphs of this shape (a cycle plus
/// stars), so `None` means the expression is not planar.
pub fn embed_associated_graph(cnf: &PlanarCnf) -> Option<RotationSystem> {
    let g = cnf.associated_graph();
    let n = cnf.var_count();

    // Base: the bare variable cycle.
    let mut rotations: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for i in 1..=n {
        let prev = if i == 1 { n } else { i - 1 };
        let next = if i == n { 1 } else { i + 1 };
        rotations.insert(
            cnf.var_vertex(i),
            vec![cnf.var_vertex(next), cnf.var_vertex(prev)],
        );
    }

    let mut base = Graph::new();
    let xs: Vec<VertexId> = (0..n).map(|_| base.add_vertex()).collect();
    for i in 0..n as usize {
        base.add_edge(xs[i], xs[(i + 1) % n as usize]).unwrap();
    }

    if let Some(full) = place_clauses(cnf, 1, &base, &rotations) {
        let rot = RotationSystem::new(full);
        debug_assert_eq!(embed::check_planar_embedding(&g, &rot), Ok(true));
        Some(rot)
    } else {
        None
    }
}

fn place_clauses(
    cnf: &PlanarCnf,
    j: u32,
    partial: &Graph,
    rotations: &BTreeMap<VertexId, Vec<VertexId>>,
) -> Option<BTreeMap<VertexId, Vec<VertexId>>> {
    if j > cnf.clause_count() as u32 {
        return Some(rotations.clone());
    }
    let attachments: Vec<VertexId> = cnf
        .clause(j)
        .iter()
        .map(|l| cnf.var_vertex(l.var))
        .collect();
    if attachments.is_empty() {
        // An empty clause adds an isolated vertex; the associated graph is
        // disconnected and admits no single embedding.
        return None;
    }

    let rot = RotationSystem::new(rotations.clone());
    let walks = embed::faces(partial, &rot).ok()?;

    for walk in &walks {
        // Corner p of the walk sits at the tail of directed edge p.
        let corner_vertices: Vec<VertexId> = walk.iter().map(|&(tail, _)| tail).collect();
        let mut occurrence_sets: Vec<Vec<usize>> = Vec::new();
        for &x in &attachments {
            let occs: Vec<usize> = corner_vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == x)
                .map(|(p, _)| p)
                .collect();
            if occs.is_empty() {
                occurrence_sets.clear();
                break;
            }
            occurrence_sets.push(occs);
        }
        if occurrence_sets.is_empty() {
            continue;
        }

        let mut pick = vec![0usize; attachments.len()];
        loop {
            let corners: Vec<usize> = pick
                .iter()
                .zip(&occurrence_sets)
                .map(|(&k, occs)| occs[k])
                .collect();
            let distinct: BTreeSet<usize> = corners.iter().copied().collect();
            if distinct.len() == corners.len() {
                let mut g2 = partial.clone();
                let mut rot2 = rotations.clone();
                if try_place_star(cnf, j, &attachments, walk, &corners, &mut g2, &mut rot2) {
                    if let Some(full) = place_clauses(cnf, j + 1, &g2, &rot2) {
                        return Some(full);
                    }
                }
            }
            // advance the corner choice vector
            let mut idx = 0;
            loop {
                if idx == pick.len() {
                    break;
                }
                pick[idx] += 1;
                if pick[idx] < occurrence_sets[idx].len() {
                    break;
                }
                pick[idx] = 0;
                idx += 1;
            }
            if idx == pick.len() {
                break;
            }
        }
    }
    None
}

/// Inserts clause vertex j inside the face `walk` with one edge per
/// attachment at the given corners. At a corner, the walk's leaving
/// neighbor is the immediate ccw successor of its arriving neighbor, so
/// the new edge slots between them.
fn try_place_star(
    cnf: &PlanarCnf,
    j: u32,
    attachments: &[VertexId],
    walk: &[(VertexId, VertexId)],
    corners: &[usize],
    partial: &mut Graph,
    rotations: &mut BTreeMap<VertexId, Vec<VertexId>>,
) -> bool {
    let c = partial.add_vertex();
    debug_assert_eq!(c, cnf.clause_vertex(j));

    let mut order: Vec<(usize, VertexId)> = corners
        .iter()
        .copied()
        .zip(attachments.iter().copied())
        .collect();
    order.sort();

    for &(p, x) in &order {
        let len = walk.len();
        let arriving = walk[(p + len - 1) % len].0;
        let rot_x = rotations.get_mut(&x).unwrap();
        let pos = rot_x
            .iter()
            .position(|&v| v == arriving)
            .expect("arriving neighbor in rotation");
        rot_x.insert(pos + 1, c);
        partial.add_edge(x, c).unwrap();
    }
    // Attachments in reverse corner order around the clause vertex.
    rotations.insert(c, order.iter().rev().map(|&(_, x)| x).collect());

    let rot = RotationSystem::new(rotations.clone());
    matches!(embed::check_planar_embedding(partial, &rot), Ok(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// n=3, C1 = {x1, x2}, C2 = {-x1, -x2}.
    pub fn phi0() -> PlanarCnf {
        PlanarCnf::normalize(
            3,
            vec![
                vec![Literal::pos(1), Literal::pos(2)],
                vec![Literal::neg(1), Literal::neg(2)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn normalize_drops_tautological_clause() {
        let cnf =
            PlanarCnf::normalize(1, vec![vec![Literal::pos(1), Literal::neg(1)]]).unwrap();
        assert_eq!(cnf.clause_count(), 0);
        assert_eq!(cnf.var_count(), 3, "padded to the minimum cycle");
    }

    #[test]
    fn normalize_dedups_literals() {
        let cnf = PlanarCnf::normalize(
            2,
            vec![vec![Literal::pos(1), Literal::pos(1), Literal::pos(2)]],
        )
        .unwrap();
        assert_eq!(cnf.clause(1), &[Literal::pos(1), Literal::pos(2)]);
    }

    #[test]
    fn normalize_is_idempotent_on_normal_input() {
        let cnf = phi0();
        let again = PlanarCnf::normalize(
            cnf.var_count(),
            cnf.clauses().map(|c| c.to_vec()).collect(),
        )
        .unwrap();
        assert_eq!(cnf, again);
    }

    #[test]
    fn normalize_rejects_out_of_range() {
        assert!(matches!(
            PlanarCnf::normalize(2, vec![vec![Literal::pos(5)]]),
            Err(SatError::VarOutOfRange(5, 2))
        ));
    }

    #[test]
    fn associated_graph_of_bare_cycle() {
        let cnf = PlanarCnf::normalize(3, vec![]).unwrap();
        let g = cnf.associated_graph();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn associated_graph_colors_clause_edges() {
        let cnf =
            PlanarCnf::normalize(3, vec![vec![Literal::pos(1), Literal::neg(2)]]).unwrap();
        let g = cnf.associated_graph();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 5);
        let c = cnf.clause_vertex(1);
        let e_plus = crate::graph::Edge::new(cnf.var_vertex(1), c);
        let e_minus = crate::graph::Edge::new(cnf.var_vertex(2), c);
        assert_eq!(g.color(e_plus), EdgeColor::Plus);
        assert_eq!(g.color(e_minus), EdgeColor::Minus);
    }

    #[test]
    fn associated_graph_of_phi0_is_planar() {
        let g = phi0().associated_graph();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 7);
        let rot = embed::find_planar_embedding(&g).unwrap();
        assert!(rot.is_some());
    }

    #[test]
    fn eval_examples() {
        let cnf = phi0();
        let f = Assignment::new(vec![Sign::Plus, Sign::Minus, Sign::Plus]);
        assert!(cnf.eval(&f).unwrap());

        let empty = PlanarCnf::normalize(3, vec![]).unwrap();
        assert!(empty.eval(&f).unwrap());

        let contra = PlanarCnf::normalize(
            3,
            vec![vec![Literal::pos(1)], vec![Literal::neg(1)]],
        )
        .unwrap();
        for rank in 0..8 {
            assert!(!contra.eval(&Assignment::from_rank(3, rank)).unwrap());
        }
    }

    #[test]
    fn brute_force_finds_lexicographically_first() {
        let cnf = phi0();
        let f = cnf.brute_force_sat().unwrap().expect("phi0 is satisfiable");
        assert_eq!(f.signs(), &[Sign::Plus, Sign::Minus, Sign::Plus]);

        let empty = PlanarCnf::normalize(3, vec![]).unwrap();
        let f = empty.brute_force_sat().unwrap().unwrap();
        assert_eq!(f.signs(), &[Sign::Plus, Sign::Plus, Sign::Plus]);

        let contra = PlanarCnf::normalize(
            3,
            vec![vec![Literal::pos(1)], vec![Literal::neg(1)]],
        )
        .unwrap();
        assert_eq!(contra.brute_force_sat().unwrap(), None);
    }

    #[test]
    fn brute_force_respects_bound() {
        let cnf = PlanarCnf::normalize(25, vec![]).unwrap();
        assert!(matches!(
            cnf.brute_force_sat(),
            Err(SatError::TooManyVariables(25, 20))
        ));
    }

    /// Literal-major evaluator, independently written for cross-checking.
    fn eval_literal_major(cnf: &PlanarCnf, f: &Assignment) -> bool {
        let mut satisfied = vec![false; cnf.clause_count()];
        for var in 1..=cnf.var_count() {
            for (jz, clause) in cnf.clauses().enumerate() {
                for lit in clause {
                    if lit.var == var && f.get(var) == lit.sign {
                        satisfied[jz] = true;
                    }
                }
            }
        }
        satisfied.into_iter().all(|b| b)
    }

    #[test]
    fn two_evaluators_agree_on_random_instances() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(3..=6u32);
            let m = rng.gen_range(0..=5usize);
            let raw: Vec<Vec<Literal>> = (0..m)
                .map(|_| {
                    (0..rng.gen_range(1..=3usize))
                        .map(|_| Literal {
                            var: rng.gen_range(1..=n),
                            sign: if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
                        })
                        .collect()
                })
                .collect();
            let cnf = PlanarCnf::normalize(n, raw).unwrap();
            let f = Assignment::from_rank(cnf.var_count(), rng.gen_range(0..(1 << cnf.var_count())));
            assert_eq!(cnf.eval(&f).unwrap(), eval_literal_major(&cnf, &f));
        }
    }

    #[test]
    fn normalization_preserves_satisfiability() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(3..=6u32);
            let m = rng.gen_range(1..=5usize);
            let raw: Vec<Vec<Literal>> = (0..m)
                .map(|_| {
                    (0..rng.gen_range(1..=4usize))
                        .map(|_| Literal {
                            var: rng.gen_range(1..=n),
                            sign: if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
                        })
                        .collect()
                })
                .collect();
            // Raw satisfiability: a clause with a complementary pair is
            // always satisfied, matching the omission rule.
            let mut raw_sat = false;
            for rank in 0..(1u64 << n) {
                let f = Assignment::from_rank(n, rank);
                if raw.iter().all(|c| c.iter().any(|l| f.get(l.var) == l.sign || c.iter().any(|o| o.var == l.var && o.sign != l.sign))) {
                    raw_sat = true;
                    break;
                }
            }
            let cnf = PlanarCnf::normalize(n, raw).unwrap();
            let norm_sat = cnf.brute_force_sat().unwrap().is_some();
            assert_eq!(raw_sat, norm_sat);
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let cnf = phi0();
        let text = cnf.to_dimacs();
        let back = PlanarCnf::from_dimacs(&text).unwrap();
        assert_eq!(cnf, back);
        assert!(text.starts_with("p cnf 3 2\n"));
    }

    #[test]
    fn dimacs_rejects_garbage() {
        assert!(PlanarCnf::from_dimacs("p cnf 2\n1 0\n").is_err());
        assert!(PlanarCnf::from_dimacs("1 2 0\n").is_err());
        assert!(PlanarCnf::from_dimacs("p cnf 2 1\n1 2\n").is_err());
    }

    #[test]
    fn constructive_embedder_matches_brute_force_on_phi0() {
        let cnf = phi0();
        let rot = embed_associated_graph(&cnf).expect("phi0 is planar");
        let g = cnf.associated_graph();
        assert!(embed::check_planar_embedding(&g, &rot).unwrap());
    }

    #[test]
    fn constructive_embedder_rejects_nonplanar() {
        // Three pairwise interleaved two-literal clauses on a 6-cycle
        // force a K_{3,3}-like crossing structure.
        let cnf = PlanarCnf::normalize(
            6,
            vec![
                vec![Literal::pos(1), Literal::pos(4)],
                vec![Literal::pos(2), Literal::pos(5)],
                vec![Literal::pos(3), Literal::pos(6)],
            ],
        )
        .unwrap();
        assert!(embed_associated_graph(&cnf).is_none());
        let g = cnf.associated_graph();
        assert_eq!(embed::find_planar_embedding(&g).unwrap(), None);
    }

    #[test]
    fn constructive_embedder_agrees_with_exhaustive_search() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(3..=4u32);
            let m = rng.gen_range(0..=4usize);
            let raw: Vec<Vec<Literal>> = (0..m)
                .map(|_| {
                    let size = rng.gen_range(1..=3usize);
                    let mut vars: Vec<u32> = (1..=n).collect();
                    vars.shuffle(&mut rng);
                    vars.truncate(size);
                    vars.into_iter()
                        .map(|var| Literal {
                            var,
                            sign: if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
                        })
                        .collect()
                })
                .collect();
            let cnf = PlanarCnf::normalize(n, raw).unwrap();
            let g = cnf.associated_graph();
            let by_search = embed::find_planar_embedding(&g).unwrap().is_some();
            let by_construction = embed_associated_graph(&cnf).is_some();
            assert_eq!(by_search, by_construction, "{:?}", cnf);
        }
    }
}
