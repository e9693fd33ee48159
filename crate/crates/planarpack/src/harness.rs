//! Corpus management and end-to-end reduction verification: seeded
//! instance generation filtered to planar expressions, the fixture
//! graphs, and the per-instance pipeline that compares the
//! satisfiability oracle's verdict with the graph oracle's verdict on
//! the reduced instance. Disagreement means the implementation is wrong,
//! never a tolerable flake.

use std::fmt;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::embed::RotationSystem;
use crate::graph::Graph;
use crate::label::Sign;
use crate::reduce::{
    self, validate_instance, ReduceError, ReducedInstance, ReductionKind, WitnessError,
};
use crate::sat::{embed_associated_graph, Literal, PlanarCnf, SatError};
use crate::solve::{self, ProblemKind, SearchLimits, SolveError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("corpus spec invalid: {0}")]
    BadSpec(String),
    #[error("generator yielded no planar instances; widen the ranges")]
    EmptyYield,
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("instance invariant violated: {0}")]
    Invariant(String),
    #[error("verdict disagreement on {digest}: sat={sat} oracle={oracle}")]
    Disagreement { digest: String, sat: bool, oracle: bool },
}

/// Parameters of the seeded corpus generator.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub n_range: (u32, u32),
    pub m_range: (usize, usize),
    pub clause_size_range: (usize, usize),
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 1,
            count: 10,
            n_range: (3, 4),
            m_range: (1, 4),
            clause_size_range: (1, 3),
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let (nl, nh) = self.n_range;
        let (ml, mh) = self.m_range;
        let (cl, ch) = self.clause_size_range;
        if nl < 1 || nl > nh || nh > 6 {
            return Err(HarnessError::BadSpec(format!(
                "variable range {nl}..={nh} outside 1..=6"
            )));
        }
        if ml > mh || mh > 8 {
            return Err(HarnessError::BadSpec(format!(
                "clause count range {ml}..={mh} outside 0..=8"
            )));
        }
        if cl < 1 || cl > ch {
            return Err(HarnessError::BadSpec(format!(
                "clause size range {cl}..={ch} is empty or has empty clauses"
            )));
        }
        Ok(())
    }
}

/// One corpus entry: the normalized expression and a plane embedding of
/// its associated graph.
#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub name: String,
    pub cnf: PlanarCnf,
    pub emb: RotationSystem,
}

/// Short content digest of an expression, used as its stable identity in
/// reports and file names.
pub fn cnf_digest(cnf: &PlanarCnf) -> String {
    let mut hasher = Sha256::new();
    hasher.update(cnf.to_dimacs().as_bytes());
    let out = hasher.finalize();
    out.iter().take(8).fold(String::new(), |mut s, b| {
        s.push_str(&format!("{b:02x}"));
        s
    })
}

// ---- fixtures -----------------------------------------------------------------

/// The 5-vertex, 7-edge graph on which the published recursive search
/// fails: vertices a, b, c, d, e (ids 0..4); edges ae, ed, db, dc, ab,
/// bc, ca. It contains the nonseparating cycle through a, b, c.
pub fn fig2_fixture() -> Graph {
    Graph::from_parts(
        0..5,
        [(0, 4), (4, 3), (3, 1), (3, 2), (0, 1), (1, 2), (2, 0)],
    )
    .expect("fixture is well formed")
}

/// Display names for the fixture's vertices.
pub fn fig2_names() -> Vec<(crate::graph::VertexId, String)> {
    ["a", "b", "c", "d", "e"]
        .iter()
        .enumerate()
        .map(|(i, n)| (crate::graph::VertexId(i as u32), n.to_string()))
        .collect()
}

/// Satisfiable two-clause fixture: (x1 or x2) and (-x1 or -x2) over
/// three variables.
pub fn phi0_fixture() -> PlanarCnf {
    PlanarCnf::normalize(
        3,
        vec![
            vec![Literal::pos(1), Literal::pos(2)],
            vec![Literal::neg(1), Literal::neg(2)],
        ],
    )
    .expect("fixture is well formed")
}

/// Unsatisfiable pair of unit clauses, padded to the minimum cycle.
pub fn unsat_pair_fixture() -> PlanarCnf {
    PlanarCnf::normalize(3, vec![vec![Literal::pos(1)], vec![Literal::neg(1)]])
        .expect("fixture is well formed")
}

/// The clause-free expression over three variables.
pub fn zero_clause_fixture() -> PlanarCnf {
    PlanarCnf::normalize(3, vec![]).expect("fixture is well formed")
}

// ---- corpus generation -----------------------------------------------------------

/// Seeded random planar expressions, fixtures prepended. Candidates whose
/// associated graph admits no plane embedding are discarded and redrawn;
/// both satisfiable and unsatisfiable instances are kept.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusInstance>, HarnessError> {
    spec.validate()?;
    let mut out = Vec::new();
    for (idx, cnf) in [phi0_fixture(), unsat_pair_fixture(), zero_clause_fixture()]
        .into_iter()
        .enumerate()
    {
        let emb = embed_associated_graph(&cnf).expect("fixtures are planar");
        out.push(CorpusInstance {
            name: format!("fix{idx:03}"),
            cnf,
            emb,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut attempts = 0usize;
    let max_attempts = spec.count.max(1) * 2000;
    while out.len() < spec.count + 3 {
        attempts += 1;
        if attempts > max_attempts {
            return Err(HarnessError::EmptyYield);
        }
        let n = rng.gen_range(spec.n_range.0..=spec.n_range.1);
        let m = rng.gen_range(spec.m_range.0..=spec.m_range.1);
        let raw: Vec<Vec<Literal>> = (0..m)
            .map(|_| {
                let wanted = rng.gen_range(spec.clause_size_range.0..=spec.clause_size_range.1);
                let size = wanted.min(n as usize);
                let mut vars: Vec<u32> = (1..=n).collect();
                vars.shuffle(&mut rng);
                vars.truncate(size);
                vars.sort_unstable();
                vars.into_iter()
                    .map(|var| Literal {
                        var,
                        sign: if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
                    })
                    .collect()
            })
            .collect();
        let cnf = PlanarCnf::normalize(n, raw)?;
        if let Some(emb) = embed_associated_graph(&cnf) {
            let name = format!("inst{:03}", out.len() - 3);
            out.push(CorpusInstance { name, cnf, emb });
        }
    }
    Ok(out)
}

// ---- verification -----------------------------------------------------------------

/// One verified instance: per-reduction stats and the agreement verdict.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub name: String,
    pub digest: String,
    pub kind: ReductionKind,
    pub sat: bool,
    pub oracle: bool,
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub euler_ok: bool,
    pub round_trip_ok: Option<bool>,
}

impl ReportRow {
    pub fn agree(&self) -> bool {
        self.sat == self.oracle
    }
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "record {} name={} problem={} sat={} oracle={} v={} e={} maxdeg={} euler={} roundtrip={} agree={}",
            self.digest,
            self.name,
            self.kind.name(),
            yesno(self.sat),
            yesno(self.oracle),
            self.vertices,
            self.edges,
            self.max_degree,
            if self.euler_ok { "ok" } else { "FAIL" },
            match self.round_trip_ok {
                None => "n/a",
                Some(true) => "ok",
                Some(false) => "FAIL",
            },
            if self.agree() { "ok" } else { "FAIL" },
        )
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the full pipeline for one instance and problem: satisfiability
/// oracle, reduction, structural invariants, graph oracle, and (when
/// satisfiable) witness translation both ways.
pub fn verify_reduction(
    name: &str,
    cnf: &PlanarCnf,
    emb: &RotationSystem,
    kind: ReductionKind,
    limits: &SearchLimits,
) -> Result<(ReportRow, ReducedInstance), HarnessError> {
    let digest = cnf_digest(cnf);
    let sat_assignment = cnf.brute_force_sat()?;
    let inst = match kind {
        ReductionKind::Cycle => reduce::reduce_to_cycle_packing(cnf, emb)?,
        ReductionKind::StPath => reduce::reduce_to_path_packing(cnf, emb)?,
        ReductionKind::TreePartition => reduce::reduce_to_tree_partition(cnf, emb)?,
    };
    let stats = validate_instance(&inst).map_err(HarnessError::Invariant)?;

    let oracle_witness = match kind {
        ReductionKind::Cycle => solve::find_nonseparating_cycle(inst.graph(), limits)?,
        ReductionKind::StPath => solve::find_nonseparating_st_path(
            inst.graph(),
            inst.s_vertex().expect("st instance"),
            inst.t_vertex().expect("st instance"),
            limits,
        )?,
        ReductionKind::TreePartition => {
            solve::find_tree_spanning_tree_partition(inst.graph(), limits)?
        }
    };

    // soundness of the oracle's witness
    if let Some(w) = &oracle_witness {
        let st = inst.s_vertex().zip(inst.t_vertex());
        let out = solve::check_witness(inst.graph(), w, kind.problem(), st);
        if !out.ok {
            return Err(HarnessError::Invariant(format!(
                "oracle witness fails its own checker: {}",
                out.diagnostic
            )));
        }
    }

    let mut round_trip_ok = None;
    if let Some(f) = &sat_assignment {
        round_trip_ok = Some(match kind {
            ReductionKind::Cycle | ReductionKind::StPath => {
                let w = inst.forward_witness(f)?;
                let st = inst.s_vertex().zip(inst.t_vertex());
                let fw_ok = solve::check_witness(inst.graph(), &w, kind.problem(), st).ok;
                let back = inst.backward_witness(&w)?;
                let mut ok = fw_ok && back == *f;
                // any oracle witness must decode to some satisfying assignment
                if let Some(w) = &oracle_witness {
                    let decoded = inst.backward_witness(w)?;
                    ok = ok && cnf.eval(&decoded)?;
                }
                ok
            }
            ReductionKind::TreePartition => {
                let w = inst.forward_witness_partition(f)?;
                solve::check_witness(inst.graph(), &w, ProblemKind::Partition, None).ok
            }
        });
    }

    let row = ReportRow {
        name: name.to_string(),
        digest,
        kind,
        sat: sat_assignment.is_some(),
        oracle: oracle_witness.is_some(),
        vertices: stats.vertices,
        edges: stats.edges,
        max_degree: stats.max_degree,
        euler_ok: stats.euler_ok,
        round_trip_ok,
    };
    Ok((row, inst))
}

/// Human-readable aggregate over report rows.
pub fn summarize(rows: &[ReportRow]) -> String {
    let total = rows.len();
    let agree = rows.iter().filter(|r| r.agree()).count();
    let sat = rows.iter().filter(|r| r.sat).count();
    let rt_fail = rows
        .iter()
        .filter(|r| r.round_trip_ok == Some(false))
        .count();
    format!(
        "{total} checks, {agree} agreements, {} disagreements, {sat} satisfiable, {rt_fail} round-trip failures",
        total - agree
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::check_witness;

    #[test]
    fn fig2_fixture_matches_the_figure() {
        let g = fig2_fixture();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 7);
        let w = solve::find_nonseparating_cycle(&g, &SearchLimits::default())
            .unwrap()
            .expect("the counterexample graph has a nonseparating cycle");
        assert!(check_witness(&g, &w, ProblemKind::Cycle, None).ok);
    }

    #[test]
    fn corpus_is_deterministic_and_filtered() {
        let spec = CorpusSpec {
            seed: 1,
            count: 10,
            n_range: (3, 4),
            m_range: (1, 4),
            clause_size_range: (1, 3),
        };
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a.len(), 13, "3 fixtures + requested count");
        let da: Vec<String> = a.iter().map(|c| cnf_digest(&c.cnf)).collect();
        let db: Vec<String> = b.iter().map(|c| cnf_digest(&c.cnf)).collect();
        assert_eq!(da, db);
        for inst in &a {
            let g = inst.cnf.associated_graph();
            assert_eq!(
                crate::embed::check_planar_embedding(&g, &inst.emb),
                Ok(true)
            );
        }
    }

    #[test]
    fn corpus_keeps_zero_clause_fixture() {
        let spec = CorpusSpec { count: 1, ..CorpusSpec::default() };
        let corpus = generate_corpus(&spec).unwrap();
        assert!(corpus.iter().any(|c| c.cnf.clause_count() == 0));
    }

    #[test]
    fn spec_validation_rejects_out_of_budget() {
        let spec = CorpusSpec { n_range: (3, 9), ..CorpusSpec::default() };
        assert!(matches!(spec.validate(), Err(HarnessError::BadSpec(_))));
        let spec = CorpusSpec { clause_size_range: (0, 2), ..CorpusSpec::default() };
        assert!(matches!(spec.validate(), Err(HarnessError::BadSpec(_))));
    }

    #[test]
    fn verify_pipeline_on_fixtures() {
        let limits = SearchLimits::for_reductions();
        for (cnf, expect_sat) in [
            (phi0_fixture(), true),
            (unsat_pair_fixture(), false),
            (zero_clause_fixture(), true),
        ] {
            let emb = embed_associated_graph(&cnf).unwrap();
            for kind in [ReductionKind::Cycle, ReductionKind::StPath] {
                let (row, _) = verify_reduction("t", &cnf, &emb, kind, &limits).unwrap();
                assert_eq!(row.sat, expect_sat);
                assert!(row.agree(), "{row}");
                assert!(row.round_trip_ok != Some(false));
            }
        }
    }
}
