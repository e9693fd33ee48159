//! The shared line-oriented graph text format and DOT export.
//!
//! ```text
//! graph <name>
//! v <id> [label=<kind:idx,...>]
//! e <id1> <id2> [color=+|-|0]
//! rot <id>: <n1> <n2> ... <nk>
//! meta problem <cycle|stpath|partition>
//! meta s <id>
//! meta t <id>
//! meta k <var> <k>
//! map a <var> <clause> <id> block=<b>
//! ```
//!
//! Ids are nonempty whitespace-free tokens; `#` starts a comment. Writing
//! is deterministic: vertices, edges and rotations in ascending id order.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::embed::RotationSystem;
use crate::graph::{Edge, Graph, VertexId};
use crate::label::{EdgeColor, VertexLabel};
use crate::reduce::{ReducedInstance, ReductionKind, TapEntry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("duplicate vertex token {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex token {0:?}")]
    UnknownVertex(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Instance metadata block, empty for plain graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceMeta {
    pub problem: Option<ReductionKind>,
    pub s: Option<VertexId>,
    pub t: Option<VertexId>,
    pub ladder_k: BTreeMap<u32, u32>,
    pub taps: BTreeMap<(u32, u32), TapEntry>,
}

/// A parsed or to-be-written graph file: graph, optional embedding,
/// optional instance metadata, and display names for the vertices.
#[derive(Debug, Clone)]
pub struct GraphDoc {
    pub name: String,
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
    pub meta: InstanceMeta,
    names: BTreeMap<VertexId, String>,
}

impl GraphDoc {
    pub fn new(name: impl Into<String>, graph: Graph) -> GraphDoc {
        GraphDoc {
            name: name.into(),
            graph,
            rotation: None,
            meta: InstanceMeta::default(),
            names: BTreeMap::new(),
        }
    }

    pub fn with_rotation(mut self, rot: RotationSystem) -> GraphDoc {
        self.rotation = Some(rot);
        self
    }

    pub fn with_names<I: IntoIterator<Item = (VertexId, String)>>(mut self, names: I) -> GraphDoc {
        self.names = names.into_iter().collect();
        self
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        self.names.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn from_instance(name: impl Into<String>, inst: &ReducedInstance) -> GraphDoc {
        let mut meta = InstanceMeta {
            problem: Some(inst.kind()),
            s: inst.s_vertex(),
            t: inst.t_vertex(),
            ladder_k: inst.ladder_parameters().collect(),
            taps: inst.taps().collect(),
        };
        if inst.kind() == ReductionKind::Cycle {
            meta.s = None;
            meta.t = None;
        }
        GraphDoc {
            name: name.into(),
            graph: inst.graph().clone(),
            rotation: Some(inst.rotation().clone()),
            meta,
            names: BTreeMap::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph {}\n", self.name));
        for v in self.graph.vertices() {
            match self.graph.label(v) {
                Some(l) => out.push_str(&format!("v {} label={}\n", self.vertex_name(v), l)),
                None => out.push_str(&format!("v {}\n", self.vertex_name(v))),
            }
        }
        for e in self.graph.edges() {
            let color = self.graph.color(e);
            let (a, b) = (self.vertex_name(e.lo()), self.vertex_name(e.hi()));
            if color == EdgeColor::Neutral {
                out.push_str(&format!("e {a} {b}\n"));
            } else {
                out.push_str(&format!("e {a} {b} color={}\n", color.symbol()));
            }
        }
        if let Some(rot) = &self.rotation {
            for v in self.graph.vertices() {
                let ns: Vec<String> = rot.order(v).iter().map(|n| self.vertex_name(*n)).collect();
                out.push_str(&format!("rot {}: {}\n", self.vertex_name(v), ns.join(" ")));
            }
        }
        if let Some(kind) = self.meta.problem {
            out.push_str(&format!("meta problem {}\n", kind.name()));
        }
        if let Some(s) = self.meta.s {
            out.push_str(&format!("meta s {}\n", self.vertex_name(s)));
        }
        if let Some(t) = self.meta.t {
            out.push_str(&format!("meta t {}\n", self.vertex_name(t)));
        }
        for (var, k) in &self.meta.ladder_k {
            out.push_str(&format!("meta k {var} {k}\n"));
        }
        for ((var, clause), tap) in &self.meta.taps {
            out.push_str(&format!(
                "map a {var} {clause} {} block={}\n",
                self.vertex_name(tap.a),
                tap.block
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<GraphDoc, TextError> {
        let mut name = String::from("g");
        let mut vertex_lines: Vec<(usize, String, Option<VertexLabel>)> = Vec::new();
        let mut edge_lines: Vec<(usize, String, String, EdgeColor)> = Vec::new();
        let mut rot_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
        let mut meta = MetaLines::default();

        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| TextError::Parse(no + 1, msg.to_string());
            let mut parts = line.split_whitespace();
            match parts.next().unwrap() {
                "graph" => {
                    name = parts.next().ok_or_else(|| err("missing graph name"))?.to_string();
                }
                "v" => {
                    let tok = parts.next().ok_or_else(|| err("missing vertex id"))?.to_string();
                    let mut label = None;
                    for attr in parts {
                        if let Some(text) = attr.strip_prefix("label=") {
                            label = Some(
                                text.parse::<VertexLabel>()
                                    .map_err(|e| err(&e.to_string()))?,
                            );
                        } else {
                            return Err(err(&format!("unknown vertex attribute {attr:?}")));
                        }
                    }
                    vertex_lines.push((no + 1, tok, label));
                }
                "e" => {
                    let a = parts.next().ok_or_else(|| err("missing endpoint"))?.to_string();
                    let b = parts.next().ok_or_else(|| err("missing endpoint"))?.to_string();
                    let mut color = EdgeColor::Neutral;
                    for attr in parts {
                        match attr {
                            "color=+" => color = EdgeColor::Plus,
                            "color=-" => color = EdgeColor::Minus,
                            "color=0" => color = EdgeColor::Neutral,
                            _ => return Err(err(&format!("unknown edge attribute {attr:?}"))),
                        }
                    }
                    edge_lines.push((no + 1, a, b, color));
                }
                "rot" => {
                    let head = parts.next().ok_or_else(|| err("missing rot vertex"))?;
                    let tok = head
                        .strip_suffix(':')
                        .ok_or_else(|| err("rot syntax is 'rot <id>: ...'"))?
                        .to_string();
                    rot_lines.push((no + 1, tok, parts.map(str::to_string).collect()));
                }
                "meta" => meta.parse_line(no + 1, &mut parts)?,
                "map" => meta.parse_map_line(no + 1, &mut parts)?,
                other => return Err(err(&format!("unknown directive {other:?}"))),
            }
        }

        // Numeric tokens keep their ids; otherwise ids are assigned in
        // first-seen order.
        let all_numeric = vertex_lines.iter().all(|(_, tok, _)| tok.parse::<u32>().is_ok());
        let mut ids: BTreeMap<String, VertexId> = BTreeMap::new();
        let mut names: BTreeMap<VertexId, String> = BTreeMap::new();
        for (i, (_, tok, _)) in vertex_lines.iter().enumerate() {
            let id = if all_numeric {
                VertexId(tok.parse::<u32>().unwrap())
            } else {
                VertexId(i as u32)
            };
            if ids.insert(tok.clone(), id).is_some() {
                return Err(TextError::DuplicateVertex(tok.clone()));
            }
            names.insert(id, tok.clone());
        }
        let lookup = |tok: &str| -> Result<VertexId, TextError> {
            ids.get(tok)
                .copied()
                .ok_or_else(|| TextError::UnknownVertex(tok.to_string()))
        };

        let mut graph = Graph::from_parts(
            vertex_lines.iter().map(|(_, tok, _)| ids[tok].0),
            std::iter::empty::<(u32, u32)>(),
        )?;
        for (_, tok, label) in &vertex_lines {
            if let Some(l) = label {
                graph.set_label(ids[tok], *l)?;
            }
        }
        for (_, a, b, color) in &edge_lines {
            let e = graph.add_edge(lookup(a)?, lookup(b)?)?;
            graph.set_color(e, *color);
        }

        let rotation = if rot_lines.is_empty() {
            None
        } else {
            let mut order: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
            for (_, tok, ns) in &rot_lines {
                let v = lookup(tok)?;
                let list: Result<Vec<VertexId>, TextError> =
                    ns.iter().map(|t| lookup(t)).collect();
                order.insert(v, list?);
            }
            Some(RotationSystem::new(order))
        };

        let meta = meta.resolve(&graph, &lookup)?;
        Ok(GraphDoc {
            name,
            graph,
            rotation,
            meta,
            names,
        })
    }
}

#[derive(Default)]
struct MetaLines {
    problem: Option<ReductionKind>,
    s: Option<String>,
    t: Option<String>,
    ladder_k: BTreeMap<u32, u32>,
    taps: Vec<(u32, u32, String, u32)>, // var, clause, a-token, block
}

impl MetaLines {
    fn parse_line<'a>(
        &mut self,
        no: usize,
        parts: &mut impl Iterator<Item = &'a str>,
    ) -> Result<(), TextError> {
        let err = |msg: String| TextError::Parse(no, msg);
        match parts.next() {
            Some("problem") => {
                let tag = parts.next().ok_or_else(|| err("missing problem tag".into()))?;
                self.problem = Some(match tag {
                    "cycle" => ReductionKind::Cycle,
                    "stpath" => ReductionKind::StPath,
                    "partition" => ReductionKind::TreePartition,
                    _ => return Err(err(format!("unknown problem tag {tag:?}"))),
                });
            }
            Some("s") => {
                self.s = Some(parts.next().ok_or_else(|| err("missing id".into()))?.to_string())
            }
            Some("t") => {
                self.t = Some(parts.next().ok_or_else(|| err("missing id".into()))?.to_string())
            }
            Some("k") => {
                let var: u32 = parse_num(no, parts.next())?;
                let k: u32 = parse_num(no, parts.next())?;
                self.ladder_k.insert(var, k);
            }
            other => return Err(err(format!("unknown meta key {other:?}"))),
        }
        Ok(())
    }

    fn parse_map_line<'a>(
        &mut self,
        no: usize,
        parts: &mut impl Iterator<Item = &'a str>,
    ) -> Result<(), TextError> {
        let err = |msg: String| TextError::Parse(no, msg);
        match parts.next() {
            Some("a") => {
                let var: u32 = parse_num(no, parts.next())?;
                let clause: u32 = parse_num(no, parts.next())?;
                let tok = parts.next().ok_or_else(|| err("missing vertex".into()))?.to_string();
                let block_attr = parts.next().ok_or_else(|| err("missing block".into()))?;
                let block: u32 = block_attr
                    .strip_prefix("block=")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(format!("bad block attribute {block_attr:?}")))?;
                self.taps.push((var, clause, tok, block));
            }
            other => return Err(err(format!("unknown map key {other:?}"))),
        }
        Ok(())
    }

    fn resolve(
        self,
        graph: &Graph,
        lookup: &dyn Fn(&str) -> Result<VertexId, TextError>,
    ) -> Result<InstanceMeta, TextError> {
        let mut taps = BTreeMap::new();
        for (var, clause, a_tok, block) in &self.taps {
            let a = lookup(a_tok)?;
            // the clause-side tap is not stored; it is recovered from its
            // label
            let b = graph
                .vertex_by_label(VertexLabel::B { var: *var, clause: *clause })
                .unwrap_or(a);
            taps.insert((*var, *clause), TapEntry { a, b, block: *block });
        }
        Ok(InstanceMeta {
            problem: self.problem,
            s: self.s.as_deref().map(lookup).transpose()?,
            t: self.t.as_deref().map(lookup).transpose()?,
            ladder_k: self.ladder_k,
            taps,
        })
    }
}

fn parse_num<T: std::str::FromStr>(no: usize, tok: Option<&str>) -> Result<T, TextError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| TextError::Parse(no, format!("bad number {tok:?}")))
}

/// DOT export with labels and colors as attributes; layout is advisory.
pub fn to_dot(doc: &GraphDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph \"{}\" {{\n", doc.name));
    out.push_str("  node [shape=circle fontsize=9];\n");
    for v in doc.graph.vertices() {
        let name = doc.vertex_name(v);
        match doc.graph.label(v) {
            Some(l) => out.push_str(&format!("  \"{name}\" [label=\"{l}\"];\n")),
            None => out.push_str(&format!("  \"{name}\";\n")),
        }
    }
    for e in doc.graph.edges() {
        let (a, b) = (doc.vertex_name(e.lo()), doc.vertex_name(e.hi()));
        let attrs = match doc.graph.color(e) {
            EdgeColor::Plus => " [color=blue label=\"+\"]",
            EdgeColor::Minus => " [color=red label=\"-\"]",
            EdgeColor::Neutral => "",
        };
        out.push_str(&format!("  \"{a}\" -- \"{b}\"{attrs};\n"));
    }
    out.push_str("}\n");
    out
}

/// Edge list in the text format's id vocabulary, one per line, used by
/// the solve subcommand to print witnesses.
pub fn format_edge_list<'a, I: IntoIterator<Item = &'a Edge>>(doc: &GraphDoc, edges: I) -> String {
    edges
        .into_iter()
        .map(|e| format!("{} {}", doc.vertex_name(e.lo()), doc.vertex_name(e.hi())))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{embed_associated_graph, Literal, PlanarCnf};

    #[test]
    fn plain_graph_round_trip() {
        let g = Graph::from_parts(0..3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let doc = GraphDoc::new("triangle", g);
        let text = doc.to_text();
        let back = GraphDoc::parse(&text).unwrap();
        assert_eq!(back.name, "triangle");
        assert_eq!(back.graph, doc.graph);
        assert_eq!(back.to_text(), text, "writing is stable");
    }

    #[test]
    fn named_vertices_round_trip() {
        let text = "# the counterexample graph\n\
                    graph fig2\n\
                    v a\nv b\nv c\nv d\nv e\n\
                    e a e\ne e d\ne d b\ne d c\ne a b\ne b c\ne c a\n";
        let doc = GraphDoc::parse(text).unwrap();
        assert_eq!(doc.graph.vertex_count(), 5);
        assert_eq!(doc.graph.edge_count(), 7);
        assert!(doc.to_text().contains("e a b"));
    }

    #[test]
    fn instance_round_trip_preserves_everything() {
        let cnf = PlanarCnf::normalize(
            3,
            vec![
                vec![Literal::pos(1), Literal::pos(2)],
                vec![Literal::neg(1), Literal::neg(2)],
            ],
        )
        .unwrap();
        let emb = embed_associated_graph(&cnf).unwrap();
        let inst = crate::reduce::reduce_to_path_packing(&cnf, &emb).unwrap();
        let doc = GraphDoc::from_instance("inst", &inst);
        let text = doc.to_text();
        let back = GraphDoc::parse(&text).unwrap();
        assert_eq!(back.graph, *inst.graph());
        assert_eq!(back.rotation.as_ref(), Some(inst.rotation()));
        assert_eq!(back.meta.problem, Some(ReductionKind::StPath));
        assert_eq!(back.meta.s, inst.s_vertex());
        assert_eq!(back.meta.t, inst.t_vertex());
        assert_eq!(back.meta.ladder_k, inst.ladder_parameters().collect());
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_rejects_malformed_lines() {
        assert!(GraphDoc::parse("graph g\nv a\nq nonsense\n").is_err());
        assert!(GraphDoc::parse("graph g\nv a\ne a zz\n").is_err());
        assert!(GraphDoc::parse("graph g\nv a\nv a\n").is_err());
        assert!(GraphDoc::parse("graph g\nv a\nv b\ne a b color=?\n").is_err());
    }

    #[test]
    fn dot_export_mentions_labels_and_colors() {
        let cnf = PlanarCnf::normalize(3, vec![vec![Literal::pos(1)]]).unwrap();
        let g = cnf.associated_graph();
        let doc = GraphDoc::new("assoc", g);
        let dot = to_dot(&doc);
        assert!(dot.contains("graph \"assoc\""));
        assert!(dot.contains("color=blue"));
        assert!(dot.contains("clause:1"));
    }
}
