//! JSON formats for graphs and designs.
//!
//! Graph: `{"n", "edges", "weights"?, "intervals"?, "names"?, "meta"?}`.
//! Edges may refer to vertices by index or by name and may be omitted when
//! intervals are given. Design: `{"m", "interventions", "rows", "cost"}`
//! where `rows` maps each vertex to its bitstring; on input the rows are
//! authoritative and interventions, if present, must agree with them.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Interval, VertexSet};
use crate::sepsys::{design_cost, Design, Label, SepsysError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Design(#[from] SepsysError),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex name {0:?}")]
    DuplicateName(String),
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("graph has neither edges nor intervals")]
    MissingEdges,
    #[error("design covers {got} vertices, graph has {expected}")]
    VertexCount { expected: usize, got: usize },
    #[error("no row for vertex {0:?}")]
    MissingRow(String),
    #[error("design declares m = {declared} but rows have length {got}")]
    RowLength { declared: usize, got: usize },
    #[error("interventions disagree with rows")]
    InterventionsMismatch,
}

/// A vertex reference: index or name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(VertexRef, VertexRef)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<(f64, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

/// A graph plus the vertex names and metadata carried by its file.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDoc {
    pub graph: Graph,
    pub names: Option<Vec<String>>,
    pub meta: Option<serde_json::Value>,
}

impl GraphDoc {
    pub fn new(graph: Graph) -> Self {
        GraphDoc {
            graph,
            names: None,
            meta: None,
        }
    }

    /// External name of `v`: its name if the file had names, else its index.
    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    fn resolver(&self) -> Result<Resolver, IoError> {
        Resolver::new(self.graph.n(), self.names.as_deref())
    }
}

struct Resolver {
    n: usize,
    by_name: HashMap<String, usize>,
}

impl Resolver {
    fn new(n: usize, names: Option<&[String]>) -> Result<Self, IoError> {
        let mut by_name = HashMap::new();
        if let Some(names) = names {
            if names.len() != n {
                return Err(IoError::NameCount {
                    expected: n,
                    got: names.len(),
                });
            }
            for (v, name) in names.iter().enumerate() {
                if by_name.insert(name.clone(), v).is_some() {
                    return Err(IoError::DuplicateName(name.clone()));
                }
            }
        }
        Ok(Resolver { n, by_name })
    }

    fn index(&self, r: &VertexRef) -> Result<usize, IoError> {
        match r {
            VertexRef::Index(i) if *i < self.n => Ok(*i),
            VertexRef::Index(i) => Err(IoError::UnknownVertex(i.to_string())),
            VertexRef::Name(s) => self.lookup(s),
        }
    }

    /// Names win over numeric strings; a bare number is an index only when
    /// no vertex carries it as a name.
    fn lookup(&self, s: &str) -> Result<usize, IoError> {
        if let Some(&v) = self.by_name.get(s) {
            return Ok(v);
        }
        match s.parse::<usize>() {
            Ok(i) if i < self.n && self.by_name.is_empty() => Ok(i),
            _ => Err(IoError::UnknownVertex(s.to_string())),
        }
    }
}

pub fn graph_from_json_value(doc: GraphJson) -> Result<GraphDoc, IoError> {
    let resolver = Resolver::new(doc.n, doc.names.as_deref())?;
    let intervals = doc
        .intervals
        .map(|iv| iv.into_iter().map(|(lo, hi)| Interval::new(lo, hi)).collect::<Vec<_>>());
    let graph = match (doc.edges, intervals) {
        (Some(edges), intervals) => {
            let edges = edges
                .iter()
                .map(|(a, b)| Ok((resolver.index(a)?, resolver.index(b)?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            Graph::build(doc.n, &edges, doc.weights, intervals)?
        }
        (None, Some(intervals)) => {
            if intervals.len() != doc.n {
                return Err(GraphError::IntervalLengthMismatch {
                    expected: doc.n,
                    got: intervals.len(),
                }
                .into());
            }
            Graph::from_intervals(intervals, doc.weights)?
        }
        (None, None) if doc.n <= 1 => Graph::build(doc.n, &[], doc.weights, None)?,
        (None, None) => return Err(IoError::MissingEdges),
    };
    Ok(GraphDoc {
        graph,
        names: doc.names,
        meta: doc.meta,
    })
}

pub fn parse_graph(text: &str) -> Result<GraphDoc, IoError> {
    graph_from_json_value(serde_json::from_str(text)?)
}

pub fn graph_to_json(doc: &GraphDoc) -> GraphJson {
    let g = &doc.graph;
    let vref = |v: usize| match &doc.names {
        Some(names) => VertexRef::Name(names[v].clone()),
        None => VertexRef::Index(v),
    };
    GraphJson {
        n: g.n(),
        edges: Some(g.edges().iter().map(|&(u, v)| (vref(u), vref(v))).collect()),
        weights: Some(g.weights().to_vec()),
        intervals: g.intervals().map(|iv| iv.iter().map(|i| (i.lo, i.hi)).collect()),
        names: doc.names.clone(),
        meta: doc.meta.clone(),
    }
}

pub fn write_graph(doc: &GraphDoc) -> String {
    serde_json::to_string_pretty(&graph_to_json(doc)).expect("graph JSON serializes") + "\n"
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignJson {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interventions: Option<Vec<Vec<VertexRef>>>,
    pub rows: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<f64>,
}

pub fn design_to_json(doc: &GraphDoc, design: &Design) -> DesignJson {
    let vref = |v: usize| match &doc.names {
        Some(names) => VertexRef::Name(names[v].clone()),
        None => VertexRef::Index(v),
    };
    let rows = (0..design.num_vertices())
        .map(|v| (doc.name(v), serde_json::Value::String(design.row(v).to_string())))
        .collect();
    DesignJson {
        m: design.m(),
        interventions: Some(
            design
                .interventions()
                .iter()
                .map(|s| s.iter().map(vref).collect())
                .collect(),
        ),
        rows,
        cost: Some(design_cost(design, doc.graph.weights())),
    }
}

pub fn write_design(doc: &GraphDoc, design: &Design) -> String {
    serde_json::to_string_pretty(&design_to_json(doc, design)).expect("design JSON serializes") + "\n"
}

/// Reads a design for the graph in `doc`. The stored cost, if any, is
/// ignored; callers recompute it.
pub fn parse_design(doc: &GraphDoc, text: &str) -> Result<Design, IoError> {
    let raw: DesignJson = serde_json::from_str(text)?;
    let resolver = doc.resolver()?;
    let n = doc.graph.n();
    if raw.rows.len() != n {
        return Err(IoError::VertexCount {
            expected: n,
            got: raw.rows.len(),
        });
    }
    let mut rows: Vec<Option<Label>> = vec![None; n];
    for (key, value) in &raw.rows {
        let v = resolver.lookup(key)?;
        let bits = value.as_str().ok_or_else(|| SepsysError::BadLabel(value.to_string()))?;
        let label: Label = bits.parse()?;
        if label.len() != raw.m {
            return Err(IoError::RowLength {
                declared: raw.m,
                got: label.len(),
            });
        }
        rows[v] = Some(label);
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| IoError::MissingRow(doc.name(v))))
        .collect::<Result<Vec<_>, _>>()?;
    let design = Design::from_rows(raw.m, rows)?;

    if let Some(interventions) = raw.interventions {
        let sets = interventions
            .iter()
            .map(|s| s.iter().map(|r| resolver.index(r)).collect::<Result<VertexSet, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let nonempty: Vec<&VertexSet> = design.nonempty_interventions().collect();
        let listed_all = sets.as_slice() == design.interventions();
        let listed_nonempty = sets.iter().collect::<Vec<_>>() == nonempty;
        if !listed_all && !listed_nonempty {
            return Err(IoError::InterventionsMismatch);
        }
    }
    Ok(design)
}

pub fn read_to_string(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_graph(path: &Path) -> Result<GraphDoc, IoError> {
    parse_graph(&read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designer::design_unbounded_optimal;

    #[test]
    fn graph_round_trip() {
        let g = Graph::path(3).with_weights(vec![1.0, 3.0, 1.0]).unwrap();
        let doc = GraphDoc::new(g.clone());
        let back = parse_graph(&write_graph(&doc)).unwrap();
        assert_eq!(back.graph, g);
    }

    #[test]
    fn names_and_defaults() {
        let doc = parse_graph(r#"{"n": 3, "edges": [["a", "b"], ["b", "c"]], "names": ["a", "b", "c"]}"#).unwrap();
        assert_eq!(doc.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(doc.graph.weights(), &[1.0; 3]);
        assert!(matches!(
            parse_graph(r#"{"n": 2, "edges": [["a", "z"]], "names": ["a", "b"]}"#),
            Err(IoError::UnknownVertex(_))
        ));
        assert!(matches!(
            parse_graph(r#"{"n": 2, "edges": [[0, 1]], "names": ["a", "a"]}"#),
            Err(IoError::DuplicateName(_))
        ));
    }

    #[test]
    fn intervals_without_edges() {
        let doc = parse_graph(r#"{"n": 3, "intervals": [[0, 1], [1, 2], [3, 4]]}"#).unwrap();
        assert_eq!(doc.graph.edges(), &[(0, 1)]);
        assert!(matches!(
            parse_graph(r#"{"n": 2, "edges": [[0, 1]], "intervals": [[0, 1], [2, 3]]}"#),
            Err(IoError::Graph(GraphError::IntervalMismatch(0, 1)))
        ));
    }

    #[test]
    fn design_round_trip() {
        let g = Graph::complete(3).with_weights(vec![3.0, 2.0, 1.0]).unwrap();
        let doc = GraphDoc::new(g);
        let r = design_unbounded_optimal(&doc.graph).unwrap();
        let text = write_design(&doc, &r.design);
        assert!(text.contains("\"cost\": 3.0"));
        assert_eq!(parse_design(&doc, &text).unwrap(), r.design);
    }

    #[test]
    fn design_rows_are_authoritative() {
        let doc = GraphDoc::new(Graph::path(3));
        let d = parse_design(&doc, r#"{"m": 1, "rows": {"0": "0", "1": "1", "2": "0"}}"#).unwrap();
        assert_eq!(d.interventions(), &[VertexSet::from([1])]);
        assert!(matches!(
            parse_design(
                &doc,
                r#"{"m": 1, "interventions": [[0]], "rows": {"0": "0", "1": "1", "2": "0"}}"#
            ),
            Err(IoError::InterventionsMismatch)
        ));
        assert!(matches!(
            parse_design(&doc, r#"{"m": 2, "rows": {"0": "0", "1": "1", "2": "0"}}"#),
            Err(IoError::RowLength { .. })
        ));
        assert!(matches!(
            parse_design(&doc, r#"{"m": 1, "rows": {"0": "0", "1": "1", "5": "0"}}"#),
            Err(IoError::UnknownVertex(_))
        ));
    }
}
