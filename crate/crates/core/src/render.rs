//! JSON, DOT and tabular renderings of graphs and BLG proofs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blg::BlgProof;
use crate::blgraph::BlGraph;
use crate::name::Name;
use crate::namegraph::NameGraph;
use crate::syntax::{Branch, Sequent};
use crate::text::parse_sequent;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad name {0:?}")]
    BadName(String),
    #[error("bad sequent: {0}")]
    BadSequent(String),
    #[error("ill-formed graph: {0}")]
    Graph(String),
}

pub fn branch_text(label: &Branch) -> String {
    let names: Vec<String> = label.iter().map(Name::to_string).collect();
    format!("{{{}}}", names.join(","))
}

/// Edges as concatenated endpoint names, e.g. `xy zw`.
pub fn edge_list(edges: &BTreeSet<(Name, Name)>) -> String {
    edges.iter().map(|(x, y)| format!("{x}{y}")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize, Deserialize)]
struct SimpleJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct BlEdgeJson {
    u: String,
    v: String,
    branches: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct BlJson {
    vertices: Vec<String>,
    edges: Vec<BlEdgeJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    sequent: Option<String>,
}

fn names_json(names: &BTreeSet<Name>) -> Vec<String> {
    names.iter().map(Name::to_string).collect()
}

fn parse_name(s: &str) -> Result<Name, FormatError> {
    Name::parse(s).ok_or_else(|| FormatError::BadName(s.to_string()))
}

fn parse_names(v: &[String]) -> Result<BTreeSet<Name>, FormatError> {
    v.iter().map(|s| parse_name(s)).collect()
}

pub fn name_graph_json(g: &NameGraph) -> String {
    let json = SimpleJson {
        vertices: names_json(&g.vertices),
        edges: g.edges.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect(),
    };
    serde_json::to_string_pretty(&json).expect("serializable")
}

fn bl_json(g: &BlGraph, sequent: Option<&Sequent>) -> BlJson {
    BlJson {
        vertices: names_json(g.vertices()),
        edges: g
            .labels_by_edge()
            .into_iter()
            .map(|((x, y), labels)| BlEdgeJson {
                u: x.to_string(),
                v: y.to_string(),
                branches: labels.into_iter().map(names_json).collect(),
            })
            .collect(),
        sequent: sequent.map(Sequent::to_string),
    }
}

fn bl_from_json(json: &BlJson) -> Result<BlGraph, FormatError> {
    let vertices = parse_names(&json.vertices)?;
    let mut relation = Vec::new();
    for e in &json.edges {
        let (u, v) = (parse_name(&e.u)?, parse_name(&e.v)?);
        for label in &e.branches {
            relation.push(((u, v), parse_names(label)?));
        }
    }
    BlGraph::new(vertices, relation).map_err(|e| FormatError::Graph(e.to_string()))
}

pub fn bl_graph_json(g: &BlGraph) -> String {
    serde_json::to_string_pretty(&bl_json(g, None)).expect("serializable")
}

pub fn parse_bl_graph_json(src: &str) -> Result<BlGraph, FormatError> {
    bl_from_json(&serde_json::from_str(src)?)
}

pub fn blg_json(p: &BlgProof) -> String {
    serde_json::to_string_pretty(&bl_json(&p.graph, Some(&p.sequent))).expect("serializable")
}

pub fn parse_blg_json(src: &str) -> Result<BlgProof, FormatError> {
    let json: BlJson = serde_json::from_str(src)?;
    let text = json.sequent.as_deref().ok_or_else(|| FormatError::BadSequent("missing".into()))?;
    let sequent = parse_sequent(text).map_err(|e| FormatError::BadSequent(e.to_string()))?;
    Ok(BlgProof { graph: bl_from_json(&json)?, sequent })
}

fn vertex_label(x: Name, sequent: Option<&Sequent>) -> String {
    match sequent.and_then(|s| s.atom_at(x).ok()) {
        Some(a) => format!("{x}:{a}"),
        None => x.to_string(),
    }
}

pub fn name_graph_dot(g: &NameGraph, sequent: Option<&Sequent>) -> String {
    let mut out = String::from("graph axioms {\n");
    for &x in &g.vertices {
        writeln!(out, "  {x} [label=\"{}\"];", vertex_label(x, sequent)).unwrap();
    }
    for (x, y) in &g.edges {
        writeln!(out, "  {x} -- {y};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// One DOT edge per related pair, annotated with its label.
pub fn bl_graph_dot(g: &BlGraph, sequent: Option<&Sequent>) -> String {
    let mut out = String::from("graph axioms {\n");
    for &x in g.vertices() {
        writeln!(out, "  {x} [label=\"{}\"];", vertex_label(x, sequent)).unwrap();
    }
    for ((x, y), label) in g.relation() {
        writeln!(out, "  {x} -- {y} [label=\"{}\"];", branch_text(label)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Tabular form: one row per branch listing its edges as `x/y`, a rule, then
/// the sequent.
pub fn fig5_text(g: &BlGraph, sequent: &Sequent) -> String {
    let mut rows: BTreeMap<&Branch, Vec<String>> = BTreeMap::new();
    for ((x, y), label) in g.relation() {
        rows.entry(label).or_default().push(format!("{x}/{y}"));
    }
    let branches: BTreeSet<Branch> = sequent.branches().unwrap_or_default();
    let mut out = String::new();
    for b in &branches {
        let edges = rows.get(b).map(|v| v.join(", ")).unwrap_or_default();
        writeln!(out, "{}: {}", branch_text(b), edges).unwrap();
    }
    for (b, edges) in rows.iter().filter(|(b, _)| !branches.contains(*b)) {
        writeln!(out, "{}: {}", branch_text(b), edges.join(", ")).unwrap();
    }
    let seq = sequent.to_string();
    writeln!(out, "{}", "-".repeat(seq.chars().count())).unwrap();
    writeln!(out, "{seq}").unwrap();
    out
}
