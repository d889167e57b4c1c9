//! Branch-labeled graphs, branch-sensitive composition and bl-axiom graphs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::derivation::Derivation;
use crate::name::Name;
use crate::namegraph::{self, composite_edges, edge, AltPath, Edge, GraphError, NameGraph};
use crate::syntax::{Branch, Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlGraphError {
    #[error("edge {0}{1} is not contained in its label")]
    EdgeOutsideLabel(Name, Name),
    #[error("edge {0}{1} has an endpoint outside the vertex set")]
    EdgeOutsideVertices(Name, Name),
}

/// A graph whose edges are related to branch labels; each related pair
/// `(e, X)` satisfies `e ⊆ X`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BlGraph {
    vertices: BTreeSet<Name>,
    relation: BTreeSet<(Edge, Branch)>,
}

impl BlGraph {
    pub fn new(
        vertices: BTreeSet<Name>,
        relation: impl IntoIterator<Item = (Edge, Branch)>,
    ) -> Result<BlGraph, BlGraphError> {
        let relation: BTreeSet<(Edge, Branch)> =
            relation.into_iter().map(|((x, y), label)| (edge(x, y), label)).collect();
        for ((x, y), label) in &relation {
            if !label.contains(x) || !label.contains(y) {
                return Err(BlGraphError::EdgeOutsideLabel(*x, *y));
            }
            if !vertices.contains(x) || !vertices.contains(y) {
                return Err(BlGraphError::EdgeOutsideVertices(*x, *y));
            }
        }
        Ok(BlGraph { vertices, relation })
    }

    fn from_parts(vertices: BTreeSet<Name>, relation: BTreeSet<(Edge, Branch)>) -> BlGraph {
        debug_assert!(relation.iter().all(|((x, y), l)| l.contains(x) && l.contains(y)));
        BlGraph { vertices, relation }
    }

    pub fn empty_on(vertices: BTreeSet<Name>) -> BlGraph {
        BlGraph { vertices, relation: BTreeSet::new() }
    }

    pub fn vertices(&self) -> &BTreeSet<Name> {
        &self.vertices
    }

    pub fn relation(&self) -> &BTreeSet<(Edge, Branch)> {
        &self.relation
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.relation.iter().map(|(e, _)| *e).collect()
    }

    pub fn branches(&self) -> BTreeSet<Branch> {
        self.relation.iter().map(|(_, l)| l.clone()).collect()
    }

    /// The unlabeled graph underneath.
    pub fn simple(&self) -> NameGraph {
        NameGraph { vertices: self.vertices.clone(), edges: self.edges() }
    }

    /// Labels grouped by edge.
    pub fn labels_by_edge(&self) -> BTreeMap<Edge, Vec<&Branch>> {
        let mut out: BTreeMap<Edge, Vec<&Branch>> = BTreeMap::new();
        for (e, l) in &self.relation {
            out.entry(*e).or_default().push(l);
        }
        out
    }

    pub fn is_subgraph_of(&self, other: &BlGraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.relation.is_subset(&other.relation)
    }
}

pub fn bl_union<'a>(graphs: impl IntoIterator<Item = &'a BlGraph>) -> BlGraph {
    let mut out = BlGraph::default();
    for g in graphs {
        out.vertices.extend(g.vertices.iter().copied());
        out.relation.extend(g.relation.iter().cloned());
    }
    out
}

/// Keeps the vertices in `x` and the related pairs whose label lies inside `x`.
pub fn bl_restrict(g: &BlGraph, x: &BTreeSet<Name>) -> BlGraph {
    BlGraph::from_parts(
        g.vertices.intersection(x).copied().collect(),
        g.relation.iter().filter(|(_, l)| l.is_subset(x)).cloned().collect(),
    )
}

pub fn bl_subgraph(g: &BlGraph, h: &BlGraph) -> bool {
    g.is_subgraph_of(h)
}

/// Every related pair with the interface removed from its label.
pub fn relativize(g: &BlGraph, interface: &BTreeSet<Name>) -> BTreeSet<(Edge, Branch)> {
    g.relation
        .iter()
        .map(|(e, l)| (*e, l.difference(interface).copied().collect()))
        .collect()
}

fn edges_labeled(rel: &BTreeSet<(Edge, Branch)>, label: &Branch, vertices: &BTreeSet<Name>) -> NameGraph {
    NameGraph {
        vertices: vertices.clone(),
        edges: rel.iter().filter(|(_, l)| l == label).map(|(e, _)| *e).collect(),
    }
}

type Relation = BTreeSet<(Edge, Branch)>;

fn candidate_labels(g: &BlGraph, h: &BlGraph, interface: &BTreeSet<Name>) -> (Relation, Relation, BTreeSet<Branch>) {
    let rg = relativize(g, interface);
    let rh = relativize(h, interface);
    let labels = rg.iter().chain(&rh).map(|(_, l)| l.clone()).collect();
    (rg, rh, labels)
}

/// A labeled alternating path with its label and completeness flag.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LabeledPath {
    pub path: AltPath,
    pub label: Branch,
    pub complete: bool,
}

/// Every alternating path with at least one edge whose edges all carry the
/// same relativized label.
pub fn bl_alternating_paths(g: &BlGraph, h: &BlGraph, interface: &BTreeSet<Name>) -> Vec<LabeledPath> {
    let (rg, rh, labels) = candidate_labels(g, h, interface);
    let mut out = Vec::new();
    for label in labels {
        let gx = edges_labeled(&rg, &label, &g.vertices);
        let hx = edges_labeled(&rh, &label, &h.vertices);
        for path in namegraph::alternating_paths(&gx, &hx, interface) {
            if path.vertices.len() > 1 {
                let complete = path.is_complete(interface);
                out.push(LabeledPath { path, label: label.clone(), complete });
            }
        }
    }
    out
}

pub fn bl_compose(g: &BlGraph, h: &BlGraph, interface: &BTreeSet<Name>) -> BlGraph {
    let (rg, rh, labels) = candidate_labels(g, h, interface);
    let vertices: BTreeSet<Name> =
        g.vertices.union(&h.vertices).filter(|x| !interface.contains(x)).copied().collect();
    let mut relation = BTreeSet::new();
    for label in labels {
        let gx = edges_labeled(&rg, &label, &g.vertices);
        let hx = edges_labeled(&rh, &label, &h.vertices);
        for e in composite_edges(&gx, &hx, interface) {
            relation.insert((e, label.clone()));
        }
    }
    BlGraph::from_parts(vertices, relation)
}

/// Adds the names of `gamma` and extends every label by each branch of `gamma`.
pub fn bl_wk(gamma: &[Formula], g: &BlGraph) -> BlGraph {
    let seq = Sequent::new(gamma.to_vec());
    let branches = seq.branches().expect("sharing-free weakening");
    let mut vertices = g.vertices.clone();
    vertices.extend(seq.names());
    let mut relation = BTreeSet::new();
    for (e, x) in &g.relation {
        for y in &branches {
            relation.insert((*e, x.union(y).copied().collect()));
        }
    }
    BlGraph::from_parts(vertices, relation)
}

pub fn bl_id(a: &Formula, b: &Formula) -> Result<BlGraph, GraphError> {
    if !a.is_dual_pair(b) || !a.is_sharing_free() || !b.is_sharing_free() {
        return Err(GraphError::PairInvalid(a.to_string(), b.to_string()));
    }
    Ok(bl_id_rec(a, b))
}

fn bl_id_rec(a: &Formula, b: &Formula) -> BlGraph {
    match (a, b) {
        (Formula::Atom(x, _), Formula::Atom(y, _)) => BlGraph::from_parts(
            BTreeSet::from([*x, *y]),
            BTreeSet::from([(edge(*x, *y), Branch::from([*x, *y]))]),
        ),
        (Formula::Or(a1, a2), Formula::And(b1, b2)) => bl_union([
            &bl_wk(&[(**a2).clone()], &bl_id_rec(a1, b1)),
            &bl_wk(&[(**a1).clone()], &bl_id_rec(a2, b2)),
        ]),
        (Formula::And(a1, a2), Formula::Or(b1, b2)) => bl_union([
            &bl_wk(&[(**b2).clone()], &bl_id_rec(a1, b1)),
            &bl_wk(&[(**b1).clone()], &bl_id_rec(a2, b2)),
        ]),
        _ => unreachable!("checked dual shape"),
    }
}

pub fn bl_axiom_graph(p: &Derivation) -> BlGraph {
    match p {
        Derivation::Ax { pair, conclusion } => {
            let id = bl_id(&pair.0, &pair.1).expect("valid axiom pair");
            let rest = conclusion
                .without(&pair.0)
                .and_then(|c| c.without(&pair.1))
                .expect("pair in conclusion");
            bl_wk(rest.formulas(), &id)
        }
        Derivation::Cut { formula, left, right } => {
            bl_compose(&bl_axiom_graph(left), &bl_axiom_graph(right), &formula.names())
        }
        _ => {
            let graphs: Vec<BlGraph> = p.premisses().into_iter().map(bl_axiom_graph).collect();
            bl_union(&graphs)
        }
    }
}
