//! Simple name graphs, alternating paths, composition and axiom graphs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::derivation::Derivation;
use crate::name::Name;
use crate::syntax::Formula;

/// An unordered pair of names, stored as `(min, max)`.
pub type Edge = (Name, Name);

pub fn edge(x: Name, y: Name) -> Edge {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{0} and {1} are not a name-disjoint dual pair")]
    PairInvalid(String, String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NameGraph {
    pub vertices: BTreeSet<Name>,
    pub edges: BTreeSet<Edge>,
}

impl NameGraph {
    pub fn new(vertices: BTreeSet<Name>, edges: impl IntoIterator<Item = Edge>) -> NameGraph {
        let edges: BTreeSet<Edge> = edges.into_iter().map(|(x, y)| edge(x, y)).collect();
        debug_assert!(edges.iter().all(|(x, y)| x != y && vertices.contains(x) && vertices.contains(y)));
        NameGraph { vertices, edges }
    }

    pub fn is_subgraph_of(&self, other: &NameGraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    fn adjacency(&self) -> BTreeMap<Name, Vec<Name>> {
        let mut adj: BTreeMap<Name, Vec<Name>> = BTreeMap::new();
        for &(x, y) in &self.edges {
            adj.entry(x).or_default().push(y);
            adj.entry(y).or_default().push(x);
        }
        adj
    }
}

pub fn g_union<'a>(graphs: impl IntoIterator<Item = &'a NameGraph>) -> NameGraph {
    let mut out = NameGraph::default();
    for g in graphs {
        out.vertices.extend(g.vertices.iter().copied());
        out.edges.extend(g.edges.iter().copied());
    }
    out
}

pub fn g_restrict(g: &NameGraph, s: &BTreeSet<Name>) -> NameGraph {
    NameGraph {
        vertices: g.vertices.intersection(s).copied().collect(),
        edges: g.edges.iter().filter(|(x, y)| s.contains(x) && s.contains(y)).copied().collect(),
    }
}

pub fn wk_graph(formulas: &[Formula]) -> NameGraph {
    NameGraph { vertices: formulas.iter().flat_map(Formula::names).collect(), edges: BTreeSet::new() }
}

pub fn id_graph(a: &Formula, b: &Formula) -> Result<NameGraph, GraphError> {
    if !a.is_dual_pair(b) || !a.is_sharing_free() || !b.is_sharing_free() {
        return Err(GraphError::PairInvalid(a.to_string(), b.to_string()));
    }
    let mut out = NameGraph::default();
    id_edges(a, b, &mut out);
    Ok(out)
}

fn id_edges(a: &Formula, b: &Formula, out: &mut NameGraph) {
    match (a, b) {
        (Formula::Atom(x, _), Formula::Atom(y, _)) => {
            out.vertices.insert(*x);
            out.vertices.insert(*y);
            out.edges.insert(edge(*x, *y));
        }
        (Formula::Or(a1, a2), Formula::And(b1, b2)) | (Formula::And(a1, a2), Formula::Or(b1, b2)) => {
            id_edges(a1, b1, out);
            id_edges(a2, b2, out);
        }
        _ => unreachable!("checked dual shape"),
    }
}

/// A path whose consecutive edges alternate between two graphs. `first_in_g`
/// tells which graph supplies the first, third, ... edge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AltPath {
    pub vertices: Vec<Name>,
    pub first_in_g: bool,
}

impl AltPath {
    pub fn is_complete(&self, interface: &BTreeSet<Name>) -> bool {
        let (first, last) = (self.vertices[0], self.vertices[self.vertices.len() - 1]);
        !interface.contains(&first) && !interface.contains(&last)
    }
}

struct PathSearch<'a> {
    adj: [BTreeMap<Name, Vec<Name>>; 2],
    interface: &'a BTreeSet<Name>,
}

impl PathSearch<'_> {
    fn new<'a>(g: &NameGraph, h: &NameGraph, interface: &'a BTreeSet<Name>) -> PathSearch<'a> {
        PathSearch { adj: [g.adjacency(), h.adjacency()], interface }
    }

    /// Depth-first extension of `path`; `visit` sees every extension.
    fn extend(&self, path: &mut Vec<Name>, first_in_g: bool, visit: &mut impl FnMut(&[Name])) {
        let last = *path.last().expect("non-empty");
        if path.len() > 1 && !self.interface.contains(&last) {
            return;
        }
        let index = path.len() - 1;
        let side = usize::from(index.is_multiple_of(2) != first_in_g);
        let Some(next) = self.adj[side].get(&last) else { return };
        for &w in next {
            if path.contains(&w) {
                continue;
            }
            path.push(w);
            visit(path);
            self.extend(path, first_in_g, visit);
            path.pop();
        }
    }
}

/// Every alternating path between `g` and `h` through `interface`, with each
/// parity under which it alternates. Single vertices count under both parities.
pub fn alternating_paths(g: &NameGraph, h: &NameGraph, interface: &BTreeSet<Name>) -> BTreeSet<AltPath> {
    let search = PathSearch::new(g, h, interface);
    let mut out = BTreeSet::new();
    for &v in g.vertices.union(&h.vertices) {
        for first_in_g in [true, false] {
            out.insert(AltPath { vertices: vec![v], first_in_g });
            let mut path = vec![v];
            search.extend(&mut path, first_in_g, &mut |p| {
                out.insert(AltPath { vertices: p.to_vec(), first_in_g });
            });
        }
    }
    out
}

/// Endpoint pairs of alternating paths whose endpoints lie outside the interface.
pub(crate) fn composite_edges(g: &NameGraph, h: &NameGraph, interface: &BTreeSet<Name>) -> BTreeSet<Edge> {
    let search = PathSearch::new(g, h, interface);
    let mut out = BTreeSet::new();
    let starts: BTreeSet<Name> = g.edges.iter().chain(&h.edges).flat_map(|&(x, y)| [x, y]).collect();
    for &x in starts.iter().filter(|x| !interface.contains(x)) {
        for first_in_g in [true, false] {
            let mut path = vec![x];
            search.extend(&mut path, first_in_g, &mut |p| {
                let y = p[p.len() - 1];
                if !interface.contains(&y) {
                    out.insert(edge(x, y));
                }
            });
        }
    }
    out
}

pub fn g_compose(g: &NameGraph, h: &NameGraph, interface: &BTreeSet<Name>) -> NameGraph {
    NameGraph {
        vertices: g.vertices.union(&h.vertices).filter(|x| !interface.contains(x)).copied().collect(),
        edges: composite_edges(g, h, interface),
    }
}

pub fn axiom_graph(p: &Derivation) -> NameGraph {
    match p {
        Derivation::Ax { pair, conclusion } => {
            let id = id_graph(&pair.0, &pair.1).expect("valid axiom pair");
            g_union([&wk_graph(conclusion.formulas()), &id])
        }
        Derivation::Cut { formula, left, right } => {
            g_compose(&axiom_graph(left), &axiom_graph(right), &formula.names())
        }
        _ => {
            let graphs: Vec<NameGraph> = p.premisses().into_iter().map(axiom_graph).collect();
            g_union(&graphs)
        }
    }
}
