//! Totality, sequentialization and the BLG proof system, whose proofs are
//! total pairs of a bl-graph and a sequent.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::blgraph::{bl_axiom_graph, bl_compose, bl_id, bl_restrict, bl_union, bl_wk, BlGraph};
use crate::derivation::Derivation;
use crate::name::Name;
use crate::namegraph::{edge, Edge};
use crate::normalize::atomic_derivation;
use crate::render::branch_text;
use crate::syntax::{Branch, Formula, Sequent};
use crate::transform::Side;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlgProof {
    pub graph: BlGraph,
    pub sequent: Sequent,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TotalityError {
    #[error("sequent is not sharing-free")]
    NotSharingFree,
    #[error("vertices differ from the sequent's names: missing {missing:?}, extra {extra:?}")]
    VertexMismatch { missing: Vec<String>, extra: Vec<String> },
    #[error("branch {} of the sequent has no edge", branch_text(.0))]
    MissingBranch(Branch),
    #[error("labels {} are not branches of the sequent", excess_text(.0))]
    ExcessBranches(BTreeSet<Branch>),
    #[error("edge {}{} does not join dual atoms", .0.0, .0.1)]
    NonDualEdge(Edge),
}

fn excess_text(labels: &BTreeSet<Branch>) -> String {
    labels.iter().map(branch_text).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum BlgError {
    #[error("not total: {0}")]
    NotTotal(#[from] TotalityError),
    #[error("rule does not apply: {0}")]
    ShapeMismatch(String),
    #[error("rule produced a non-total object: {0}")]
    Internal(TotalityError),
}

fn is_dual_edge(s: &Sequent, (x, y): Edge) -> bool {
    matches!((s.atom_at(x), s.atom_at(y)), (Ok(a), Ok(b)) if a == b.dual())
}

/// Reference check enumerating every branch of the sequent.
pub fn is_total(g: &BlGraph, s: &Sequent) -> bool {
    let Ok(branches) = s.branches() else { return false };
    *g.vertices() == s.names() && g.branches() == branches && g.edges().into_iter().all(|e| is_dual_edge(s, e))
}

/// Worklist check that generates branches of the sequent one at a time and
/// erases each from the graph's label set, so the work stays polynomial in
/// `blg_size`. Returns the outcome and the number of unit steps taken.
pub fn check_totality_counted(g: &BlGraph, s: &Sequent) -> (Result<(), TotalityError>, usize) {
    let mut steps = 0;
    let result = run_check(g, s, &mut steps);
    (result, steps)
}

pub fn check_totality_poly(g: &BlGraph, s: &Sequent) -> Result<(), TotalityError> {
    check_totality_counted(g, s).0
}

fn run_check(g: &BlGraph, s: &Sequent, steps: &mut usize) -> Result<(), TotalityError> {
    if !s.is_sharing_free() {
        return Err(TotalityError::NotSharingFree);
    }
    let names = s.names();
    *steps += names.len() + g.vertices().len();
    if *g.vertices() != names {
        return Err(TotalityError::VertexMismatch {
            missing: names.difference(g.vertices()).map(Name::to_string).collect(),
            extra: g.vertices().difference(&names).map(Name::to_string).collect(),
        });
    }
    let mut remaining: HashSet<&Branch> = g.relation().iter().map(|(_, x)| x).collect();
    *steps += g.relation().len();
    let mut delayed: VecDeque<Vec<Formula>> = VecDeque::new();
    let mut active: Vec<Formula> = s.formulas().to_vec();
    loop {
        // Reduction: flatten disjunctions first, then split a conjunction.
        loop {
            *steps += active.iter().map(|f| f.measures().size).sum::<usize>().max(1);
            if let Some(i) = active.iter().position(|f| matches!(f, Formula::Or(..))) {
                let Formula::Or(a, b) = active.remove(i) else { unreachable!() };
                active.push(*a);
                active.push(*b);
            } else if let Some(i) = active.iter().position(|f| matches!(f, Formula::And(..))) {
                let Formula::And(a, b) = active.remove(i) else { unreachable!() };
                let mut later = active.clone();
                later.push(*b);
                delayed.push_back(later);
                active.push(*a);
            } else {
                break;
            }
        }
        // Matching.
        let branch: Branch = active.iter().flat_map(Formula::names).collect();
        *steps += branch.len().max(1);
        if !remaining.remove(&branch) {
            return Err(TotalityError::MissingBranch(branch));
        }
        // Backtracking.
        *steps += 1;
        match (remaining.is_empty(), delayed.pop_front()) {
            (true, None) => break,
            (true, Some(next)) => return Err(TotalityError::MissingBranch(first_branch(next))),
            (false, None) => {
                return Err(TotalityError::ExcessBranches(remaining.into_iter().cloned().collect()))
            }
            (false, Some(next)) => active = next,
        }
    }
    for ((x, y), _) in g.relation() {
        *steps += 1;
        if !is_dual_edge(s, (*x, *y)) {
            return Err(TotalityError::NonDualEdge((*x, *y)));
        }
    }
    Ok(())
}

/// The leftmost branch of a sequent.
fn first_branch(formulas: Vec<Formula>) -> Branch {
    fn go(f: &Formula, out: &mut Branch) {
        match f {
            Formula::Atom(x, _) => {
                out.insert(*x);
            }
            Formula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::And(a, _) => go(a, out),
        }
    }
    let mut out = Branch::new();
    formulas.iter().for_each(|f| go(f, &mut out));
    out
}

/// Sequent size plus vertex count plus the total size of all labels.
pub fn blg_size(p: &BlgProof) -> usize {
    p.sequent.measures().size + p.graph.vertices().len() + p.graph.relation().iter().map(|(_, x)| x.len()).sum::<usize>()
}

pub fn blg_from_derivation(p: &Derivation) -> BlgProof {
    BlgProof { graph: bl_axiom_graph(p), sequent: p.conclusion() }
}

/// A cut-free derivation of the proof's sequent whose bl-axiom graph is the
/// proof's graph.
pub fn sequentialize(p: &BlgProof) -> Result<Derivation, BlgError> {
    check_totality_poly(&p.graph, &p.sequent)?;
    Ok(seq_rec(&p.graph, &p.sequent))
}

fn seq_rec(g: &BlGraph, s: &Sequent) -> Derivation {
    match s.first_compound() {
        None => atomic_derivation(g, s).expect("total graphs over atomic sequents"),
        Some(f @ Formula::Or(a, b)) => {
            let premiss = s.replace(f, [(**a).clone(), (**b).clone()]).expect("member");
            Derivation::or(f.clone(), seq_rec(g, &premiss))
        }
        Some(f @ Formula::And(a, b)) => {
            let left = s.replace(f, [(**a).clone()]).expect("member");
            let right = s.replace(f, [(**b).clone()]).expect("member");
            let gl = bl_restrict(g, &left.names());
            let gr = bl_restrict(g, &right.names());
            Derivation::and(f.clone(), seq_rec(&gl, &left), seq_rec(&gr, &right))
        }
        Some(Formula::Atom(..)) => unreachable!("compound"),
    }
}

fn checked(graph: BlGraph, sequent: Sequent) -> Result<BlgProof, BlgError> {
    check_totality_poly(&graph, &sequent).map_err(BlgError::Internal)?;
    Ok(BlgProof { graph, sequent })
}

fn mismatch(what: impl std::fmt::Display) -> BlgError {
    BlgError::ShapeMismatch(what.to_string())
}

/// From `|- G, A, B` to `|- G, A | B`; the graph is unchanged.
pub fn blg_or_intro(p: &BlgProof, target: &Formula) -> Result<BlgProof, BlgError> {
    let Formula::Or(a, b) = target else { return Err(mismatch(format!("{target} is not a disjunction"))) };
    let without = p.sequent.without(a).and_then(|s| s.without(b));
    let rest = without.ok_or_else(|| mismatch(format!("{a} and {b} are not both in {}", p.sequent)))?;
    checked(p.graph.clone(), rest.with(target.clone()))
}

/// From `|- G, A | B` back to `|- G, A, B`.
pub fn blg_or_elim(p: &BlgProof, target: &Formula) -> Result<BlgProof, BlgError> {
    let Formula::Or(a, b) = target else { return Err(mismatch(format!("{target} is not a disjunction"))) };
    let s = p
        .sequent
        .replace(target, [(**a).clone(), (**b).clone()])
        .ok_or_else(|| mismatch(format!("{target} is not in {}", p.sequent)))?;
    checked(p.graph.clone(), s)
}

/// From `|- G, A` and `|- G, B` to `|- G, A & B`, uniting the graphs.
pub fn blg_and(p: &BlgProof, q: &BlgProof, target: &Formula) -> Result<BlgProof, BlgError> {
    let Formula::And(a, b) = target else { return Err(mismatch(format!("{target} is not a conjunction"))) };
    let gamma = p.sequent.without(a).ok_or_else(|| mismatch(format!("{a} is not in {}", p.sequent)))?;
    let delta = q.sequent.without(b).ok_or_else(|| mismatch(format!("{b} is not in {}", q.sequent)))?;
    if gamma != delta {
        return Err(mismatch(format!("contexts {gamma} and {delta} differ")));
    }
    checked(bl_union([&p.graph, &q.graph]), gamma.with(target.clone()))
}

/// From `|- G, A & B` to `|- G, A` (or `|- G, B`), restricting the graph.
pub fn blg_and_proj(p: &BlgProof, target: &Formula, side: Side) -> Result<BlgProof, BlgError> {
    let Formula::And(a, b) = target else { return Err(mismatch(format!("{target} is not a conjunction"))) };
    let kept = match side {
        Side::Left => a,
        Side::Right => b,
    };
    let s = p
        .sequent
        .replace(target, [(**kept).clone()])
        .ok_or_else(|| mismatch(format!("{target} is not in {}", p.sequent)))?;
    checked(bl_restrict(&p.graph, &s.names()), s)
}

pub fn blg_and_proj_l(p: &BlgProof, target: &Formula) -> Result<BlgProof, BlgError> {
    blg_and_proj(p, target, Side::Left)
}

pub fn blg_and_proj_r(p: &BlgProof, target: &Formula) -> Result<BlgProof, BlgError> {
    blg_and_proj(p, target, Side::Right)
}

/// From `|- G, A` and `|- G, ~A` to `|- G` by composing over the names of `A`.
pub fn blg_cut(p: &BlgProof, q: &BlgProof, a: &Formula) -> Result<BlgProof, BlgError> {
    let dual = a.negate();
    let gamma = p.sequent.without(a).ok_or_else(|| mismatch(format!("{a} is not in {}", p.sequent)))?;
    let delta = q.sequent.without(&dual).ok_or_else(|| mismatch(format!("{dual} is not in {}", q.sequent)))?;
    if gamma != delta {
        return Err(mismatch(format!("contexts {gamma} and {delta} differ")));
    }
    checked(bl_compose(&p.graph, &q.graph, &a.names()), gamma)
}

/// The axiom linking the dual pair `a`, `b` of `gamma`.
pub fn blg_ax(gamma: &Sequent, a: &Formula, b: &Formula) -> Result<BlgProof, BlgError> {
    let rest = gamma
        .without(a)
        .and_then(|s| s.without(b))
        .ok_or_else(|| mismatch(format!("{a} and {b} are not both in {gamma}")))?;
    let id = bl_id(a, b).map_err(mismatch)?;
    checked(bl_wk(rest.formulas(), &id), gamma.clone())
}

pub fn blg_sup(p: &BlgProof, q: &BlgProof) -> Result<BlgProof, BlgError> {
    if p.sequent != q.sequent {
        return Err(mismatch(format!("sequents {} and {} differ", p.sequent, q.sequent)));
    }
    checked(bl_union([&p.graph, &q.graph]), p.sequent.clone())
}

/// Ways of breaking exactly one clause of totality.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mutation {
    DropBranch,
    AddBranch,
    SamePolarityEdge,
    RemoveVertex,
}

impl Mutation {
    pub const ALL: [Mutation; 4] =
        [Mutation::DropBranch, Mutation::AddBranch, Mutation::SamePolarityEdge, Mutation::RemoveVertex];
}

/// A copy of `p` damaged by `m`; `pick` selects among the candidate sites.
/// `None` when the mutation has no site in `p`.
pub fn mutate(p: &BlgProof, m: Mutation, pick: usize) -> Option<BlgProof> {
    let vertices = p.graph.vertices().clone();
    let relation: Vec<(Edge, Branch)> = p.graph.relation().iter().cloned().collect();
    let graph = match m {
        Mutation::DropBranch => {
            let labels: Vec<Branch> = p.graph.branches().into_iter().collect();
            let victim = labels.get(pick % labels.len().max(1))?;
            BlGraph::new(vertices, relation.into_iter().filter(|(_, x)| x != victim)).ok()?
        }
        Mutation::AddBranch => {
            let ((x, y), label) = relation.get(pick % relation.len().max(1))?.clone();
            let branches = p.sequent.branches().ok()?;
            let mut candidates = vec![Branch::from([x, y]), label.union(&vertices).copied().collect()];
            for &z in label.iter().filter(|&&z| z != x && z != y) {
                let mut smaller = label.clone();
                smaller.remove(&z);
                candidates.push(smaller);
            }
            let spurious = candidates.into_iter().find(|c| !branches.contains(c))?;
            let mut relation = relation;
            relation.push(((x, y), spurious));
            BlGraph::new(vertices, relation).ok()?
        }
        Mutation::SamePolarityEdge => {
            let mut sites = Vec::new();
            for ((x, _), label) in &relation {
                let ax = p.sequent.atom_at(*x).ok()?;
                for &z in label {
                    if z != *x && p.sequent.atom_at(z).ok()? == ax {
                        sites.push(((*x, z), label.clone()));
                    }
                }
            }
            let site = sites.get(pick % sites.len().max(1))?.clone();
            let mut relation = relation;
            relation.push((edge(site.0 .0, site.0 .1), site.1));
            BlGraph::new(vertices, relation).ok()?
        }
        Mutation::RemoveVertex => {
            let list: Vec<Name> = vertices.iter().copied().collect();
            let victim = *list.get(pick % list.len().max(1))?;
            let kept: BTreeSet<Name> = vertices.into_iter().filter(|&z| z != victim).collect();
            let relation = relation.into_iter().filter(|((x, y), _)| *x != victim && *y != victim);
            BlGraph::new(kept, relation).ok()?
        }
    };
    Some(BlgProof { graph, sequent: p.sequent.clone() })
}
