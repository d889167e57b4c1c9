//! Graph-preserving cut elimination and normalisation by evaluation.

use thiserror::Error;

use crate::blgraph::{bl_axiom_graph, bl_compose, BlGraph};
use crate::derivation::{Derivation, ValidationError};
use crate::syntax::{Formula, Sequent};
use crate::transform::isolate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("composite graph has no edges over {0}")]
    EmptyComposite(String),
    #[error("context {0} is not atomic")]
    ContextNotAtomic(String),
    #[error("edge {0} is labeled {1}, not the unique branch of {2}")]
    ForeignLabel(String, String, String),
}

/// A cut-free derivation with the same conclusion and the same bl-axiom graph.
pub fn normalize(p: &Derivation) -> Result<Derivation, NormalizeError> {
    p.validate()?;
    norm(p)
}

fn norm(p: &Derivation) -> Result<Derivation, NormalizeError> {
    if p.is_cut_free() {
        return Ok(p.clone());
    }
    match p {
        Derivation::Ax { .. } => Ok(p.clone()),
        Derivation::Sup(l, r) => Ok(Derivation::sup(norm(l)?, norm(r)?)),
        Derivation::Or { principal, premiss } => Ok(Derivation::or(principal.clone(), norm(premiss)?)),
        Derivation::And { principal, left, right } => {
            Ok(Derivation::and(principal.clone(), norm(left)?, norm(right)?))
        }
        Derivation::Cut { formula, left, right } => {
            let context = p.conclusion();
            match context.first_compound() {
                Some(target) => {
                    let isolated = isolate(p, target).expect("target taken from the conclusion");
                    norm(&isolated)
                }
                None => nbe_atomic_cut(&norm(left)?, &norm(right)?, formula),
            }
        }
    }
}

/// Cut-free derivation of `|- G` denoting the composite of the bl-graphs of
/// `p` (concluding `|- G, A`) and `q` (concluding `|- G, ~A`), for atomic `G`.
pub fn nbe_atomic_cut(p: &Derivation, q: &Derivation, a: &Formula) -> Result<Derivation, NormalizeError> {
    let context = p.conclusion().without(a).unwrap_or_else(|| p.conclusion());
    let graph = bl_compose(&bl_axiom_graph(p), &bl_axiom_graph(q), &a.names());
    atomic_derivation(&graph, &context)
}

/// Superposition of one axiom per related pair, in ascending pair order with
/// a right-leaning fold, concluding the atomic sequent `context`.
pub fn atomic_derivation(graph: &BlGraph, context: &Sequent) -> Result<Derivation, NormalizeError> {
    if !context.is_atomic() {
        return Err(NormalizeError::ContextNotAtomic(context.to_string()));
    }
    let names = context.names();
    let mut axioms = Vec::new();
    for ((x, y), label) in graph.relation() {
        if *label != names {
            return Err(NormalizeError::ForeignLabel(
                format!("{x}{y}"),
                crate::render::branch_text(label),
                context.to_string(),
            ));
        }
        let ax = context.atom_at(*x).expect("vertex of context");
        let ay = context.atom_at(*y).expect("vertex of context");
        axioms.push(Derivation::ax(Formula::Atom(*x, ax), Formula::Atom(*y, ay), context.clone()));
    }
    let mut iter = axioms.into_iter().rev();
    let last = iter.next().ok_or_else(|| NormalizeError::EmptyComposite(context.to_string()))?;
    Ok(iter.fold(last, |acc, ax| Derivation::sup(ax, acc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_derivation, parse_formula, parse_sequent};

    #[test]
    fn cut_free_input_is_returned_unchanged() {
        let p = parse_derivation("(or (x:a | y:~a) (ax {x:a , y:~a} |- x:a, y:~a))").unwrap();
        assert_eq!(normalize(&p).unwrap(), p);
    }

    #[test]
    fn single_edge_composite_gives_one_axiom() {
        let p = parse_derivation("(ax {x:~a , u:a} |- x:~a, y:a, u:a)").unwrap();
        let q = parse_derivation("(ax {y:a , u:~a} |- x:~a, y:a, u:~a)").unwrap();
        let r = nbe_atomic_cut(&p, &q, &parse_formula("u:a").unwrap()).unwrap();
        assert_eq!(r, parse_derivation("(ax {x:~a , y:a} |- x:~a, y:a)").unwrap());
    }

    #[test]
    fn two_edges_give_a_superposition() {
        let ctx = parse_sequent("|- x:~a, y:a, z:~b, w:b").unwrap();
        let rel = [
            ((crate::Name::parse("x").unwrap(), crate::Name::parse("y").unwrap()), ctx.names()),
            ((crate::Name::parse("w").unwrap(), crate::Name::parse("z").unwrap()), ctx.names()),
        ];
        let g = BlGraph::new(ctx.names(), rel).unwrap();
        let d = atomic_derivation(&g, &ctx).unwrap();
        d.validate().unwrap();
        assert!(matches!(d, Derivation::Sup(..)));
        assert_eq!(bl_axiom_graph(&d), g);
    }

    #[test]
    fn empty_composite_is_an_error() {
        let ctx = parse_sequent("|- x:a").unwrap();
        let g = BlGraph::empty_on(ctx.names());
        assert!(matches!(atomic_derivation(&g, &ctx), Err(NormalizeError::EmptyComposite(_))));
    }
}
