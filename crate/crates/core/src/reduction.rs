//! Logical cut-reduction steps on a disjunction against its dual
//! conjunction, and an experiment measuring which of them keep the bl-graph.

use std::fmt::Write;

use thiserror::Error;

use crate::blgraph::bl_axiom_graph;
use crate::derivation::Derivation;
use crate::generate::{random_derivation, GenParams};
use crate::namegraph::axiom_graph;
use crate::syntax::Formula;
use crate::transform::{isolate, weaken, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("not a logical redex: {0}")]
    ShapeMismatch(String),
}

struct Redex<'a> {
    a: &'a Formula,
    b: &'a Formula,
    p0: &'a Derivation,
    q: &'a Derivation,
    r: &'a Derivation,
}

/// Matches `cut(A | B, or(A | B, P0), and(~A & ~B, Q, R))`.
fn redex(p: &Derivation) -> Result<Redex<'_>, ReductionError> {
    let shape = |why: &str| ReductionError::ShapeMismatch(why.to_string());
    let Derivation::Cut { formula: Formula::Or(a, b), left, right } = p else {
        return Err(shape("expected a cut on a disjunction"));
    };
    let Derivation::Or { premiss: p0, principal } = &**left else {
        return Err(shape("left premiss does not introduce the disjunction"));
    };
    let Derivation::And { left: q, right: r, principal: dual } = &**right else {
        return Err(shape("right premiss does not introduce the dual conjunction"));
    };
    let Derivation::Cut { formula, .. } = p else { unreachable!() };
    if principal != formula || *dual != formula.negate() {
        return Err(shape("premisses introduce other formulas"));
    }
    Ok(Redex { a, b, p0, q, r })
}

/// The two-cut reduct. `Left` cuts `A` first and keeps `B` outermost;
/// `Right` cuts `B` first and keeps `A` outermost.
pub fn reduce_cut_logical(p: &Derivation, side: Side) -> Result<Derivation, ReductionError> {
    let Redex { a, b, p0, q, r } = redex(p)?;
    let weakened = |d: &Derivation, f: &Formula| {
        weaken(d, std::slice::from_ref(f)).map_err(|e| ReductionError::ShapeMismatch(e.to_string()))
    };
    Ok(match side {
        Side::Left => {
            let inner = Derivation::cut(a.clone(), p0.clone(), weakened(q, b)?);
            Derivation::cut(b.clone(), inner, r.clone())
        }
        Side::Right => {
            let inner = Derivation::cut(b.clone(), p0.clone(), weakened(r, a)?);
            Derivation::cut(a.clone(), inner, q.clone())
        }
    })
}

/// Superposition of both reducts.
pub fn reduce_cut_superposed(p: &Derivation) -> Result<Derivation, ReductionError> {
    Ok(Derivation::sup(reduce_cut_logical(p, Side::Left)?, reduce_cut_logical(p, Side::Right)?))
}

/// The first cut on a compound formula in pre-order, turned into a redex:
/// oriented so the cut formula is a disjunction, with both premisses isolated.
pub fn eligible_redex(p: &Derivation) -> Option<Derivation> {
    let found = first_compound_cut(p)?;
    let Derivation::Cut { formula, left, right } = found else { unreachable!() };
    let (f, l, r) = match formula {
        Formula::Or(..) => (formula.clone(), &**left, &**right),
        _ => (formula.negate(), &**right, &**left),
    };
    let l = isolate(l, &f).ok()?;
    let r = isolate(r, &f.negate()).ok()?;
    Some(Derivation::cut(f, l, r))
}

fn first_compound_cut(p: &Derivation) -> Option<&Derivation> {
    if let Derivation::Cut { formula, .. } = p {
        if !formula.is_atomic() {
            return Some(p);
        }
    }
    p.premisses().into_iter().find_map(first_compound_cut)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ExperimentRow {
    pub seed: u64,
    pub eligible: bool,
    pub preserved_left: bool,
    pub preserved_right: bool,
    pub preserved_superposed: bool,
    /// Whether both reducts keep the simple graph.
    pub simple_preserved: bool,
}

pub fn experiment_row(seed: u64, params: &GenParams) -> ExperimentRow {
    let d = random_derivation(seed, params);
    let Some(redex) = eligible_redex(&d) else {
        return ExperimentRow { seed, ..ExperimentRow::default() };
    };
    let left = reduce_cut_logical(&redex, Side::Left).expect("redex shape");
    let right = reduce_cut_logical(&redex, Side::Right).expect("redex shape");
    let sup = Derivation::sup(left.clone(), right.clone());
    let bl = bl_axiom_graph(&redex);
    let simple = axiom_graph(&redex);
    ExperimentRow {
        seed,
        eligible: true,
        preserved_left: bl_axiom_graph(&left) == bl,
        preserved_right: bl_axiom_graph(&right) == bl,
        preserved_superposed: bl_axiom_graph(&sup) == bl,
        simple_preserved: axiom_graph(&left) == simple && axiom_graph(&right) == simple,
    }
}

/// Rows for seeds 0, 1, ... until `eligible` eligible seeds have been seen.
pub fn run_experiment(eligible: usize, params: &GenParams) -> Vec<ExperimentRow> {
    let mut rows = Vec::new();
    let mut seen = 0;
    let mut seed = 0;
    while seen < eligible {
        let row = experiment_row(seed, params);
        seen += usize::from(row.eligible);
        rows.push(row);
        seed += 1;
    }
    rows
}

pub fn experiment_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("seed,eligible,preserved_logical_left,preserved_logical_right,preserved_superposed\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.seed, r.eligible, r.preserved_left, r.preserved_right, r.preserved_superposed
        )
        .unwrap();
    }
    out
}
