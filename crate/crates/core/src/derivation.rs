//! Derivation trees, validity checking and structural measures.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::name::Name;
use crate::syntax::{Formula, Renaming, Sequent, SyntaxError};

/// A derivation tree. Conclusions are stored only at axiom leaves; every other
/// node's conclusion is recomputed from its premisses.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Derivation {
    Ax { pair: (Formula, Formula), conclusion: Sequent },
    Cut { formula: Formula, left: Box<Derivation>, right: Box<Derivation> },
    Sup(Box<Derivation>, Box<Derivation>),
    Or { principal: Formula, premiss: Box<Derivation> },
    And { principal: Formula, left: Box<Derivation>, right: Box<Derivation> },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValidationKind {
    RuleMismatch,
    NotSharingFree,
    ContextMismatch,
    AxiomPairInvalid,
}

impl fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A failed side condition, located by the child indices leading from the root.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("{kind} path={} detail={detail}", format_path(.path))]
pub struct ValidationError {
    pub kind: ValidationKind,
    pub path: Vec<usize>,
    pub detail: String,
}

pub fn format_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

impl Derivation {
    /// Axiom node; the pair is stored ordered by minimum name.
    pub fn ax(a: Formula, b: Formula, conclusion: Sequent) -> Derivation {
        let pair = if b.min_name() < a.min_name() { (b, a) } else { (a, b) };
        Derivation::Ax { pair, conclusion }
    }

    pub fn cut(formula: Formula, left: Derivation, right: Derivation) -> Derivation {
        Derivation::Cut { formula, left: Box::new(left), right: Box::new(right) }
    }

    pub fn sup(left: Derivation, right: Derivation) -> Derivation {
        Derivation::Sup(Box::new(left), Box::new(right))
    }

    pub fn or(principal: Formula, premiss: Derivation) -> Derivation {
        Derivation::Or { principal, premiss: Box::new(premiss) }
    }

    pub fn and(principal: Formula, left: Derivation, right: Derivation) -> Derivation {
        Derivation::And { principal, left: Box::new(left), right: Box::new(right) }
    }

    pub fn premisses(&self) -> Vec<&Derivation> {
        match self {
            Derivation::Ax { .. } => vec![],
            Derivation::Or { premiss, .. } => vec![premiss],
            Derivation::Cut { left, right, .. }
            | Derivation::Sup(left, right)
            | Derivation::And { left, right, .. } => vec![left, right],
        }
    }

    /// Root sequent, following the leftmost premiss chain. Assumes validity;
    /// on invalid trees the result is unspecified but never panics.
    pub fn conclusion(&self) -> Sequent {
        match self {
            Derivation::Ax { conclusion, .. } => conclusion.clone(),
            Derivation::Cut { formula, left, .. } => {
                let c = left.conclusion();
                c.without(formula).unwrap_or(c)
            }
            Derivation::Sup(left, _) => left.conclusion(),
            Derivation::Or { principal, premiss } => {
                let mut c = premiss.conclusion();
                if let Formula::Or(a, b) = principal {
                    c = c.without(a).unwrap_or(c);
                    c = c.without(b).unwrap_or(c);
                }
                c.with(principal.clone())
            }
            Derivation::And { principal, left, .. } => {
                let mut c = left.conclusion();
                if let Formula::And(a, _) = principal {
                    c = c.without(a).unwrap_or(c);
                }
                c.with(principal.clone())
            }
        }
    }

    /// Checks every rule's side conditions and returns the root sequent.
    pub fn validate(&self) -> Result<Sequent, ValidationError> {
        let mut path = Vec::new();
        self.validate_at(&mut path)
    }

    fn validate_at(&self, path: &mut Vec<usize>) -> Result<Sequent, ValidationError> {
        let fail = |kind, path: &Vec<usize>, detail: String| {
            Err(ValidationError { kind, path: path.clone(), detail })
        };
        let child = |d: &Derivation, i: usize, path: &mut Vec<usize>| {
            path.push(i);
            let r = d.validate_at(path);
            path.pop();
            r
        };
        let conclusion = match self {
            Derivation::Ax { pair: (a, b), conclusion } => {
                if !a.is_dual_pair(b) {
                    return fail(
                        ValidationKind::AxiomPairInvalid,
                        path,
                        format!("{{{a} , {b}}} is not a name-disjoint dual pair"),
                    );
                }
                if !conclusion.contains(a) || !conclusion.contains(b) {
                    return fail(
                        ValidationKind::AxiomPairInvalid,
                        path,
                        format!("{{{a} , {b}}} not contained in {conclusion}"),
                    );
                }
                conclusion.clone()
            }
            Derivation::Cut { formula, left, right } => {
                let l = child(left, 0, path)?;
                let r = child(right, 1, path)?;
                let dual = formula.negate();
                let Some(lc) = l.without(formula) else {
                    return fail(ValidationKind::RuleMismatch, path, format!("left premiss lacks {formula}"));
                };
                let Some(rc) = r.without(&dual) else {
                    return fail(ValidationKind::RuleMismatch, path, format!("right premiss lacks {dual}"));
                };
                if lc != rc {
                    return fail(ValidationKind::ContextMismatch, path, format!("{lc} vs {rc}"));
                }
                lc
            }
            Derivation::Sup(left, right) => {
                let l = child(left, 0, path)?;
                let r = child(right, 1, path)?;
                if l != r {
                    return fail(ValidationKind::ContextMismatch, path, format!("{l} vs {r}"));
                }
                l
            }
            Derivation::Or { principal, premiss } => {
                let Formula::Or(a, b) = principal else {
                    return fail(ValidationKind::RuleMismatch, path, format!("{principal} is not a disjunction"));
                };
                let p = child(premiss, 0, path)?;
                let Some(c) = p.without(a).and_then(|c| c.without(b)) else {
                    return fail(ValidationKind::RuleMismatch, path, format!("premiss lacks {a} or {b}"));
                };
                c.with(principal.clone())
            }
            Derivation::And { principal, left, right } => {
                let Formula::And(a, b) = principal else {
                    return fail(ValidationKind::RuleMismatch, path, format!("{principal} is not a conjunction"));
                };
                let l = child(left, 0, path)?;
                let r = child(right, 1, path)?;
                let Some(lc) = l.without(a) else {
                    return fail(ValidationKind::RuleMismatch, path, format!("left premiss lacks {a}"));
                };
                let Some(rc) = r.without(b) else {
                    return fail(ValidationKind::RuleMismatch, path, format!("right premiss lacks {b}"));
                };
                if lc != rc {
                    return fail(ValidationKind::ContextMismatch, path, format!("{lc} vs {rc}"));
                }
                lc.with(principal.clone())
            }
        };
        if !conclusion.is_sharing_free() {
            return fail(ValidationKind::NotSharingFree, path, conclusion.to_string());
        }
        Ok(conclusion)
    }

    pub fn is_cut_free(&self) -> bool {
        match self {
            Derivation::Cut { .. } => false,
            _ => self.premisses().into_iter().all(Derivation::is_cut_free),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Derivation::Ax { .. } => 0,
            _ => 1 + self.premisses().into_iter().map(Derivation::height).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premisses().into_iter().map(Derivation::size).sum::<usize>()
    }

    /// Height in which each axiom counts as the depth of its full expansion.
    pub fn virtual_height(&self) -> usize {
        match self {
            Derivation::Ax { conclusion, .. } => 1 + conclusion.degree(),
            _ => 1 + self.premisses().into_iter().map(Derivation::virtual_height).max().unwrap_or(0),
        }
    }

    fn for_each_formula(&self, f: &mut impl FnMut(&Formula)) {
        match self {
            Derivation::Ax { pair, conclusion } => {
                f(&pair.0);
                f(&pair.1);
                conclusion.formulas().iter().for_each(&mut *f);
            }
            Derivation::Cut { formula, .. } => f(formula),
            Derivation::Or { principal, .. } | Derivation::And { principal, .. } => f(principal),
            Derivation::Sup(..) => {}
        }
        for p in self.premisses() {
            p.for_each_formula(f);
        }
    }

    /// Every name occurring anywhere in the tree, including cut formulas.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.for_each_formula(&mut |g| {
            g.for_each_atom(&mut |x, _| {
                out.insert(x);
            })
        });
        out
    }

    pub fn map_names(&self, f: &impl Fn(Name) -> Name) -> Derivation {
        match self {
            Derivation::Ax { pair, conclusion } => {
                Derivation::ax(pair.0.map_names(f), pair.1.map_names(f), conclusion.map_names(f))
            }
            Derivation::Cut { formula, left, right } => {
                Derivation::cut(formula.map_names(f), left.map_names(f), right.map_names(f))
            }
            Derivation::Sup(l, r) => Derivation::sup(l.map_names(f), r.map_names(f)),
            Derivation::Or { principal, premiss } => {
                Derivation::or(principal.map_names(f), premiss.map_names(f))
            }
            Derivation::And { principal, left, right } => {
                Derivation::and(principal.map_names(f), left.map_names(f), right.map_names(f))
            }
        }
    }

    pub fn rename(&self, phi: &Renaming) -> Result<Derivation, SyntaxError> {
        phi.covers(&self.names())?;
        Ok(self.map_names(&|x| phi.get(x).expect("covered")))
    }

    pub fn cut_count(&self) -> usize {
        let own = usize::from(matches!(self, Derivation::Cut { .. }));
        own + self.premisses().into_iter().map(Derivation::cut_count).sum::<usize>()
    }

    pub fn sup_count(&self) -> usize {
        let own = usize::from(matches!(self, Derivation::Sup(..)));
        own + self.premisses().into_iter().map(Derivation::sup_count).sum::<usize>()
    }
}
