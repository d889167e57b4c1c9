//! Inversion, isolation, weakening and derived contraction.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::derivation::Derivation;
use crate::name::Name;
use crate::syntax::{is_sharing_free, Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{0} does not occur in the conclusion")]
    TargetNotInConclusion(String),
    #[error("{0} is not a disjunction")]
    TargetNotDisjunction(String),
    #[error("{0} is not a conjunction")]
    TargetNotConjunction(String),
    #[error("{0} is atomic")]
    TargetAtomic(String),
    #[error("weakening formulas are not sharing-free")]
    DeltaNotSharingFree,
    #[error("weakening formulas share names with the conclusion")]
    DeltaSharesNamesWithConclusion,
    #[error("{0} and {1} are not a name-disjoint equivalent pair")]
    NotEquivalentPair(String, String),
}

fn require_in_conclusion(p: &Derivation, target: &Formula) -> Result<Sequent, TransformError> {
    let c = p.conclusion();
    if c.contains(target) {
        Ok(c)
    } else {
        Err(TransformError::TargetNotInConclusion(target.to_string()))
    }
}

/// From a derivation of `|- G, A|B` builds one of `|- G, A, B`.
pub fn inv_or(p: &Derivation, target: &Formula) -> Result<Derivation, TransformError> {
    require_in_conclusion(p, target)?;
    let Formula::Or(a, b) = target else {
        return Err(TransformError::TargetNotDisjunction(target.to_string()));
    };
    Ok(inv_or_rec(p, target, a, b))
}

fn inv_or_rec(p: &Derivation, target: &Formula, a: &Formula, b: &Formula) -> Derivation {
    match p {
        Derivation::Ax { pair, conclusion } => {
            let other = if &pair.0 == target {
                Some(&pair.1)
            } else if &pair.1 == target {
                Some(&pair.0)
            } else {
                None
            };
            match other {
                Some(other @ Formula::And(c, d)) => {
                    let delta = conclusion.without(target).and_then(|s| s.without(other)).expect("pair in conclusion");
                    let ab = [a.clone(), b.clone()];
                    let left = Derivation::ax(
                        (**c).clone(),
                        a.clone(),
                        delta.with_all(ab.iter().cloned().chain([(**c).clone()])),
                    );
                    let right = Derivation::ax(
                        (**d).clone(),
                        b.clone(),
                        delta.with_all(ab.iter().cloned().chain([(**d).clone()])),
                    );
                    Derivation::and(other.clone(), left, right)
                }
                _ => Derivation::Ax {
                    pair: pair.clone(),
                    conclusion: conclusion
                        .replace(target, [a.clone(), b.clone()])
                        .expect("target in conclusion"),
                },
            }
        }
        Derivation::Or { principal, premiss } if principal == target => (**premiss).clone(),
        _ => rebuild(p, &|q| inv_or_rec(q, target, a, b)),
    }
}

/// Same rule and principal formula, with `f` applied to every premiss.
fn rebuild(p: &Derivation, f: &impl Fn(&Derivation) -> Derivation) -> Derivation {
    match p {
        Derivation::Ax { .. } => p.clone(),
        Derivation::Cut { formula, left, right } => Derivation::cut(formula.clone(), f(left), f(right)),
        Derivation::Sup(left, right) => Derivation::sup(f(left), f(right)),
        Derivation::Or { principal, premiss } => Derivation::or(principal.clone(), f(premiss)),
        Derivation::And { principal, left, right } => {
            Derivation::and(principal.clone(), f(left), f(right))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// From a derivation of `|- G, A&B` builds one of `|- G, A`.
pub fn inv_and_l(p: &Derivation, target: &Formula) -> Result<Derivation, TransformError> {
    inv_and(p, target, Side::Left)
}

/// From a derivation of `|- G, A&B` builds one of `|- G, B`.
pub fn inv_and_r(p: &Derivation, target: &Formula) -> Result<Derivation, TransformError> {
    inv_and(p, target, Side::Right)
}

pub fn inv_and(p: &Derivation, target: &Formula, side: Side) -> Result<Derivation, TransformError> {
    require_in_conclusion(p, target)?;
    let Formula::And(a, b) = target else {
        return Err(TransformError::TargetNotConjunction(target.to_string()));
    };
    Ok(inv_and_rec(p, target, a, b, side))
}

fn inv_and_rec(p: &Derivation, target: &Formula, a: &Formula, b: &Formula, side: Side) -> Derivation {
    let kept = match side {
        Side::Left => a,
        Side::Right => b,
    };
    match p {
        Derivation::Ax { pair, conclusion } => {
            let other = if &pair.0 == target {
                Some(&pair.1)
            } else if &pair.1 == target {
                Some(&pair.0)
            } else {
                None
            };
            match other {
                Some(other @ Formula::Or(c, d)) => {
                    let delta = conclusion.without(target).and_then(|s| s.without(other)).expect("pair in conclusion");
                    let partner = match side {
                        Side::Left => c,
                        Side::Right => d,
                    };
                    let leaf = Derivation::ax(
                        (**partner).clone(),
                        kept.clone(),
                        delta.with_all([(**c).clone(), (**d).clone(), kept.clone()]),
                    );
                    Derivation::or(other.clone(), leaf)
                }
                _ => Derivation::Ax {
                    pair: pair.clone(),
                    conclusion: conclusion.replace(target, [kept.clone()]).expect("target in conclusion"),
                },
            }
        }
        Derivation::And { principal, left, right } if principal == target => match side {
            Side::Left => (**left).clone(),
            Side::Right => (**right).clone(),
        },
        _ => rebuild(p, &|q| inv_and_rec(q, target, a, b, side)),
    }
}

/// Rewrites `p` so that its last rule introduces `target`.
pub fn isolate(p: &Derivation, target: &Formula) -> Result<Derivation, TransformError> {
    require_in_conclusion(p, target)?;
    match target {
        Formula::Atom(..) => Err(TransformError::TargetAtomic(target.to_string())),
        Formula::Or(..) => Ok(Derivation::or(target.clone(), inv_or(p, target)?)),
        Formula::And(..) => Ok(Derivation::and(
            target.clone(),
            inv_and(p, target, Side::Left)?,
            inv_and(p, target, Side::Right)?,
        )),
    }
}

/// Adds `delta` to the conclusion, renaming cut formulas that clash with it.
pub fn weaken(p: &Derivation, delta: &[Formula]) -> Result<Derivation, TransformError> {
    if !is_sharing_free(delta) {
        return Err(TransformError::DeltaNotSharingFree);
    }
    let delta_names: BTreeSet<Name> = delta.iter().flat_map(Formula::names).collect();
    if !p.conclusion().names().is_disjoint(&delta_names) {
        return Err(TransformError::DeltaSharesNamesWithConclusion);
    }
    Ok(weaken_rec(p, delta, &delta_names))
}

fn weaken_rec(p: &Derivation, delta: &[Formula], delta_names: &BTreeSet<Name>) -> Derivation {
    match p {
        Derivation::Ax { pair, conclusion } => Derivation::Ax {
            pair: pair.clone(),
            conclusion: conclusion.with_all(delta.iter().cloned()),
        },
        Derivation::Cut { .. } => {
            let names = p.names();
            let renamed = if names.is_disjoint(delta_names) {
                p.clone()
            } else {
                let max = names.iter().chain(delta_names).map(|x| x.0).max().unwrap_or(0);
                let k = max + 1;
                p.map_names(&|x| if delta_names.contains(&x) { Name(x.0 + k) } else { x })
            };
            let Derivation::Cut { formula, left, right } = renamed else { unreachable!() };
            Derivation::cut(
                formula,
                weaken_rec(&left, delta, delta_names),
                weaken_rec(&right, delta, delta_names),
            )
        }
        _ => rebuild(p, &|q| weaken_rec(q, delta, delta_names)),
    }
}

/// From `|- G, A, B` with `A` and `B` equivalent, derives `|- G, A` by cutting
/// `B` against the axiom on `{A, dual B}`.
pub fn contract(p: &Derivation, a: &Formula, b: &Formula) -> Result<Derivation, TransformError> {
    let conclusion = require_in_conclusion(p, a)?;
    require_in_conclusion(p, b)?;
    if !a.equiv(b) || !a.names().is_disjoint(&b.names()) {
        return Err(TransformError::NotEquivalentPair(a.to_string(), b.to_string()));
    }
    let nb = b.negate();
    let axiom_conclusion = conclusion.without(b).expect("present").with(nb.clone());
    Ok(Derivation::cut(b.clone(), p.clone(), Derivation::ax(a.clone(), nb, axiom_conclusion)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_derivation, parse_formula};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn inv_or_on_axiom_target_expands() {
        let p = parse_derivation("(ax {(u:~a & v:~b) , (x:a | y:b)} |- (u:~a & v:~b), (x:a | y:b))").unwrap();
        let q = inv_or(&p, &f("(x:a | y:b)")).unwrap();
        let expected = parse_derivation(
            "(and (u:~a & v:~b) (ax {u:~a , x:a} |- u:~a, x:a, y:b) (ax {v:~b , y:b} |- v:~b, x:a, y:b))",
        )
        .unwrap();
        assert_eq!(q, expected);
        q.validate().unwrap();
    }

    #[test]
    fn inv_or_strips_introduction() {
        let p = parse_derivation("(or (x:a | y:b) (ax {x:a , z:~a} |- x:a, y:b, z:~a))").unwrap();
        let q = inv_or(&p, &f("(x:a | y:b)")).unwrap();
        assert_eq!(&q, p.premisses()[0]);
    }

    #[test]
    fn inv_or_rewrites_context_of_other_axioms() {
        let p = parse_derivation("(ax {z:a , w:~a} |- (x:a | y:b), z:a, w:~a)").unwrap();
        let q = inv_or(&p, &f("(x:a | y:b)")).unwrap();
        assert_eq!(q, parse_derivation("(ax {z:a , w:~a} |- x:a, y:b, z:a, w:~a)").unwrap());
    }

    #[test]
    fn inv_and_on_axiom_target() {
        let p = parse_derivation("(ax {(u:~c | v:~d) , (x:c & y:d)} |- (u:~c | v:~d), (x:c & y:d))").unwrap();
        let l = inv_and_l(&p, &f("(x:c & y:d)")).unwrap();
        assert_eq!(
            l,
            parse_derivation("(or (u:~c | v:~d) (ax {u:~c , x:c} |- u:~c, v:~d, x:c))").unwrap()
        );
        let r = inv_and_r(&p, &f("(x:c & y:d)")).unwrap();
        assert_eq!(
            r,
            parse_derivation("(or (u:~c | v:~d) (ax {v:~d , y:d} |- u:~c, v:~d, y:d))").unwrap()
        );
    }

    #[test]
    fn isolate_rejects_bad_targets() {
        let p = parse_derivation("(ax {x:a , y:~a} |- x:a, y:~a)").unwrap();
        assert!(matches!(isolate(&p, &f("x:a")), Err(TransformError::TargetAtomic(_))));
        assert!(matches!(
            isolate(&p, &f("(x:a | y:b)")),
            Err(TransformError::TargetNotInConclusion(_))
        ));
    }

    #[test]
    fn weaken_axiom_and_empty() {
        let p = parse_derivation("(ax {x:a , y:~a} |- x:a, y:~a)").unwrap();
        assert_eq!(weaken(&p, &[]).unwrap(), p);
        let q = weaken(&p, &[f("z:b")]).unwrap();
        assert_eq!(q, parse_derivation("(ax {x:a , y:~a} |- x:a, y:~a, z:b)").unwrap());
        assert_eq!(weaken(&p, &[f("x:b")]), Err(TransformError::DeltaSharesNamesWithConclusion));
    }

    #[test]
    fn weaken_renames_clashing_cut_formula() {
        let p = parse_derivation(
            "(cut u:a (ax {x:~a , u:a} |- x:~a, y:a, u:a) (ax {y:a , u:~a} |- x:~a, y:a, u:~a))",
        )
        .unwrap();
        p.validate().unwrap();
        let q = weaken(&p, &[f("u:b")]).unwrap();
        q.validate().unwrap();
        assert_eq!(q.conclusion().to_string(), "|- u:b, x:~a, y:a");
        let Derivation::Cut { formula, .. } = &q else { panic!() };
        assert_ne!(formula, &f("u:a"));
        assert!(!formula.names().contains(&Name::parse("u").unwrap()));
    }

    #[test]
    fn contract_builds_cut_against_axiom() {
        let p = parse_derivation("(ax {x:a , z:~a} |- x:a, y:a, z:~a)").unwrap();
        let q = contract(&p, &f("x:a"), &f("y:a")).unwrap();
        q.validate().unwrap();
        assert_eq!(q.conclusion().to_string(), "|- x:a, z:~a");
        let Derivation::Cut { right, .. } = &q else { panic!() };
        assert_eq!(**right, parse_derivation("(ax {x:a , y:~a} |- x:a, y:~a, z:~a)").unwrap());
        assert!(contract(&p, &f("x:a"), &f("z:~a")).is_err());
    }
}
