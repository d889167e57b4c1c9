//! Named formulas, sequents, branch sets, complexity measures and renamings.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use crate::name::{Name, Symbol};

/// A set of names identifying one branch of a sequent's atomic decomposition.
pub type Branch = BTreeSet<Name>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("name {0} does not occur")]
    NameNotFound(Name),
    #[error("not sharing-free")]
    NotSharingFree,
    #[error("renaming is not injective: {0} and {1} both map to {2}")]
    NotInjective(Name, Name, Name),
    #[error("renaming does not cover name {0}")]
    DomainTooSmall(Name),
}

/// A propositional atom with a polarity bit; `dual` flips it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom {
    pub base: Symbol,
    pub negated: bool,
}

impl Atom {
    pub fn positive(base: Symbol) -> Atom {
        Atom { base, negated: false }
    }

    pub fn dual(self) -> Atom {
        Atom { base: self.base, negated: !self.negated }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Name, Atom),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
}

/// Height, atom count, degree and size of a formula or sequent.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Measures {
    pub height: usize,
    pub atom_count: usize,
    pub degree: usize,
    pub size: usize,
}

impl Formula {
    pub fn atom(name: Name, atom: Atom) -> Formula {
        Formula::Atom(name, atom)
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    /// De Morgan dual, keeping every name in place.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(x, a) => Formula::Atom(*x, a.dual()),
            Formula::Or(l, r) => Formula::and(l.negate(), r.negate()),
            Formula::And(l, r) => Formula::or(l.negate(), r.negate()),
        }
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(Name, Atom)) {
        match self {
            Formula::Atom(x, a) => f(*x, *a),
            Formula::Or(l, r) | Formula::And(l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
        }
    }

    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |x, _| {
            out.insert(x);
        });
        out
    }

    pub fn name_list(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.for_each_atom(&mut |x, _| out.push(x));
        out
    }

    pub fn min_name(&self) -> Name {
        let mut min = None;
        self.for_each_atom(&mut |x, _| {
            if min.is_none_or(|m| x < m) {
                min = Some(x);
            }
        });
        min.expect("formulas contain at least one atom")
    }

    pub fn max_name(&self) -> Name {
        let mut max = Name(0);
        self.for_each_atom(&mut |x, _| max = max.max(x));
        max
    }

    pub fn is_sharing_free(&self) -> bool {
        let list = self.name_list();
        let set: BTreeSet<_> = list.iter().collect();
        set.len() == list.len()
    }

    pub fn atom_at(&self, x: Name) -> Option<Atom> {
        let mut found = None;
        self.for_each_atom(&mut |y, a| {
            if y == x && found.is_none() {
                found = Some(a);
            }
        });
        found
    }

    /// Equality after erasing names.
    pub fn equiv(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Atom(_, a), Formula::Atom(_, b)) => a == b,
            (Formula::Or(a, b), Formula::Or(c, d)) | (Formula::And(a, b), Formula::And(c, d)) => {
                a.equiv(c) && b.equiv(d)
            }
            _ => false,
        }
    }

    /// Whether `{self, other}` is a valid axiom pair: `other` is the dual of a
    /// renamed copy of `self` and the two share no names.
    pub fn is_dual_pair(&self, other: &Formula) -> bool {
        self.dual_shape(other) && self.names().is_disjoint(&other.names())
    }

    fn dual_shape(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Atom(_, a), Formula::Atom(_, b)) => a.dual() == *b,
            (Formula::Or(a, b), Formula::And(c, d)) | (Formula::And(a, b), Formula::Or(c, d)) => {
                a.dual_shape(c) && b.dual_shape(d)
            }
            _ => false,
        }
    }

    pub fn branches(&self) -> BTreeSet<Branch> {
        match self {
            Formula::Atom(x, _) => BTreeSet::from([Branch::from([*x])]),
            Formula::Or(l, r) => {
                let right = r.branches();
                let mut out = BTreeSet::new();
                for x in l.branches() {
                    for y in &right {
                        out.insert(x.union(y).copied().collect());
                    }
                }
                out
            }
            Formula::And(l, r) => {
                let mut out = l.branches();
                out.extend(r.branches());
                out
            }
        }
    }

    pub fn measures(&self) -> Measures {
        match self {
            Formula::Atom(..) => Measures { height: 0, atom_count: 1, degree: 0, size: 1 },
            Formula::Or(l, r) | Formula::And(l, r) => {
                let (l, r) = (l.measures(), r.measures());
                Measures {
                    height: 1 + l.height.max(r.height),
                    atom_count: l.atom_count + r.atom_count,
                    degree: 1 + l.degree + r.degree,
                    size: 1 + l.size + r.size,
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.measures().degree
    }

    pub fn map_names(&self, f: &impl Fn(Name) -> Name) -> Formula {
        match self {
            Formula::Atom(x, a) => Formula::Atom(f(*x), *a),
            Formula::Or(l, r) => Formula::or(l.map_names(f), r.map_names(f)),
            Formula::And(l, r) => Formula::and(l.map_names(f), r.map_names(f)),
        }
    }

    pub fn rename(&self, phi: &Renaming) -> Result<Formula, SyntaxError> {
        phi.covers(&self.names())?;
        Ok(self.map_names(&|x| phi.apply(x)))
    }
}

/// A finite collection of named formulas kept in canonical order: by minimum
/// name, ties broken structurally. Sharing-freedom is a checkable property,
/// not a construction invariant, so that checkers can report violations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Sequent {
    formulas: Vec<Formula>,
}

impl Sequent {
    pub fn new(mut formulas: Vec<Formula>) -> Sequent {
        formulas.sort_by(|a, b| a.min_name().cmp(&b.min_name()).then_with(|| a.cmp(b)));
        Sequent { formulas }
    }

    pub fn empty() -> Sequent {
        Sequent::default()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.contains(f)
    }

    pub fn with(&self, f: Formula) -> Sequent {
        let mut formulas = self.formulas.clone();
        formulas.push(f);
        Sequent::new(formulas)
    }

    pub fn with_all(&self, fs: impl IntoIterator<Item = Formula>) -> Sequent {
        let mut formulas = self.formulas.clone();
        formulas.extend(fs);
        Sequent::new(formulas)
    }

    /// The sequent with one occurrence of `f` removed, if present.
    pub fn without(&self, f: &Formula) -> Option<Sequent> {
        let i = self.formulas.iter().position(|g| g == f)?;
        let mut formulas = self.formulas.clone();
        formulas.remove(i);
        Some(Sequent { formulas })
    }

    /// The sequent with `old` replaced by `new`, if `old` is present.
    pub fn replace(&self, old: &Formula, new: impl IntoIterator<Item = Formula>) -> Option<Sequent> {
        Some(self.without(old)?.with_all(new))
    }

    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for f in &self.formulas {
            f.for_each_atom(&mut |x, _| {
                out.insert(x);
            });
        }
        out
    }

    pub fn max_name(&self) -> Option<Name> {
        self.formulas.iter().map(Formula::max_name).max()
    }

    pub fn is_sharing_free(&self) -> bool {
        is_sharing_free(&self.formulas)
    }

    pub fn is_atomic(&self) -> bool {
        self.formulas.iter().all(Formula::is_atomic)
    }

    pub fn atom_at(&self, x: Name) -> Result<Atom, SyntaxError> {
        self.formulas
            .iter()
            .find_map(|f| f.atom_at(x))
            .ok_or(SyntaxError::NameNotFound(x))
    }

    /// Branch names of the sequent: all unions picking one branch per member.
    pub fn branches(&self) -> Result<BTreeSet<Branch>, SyntaxError> {
        if !self.is_sharing_free() {
            return Err(SyntaxError::NotSharingFree);
        }
        let mut out = BTreeSet::from([Branch::new()]);
        for f in &self.formulas {
            let fb = f.branches();
            let mut next = BTreeSet::new();
            for x in &out {
                for y in &fb {
                    next.insert(x.union(y).copied().collect());
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn measures(&self) -> Measures {
        let mut m = Measures::default();
        for f in &self.formulas {
            let fm = f.measures();
            m.height += fm.height;
            m.atom_count += fm.atom_count;
            m.degree += fm.degree;
            m.size += fm.size;
        }
        m
    }

    pub fn degree(&self) -> usize {
        self.measures().degree
    }

    pub fn map_names(&self, f: &impl Fn(Name) -> Name) -> Sequent {
        Sequent::new(self.formulas.iter().map(|g| g.map_names(f)).collect())
    }

    pub fn rename(&self, phi: &Renaming) -> Result<Sequent, SyntaxError> {
        phi.covers(&self.names())?;
        Ok(self.map_names(&|x| phi.apply(x)))
    }

    /// Compound member with the smallest minimum name.
    pub fn first_compound(&self) -> Option<&Formula> {
        self.formulas.iter().find(|f| !f.is_atomic())
    }
}

/// True iff every member is sharing-free and members are pairwise name-disjoint.
pub fn is_sharing_free(formulas: &[Formula]) -> bool {
    let mut seen = BTreeSet::new();
    let mut ok = true;
    for f in formulas {
        f.for_each_atom(&mut |x, _| {
            if !seen.insert(x) {
                ok = false;
            }
        });
    }
    ok
}

/// A finite injective map on names.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Renaming {
    map: BTreeMap<Name, Name>,
}

impl Renaming {
    pub fn new(map: BTreeMap<Name, Name>) -> Result<Renaming, SyntaxError> {
        let mut inverse: BTreeMap<Name, Name> = BTreeMap::new();
        for (&x, &y) in &map {
            if let Some(&prev) = inverse.get(&y) {
                return Err(SyntaxError::NotInjective(prev, x, y));
            }
            inverse.insert(y, x);
        }
        Ok(Renaming { map })
    }

    pub fn identity(names: &BTreeSet<Name>) -> Renaming {
        Renaming { map: names.iter().map(|&x| (x, x)).collect() }
    }

    pub fn get(&self, x: Name) -> Option<Name> {
        self.map.get(&x).copied()
    }

    fn apply(&self, x: Name) -> Name {
        self.map[&x]
    }

    pub fn covers(&self, names: &BTreeSet<Name>) -> Result<(), SyntaxError> {
        match names.iter().find(|x| !self.map.contains_key(x)) {
            Some(&x) => Err(SyntaxError::DomainTooSmall(x)),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Renaming {
        Renaming { map: self.map.iter().map(|(&x, &y)| (y, x)).collect() }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Name, Name)> + '_ {
        self.map.iter().map(|(&x, &y)| (x, y))
    }
}
