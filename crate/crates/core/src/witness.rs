//! Explicit witness construction for non-empty bl-compositions.
//!
//! Given two bl-graphs sharing a unique branch label up to an interface `I`,
//! a state is a set of pairs of a partial polarity assignment on `I` and an
//! alternating path. Starting from one pair per total assignment and suitably
//! coloured edge, each reduction step eliminates one live name by joining
//! paths whose assignments differ only on that name. A terminal state
//! contains a complete alternating path.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::blgraph::{relativize, BlGraph};
use crate::name::Name;
use crate::namegraph::{edge, AltPath, Edge};
use crate::syntax::Branch;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Pol {
    White,
    Black,
}

impl Pol {
    pub fn co(self) -> Pol {
        match self {
            Pol::White => Pol::Black,
            Pol::Black => Pol::White,
        }
    }

    fn index(self) -> usize {
        match self {
            Pol::White => 0,
            Pol::Black => 1,
        }
    }
}

pub type Assignment = BTreeSet<(Name, Pol)>;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct State {
    pub pairs: BTreeSet<(Assignment, Vec<Name>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("the graphs do not share a unique branch label up to the interface: {0}")]
    PreconditionViolated(String),
    #[error("reduction got stuck: {0}")]
    InternalStuck(String),
}

/// The fixed data of the construction: the two graphs' edge sets and the interface.
pub struct Background {
    edges: [BTreeSet<Edge>; 2],
    interface: BTreeSet<Name>,
    label: Branch,
    relation: [BTreeSet<(Edge, Branch)>; 2],
}

impl Background {
    pub fn new(white: &BlGraph, black: &BlGraph, interface: &BTreeSet<Name>) -> Result<Background, WitnessError> {
        let rw = relativize(white, interface);
        let rb = relativize(black, interface);
        let labels: BTreeSet<&Branch> = rw.iter().chain(&rb).map(|(_, l)| l).collect();
        if labels.len() != 1 {
            return Err(WitnessError::PreconditionViolated(format!("{} distinct labels", labels.len())));
        }
        let label = (*labels.iter().next().expect("one label")).clone();
        Ok(Background {
            edges: [white.edges(), black.edges()],
            interface: interface.clone(),
            label,
            relation: [white.relation().clone(), black.relation().clone()],
        })
    }

    pub fn label(&self) -> &Branch {
        &self.label
    }

    fn has_edge(&self, p: Pol, x: Name, y: Name) -> bool {
        self.edges[p.index()].contains(&edge(x, y))
    }

    /// Odd edges in `G_p`, even edges in `G_co(p)` (counting from one).
    pub fn is_initial(&self, path: &[Name], p: Pol) -> bool {
        path.windows(2).enumerate().all(|(i, w)| {
            let side = if i % 2 == 0 { p } else { p.co() };
            self.has_edge(side, w[0], w[1])
        })
    }

    pub fn is_final(&self, path: &[Name], p: Pol) -> bool {
        let even = path.len().is_multiple_of(2);
        (even && self.is_initial(path, p)) || (!even && self.is_initial(path, p.co()))
    }

    pub fn is_alternating(&self, path: &[Name]) -> bool {
        let distinct: BTreeSet<_> = path.iter().collect();
        path.len() > 1
            && distinct.len() == path.len()
            && path[1..path.len() - 1].iter().all(|x| self.interface.contains(x))
            && (self.is_initial(path, Pol::White) || self.is_initial(path, Pol::Black))
    }

    pub fn is_consistent_pair(&self, s: &Assignment, path: &[Name]) -> bool {
        let names: BTreeSet<Name> = s.iter().map(|(x, _)| *x).collect();
        if names.len() != s.len() || !self.is_alternating(path) {
            return false;
        }
        let (first, last) = (path[0], path[path.len() - 1]);
        let pol_of = |x: Name| s.iter().find(|(y, _)| *y == x).map(|(_, p)| *p);
        for (end, check) in [(first, true), (last, false)] {
            match pol_of(end) {
                None if self.interface.contains(&end) => return false,
                None => {}
                Some(p) => {
                    let ok = if check { self.is_initial(path, p) } else { self.is_final(path, p) };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_consistent(&self, state: &State) -> bool {
        state.pairs.iter().all(|(s, z)| self.is_consistent_pair(s, z))
    }

    pub fn is_live(&self, state: &State) -> bool {
        let assignments: BTreeSet<&Assignment> = state.pairs.iter().map(|(s, _)| s).collect();
        !state.pairs.is_empty()
            && state.pairs.iter().all(|(s, _)| s.iter().all(|&(x, p)| assignments.contains(&flip(s, x, p))))
    }

    /// One pair per total assignment `f` on the interface and edge `xy` of
    /// `G_p` labeled `X ∪ Y` with `f` constantly `p` on `Y`.
    pub fn initial_state(&self) -> State {
        let interface: Vec<Name> = self.interface.iter().copied().collect();
        let mut pairs = BTreeSet::new();
        for bits in 0u64..(1u64 << interface.len()) {
            let f: BTreeMap<Name, Pol> = interface
                .iter()
                .enumerate()
                .map(|(i, &x)| (x, if bits >> i & 1 == 0 { Pol::White } else { Pol::Black }))
                .collect();
            let assignment: Assignment = f.iter().map(|(&x, &p)| (x, p)).collect();
            for p in [Pol::White, Pol::Black] {
                for ((x, y), label) in &self.relation[p.index()] {
                    let coloured = label.iter().filter(|n| self.interface.contains(n)).all(|n| f[n] == p);
                    if coloured {
                        pairs.insert((assignment.clone(), vec![*x, *y]));
                    }
                }
            }
        }
        State { pairs }
    }

    /// Eliminates the smallest live name.
    pub fn reduce(&self, state: &State) -> Result<State, WitnessError> {
        let Some(x) = live_names(state).into_iter().next() else {
            return Ok(state.clone());
        };
        let mut by_assignment: BTreeMap<&Assignment, &Vec<Name>> = BTreeMap::new();
        for (s, z) in &state.pairs {
            by_assignment.entry(s).or_insert(z);
        }
        let mut pairs = BTreeSet::new();
        for (s, z) in &state.pairs {
            let Some(&(_, p)) = s.iter().find(|(y, _)| *y == x) else {
                pairs.insert((s.clone(), z.clone()));
                continue;
            };
            let t = flip(s, x, p);
            let w = by_assignment
                .get(&t)
                .ok_or_else(|| WitnessError::InternalStuck(format!("no partner for {x}")))?;
            let mut reduced = s.clone();
            reduced.remove(&(x, p));
            let path = join(z, w, x);
            pairs.insert((reduced, path));
        }
        Ok(State { pairs })
    }

    /// Runs the construction to a terminal state, checking consistency,
    /// liveness and strict shrinking of live names at every step.
    pub fn run(&self) -> Result<(AltPath, usize), WitnessError> {
        let mut state = self.initial_state();
        let mut steps = 0;
        loop {
            if !self.is_consistent(&state) {
                return Err(WitnessError::InternalStuck(format!("inconsistent state after {steps} steps")));
            }
            if !self.is_live(&state) {
                return Err(WitnessError::InternalStuck(format!("state not live after {steps} steps")));
            }
            let live = live_names(&state);
            if live.is_empty() {
                break;
            }
            let next = self.reduce(&state)?;
            let next_live = live_names(&next);
            if !(next_live.is_subset(&live) && next_live.len() < live.len()) {
                return Err(WitnessError::InternalStuck("live names did not shrink".into()));
            }
            state = next;
            steps += 1;
        }
        let (_, path) = state
            .pairs
            .iter()
            .find(|(_, z)| !self.interface.contains(&z[0]) && !self.interface.contains(&z[z.len() - 1]))
            .ok_or_else(|| WitnessError::InternalStuck("terminal state without complete path".into()))?;
        let first_in_g = self.is_initial(path, Pol::White);
        Ok((AltPath { vertices: path.clone(), first_in_g }, steps))
    }
}

fn flip(s: &Assignment, x: Name, p: Pol) -> Assignment {
    let mut t = s.clone();
    t.remove(&(x, p));
    t.insert((x, p.co()));
    t
}

pub fn live_names(state: &State) -> BTreeSet<Name> {
    state.pairs.iter().flat_map(|(s, _)| s.iter().map(|(x, _)| *x)).collect()
}

fn join(z: &[Name], w: &[Name], x: Name) -> Vec<Name> {
    let (z1, zn) = (z[0], z[z.len() - 1]);
    let (w1, wn) = (w[0], w[w.len() - 1]);
    if z1 != x && zn != x {
        return z.to_vec();
    }
    if w1 != x && wn != x {
        return w.to_vec();
    }
    let rev = |v: &[Name]| v.iter().rev().copied().collect::<Vec<_>>();
    let (head, tail) = if zn == x && w1 == x {
        (z.to_vec(), w.to_vec())
    } else if zn == x && wn == x {
        (z.to_vec(), rev(w))
    } else if z1 == x && w1 == x {
        (rev(z), w.to_vec())
    } else {
        (rev(z), rev(w))
    };
    let mut out = head;
    out.extend_from_slice(&tail[1..]);
    out
}

/// A complete labeled alternating path between `g` and `h` through `interface`,
/// found by the state-reduction construction. Exponential in `|interface|`.
pub fn witness_path(g: &BlGraph, h: &BlGraph, interface: &BTreeSet<Name>) -> Result<AltPath, WitnessError> {
    Background::new(g, h, interface)?.run().map(|(path, _)| path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Name {
        Name::parse(s).unwrap()
    }

    fn names(s: &str) -> BTreeSet<Name> {
        s.split_whitespace().map(n).collect()
    }

    #[test]
    fn empty_interface_returns_an_edge() {
        let g = BlGraph::new(names("x y"), [((n("x"), n("y")), names("x y"))]).unwrap();
        let h = BlGraph::empty_on(BTreeSet::new());
        let path = witness_path(&g, &h, &BTreeSet::new()).unwrap();
        assert_eq!(path.vertices, vec![n("x"), n("y")]);
    }

    #[test]
    fn path_through_one_interface_name() {
        let g = BlGraph::new(names("x u"), [((n("x"), n("u")), names("x y u"))]).unwrap();
        let h = BlGraph::new(names("y u"), [((n("y"), n("u")), names("x y u"))]).unwrap();
        let path = witness_path(&g, &h, &names("u")).unwrap();
        assert_eq!(path.vertices.len(), 3);
        assert_eq!(path.vertices[1], n("u"));
    }

    #[test]
    fn several_labels_violate_the_precondition() {
        let g = BlGraph::new(names("x u"), [((n("x"), n("u")), names("x u"))]).unwrap();
        let h = BlGraph::new(names("y u"), [((n("y"), n("u")), names("y u"))]).unwrap();
        assert!(matches!(witness_path(&g, &h, &names("u")), Err(WitnessError::PreconditionViolated(_))));
    }

    #[test]
    fn join_cases() {
        let (a, b, x, c, d) = (n("a"), n("b"), n("x"), n("c"), n("d"));
        assert_eq!(join(&[a, x], &[x, c], x), vec![a, x, c]);
        assert_eq!(join(&[a, x], &[c, x], x), vec![a, x, c]);
        assert_eq!(join(&[x, a], &[x, c], x), vec![a, x, c]);
        assert_eq!(join(&[x, a], &[c, x], x), vec![a, x, c]);
        assert_eq!(join(&[a, b], &[x, c], x), vec![a, b]);
        assert_eq!(join(&[x, b, d], &[a, c], x), vec![a, c]);
    }
}
