//! Seeded random generation of valid derivations, built top-down from a
//! provable conclusion.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::derivation::Derivation;
use crate::name::{Name, Symbol};
use crate::syntax::{Atom, Formula, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Hard bound on the height of the generated tree.
    pub max_depth: usize,
    /// Bound on the degree of every generated formula.
    pub max_formula_degree: usize,
    pub allow_cut: bool,
    pub allow_sup: bool,
    /// Only place cuts where the context is entirely atomic.
    pub atomic_context_cuts_only: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_depth: 6,
            max_formula_degree: 4,
            allow_cut: true,
            allow_sup: true,
            atomic_context_cuts_only: false,
        }
    }
}

const SYMBOLS: u64 = 3;

/// Whether every atomic branch of `formulas` contains two dual atoms.
pub fn provable(formulas: &[Formula]) -> bool {
    fn go(pending: &mut Vec<&Formula>, atoms: &mut Vec<Atom>) -> bool {
        let Some(f) = pending.pop() else { return false };
        let result = match f {
            Formula::Atom(_, a) => {
                if atoms.contains(&a.dual()) {
                    true
                } else {
                    atoms.push(*a);
                    let r = go(pending, atoms);
                    atoms.pop();
                    r
                }
            }
            Formula::Or(l, r) => {
                pending.push(r);
                pending.push(l);
                let res = go(pending, atoms);
                pending.pop();
                pending.pop();
                res
            }
            Formula::And(l, r) => {
                pending.push(l);
                let left = go(pending, atoms);
                pending.pop();
                left && {
                    pending.push(r);
                    let right = go(pending, atoms);
                    pending.pop();
                    right
                }
            }
        };
        pending.push(f);
        result
    }
    let mut pending: Vec<&Formula> = formulas.iter().collect();
    go(&mut pending, &mut Vec::new())
}

/// Indices of every valid axiom pair among the members of `s`.
pub fn axiom_pairs(s: &Sequent) -> Vec<(usize, usize)> {
    let fs = s.formulas();
    let mut out = Vec::new();
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if fs[i].is_dual_pair(&fs[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Premisses obtained by decomposing the member `f` of `s`.
fn decompose(s: &Sequent, f: &Formula) -> Vec<Sequent> {
    match f {
        Formula::Atom(..) => vec![],
        Formula::Or(a, b) => vec![s.replace(f, [(**a).clone(), (**b).clone()]).expect("member")],
        Formula::And(a, b) => vec![
            s.replace(f, [(**a).clone()]).expect("member"),
            s.replace(f, [(**b).clone()]).expect("member"),
        ],
    }
}

/// Height within which `close` finishes a provable sequent: zero when an
/// axiom applies, otherwise the best one-step lookahead where every premiss
/// is bounded by its degree.
pub fn closure_bound(s: &Sequent) -> Option<usize> {
    if !axiom_pairs(s).is_empty() {
        return Some(0);
    }
    if !provable(s.formulas()) {
        return None;
    }
    closure_choice(s).map(|(_, b)| b)
}

fn closure_choice(s: &Sequent) -> Option<(Formula, usize)> {
    let mut best: Option<(Formula, usize)> = None;
    for f in s.formulas().iter().filter(|f| !f.is_atomic()) {
        let bound = 1 + decompose(s, f)
            .iter()
            .map(|p| if axiom_pairs(p).is_empty() { p.degree() } else { 0 })
            .max()
            .unwrap_or(0);
        if best.as_ref().is_none_or(|(_, b)| bound < *b) {
            best = Some((f.clone(), bound));
        }
    }
    best
}

/// Deterministic cut-free derivation of a provable sequent, of height at most
/// `closure_bound(s)`.
pub fn close(s: &Sequent) -> Derivation {
    if let Some(&(i, j)) = axiom_pairs(s).first() {
        let fs = s.formulas();
        return Derivation::ax(fs[i].clone(), fs[j].clone(), s.clone());
    }
    let (f, _) = closure_choice(s).expect("provable sequents that lack an axiom are compound");
    let premisses: Vec<Derivation> = decompose(s, &f).iter().map(close).collect();
    build(&f, premisses)
}

fn build(f: &Formula, mut premisses: Vec<Derivation>) -> Derivation {
    match f {
        Formula::Or(..) => Derivation::or(f.clone(), premisses.pop().expect("one premiss")),
        Formula::And(..) => {
            let right = premisses.pop().expect("two premisses");
            let left = premisses.pop().expect("two premisses");
            Derivation::and(f.clone(), left, right)
        }
        Formula::Atom(..) => unreachable!("atoms are not introduced"),
    }
}

struct Generator {
    rng: ChaCha8Rng,
    params: GenParams,
    fresh: u64,
}

impl Generator {
    fn new(seed: u64, params: GenParams) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), params, fresh: 0 }
    }

    fn fresh_name(&mut self) -> Name {
        self.fresh += 1;
        Name(self.fresh - 1)
    }

    fn random_atom(&mut self) -> Atom {
        Atom { base: Symbol(self.rng.gen_range(0..SYMBOLS)), negated: self.rng.gen_bool(0.5) }
    }

    fn random_formula(&mut self, degree: usize) -> Formula {
        if degree == 0 {
            let name = self.fresh_name();
            return Formula::Atom(name, self.random_atom());
        }
        let left_degree = self.rng.gen_range(0..degree);
        let left = self.random_formula(left_degree);
        let right = self.random_formula(degree - 1 - left_degree);
        if self.rng.gen_bool(0.5) {
            Formula::or(left, right)
        } else {
            Formula::and(left, right)
        }
    }

    fn renamed_copy(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(_, a) => Formula::Atom(self.fresh_name(), *a),
            Formula::Or(l, r) => {
                let l = self.renamed_copy(l);
                Formula::or(l, self.renamed_copy(r))
            }
            Formula::And(l, r) => {
                let l = self.renamed_copy(l);
                Formula::and(l, self.renamed_copy(r))
            }
        }
    }

    /// Copy of `f` renamed onto the smallest names absent from `avoid`.
    fn low_copy(&mut self, f: &Formula, avoid: &BTreeSet<Name>) -> Formula {
        let mut next = 0u64;
        let mut take = || {
            while avoid.contains(&Name(next)) {
                next += 1;
            }
            next += 1;
            Name(next - 1)
        };
        let names = f.name_list();
        let map: Vec<(Name, Name)> = names.iter().map(|&x| (x, take())).collect();
        f.map_names(&|x| map.iter().find(|(y, _)| *y == x).expect("listed").1)
    }

    fn degree_upto(&mut self, max: usize) -> usize {
        self.rng.gen_range(0..=max)
    }

    fn random_conclusion(&mut self) -> Sequent {
        let max = self.params.max_formula_degree;
        loop {
            self.fresh = 0;
            let deg = self.degree_upto(max);
            let a = self.random_formula(deg);
            let b = self.renamed_copy(&a).negate();
            let mut formulas = vec![a, b];
            for _ in 0..self.rng.gen_range(0..=2) {
                let d = self.degree_upto(max.min(2));
                formulas.push(self.random_formula(d));
            }
            for _ in 0..self.rng.gen_range(0..=3) {
                let i = self.rng.gen_range(0..formulas.len());
                let f = formulas[i].clone();
                match self.rng.gen_range(0..3) {
                    0 if 2 * f.degree() < max => {
                        let copy = self.renamed_copy(&f);
                        formulas[i] = Formula::and(f, copy);
                    }
                    1 if formulas.len() > 1 => {
                        let j = (i + 1 + self.rng.gen_range(0..formulas.len() - 1)) % formulas.len();
                        if f.degree() + formulas[j].degree() < max {
                            let g = formulas[j].clone();
                            let merged = if self.rng.gen_bool(0.5) { Formula::or(f, g) } else { Formula::or(g, f) };
                            formulas[i] = merged;
                            formulas.remove(j);
                        }
                    }
                    2 if f.degree() < max => {
                        let d = self.degree_upto(max - 1 - f.degree());
                        let g = self.random_formula(d);
                        formulas[i] = if self.rng.gen_bool(0.5) { Formula::or(f, g) } else { Formula::or(g, f) };
                    }
                    _ => {}
                }
            }
            let mut perm: Vec<u64> = (0..self.fresh).collect();
            perm.shuffle(&mut self.rng);
            let s = Sequent::new(formulas).map_names(&|x| Name(perm[x.0 as usize]));
            if closure_bound(&s).is_some_and(|b| b <= self.params.max_depth) {
                return s;
            }
        }
    }

    fn cut_formula(&mut self, s: &Sequent) -> Option<Formula> {
        let max = self.params.max_formula_degree;
        let names = s.names();
        let base = match self.rng.gen_range(0..3) {
            0 => {
                let d = self.degree_upto(max);
                self.random_formula(d)
            }
            k => {
                let f = s.formulas().choose(&mut self.rng)?.clone();
                if f.degree() > max {
                    return None;
                }
                if k == 1 {
                    f.negate()
                } else {
                    f
                }
            }
        };
        if self.rng.gen_bool(0.5) {
            Some(self.low_copy(&base, &names))
        } else {
            let start = self.fresh.max(s.max_name().map_or(0, |m| m.0 + 1));
            self.fresh = start;
            Some(self.renamed_copy(&base))
        }
    }

    fn gen(&mut self, s: &Sequent, depth: usize) -> Derivation {
        let pairs = axiom_pairs(s);
        let fits = |p: &Sequent| closure_bound(p).is_some_and(|b| b < depth);
        #[derive(Clone)]
        enum Choice {
            Ax,
            Intro(Formula),
            Sup,
            Cut(Formula),
        }
        let mut options: Vec<(Choice, u32)> = Vec::new();
        if !pairs.is_empty() {
            options.push((Choice::Ax, 2 + (self.params.max_depth.saturating_sub(depth)) as u32));
        }
        if depth > 0 {
            for f in s.formulas().iter().filter(|f| !f.is_atomic()) {
                if decompose(s, f).iter().all(fits) {
                    options.push((Choice::Intro(f.clone()), 3));
                }
            }
            if self.params.allow_sup && fits(s) {
                options.push((Choice::Sup, 1));
            }
            if self.params.allow_cut && (!self.params.atomic_context_cuts_only || s.is_atomic()) {
                for _ in 0..3 {
                    if let Some(c) = self.cut_formula(s) {
                        if fits(&s.with(c.clone())) && fits(&s.with(c.negate())) {
                            options.push((Choice::Cut(c), 3));
                            break;
                        }
                    }
                }
            }
        }
        let choice = if options.is_empty() {
            None
        } else {
            let total: u32 = options.iter().map(|(_, w)| w).sum();
            let mut roll = self.rng.gen_range(0..total);
            options.iter().find(|(_, w)| {
                if roll < *w {
                    true
                } else {
                    roll -= w;
                    false
                }
            })
            .map(|(c, _)| c.clone())
        };
        match choice {
            Some(Choice::Ax) => {
                let &(i, j) = pairs.choose(&mut self.rng).expect("non-empty");
                let fs = s.formulas();
                Derivation::ax(fs[i].clone(), fs[j].clone(), s.clone())
            }
            Some(Choice::Intro(f)) => {
                let premisses: Vec<Derivation> =
                    decompose(s, &f).iter().map(|p| self.gen(p, depth - 1)).collect();
                build(&f, premisses)
            }
            Some(Choice::Sup) => {
                let l = self.gen(s, depth - 1);
                let r = self.gen(s, depth - 1);
                Derivation::sup(l, r)
            }
            Some(Choice::Cut(c)) => {
                let l = self.gen(&s.with(c.clone()), depth - 1);
                let r = self.gen(&s.with(c.negate()), depth - 1);
                Derivation::cut(c, l, r)
            }
            None => close(s),
        }
    }
}

/// A valid derivation determined by `seed`, of height at most `max_depth`.
pub fn random_derivation(seed: u64, params: &GenParams) -> Derivation {
    let mut g = Generator::new(seed, *params);
    let conclusion = g.random_conclusion();
    g.fresh = conclusion.max_name().map_or(0, |m| m.0 + 1);
    g.gen(&conclusion, params.max_depth)
}

/// A random derivation of the given conclusion, if it is provable. The height
/// bound is raised to the closure bound when that is larger.
pub fn random_derivation_for(conclusion: &Sequent, seed: u64, params: &GenParams) -> Option<Derivation> {
    let bound = closure_bound(conclusion)?;
    let mut g = Generator::new(seed, *params);
    g.fresh = conclusion.max_name().map_or(0, |m| m.0 + 1);
    Some(g.gen(conclusion, params.max_depth.max(bound)))
}

/// A cut formula `A` over an atomic context `G` and cut-free derivations of
/// `|- G, A` and `|- G, ~A`.
pub fn random_atomic_cut_pair(seed: u64, params: &GenParams) -> (Derivation, Derivation, Formula) {
    let mut g = Generator::new(seed, *params);
    let deg = g.degree_upto(params.max_formula_degree);
    let a = g.random_formula(deg);
    let mut context: Vec<Formula> = Vec::new();
    let bases: Vec<Atom> = {
        let mut v = Vec::new();
        a.for_each_atom(&mut |_, at| v.push(at));
        v
    };
    loop {
        let with_a: Vec<Formula> = context.iter().cloned().chain([a.clone()]).collect();
        let with_na: Vec<Formula> = context.iter().cloned().chain([a.negate()]).collect();
        if !context.is_empty() && provable(&with_a) && provable(&with_na) {
            break;
        }
        let atom = if g.rng.gen_bool(0.8) {
            let at = *bases.choose(&mut g.rng).expect("atoms");
            if g.rng.gen_bool(0.5) {
                at
            } else {
                at.dual()
            }
        } else {
            g.random_atom()
        };
        let name = g.fresh_name();
        context.push(Formula::Atom(name, atom));
    }
    let mut perm: Vec<u64> = (0..g.fresh).collect();
    perm.shuffle(&mut g.rng);
    let rename = |x: Name| Name(perm[x.0 as usize]);
    let a = a.map_names(&rename);
    let context = Sequent::new(context).map_names(&rename);
    let cut_free = GenParams { allow_cut: false, ..*params };
    let p = random_derivation_for(&context.with(a.clone()), g.rng.gen(), &cut_free).expect("provable");
    let q = random_derivation_for(&context.with(a.negate()), g.rng.gen(), &cut_free).expect("provable");
    (p, q, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_sequent;

    #[test]
    fn provability() {
        assert!(provable(parse_sequent("|- (x:a | y:~a)").unwrap().formulas()));
        assert!(!provable(parse_sequent("|- (x:a & y:~a)").unwrap().formulas()));
        assert!(provable(parse_sequent("|- (x:a & y:b), z:~a, w:~b").unwrap().formulas()));
    }

    #[test]
    fn close_respects_bound() {
        let s = parse_sequent("|- ((x:a & y:b) | v:c), z:~a, w:~b").unwrap();
        let b = closure_bound(&s).unwrap();
        let d = close(&s);
        assert_eq!(d.validate().unwrap(), s);
        assert!(d.height() <= b);
    }

    #[test]
    fn deterministic_and_valid() {
        let params = GenParams::default();
        for seed in 0..50 {
            let d = random_derivation(seed, &params);
            d.validate().unwrap();
            assert!(d.height() <= params.max_depth);
            assert_eq!(d, random_derivation(seed, &params));
        }
    }

    #[test]
    fn cut_free_when_cuts_disabled() {
        let params = GenParams { allow_cut: false, ..GenParams::default() };
        assert!(random_derivation(1, &params).is_cut_free());
    }

    #[test]
    fn atomic_context_cuts() {
        let params = GenParams { atomic_context_cuts_only: true, ..GenParams::default() };
        fn check(d: &Derivation) {
            if let Derivation::Cut { .. } = d {
                assert!(d.conclusion().is_atomic());
            }
            d.premisses().into_iter().for_each(check);
        }
        for seed in [7, 8, 9] {
            let d = random_derivation(seed, &params);
            d.validate().unwrap();
            check(&d);
        }
    }

    #[test]
    fn atomic_cut_pairs() {
        for seed in 0..20 {
            let (p, q, a) = random_atomic_cut_pair(seed, &GenParams::default());
            let cp = p.validate().unwrap();
            let cq = q.validate().unwrap();
            assert!(p.is_cut_free() && q.is_cut_free());
            assert_eq!(cp.without(&a).unwrap(), cq.without(&a.negate()).unwrap());
            assert!(cp.without(&a).unwrap().is_atomic());
        }
    }
}
