//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gs4::blg::{
    blg_from_derivation, blg_size, check_totality_counted, is_total, mutate, sequentialize, BlgProof, Mutation,
};
use gs4::blgraph::{bl_alternating_paths, bl_axiom_graph, bl_compose};
use gs4::derivation::Derivation;
use gs4::figures;
use gs4::generate::{random_atomic_cut_pair, random_derivation, GenParams};
use gs4::namegraph::{axiom_graph, Edge};
use gs4::normalize::normalize;
use gs4::reduction::{experiment_csv, reduce_cut_logical, run_experiment, ExperimentRow};
use gs4::transform::{isolate, Side};
use gs4::witness::witness_path;
use gs4::{Branch, Formula, Name, Sequent};

const CORPUS: u64 = 1000;
/// Constant in the step bound `steps <= C * size^3` of the polynomial totality check.
const STEP_CONSTANT: f64 = 1.0;

type Outcome = Result<String, String>;

fn n(s: &str) -> Name {
    Name::parse(s).unwrap()
}

fn edges(list: &str) -> BTreeSet<Edge> {
    list.split_whitespace()
        .map(|e| {
            let (x, y) = e.split_at(1);
            let (x, y) = (n(x), n(y));
            (x.min(y), x.max(y))
        })
        .collect()
}

fn names(list: &str) -> BTreeSet<Name> {
    list.split_whitespace().map(n).collect()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn timed(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{detail}; took {took:.2?} > {limit:?}"))
    } else {
        Ok(format!("{detail}; {took:.2?}"))
    }
}

fn fig2() -> Outcome {
    let start = Instant::now();
    let p = figures::conjunction_cut();
    let before = axiom_graph(&p).edges;
    ensure(before == edges("xy yz zw xw"), || format!("before isolation: {before:?}"))?;
    let q = isolate(&p, &figures::conjunction_cut_target()).map_err(|e| e.to_string())?;
    let after = axiom_graph(&q).edges;
    ensure(after == edges("xy zw"), || format!("after isolation: {after:?}"))?;
    timed(Duration::from_secs(1), start, "edges xy yz zw xw, then xy zw".into())
}

fn fig3() -> Outcome {
    let start = Instant::now();
    let p = figures::crossed_branches();
    let before = axiom_graph(&p).edges;
    ensure(before == edges("xt zu yt"), || format!("before isolation: {before:?}"))?;
    let q = isolate(&p, &figures::crossed_branches_target()).map_err(|e| e.to_string())?;
    let after = axiom_graph(&q).edges;
    ensure(after == edges("xt zu"), || format!("after isolation: {after:?}"))?;
    timed(Duration::from_secs(1), start, "edges xt zu yt, then xt zu".into())
}

fn fig4() -> Outcome {
    let start = Instant::now();
    let p = figures::logical_redex();
    let label = names("x y v w");
    let before: BTreeSet<(Edge, Branch)> = bl_axiom_graph(&p).relation().clone();
    let expected: BTreeSet<(Edge, Branch)> =
        edges("xy vw").into_iter().map(|e| (e, label.clone())).collect();
    ensure(before == expected, || format!("before reduction: {before:?}"))?;
    let q = reduce_cut_logical(&p, Side::Left).map_err(|e| e.to_string())?;
    q.validate().map_err(|e| e.to_string())?;
    let after = bl_axiom_graph(&q).relation().clone();
    let expected: BTreeSet<(Edge, Branch)> = [(edges("xy").pop_first().unwrap(), label)].into();
    ensure(after == expected, || format!("after reduction: {after:?}"))?;
    ensure(axiom_graph(&q) == axiom_graph(&p), || "simple graph changed".into())?;
    timed(Duration::from_secs(1), start, "bl edges xy vw, then xy; simple graph unchanged".into())
}

fn corpus() -> Vec<Derivation> {
    let params = GenParams::default();
    (0..CORPUS).map(|seed| random_derivation(seed, &params)).collect()
}

fn compound(p: &Derivation) -> Vec<Formula> {
    p.conclusion().formulas().iter().filter(|f| !f.is_atomic()).cloned().collect()
}

fn isolation_invariance(corpus: &[Derivation], start: Instant) -> Outcome {
    let mut checks = 0;
    for (seed, p) in corpus.iter().enumerate() {
        let graph = bl_axiom_graph(p);
        for a in compound(p) {
            let q = isolate(p, &a).map_err(|e| format!("seed {seed}: {e}"))?;
            let c = q.validate().map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(c == p.conclusion(), || format!("seed {seed}: conclusion changed"))?;
            ensure(bl_axiom_graph(&q) == graph, || format!("seed {seed}: bl-graph changed isolating {a}"))?;
            checks += 1;
        }
    }
    let cuts = corpus.iter().filter(|p| !p.is_cut_free()).count();
    let sups = corpus.iter().filter(|p| p.sup_count() > 0).count();
    timed(
        Duration::from_secs(120),
        start,
        format!("{checks} isolations over {} derivations ({cuts} with cuts, {sups} with superpositions)", corpus.len()),
    )
}

fn simple_graphs(corpus: &[Derivation]) -> Outcome {
    let (mut strict, mut equal) = (0, 0);
    for (seed, p) in corpus.iter().enumerate() {
        let g = axiom_graph(p);
        for a in compound(p) {
            let h = axiom_graph(&isolate(p, &a).map_err(|e| e.to_string())?);
            ensure(h.is_subgraph_of(&g), || format!("seed {seed}: graph grew isolating {a}"))?;
            if p.is_cut_free() {
                ensure(h == g, || format!("seed {seed}: cut-free graph changed isolating {a}"))?;
                equal += 1;
            } else if h != g {
                strict += 1;
            }
        }
    }
    Ok(format!("inclusion always, equality on {equal} cut-free isolations; {strict} strict losses with cuts"))
}

fn normalization(corpus: &[Derivation], start: Instant) -> Outcome {
    let with_cuts: Vec<&Derivation> = corpus.iter().filter(|p| !p.is_cut_free()).take(300).collect();
    ensure(with_cuts.len() == 300, || format!("only {} derivations with cuts", with_cuts.len()))?;
    for (i, p) in with_cuts.iter().enumerate() {
        let q = normalize(p).map_err(|e| format!("derivation {i}: {e}"))?;
        ensure(q.is_cut_free(), || format!("derivation {i}: output has cuts"))?;
        let c = q.validate().map_err(|e| format!("derivation {i}: {e}"))?;
        ensure(c == p.conclusion(), || format!("derivation {i}: conclusion changed"))?;
        ensure(bl_axiom_graph(&q) == bl_axiom_graph(p), || format!("derivation {i}: bl-graph changed"))?;
    }
    timed(Duration::from_secs(300), start, "300 derivations with cuts normalized".into())
}

fn witnesses() -> Outcome {
    let params = GenParams::default();
    let mut largest = 0;
    for seed in 0..200 {
        let (p, q, a) = random_atomic_cut_pair(seed, &params);
        ensure(p.is_cut_free() && q.is_cut_free(), || format!("seed {seed}: premisses have cuts"))?;
        let interface = a.names();
        ensure(interface.len() <= 6, || format!("seed {seed}: interface of {} names", interface.len()))?;
        largest = largest.max(interface.len());
        let (g, h) = (bl_axiom_graph(&p), bl_axiom_graph(&q));
        let composite = bl_compose(&g, &h, &interface);
        ensure(!composite.relation().is_empty(), || format!("seed {seed}: empty composite"))?;
        let path = witness_path(&g, &h, &interface).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(path.is_complete(&interface), || format!("seed {seed}: incomplete witness"))?;
        let enumerated = bl_alternating_paths(&g, &h, &interface);
        ensure(
            enumerated.iter().any(|l| l.complete && l.path == path),
            || format!("seed {seed}: witness {:?} not among enumerated paths", path.vertices),
        )?;
        let (x, y) = (path.vertices[0], *path.vertices.last().unwrap());
        ensure(composite.edges().contains(&(x.min(y), x.max(y))), || format!("seed {seed}: endpoints not composite"))?;
    }
    Ok(format!("200 pairs, interfaces up to {largest} names"))
}

fn small_proofs(corpus: &[Derivation]) -> Vec<BlgProof> {
    corpus
        .iter()
        .filter(|p| p.conclusion().names().len() <= 12)
        .map(blg_from_derivation)
        .take(500)
        .collect()
}

fn totality(corpus: &[Derivation]) -> Outcome {
    let total = small_proofs(corpus);
    ensure(total.len() == 500, || format!("only {} instances with at most 12 names", total.len()))?;
    let mut worst: f64 = 0.0;
    let mut check = |p: &BlgProof| -> Result<bool, String> {
        let (poly, steps) = check_totality_counted(&p.graph, &p.sequent);
        let naive = is_total(&p.graph, &p.sequent);
        ensure(poly.is_ok() == naive, || format!("disagreement on {}: {poly:?}", p.sequent))?;
        let bound = (blg_size(p) as f64).powi(3);
        worst = worst.max(steps as f64 / bound);
        ensure(steps as f64 <= STEP_CONSTANT * bound, || format!("{steps} steps on size {}", blg_size(p)))?;
        Ok(naive)
    };
    for p in &total {
        ensure(check(p)?, || format!("derived object over {} not total", p.sequent))?;
    }
    let mut mutated = 0;
    let mut pick = 0;
    'outer: for round in 0.. {
        for (i, p) in total.iter().enumerate() {
            let m = Mutation::ALL[(i + round) % Mutation::ALL.len()];
            pick += 1;
            if let Some(q) = mutate(p, m, pick) {
                ensure(!check(&q)?, || format!("{m:?} left {} total", q.sequent))?;
                mutated += 1;
                if mutated == 500 {
                    break 'outer;
                }
            }
        }
    }
    Ok(format!("500 total + {mutated} mutated agree; max steps/size^3 = {worst:.4} <= {STEP_CONSTANT}"))
}

fn sequentialization(corpus: &[Derivation]) -> Outcome {
    for (seed, p) in corpus.iter().take(300).enumerate() {
        let proof = blg_from_derivation(&normalize(p).map_err(|e| format!("seed {seed}: {e}"))?);
        let q = sequentialize(&proof).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(q.is_cut_free(), || format!("seed {seed}: sequentialization has cuts"))?;
        ensure(q.validate().ok() == Some(p.conclusion()), || format!("seed {seed}: wrong conclusion"))?;
        ensure(bl_axiom_graph(&q) == bl_axiom_graph(p), || format!("seed {seed}: graph changed"))?;
    }
    Ok("300 roundtrips".into())
}

/// Branches by brute force: subsets of the names meeting every formula in
/// one of its branches, with formula branches read off its decomposition.
fn formula_branches(f: &Formula) -> Vec<Branch> {
    fn leaves(pending: Vec<&Formula>, acc: Branch, out: &mut Vec<Branch>) {
        let mut pending = pending;
        match pending.pop() {
            None => out.push(acc),
            Some(Formula::Atom(x, _)) => {
                let mut acc = acc;
                acc.insert(*x);
                leaves(pending, acc, out);
            }
            Some(Formula::Or(a, b)) => {
                pending.push(a);
                pending.push(b);
                leaves(pending, acc, out);
            }
            Some(Formula::And(a, b)) => {
                let mut other = pending.clone();
                pending.push(a);
                other.push(b);
                leaves(pending, acc.clone(), out);
                leaves(other, acc, out);
            }
        }
    }
    let mut out = Vec::new();
    leaves(vec![f], Branch::new(), &mut out);
    out
}

fn brute_branches(formulas: &[Formula]) -> BTreeSet<Branch> {
    let all: Vec<Name> = formulas.iter().flat_map(Formula::names).collect();
    let per: Vec<(BTreeSet<Name>, Vec<Branch>)> =
        formulas.iter().map(|f| (f.names(), formula_branches(f))).collect();
    let mut out = BTreeSet::new();
    for bits in 0u32..(1 << all.len()) {
        let x: Branch = all.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &y)| y).collect();
        if per.iter().all(|(ns, bs)| bs.contains(&x.intersection(ns).copied().collect())) {
            out.insert(x);
        }
    }
    out
}

fn node_conclusions(p: &Derivation, out: &mut BTreeSet<Sequent>) {
    out.insert(p.conclusion());
    p.premisses().into_iter().for_each(|q| node_conclusions(q, out));
}

fn branch_algebra(corpus: &[Derivation]) -> Outcome {
    let mut sequents = BTreeSet::new();
    corpus.iter().for_each(|p| node_conclusions(p, &mut sequents));
    sequents.retain(|s| s.names().len() <= 10);
    for s in &sequents {
        let fs = s.formulas();
        let br = s.branches().map_err(|e| e.to_string())?;
        ensure(br == brute_branches(fs), || format!("branches of {s}"))?;
        // Unions of one branch per formula.
        let mut family: BTreeSet<Branch> = [Branch::new()].into();
        for f in fs {
            family = family
                .iter()
                .flat_map(|x| formula_branches(f).into_iter().map(move |y| x.union(&y).copied().collect()))
                .collect();
        }
        ensure(br == family, || format!("family characterisation fails on {s}"))?;
        // Name-disjoint splits: union and difference.
        for cut in 0..=fs.len() {
            let (g, d) = fs.split_at(cut);
            let (bg, bd) = (brute_branches(g), brute_branches(d));
            let union: BTreeSet<Branch> =
                bg.iter().flat_map(|x| bd.iter().map(move |y| x.union(y).copied().collect())).collect();
            ensure(br == union, || format!("union law fails splitting {s} at {cut}"))?;
            let dn: BTreeSet<Name> = d.iter().flat_map(Formula::names).collect();
            let diff: BTreeSet<Branch> = br.iter().map(|x| x.difference(&dn).copied().collect()).collect();
            ensure(bg == diff, || format!("difference law fails splitting {s} at {cut}"))?;
        }
        if s.is_atomic() {
            ensure(br == [s.names()].into(), || format!("atomic {s}"))?;
        }
        for f in fs {
            match f {
                Formula::Or(a, b) => {
                    let t = s.replace(f, [(**a).clone(), (**b).clone()]).unwrap();
                    ensure(br == brute_branches(t.formulas()), || format!("disjunction law on {s}"))?;
                }
                Formula::And(a, b) => {
                    let l = brute_branches(s.replace(f, [(**a).clone()]).unwrap().formulas());
                    let r = brute_branches(s.replace(f, [(**b).clone()]).unwrap().formulas());
                    ensure(l.is_disjoint(&r), || format!("conjunct branches overlap on {s}"))?;
                    ensure(br == l.union(&r).cloned().collect(), || format!("conjunction law on {s}"))?;
                }
                Formula::Atom(..) => {}
            }
        }
    }
    Ok(format!("{} sequents with at most 10 names", sequents.len()))
}

fn measures(corpus: &[Derivation]) -> Outcome {
    let mut formulas = 0;
    let mut sequents = BTreeSet::new();
    corpus.iter().for_each(|p| node_conclusions(p, &mut sequents));
    for s in &sequents {
        for f in s.formulas() {
            let m = f.measures();
            ensure(m.atom_count == 1 + m.degree, || format!("atom count of {f}"))?;
            ensure(m.size == m.atom_count + m.degree && m.size == 1 + 2 * m.degree, || format!("size of {f}"))?;
            ensure(m.height <= m.degree && m.degree < m.atom_count && m.atom_count <= m.size, || format!("{f}"))?;
            formulas += 1;
        }
        let m = s.measures();
        ensure(m.atom_count == s.len() + m.degree, || format!("atom count of {s}"))?;
        ensure(m.size == m.atom_count + m.degree && m.size == s.len() + 2 * m.degree, || format!("size of {s}"))?;
        ensure(m.height <= m.degree && m.atom_count <= m.size, || format!("{s}"))?;
        ensure(s.is_empty() || m.degree < m.atom_count, || format!("{s}"))?;
    }
    let mut isolations = 0;
    for (seed, p) in corpus.iter().enumerate() {
        for a in compound(p) {
            let q = isolate(p, &a).map_err(|e| e.to_string())?;
            ensure(q.virtual_height() <= p.virtual_height(), || format!("seed {seed}: virtual height grew"))?;
            isolations += 1;
        }
    }
    Ok(format!("{formulas} formulas, {} sequents, {isolations} isolations", sequents.len()))
}

fn experiment() -> Outcome {
    let rows = run_experiment(200, &GenParams::default());
    let csv = experiment_csv(&rows);
    let eligible: Vec<_> = rows.iter().filter(|r| r.eligible).collect();
    ensure(eligible.len() == 200, || format!("{} eligible seeds", eligible.len()))?;
    ensure(csv.lines().count() == rows.len() + 1, || "malformed report".into())?;
    let count = |f: fn(&ExperimentRow) -> bool| eligible.iter().filter(|r| f(r)).count();
    Ok(format!(
        "{} seeds scanned; bl-graph kept by left {}, right {}, superposed {} of 200",
        rows.len(),
        count(|r| r.preserved_left),
        count(|r| r.preserved_right),
        count(|r| r.preserved_superposed)
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, what: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS criterion {id:>2} {what}: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL criterion {id:>2} {what}: {detail}");
        }
    };
    report(1, "conjunction-cut isolation edges", fig2());
    report(2, "crossed-branches isolation edges", fig3());
    report(3, "logical reduction loses a labeled edge", fig4());
    let start = Instant::now();
    let corpus = corpus();
    report(4, "isolation keeps bl-graphs", isolation_invariance(&corpus, start));
    report(5, "simple graphs shrink, and are kept when cut-free", simple_graphs(&corpus));
    report(6, "normalization keeps bl-graphs", normalization(&corpus, Instant::now()));
    report(7, "witness paths for atomic-context cuts", witnesses());
    report(8, "polynomial totality check", totality(&corpus));
    report(9, "sequentialization roundtrip", sequentialization(&corpus));
    report(10, "branch-set algebra", branch_algebra(&corpus));
    report(11, "measure identities and virtual height", measures(&corpus));
    report(12, "superposed-reduct experiment", experiment());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
