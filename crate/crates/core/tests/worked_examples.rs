use std::collections::BTreeSet;

use gs4::blg::{blg_size, check_totality_poly, is_total, mutate, sequentialize, Mutation, TotalityError};
use gs4::blgraph::{bl_alternating_paths, bl_axiom_graph, BlGraph};
use gs4::figures;
use gs4::generate::GenParams;
use gs4::normalize::normalize;
use gs4::reduction::{experiment_csv, reduce_cut_superposed, run_experiment};
use gs4::render::fig5_text;
use gs4::transform::isolate;
use gs4::witness::witness_path;
use gs4::{Derivation, Name};

fn n(s: &str) -> Name {
    Name::parse(s).unwrap()
}

#[test]
fn conjunction_isolation_matches_the_drawn_derivation() {
    let q = isolate(&figures::conjunction_cut(), &figures::conjunction_cut_target()).unwrap();
    assert_eq!(q, figures::conjunction_cut_isolated());
}

#[test]
fn conjunction_cut_keeps_one_labeled_edge_per_conjunct() {
    let g = bl_axiom_graph(&figures::conjunction_cut());
    let rel: Vec<String> = g.relation().iter().map(|((x, y), l)| format!("{x}{y}@{}", l.len())).collect();
    assert_eq!(rel, ["wz@2", "xy@2"]);
    assert_eq!(g, bl_axiom_graph(&figures::conjunction_cut_isolated()));
}

#[test]
fn witness_through_the_cut_atom() {
    let Derivation::Cut { formula, left, right } = figures::conjunction_cut() else { panic!() };
    let interface = formula.names();
    let (g, h) = (bl_axiom_graph(&left), bl_axiom_graph(&right));
    let labels: BTreeSet<_> = gs4::blgraph::relativize(&g, &interface).into_iter().map(|(_, l)| l).collect();
    // Two labels, one per conjunct: restrict to the first to meet the single-label precondition.
    let first = labels.iter().next().unwrap().clone();
    let keep = |b: &BlGraph| {
        BlGraph::new(
            b.vertices().clone(),
            b.relation().iter().filter(|(_, l)| l.difference(&interface).copied().collect::<BTreeSet<_>>() == first).cloned(),
        )
        .unwrap()
    };
    let (g1, h1) = (keep(&g), keep(&h));
    let path = witness_path(&g1, &h1, &interface).unwrap();
    assert_eq!(path.vertices.len(), 3);
    assert_eq!(path.vertices[1], n("u"));
    assert!(bl_alternating_paths(&g1, &h1, &interface).iter().any(|l| l.complete && l.path == path));
}

#[test]
fn four_branch_proof_is_total_with_size_eighteen() {
    let p = figures::four_branch_proof();
    assert!(is_total(&p.graph, &p.sequent));
    assert_eq!(check_totality_poly(&p.graph, &p.sequent), Ok(()));
    // Sequent size 2 * 3, four vertices, four labels of two names each.
    assert_eq!(blg_size(&p), 6 + 4 + 8);
    let d = sequentialize(&p).unwrap();
    assert_eq!(bl_axiom_graph(&d), p.graph);
    let dropped = mutate(&p, Mutation::DropBranch, 0).unwrap();
    assert!(!is_total(&dropped.graph, &dropped.sequent));
    assert!(matches!(check_totality_poly(&dropped.graph, &dropped.sequent), Err(TotalityError::MissingBranch(_))));
}

#[test]
fn mixed_proof_is_total_and_prints_as_a_table() {
    let p = figures::mixed_proof();
    assert_eq!(check_totality_poly(&p.graph, &p.sequent), Ok(()));
    assert!(is_total(&p.graph, &p.sequent));
    let text = fig5_text(&p.graph, &p.sequent);
    assert_eq!(
        text,
        "{u,v,w,x}: u/w, v/x\n\
         {u,v,w,y}: u/w\n\
         {v,w,x,z}: v/x\n\
         {v,w,y,z}: y/z\n\
         -------------------------------------------\n\
         |- (z:b & u:~c), (v:~a | w:c), (x:a & y:~b)\n"
    );
}

#[test]
fn superposed_reduct_of_the_redex() {
    let p = figures::logical_redex();
    let s = reduce_cut_superposed(&p).unwrap();
    assert_eq!(s.validate().unwrap(), p.conclusion());
    assert!(bl_axiom_graph(&s).is_subgraph_of(&bl_axiom_graph(&p)));
}

#[test]
fn normalizing_the_redex_keeps_both_labeled_edges() {
    let p = figures::logical_redex();
    let q = normalize(&p).unwrap();
    assert!(q.is_cut_free());
    assert_eq!(bl_axiom_graph(&q), bl_axiom_graph(&p));
    assert_eq!(bl_axiom_graph(&q).relation().len(), 2);
}

#[test]
fn experiment_report_shape() {
    let rows = run_experiment(3, &GenParams::default());
    let csv = experiment_csv(&rows);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("seed,eligible,preserved_logical_left,preserved_logical_right,preserved_superposed"));
    assert_eq!(lines.count(), rows.len());
    assert_eq!(rows.iter().filter(|r| r.eligible).count(), 3);
    assert!(rows.iter().filter(|r| r.eligible).all(|r| r.simple_preserved));
}
