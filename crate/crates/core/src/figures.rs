//! The worked examples: derivations whose graphs change under isolation or
//! cut reduction, and two BLG proofs in tabular form.

use crate::blg::BlgProof;
use crate::blgraph::BlGraph;
use crate::derivation::Derivation;
use crate::name::Name;
use crate::syntax::Branch;
use crate::text::{parse_derivation, parse_formula, parse_sequent};
use crate::Formula;

/// Cut on an atom between two introductions of the same conjunction. Its
/// simple graph is the square `xy yz zw xw`.
pub const CONJUNCTION_CUT: &str = "
(cut u:a
  (and ((x:~a | y:a) & (z:~a | w:a))
    (or (x:~a | y:a) (ax {x:~a , u:a} |- x:~a, y:a, u:a))
    (or (z:~a | w:a) (ax {z:~a , u:a} |- z:~a, w:a, u:a)))
  (and ((x:~a | y:a) & (z:~a | w:a))
    (or (x:~a | y:a) (ax {y:a , u:~a} |- x:~a, y:a, u:~a))
    (or (z:~a | w:a) (ax {w:a , u:~a} |- z:~a, w:a, u:~a))))";

/// The conjunction isolated: one cut per conjunct, edges `xy zw`.
pub const CONJUNCTION_CUT_ISOLATED: &str = "
(and ((x:~a | y:a) & (z:~a | w:a))
  (cut u:a
    (or (x:~a | y:a) (ax {x:~a , u:a} |- x:~a, y:a, u:a))
    (or (x:~a | y:a) (ax {y:a , u:~a} |- x:~a, y:a, u:~a)))
  (cut u:a
    (or (z:~a | w:a) (ax {z:~a , u:a} |- z:~a, w:a, u:a))
    (or (z:~a | w:a) (ax {w:a , u:~a} |- z:~a, w:a, u:~a))))";

/// Cut on a conjunction whose left premiss links `y` to a conjunct only
/// present in one branch of `t:a & u:b`; edges `xt zu yt`, and `xt zu`
/// once `t:a & u:b` is isolated.
pub const CROSSED_BRANCHES: &str = "
(cut (v:a & w:b)
  (and (t:a & u:b)
    (and (v:a & w:b)
      (ax {x:~a , t:a} |- x:~a, y:~a, z:~b, t:a, v:a)
      (ax {x:~a , t:a} |- x:~a, y:~a, z:~b, t:a, w:b))
    (and (v:a & w:b)
      (ax {y:~a , v:a} |- x:~a, y:~a, z:~b, u:b, v:a)
      (ax {z:~b , w:b} |- x:~a, y:~a, z:~b, u:b, w:b)))
  (and (t:a & u:b)
    (or (v:~a | w:~b) (ax {t:a , v:~a} |- x:~a, y:~a, z:~b, t:a, v:~a, w:~b))
    (or (v:~a | w:~b) (ax {u:b , w:~b} |- x:~a, y:~a, z:~b, u:b, v:~a, w:~b))))";

/// A logical cut redex on `(z:a & s:~a) | (t:~a & u:a)` whose right premiss
/// superposes two axioms. Its bl-graph is `xy vw`, both labeled `{v,w,x,y}`.
pub const LOGICAL_REDEX: &str = "
(cut ((z:a & s:~a) | (t:~a & u:a))
  (or ((z:a & s:~a) | (t:~a & u:a))
    (and (z:a & s:~a)
      (and (t:~a & u:a)
        (ax {z:a , t:~a} |- x:b, y:~b, z:a, t:~a, v:~a, w:a)
        (ax {x:b , y:~b} |- x:b, y:~b, z:a, u:a, v:~a, w:a))
      (and (t:~a & u:a)
        (ax {x:b , y:~b} |- x:b, y:~b, s:~a, t:~a, v:~a, w:a)
        (ax {s:~a , u:a} |- x:b, y:~b, s:~a, u:a, v:~a, w:a))))
  (and ((z:~a | s:a) & (t:a | u:~a))
    (or (z:~a | s:a) (ax {z:~a , s:a} |- x:b, y:~b, z:~a, s:a, v:~a, w:a))
    (or (t:a | u:~a)
      (sup
        (ax {t:a , v:~a} |- x:b, y:~b, t:a, u:~a, v:~a, w:a)
        (ax {u:~a , w:a} |- x:b, y:~b, t:a, u:~a, v:~a, w:a)))))";

fn golden(src: &str) -> Derivation {
    parse_derivation(src).expect("golden derivation parses")
}

pub fn conjunction_cut() -> Derivation {
    golden(CONJUNCTION_CUT)
}

pub fn conjunction_cut_isolated() -> Derivation {
    golden(CONJUNCTION_CUT_ISOLATED)
}

pub fn conjunction_cut_target() -> Formula {
    parse_formula("((x:~a | y:a) & (z:~a | w:a))").expect("formula")
}

pub fn crossed_branches() -> Derivation {
    golden(CROSSED_BRANCHES)
}

pub fn crossed_branches_target() -> Formula {
    parse_formula("(t:a & u:b)").expect("formula")
}

pub fn logical_redex() -> Derivation {
    golden(LOGICAL_REDEX)
}

fn table(sequent: &str, rows: &[(&str, &[(&str, &str)])]) -> BlgProof {
    let sequent = parse_sequent(sequent).expect("sequent");
    let n = |s: &str| Name::parse(s).expect("name");
    let relation = rows.iter().flat_map(|(label, edges)| {
        let label: Branch = label.split_whitespace().map(n).collect();
        edges.iter().map(move |&(x, y)| ((n(x), n(y)), label.clone()))
    });
    let graph = BlGraph::new(sequent.names(), relation.collect::<Vec<_>>()).expect("well-formed");
    BlgProof { graph, sequent }
}

/// Two conjunctions of dual atoms, one edge in each of the four branches.
pub fn four_branch_proof() -> BlgProof {
    table(
        "|- (x:a & y:a), (z:~a & w:~a)",
        &[("x z", &[("x", "z")]), ("x w", &[("x", "w")]), ("y z", &[("y", "z")]), ("y w", &[("y", "w")])],
    )
}

/// Three formulas over three symbols; one branch carries two edges.
pub fn mixed_proof() -> BlgProof {
    table(
        "|- (x:a & y:~b), (z:b & u:~c), (v:~a | w:c)",
        &[
            ("x z v w", &[("x", "v")]),
            ("x u v w", &[("x", "v"), ("u", "w")]),
            ("y z v w", &[("y", "z")]),
            ("y u v w", &[("u", "w")]),
        ],
    )
}
