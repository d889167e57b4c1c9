//! The named sequent calculus GS4 with deterministic axioms and superposition,
//! its simple and branch-labeled axiom-graph semantics, graph-preserving cut
//! elimination, and the BLG proof system with a polynomial correctness check.
//!
//! ```
//! use gs4::text::parse_derivation;
//! use gs4::blgraph::bl_axiom_graph;
//!
//! let p = parse_derivation("(ax {x:a , y:~a} |- x:a, y:~a)").unwrap();
//! p.validate().unwrap();
//! assert_eq!(bl_axiom_graph(&p).relation().len(), 1);
//! ```

pub mod blg;
pub mod blgraph;
pub mod derivation;
pub mod figures;
pub mod generate;
pub mod name;
pub mod namegraph;
pub mod normalize;
pub mod reduction;
pub mod render;
pub mod syntax;
pub mod text;
pub mod transform;
pub mod witness;

pub use derivation::Derivation;
pub use name::{Name, Symbol};
pub use syntax::{Atom, Branch, Formula, Sequent};
