//! `gs4`: check, transform, interpret and normalize GS4 derivations, and work
//! with BLG proofs.
//!
//! Failures print one `CODE path=... detail=...` line on stderr and exit 1;
//! usage errors exit 2.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gs4::blg::{blg_from_derivation, blg_size, check_totality_poly, is_total, sequentialize};
use gs4::blgraph::{bl_axiom_graph, BlGraph};
use gs4::derivation::{format_path, ValidationError};
use gs4::figures;
use gs4::generate::GenParams;
use gs4::namegraph::{axiom_graph, Edge};
use gs4::normalize::normalize;
use gs4::reduction::{experiment_csv, reduce_cut_logical, run_experiment};
use gs4::render::{
    bl_graph_dot, bl_graph_json, blg_json, branch_text, edge_list, fig5_text, name_graph_dot, name_graph_json,
    parse_blg_json,
};
use gs4::text::{parse_derivation, parse_formula};
use gs4::transform::{inv_and, inv_or, isolate, Side};
use gs4::{Derivation, Formula, Name};

#[derive(Parser)]
#[command(name = "gs4", version, about = "Named GS4 derivations, axiom graphs and BLG proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a derivation and print its conclusion.
    Check { file: String },
    /// Invert a derivation on a conclusion formula.
    Invert {
        file: String,
        #[arg(long)]
        target: String,
        /// Which conjunct to keep when the target is a conjunction.
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Rewrite a derivation so that its last rule introduces the target.
    Isolate {
        file: String,
        #[arg(long)]
        target: String,
    },
    /// Print the axiom graph of a derivation.
    Graph {
        file: String,
        #[arg(long, value_enum, default_value = "bl")]
        semantics: Semantics,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Eliminate cuts, keeping the branch-labeled axiom graph.
    Normalize {
        file: String,
        /// Skip the final graph comparison.
        #[arg(long)]
        no_verify: bool,
    },
    /// BLG proofs: total pairs of a branch-labeled graph and a sequent.
    Blg {
        #[command(subcommand)]
        command: BlgCommand,
    },
    /// Rebuild a worked example and check its graphs.
    Repro {
        #[arg(value_enum)]
        figure: Figure,
    },
    /// Run an experiment and print its report.
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum BlgCommand {
    /// Check totality with the polynomial algorithm.
    Check {
        file: String,
        /// Also run the exhaustive check and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// The BLG proof of a derivation.
    FromDeriv { file: String },
    /// A cut-free derivation denoting a BLG proof.
    Sequentialize { file: String },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Which logical cut-reduction steps keep the branch-labeled graph (CSV).
    Pulcini {
        /// Number of eligible seeds to collect.
        #[arg(long, default_value_t = 200)]
        seeds: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Semantics {
    Simple,
    Bl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Fig5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

/// A diagnostic line.
struct Failure {
    code: String,
    path: String,
    detail: String,
}

impl Failure {
    fn new(code: &str, detail: impl ToString) -> Failure {
        Failure { code: code.to_string(), path: "root".into(), detail: detail.to_string() }
    }

    /// Uses the error's variant name as the code.
    fn from_error<E: Debug + ToString>(e: E) -> Failure {
        let debug = format!("{e:?}");
        let code = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Failure { code, path: "root".into(), detail: e.to_string() }
    }
}

impl From<ValidationError> for Failure {
    fn from(e: ValidationError) -> Failure {
        Failure { code: e.kind.to_string(), path: format_path(&e.path), detail: e.detail }
    }
}

type Outcome = Result<String, Failure>;

fn read(file: &str) -> Result<String, Failure> {
    fs::read_to_string(file).map_err(|e| Failure::new("IoError", format!("{file}: {e}")))
}

fn load(file: &str) -> Result<Derivation, Failure> {
    let d = parse_derivation(&read(file)?).map_err(|e| Failure::new("ParseError", e))?;
    d.validate()?;
    Ok(d)
}

fn target(text: &str) -> Result<Formula, Failure> {
    parse_formula(text).map_err(|e| Failure::new("ParseError", e))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file } => Ok(format!("ok {}", load(&file)?.conclusion())),
        Command::Invert { file, target: t, side } => {
            let d = load(&file)?;
            let f = target(&t)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let out = match f {
                Formula::And(..) => inv_and(&d, &f, side),
                _ => inv_or(&d, &f),
            };
            Ok(out.map_err(Failure::from_error)?.to_string())
        }
        Command::Isolate { file, target: t } => {
            let d = load(&file)?;
            Ok(isolate(&d, &target(&t)?).map_err(Failure::from_error)?.to_string())
        }
        Command::Graph { file, semantics, format } => {
            let d = load(&file)?;
            let c = d.conclusion();
            Ok(match (semantics, format) {
                (Semantics::Simple, Format::Json) => name_graph_json(&axiom_graph(&d)),
                (Semantics::Simple, Format::Dot) => name_graph_dot(&axiom_graph(&d), Some(&c)),
                (Semantics::Simple, Format::Fig5) => {
                    return Err(Failure::new("UnsupportedFormat", "fig5 tables need branch labels; use --semantics bl"))
                }
                (Semantics::Bl, Format::Json) => bl_graph_json(&bl_axiom_graph(&d)),
                (Semantics::Bl, Format::Dot) => bl_graph_dot(&bl_axiom_graph(&d), Some(&c)),
                (Semantics::Bl, Format::Fig5) => fig5_text(&bl_axiom_graph(&d), &c),
            })
        }
        Command::Normalize { file, no_verify } => {
            let d = load(&file)?;
            let q = normalize(&d).map_err(Failure::from_error)?;
            if !no_verify && bl_axiom_graph(&q) != bl_axiom_graph(&d) {
                return Err(Failure::new("GraphMismatch", "normal form denotes a different bl-graph"));
            }
            Ok(q.to_string())
        }
        Command::Blg { command } => run_blg(command),
        Command::Repro { figure } => repro(figure),
        Command::Experiment { command: ExperimentCommand::Pulcini { seeds } } => {
            Ok(experiment_csv(&run_experiment(seeds, &GenParams::default())))
        }
    }
}

fn run_blg(command: BlgCommand) -> Outcome {
    match command {
        BlgCommand::Check { file, oracle } => {
            let p = parse_blg_json(&read(&file)?).map_err(|e| Failure::new("FormatError", e))?;
            let poly = check_totality_poly(&p.graph, &p.sequent);
            if oracle && poly.is_ok() != is_total(&p.graph, &p.sequent) {
                return Err(Failure::new("OracleDisagreement", format!("polynomial check says {poly:?}")));
            }
            poly.map_err(Failure::from_error)?;
            Ok(format!("total size={}", blg_size(&p)))
        }
        BlgCommand::FromDeriv { file } => Ok(blg_json(&blg_from_derivation(&load(&file)?))),
        BlgCommand::Sequentialize { file } => {
            let p = parse_blg_json(&read(&file)?).map_err(|e| Failure::new("FormatError", e))?;
            Ok(sequentialize(&p).map_err(Failure::from_error)?.to_string())
        }
    }
}

fn edges(list: &str) -> BTreeSet<Edge> {
    list.split_whitespace()
        .map(|e| {
            let (x, y) = e.split_at(1);
            let (x, y) = (Name::parse(x).expect("name"), Name::parse(y).expect("name"));
            (x.min(y), x.max(y))
        })
        .collect()
}

fn expect_edges(stage: &str, got: &BTreeSet<Edge>, want: &str) -> Result<String, Failure> {
    if *got == edges(want) {
        Ok(format!("{stage}: {}", edge_list(got)))
    } else {
        Err(Failure::new("FigureMismatch", format!("{stage}: got {}, expected {}", edge_list(got), edge_list(&edges(want)))))
    }
}

fn labeled(g: &BlGraph) -> String {
    g.relation().iter().map(|((x, y), l)| format!("{x}{y}@{}", branch_text(l))).collect::<Vec<_>>().join(" ")
}

fn repro(figure: Figure) -> Outcome {
    let isolation = |d: Derivation, t: Formula, before: &str, after: &str| -> Outcome {
        let q = isolate(&d, &t).map_err(Failure::from_error)?;
        Ok([expect_edges("before", &axiom_graph(&d).edges, before)?, expect_edges("after", &axiom_graph(&q).edges, after)?]
            .join("\n"))
    };
    match figure {
        Figure::Fig2 => isolation(figures::conjunction_cut(), figures::conjunction_cut_target(), "xy yz zw xw", "xy zw"),
        Figure::Fig3 => isolation(figures::crossed_branches(), figures::crossed_branches_target(), "xt zu yt", "xt zu"),
        Figure::Fig4 => {
            let p = figures::logical_redex();
            let q = reduce_cut_logical(&p, Side::Left).map_err(Failure::from_error)?;
            let (gp, gq) = (bl_axiom_graph(&p), bl_axiom_graph(&q));
            let label = "{v,w,x,y}";
            let want_before = format!("vw@{label} xy@{label}");
            let want_after = format!("xy@{label}");
            if labeled(&gp) != want_before || labeled(&gq) != want_after {
                return Err(Failure::new("FigureMismatch", format!("bl edges {} then {}", labeled(&gp), labeled(&gq))));
            }
            let simple = expect_edges("simple", &axiom_graph(&q).edges, "xy vw")?;
            if axiom_graph(&p) != axiom_graph(&q) {
                return Err(Failure::new("FigureMismatch", "simple graph changed"));
            }
            Ok(format!("before: {want_before}\nafter: {want_after}\n{simple} (unchanged)"))
        }
        Figure::Fig5 => {
            let mut out = String::new();
            for (p, size) in [(figures::four_branch_proof(), Some(18)), (figures::mixed_proof(), None)] {
                check_totality_poly(&p.graph, &p.sequent).map_err(Failure::from_error)?;
                let d = sequentialize(&p).map_err(Failure::from_error)?;
                if bl_axiom_graph(&d) != p.graph {
                    return Err(Failure::new("FigureMismatch", "sequentialization changed the graph"));
                }
                if size.is_some_and(|s| s != blg_size(&p)) {
                    return Err(Failure::new("FigureMismatch", format!("size {}", blg_size(&p))));
                }
                out.push_str(&fig5_text(&p.graph, &p.sequent));
                out.push_str(&format!("total size={}\n\n", blg_size(&p)));
            }
            Ok(out.trim_end().to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{} path={} detail={}", f.code, f.path, f.detail);
            ExitCode::from(1)
        }
    }
}
