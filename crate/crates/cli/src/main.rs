//! `gonlab`: JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 invalid input, 2 size limit or cap exceeded.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gonlab::corpus::{corpus_json, generate_corpus, CorpusBounds};
use gonlab::dhar::dhar_dgon;
use gonlab::divisor::{dgon, is_principal, prin_basis, push_pl, pushforward_contraction, rank};
use gonlab::ggon::{ggon, GonalityResult, DEFAULT_CAP};
use gonlab::graph::{contract, remove_loops, subdivide_to_unit};
use gonlab::io::{
    divisor_from_map, divisor_to_map, from_json, pl_from_map, pl_to_map, read_json, to_canonical_json,
    to_pretty_json, GraphDocument, HomDoc, MorphismDoc,
};
use gonlab::pipeline::{bounds_report, combinatorial_lower_bound};
use gonlab::treewidth::{treewidth_with_limit, TREEWIDTH_LIMIT};
use gonlab::{Divisor, Error, MetrisedGraph, PlFunction};

#[derive(Parser)]
#[command(name = "gonlab", version, about = "Divisors, harmonic morphisms and gonality of monoid-metrised graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// A divisor given inline as JSON, as `@file`, or by name from the
/// document's `divisors` section.
#[derive(clap::Args)]
struct DivisorArg {
    #[arg(long)]
    divisor: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph document against the axioms.
    Validate { graph: PathBuf },
    /// Rank of a divisor.
    Rank {
        graph: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Divisorial gonality with a witness divisor.
    Dgon { graph: PathBuf },
    /// Geometric gonality.
    Ggon {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        /// Write the witness morphism document here.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// A basis of the principal divisors.
    Prin { graph: PathBuf },
    /// Whether a divisor is principal, with a certificate.
    IsPrincipal {
        graph: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Validate a morphism document and report harmonicity.
    CheckMorphism { morphism: PathBuf },
    /// Pull a target divisor back along a harmonic morphism.
    Pullback {
        morphism: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Push a source divisor forward along a morphism.
    Pushforward {
        morphism: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Compare the pullback of a Laplacian with the Laplacian of a pullback.
    SquareCheck {
        morphism: PathBuf,
        /// PL function on the target, inline JSON or `@file`.
        #[arg(long)]
        pl: String,
    },
    /// Contract along a monoid homomorphism.
    Contract {
        graph: PathBuf,
        /// `{"matrix": ..., "target": ...}`, inline JSON or `@file`.
        #[arg(long)]
        hom: String,
        /// Also push this divisor forward.
        #[arg(long)]
        divisor: Option<String>,
        /// Also push this PL function forward.
        #[arg(long)]
        pl: Option<String>,
    },
    /// Subdivide every edge into unit edges (rank-one graphs only).
    Subdivide { graph: PathBuf },
    RemoveLoops { graph: PathBuf },
    /// The combinatorial lower bound on gonality.
    Pipeline { graph: PathBuf },
    Treewidth {
        graph: PathBuf,
        #[arg(long, default_value_t = TREEWIDTH_LIMIT)]
        limit: usize,
    },
    /// Treewidth, gonalities and the inequalities between them.
    BoundsReport {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        #[arg(long, default_value_t = TREEWIDTH_LIMIT)]
        limit: usize,
    },
    /// A reproducible corpus of graph documents.
    GenCorpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 5)]
        max_edges: usize,
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

enum Failure {
    Invalid(Value),
    Exceeded(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let value = match &e {
            Error::Invalid(v) => json!({"error": "invalid", "axiom": v.axiom, "element": v.element, "message": e.to_string()}),
            Error::Parse { pointer, message } => json!({"error": "parse", "pointer": pointer, "message": message}),
            Error::SizeLimit { size, limit } => {
                return Failure::Exceeded(json!({"error": "size_limit", "size": size, "limit": limit}))
            }
            _ => json!({"error": "invalid", "message": e.to_string()}),
        };
        Failure::Invalid(value)
    }
}

impl From<gonlab::Violation> for Failure {
    fn from(v: gonlab::Violation) -> Self {
        Error::Invalid(v).into()
    }
}

type Outcome = Result<Value, Failure>;

fn inline_or_file(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_owned()),
    }
}

fn load_graph(path: &Path) -> Result<(GraphDocument, MetrisedGraph), Error> {
    let doc: GraphDocument = read_json(path)?;
    let g = doc.to_graph()?;
    Ok((doc, g))
}

fn resolve_divisor(arg: &str, doc: &GraphDocument, g: &MetrisedGraph) -> Result<Divisor, Error> {
    let trimmed = arg.trim_start();
    let map: BTreeMap<String, i64> = if trimmed.starts_with('{') || trimmed.starts_with('@') {
        from_json(&inline_or_file(trimmed)?)?
    } else {
        doc.divisors
            .as_ref()
            .and_then(|d| d.get(arg))
            .cloned()
            .ok_or_else(|| Error::Parse {
                pointer: format!("/divisors/{arg}"),
                message: "no such divisor in the document".into(),
            })?
    };
    divisor_from_map(g, &map)
}

fn resolve_pl(arg: &str, g: &MetrisedGraph) -> Result<PlFunction, Error> {
    let map: BTreeMap<String, Vec<i64>> = from_json(&inline_or_file(arg)?)?;
    pl_from_map(g, &map)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { graph } => {
            let (_, g) = load_graph(&graph)?;
            Ok(json!({"valid": true, "vertices": g.vertex_count(), "edges": g.edge_count(), "loops": g.has_loops()}))
        }
        Command::Rank { graph, divisor } => {
            let (doc, g) = load_graph(&graph)?;
            let d = resolve_divisor(&divisor.divisor, &doc, &g)?;
            Ok(json!({"rank": rank(&g, &d), "degree": d.degree()}))
        }
        Command::Dgon { graph } => {
            let (_, g) = load_graph(&graph)?;
            let (value, witness) = if g.is_unit_length() && !g.has_loops() { dhar_dgon(&g)? } else { dgon(&g) };
            Ok(json!({"dgon": value, "witness": divisor_to_map(&g, &witness)}))
        }
        Command::Ggon { graph, cap, emit_witness } => {
            let (_, g) = load_graph(&graph)?;
            match ggon(&g, cap) {
                GonalityResult::Finite { degree, witness } => {
                    let doc = MorphismDoc::from_morphism(&witness);
                    if let Some(path) = emit_witness {
                        std::fs::write(&path, to_pretty_json(&doc) + "\n").map_err(Error::from)?;
                    }
                    Ok(json!({"ggon": "finite", "degree": degree, "witness": doc}))
                }
                GonalityResult::Infinite { certificate } => Ok(json!({"ggon": "infinite", "certificate": certificate})),
                GonalityResult::Exceeded { cap, lower_bound, best_known } => Err(Failure::Exceeded(
                    json!({"ggon": "exceeded", "cap": cap, "lower_bound": lower_bound, "best_known": best_known}),
                )),
            }
        }
        Command::Prin { graph } => {
            let (_, g) = load_graph(&graph)?;
            let basis = prin_basis(&g);
            let divisors: Vec<_> = basis.divisors().iter().map(|d| divisor_to_map(&g, d)).collect();
            Ok(json!({"rank": basis.rank(), "pivot": g.vertex_id(basis.pivot()), "basis": divisors}))
        }
        Command::IsPrincipal { graph, divisor } => {
            let (doc, g) = load_graph(&graph)?;
            let d = resolve_divisor(&divisor.divisor, &doc, &g)?;
            let certificate = is_principal(&g, &d);
            Ok(json!({"principal": certificate.is_some(), "certificate": certificate}))
        }
        Command::CheckMorphism { morphism } => {
            let phi = read_json::<MorphismDoc>(&morphism)?.to_morphism()?;
            let mut out = json!({"valid": true, "slopes": phi.slopes()});
            match phi.harmonic() {
                Ok(Some(h)) => {
                    let m: BTreeMap<&str, i64> =
                        h.multiplicities.iter().enumerate().map(|(v, &m)| (phi.source().vertex_id(v), m)).collect();
                    out["harmonic"] = json!(true);
                    out["degree"] = json!(h.degree);
                    out["multiplicities"] = json!(m);
                    out["nondegenerate"] = json!(h.is_nondegenerate());
                }
                Ok(None) => out["harmonic"] = json!(false),
                Err(e) => {
                    out["harmonic"] = Value::Null;
                    out["note"] = json!(e.to_string());
                }
            }
            Ok(out)
        }
        Command::Pullback { morphism, divisor } => {
            let doc: MorphismDoc = read_json(&morphism)?;
            let phi = doc.to_morphism()?;
            let d = resolve_divisor(&divisor.divisor, &doc.target, phi.target())?;
            let pulled = phi.pullback_divisor(&d)?;
            Ok(json!({"divisor": divisor_to_map(phi.source(), &pulled)}))
        }
        Command::Pushforward { morphism, divisor } => {
            let doc: MorphismDoc = read_json(&morphism)?;
            let phi = doc.to_morphism()?;
            let d = resolve_divisor(&divisor.divisor, &doc.source, phi.source())?;
            let pushed = phi.pushforward_divisor(&d)?;
            Ok(json!({"divisor": divisor_to_map(phi.target(), &pushed)}))
        }
        Command::SquareCheck { morphism, pl } => {
            let phi = read_json::<MorphismDoc>(&morphism)?.to_morphism()?;
            let h = resolve_pl(&pl, phi.target())?;
            let lhs = phi.pullback_divisor(&gonlab::divisor::laplacian(phi.target(), &h)?)?;
            let rhs = gonlab::divisor::laplacian(phi.source(), &phi.pullback_pl(&h)?)?;
            Ok(json!({
                "commutes": phi.check_commuting_square(&h)?,
                "pullback_of_laplacian": divisor_to_map(phi.source(), &lhs),
                "laplacian_of_pullback": divisor_to_map(phi.source(), &rhs),
            }))
        }
        Command::Contract { graph, hom, divisor, pl } => {
            let (doc, g) = load_graph(&graph)?;
            let f = from_json::<HomDoc>(&inline_or_file(&hom)?)?.to_hom(g.monoid())?;
            let (c, vm) = contract(&g, &f)?;
            let map: BTreeMap<&str, &str> =
                vm.source.iter().zip(&vm.map).map(|(s, &t)| (s.as_str(), vm.target[t].as_str())).collect();
            let mut out = json!({"graph": GraphDocument::from_graph(&c), "vertex_map": map});
            if let Some(arg) = divisor {
                let d = resolve_divisor(&arg, &doc, &g)?;
                out["divisor"] = json!(divisor_to_map(&c, &pushforward_contraction(&vm, &d)?));
            }
            if let Some(arg) = pl {
                let h = resolve_pl(&arg, &g)?;
                out["pl"] = json!(pl_to_map(&c, &push_pl(&vm, &f, &h)?));
            }
            Ok(out)
        }
        Command::Subdivide { graph } => {
            let (_, g) = load_graph(&graph)?;
            Ok(json!(GraphDocument::from_graph(&subdivide_to_unit(&g)?)))
        }
        Command::RemoveLoops { graph } => {
            let (_, g) = load_graph(&graph)?;
            Ok(json!(GraphDocument::from_graph(&remove_loops(&g))))
        }
        Command::Pipeline { graph } => {
            let (_, g) = load_graph(&graph)?;
            let lb = combinatorial_lower_bound(&g)?;
            Ok(json!({
                "dgon_h": lb.dgon_h,
                "witness": divisor_to_map(&lb.h, &lb.witness),
                "trace": lb.trace,
                "h": GraphDocument::from_graph(&lb.h),
            }))
        }
        Command::Treewidth { graph, limit } => {
            let (_, g) = load_graph(&graph)?;
            Ok(json!({"treewidth": treewidth_with_limit(&g, limit)?}))
        }
        Command::BoundsReport { graph, cap, limit } => {
            let (_, g) = load_graph(&graph)?;
            let report = bounds_report(&g, cap, limit)?;
            if let gonlab::pipeline::GgonSummary::Exceeded { .. } = report.ggon {
                return Err(Failure::Exceeded(json!(report)));
            }
            Ok(json!(report))
        }
        Command::GenCorpus { seed, max_vertices, max_edges, random } => {
            let bounds = CorpusBounds::new(max_vertices, max_edges).with_random(random);
            Ok(corpus_json(&generate_corpus(seed, &bounds)))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("GONLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let print = |v: &Value| match cli.format {
        Format::Json => to_canonical_json(v),
        Format::Pretty => to_pretty_json(v),
    };
    match run(cli.command) {
        Ok(v) => {
            println!("{}", print(&v));
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(v)) => {
            println!("{}", print(&v));
            ExitCode::from(1)
        }
        Err(Failure::Exceeded(v)) => {
            println!("{}", print(&v));
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn size_limits_map_to_exceeded() {
        assert!(matches!(Failure::from(Error::SizeLimit { size: 30, limit: 24 }), Failure::Exceeded(_)));
        assert!(matches!(Failure::from(Error::NotHarmonic), Failure::Invalid(_)));
    }
}

