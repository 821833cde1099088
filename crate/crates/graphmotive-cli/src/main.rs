//! Command-line entry point: every library operation behind one binary with
//! reproducible text or JSON output.
//!
//! Exit codes: 0 success, 1 failed checks, 2 parse/usage errors, 3 guard or
//! budget violations.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use graphmotive::corpus;
use graphmotive::graph::MultiGraph;
use graphmotive::hopf::{Birkhoff, Character, GraphSum, Hopf, TensorSum};
use graphmotive::kirchhoff;
use graphmotive::motivic::{self, ClassTriple, Family, Provenance};
use graphmotive::pointcount::{self, CountOptions, DEFAULT_BUDGET};
use graphmotive::poly::{BiPoly, Int, IntPoly, LaurentPoly, Rat, SeriesKind};
use graphmotive::tutte;
use graphmotive::universal;
use graphmotive::Error;

#[derive(Parser)]
#[command(
    name = "graphmotive",
    version,
    about = "Exact graph polynomial invariants, motivic classes, and their point-counting oracle"
)]
struct Cli {
    /// Emit JSON instead of canonical text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap the worker pool used by the counting oracle.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Evaluation budget for point counting (elementary steps).
    #[arg(long, global = true, env = "GRAPHMOTIVE_BUDGET")]
    budget: Option<u64>,

    /// Seed mixed into randomized checks; 0 keeps the built-in defaults.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKindArg {
    Exp,
    Ord,
}

impl From<SeriesKindArg> for SeriesKind {
    fn from(value: SeriesKindArg) -> Self {
        match value {
            SeriesKindArg::Exp => SeriesKind::Exponential,
            SeriesKindArg::Ord => SeriesKind::Ordinary,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepKindArg {
    Motivic,
    Tutte,
    Csm,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file (text `u v` lines or JSON); `-` reads standard input.
    #[arg(default_value = "-")]
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Kirchhoff polynomial of the graph.
    Psi(GraphArg),
    /// Tutte polynomial by deletion-contraction.
    Tutte(GraphArg),
    /// Tutte polynomial by the brute-force states sum.
    TutteStates(GraphArg),
    /// Chromatic polynomial.
    Chromatic(GraphArg),
    /// Tutte-Grothendieck specialization with rational weights.
    Tg {
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "1")]
        beta: String,
        #[arg(long, default_value = "1")]
        gamma: String,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Tutte polynomial of the graph with an edge multiplied m times.
    TutteMedge {
        #[arg(short, long)]
        edge: usize,
        #[arg(short, long, default_value_t = 2)]
        m: usize,
        /// Emit the whole series of the given kind up to --order instead.
        #[arg(long)]
        series: Option<SeriesKindArg>,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Motivic class of the affine hypersurface complement.
    Class {
        /// Interpolate irreducible residues from counts at these primes.
        #[arg(long, value_delimiter = ',')]
        fallback_primes: Vec<u64>,
        #[arg(long)]
        holdout: Option<u64>,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Motivic class of the graph with an edge multiplied m times.
    ClassMedge {
        #[arg(short, long)]
        edge: usize,
        #[arg(short, long, default_value_t = 2)]
        m: usize,
        /// Emit the whole series up to --order instead.
        #[arg(long)]
        series: bool,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Emit a family graph in the text format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Euler characteristic of the projective hypersurface complement.
    Euler(GraphArg),
    /// Euler characteristics over the multiplied-edge family.
    EulerSeries {
        #[arg(short, long)]
        edge: usize,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Count F_q points of the hypersurface complement.
    Count {
        #[arg(short)]
        q: u64,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Interpolate the counting function to a candidate class.
    Interpolate {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        holdout: u64,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Check the counting-level deletion-contraction identity.
    VerifyDelcon {
        #[arg(short, long)]
        edge: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Check a class (rule-derived by default) against point counts.
    VerifyClass {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        /// Explicit class polynomial in T; defaults to the rule engine.
        #[arg(long)]
        class: Option<String>,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Coefficient triple (f_m, g_m, h_m) of a universal instantiation.
    Universal {
        #[arg(long, value_enum)]
        kind: RepKindArg,
        #[arg(short, long)]
        m: usize,
    },
    /// Predicted characteristic-class polynomial from a base-triple file.
    CsmPredict {
        /// JSON file with "class", "deleted", "contracted" polynomials in T.
        #[arg(long)]
        base_file: PathBuf,
        #[arg(short, long)]
        m: usize,
    },
    /// Coproduct of a 1PI graph in the core Hopf algebra.
    Coproduct(GraphArg),
    /// Antipode of a 1PI graph.
    Antipode(GraphArg),
    /// Birkhoff factorization of a character on the graph.
    Renorm {
        /// `toy` or a JSON character file.
        #[arg(long, default_value = "toy")]
        character: String,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Run the whole verification corpus; exit 1 on any failure.
    Corpus,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Two vertices joined by m parallel edges.
    Banana {
        #[arg(short, long)]
        m: usize,
    },
    /// Chain of m triangles glued along successive edges.
    Lemon {
        #[arg(short, long)]
        m: usize,
    },
    /// Polygons attached in a row along single edges.
    Chain {
        #[arg(long, value_delimiter = ',')]
        sides: Vec<usize>,
    },
    /// Lemon fanned out from an edge of the base graph.
    Lemonade {
        #[arg(short, long)]
        edge: usize,
        #[arg(short, long)]
        m: usize,
        #[command(flatten)]
        graph: GraphArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // a second build_global in the same process is harmless here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok(failed_checks) => {
            if failed_checks {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SizeGuard { .. } | Error::BudgetExceeded { .. } => 3,
        Error::Parse(_) | Error::InvalidParam(_) => 2,
        _ => 1,
    }
}

fn count_options(cli: &Cli) -> CountOptions {
    CountOptions {
        budget: cli.budget.unwrap_or(DEFAULT_BUDGET),
        parallel: cli.threads != Some(1),
        split_var: None,
    }
}

fn load_graph(arg: &GraphArg) -> Result<MultiGraph, Error> {
    let content = if arg.graph == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        buffer
    } else {
        fs::read_to_string(&arg.graph)
            .map_err(|e| Error::Parse(format!("{}: {e}", arg.graph)))?
    };
    MultiGraph::parse(&content)
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    let parse_int =
        |t: &str| Int::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational {s}")));
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == Int::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(num)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn int_poly_json(p: &IntPoly) -> serde_json::Value {
    json!({
        "variable": "T",
        "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn bi_poly_json(p: &BiPoly) -> serde_json::Value {
    json!({
        "variables": ["x", "y"],
        "terms": p
            .terms()
            .map(|(&(dx, dy), c)| json!([dx, dy, c.to_string()]))
            .collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn laurent_json(p: &LaurentPoly) -> serde_json::Value {
    json!({
        "variable": "z",
        "terms": p.terms().map(|(&e, c)| json!([e, c.to_string()])).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn emit(json_mode: bool, value: serde_json::Value, text: String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn monomial_text(hopf: &Hopf, monomial: &[graphmotive::graph::CanonicalKey]) -> String {
    if monomial.is_empty() {
        return "1".to_string();
    }
    monomial
        .iter()
        .map(|k| {
            hopf.representative(k)
                .map(|g| format!("[{}]", g.to_text().trim().replace('\n', ", ")))
                .unwrap_or_else(|| k.to_string())
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn tensor_text(hopf: &Hopf, sum: &TensorSum) -> String {
    let mut lines: Vec<String> = sum
        .terms
        .iter()
        .map(|((l, r), c)| {
            format!("{:+} * {} (x) {}", c, monomial_text(hopf, l), monomial_text(hopf, r))
        })
        .collect();
    lines.sort();
    lines.join("\n")
}

fn graph_sum_text(hopf: &Hopf, sum: &GraphSum) -> String {
    let mut lines: Vec<String> =
        sum.terms.iter().map(|(m, c)| format!("{:+} * {}", c, monomial_text(hopf, m))).collect();
    lines.sort();
    lines.join("\n")
}

/// Ok(true) means a verification ran and failed (exit 1 without an error).
fn run(cli: &Cli) -> Result<bool, Error> {
    let opts = count_options(cli);
    match &cli.command {
        Command::Psi(graph) => {
            let g = load_graph(graph)?;
            let result = kirchhoff::psi(&g)?;
            let monomials: Vec<serde_json::Value> = result
                .psi
                .monomials()
                .iter()
                .map(|(vars, c)| json!({"vars": vars, "coeff": c.to_string()}))
                .collect();
            emit(
                cli.json,
                json!({
                    "loop_number": result.loop_number,
                    "monomials": monomials,
                    "text": result.psi.to_string(),
                }),
                result.psi.to_string(),
            );
        }
        Command::Tutte(graph) => {
            let g = load_graph(graph)?;
            let t = tutte::tutte(&g)?;
            emit(cli.json, bi_poly_json(&t.value), t.value.to_string());
        }
        Command::TutteStates(graph) => {
            let g = load_graph(graph)?;
            let t = tutte::tutte_states(&g)?;
            emit(cli.json, bi_poly_json(&t.value), t.value.to_string());
        }
        Command::Chromatic(graph) => {
            let g = load_graph(graph)?;
            let p = tutte::chromatic(&g)?;
            emit(
                cli.json,
                json!({
                    "variable": "lambda",
                    "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "text": p.to_string_with_var("lambda"),
                }),
                p.to_string_with_var("lambda"),
            );
        }
        Command::Tg { alpha, beta, gamma, graph } => {
            let g = load_graph(graph)?;
            let value =
                tutte::tg_invariant(&g, &parse_rat(alpha)?, &parse_rat(beta)?, &parse_rat(gamma)?)?;
            emit(cli.json, bi_poly_json(&value), value.to_string());
        }
        Command::TutteMedge { edge, m, series, order, graph } => {
            let g = load_graph(graph)?;
            match series {
                Some(kind) => {
                    let ser = tutte::tutte_multiedge_series(&g, *edge, (*kind).into(), *order)?;
                    let terms: Vec<String> =
                        ser.terms().iter().map(|t| t.to_string()).collect();
                    emit(
                        cli.json,
                        json!({
                            "kind": match kind { SeriesKindArg::Exp => "exponential", SeriesKindArg::Ord => "ordinary" },
                            "terms": terms,
                        }),
                        terms
                            .iter()
                            .enumerate()
                            .map(|(i, t)| format!("m={i}: {t}"))
                            .collect::<Vec<_>>()
                            .join("\n"),
                    );
                }
                None => {
                    let t = tutte::tutte_multiedge(&g, *edge, *m)?;
                    emit(cli.json, bi_poly_json(&t.value), t.value.to_string());
                }
            }
        }
        Command::Class { fallback_primes, holdout, graph } => {
            let g = load_graph(graph)?;
            let class = if fallback_primes.is_empty() {
                motivic::motivic_class(&g)
            } else {
                let holdout = holdout
                    .ok_or_else(|| Error::InvalidParam("--holdout required with fallback".into()))?;
                pointcount::motivic_class_or_interpolate(&g, fallback_primes, holdout, &opts)?
            };
            let provenance = match class.provenance {
                Provenance::RuleDerived => "rule-derived",
                Provenance::Interpolated => "interpolated",
                Provenance::Unknown => "unknown",
            };
            let residues: Vec<String> =
                class.residues.iter().map(|r| r.to_text().trim().replace('\n', ", ")).collect();
            let text = match class.provenance {
                Provenance::Unknown => format!(
                    "provenance: unknown\nreduced factor: {}\nirreducible residues: {}",
                    class.value.factored_string(),
                    residues.join(" | ")
                ),
                _ => class.value.factored_string(),
            };
            emit(
                cli.json,
                json!({
                    "class": int_poly_json(&class.value),
                    "factored": class.value.factored_string(),
                    "provenance": provenance,
                    "rule_trace": class.rule_trace,
                    "residues": residues,
                }),
                text,
            );
        }
        Command::ClassMedge { edge, m, series, order, graph } => {
            let g = load_graph(graph)?;
            if *series {
                let kind = g.classify_edge(*edge)?;
                let ser = motivic::multiplied_edge_series(
                    &g,
                    *edge,
                    kind,
                    SeriesKind::Exponential,
                    *order,
                )?;
                let terms: Vec<String> =
                    ser.terms().iter().map(|t| t.factored_string()).collect();
                emit(
                    cli.json,
                    json!({"terms": ser.terms().iter().map(int_poly_json).collect::<Vec<_>>()}),
                    terms
                        .iter()
                        .enumerate()
                        .map(|(i, t)| format!("m={i}: {t}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                );
            } else {
                let class = motivic::multiplied_edge_class(&g, *edge, *m)?;
                emit(cli.json, int_poly_json(&class.value), class.value.factored_string());
            }
        }
        Command::Gen { family } => {
            let graph = match family {
                GenFamily::Banana { m } => motivic::family_graph(&Family::Banana(*m), None)?,
                GenFamily::Lemon { m } => motivic::family_graph(&Family::Lemon(*m), None)?,
                GenFamily::Chain { sides } => {
                    motivic::family_graph(&Family::Chain(sides.clone()), None)?
                }
                GenFamily::Lemonade { edge, m, graph } => {
                    let base = load_graph(graph)?;
                    motivic::lemonade_graph(&base, *edge, *m)?
                }
            };
            if cli.json {
                println!("{}", graph.to_json());
            } else {
                print!("{}", graph.to_text());
            }
        }
        Command::Euler(graph) => {
            let g = load_graph(graph)?;
            let class = motivic::motivic_class(&g);
            let chi = motivic::euler_char(&class)?;
            emit(cli.json, json!({"euler_characteristic": chi.to_string()}), chi.to_string());
        }
        Command::EulerSeries { edge, order, graph } => {
            let g = load_graph(graph)?;
            let ser = motivic::euler_multiedge_series(&g, *edge, *order)?;
            let terms: Vec<String> = ser.terms().iter().map(|t| t.to_string()).collect();
            emit(
                cli.json,
                json!({"terms": terms}),
                terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| format!("m={i}: {t}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
            );
        }
        Command::Count { q, graph } => {
            let g = load_graph(graph)?;
            let psi = kirchhoff::psi(&g)?.psi;
            let result = pointcount::count_complement(&psi, *q, &opts)?;
            emit(
                cli.json,
                json!({
                    "q": result.q,
                    "n": result.n,
                    "complement_count": result.complement_count,
                    "zero_count": result.zero_count,
                }),
                format!(
                    "q = {}: complement {} of {} points ({} zeros)",
                    result.q,
                    result.complement_count,
                    result.complement_count + result.zero_count,
                    result.zero_count
                ),
            );
        }
        Command::Interpolate { primes, holdout, graph } => {
            let g = load_graph(graph)?;
            let cand = pointcount::interpolate_class(&g, primes, *holdout, &opts)?;
            let text = match &cand.poly {
                Some(p) => format!("exact fit: {}", p.factored_string()),
                None => "no exact fit: the counting function does not match an integer \
                         polynomial of degree <= the edge count"
                    .to_string(),
            };
            emit(
                cli.json,
                json!({
                    "exact_fit": cand.exact_fit,
                    "sample_primes": cand.sample_primes,
                    "holdout": cand.holdout,
                    "class": cand.poly.as_ref().map(int_poly_json),
                }),
                text,
            );
            return Ok(!cand.exact_fit);
        }
        Command::VerifyDelcon { edge, primes, graph } => {
            let g = load_graph(graph)?;
            let report = pointcount::verify_delcon(&g, *edge, primes, &opts)?;
            let lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "q = {}: {} = {} ({} intersection zeros) [{}]",
                        c.q,
                        c.lhs,
                        c.rhs,
                        c.intersection_zeros,
                        if c.ok { "ok" } else { "FAIL" }
                    )
                })
                .collect();
            emit(
                cli.json,
                json!({
                    "edge": report.edge,
                    "ok": report.ok,
                    "checks": report.checks.iter().map(|c| json!({
                        "q": c.q,
                        "lhs": c.lhs,
                        "rhs": c.rhs,
                        "intersection_zeros": c.intersection_zeros,
                        "ideal_counts": [c.ideal_counts.0, c.ideal_counts.1],
                        "ok": c.ok,
                    })).collect::<Vec<_>>(),
                }),
                lines.join("\n"),
            );
            return Ok(!report.ok);
        }
        Command::VerifyClass { primes, class, graph } => {
            let g = load_graph(graph)?;
            let value = match class {
                Some(text) => text.parse::<IntPoly>()?,
                None => {
                    let c = motivic::motivic_class(&g);
                    if c.provenance != Provenance::RuleDerived {
                        return Err(Error::ClassUnavailable(
                            "graph is not series-parallel reducible; pass --class",
                        ));
                    }
                    c.value
                }
            };
            let report = pointcount::verify_class(&value, &g, primes, &opts)?;
            let lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "q = {}: class value {} vs count {} [{}]",
                        c.q,
                        c.expected,
                        c.counted,
                        if c.ok { "ok" } else { "FAIL" }
                    )
                })
                .collect();
            emit(
                cli.json,
                json!({
                    "ok": report.ok,
                    "class": int_poly_json(&value),
                    "checks": report.checks.iter().map(|c| json!({
                        "q": c.q,
                        "expected": c.expected.to_string(),
                        "counted": c.counted,
                        "ok": c.ok,
                    })).collect::<Vec<_>>(),
                }),
                lines.join("\n"),
            );
            return Ok(!report.ok);
        }
        Command::Universal { kind, m } => {
            let (f, g, h) = match kind {
                RepKindArg::Motivic => {
                    let (f, g, h) = universal::motivic_rep().coefficients(*m);
                    (f.to_string(), g.to_string(), h.to_string())
                }
                RepKindArg::Csm => {
                    let (f, g, h) = universal::csm_rep().coefficients(*m);
                    (f.to_string(), g.to_string(), h.to_string())
                }
                RepKindArg::Tutte => {
                    let (f, g, h) = universal::tutte_rep().coefficients(*m);
                    (f.to_string(), g.to_string(), h.to_string())
                }
            };
            emit(
                cli.json,
                json!({"m": m, "f": f, "g": g, "h": h}),
                format!("f_{m} = {f}\ng_{m} = {g}\nh_{m} = {h}"),
            );
        }
        Command::CsmPredict { base_file, m } => {
            let content = fs::read_to_string(base_file)
                .map_err(|e| Error::Parse(format!("{}: {e}", base_file.display())))?;
            let spec: serde_json::Value =
                serde_json::from_str(&content).map_err(|e| Error::Parse(e.to_string()))?;
            let field = |name: &str| -> Result<IntPoly, Error> {
                spec.get(name)
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Parse(format!("missing polynomial field {name}")))?
                    .parse()
            };
            let base = ClassTriple {
                class: field("class")?,
                deleted: field("deleted")?,
                contracted: field("contracted")?,
            };
            let predicted = universal::csm_predict(&base, *m);
            emit(cli.json, int_poly_json(&predicted), predicted.to_string());
        }
        Command::Coproduct(graph) => {
            let g = load_graph(graph)?;
            let mut hopf = Hopf::new();
            let cop = hopf.coproduct(&g)?;
            emit(
                cli.json,
                json!({
                    "terms": cop.terms.iter().map(|((l, r), c)| json!({
                        "left": l.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                        "right": r.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                        "coeff": c,
                    })).collect::<Vec<_>>(),
                }),
                tensor_text(&hopf, &cop),
            );
        }
        Command::Antipode(graph) => {
            let g = load_graph(graph)?;
            let mut hopf = Hopf::new();
            let s = hopf.antipode(&g)?;
            emit(
                cli.json,
                json!({
                    "terms": s.terms.iter().map(|(m, c)| json!({
                        "monomial": m.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                        "coeff": c,
                    })).collect::<Vec<_>>(),
                }),
                graph_sum_text(&hopf, &s),
            );
        }
        Command::Renorm { character, graph } => {
            let g = load_graph(graph)?;
            let character = load_character(character)?;
            let mut birkhoff = Birkhoff::new(&character);
            let factors = birkhoff.factorize(&g)?;
            emit(
                cli.json,
                json!({
                    "minus": laurent_json(&factors.minus),
                    "plus": laurent_json(&factors.plus),
                    "value": laurent_json(&factors.prepared),
                }),
                format!("U_- = {}\nU_+ = {}", factors.minus, factors.plus),
            );
        }
        Command::Corpus => {
            let outcomes = corpus::run_all_seeded(cli.seed);
            let all_ok = outcomes.iter().all(|o| o.passed);
            if cli.json {
                let value = json!({
                    "ok": all_ok,
                    "criteria": outcomes.iter().map(|o| json!({
                        "id": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "detail": o.detail,
                        "millis": o.millis,
                    })).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            } else {
                for outcome in &outcomes {
                    println!("{}", outcome.line());
                }
            }
            return Ok(!all_ok);
        }
    }
    Ok(false)
}

fn load_character(spec: &str) -> Result<Character, Error> {
    if spec == "toy" {
        return Ok(Character::Toy);
    }
    let content =
        fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let value: serde_json::Value =
        serde_json::from_str(&content).map_err(|e| Error::Parse(e.to_string()))?;
    let entries = value
        .get("graphs")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("character file needs a 'graphs' array".into()))?;
    let mut table = std::collections::BTreeMap::new();
    for entry in entries {
        let edges = entry
            .get("edges")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("character entry needs 'edges'".into()))?;
        let pairs: Vec<(String, String)> = edges
            .iter()
            .map(|e| {
                let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                    Error::Parse("each edge is a two-element array".into())
                })?;
                Ok((
                    pair[0].as_str().unwrap_or_default().to_string(),
                    pair[1].as_str().unwrap_or_default().to_string(),
                ))
            })
            .collect::<Result<_, Error>>()?;
        let named: Vec<(&str, &str)> =
            pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let graph = MultiGraph::from_named_edges(&named);
        let key = graph.canonical_key()?;
        let laurent_terms = entry
            .get("laurent")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Parse("character entry needs 'laurent'".into()))?;
        let mut poly = LaurentPoly::default();
        for (exp, coeff) in laurent_terms {
            let e: i64 =
                exp.parse().map_err(|_| Error::Parse(format!("bad exponent {exp}")))?;
            let c = coeff
                .as_str()
                .ok_or_else(|| Error::Parse("laurent coefficients are strings".into()))?;
            let rat = parse_rat(c)?;
            poly = poly.add(&LaurentPoly::monomial(e, rat));
        }
        table.insert(key, poly);
    }
    Ok(Character::Table(table))
}
