//! Command line front end. [`run`] is the whole program minus process I/O so
//! it can be driven from tests.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jinf::auto::{
    build_example_one, check_order_preserving_on_samples, classify_case, exactify_permutation, order_sigma,
    reconstruct_component_map, reconstruct_order_preserving, verify_certificate, AutomorphismRegistry, Exactified,
    OrderVerdict, SearchBounds, SharedAutomorphism,
};
use jinf::graph::{
    adjacent_johnson, adjacent_kneser, as_vertex, classify_clique, distance_johnson, geodesic, kneser_distance,
    kneser_separation_witness, same_component, Vertex,
};
use jinf::lang::{eval_set_text, parse_auto_spec, parse_certificate, render_certificate};
use jinf::oracle::{
    aut_group_order, build_johnson_finite, build_kneser_finite, build_truncated_component, complement_action,
    induced_permutation_finite, maximal_cliques, permutation_action, Budget, FiniteGraph,
};
use jinf::suite::{run_suite, Mutation, SuiteConfig, DEFAULT_SEED};
use jinf::Error;
use serde_json::json;

pub const GRAMMAR: &str = "\
set expressions:
  expr := evens | odds
        | {n, ...}                 finite set, {} is empty
        | mod(m, r)                {n : n = r mod m}, 0 <= r < m
        | per(bits; bits)          prefix bits then repeating period bits
        | complement(expr)
        | union(expr, expr) | inter(expr, expr) | diff(expr, expr) | symdiff(expr, expr)
  example: union({1}, diff(evens, {2}))";

#[derive(Parser, Debug)]
#[command(name = "jinf", version, about = "Exact computation on the infinite Johnson and Kneser graphs", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate, inspect or classify a set expression.
    Set {
        #[command(subcommand)]
        action: SetAction,
    },
    /// Johnson adjacency of two vertices.
    Adj(Pair),
    /// Johnson distance and a geodesic.
    Dist(Pair),
    /// Whether two vertices share a component.
    Component(Pair),
    /// Classify a list of vertices as a star, a top or neither.
    Clique {
        #[arg(long = "member", required = true)]
        members: Vec<String>,
    },
    /// Kneser adjacency, distance and separation witnesses.
    Kneser {
        #[command(subcommand)]
        action: KneserAction,
    },
    /// Automorphisms given as JSON descriptions.
    Auto {
        #[command(subcommand)]
        action: AutoAction,
    },
    /// Order-preserving maps.
    Order {
        #[command(subcommand)]
        action: OrderAction,
    },
    /// Finite Johnson and Kneser graphs.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// The verification suite.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
}

#[derive(Subcommand, Debug)]
enum SetAction {
    /// Print the canonical rendering.
    Eval { expr: String },
    /// Print the canonical prefix and period bits.
    Canon { expr: String },
    /// Finite, cofinite or balanced.
    Classify { expr: String },
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
}

#[derive(Subcommand, Debug)]
enum KneserAction {
    Adj(Pair),
    Dist(Pair),
    /// A Kneser neighbour of Y that is not a neighbour of X.
    Witness(Pair),
}

/// Descriptions are inline JSON, or `@path` to read a file.
#[derive(Args, Debug)]
struct SpecArg {
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand, Debug)]
enum AutoAction {
    Apply {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        x: String,
    },
    /// Stars to stars (A) or stars to tops (B) on the component of A.
    Classify {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        a: String,
    },
    /// Recover σ on the component of A.
    Reconstruct {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 32)]
        upto: u64,
        /// Also search for a closed-form description.
        #[arg(long)]
        exact: bool,
    },
    /// The piecewise automorphism moving J(A) by a permutation sending A to B.
    Example1 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    VerifyCert {
        #[command(flatten)]
        spec: SpecArg,
        /// Certificate JSON, inline or `@path`.
        #[arg(long)]
        cert: String,
    },
}

#[derive(Subcommand, Debug)]
enum OrderAction {
    /// Test X ⊂ Y ⟺ f(X) ⊂ f(Y) on one pair.
    Check {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Sigma {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n: u64,
    },
    Reconstruct {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 32)]
        window: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Johnson,
    Kneser,
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    Johnson {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        /// Print the adjacency list.
        #[arg(long)]
        adjacency: bool,
    },
    Kneser {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        adjacency: bool,
    },
    /// Ball of the given radius around BASE, with swaps inside [1, window].
    Truncate {
        #[arg(long)]
        base: String,
        #[arg(long)]
        window: u64,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        adjacency: bool,
    },
    AutOrder {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 40)]
        max_vertices: usize,
    },
    Cliques {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Recover the permutation behind the automorphism of J(n,k) induced by
    /// PERM (optionally followed by complementation).
    InducedPerm {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        perm: Vec<u64>,
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteAction {
    Run {
        /// Only checks whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Plant a fault in the finite oracles.
        #[arg(long)]
        mutate: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(format!("{e}\n\n{GRAMMAR}")),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = Result<(i32, String), Failure>;

fn ok(text: impl Into<String>) -> Outcome {
    Ok((0, text.into()))
}

fn verdict(passed: bool, text: impl Into<String>) -> Outcome {
    Ok((if passed { 0 } else { 1 }, text.into()))
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Output {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn vertex(text: &str) -> Result<Vertex, Failure> {
    Ok(as_vertex(eval_set_text(text)?)?)
}

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn automorphism(spec: &SpecArg) -> Result<SharedAutomorphism, Failure> {
    Ok(parse_auto_spec(
        &read_arg(&spec.spec)?,
        &AutomorphismRegistry::default(),
    )?)
}

fn show_graph(g: &FiniteGraph, adjacency: bool) -> String {
    let mut out = format!("vertices: {}\nedges: {}", g.vertex_count(), g.edge_count());
    if adjacency {
        out.push('\n');
        out.push_str(g.to_adjacency_text().trim_end());
    }
    out
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Set { action } => set(action),
        Command::Adj(p) => ok(format!(
            "adjacent: {}",
            adjacent_johnson(&vertex(&p.x)?, &vertex(&p.y)?)
        )),
        Command::Dist(p) => {
            let (x, y) = (vertex(&p.x)?, vertex(&p.y)?);
            let d = distance_johnson(&x, &y)?;
            let path: Vec<String> = geodesic(&x, &y)?.iter().map(Vertex::to_string).collect();
            ok(format!("distance: {d}\ngeodesic: {}", path.join(" -> ")))
        }
        Command::Component(p) => ok(format!(
            "same component: {}",
            same_component(&vertex(&p.x)?, &vertex(&p.y)?)
        )),
        Command::Clique { members } => {
            let vs = members.iter().map(|m| vertex(m)).collect::<Result<Vec<_>, _>>()?;
            ok(format!("{:?}", classify_clique(&vs)?))
        }
        Command::Kneser { action } => kneser(action),
        Command::Auto { action } => auto(action),
        Command::Order { action } => order(action),
        Command::Oracle { action } => oracle(action),
        Command::Suite { action } => suite(action),
    }
}

fn set(action: SetAction) -> Outcome {
    match action {
        SetAction::Eval { expr } => ok(eval_set_text(&expr)?.to_string()),
        SetAction::Canon { expr } => {
            let s = eval_set_text(&expr)?;
            let bits = |b: &[bool]| b.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>();
            ok(format!(
                "prefix: {}\nperiod: {}",
                bits(s.prefix_bits()),
                bits(s.period_bits())
            ))
        }
        SetAction::Classify { expr } => {
            let s = eval_set_text(&expr)?;
            match s.classify_orbit() {
                Ok(orbit) => ok(orbit.to_string()),
                Err(_) if s.is_empty() => ok("empty"),
                Err(_) => ok("full"),
            }
        }
    }
}

fn kneser(action: KneserAction) -> Outcome {
    match action {
        KneserAction::Adj(p) => ok(format!("adjacent: {}", adjacent_kneser(&vertex(&p.x)?, &vertex(&p.y)?))),
        KneserAction::Dist(p) => {
            let path = kneser_distance(&vertex(&p.x)?, &vertex(&p.y)?)?;
            let vs: Vec<String> = path.vertices.iter().map(Vertex::to_string).collect();
            ok(format!("distance: {}\npath: {}", path.distance, vs.join(" -> ")))
        }
        KneserAction::Witness(p) => ok(format!(
            "witness: {}",
            kneser_separation_witness(&vertex(&p.x)?, &vertex(&p.y)?)?
        )),
    }
}

fn auto(action: AutoAction) -> Outcome {
    match action {
        AutoAction::Apply { spec, x } => ok(automorphism(&spec)?.apply(&vertex(&x)?)?.to_string()),
        AutoAction::Classify { spec, a } => ok(format!(
            "case: {}",
            classify_case(automorphism(&spec)?.as_ref(), &vertex(&a)?)?
        )),
        AutoAction::Reconstruct { spec, a, upto, exact } => {
            let (q, flip) = reconstruct_component_map(automorphism(&spec)?, &vertex(&a)?)?;
            let values = (1..=upto)
                .map(|n| q.apply(n).map(|m| format!("{n}->{m}")))
                .collect::<Result<Vec<_>, _>>()?;
            let mut out = format!("flip: {flip}\nsigma: {}", values.join(" "));
            if exact {
                match exactify_permutation(&q, SearchBounds::default())? {
                    Exactified::Exact(s) => out.push_str(&format!("\nexact: {}", json!(s.spec()))),
                    Exactified::Inconclusive => out.push_str("\nexact: inconclusive"),
                }
            }
            ok(out)
        }
        AutoAction::Example1 { a, b } => {
            let (f, cert) = build_example_one(&vertex(&a)?, &vertex(&b)?)?;
            let f_spec = jinf::auto::Automorphism::to_spec(&f).expect("piecewise maps have descriptions");
            let verified = verify_certificate(&f, &cert);
            verdict(
                verified,
                format!(
                    "automorphism: {f_spec}\ncertificate: {}\nverified: {verified}",
                    render_certificate(&cert)
                ),
            )
        }
        AutoAction::VerifyCert { spec, cert } => {
            let f = automorphism(&spec)?;
            let cert = parse_certificate(&read_arg(&cert)?)?;
            let verified = verify_certificate(f.as_ref(), &cert);
            verdict(verified, format!("verified: {verified}"))
        }
    }
}

fn order(action: OrderAction) -> Outcome {
    match action {
        OrderAction::Check { spec, x, y } => {
            match check_order_preserving_on_samples(automorphism(&spec)?.as_ref(), &[(vertex(&x)?, vertex(&y)?)])? {
                OrderVerdict::AllPass => ok("order preserved: true"),
                OrderVerdict::Violation { fx, fy, .. } => {
                    verdict(false, format!("order preserved: false\nf(x): {fx}\nf(y): {fy}"))
                }
            }
        }
        OrderAction::Sigma { spec, n } => ok(order_sigma(automorphism(&spec)?.as_ref(), n)?.to_string()),
        OrderAction::Reconstruct { spec, window } => {
            let q = reconstruct_order_preserving(automorphism(&spec)?, window)?;
            let values = (1..=window)
                .map(|n| q.apply(n).map(|m| format!("{n}->{m}")))
                .collect::<Result<Vec<_>, _>>()?;
            ok(format!("sigma: {}", values.join(" ")))
        }
    }
}

fn oracle(action: OracleAction) -> Outcome {
    match action {
        OracleAction::Johnson { n, k, adjacency } => ok(show_graph(&build_johnson_finite(n, k)?, adjacency)),
        OracleAction::Kneser { n, k, adjacency } => {
            let g = build_kneser_finite(n, k)?;
            let mut out = show_graph(&g, adjacency);
            if 2 * k == n {
                out.push_str("\nwarning: 2k = n, the graph is a perfect matching");
            }
            ok(out)
        }
        OracleAction::Truncate {
            base,
            window,
            radius,
            adjacency,
        } => ok(show_graph(
            &build_truncated_component(&vertex(&base)?, window, radius)?,
            adjacency,
        )),
        OracleAction::AutOrder {
            family,
            n,
            k,
            max_vertices,
        } => {
            let g = match family {
                FamilyArg::Johnson => build_johnson_finite(n, k)?,
                FamilyArg::Kneser => build_kneser_finite(n, k)?,
            };
            let budget = Budget {
                max_vertices,
                ..Budget::default()
            };
            ok(aut_group_order(&g, budget)?.to_string())
        }
        OracleAction::Cliques { n, k } => {
            let g = build_johnson_finite(n, k)?;
            let lines: Vec<String> = maximal_cliques(&g)?
                .iter()
                .map(|c| {
                    let members: Vec<String> = c.members.iter().map(|&u| format!("{:?}", g.labels()[u])).collect();
                    format!("{:?}: {}", c.kind, members.join(" "))
                })
                .collect();
            ok(lines.join("\n"))
        }
        OracleAction::InducedPerm { n, k, perm, complement } => {
            let g = build_johnson_finite(n, k)?;
            let mut phi = permutation_action(&g, &perm)?;
            if complement {
                let star = complement_action(&g)?;
                phi = phi.iter().map(|&v| star[v]).collect();
            }
            let induced = induced_permutation_finite(&g, &phi)?;
            let perm: Vec<String> = induced.perm.iter().map(u64::to_string).collect();
            ok(format!(
                "permutation: {}\ncomplemented: {}",
                perm.join(","),
                induced.complemented
            ))
        }
    }
}

fn suite(action: SuiteAction) -> Outcome {
    let SuiteAction::Run {
        filter,
        seed,
        json,
        mutate,
    } = action;
    let config = SuiteConfig {
        seed,
        filter,
        mutation: mutate.then_some(Mutation::FlipAdjacencyBit),
    };
    let report = run_suite(&config);
    let text = if json {
        serde_json::to_string_pretty(&report.to_json()).expect("reports serialize")
    } else {
        report.to_text()
    };
    verdict(report.passed(), text)
}
