//! Command-line front end: build a shipped problem instance, solve or
//! enumerate it (optionally under symmetry-breaking constraints or an
//! internal-symmetry restriction), verify certificates, list internal
//! symmetries of a certificate, and validate symmetry-breaking sets.
//!
//! Exit codes: 0 found/verified, 1 exhausted/refuted, 2 usage error,
//! 3 resource limit hit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symsearch::csp::{enumerate, Constraint, Problem, SearchConfig, SearchOutcome, SearchResult};
use symsearch::internal::restrict_to_internal;
use symsearch::problems::{GracefulSpec, Graph, MagicSpec, ProblemModel, VdwSpec};
use symsearch::symbreak::{corner_constraint, lex_leader, transform_sbc_set, validate_sbc};
use symsearch::symmetry::is_internal_symmetry;
use symsearch::{Assignment, Symmetry};

const EXIT_FOUND: u8 = 0;
const EXIT_EXHAUSTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "symsearch",
    version,
    about = "Symmetry-aware search over small constraint problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for the first solution and print it as a certificate.
    Solve(SearchArgs),
    /// Enumerate solutions and print each as a certificate.
    Enumerate(SearchArgs),
    /// Check a certificate file against its problem.
    Verify {
        /// Problem spec (see `--help` of solve for the grammar).
        #[arg(long)]
        problem: String,
        /// Certificate file in the family's format.
        #[arg(long)]
        certificate: PathBuf,
    },
    /// List which candidate symmetries a certificate contains internally.
    FindSyms {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        certificate: PathBuf,
        /// Comma-separated symmetry names (catalogue entries or composites).
        #[arg(long)]
        candidates: String,
    },
    /// Enumerate with and without a breaking set and report survivors per
    /// solution orbit.
    ValidateSbc {
        #[arg(long)]
        problem: String,
        #[arg(long, value_enum, default_value_t)]
        sbc: SbcKind,
        /// Transform the breaking set by this group member first.
        #[arg(long)]
        transform: Option<String>,
        /// Abort after visiting this many search nodes.
        #[arg(long)]
        nodes: Option<u64>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Problem spec: magic:<n> | vdw:<n>,<k>,<l> | graceful:cycle:<n> |
    /// graceful:wheel:<n> | graceful:dwheel:<n> | graceful:file:<path>
    #[arg(long)]
    problem: String,
    /// Symmetry-breaking constraints to add before searching.
    #[arg(long, value_enum, default_value_t)]
    sbc: SbcKind,
    /// Restrict search to assignments fixed by this symmetry: a catalogue
    /// name, a `+`-composite, or a file of `var:`/`val:` lines. Repeatable;
    /// multiple flags compose left to right (the first applies first).
    #[arg(long)]
    fix: Vec<String>,
    /// Stop after this many solutions (enumerate only).
    #[arg(long)]
    limit: Option<usize>,
    /// Abort after visiting this many search nodes.
    #[arg(long)]
    nodes: Option<u64>,
    /// Append a `nodes=<n> solutions=<n> elapsed_ms=<n>` line.
    #[arg(long)]
    stats: bool,
    /// Print certificates only.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum SbcKind {
    /// No symmetry breaking.
    #[default]
    None,
    /// The corner constraint (square grids): top-left < bottom-right.
    Corner,
    /// Full lex-leader over the instance's breaking group.
    Lexleader,
}

/// A usage-level failure: printed as a one-line diagnostic, exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(err: E) -> Self {
        Usage(err.to_string())
    }
}

/// Write to stdout, dying quietly with the conventional SIGPIPE status when
/// the consumer has hung up (e.g. `symsearch enumerate ... | head`).
fn out(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).is_err() {
        std::process::exit(141);
    }
}

fn outln(line: &str) {
    out(line);
    out("\n");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Usage> {
    match cli.command {
        Command::Solve(args) => search(args, true),
        Command::Enumerate(args) => search(args, false),
        Command::Verify { problem, certificate } => verify(&problem, &certificate),
        Command::FindSyms { problem, certificate, candidates } => {
            find_syms(&problem, &certificate, &candidates)
        }
        Command::ValidateSbc { problem, sbc, transform, nodes } => {
            validate(&problem, sbc, transform.as_deref(), nodes)
        }
    }
}

fn parse_usize(token: &str, what: &str) -> Result<usize, Usage> {
    token
        .parse()
        .map_err(|_| Usage(format!("bad {what} `{token}` in problem spec")))
}

fn parse_problem(spec: &str) -> Result<ProblemModel, Usage> {
    let (family, params) = spec
        .split_once(':')
        .ok_or_else(|| Usage(format!("unrecognised problem spec `{spec}`, expected <family>:<params>")))?;
    match family {
        "magic" => Ok(ProblemModel::Magic(MagicSpec::new(parse_usize(params, "order")?)?)),
        "vdw" => {
            let fields: Vec<&str> = params.split(',').collect();
            let [n, k, l] = fields[..] else {
                return Err(Usage(format!("bad vdw parameters `{params}`, expected <n>,<k>,<l>")));
            };
            Ok(ProblemModel::Vdw(VdwSpec::new(
                parse_usize(n, "interval length")?,
                parse_usize(k, "colour count")?,
                parse_usize(l, "progression length")?,
            )?))
        }
        "graceful" => {
            let (kind, param) = params.split_once(':').ok_or_else(|| {
                Usage(format!(
                    "bad graceful spec `{params}`, expected cycle:<n>, wheel:<n>, dwheel:<n> or file:<path>"
                ))
            })?;
            let spec = match kind {
                "cycle" => GracefulSpec::cycle(parse_usize(param, "cycle length")?)?,
                "wheel" => GracefulSpec::wheel(parse_usize(param, "rim length")?)?,
                "dwheel" => GracefulSpec::double_wheel(parse_usize(param, "rim length")?)?,
                "file" => GracefulSpec::custom(read_graph_file(Path::new(param))?),
                other => return Err(Usage(format!("unknown graceful family `{other}`"))),
            };
            Ok(ProblemModel::Graceful(spec))
        }
        other => Err(Usage(format!("unknown problem family `{other}`"))),
    }
}

/// Graph file: `#` comments and blank lines ignored; first line the vertex
/// count, each following line one `u v` edge.
fn read_graph_file(path: &Path) -> Result<Graph, Usage> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| Usage(format!("cannot read graph file `{}`: {err}", path.display())))?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let vertex_count = match lines.next() {
        Some(line) => parse_usize(line, "vertex count")?,
        None => return Err(Usage(format!("graph file `{}` is empty", path.display()))),
    };
    let mut edges = Vec::new();
    for line in lines {
        let ends: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = ends[..] else {
            return Err(Usage(format!("bad edge line `{line}`, expected `u v`")));
        };
        edges.push((parse_usize(u, "vertex")?, parse_usize(v, "vertex")?));
    }
    Ok(Graph::new(vertex_count, edges)?)
}

/// A `--fix`/`--transform`/`--candidates` token: a catalogue name or
/// composite first, otherwise a symmetry-literal file.
fn resolve_symmetry(model: &ProblemModel, token: &str) -> Result<Symmetry, Usage> {
    match model.resolve_symmetry(token) {
        Ok(sym) => Ok(sym),
        Err(name_err) => {
            let path = Path::new(token);
            if path.is_file() {
                let text = std::fs::read_to_string(path)
                    .map_err(|err| Usage(format!("cannot read symmetry file `{token}`: {err}")))?;
                Ok(Symmetry::parse_literal(&text, model.arity(), &model.universe())?)
            } else {
                Err(Usage(format!("unknown symmetry `{token}`: {name_err}")))
            }
        }
    }
}

fn breaking_set(model: &ProblemModel, problem: &Problem, kind: SbcKind) -> Result<Vec<Constraint>, Usage> {
    match kind {
        SbcKind::None => Ok(Vec::new()),
        SbcKind::Corner => Ok(vec![corner_constraint(problem)?]),
        SbcKind::Lexleader => {
            let order: Vec<usize> = (0..problem.arity()).collect();
            Ok(lex_leader(&model.break_group()?, &order)?)
        }
    }
}

fn print_stats(result: &SearchResult) {
    outln(&format!(
        "nodes={} solutions={} elapsed_ms={}",
        result.stats.nodes,
        result.stats.solutions,
        result.stats.elapsed.as_millis()
    ));
}

fn search(args: SearchArgs, first_only: bool) -> Result<u8, Usage> {
    let model = parse_problem(&args.problem)?;
    let mut problem = model.build();
    let sbc = breaking_set(&model, &problem, args.sbc)?;
    problem = problem.with_constraints(sbc)?;
    if !args.fix.is_empty() {
        let mut composed: Option<Symmetry> = None;
        for token in &args.fix {
            let sigma = resolve_symmetry(&model, token)?;
            composed = Some(match composed {
                None => sigma,
                Some(acc) => sigma.compose(&acc)?,
            });
        }
        problem = restrict_to_internal(&problem, &composed.expect("fix list is non-empty"))?;
    }
    let config = SearchConfig {
        solution_limit: if first_only { Some(1) } else { args.limit },
        node_limit: args.nodes,
        ..SearchConfig::default()
    };
    let result = enumerate(&problem, &config)?;

    for (index, solution) in result.solutions.iter().enumerate() {
        if index > 0 {
            out("\n");
        }
        out(&model.write_certificate(solution)?);
    }
    if !args.quiet {
        let status = match result.outcome {
            SearchOutcome::Complete => "search complete",
            SearchOutcome::SolutionLimitReached => "solution limit reached",
            SearchOutcome::NodeLimitReached => "node limit reached",
        };
        if !result.solutions.is_empty() {
            out("\n");
        }
        outln(&format!("{} solution(s), {status}", result.solutions.len()));
    }
    if args.stats {
        print_stats(&result);
    }
    Ok(match result.outcome {
        SearchOutcome::NodeLimitReached => EXIT_LIMIT,
        _ if result.solutions.is_empty() => EXIT_EXHAUSTED,
        _ => EXIT_FOUND,
    })
}

fn verify(problem: &str, certificate: &Path) -> Result<u8, Usage> {
    let model = parse_problem(problem)?;
    let text = std::fs::read_to_string(certificate).map_err(|err| {
        Usage(format!("cannot read certificate `{}`: {err}", certificate.display()))
    })?;
    let values = model.read_certificate(&text)?;
    match model.verify_values(&values)? {
        v if v.is_accepted() => {
            outln("accepted");
            Ok(EXIT_FOUND)
        }
        v => {
            outln(&format!("rejected: {}", v.reason().expect("rejection carries a reason")));
            Ok(EXIT_EXHAUSTED)
        }
    }
}

fn find_syms(problem: &str, certificate: &Path, candidates: &str) -> Result<u8, Usage> {
    let model = parse_problem(problem)?;
    let text = std::fs::read_to_string(certificate).map_err(|err| {
        Usage(format!("cannot read certificate `{}`: {err}", certificate.display()))
    })?;
    let assignment = Assignment::total(&model.read_certificate(&text)?);
    let mut internal_non_identity = 0usize;
    for token in candidates.split(',') {
        let token = token.trim();
        let sigma = resolve_symmetry(&model, token)?;
        if is_internal_symmetry(&sigma, &assignment)? {
            outln(token);
            if !sigma.is_identity() {
                internal_non_identity += 1;
            }
        }
    }
    Ok(if internal_non_identity > 0 { EXIT_FOUND } else { EXIT_EXHAUSTED })
}

fn validate(
    problem_spec: &str,
    sbc: SbcKind,
    transform: Option<&str>,
    nodes: Option<u64>,
) -> Result<u8, Usage> {
    let model = parse_problem(problem_spec)?;
    let problem = model.build();
    let group = model.break_group()?;
    let mut set = breaking_set(&model, &problem, sbc)?;
    if let Some(token) = transform {
        let sigma = resolve_symmetry(&model, token)?;
        set = transform_sbc_set(&set, &sigma, Some(&group))?;
    }
    let config = SearchConfig { node_limit: nodes, ..SearchConfig::default() };
    let report = validate_sbc(&problem, &set, &group, &config)?;
    outln(&format!("solutions={}", report.solutions.len()));
    outln(&format!("survivors={}", report.survivors.len()));
    outln(&format!("orbits={}", report.orbit_count));
    outln(&format!("at_least_one_per_orbit={}", report.at_least_one_per_orbit));
    outln(&format!("at_most_one_per_orbit={}", report.at_most_one_per_orbit));
    outln(&format!("partial={}", report.partial));
    Ok(if report.partial {
        EXIT_LIMIT
    } else if report.at_least_one_per_orbit && report.at_most_one_per_orbit {
        EXIT_FOUND
    } else {
        EXIT_EXHAUSTED
    })
}
