use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chroma_planes::coloring::chromatic_coloring;
use chroma_planes::graph::{from_spec, parse_graph};
use chroma_planes::harness::{
    decomposition_verdicts, fuzz_corpus, render_table, run_claims, ClaimId, ClaimStatus, Combo,
    CorpusEntry, FuzzConfig, InstanceFacts, ReportSet, ViolationRecord,
};
use chroma_planes::minor::hadwiger_witness;
use chroma_planes::{
    chromatic_fill, Decomposition, Error, FillConfig, Graph, OracleLimits, PlacementMode,
    PlaneAssignment, ResidualPolicy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const GENERATORS: &str = "\
Generator specs (--gen):
  complete:N  cycle:N  path:N  empty:N  petersen  mycielski:K
  er:N,P,SEED  join:A,B  union:A,B
Wrap join/union operands in parentheses when they contain commas,
e.g. join:(er:6,0.5,1),cycle:5.

Exit codes: 0 ok, 1 usage or input error, 2 claim violated, 3 oracle limit or
internal check error.

Set CHROMA_PLANES_LOG (e.g. debug) for log output on stderr.";

#[derive(Parser)]
#[command(name = "chroma-planes", version, about = "Chromatic-plane decomposition and claim checks", after_help = GENERATORS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a graph into chromatic planes
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fill: FillArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Include the per-iteration trace in the output
        #[arg(long)]
        trace: bool,
    },
    /// Chromatic number
    Chi {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also emit an optimal coloring
        #[arg(long)]
        witness: bool,
    },
    /// Hadwiger number (largest clique minor)
    Hadwiger {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also emit the branch sets of a largest clique minor
        #[arg(long)]
        witness: bool,
    },
    /// Run claim checks on one graph
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Check this decomposition or bare plane assignment (JSON) instead of filling
        #[arg(long, value_name = "PATH")]
        assignment: Option<PathBuf>,
        #[command(flatten)]
        claims: ClaimArgs,
        #[command(flatten)]
        combos: ComboArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run claim checks on a seeded corpus
    Fuzz {
        /// Master seed of the corpus
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of instances, hand-picked graphs included
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Vertex-count range of random instances, `A..B` (inclusive) or `N`
        #[arg(long, default_value = "5..9", value_parser = parse_range)]
        n: (usize, usize),
        /// Edge probabilities of random instances
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.7")]
        p: Vec<f64>,
        /// Random instances only
        #[arg(long)]
        random_only: bool,
        /// Worker threads; the report does not depend on it
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        claims: ClaimArgs,
        #[command(flatten)]
        combos: ComboArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct InputArgs {
    /// Graph file (DIMACS or edge list); `-` reads stdin
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Generator spec, see below
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

#[derive(Args)]
struct FillArgs {
    /// Colors per plane
    #[arg(long, default_value_t = 4)]
    capacity: usize,
    #[arg(long, value_enum, default_value_t = Placement::Capacity4)]
    placement: Placement,
    #[arg(long, value_enum, default_value_t = Residual::ProcessAll)]
    residual: Residual,
}

#[derive(Args)]
struct ComboArgs {
    /// Colors per plane
    #[arg(long, default_value_t = 4)]
    capacity: usize,
    /// Placement rule [default: both]
    #[arg(long, value_enum)]
    placement: Option<Placement>,
    /// Residual policy [default: both]
    #[arg(long, value_enum)]
    residual: Option<Residual>,
}

#[derive(Args)]
struct ClaimArgs {
    /// Claim labels, repeatable or comma separated [default: all but FIG1,
    /// which runs only when named]
    #[arg(long, value_delimiter = ',', value_parser = parse_claim)]
    claim: Vec<ClaimId>,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest vertex count for the clique-minor search (at most 64)
    #[arg(long, default_value_t = 16)]
    ceiling_hadwiger: usize,
    /// Search-node budget of one chromatic-number computation
    #[arg(long, default_value_t = 20_000_000)]
    budget_chi: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Placement {
    /// admit a vertex while it sees fewer than `capacity` plane colors
    #[value(name = "capacity4")]
    Capacity4,
    /// admit a vertex while it sees fewer colors than the plane uses
    #[value(name = "strict-lemma2")]
    StrictLemma2,
}

impl From<Placement> for PlacementMode {
    fn from(p: Placement) -> Self {
        match p {
            Placement::Capacity4 => PlacementMode::Capacity,
            Placement::StrictLemma2 => PlacementMode::UsedColors,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Residual {
    /// decompose every residual component
    ProcessAll,
    /// keep only the residual component with the largest minor
    DiscardPaper,
}

impl From<Residual> for ResidualPolicy {
    fn from(r: Residual) -> Self {
        match r {
            Residual::ProcessAll => ResidualPolicy::ProcessAll,
            Residual::DiscardPaper => ResidualPolicy::DiscardSmaller,
        }
    }
}

fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("{x:?} is not a count"))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SelfLoop { .. }
            | Error::VertexOutOfRange { .. }
            | Error::Parse { .. }
            | Error::NotAnEdge { .. }
            | Error::InvalidConfig(_)
            | Error::UnknownPlane(_)
            | Error::EmptyPlane(_)
            | Error::DisconnectedPlane(_)
            | Error::AlreadyAssigned(_)
            | Error::Unassigned(_)
            | Error::ColorConflict { .. } => 1,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

impl OracleArgs {
    fn limits(&self) -> Result<OracleLimits, Failure> {
        let limits = OracleLimits {
            hadwiger_ceiling: self.ceiling_hadwiger,
            chi_budget: self.budget_chi,
        };
        limits.validate()?;
        Ok(limits)
    }
}

impl ComboArgs {
    fn combos(&self) -> Vec<Combo> {
        Combo::ALL
            .into_iter()
            .filter(|c| {
                self.placement
                    .is_none_or(|p| PlacementMode::from(p) == c.placement)
            })
            .filter(|c| {
                self.residual
                    .is_none_or(|r| ResidualPolicy::from(r) == c.residual)
            })
            .collect()
    }
}

impl ClaimArgs {
    fn selected(&self) -> Vec<ClaimId> {
        if self.claim.is_empty() {
            FuzzConfig::default().claims
        } else {
            let mut c = self.claim.clone();
            c.sort();
            c.dedup();
            c
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

impl InputArgs {
    fn source(&self) -> Option<String> {
        match (&self.input, &self.gen) {
            (Some(p), _) => Some(p.display().to_string()),
            (None, Some(g)) => Some(g.clone()),
            (None, None) => None,
        }
    }

    fn load(&self) -> Result<Option<Graph>, Failure> {
        match (&self.input, &self.gen) {
            (Some(path), _) => Ok(Some(parse_graph(&read_text(path)?)?)),
            (None, Some(spec)) => Ok(Some(from_spec(spec)?)),
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<Graph, Failure> {
        self.load()?
            .ok_or_else(|| usage("one of --input or --gen is required"))
    }
}

fn emit(output: &OutputArgs, body: &str) -> Result<(), Failure> {
    match &output.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure {
                    code: 1,
                    message: format!("stdout: {e}"),
                })
        }
    }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_decompose(
    input: InputArgs,
    fill: FillArgs,
    oracle: OracleArgs,
    output: OutputArgs,
    trace: bool,
) -> Outcome {
    let g = input.require()?;
    let config = FillConfig {
        capacity: fill.capacity,
        placement: fill.placement.into(),
        residual: fill.residual.into(),
        limits: oracle.limits()?,
    };
    let mut d = chromatic_fill(&g, &config)?;
    let summary = format!(
        "{} planes, sizes {:?}{}",
        d.plane_count(),
        d.plane_sizes(),
        if d.unplaced.is_empty() {
            String::new()
        } else {
            format!(", {} unplaced", d.unplaced.len())
        }
    );
    if !trace {
        d.trace.clear();
    }
    let body = match output.format {
        Format::Json => {
            let mut value = serde_json::to_value(&d).expect("serializable");
            if !trace {
                value.as_object_mut().expect("object").remove("trace");
            }
            to_json(&value)
        }
        Format::Table => {
            let mut s = String::new();
            for (p, vs) in d.assignment.planes().iter().enumerate() {
                let cells: Vec<String> = vs
                    .iter()
                    .map(|&v| format!("{v}:{}", d.assignment.color_of(v).expect("assigned")))
                    .collect();
                s.push_str(&format!("plane {p}: {}\n", cells.join(" ")));
            }
            if !d.unplaced.is_empty() {
                s.push_str(&format!("unplaced: {:?}\n", d.unplaced.as_slice()));
            }
            s
        }
    };
    emit(&output, &body)?;
    eprintln!("{summary}");
    Ok(0)
}

fn cmd_chi(input: InputArgs, oracle: OracleArgs, output: OutputArgs, witness: bool) -> Outcome {
    let g = input.require()?;
    let limits = oracle.limits()?;
    let coloring = match chromatic_coloring(&g, &limits) {
        Ok(c) => c,
        Err(Error::BudgetExhausted { lower, upper }) => {
            return Err(Failure {
                code: 3,
                message: format!("search budget exhausted: {lower} <= χ <= {upper}"),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let body = match output.format {
        Format::Json if witness => {
            to_json(&json!({ "chromatic_number": coloring.k, "coloring": coloring }))
        }
        Format::Json => to_json(&json!({ "chromatic_number": coloring.k })),
        Format::Table if witness => format!("{}\ncolors: {:?}\n", coloring.k, coloring.colors),
        Format::Table => format!("{}\n", coloring.k),
    };
    emit(&output, &body)?;
    eprintln!("χ = {}", coloring.k);
    Ok(0)
}

fn cmd_hadwiger(
    input: InputArgs,
    oracle: OracleArgs,
    output: OutputArgs,
    witness: bool,
) -> Outcome {
    let g = input.require()?;
    let w = hadwiger_witness(&g, &oracle.limits()?)?;
    let h = w.as_ref().map_or(0, |w| w.t());
    let body = match output.format {
        Format::Json if witness => to_json(&json!({ "hadwiger_number": h, "witness": w })),
        Format::Json => to_json(&json!({ "hadwiger_number": h })),
        Format::Table => {
            let mut s = format!("{h}\n");
            if witness {
                for (i, b) in w.iter().flat_map(|w| w.branch_sets.iter()).enumerate() {
                    s.push_str(&format!("branch {i}: {:?}\n", b.as_slice()));
                }
            }
            s
        }
    };
    emit(&output, &body)?;
    eprintln!("h = {h}");
    Ok(0)
}

fn report_out(report: &ReportSet, output: &OutputArgs) -> Outcome {
    let body = match output.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Table => render_table(report),
    };
    emit(output, &body)?;
    // the table already ends with it
    if output.format == Format::Json || output.output.is_some() {
        eprintln!("{}", report.summary_line());
    }
    Ok(report.exit_code() as u8)
}

fn load_decomposition(
    path: &PathBuf,
    g: &Graph,
    combo: Combo,
) -> Result<(Decomposition, bool), Failure> {
    let text = read_text(path)?;
    if let Ok(d) = serde_json::from_str::<Decomposition>(&text) {
        let has_trace = !d.trace.is_empty();
        let assignment = d.assignment.clone().with_vertex_count(g.n())?;
        assignment.validate(g)?;
        return Ok((Decomposition { assignment, ..d }, has_trace));
    }
    let a: PlaneAssignment = serde_json::from_str(&text).map_err(|e| {
        usage(format!(
            "{}: neither a decomposition nor an assignment: {e}",
            path.display()
        ))
    })?;
    let a = a.with_vertex_count(g.n())?;
    a.validate(g)?;
    let unplaced = a.unassigned();
    Ok((
        Decomposition {
            placement: combo.placement,
            residual_policy: combo.residual,
            assignment: a,
            unplaced,
            trace: Vec::new(),
        },
        false,
    ))
}

/// Claims on a decomposition read from disk. Trace-based claims are
/// inconclusive when the file carries no trace.
fn check_given(
    g: &Graph,
    source: String,
    path: &PathBuf,
    claims: &[ClaimId],
    combo: Combo,
    capacity: usize,
    limits: OracleLimits,
) -> Result<ReportSet, Failure> {
    let (d, has_trace) = load_decomposition(path, g, combo)?;
    let facts = InstanceFacts::compute(g, &limits);
    let label = "given".to_string();
    let mut report = run_claims(
        &[],
        &FuzzConfig {
            claims: claims
                .iter()
                .copied()
                .filter(|c| matches!(c, ClaimId::Fig1))
                .collect(),
            capacity,
            limits,
            ..FuzzConfig::default()
        },
    )?;
    report.instances = 1;
    report.combos = vec![label.clone()];
    for mut v in decomposition_verdicts(g, &d, &facts, claims, &limits) {
        let trace_based = matches!(v.claim, ClaimId::C2_3 | ClaimId::C3_1 | ClaimId::C3_2);
        if trace_based && !has_trace {
            v.status = ClaimStatus::Inconclusive;
            v.witness = None;
            v.detail = "no trace in the given decomposition".into();
        }
        let key = v.key();
        let tally = report
            .tallies
            .entry(key.clone())
            .or_default()
            .entry(label.clone())
            .or_default();
        match v.status {
            ClaimStatus::Holds => tally.holds += 1,
            ClaimStatus::Violated => tally.violated += 1,
            ClaimStatus::Inconclusive => tally.inconclusive += 1,
        }
        if v.status == ClaimStatus::Violated {
            report.violations.push(ViolationRecord {
                key,
                combo: label.clone(),
                instance: 0,
                source: source.clone(),
                reverified: chroma_planes::harness::reverify(&v, capacity, &limits),
                verdict: v,
            });
        }
    }
    Ok(report)
}

fn cmd_check(
    input: InputArgs,
    assignment: Option<PathBuf>,
    claims: ClaimArgs,
    combos: ComboArgs,
    oracle: OracleArgs,
    output: OutputArgs,
) -> Outcome {
    let limits = oracle.limits()?;
    let selected = claims.selected();
    let graph = input.load()?;
    let source = input.source().unwrap_or_default();
    let needs_graph = selected.iter().any(|&c| c != ClaimId::Fig1);
    if needs_graph && graph.is_none() {
        return Err(usage(
            "one of --input or --gen is required (only FIG1 runs without a graph)",
        ));
    }
    let report = match (&graph, &assignment) {
        (Some(g), Some(path)) => {
            let combo = combos.combos().first().copied().unwrap_or(Combo::ALL[0]);
            check_given(g, source, path, &selected, combo, combos.capacity, limits)?
        }
        (None, Some(_)) => return Err(usage("--assignment needs --input or --gen")),
        (g, None) => {
            let corpus: Vec<CorpusEntry> = g
                .iter()
                .map(|g| CorpusEntry {
                    index: 0,
                    source: source.clone(),
                    graph: g.clone(),
                })
                .collect();
            let config = FuzzConfig {
                count: corpus.len(),
                combos: combos.combos(),
                claims: selected,
                capacity: combos.capacity,
                limits,
                ..FuzzConfig::default()
            };
            run_claims(&corpus, &config)?
        }
    };
    report_out(&report, &output)
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    seed: u64,
    count: usize,
    n: (usize, usize),
    p: Vec<f64>,
    random_only: bool,
    jobs: usize,
    claims: ClaimArgs,
    combos: ComboArgs,
    oracle: OracleArgs,
    output: OutputArgs,
) -> Outcome {
    let config = FuzzConfig {
        seed,
        count,
        n_min: n.0,
        n_max: n.1,
        edge_probabilities: p,
        structured: !random_only,
        combos: combos.combos(),
        claims: claims.selected(),
        capacity: combos.capacity,
        jobs,
        limits: oracle.limits()?,
    };
    let corpus = fuzz_corpus(&config)?;
    let report = run_claims(&corpus, &config)?;
    report_out(&report, &output)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decompose {
            input,
            fill,
            oracle,
            output,
            trace,
        } => cmd_decompose(input, fill, oracle, output, trace),
        Command::Chi {
            input,
            oracle,
            output,
            witness,
        } => cmd_chi(input, oracle, output, witness),
        Command::Hadwiger {
            input,
            oracle,
            output,
            witness,
        } => cmd_hadwiger(input, oracle, output, witness),
        Command::Check {
            input,
            assignment,
            claims,
            combos,
            oracle,
            output,
        } => cmd_check(input, assignment, claims, combos, oracle, output),
        Command::Fuzz {
            seed,
            count,
            n,
            p,
            random_only,
            jobs,
            claims,
            combos,
            oracle,
            output,
        } => cmd_fuzz(
            seed,
            count,
            n,
            p,
            random_only,
            jobs,
            claims,
            combos,
            oracle,
            output,
        ),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CHROMA_PLANES_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own usage code would collide with "claim violated"
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
