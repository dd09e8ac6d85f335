use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use seatweight::harness::{
    ingest_committee_table, load_corpus, parse_instance, run_report, GeneratorConfig,
    LabeledInstance,
};
use seatweight::monotonicity::HmReport;
use seatweight::solvers::{
    brute_force, Certificate, Predicate, SearchConfig, SearchStrategy,
};
use seatweight::{
    check_house_monotonicity, find_by_dp, search_counterexample, search_hm_violation,
    two_party_construct, Axiom, AxiomChecker, Claim, DpTarget, HmMode, Limits, Method,
    SeatAssignment, SolveResult, SolveStatus, TieBreak,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Apportionment with weighted seats.
///
/// Instance files are line-oriented `key: value` documents with `votes` and
/// `weights` (plus optional `parties`, `labels`, `period`). Weights are
/// sorted non-increasing on load; assignments are one-based party numbers
/// listed in that sorted seat order. Use `-` to read an instance from stdin.
#[derive(Parser)]
#[command(name = "seatweight", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an assignment method on an instance.
    Apportion(ApportionArgs),
    /// Check an assignment against axioms. Exits 1 if any axiom is violated.
    Check(CheckArgs),
    /// Decide whether an assignment meeting a quota axiom exists. Exits 1 if none does.
    Solve(SolveArgs),
    /// Search small instances for a counterexample to a claim.
    Search(SearchArgs),
    /// Test house monotonicity on one instance, or search for a violation.
    Hm(HmArgs),
    /// Evaluate methods over a corpus directory and emit a study report.
    Report(ReportArgs),
    /// Build an instance document from committee and party CSV tables.
    Ingest(IngestArgs),
}

#[derive(Args)]
struct ApportionArgs {
    /// adams-w, dhondt-w, sainte-lague-w, divisor-w:<c>, greedy, adams, dhondt, lrm
    #[arg(short, long)]
    method: Method,
    #[arg(short, long)]
    instance: PathBuf,
    /// lowest-index or most-votes
    #[arg(long, default_value = "lowest-index")]
    tie: TieBreak,
    /// Print every round's scores.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(short, long)]
    instance: PathBuf,
    /// One-based parties per seat, e.g. 1,2,3,1
    #[arg(short, long, value_delimiter = ',', num_args = 1..)]
    assignment: Vec<usize>,
    /// Axioms to check (default: all), e.g. wlq-x,wef1
    #[arg(long, value_delimiter = ',')]
    axioms: Vec<Axiom>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    /// Seat-by-seat tuple dynamic program.
    Dp,
    /// Enumerate every assignment.
    BruteForce,
    /// Direct construction; two parties only.
    TwoParty,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short, long)]
    instance: PathBuf,
    /// wlq-o, wlq-x or wuq-o (dp, two-party); any axiom list joined by `+` (brute-force)
    #[arg(short, long)]
    target: String,
    #[arg(long, value_enum, default_value = "dp")]
    engine: Engine,
    /// DP state budget.
    #[arg(long, default_value_t = Limits::DEFAULT_DP_STATES)]
    max_states: usize,
    /// Largest total seat weight accepted by the reachable-sum tables.
    #[arg(long, default_value_t = Limits::DEFAULT_MAX_TOTAL_WEIGHT)]
    max_total_weight: u64,
    /// Brute-force cap on parties^seats.
    #[arg(long, default_value_t = Limits::DEFAULT_BRUTE_FORCE_ASSIGNMENTS)]
    max_assignments: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct Bounds {
    #[arg(long, default_value_t = 2)]
    min_parties: usize,
    #[arg(long, default_value_t = 3)]
    max_parties: usize,
    #[arg(long, default_value_t = 1)]
    min_seats: usize,
    #[arg(long, default_value_t = 4)]
    max_seats: usize,
    #[arg(long, default_value_t = 6)]
    max_weight: u64,
    #[arg(long, default_value_t = 6)]
    max_votes: u64,
    /// Number of instances (or instance pairs) to examine.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Required for random sampling.
    #[arg(long)]
    seed: Option<u64>,
}

impl Bounds {
    fn config(&self, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            count: self.budget,
            min_parties: self.min_parties,
            max_parties: self.max_parties,
            min_seats: self.min_seats,
            max_seats: self.max_seats,
            max_weight: self.max_weight,
            max_votes: self.max_votes,
            seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Random,
    Exhaustive,
}

#[derive(Args)]
struct SearchArgs {
    /// `wlq-x` or `wef1+wlq-1` (always satisfiable), `wefx=>wuq-x` (implication)
    #[arg(short, long)]
    claim: Claim,
    #[arg(long, value_enum, default_value = "random")]
    strategy: Strategy,
    #[command(flatten)]
    bounds: Bounds,
    #[arg(long, default_value_t = Limits::DEFAULT_BRUTE_FORCE_ASSIGNMENTS)]
    max_assignments: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HmArgs {
    #[arg(short, long)]
    method: Method,
    /// full or min
    #[arg(long, default_value = "full")]
    mode: HmMode,
    /// Check this instance (with --extra) instead of searching.
    #[arg(short, long, requires = "extra")]
    instance: Option<PathBuf>,
    /// Weight of the added seat.
    #[arg(long)]
    extra: Option<u64>,
    #[arg(long, default_value = "lowest-index")]
    tie: TieBreak,
    #[command(flatten)]
    bounds: Bounds,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Directory of `*.inst` documents, optionally with historical.csv
    /// (`period,seat,party` rows using seat labels and party names).
    #[arg(short, long)]
    corpus: PathBuf,
    /// Comma-separated methods; pass an empty string for historical only.
    #[arg(short, long, value_delimiter = ',', default_value = "adams-w,dhondt-w,greedy")]
    methods: Vec<String>,
    /// Write the JSON report here; the table goes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Decimal places in the table.
    #[arg(long, default_value_t = 1)]
    precision: usize,
    #[arg(long, default_value = "lowest-index")]
    tie: TieBreak,
}

#[derive(Args)]
struct IngestArgs {
    /// CSV with header `committee,size`.
    #[arg(long)]
    committees: PathBuf,
    /// CSV with header `party,seats`.
    #[arg(long)]
    parties: PathBuf,
    #[arg(long)]
    period: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let resource = err
                .downcast_ref::<seatweight::Error>()
                .is_some_and(seatweight::Error::is_resource_limit);
            ExitCode::from(if resource { EXIT_RESOURCE } else { EXIT_USAGE })
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Apportion(a) => apportion(a),
        Command::Check(a) => check(a),
        Command::Solve(a) => solve(a),
        Command::Search(a) => search(a),
        Command::Hm(a) => hm(a),
        Command::Report(a) => report(a),
        Command::Ingest(a) => ingest(a),
    }
}

fn read_instance(path: &Path) -> anyhow::Result<LabeledInstance> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let li = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    if li.instance.was_reordered() {
        eprintln!("note: weights were sorted non-increasing; seat numbers refer to the sorted order");
    }
    Ok(li)
}

fn print_json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn party_reps(li: &LabeledInstance, s: &SeatAssignment) -> String {
    s.representations(&li.instance)
        .iter()
        .zip(&li.parties)
        .map(|(r, p)| format!("{p}={r}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn apportion(a: ApportionArgs) -> anyhow::Result<u8> {
    let li = read_instance(&a.instance)?;
    let (assignment, trace) = a.method.assign(&li.instance, a.tie)?;
    if a.json {
        print_json(&serde_json::json!({
            "method": a.method.name(),
            "assignment": assignment.to_one_based(),
            "representation": assignment.representations(&li.instance),
            "trace": a.trace.then_some(&trace),
        }))?;
        return Ok(EXIT_OK);
    }
    println!("method: {}", a.method);
    println!("assignment: {assignment}");
    println!("representation: {}", party_reps(&li, &assignment));
    if a.trace {
        for round in &trace.rounds {
            let scores: Vec<String> = round.scores.iter().map(ToString::to_string).collect();
            println!(
                "seat {} ({}, w={}): [{}] -> {}{}",
                round.seat + 1,
                li.seat_labels[round.seat],
                round.weight,
                scores.join(", "),
                li.parties[round.chosen],
                if round.tied { " (tie)" } else { "" }
            );
        }
    }
    Ok(EXIT_OK)
}

fn check(a: CheckArgs) -> anyhow::Result<u8> {
    let li = read_instance(&a.instance)?;
    let assignment = SeatAssignment::from_one_based(&li.instance, &a.assignment)?;
    let axioms = if a.axioms.is_empty() { Axiom::ALL.to_vec() } else { a.axioms };
    let checker = AxiomChecker::new(&li.instance)?;
    let verdicts = axioms
        .iter()
        .map(|&ax| checker.check(&assignment, ax))
        .collect::<seatweight::Result<Vec<_>>>()?;
    let delta = seatweight::delta_distance(&li.instance, &assignment)?;
    let all_ok = verdicts.iter().all(|v| v.satisfied);
    if a.json {
        print_json(&serde_json::json!({ "verdicts": verdicts, "delta": delta }))?;
    } else {
        for v in &verdicts {
            println!("{:<8} {}", v.axiom.label(), if v.satisfied { "pass" } else { "FAIL" });
            for viol in &v.violations {
                println!("         party {}: {}", li.parties[viol.party], viol.witness);
            }
        }
        println!("delta    {} ({})", delta, delta.to_decimal(3));
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn solve(a: SolveArgs) -> anyhow::Result<u8> {
    let li = read_instance(&a.instance)?;
    let inst = &li.instance;
    let limits = Limits {
        max_total_weight: a.max_total_weight,
        dp_states: a.max_states,
        brute_force_assignments: a.max_assignments,
    };
    let result: SolveResult = match a.engine {
        Engine::Dp => find_by_dp(inst, a.target.parse().map_err(anyhow::Error::msg)?, &limits)?,
        Engine::TwoParty => {
            let target: DpTarget = a.target.parse().map_err(anyhow::Error::msg)?;
            SolveResult {
                status: SolveStatus::Found(two_party_construct(inst, target)?),
                explored: 0,
            }
        }
        Engine::BruteForce => {
            let axioms = match a.target.parse::<Claim>().map_err(anyhow::Error::msg)? {
                Claim::Satisfiable(axioms) => axioms,
                Claim::Implies(..) => bail!("brute-force targets are axiom lists, not implications"),
            };
            brute_force(inst, &Predicate::Axioms(axioms), limits.brute_force_assignments)?
        }
    };
    if a.json {
        print_json(&result)?;
    } else {
        match &result.status {
            SolveStatus::Found(s) => {
                println!("found: {s}");
                println!("representation: {}", party_reps(&li, s));
            }
            SolveStatus::NoneExists => println!("none exists"),
            SolveStatus::ResourceLimitExceeded => println!("resource limit exceeded"),
        }
        println!("explored: {}", result.explored);
    }
    Ok(match result.status {
        SolveStatus::Found(_) => EXIT_OK,
        SolveStatus::NoneExists => EXIT_NEGATIVE,
        SolveStatus::ResourceLimitExceeded => EXIT_RESOURCE,
    })
}

fn search(a: SearchArgs) -> anyhow::Result<u8> {
    let strategy = match a.strategy {
        Strategy::Random => SearchStrategy::Random,
        Strategy::Exhaustive => SearchStrategy::Exhaustive,
    };
    let seed = match (strategy, a.bounds.seed) {
        (SearchStrategy::Random, None) => bail!("random search needs --seed"),
        (_, seed) => seed.unwrap_or(0),
    };
    let config = SearchConfig {
        generator: a.bounds.config(seed),
        strategy,
        max_assignments: a.max_assignments,
    };
    let outcome = search_counterexample(&config, &a.claim)?;
    if a.json {
        print_json(&outcome)?;
        return Ok(EXIT_OK);
    }
    println!("claim: {}", a.claim);
    println!("examined: {} (skipped {})", outcome.examined, outcome.skipped);
    match &outcome.counterexample {
        None => println!("no counterexample found"),
        Some(found) => {
            println!("counterexample:");
            print!("{}", seatweight::harness::render_instance(&found.instance));
            match &found.certificate {
                Certificate::NoAssignment { explored } => {
                    println!("certificate: none of {explored} assignments qualifies")
                }
                Certificate::Separating(s) => println!("certificate: assignment {s}"),
            }
        }
    }
    Ok(EXIT_OK)
}

fn hm(a: HmArgs) -> anyhow::Result<u8> {
    let report: Option<HmReport> = match (&a.instance, a.extra) {
        (Some(path), Some(extra)) => {
            let li = read_instance(path)?;
            Some(check_house_monotonicity(a.method, &li.instance, extra, a.mode, a.tie)?)
        }
        (None, _) => {
            let Some(seed) = a.bounds.seed else {
                bail!("hm search needs --seed (or pass --instance and --extra)");
            };
            search_hm_violation(a.method, a.mode, &a.bounds.config(seed), a.tie)?
        }
        (Some(_), None) => unreachable!("clap requires --extra with --instance"),
    };
    if a.json {
        print_json(&report)?;
        return Ok(EXIT_OK);
    }
    let Some(r) = report else {
        println!("no violation found");
        return Ok(EXIT_OK);
    };
    println!("method: {} ({} mode)", r.method, r.mode);
    println!("votes: {:?}", r.base.votes());
    println!("weights: {:?} + {}", r.base.weights(), r.extra_weight);
    println!("before: {} rep {:?}", r.base_assignment, r.base_representation);
    println!("after:  {} rep {:?}", r.augmented_assignment, r.augmented_representation);
    if r.violations.is_empty() {
        println!("monotone");
    }
    for v in &r.violations {
        println!("party {} drops from {} to {}", v.party + 1, v.before, v.after);
    }
    Ok(EXIT_OK)
}

fn report(a: ReportArgs) -> anyhow::Result<u8> {
    let methods = a
        .methods
        .iter()
        .filter(|m| !m.trim().is_empty())
        .map(|m| m.trim().parse::<Method>().map_err(anyhow::Error::msg))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let corpus = load_corpus(&a.corpus)?;
    let report = run_report(&corpus, &methods, a.tie)?;
    if let Some(path) = &a.output {
        fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{}", report.render_table(a.precision));
    Ok(EXIT_OK)
}

fn ingest(a: IngestArgs) -> anyhow::Result<u8> {
    let open = |p: &Path| fs::File::open(p).with_context(|| format!("opening {}", p.display()));
    let mut li = ingest_committee_table(open(&a.committees)?, open(&a.parties)?)?;
    li.period = a.period;
    print!("{}", li.render());
    Ok(EXIT_OK)
}
