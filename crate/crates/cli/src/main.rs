use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pclique_core::baselines::{
    alon_reduction_recover, degree_count_recover, edge_count_detect, exhaustive_detect, exhaustive_subset_size,
    CliqueSizeDetector, DetectionVerdict,
};
use pclique_core::completion::{recover_large_clique, Execution, LineSink, PipelineConfig, RecoveredSet, VertexSink};
use pclique_core::filter::{check_against_reference, FilterSchedule};
use pclique_core::graph::{read_graph, write_graph};
use pclique_core::harness::{run_trials, Algo, KRule, SweepConfig, SweepPoint};
use pclique_core::{sample_er, sample_planted, Error, Graph, Seed, Vertex, WorkspaceLedger};

const EXIT_INVALID: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "pclique", version, about = "Planted clique generation, detection and recovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and write it as a PCG1 file.
    Gen(GenArgs),
    /// Decide between G(n, 1/2) and a planted clique.
    Detect(DetectArgs),
    /// Recover the planted clique.
    Recover(RecoverArgs),
    /// Compare the recursive filter with the iterative reference.
    OracleCheck(OracleCheckArgs),
    /// Run a seeded parameter sweep.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExecutionArg {
    Tabulated,
    Metered,
}

impl From<ExecutionArg> for Execution {
    fn from(e: ExecutionArg) -> Self {
        match e {
            ExecutionArg::Tabulated => Execution::Tabulated,
            ExecutionArg::Metered => Execution::Metered,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Planted clique size; omit for a plain G(n, 1/2) graph.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

/// Either a PCG1 file or sampling parameters.
#[derive(Args)]
struct Source {
    #[arg(long = "in", conflicts_with_all = ["n", "seed"])]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Clique size. When sampling, omitting it samples G(n, 1/2).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

struct Loaded {
    graph: Graph,
    truth: Option<Vec<Vertex>>,
    k: Option<usize>,
}

impl Source {
    fn sample_n(&self) -> Option<usize> {
        if self.input.is_some() {
            None
        } else {
            self.n
        }
    }

    fn load(&self) -> Result<Loaded, Error> {
        let (graph, truth) = match (&self.input, self.n) {
            (Some(path), _) => read_graph(BufReader::new(File::open(path)?))?,
            (None, Some(n)) => {
                let seed = Seed(self.seed.unwrap_or(0));
                match self.k {
                    Some(k) => {
                        let (g, c) = sample_planted(n, k, seed)?.into_parts();
                        (g, Some(c))
                    }
                    None => (sample_er(n, seed)?, None),
                }
            }
            (None, None) => return Err(Error::InvalidParameter("give either --in or --n".into())),
        };
        let k = self.k.or(truth.as_ref().map(Vec::len));
        Ok(Loaded { graph, truth, k })
    }
}

fn require_k(loaded: &Loaded) -> Result<usize, Error> {
    loaded.k.ok_or_else(|| Error::InvalidParameter("clique size unknown; pass --k".into()))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetectAlgo {
    EdgeCount,
    Exhaustive,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long, value_enum, default_value_t = DetectAlgo::EdgeCount)]
    algo: DetectAlgo,
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 12)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RecoverAlgo {
    Pipeline,
    Degree,
    Reduction,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long, value_enum, default_value_t = RecoverAlgo::Pipeline)]
    algo: RecoverAlgo,
    #[command(flatten)]
    source: Source,
    #[arg(long = "constant-c", default_value_t = pclique_core::completion::DEFAULT_CONSTANT_C)]
    constant_c: f64,
    #[arg(long, value_enum, default_value_t = ExecutionArg::Tabulated)]
    execution: ExecutionArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Round count; defaults to the derived schedule, or the deepest one
    /// when that is infeasible.
    #[arg(long)]
    rounds: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Comma-separated k rules (`512`, `8sqrtn`, `4sqrtnlogn`): one for all
    /// n, or one per n.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<String>,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "pipeline")]
    algo: Vec<String>,
    #[arg(long, default_value_t = 10)]
    trials: u32,
    /// Seed of trial 0; trial i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "constant-c", default_value_t = pclique_core::completion::DEFAULT_CONSTANT_C)]
    constant_c: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 12)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = ExecutionArg::Tabulated)]
    execution: ExecutionArg,
    /// Report every wall time as 0 so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Detect(a) => detect(a),
        Command::Recover(a) => recover(a),
        Command::OracleCheck(a) => oracle_check(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ScheduleInfeasible(_) | Error::InfeasibleScale(_) => EXIT_INFEASIBLE,
        Error::Io(_) | Error::Format(_) | Error::Csv(_) | Error::Json(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

fn reject_format(format: Format, allowed: &[Format]) -> Result<(), Error> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("output format not supported by this command".into()))
    }
}

fn gen(a: GenArgs) -> Result<u8, Error> {
    let (g, truth) = match a.k {
        Some(k) => {
            let (g, c) = sample_planted(a.n, k, Seed(a.seed))?.into_parts();
            (g, Some(c))
        }
        None => (sample_er(a.n, Seed(a.seed))?, None),
    };
    let mut out = BufWriter::new(File::create(&a.out)?);
    write_graph(&mut out, &g, truth.as_deref())?;
    out.flush()?;
    Ok(0)
}

fn detect(a: DetectArgs) -> Result<u8, Error> {
    reject_format(a.format, &[Format::Json, Format::Text])?;
    // refuse oversize searches before paying for sampling
    if let (DetectAlgo::Exhaustive, Some(n)) = (a.algo, a.source.sample_n()) {
        let s = exhaustive_subset_size(n, a.epsilon)?;
        if s > a.cap {
            return Err(Error::InfeasibleScale(format!(
                "exhaustive search over {s}-subsets exceeds the cap of {}",
                a.cap
            )));
        }
    }
    let loaded = a.source.load()?;
    let mut ledger = WorkspaceLedger::new();
    let (name, v): (&str, DetectionVerdict) = match a.algo {
        DetectAlgo::EdgeCount => ("edge-count", edge_count_detect(&loaded.graph, require_k(&loaded)?, &mut ledger)?),
        DetectAlgo::Exhaustive => ("exhaustive", exhaustive_detect(&loaded.graph, a.epsilon, a.cap, &mut ledger)?),
    };
    let mut stdout = io::stdout().lock();
    match a.format {
        Format::Json => {
            let doc = json!({
                "algo": name,
                "n": loaded.graph.n(),
                "k": loaded.k,
                "verdict": v.verdict,
                "statistic": v.statistic,
                "threshold": v.threshold,
                "peak_working_bits": ledger.peak(),
            });
            writeln!(stdout, "{doc}")?;
        }
        _ => writeln!(stdout, "{} statistic={} threshold={}", v.verdict, v.statistic, v.threshold)?,
    }
    Ok(0)
}

fn recover(a: RecoverArgs) -> Result<u8, Error> {
    reject_format(a.format, &[Format::Json, Format::Text])?;
    let loaded = a.source.load()?;
    let g = &loaded.graph;
    let stdout = io::stdout().lock();
    let mut text = LineSink(BufWriter::new(stdout));
    let mut collected: Vec<Vertex> = Vec::new();
    let sink: &mut dyn VertexSink = if a.format == Format::Text { &mut text } else { &mut collected };
    let mut ledger = WorkspaceLedger::new();
    let (name, recovered, peak, rounds): (&str, RecoveredSet, u64, Option<u32>) = match a.algo {
        RecoverAlgo::Pipeline => {
            let config = PipelineConfig { constant_c: a.constant_c, execution: a.execution.into() };
            let run = recover_large_clique(g, require_k(&loaded)?, &config, sink)?;
            ("pipeline", run.recovered, run.peak_working_bits, Some(run.rounds))
        }
        RecoverAlgo::Degree => {
            let set = degree_count_recover(g, require_k(&loaded)?, &mut ledger, sink)?;
            ("degree", set, ledger.peak(), None)
        }
        RecoverAlgo::Reduction => {
            let det = CliqueSizeDetector::for_vertices(g.n());
            let set = alon_reduction_recover(g, &det, &mut ledger, sink)?;
            ("reduction", set, ledger.peak(), None)
        }
    };
    text.0.flush()?;
    let errors = loaded.truth.as_deref().map(|t| recovered.errors_against(t));
    if a.format == Format::Json {
        let doc = json!({
            "algo": name,
            "n": g.n(),
            "k": loaded.k,
            "rounds": rounds,
            "recovered": recovered,
            "peak_working_bits": peak,
            "false_positives": errors.map(|e| e.0),
            "false_negatives": errors.map(|e| e.1),
            "exact_recovery": errors.map(|e| e == (0, 0)),
        });
        writeln!(io::stdout().lock(), "{doc}")?;
    } else if let Some((fp, fneg)) = errors {
        eprintln!("{} vertices, {fp} false positives, {fneg} false negatives, peak {peak} bits", recovered.len());
    }
    Ok(0)
}

fn oracle_check(a: OracleCheckArgs) -> Result<u8, Error> {
    reject_format(a.format, &[Format::Json, Format::Text])?;
    if a.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let schedule = match a.rounds {
        Some(t) => FilterSchedule::with_rounds(a.n, a.k, t)?,
        None => FilterSchedule::derived_or_deepest(a.n, a.k)?,
    };
    let (mut pairs, mut mismatches, mut peak) = (0usize, Vec::new(), 0u64);
    for i in 0..a.trials {
        let seed = a.seed.wrapping_add(u64::from(i));
        let inst = sample_planted(a.n, a.k, Seed(seed))?;
        let report = check_against_reference(inst.graph(), &schedule)?;
        pairs += report.pairs;
        peak = peak.max(report.peak_bits);
        mismatches.extend(report.mismatches.into_iter().map(|(t, v)| (seed, t, v)));
    }
    let mut stdout = io::stdout().lock();
    if a.format == Format::Json {
        let doc = json!({
            "n": a.n,
            "k": a.k,
            "rounds": schedule.rounds(),
            "derived_schedule": schedule.is_derived(),
            "trials": a.trials,
            "pairs": pairs,
            "mismatches": mismatches,
            "peak_working_bits": peak,
        });
        writeln!(stdout, "{doc}")?;
    } else {
        writeln!(
            stdout,
            "rounds={} derived={} trials={} pairs={} mismatches={} peak_bits={peak}",
            schedule.rounds(),
            schedule.is_derived(),
            a.trials,
            pairs,
            mismatches.len()
        )?;
    }
    Ok(if mismatches.is_empty() { 0 } else { EXIT_MISMATCH })
}

fn sweep(a: SweepArgs) -> Result<u8, Error> {
    reject_format(a.format, &[Format::Csv, Format::Json])?;
    let rules: Vec<KRule> = a.k.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let points: Vec<SweepPoint> = match rules.len() {
        1 => a.n.iter().map(|&n| SweepPoint { n, k: rules[0] }).collect(),
        m if m == a.n.len() => a.n.iter().zip(&rules).map(|(&n, &k)| SweepPoint { n, k }).collect(),
        _ => return Err(Error::InvalidParameter("give one k rule, or one per n".into())),
    };
    let algos: Vec<Algo> = a.algo.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let mut config = SweepConfig::new(points, algos, a.trials);
    config.seed_base = a.seed;
    config.constant_c = a.constant_c;
    config.epsilon = a.epsilon;
    config.cap = a.cap;
    config.execution = a.execution.into();
    config.timing = !a.no_timing;

    let outcome = run_trials(&config)?;
    for w in outcome.warnings() {
        eprintln!("warning: {w}");
    }
    let mut out: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match a.format {
        Format::Json => writeln!(out, "{}", outcome.to_json()?)?,
        _ => outcome.write_csv(&mut out)?,
    }
    out.flush()?;
    Ok(0)
}
