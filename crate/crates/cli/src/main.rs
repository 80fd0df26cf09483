use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use ascentlab::io::{
    codec_to_json, decomposition_to_json, instance_from_json, instance_to_json, trace_to_json,
    CsvTraceWriter,
};
use ascentlab::verification::{run_all, run_check, Caps, CheckReport, CHECK_NAMES};
use ascentlab::{
    build_family, canonical_start, Assignment, Engine, Family, IntRange, RunOutcome, StepSink,
    VcspInstance, NO_LIMIT,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "ascentlab",
    version,
    about = "Exponentially long steepest ascents on valued constraint landscapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance as JSON (plus codec and decomposition sidecars for bool-pw4).
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an ascent and print a JSON summary.
    Ascend(AscendArgs),
    /// Run verification checks and print one JSON report per line.
    Verify {
        /// A check name or "all".
        #[arg(long, default_value = "all")]
        check: String,
        /// Run every check up to this n instead of the default caps.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Time ascents over a list of sizes and print CSV.
    Bench {
        #[arg(long)]
        family: Family,
        /// Comma-separated sizes or inclusive ranges, e.g. "2..=20" or "4,8,12".
        #[arg(long, default_value = "")]
        n: String,
        #[arg(long, value_enum)]
        engine: Option<EngineKind>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct AscendArgs {
    /// Instance JSON; alternatively build one with --family and --n.
    #[arg(required_unless_present = "family", conflicts_with_all = ["family", "n"])]
    instance: Option<PathBuf>,
    #[arg(long, requires = "n")]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    /// Defaults to ordered for 2by3 and steepest otherwise.
    #[arg(long, value_enum)]
    engine: Option<EngineKind>,
    /// "canonical", or a JSON file holding an array of state ids.
    #[arg(long, default_value = "canonical")]
    start: String,
    #[arg(long)]
    step_limit: Option<u64>,
    /// Trace output; CSV unless the extension is .json.
    #[arg(long, conflicts_with = "summary_only")]
    trace: Option<PathBuf>,
    #[arg(long)]
    summary_only: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineKind {
    Steepest,
    Ordered,
    First,
}

impl EngineKind {
    fn default_for(family: Option<Family>) -> Self {
        match family {
            Some(Family::TwoByThree) => EngineKind::Ordered,
            _ => EngineKind::Steepest,
        }
    }

    fn engine(self, n_vars: usize, seed: u64) -> Engine {
        match self {
            EngineKind::Steepest => Engine::Steepest,
            EngineKind::Ordered => Engine::Ordered((0..n_vars).collect()),
            EngineKind::First => Engine::FirstImprovement { seed },
        }
    }
}

#[derive(Serialize)]
struct RunSummary {
    family: String,
    n: usize,
    engine: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    start: String,
    steps: u64,
    terminal: bool,
    start_fitness: String,
    final_fitness: String,
    seconds: f64,
    steps_per_sec: f64,
}

enum Failure {
    Usage(String),
    Verification,
    StepLimit,
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(ascentlab::Error, io::Error, serde_json::Error);

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = IntRange::from_env()
        .map_err(Failure::from)
        .and_then(|range| match cli.command {
            Command::Gen { family, n, out } => gen(family, n, &out, range),
            Command::Ascend(args) => ascend(args, range),
            Command::Verify { check, cap } => verify(&check, cap),
            Command::Bench {
                family,
                n,
                engine,
                seed,
            } => bench(family, &n, engine, seed, range),
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::StepLimit) => ExitCode::from(3),
    }
}

fn sidecar(out: &Path, kind: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("instance");
    out.with_file_name(format!("{stem}.{kind}.json"))
}

fn gen(family: Family, n: usize, out: &Path, range: IntRange) -> Outcome {
    let built = build_family(family, n, range)?;
    fs::write(out, instance_to_json(&built.instance)?)?;
    let mut files = vec![out.to_path_buf()];
    if let Some(codec) = &built.codec {
        let p = sidecar(out, "codec");
        fs::write(&p, codec_to_json(codec)?)?;
        files.push(p);
    }
    if let Some(d) = &built.decomposition {
        let p = sidecar(out, "decomposition");
        fs::write(&p, decomposition_to_json(d)?)?;
        files.push(p);
    }
    let summary = serde_json::json!({
        "family": family.name(),
        "n": n,
        "variables": built.instance.n_vars(),
        "constraints": built.instance.constraints.len(),
        "max_arity": built.instance.max_arity(),
        "files": files,
    });
    println!("{summary}");
    Ok(())
}

fn load_instance(
    args: &AscendArgs,
    range: IntRange,
) -> Result<(VcspInstance, Option<Family>), Failure> {
    match (&args.instance, args.family, args.n) {
        (Some(path), _, _) => {
            let inst = instance_from_json(&fs::read_to_string(path)?, range)?;
            let family = inst.meta.family.parse().ok();
            Ok((inst, family))
        }
        (None, Some(family), Some(n)) => {
            Ok((build_family(family, n, range)?.instance, Some(family)))
        }
        _ => Err(Failure::Usage(
            "give an instance file or both --family and --n".into(),
        )),
    }
}

fn load_start(
    spec: &str,
    inst: &VcspInstance,
    family: Option<Family>,
) -> Result<Assignment, Failure> {
    if spec == "canonical" {
        let family = family.ok_or_else(|| {
            Failure::Usage(format!(
                "family {:?} has no canonical start",
                inst.meta.family
            ))
        })?;
        return Ok(canonical_start(family, inst.meta.n)?);
    }
    let values: Vec<usize> = serde_json::from_str(&fs::read_to_string(spec)?)?;
    let x = Assignment::new(values);
    inst.check_assignment(&x)?;
    Ok(x)
}

struct Timed {
    outcome: RunOutcome,
    seconds: f64,
}

fn run_timed<S: StepSink>(
    engine: &Engine,
    inst: &VcspInstance,
    start: &Assignment,
    limit: u64,
    sink: &mut S,
) -> Result<Timed, Failure> {
    let t = Instant::now();
    let outcome = engine.run(inst, start, limit, sink)?;
    Ok(Timed {
        outcome,
        seconds: t.elapsed().as_secs_f64(),
    })
}

fn rate(steps: u64, seconds: f64) -> f64 {
    if seconds > 0.0 {
        steps as f64 / seconds
    } else {
        0.0
    }
}

fn ascend(args: AscendArgs, range: IntRange) -> Outcome {
    let (inst, family) = load_instance(&args, range)?;
    let start = load_start(&args.start, &inst, family)?;
    let kind = args.engine.unwrap_or(EngineKind::default_for(family));
    let engine = kind.engine(inst.n_vars(), args.seed);
    let limit = args.step_limit.unwrap_or(NO_LIMIT);

    let run = match args.trace.as_deref().filter(|_| !args.summary_only) {
        None => run_timed(&engine, &inst, &start, limit, &mut ())?,
        Some(path) if path.extension().is_some_and(|e| e == "json") => {
            let t = Instant::now();
            let trace = engine.trace(&inst, &start, limit)?;
            let seconds = t.elapsed().as_secs_f64();
            fs::write(path, trace_to_json(&trace)?)?;
            Timed {
                outcome: RunOutcome {
                    steps: trace.len() as u64,
                    terminal: trace.terminal,
                    start_fitness: trace.start_fitness,
                    final_fitness: trace.final_fitness(),
                    final_assignment: trace.final_assignment(),
                    flagged: (trace.tie_steps.len() + trace.ambiguous_steps.len()) as u64,
                },
                seconds,
            }
        }
        Some(path) => {
            let mut w = CsvTraceWriter::new(BufWriter::new(File::create(path)?), &inst)?;
            let run = run_timed(&engine, &inst, &start, limit, &mut w)?;
            w.finish()?;
            run
        }
    };

    let o = &run.outcome;
    let summary = RunSummary {
        family: inst.meta.family.clone(),
        n: inst.meta.n,
        engine: engine.name(),
        seed: matches!(kind, EngineKind::First).then_some(args.seed),
        start: args.start.clone(),
        steps: o.steps,
        terminal: o.terminal,
        start_fitness: o.start_fitness.to_string(),
        final_fitness: o.final_fitness.to_string(),
        seconds: run.seconds,
        steps_per_sec: rate(o.steps, run.seconds),
    };
    println!("{}", serde_json::to_string(&summary)?);
    if o.terminal {
        Ok(())
    } else {
        Err(Failure::StepLimit)
    }
}

fn verify(check: &str, cap: Option<usize>) -> Outcome {
    let caps = cap.map_or_else(Caps::default, Caps::uniform);
    let reports: Vec<CheckReport> = if check == "all" {
        run_all(&caps)
    } else {
        vec![run_check(check, &caps).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown check {check:?}; expected one of {} or all",
                CHECK_NAMES.join(", ")
            ))
        })?]
    };
    let mut out = io::stdout().lock();
    for r in &reports {
        writeln!(out, "{}", r.to_json())?;
    }
    if reports.iter().all(CheckReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn parse_sizes(list: &str) -> Result<Vec<usize>, Failure> {
    let mut sizes = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Failure::Usage(format!("invalid size list entry {item:?}"));
        let range = item
            .split_once("..=")
            .or_else(|| item.split_once(".."))
            .or_else(|| item.split_once('-'));
        match range {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                sizes.extend(a..=b);
            }
            None => sizes.push(item.parse().map_err(|_| bad())?),
        }
    }
    Ok(sizes)
}

fn bench(
    family: Family,
    list: &str,
    engine: Option<EngineKind>,
    seed: u64,
    range: IntRange,
) -> Outcome {
    let sizes = parse_sizes(list)?;
    let kind = engine.unwrap_or(EngineKind::default_for(Some(family)));
    let mut out = io::stdout().lock();
    writeln!(out, "family,n,steps,seconds,steps_per_sec")?;
    for n in sizes {
        let built = build_family(family, n, range)?;
        let engine = kind.engine(built.instance.n_vars(), seed);
        let run = run_timed(&engine, &built.instance, &built.start, NO_LIMIT, &mut ())?;
        let steps = run.outcome.steps;
        writeln!(
            out,
            "{},{n},{steps},{:.6},{:.1}",
            family.name(),
            run.seconds,
            rate(steps, run.seconds)
        )?;
    }
    Ok(())
}
