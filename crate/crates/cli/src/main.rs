use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use udmine_core::export::{render, ExportError, OutputFormat, RenderOptions, Renderable};
use udmine_core::oracle::{activity_bounds, relation_bounds, OracleError, DEFAULT_EVENT_CAP};
use udmine_core::udfg::{
    act_freq_max, act_freq_min, df_freq_max, df_freq_min, parse_ratio, Rational, SliceError,
};
use udmine_core::{
    build_behavior_graph, build_udfg, discover_tree, slice, tree_to_petri, validate, ActivityLabel,
    GraphError, LogError, LogFormat, SliceParams, UncertainLog, UncertainTrace, Violation,
};

#[derive(Parser)]
#[command(
    name = "udmine",
    version,
    about = "Process discovery from uncertain event logs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Log file (.ulog.json or .ulog.txt)
    input: PathBuf,

    /// Input format; guessed from the file extension when omitted
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,

    /// Write the result here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SliceArgs {
    /// Lower bound on the min/max activity frequency ratio (decimal or p/q)
    #[arg(long, default_value = "0", value_parser = ratio)]
    act_min: Rational,

    #[arg(long, default_value = "1", value_parser = ratio)]
    act_max: Rational,

    /// Lower bound on the min/max directly-follows frequency ratio
    #[arg(long, default_value = "0", value_parser = ratio)]
    rel_min: Rational,

    #[arg(long, default_value = "1", value_parser = ratio)]
    rel_max: Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Check a log and report every violated invariant
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Behavior graph of one trace as DOT
    Bgraph {
        #[command(flatten)]
        input: Input,
        /// Case id; may be omitted for single-trace logs
        #[arg(long)]
        case: Option<String>,
    },
    /// Uncertain directly-follows graph
    Udfg {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = UdfgFormat::Dot)]
        output_format: UdfgFormat,
        /// Leave min/max frequencies out of the DOT labels
        #[arg(long)]
        no_annotate: bool,
    },
    /// Filtered directly-follows graph as DOT
    Slice {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: SliceArgs,
    },
    /// Mine a process model from a slice
    Discover {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: SliceArgs,
        #[arg(long, value_enum, default_value_t = ModelFormat::Tree)]
        output_format: ModelFormat,
    },
    /// Realization bounds next to the measured bounds
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        case: Option<String>,
        /// Activity to report; repeatable. Defaults to every activity and pair
        #[arg(long = "activity")]
        activities: Vec<String>,
        /// Pair `a,b` to report; repeatable
        #[arg(long = "pair", value_parser = pair)]
        pairs: Vec<(String, String)>,
        /// Refuse traces with more events than this
        #[arg(long, default_value_t = DEFAULT_EVENT_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Json,
    Compact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UdfgFormat {
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelFormat {
    Tree,
    /// Petri net as DOT
    Dot,
    /// Petri net as PNML
    Pnml,
}

fn ratio(s: &str) -> Result<Rational, SliceError> {
    parse_ratio(s)
}

fn pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_owned(), b.to_owned())),
        _ => Err(format!("expected `a,b`, got {s:?}")),
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("{0}")]
    Parse(LogError),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{} violation(s)", .0.len())]
    Invalid(Vec<Violation>),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(#[from] OracleError),
    #[error("{0}")]
    Export(#[from] ExportError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. }
            | CliError::Write { .. }
            | CliError::Parse(_)
            | CliError::Graph(_) => 1,
            CliError::Export(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Usage(_) => 3,
            CliError::Cap(_) => 4,
        }
    }
}

impl From<LogError> for CliError {
    fn from(e: LogError) -> Self {
        match e {
            LogError::Invalid(v) => CliError::Invalid(v),
            other => CliError::Parse(other),
        }
    }
}

impl From<SliceError> for CliError {
    fn from(e: SliceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn load(input: &Input) -> Result<UncertainLog, CliError> {
    let format = match input.input_format {
        Some(InputFormat::Json) => LogFormat::Json,
        Some(InputFormat::Compact) => LogFormat::Compact,
        None => LogFormat::from_path(&input.input).ok_or_else(|| {
            CliError::Usage(format!(
                "cannot tell the format of {}; pass --input-format",
                input.input.display()
            ))
        })?,
    };
    let text = fs::read_to_string(&input.input).map_err(|source| CliError::Read {
        path: input.input.clone(),
        source,
    })?;
    let log = format.parse(&text)?;
    let violations = validate(&log);
    if !violations.is_empty() {
        return Err(CliError::Invalid(violations));
    }
    Ok(log)
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: "stdout".into(),
                source,
            }),
    }
}

fn select_trace<'l>(
    log: &'l UncertainLog,
    case: Option<&str>,
) -> Result<&'l UncertainTrace, CliError> {
    match case {
        Some(id) => log
            .trace(id)
            .ok_or_else(|| CliError::Usage(format!("no trace with case id {id:?}"))),
        None if log.traces.len() == 1 => Ok(&log.traces[0]),
        None => Err(CliError::Usage(format!(
            "the log has {} traces; pick one with --case",
            log.traces.len()
        ))),
    }
}

fn slice_params(args: &SliceArgs) -> Result<SliceParams, CliError> {
    Ok(SliceParams::new(
        args.act_min,
        args.act_max,
        args.rel_min,
        args.rel_max,
    )?)
}

fn dot(object: Renderable<'_>, annotate: bool) -> Result<String, CliError> {
    Ok(render(
        object,
        &RenderOptions {
            format: OutputFormat::Dot,
            annotate,
        },
    )?)
}

fn udfg_table(log: &UncertainLog) -> Result<String, CliError> {
    let u = build_udfg(log)?;
    let mut out = String::from("kind\tfrom\tto\tmin\tmax\n");
    for (a, r) in &u.nodes {
        out.push_str(&format!("node\t{a}\t\t{}\t{}\n", r.min, r.max));
    }
    for ((a, b), r) in &u.arcs {
        out.push_str(&format!("arc\t{a}\t{b}\t{}\t{}\n", r.min, r.max));
    }
    for (a, r) in &u.start {
        out.push_str(&format!("start\t\t{a}\t{}\t{}\n", r.min, r.max));
    }
    for (a, r) in &u.end {
        out.push_str(&format!("end\t{a}\t\t{}\t{}\n", r.min, r.max));
    }
    Ok(out)
}

fn oracle_table(
    trace: &UncertainTrace,
    activities: &[String],
    pairs: &[(String, String)],
    cap: usize,
) -> Result<String, CliError> {
    let graph = build_behavior_graph(trace)?;
    let universe = trace.activities();
    let (activities, pairs): (Vec<ActivityLabel>, Vec<(ActivityLabel, ActivityLabel)>) =
        if activities.is_empty() && pairs.is_empty() {
            let all: Vec<_> = universe.iter().cloned().collect();
            let pairs = all
                .iter()
                .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            (all, pairs)
        } else {
            (
                activities.iter().map(ActivityLabel::new).collect(),
                pairs
                    .iter()
                    .map(|(a, b)| (ActivityLabel::new(a), ActivityLabel::new(b)))
                    .collect(),
            )
        };
    let mut out =
        String::from("kind\titem\trealized_min\trealized_max\tmeasured_min\tmeasured_max\n");
    for a in &activities {
        let (lo, hi) = activity_bounds(trace, a, cap)?;
        out.push_str(&format!(
            "activity\t{a}\t{lo}\t{hi}\t{}\t{}\n",
            act_freq_min(trace, a),
            act_freq_max(trace, a)
        ));
    }
    for (a, b) in &pairs {
        let (lo, hi) = relation_bounds(trace, a, b, cap)?;
        out.push_str(&format!(
            "pair\t{a},{b}\t{lo}\t{hi}\t{}\t{}\n",
            df_freq_min(&graph, a, b),
            df_freq_max(&graph, a, b)
        ));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { input } => {
            let log = load(&input)?;
            let summary = format!(
                "ok: {} trace(s), {} event(s)\n",
                log.traces.len(),
                log.event_count()
            );
            emit(input.output.as_deref(), &summary)
        }
        Command::Bgraph { input, case } => {
            let log = load(&input)?;
            let graph = build_behavior_graph(select_trace(&log, case.as_deref())?)?;
            emit(
                input.output.as_deref(),
                &dot(Renderable::BehaviorGraph(&graph), false)?,
            )
        }
        Command::Udfg {
            input,
            output_format,
            no_annotate,
        } => {
            let log = load(&input)?;
            let text = match output_format {
                UdfgFormat::Table => udfg_table(&log)?,
                UdfgFormat::Dot => dot(Renderable::Udfg(&build_udfg(&log)?), !no_annotate)?,
            };
            emit(input.output.as_deref(), &text)
        }
        Command::Slice { input, params } => {
            let params = slice_params(&params)?;
            let log = load(&input)?;
            let view = slice(&build_udfg(&log)?, &params);
            emit(
                input.output.as_deref(),
                &dot(Renderable::Slice(&view), false)?,
            )
        }
        Command::Discover {
            input,
            params,
            output_format,
        } => {
            let params = slice_params(&params)?;
            let log = load(&input)?;
            let view = slice(&build_udfg(&log)?, &params);
            let tree = discover_tree(&view).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = match output_format {
                ModelFormat::Tree => format!("{tree}\n"),
                ModelFormat::Dot => dot(Renderable::Net(&tree_to_petri(&tree)), false)?,
                ModelFormat::Pnml => render(
                    Renderable::Net(&tree_to_petri(&tree)),
                    &RenderOptions {
                        format: OutputFormat::Pnml,
                        annotate: false,
                    },
                )?,
            };
            emit(input.output.as_deref(), &text)
        }
        Command::Oracle {
            input,
            case,
            activities,
            pairs,
            cap,
        } => {
            let log = load(&input)?;
            let trace = select_trace(&log, case.as_deref())?;
            emit(
                input.output.as_deref(),
                &oracle_table(trace, &activities, &pairs, cap)?,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Invalid(violations) = &e {
                for v in violations {
                    eprintln!("{v}");
                }
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
