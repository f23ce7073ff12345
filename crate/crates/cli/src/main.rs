//! `loopspec`: spectra, energy and bound certificates for digraphs with
//! self-loops.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 a theorem check failed,
//! 3 numerical non-convergence.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use loopspec::bounds::{all_bounds, certify, BoundId, BoundOptions, BoundsError};
use loopspec::decomposition::{ab_remark_check, analyze_context, necessary_condition, sufficient_condition};
use loopspec::enumerate::{sweep, EnumerateError, SweepConfig, SweepMode, Theorem};
use loopspec::format::{parse_auto, to_json, to_text};
use loopspec::scc::non_cycle_arcs;
use loopspec::spectral::{energy_report, SpectralError};
use loopspec::{generate, Digraph, Family, GraphContext64, LinalgError};

const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "loopspec", version, about = "Spectra, energy and energy bounds of digraphs with self-loops")]
struct Cli {
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Wrap the JSON payload with the command, graph summary, version and timestamp.
    #[arg(long, global = true)]
    envelope: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, characteristic polynomial and spectral radius.
    Spectrum(GraphArg),
    /// Energy about σ/n with per-eigenvalue deviations.
    Energy(GraphArg),
    /// Certificates for every bound.
    Bounds {
        #[command(flatten)]
        input: GraphArg,
        /// Only this bound, e.g. `mcclelland` or `rho_upper`.
        #[arg(long)]
        only: Option<String>,
    },
    /// Component-wise energy analysis and the two implication records.
    Decompose(GraphArg),
    /// Strong components and arcs lying on no cycle.
    Scc(GraphArg),
    /// The complement digraph.
    Complement {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// A named family.
    Generate(GenerateArgs),
    /// Run theorem checkers over every digraph of order n, or a seeded sample.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Graph file (JSON or text, detected from the first byte); `-` reads stdin.
    #[arg(default_value = "-")]
    graph: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Complete,
    CompleteMultipartite,
    CompleteBipartite,
    DirectedCycle,
    Empty,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Order for `complete`, `directed-cycle` and `empty`.
    #[arg(long)]
    n: Option<usize>,
    /// Part sizes for `complete-multipartite`, e.g. `2,2,3`.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    /// First class size for `complete-bipartite`.
    #[arg(long)]
    a: Option<usize>,
    /// Second class size for `complete-bipartite`.
    #[arg(long)]
    b: Option<usize>,
    /// Looped vertices, e.g. `0,2`.
    #[arg(long, value_delimiter = ',', conflicts_with = "all_loops")]
    loops: Vec<usize>,
    /// Put a loop on every vertex.
    #[arg(long)]
    all_loops: bool,
    #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
    format: GraphFormat,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated theorem names, or `all`.
    #[arg(long, default_value = "all")]
    theorems: String,
    /// Every adjacency pattern (the default when --samples is absent).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Number of random digraphs; sample i uses seed `seed + i`.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    arc_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    loop_prob: f64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Allow the exhaustive n = 5 sweep (33,554,432 graphs).
    #[arg(long)]
    allow_n5: bool,
    /// Keep going after the first counterexample.
    #[arg(long)]
    keep_going: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Counterexample,
    Numerical,
}

struct Output {
    payload: Value,
    graph: Option<Digraph>,
    status: Status,
    /// Preformatted text for `--table`, when the payload is a graph.
    text: Option<String>,
}

impl Output {
    fn new(payload: Value, graph: Option<&Digraph>) -> Self {
        Output { payload, graph: graph.cloned(), status: Status::Ok, text: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_numerical(&e) { 3 } else { 1 })
        }
    }
}

fn is_numerical(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<LinalgError>()
            || matches!(c.downcast_ref::<SpectralError>(), Some(SpectralError::Linalg(_) | SpectralError::PerronViolated { .. }))
            || matches!(c.downcast_ref::<BoundsError>(), Some(BoundsError::Linalg(_)))
    })
}

fn bound_options() -> Result<BoundOptions> {
    match std::env::var("LOOPSPEC_TOL") {
        Ok(s) => {
            let tol: f64 = s.trim().parse().with_context(|| format!("LOOPSPEC_TOL={s:?} is not a number"))?;
            if !(tol.is_finite() && tol > 0.0) {
                bail!("LOOPSPEC_TOL must be positive and finite, got {tol}");
            }
            Ok(BoundOptions { equality_tol: tol })
        }
        Err(_) => Ok(BoundOptions::default()),
    }
}

fn read_graph(arg: &GraphArg) -> Result<Digraph> {
    let input = if arg.graph == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(&arg.graph).with_context(|| format!("reading {}", arg.graph))?
    };
    parse_auto(&input).with_context(|| format!("parsing {}", if arg.graph == "-" { "stdin" } else { &arg.graph }))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let out = match &cli.command {
        Command::Spectrum(arg) => {
            let d = read_graph(arg)?;
            let ctx = GraphContext64::new(&d);
            let spectrum = ctx.spectrum()?;
            let payload = json!({
                "eigenvalues": spectrum,
                "charpoly": ctx.charpoly(),
                "rho": spectrum.spectral_radius(),
            });
            Output::new(payload, Some(&d))
        }
        Command::Energy(arg) => {
            let d = read_graph(arg)?;
            let report = energy_report(&GraphContext64::new(&d))?;
            Output::new(serde_json::to_value(report)?, Some(&d))
        }
        Command::Bounds { input, only } => {
            let d = read_graph(input)?;
            let ctx = GraphContext64::new(&d);
            let opts = bound_options()?;
            let certs = match only {
                Some(name) => {
                    let id: BoundId = name.parse()?;
                    vec![certify(id, &ctx, &opts)?]
                }
                None => all_bounds(&ctx, &opts)?,
            };
            let failed = certs.iter().any(|c| !c.ok());
            let mut out = Output::new(serde_json::to_value(&certs)?, Some(&d));
            if failed {
                out.status = Status::Counterexample;
            }
            out
        }
        Command::Decompose(arg) => {
            let d = read_graph(arg)?;
            let analysis = analyze_context(&GraphContext64::new(&d))?;
            let suff = sufficient_condition(&analysis);
            let nec = necessary_condition(&analysis);
            let remark = ab_remark_check(&analysis);
            let nested = analysis.sets_nested();
            let mut payload = serde_json::to_value(&analysis)?;
            let obj = payload.as_object_mut().expect("struct serializes to an object");
            obj.insert("applicability".into(), serde_json::to_value(analysis.applicability())?);
            obj.insert("a_form".into(), json!(suff.set_form));
            obj.insert("b_form".into(), json!(nec.set_form));
            obj.insert("sufficient_condition".into(), serde_json::to_value(suff)?);
            obj.insert("necessary_condition".into(), serde_json::to_value(nec)?);
            obj.insert("ab_remark".into(), json!(remark));
            obj.insert("sets_nested".into(), json!(nested));
            let mut out = Output::new(payload, Some(&d));
            if !(suff.holds() && nec.holds() && remark && nested) {
                out.status = Status::Counterexample;
            }
            out
        }
        Command::Scc(arg) => {
            let d = read_graph(arg)?;
            let scc = loopspec::strong_components(&d);
            let payload = json!({
                "components": scc.components,
                "component_of": scc.component_of,
                "non_cycle_arcs": non_cycle_arcs(&d),
            });
            Output::new(payload, Some(&d))
        }
        Command::Complement { input, format } => {
            let d = read_graph(input)?;
            graph_output(&d.complement(), *format)
        }
        Command::Generate(args) => graph_output(&generate(&family(args)?)?, args.format),
        Command::Sweep(args) => return run_sweep(cli, args),
    };
    emit(cli, out)
}

fn graph_output(d: &Digraph, format: GraphFormat) -> Output {
    let mut out = Output::new(serde_json::to_value(d).expect("graph serializes"), Some(d));
    out.text = Some(match format {
        GraphFormat::Json => to_json(d),
        GraphFormat::Text => to_text(d),
    });
    out
}

fn family(args: &GenerateArgs) -> Result<Family> {
    let need_n = || args.n.ok_or_else(|| anyhow!("--n is required for this family"));
    let order = match args.family {
        FamilyName::Complete | FamilyName::DirectedCycle | FamilyName::Empty => need_n()?,
        FamilyName::CompleteMultipartite => args.parts.iter().sum(),
        FamilyName::CompleteBipartite => {
            args.a.ok_or_else(|| anyhow!("--a is required"))? + args.b.ok_or_else(|| anyhow!("--b is required"))?
        }
    };
    let loops = if args.all_loops { (0..order).collect() } else { args.loops.clone() };
    Ok(match args.family {
        FamilyName::Complete => Family::Complete { n: order, loops },
        FamilyName::DirectedCycle => Family::DirectedCycle { n: order, loops },
        FamilyName::Empty => Family::Empty { n: order, loops },
        FamilyName::CompleteMultipartite => Family::CompleteMultipartite { parts: args.parts.clone(), loops },
        FamilyName::CompleteBipartite => {
            Family::CompleteBipartite { a: args.a.expect("checked"), b: args.b.expect("checked"), loops }
        }
    })
}

fn run_sweep(cli: &Cli, args: &SweepArgs) -> Result<ExitCode> {
    let theorems = Theorem::parse_list(&args.theorems)?;
    let mode = match args.samples {
        Some(samples) => SweepMode::Sampled { samples, seed: args.seed },
        None => SweepMode::Exhaustive,
    };
    let config = SweepConfig {
        n: args.n,
        theorems,
        mode,
        jobs: args.jobs,
        arc_prob: args.arc_prob,
        loop_prob: args.loop_prob,
        bound_options: bound_options()?,
        allow_large: args.allow_n5,
        stop_on_counterexample: !args.keep_going,
    };
    let report = sweep(&config).map_err(|e| match e {
        EnumerateError::SizeLimit { n, max } if n == 5 && max == 4 => {
            anyhow!("exhaustive n = 5 takes minutes; pass --allow-n5 to run it")
        }
        other => other.into(),
    })?;
    let status = if !report.counterexamples.is_empty() {
        Status::Counterexample
    } else if !report.numerical_errors.is_empty() {
        Status::Numerical
    } else {
        Status::Ok
    };
    let summary = format!(
        "{} graphs, {} counterexamples, {} numerical errors{}",
        report.graphs_checked,
        report.counterexamples.len(),
        report.numerical_errors.len(),
        if report.aborted { ", aborted" } else { "" }
    );
    let out = Output { payload: serde_json::to_value(&report)?, graph: None, status, text: None };
    match &args.out {
        Some(path) => {
            let rendered = render(cli, &out)?;
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("{summary}; report written to {}", path.display());
            Ok(exit_code(&out.status))
        }
        None => {
            eprintln!("{summary}");
            emit(cli, out)
        }
    }
}

fn exit_code(status: &Status) -> ExitCode {
    ExitCode::from(match status {
        Status::Ok => 0,
        Status::Counterexample => 2,
        Status::Numerical => 3,
    })
}

fn emit(cli: &Cli, out: Output) -> Result<ExitCode> {
    let rendered = render(cli, &out)?;
    let mut stdout = io::stdout().lock();
    stdout.write_all(rendered.as_bytes())?;
    stdout.flush()?;
    Ok(exit_code(&out.status))
}

fn render(cli: &Cli, out: &Output) -> Result<String> {
    if cli.table {
        return Ok(match &out.text {
            Some(_) => to_text(out.graph.as_ref().expect("graph output")),
            None => table(&round_value(out.payload.clone())),
        });
    }
    if let (Some(text), false) = (&out.text, cli.envelope) {
        return Ok(format!("{text}\n"));
    }
    let payload = round_value(out.payload.clone());
    let value = if cli.envelope {
        let mut env = Map::new();
        env.insert("command".into(), json!(std::env::args().skip(1).collect::<Vec<_>>()));
        if let Some(d) = &out.graph {
            let st = d.stats();
            env.insert("graph".into(), json!({"n": st.n, "m": st.m, "sigma": st.sigma, "c2": st.c2}));
        }
        env.insert("payload".into(), payload);
        env.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        env.insert("timestamp".into(), json!(chrono::Utc::now().to_rfc3339()));
        Value::Object(env)
    } else {
        payload
    };
    Ok(format!("{}\n", serde_json::to_string(&value)?))
}

/// Rounds every float to twelve significant digits.
fn round_value(v: Value) -> Value {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64");
            let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("round trip");
            let rounded = if rounded == 0.0 { 0.0 } else { rounded };
            json!(rounded)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let keys: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| keys.iter().map(|k| r.get(k.as_str()).map(cell).unwrap_or_default()).collect())
                .collect();
            let widths: Vec<usize> = keys
                .iter()
                .enumerate()
                .map(|(i, k)| cells.iter().map(|r| r[i].chars().count()).chain([k.chars().count()]).max().unwrap_or(0))
                .collect();
            let fmt_row = |items: Vec<String>| {
                items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
            };
            out.push_str(&fmt_row(keys.iter().map(|k| k.to_string()).collect()));
            out.push('\n');
            for r in cells {
                out.push_str(&fmt_row(r));
                out.push('\n');
            }
        }
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in map {
                out.push_str(&format!("{k:<width$}  {}\n", cell(v)));
            }
        }
        other => {
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_value(json!(4.345849573839123)), json!(4.34584957384));
        assert_eq!(round_value(json!(-1e-17)), json!(-1e-17));
        assert_eq!(round_value(json!(-0.0)), json!(0.0));
        assert_eq!(round_value(json!([1, 2.0])), json!([1, 2.0]));
    }

    #[test]
    fn tolerance_is_exposed() {
        assert_eq!(BoundOptions::default().equality_tol, loopspec::tol::EQUALITY);
    }
}
