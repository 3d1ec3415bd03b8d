//! `sdr`: generate, solve, render and batch-test SDR instances.
//!
//! Exit codes: 0 success (for `solve`, size >= n), 2 when `solve` finds a
//! smaller SDR, 1 on any error. Errors go to stderr as one JSON object.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sdr_core::algorithms::{run_algorithm, Algorithm, Trace};
use sdr_core::bounds::{bound_m, bound_n, few_lines_threshold, intersection_count_bound};
use sdr_core::experiment::{parse_experiment_spec, run_experiment, write_results};
use sdr_core::generators::{gen_random_instance, Family, GenSpec};
use sdr_core::geometry::format_rational;
use sdr_core::io::{read_instance_file, render_svg, serialize_instance};
use sdr_core::model::{build_intersection_graph, is_sdr, OracleOptions};
use sdr_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "sdr", version, about = "Systems of disjoint representatives for segment families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and print its JSON.
    Gen {
        family: String,
        /// Parameters as `name=value`.
        params: Vec<String>,
        /// Extra `name=value` parameter (repeatable).
        #[arg(long = "param", short = 'p')]
        param: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an algorithm on an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, short = 'a')]
        algorithm: String,
        /// Include the step trace in the output.
        #[arg(long)]
        trace: bool,
        /// Fail unless the result re-checks as an SDR.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a block-count bound.
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Draw an instance as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Export the intersection graph as DOT.
    Graph {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a seeded batch experiment and store the results.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum BoundCommand {
    /// N(n, k)
    #[command(name = "N")]
    N {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// M(n, k, t)
    #[command(name = "M")]
    M {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    /// Lines needed by the few-lines solver: m(n - m) + 1.
    FewLines {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Crossing-count bound for a composition such as `2,2`.
    Intersections {
        #[arg(long, value_delimiter = ',')]
        composition: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidDirection => "invalid_direction",
        Error::InvalidSegment(_) => "invalid_segment",
        Error::InvalidCurve { .. } => "invalid_curve",
        Error::UnknownCurve(_) => "unknown_curve",
        Error::DegenerateOverlap { .. } => "degenerate_overlap",
        Error::Precondition(_) => "precondition",
        Error::InternalInvariant { .. } => "internal_invariant",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::InvalidInstance(_) => "invalid_instance",
        Error::Parse { .. } => "parse",
        Error::InvalidParameters(_) => "invalid_parameters",
        Error::RejectionBudget(_) => "rejection_budget",
        Error::Io(_) => "io",
    }
}

fn error_json(e: &anyhow::Error) -> Value {
    match e.downcast_ref::<Error>() {
        Some(err) => {
            let mut v = json!({ "error": error_kind(err), "message": err.to_string() });
            if let Error::InternalInvariant { state: Some(s), .. } = err {
                v["state"] = s.clone();
            }
            if let Error::InvalidInstance(d) = err {
                v["diagnostics"] = d.iter().map(|d| Value::String(d.to_string())).collect();
            }
            v
        }
        None => json!({ "error": "cli", "message": format!("{e:#}") }),
    }
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(Error::Io(e.to_string()).into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn parse_params(items: impl IntoIterator<Item = String>) -> anyhow::Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameters(format!("expected name=value, got `{item}`")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameters(format!("parameter `{k}` is not an integer: `{v}`")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn solve(file: &Path, algorithm: &str, trace: bool, verify: bool, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let algo: Algorithm = algorithm.parse()?;
    let inst = read_instance_file(file)?;
    let mut tr = if trace { Trace::enabled() } else { Trace::disabled() };
    let outcome = run_algorithm(&inst, algo, &OracleOptions::default(), &mut tr)?;
    let verified = is_sdr(&inst, &outcome.assignment);
    if verify && !verified {
        return Err(Error::InternalInvariant {
            message: format!("{algo} returned an assignment that is not an SDR"),
            state: None,
        }.into());
    }
    let assignment: Vec<Value> = outcome
        .assignment
        .iter()
        .map(|(b, m)| json!({ "block": inst.blocks()[b].label, "member": m.as_str() }))
        .collect();
    let size = outcome.assignment.len();
    let mut v = json!({
        "algorithm": algo.name(),
        "n": inst.n(),
        "size": size,
        "verified": verified,
        "assignment": assignment,
    });
    if let Some(nodes) = outcome.nodes {
        v["nodes"] = nodes.into();
    }
    if let Some(d) = outcome.details {
        v["details"] = d;
    }
    if trace {
        v["trace"] = Value::Array(tr.into_steps());
    }
    emit(&pretty(&v), out)?;
    Ok(if size >= inst.n() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn bound(which: BoundCommand) -> anyhow::Result<Value> {
    Ok(match which {
        BoundCommand::N { n, k } => serde_json::to_value(bound_n(n, k)?)?,
        BoundCommand::M { n, k, t } => serde_json::to_value(bound_m(n, k, t)?)?,
        BoundCommand::FewLines { n, m } => json!({
            "formula_name": "m(n-m)+1",
            "integer_upper_bound": few_lines_threshold(n, m)?.to_string(),
        }),
        BoundCommand::Intersections { composition, t } => {
            let r = intersection_count_bound(&composition, t)?;
            json!({ "exact": r.exact.to_string(), "jensen": format_rational(&r.jensen) })
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            params,
            param,
            seed,
            out,
        } => {
            let family: Family = family.parse()?;
            let spec = GenSpec {
                family,
                params: parse_params(params.into_iter().chain(param))?,
                seed,
            };
            let inst = gen_random_instance(&spec)?;
            emit(&serialize_instance(&inst), out.as_deref())?;
        }
        Command::Solve {
            file,
            algorithm,
            trace,
            verify,
            out,
        } => return solve(&file, &algorithm, trace, verify, out.as_deref()),
        Command::Bound { which } => emit(&pretty(&bound(which)?), None)?,
        Command::Render { file, svg } => {
            let inst = read_instance_file(&file)?;
            emit(&render_svg(&inst)?, svg.as_deref())?;
        }
        Command::Graph { file, dot } => {
            let inst = read_instance_file(&file)?;
            emit(&build_intersection_graph(&inst)?.to_dot(), dot.as_deref())?;
        }
        Command::Experiment {
            spec,
            trials,
            seed,
            out,
        } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| Error::Io(format!("{}: {e}", spec.display())))?;
            let spec = parse_experiment_spec(&text)?;
            let records = run_experiment(&spec, trials, seed)?;
            let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ").to_string();
            let files = write_results(&out, &spec, trials, seed, &stamp, &records)?;
            emit(
                &pretty(&json!({
                    "rows": records.len(),
                    "agreements": records.iter().filter(|r| r.agreement).count(),
                    "csv": files.csv,
                    "timings": files.timings,
                    "manifest": files.manifest,
                })),
                None,
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string() }));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(1)
        }
    }
}
