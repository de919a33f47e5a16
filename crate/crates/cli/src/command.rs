//! Argument parsing and subcommand dispatch, kept free of process-global side effects
//! (except `serve`) so it can be driven from tests.

use std::ffi::OsString;
use std::fs;
use std::io;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use aerorisk_core::calibration::{derive_priors, load_frequency_table};
use aerorisk_core::fixtures::{CRASH_SPEC_JSON, FREQUENCY_TABLE_JSON, HAZARDS_JSON};
use aerorisk_core::safety::RegistryError;
use aerorisk_core::scenario::Direction;
use aerorisk_core::{
    assemble_crash_model, emit_report, registry_load, run_scenario, sensitivity_tornado,
    BayesianNetwork, CrashModelSpec, Evidence, HazardRecord, InferenceError, Policy, ReportFormat,
    Scenario, ScenarioResult,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::service::{default_sensitivity_nodes, Service};
use crate::store::ModelStore;

/// Outcome of one invocation. Machine output goes to `stdout`, everything else to
/// `diagnostics` (the binary prints those on standard error).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub diagnostics: Vec<String>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "aerorisk",
    version,
    about = "UAV mission hazard registry and Bayesian crash-risk analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Markdown,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Markdown => ReportFormat::Markdown,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum PolicyArg {
    #[default]
    Mean,
    Median,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Mean => Policy::Mean,
            PolicyArg::Median => Policy::Median,
        }
    }
}

#[derive(Debug, Args)]
struct EvidenceArgs {
    /// Observation NODE=STATE; repeatable.
    #[arg(long = "evidence", value_name = "NODE=STATE", value_parser = parse_observation)]
    evidence: Vec<(String, String)>,
}

impl EvidenceArgs {
    fn to_evidence(&self) -> Evidence {
        self.evidence.iter().cloned().collect()
    }
}

fn parse_observation(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((n, v)) if !n.is_empty() && !v.is_empty() => Ok((n.to_string(), v.to_string())),
        _ => Err(format!("expected NODE=STATE, got {s:?}")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a hazard registry against the risk matrix, taxonomy and risk graph.
    Validate {
        #[arg(long)]
        registry: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Derive factor priors and assemble the crash network.
    Assemble {
        /// Frequency table; defaults to the shipped fixture.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Crash model spec; defaults to the shipped fixture.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        policy: PolicyArg,
        /// Write the network here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a scenario document against a network.
    Run {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Posterior of an upstream node given observed effects.
    Diagnose {
        #[arg(long)]
        model: PathBuf,
        /// Scenario document; alternative to --query/--evidence.
        #[arg(long, conflicts_with_all = ["query", "evidence"], required_unless_present = "query")]
        scenario: Option<PathBuf>,
        #[arg(long)]
        query: Option<String>,
        #[command(flatten)]
        evidence: EvidenceArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// One-way sensitivity of a target state to each sensitivity node.
    Tornado {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        state: String,
        /// Comma-separated; defaults to every unobserved ancestor of the target.
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<String>,
        #[command(flatten)]
        evidence: EvidenceArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Hazard register, scenario results and sensitivity in one document.
    Report {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Repeatable.
        #[arg(long)]
        scenario: Vec<PathBuf>,
        /// Tornado target; defaults to the first scenario's target.
        #[arg(long)]
        target: Option<String>,
        /// Tornado target state; defaults to the target's last state.
        #[arg(long)]
        state: Option<String>,
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<String>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: FormatArg,
    },
    /// Serve the /v1 HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        /// Model store directory.
        #[arg(long, env = "AERORISK_STORE", default_value = "aerorisk-store")]
        store: PathBuf,
        /// Registry served at /v1/registry; defaults to the shipped fixture.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error("server: {0}")]
    Server(io::Error),
}

impl CliError {
    fn input(path: &Path, e: impl ToString) -> Self {
        CliError::Input {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

struct Output {
    exit_code: i32,
    stdout: String,
    diagnostics: Vec<String>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            exit_code: EXIT_OK,
            stdout,
            diagnostics: Vec::new(),
        }
    }
}

/// Parses `args` (without the program name) and runs the selected subcommand.
pub fn execute_command<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("aerorisk")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    diagnostics: lines(&text),
                }
            } else {
                CommandResult {
                    exit_code: EXIT_OK,
                    stdout: text,
                    diagnostics: Vec::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => CommandResult {
            exit_code: out.exit_code,
            stdout: out.stdout,
            diagnostics: out.diagnostics,
        },
        Err(e) => CommandResult {
            exit_code: e.exit_code(),
            stdout: String::new(),
            diagnostics: vec![format!("error: {e}")],
        },
    }
}

fn lines(text: &str) -> Vec<String> {
    text.trim_end().lines().map(str::to_string).collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_model(path: &Path) -> Result<BayesianNetwork, CliError> {
    BayesianNetwork::from_json(&read(path)?).map_err(|e| CliError::input(path, e))
}

fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    Scenario::from_json(&read(path)?).map_err(|e| CliError::input(path, e))
}

fn load_registry(path: &Path) -> Result<Vec<HazardRecord>, CliError> {
    registry_load(&read(path)?).map_err(|e| CliError::input(path, e))
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialization is infallible");
    s.push('\n');
    s
}

fn warnings(result: &ScenarioResult) -> Vec<String> {
    result
        .warnings
        .iter()
        .map(|w| format!("warning: {w}"))
        .collect()
}

fn dispatch(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Validate { registry, format } => validate(&registry, format),
        Command::Assemble {
            table,
            spec,
            policy,
            output,
        } => {
            let table_doc = table.as_deref().map(read).transpose()?;
            let table = load_frequency_table(table_doc.as_deref().unwrap_or(FREQUENCY_TABLE_JSON))
                .map_err(|e| {
                    CliError::input(table.as_deref().unwrap_or(Path::new("<fixture table>")), e)
                })?;
            let priors = derive_priors(&table, policy.into())
                .map_err(|e| CliError::input(Path::new("<frequency table>"), e))?;
            let spec_doc = spec.as_deref().map(read).transpose()?;
            let spec_path = spec.as_deref().unwrap_or(Path::new("<fixture spec>"));
            let spec = CrashModelSpec::from_json(spec_doc.as_deref().unwrap_or(CRASH_SPEC_JSON))
                .map_err(|e| CliError::input(spec_path, e))?;
            let net =
                assemble_crash_model(&priors, &spec).map_err(|e| CliError::input(spec_path, e))?;
            let mut doc = net.to_json();
            doc.push('\n');
            match output {
                None => Ok(Output::ok(doc)),
                Some(path) => {
                    fs::write(&path, doc).map_err(|source| CliError::Write {
                        path: path.clone(),
                        source,
                    })?;
                    Ok(Output {
                        exit_code: EXIT_OK,
                        stdout: String::new(),
                        diagnostics: vec![format!(
                            "wrote {} ({} nodes)",
                            path.display(),
                            net.len()
                        )],
                    })
                }
            }
        }
        Command::Run {
            model,
            scenario,
            format,
        } => {
            let net = load_model(&model)?;
            let sc = load_scenario(&scenario)?;
            let result = run_scenario(&net, &sc)?;
            Ok(scenario_output(result, format))
        }
        Command::Diagnose {
            model,
            scenario,
            query,
            evidence,
            format,
        } => {
            let net = load_model(&model)?;
            let sc = match (scenario, query) {
                (Some(path), _) => load_scenario(&path)?,
                (None, Some(q)) => {
                    Scenario::new("diagnose", q, Direction::Diagnostic, evidence.to_evidence())
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "either --scenario or --query is required".into(),
                    ))
                }
            };
            let mut out = scenario_output(run_scenario(&net, &sc)?, format);
            if sc.direction != Direction::Diagnostic {
                out.diagnostics.push(format!(
                    "warning: scenario {:?} is not marked diagnostic",
                    sc.name
                ));
            }
            Ok(out)
        }
        Command::Tornado {
            model,
            target,
            state,
            nodes,
            evidence,
            format,
        } => {
            let net = load_model(&model)?;
            let e = evidence.to_evidence();
            let nodes = if nodes.is_empty() {
                default_sensitivity_nodes(&net, &target, &e)?
            } else {
                nodes
            };
            let refs: Vec<&str> = nodes.iter().map(String::as_str).collect();
            let report = sensitivity_tornado(&net, &target, &state, &refs, &e)?;
            Ok(Output::ok(match format {
                FormatArg::Json => json_line(&report),
                FormatArg::Markdown => emit_report(&[], &[report], &[], ReportFormat::Markdown),
            }))
        }
        Command::Report {
            model,
            registry,
            scenario,
            target,
            state,
            nodes,
            format,
        } => {
            let net = load_model(&model)?;
            let registry = registry
                .as_deref()
                .map(load_registry)
                .transpose()?
                .unwrap_or_default();
            let mut results = Vec::with_capacity(scenario.len());
            let mut diagnostics = Vec::new();
            for path in &scenario {
                let r = run_scenario(&net, &load_scenario(path)?)?;
                diagnostics.extend(warnings(&r));
                results.push(r);
            }
            let target = target.or_else(|| results.first().map(|r| r.target().to_string()));
            let mut tornado = Vec::new();
            if let Some(target) = target {
                let spec = net
                    .node_by_name(&target)
                    .ok_or_else(|| InferenceError::UnknownNode(target.clone()))?;
                let state = match state {
                    Some(s) => s,
                    None => spec
                        .states
                        .last()
                        .expect("nodes have at least two states")
                        .clone(),
                };
                let nodes = if nodes.is_empty() {
                    default_sensitivity_nodes(&net, &target, &Evidence::new())?
                } else {
                    nodes
                };
                let refs: Vec<&str> = nodes.iter().map(String::as_str).collect();
                tornado.push(sensitivity_tornado(
                    &net,
                    &target,
                    &state,
                    &refs,
                    &Evidence::new(),
                )?);
            }
            Ok(Output {
                exit_code: EXIT_OK,
                stdout: emit_report(&results, &tornado, &registry, format.into()),
                diagnostics,
            })
        }
        Command::Serve {
            port,
            host,
            store,
            registry,
        } => {
            let registry = match registry {
                Some(path) => load_registry(&path)?,
                None => registry_load(HAZARDS_JSON).expect("fixture registry is valid"),
            };
            let store =
                ModelStore::open(&store).map_err(|e| CliError::Server(io::Error::other(e)))?;
            let service = Arc::new(Service::new(store, registry));
            let runtime = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(CliError::Server)?;
            runtime
                .block_on(crate::server::serve(service, SocketAddr::new(host, port)))
                .map_err(CliError::Server)?;
            Ok(Output::ok(String::new()))
        }
    }
}

fn validate(path: &Path, format: FormatArg) -> Result<Output, CliError> {
    let doc = read(path)?;
    match registry_load(&doc) {
        Ok(records) => {
            let stdout = match format {
                FormatArg::Json => {
                    json_line(&serde_json::json!({ "valid": true, "records": records.len() }))
                }
                FormatArg::Markdown => emit_report(&[], &[], &records, ReportFormat::Markdown),
            };
            Ok(Output {
                exit_code: EXIT_OK,
                stdout,
                diagnostics: vec![format!("{} records valid", records.len())],
            })
        }
        Err(RegistryError::Validation(violations)) => Ok(Output {
            exit_code: EXIT_FAILURE,
            stdout: json_line(&serde_json::json!({ "valid": false, "violations": violations })),
            diagnostics: violations
                .iter()
                .map(|v| {
                    format!(
                        "{}: hazard {}: {}: {}",
                        path.display(),
                        v.id,
                        v.violation.field(),
                        v.violation
                    )
                })
                .collect(),
        }),
        Err(e @ RegistryError::Parse(_)) => Err(CliError::input(path, e)),
    }
}

fn scenario_output(result: ScenarioResult, format: FormatArg) -> Output {
    let diagnostics = warnings(&result);
    let stdout = match format {
        FormatArg::Json => json_line(&result),
        FormatArg::Markdown => emit_report(
            std::slice::from_ref(&result),
            &[],
            &[],
            ReportFormat::Markdown,
        ),
    };
    Output {
        exit_code: EXIT_OK,
        stdout,
        diagnostics,
    }
}
