//! Command-line front end. Every subcommand returns a [`CommandResult`];
//! the binary only prints it and exits with its status.
//!
//! Exit statuses: 0 on success, 1 for a well-formed negative answer ("not
//! necessary", "no explanation"), 2 for usage or data errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::covector::dump;
use crate::error::{Error, Result};
use crate::explain::{
    delta2_graph, find_explanation_detailed, necessary_graph_dot, render_sequence, shortest_explanation_search,
    worst_case_instance, Explanation, MatchOutcome, OrderPolicy, RenderPolicy, SearchLimits, StepKind,
};
use crate::format::{alternative_to_json, instance_to_json, parse_instance, write_instance};
use crate::model::{format_rational, Instance};
use crate::necessity::{falsify_covector, ilp_oracle, Engine};
use crate::rounding::{Boundedness, Query};

/// Environment variable holding the default number of falsifier trials.
pub const FALSIFY_TRIALS_VAR: &str = "PREFSWAP_FALSIFY_TRIALS";
pub const DEFAULT_FALSIFY_TRIALS: usize = 10_000;

pub const SUCCESS: i32 = 0;
pub const NEGATIVE: i32 = 1;
pub const FAILURE: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: i32,
    pub report: String,
    pub payload: Option<Value>,
}

impl CommandResult {
    fn new(status: i32, report: String, payload: Value) -> Self {
        CommandResult {
            status,
            report,
            payload: Some(payload),
        }
    }

    fn error(err: impl std::fmt::Display) -> Self {
        let report = format!("error: {err}\n");
        CommandResult {
            status: FAILURE,
            payload: Some(json!({ "error": err.to_string() })),
            report,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "prefswap",
    version,
    about = "Necessary preference and swap explanations for additive utility models"
)]
pub struct Cli {
    /// Print the machine-readable payload instead of the report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Shortest,
    Reference,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate an instance, then print its reference scales.
    Validate { file: PathBuf },
    /// Print the reference scales.
    Scales { file: PathBuf },
    /// Decide whether x is necessarily preferred to y.
    Check {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Print the cone certificate.
        #[arg(long)]
        certificate: bool,
        /// Cross-check with the bounded integer oracle.
        #[arg(long, value_name = "B")]
        oracle: Option<i64>,
        /// Cross-check with the sampling falsifier.
        #[arg(long, value_name = "TRIALS", num_args = 0..=1, default_missing_value = "0")]
        falsify: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the covector of the rounded query.
    Covector {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Explain x >= y by order-2 swaps on binary scales.
    Explain {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = PolicyArg::Shortest)]
        policy: PolicyArg,
        /// `index`, `strongest-first`, or comma-separated criterion names.
        #[arg(long, default_value = "index")]
        order: String,
    },
    /// List the necessary order-2 swaps between criteria.
    Delta2 {
        file: PathBuf,
        /// Write the relation as DOT.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        /// Write the whole necessary-preference graph over the scales as DOT.
        #[arg(long, value_name = "OUT")]
        graph: Option<PathBuf>,
        /// Drop edges implied by transitivity in `--graph`.
        #[arg(long)]
        reduce: bool,
    },
    /// Breadth-first search for a shortest explanation.
    Shortest {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Write the instance whose shortest explanation needs 2p swaps.
    GenWorstcase {
        p: usize,
        /// Output file; printed to stdout when absent.
        out: Option<PathBuf>,
    },
    /// Compare the exact decision with the integer oracle and the falsifier.
    Oracle {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses arguments and runs the subcommand.
pub fn run<I, T>(args: I) -> (CommandResult, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => (execute(cli.command), cli.json),
        Err(e) => {
            let status = if e.use_stderr() { FAILURE } else { SUCCESS };
            (
                CommandResult {
                    status,
                    report: e.render().to_string(),
                    payload: None,
                },
                false,
            )
        }
    }
}

pub fn execute(command: Command) -> CommandResult {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Scales { file } => cmd_scales(&file),
        Command::Check {
            file,
            x,
            y,
            certificate,
            oracle,
            falsify,
            seed,
        } => {
            let trials = falsify.map(|t| if t == 0 { default_trials() } else { t });
            cmd_check(
                &file,
                &x,
                &y,
                &CheckOptions {
                    certificate,
                    oracle,
                    falsify: trials,
                    seed,
                },
            )
        }
        Command::Covector { file, x, y } => cmd_covector(&file, &x, &y),
        Command::Explain {
            file,
            x,
            y,
            policy,
            order,
        } => cmd_explain(&file, &x, &y, policy, &order),
        Command::Delta2 {
            file,
            dot,
            graph,
            reduce,
        } => cmd_delta2(&file, dot.as_deref(), graph.as_deref(), reduce),
        Command::Shortest {
            file,
            x,
            y,
            max_order,
            budget,
        } => cmd_shortest(&file, &x, &y, SearchLimits { max_order, budget }),
        Command::GenWorstcase { p, out } => cmd_gen_worstcase(p, out.as_deref()),
        Command::Oracle {
            file,
            x,
            y,
            bound,
            trials,
            seed,
        } => cmd_oracle(&file, &x, &y, bound, trials.unwrap_or_else(default_trials), seed),
    }
}

/// Trial count from [`FALSIFY_TRIALS_VAR`], or [`DEFAULT_FALSIFY_TRIALS`].
pub fn default_trials() -> usize {
    std::env::var(FALSIFY_TRIALS_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_FALSIFY_TRIALS)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn load_query(path: &Path, x: &str, y: &str) -> Result<(Engine, Query)> {
    let instance = load_instance(path)?;
    let q = Query::new(instance.resolve_alternative(x)?, instance.resolve_alternative(y)?)?;
    Ok((Engine::new(&instance), q))
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return CommandResult::error(err),
        }
    };
}

fn scales_report(engine: &Engine) -> (String, Value) {
    let inst = engine.instance();
    let width = inst.criteria().iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut report = String::new();
    let mut payload = serde_json::Map::new();
    for (i, c) in inst.criteria().iter().enumerate() {
        let levels: Vec<String> = engine.scales().levels(i).iter().map(|v| c.format_value(v)).collect();
        let _ = writeln!(report, "{:width$}  {{{}}}", c.name, levels.join(", "));
        payload.insert(c.name.clone(), json!(levels));
    }
    (report, Value::Object(payload))
}

pub fn cmd_validate(file: &Path) -> CommandResult {
    let instance = attempt!(load_instance(file));
    let engine = Engine::new(&instance);
    let (scales, scales_json) = scales_report(&engine);
    let report = format!(
        "valid: {} criteria, {} alternatives, {} statements\nreference scales:\n{scales}",
        instance.n(),
        instance.alternatives().len(),
        instance.statements().len()
    );
    let payload = json!({ "instance": instance_to_json(&instance), "scales": scales_json });
    CommandResult::new(SUCCESS, report, payload)
}

pub fn cmd_scales(file: &Path) -> CommandResult {
    let instance = attempt!(load_instance(file));
    let (report, payload) = scales_report(&Engine::new(&instance));
    CommandResult::new(SUCCESS, report, json!({ "scales": payload }))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub certificate: bool,
    pub oracle: Option<i64>,
    pub falsify: Option<usize>,
    pub seed: u64,
}

fn boundedness_text(engine: &Engine, b: Boundedness) -> String {
    let name = |i: usize| engine.instance().criteria()[i].name.clone();
    match b {
        Boundedness::Bounded => "bounded".into(),
        Boundedness::Unbounded { criterion } => format!("unbounded by P on {}", name(criterion)),
        Boundedness::NoScale { criterion } => format!("unbounded by P: no reference levels on {}", name(criterion)),
    }
}

fn rationals(v: &[crate::model::Rational]) -> Value {
    json!(v.iter().map(format_rational).collect::<Vec<_>>())
}

pub fn cmd_check(file: &Path, x: &str, y: &str, options: &CheckOptions) -> CommandResult {
    let (engine, q) = attempt!(load_query(file, x, y));
    let inst = engine.instance();
    let decision = engine.decide(&q);
    let mut report = String::new();
    let mut payload = serde_json::Map::new();
    let _ = writeln!(
        report,
        "query: {} >= {}",
        inst.format_alternative(&q.x),
        inst.format_alternative(&q.y)
    );
    let _ = writeln!(report, "{}", boundedness_text(&engine, decision.boundedness));
    payload.insert("x".into(), alternative_to_json(inst, &q.x));
    payload.insert("y".into(), alternative_to_json(inst, &q.y));
    payload.insert("bounded".into(), json!(decision.boundedness.is_bounded()));

    if let (Some(r), Some(c)) = (&decision.rounded, &decision.covector) {
        let _ = writeln!(
            report,
            "rounded: {} >= {}",
            inst.format_alternative(&r.x_low),
            inst.format_alternative(&r.y_high)
        );
        let _ = writeln!(report, "covector: {c}");
        payload.insert("rounded_x".into(), alternative_to_json(inst, &r.x_low));
        payload.insert("rounded_y".into(), alternative_to_json(inst, &r.y_high));
        payload.insert("covector".into(), json!(c.coefficients()));
    }
    let necessary = decision.is_necessary();
    let _ = writeln!(
        report,
        "verdict: {}",
        if necessary { "necessary" } else { "not necessary" }
    );
    payload.insert("necessary".into(), json!(necessary));

    if let Some(cert) = decision.certificate.as_ref().filter(|_| options.certificate) {
        report.push_str(&engine.render_certificate(cert));
        payload.insert(
            "certificate".into(),
            json!({ "lambda": rationals(&cert.lambda), "mu": rationals(&cert.mu) }),
        );
    }
    if let (Some(bound), Some(c)) = (options.oracle, &decision.covector) {
        let system = attempt!(engine.cone_system(c.clone()));
        match attempt!(ilp_oracle(&system, bound)) {
            Some(int) => {
                let _ = writeln!(
                    report,
                    "integer oracle (B = {bound}): found r = {}, ell = {:?}, m = {:?}",
                    int.r, int.ell, int.m
                );
                payload.insert(
                    "oracle".into(),
                    json!({ "found": true, "r": int.r, "ell": int.ell, "m": int.m }),
                );
            }
            None => {
                let _ = writeln!(report, "integer oracle (B = {bound}): nothing found");
                payload.insert("oracle".into(), json!({ "found": false }));
            }
        }
    }
    if let (Some(trials), Some(c)) = (options.falsify, &decision.covector) {
        match falsify_covector(engine.statement_covectors(), c, trials, options.seed) {
            Some(w) => {
                let _ = writeln!(
                    report,
                    "falsifier ({trials} trials, seed {}): counterexample w = {w:?}",
                    options.seed
                );
                payload.insert("falsifier".into(), json!({ "counterexample": w }));
            }
            None => {
                let _ = writeln!(
                    report,
                    "falsifier ({trials} trials, seed {}): no counterexample",
                    options.seed
                );
                payload.insert("falsifier".into(), json!({ "counterexample": null }));
            }
        }
    }
    let status = if necessary { SUCCESS } else { NEGATIVE };
    CommandResult::new(status, report, Value::Object(payload))
}

pub fn cmd_covector(file: &Path, x: &str, y: &str) -> CommandResult {
    let (engine, q) = attempt!(load_query(file, x, y));
    let b = engine.decide(&q).boundedness;
    if !b.is_bounded() {
        let text = boundedness_text(&engine, b);
        return CommandResult::new(NEGATIVE, format!("{text}\n"), json!({ "bounded": false }));
    }
    let c = attempt!(engine.rounded_covector(&q));
    let report = dump(&c, engine.instance(), engine.scales(), engine.index());
    CommandResult::new(
        SUCCESS,
        report,
        json!({ "bounded": true, "covector": c.coefficients() }),
    )
}

fn parse_order(engine: &Engine, spec: &str) -> Result<OrderPolicy> {
    match spec.trim() {
        "index" => Ok(OrderPolicy::Index),
        "strongest-first" => Ok(OrderPolicy::StrongestFirst),
        list => list
            .split(',')
            .map(|name| {
                let name = name.trim();
                engine
                    .instance()
                    .criterion_index(name)
                    .ok_or_else(|| Error::UnknownCriterion(name.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(OrderPolicy::AsGiven),
    }
}

fn names(engine: &Engine, ids: &[usize]) -> Vec<String> {
    ids.iter()
        .map(|&i| engine.instance().criteria()[i].name.clone())
        .collect()
}

fn explanation_payload(engine: &Engine, ex: &Explanation) -> Value {
    let inst = engine.instance();
    let steps: Vec<Value> = ex
        .steps
        .iter()
        .map(|s| {
            let kind = match &s.kind {
                StepKind::Dominance => json!({ "kind": "dominance" }),
                StepKind::Swap { positive, negative } => {
                    json!({ "kind": "swap", "positive": names(engine, positive), "negative": names(engine, negative) })
                }
            };
            json!({ "from": alternative_to_json(inst, &s.from), "to": alternative_to_json(inst, &s.to), "by": kind })
        })
        .collect();
    json!({ "length": ex.len(), "swaps": ex.swap_count(), "steps": steps })
}

pub fn cmd_explain(file: &Path, x: &str, y: &str, policy: PolicyArg, order: &str) -> CommandResult {
    let (engine, q) = attempt!(load_query(file, x, y));
    if let Err(e) = engine.scales().require_binary() {
        return CommandResult::error(format!("{e}; use the `shortest` subcommand for general scales"));
    }
    let order = attempt!(parse_order(&engine, order));
    let outcome = attempt!(find_explanation_detailed(&engine, &q));
    let (arguments, matching) = match outcome {
        MatchOutcome::Matched { arguments, matching } => (arguments, matching),
        MatchOutcome::NotNecessary => {
            return CommandResult::new(NEGATIVE, "not necessary\n".into(), json!({ "necessary": false }))
        }
        MatchOutcome::TooFewPositive { arguments } => {
            let report = format!(
                "no order-2 explanation: {} positive against {} negative arguments\n",
                arguments.positive.len(),
                arguments.negative.len()
            );
            return CommandResult::new(NEGATIVE, report, json!({ "explained": false }));
        }
        MatchOutcome::NoCoveringMatching { arguments, matched } => {
            let report = format!(
                "necessary but no order-2 explanation: {matched} of {} negative arguments matched\n",
                arguments.negative.len()
            );
            return CommandResult::new(NEGATIVE, report, json!({ "necessary": true, "explained": false }));
        }
    };
    let order = attempt!(order.resolve(&matching));
    let policy = match policy {
        PolicyArg::Shortest => RenderPolicy::Shortest,
        PolicyArg::Reference => RenderPolicy::Reference,
    };
    let ex = attempt!(render_sequence(&engine, &q, &matching, policy, &order));

    let mut report = String::new();
    let _ = writeln!(
        report,
        "positive: {{{}}}",
        names(&engine, &arguments.positive).join(", ")
    );
    let _ = writeln!(
        report,
        "negative: {{{}}}",
        names(&engine, &arguments.negative).join(", ")
    );
    report.push_str("matching:\n");
    let mut pairs = Vec::new();
    for &(neg, pos) in matching.pairs() {
        let (p, n) = (names(&engine, &[pos]).remove(0), names(&engine, &[neg]).remove(0));
        let _ = writeln!(report, "  {p} >= {n}");
        pairs.push(json!([p, n]));
    }
    report.push_str("explanation:\n");
    report.push_str(&ex.render(engine.instance()));
    let mut payload = explanation_payload(&engine, &ex);
    payload["matching"] = json!(pairs);
    CommandResult::new(SUCCESS, report, payload)
}

pub fn cmd_delta2(file: &Path, dot: Option<&Path>, graph: Option<&Path>, reduce: bool) -> CommandResult {
    let instance = attempt!(load_instance(file));
    let engine = Engine::new(&instance);
    let relation = attempt!(delta2_graph(&engine));
    let mut report = String::new();
    let mut edges = Vec::new();
    for (i, j) in relation.edges() {
        let (a, b) = (&instance.criteria()[i].name, &instance.criteria()[j].name);
        let _ = writeln!(report, "{a} -> {b}");
        edges.push(json!([a, b]));
    }
    let _ = writeln!(report, "{} edges", relation.len());
    if let Some(path) = dot {
        attempt!(std::fs::write(path, relation.to_dot(&instance)));
        let _ = writeln!(report, "wrote {}", path.display());
    }
    if let Some(path) = graph {
        let text = attempt!(necessary_graph_dot(&engine, reduce));
        attempt!(std::fs::write(path, text));
        let _ = writeln!(report, "wrote {}", path.display());
    }
    CommandResult::new(SUCCESS, report, json!({ "edges": edges }))
}

pub fn cmd_shortest(file: &Path, x: &str, y: &str, limits: SearchLimits) -> CommandResult {
    let (engine, q) = attempt!(load_query(file, x, y));
    match attempt!(shortest_explanation_search(&engine, &q, limits)) {
        Some(ex) => {
            let report = format!(
                "{} steps, {} swaps\n{}",
                ex.len(),
                ex.swap_count(),
                ex.render(engine.instance())
            );
            CommandResult::new(SUCCESS, report, explanation_payload(&engine, &ex))
        }
        None => {
            let report = if engine.is_necessary(&q) {
                format!(
                    "necessary but no explanation with swaps of order <= {}\n",
                    limits.max_order
                )
            } else {
                "not necessary\n".to_string()
            };
            CommandResult::new(NEGATIVE, report, json!({ "explained": false }))
        }
    }
}

pub fn cmd_gen_worstcase(p: usize, out: Option<&Path>) -> CommandResult {
    let (instance, _) = attempt!(worst_case_instance(p));
    let text = write_instance(&instance);
    let report = match out {
        Some(path) => {
            attempt!(std::fs::write(path, format!("{text}\n")));
            format!(
                "wrote {} ({} statements)\n",
                path.display(),
                instance.statements().len()
            )
        }
        None => format!("{text}\n"),
    };
    CommandResult::new(SUCCESS, report, json!({ "instance": instance_to_json(&instance) }))
}

pub fn cmd_oracle(file: &Path, x: &str, y: &str, bound: i64, trials: usize, seed: u64) -> CommandResult {
    let (engine, q) = attempt!(load_query(file, x, y));
    let decision = engine.decide(&q);
    let necessary = decision.is_necessary();
    let mut report = format!("exact: {}\n", if necessary { "necessary" } else { "not necessary" });
    let Some(c) = decision.covector else {
        let _ = writeln!(report, "{}", boundedness_text(&engine, decision.boundedness));
        return CommandResult::new(NEGATIVE, report, json!({ "necessary": false, "bounded": false }));
    };
    let system = attempt!(engine.cone_system(c.clone()));
    let found = attempt!(ilp_oracle(&system, bound));
    let witness = falsify_covector(engine.statement_covectors(), &c, trials, seed);
    let _ = writeln!(
        report,
        "integer oracle (B = {bound}): {}",
        if found.is_some() { "found" } else { "nothing found" }
    );
    let _ = writeln!(
        report,
        "falsifier ({trials} trials, seed {seed}): {}",
        match &witness {
            Some(w) => format!("counterexample {w:?}"),
            None => "no counterexample".into(),
        }
    );
    let consistent = (found.is_none() || necessary) && (witness.is_none() || !necessary);
    if !consistent {
        report.push_str("CONTRADICTION between exact decision and oracles\n");
    }
    let payload = json!({
        "necessary": necessary,
        "oracle_found": found.is_some(),
        "counterexample": witness,
        "consistent": consistent,
    });
    let status = if !consistent {
        FAILURE
    } else if necessary {
        SUCCESS
    } else {
        NEGATIVE
    };
    CommandResult::new(status, report, payload)
}
