//! The `csc` command line: argument parsing, command dispatch and reports.
//!
//! Exit codes: `0` verified or holds, `1` refuted or violated, `2` unknown
//! or undetermined, `3` usage or input error.

pub mod demos;

use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cycles::{
    cycle_of_inductive_formula, inductive_formula_of_cycle, reduce_external_offset, reduce_param_cycle,
    verify_param_cycle, verify_param_refutation, CycleError, ParamCycleSpec, Status,
};
use crate::descent::{descent_for_formula, DescentError};
use crate::entailment::{prove, Budget, EngineError};
use crate::models::{holds_bounded, Assignment, Bounds, ModelElement, ModelError, Outcome, StructureId};
use crate::normalize::{shift_and_strip, to_components, NormalizeError};
use crate::syntax::{
    parse, parse_clause_set, parse_formula, parse_term, ClauseSet, Formula, Language, Parsed, SyntaxError,
};
use crate::theories::{axiom_b, builtin, is_inductive, Theory, TheoryError};

pub use demos::{demo_suite, run_demo, DemoOptions, DemoReport, DemoSpec, SuiteReport, MANIFEST};

/// Schema tag of every JSON report.
pub const SCHEMA: &str = "csc-report/1";

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Exit code of a status.
pub fn status_code(s: Status) -> i32 {
    match s {
        Status::Yes => EXIT_HOLDS,
        Status::No => EXIT_VIOLATED,
        Status::Undetermined => EXIT_UNKNOWN,
    }
}

#[derive(Debug, Parser)]
#[command(name = "csc", version, about = "Clause set cycles over linear arithmetic")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Lang {
    /// `{0, s, p, +}` with `eta`.
    La,
    /// `{0, s, P, f}` with `eta`.
    Pf,
}

#[derive(Debug, Args)]
struct Global {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value = "la")]
    lang: Lang,
    /// Budget profile: default, tiny or large.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Largest number of inferences per query
    #[arg(long, global = true)]
    budget_inferences: Option<u64>,
    /// Largest term depth used for instantiation.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Largest witness magnitude searched for evidence
    #[arg(long, global = true)]
    budget_magnitude: Option<i64>,
    /// Wall-clock limit per query in seconds.
    #[arg(long, global = true)]
    time_cap: Option<f64>,
    /// Adds the clauses of a theory (B, Bprime, P, V:<k> or B1..B4) to
    /// every clause set read.
    #[arg(long = "with", global = true, value_name = "THEORY")]
    with: Vec<String>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, default_value = "M:1")]
    structure: String,
    /// Largest absolute value enumerated.
    #[arg(long, default_value_t = 30)]
    bound: i64,
    #[arg(long, default_value_t = 2)]
    type_cap: u64,
    #[arg(long, default_value_t = 15)]
    witness_bound: i64,
    /// Fixed values such as `eta=0^[1]` or `x=3`.
    #[arg(long = "assign", value_name = "NAME=ELEMENT")]
    assign: Vec<String>,
}

/// Inputs are `-` for stdin, a path to an existing file, or inline text.
/// Inline clause sets may separate clauses with `;`.
#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a term, formula or clause set and print it back.
    Parse { input: String },
    /// Check the cycle conditions, optionally with step `j` and offset `k`.
    IsCycle {
        input: String,
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long, default_value_t = 0)]
        k: u64,
    },
    /// Remove the step size and internal offset of a parameterized cycle.
    Reduce {
        input: String,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = 0)]
        k: u64,
    },
    /// Check that the cycle `c` refutes the clause set `d`.
    Refutes {
        d: String,
        c: String,
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        offset: u64,
    },
    /// Build the plain cycle refuting `d` from a cycle with an external offset.
    ReduceOffset {
        d: String,
        c: String,
        #[arg(long)]
        offset: u64,
    },
    /// The inductive existential formula of a cycle.
    ToInductive { input: String },
    /// The cycle of an inductive existential formula.
    FromInductive { input: String },
    /// Check that a formula is inductive in `var` over a theory.
    Inductive {
        input: String,
        #[arg(long, default_value = "x")]
        var: String,
        /// B, Bprime, P, V:<k> or empty.
        #[arg(long, default_value = "B")]
        theory: String,
    },
    /// Prove a sentence from a theory.
    Prove {
        input: String,
        #[arg(long, default_value = "B")]
        theory: String,
    },
    /// The components of an existential formula.
    Components { input: String },
    /// Shift and strip an existential formula to a 0-free, p-free one.
    Normalize {
        input: String,
        /// Comma-separated shifted variables; defaults to the free variables.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// Include every rewrite step with its measures.
        #[arg(long)]
        trace: bool,
    },
    /// A descending integer solution sequence of a one-variable formula.
    Descent {
        input: String,
        #[arg(long, default_value_t = 20)]
        bound: u64,
        #[arg(long, default_value_t = 10)]
        length: usize,
    },
    /// Evaluate a term in a structure.
    ModelEval {
        input: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Bounded check of a formula or clause set in a structure.
    ModelCheck {
        input: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Run a named demonstration, or list them.
    Demo {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        demo: DemoArgs,
    },
    /// Run every demonstration and compare with the expected statuses.
    Suite {
        #[command(flatten)]
        demo: DemoArgs,
    },
}

#[derive(Debug, Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 30)]
    bound: i64,
    #[arg(long, default_value_t = 15)]
    witness_bound: i64,
    /// Weak cancellation parameters, all three or none.
    #[arg(long, requires_all = ["n", "m"])]
    k: Option<u64>,
    #[arg(long, requires_all = ["k", "m"])]
    n: Option<u64>,
    #[arg(long, requires_all = ["k", "n"])]
    m: Option<u64>,
}

/// Output of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub code: i32,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    fn new(command: &str, status: Option<Status>, lines: Vec<String>, data: Value) -> Report {
        let code = status.map_or(EXIT_HOLDS, status_code);
        Report { command: command.to_string(), code, lines, data }
    }

    pub fn json(&self) -> Value {
        json!({ "schema": SCHEMA, "command": self.command, "exit_code": self.code, "result": self.data })
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json()).expect("reports serialize")
        } else {
            self.lines.join("\n").trim_end().to_string()
        }
    }
}

fn read_input(input: &str) -> Result<String, CliError> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io { path: "stdin".into(), reason: e.to_string() })?;
        return Ok(s);
    }
    let path = Path::new(input);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| CliError::Io { path: input.into(), reason: e.to_string() });
    }
    Ok(input.to_string())
}

fn read_clause_set(input: &str, g: &Global) -> Result<ClauseSet, CliError> {
    let text = read_input(input)?;
    let text = if text.contains('\n') { text } else { text.replace(';', "\n") };
    let mut c = parse_clause_set(&text, &g.language())?;
    for name in &g.with {
        c = theory(name, &g.language())?.clauses()?.union(&c);
    }
    Ok(c)
}

fn read_formula(input: &str, lang: &Language) -> Result<Formula, CliError> {
    Ok(parse_formula(read_input(input)?.trim(), lang)?)
}

/// `5`, `-3^[1]`, `(-3)^[1]` or `0^[2]`.
pub fn parse_element(text: &str) -> Result<ModelElement, CliError> {
    let bad = || CliError::Usage(format!("invalid element `{text}` (expected n or n^[t])"));
    let (value, ty) = match text.trim().split_once("^[") {
        Some((v, t)) => (v, t.strip_suffix(']').ok_or_else(bad)?),
        None => (text.trim(), "0"),
    };
    let value = value.trim_start_matches('(').trim_end_matches(')');
    Ok(ModelElement::new(ty.parse().map_err(|_| bad())?, value.parse().map_err(|_| bad())?))
}

fn parse_assignment(items: &[String]) -> Result<Assignment, CliError> {
    items
        .iter()
        .map(|a| {
            let (x, e) =
                a.split_once('=').ok_or_else(|| CliError::Usage(format!("expected NAME=ELEMENT, got `{a}`")))?;
            Ok((x.trim().to_string(), parse_element(e)?))
        })
        .collect()
}

fn theory(name: &str, lang: &Language) -> Result<Theory, CliError> {
    match name {
        "empty" => Ok(Theory::empty(lang.clone())),
        "B1" | "B2" | "B3" | "B4" => Ok(axiom_b(name[1..].parse().expect("digit"))),
        _ => Ok(builtin(name)?),
    }
}

impl Global {
    fn language(&self) -> Language {
        match self.lang {
            Lang::La => Language::default(),
            Lang::Pf => Language::induction_language(),
        }
    }

    fn budget(&self) -> Result<Budget, CliError> {
        let mut b = match &self.budget {
            Some(name) => {
                Budget::profile(name).ok_or_else(|| CliError::Usage(format!("unknown budget profile `{name}`")))?
            }
            None => Budget::from_env(),
        };
        if let Some(n) = self.budget_inferences {
            b.max_inferences = n;
        }
        if let Some(d) = self.depth {
            b.max_term_depth = d;
        }
        if let Some(m) = self.budget_magnitude {
            b.max_witness_magnitude = m;
        }
        if let Some(t) = self.time_cap {
            b.time_cap = t;
        }
        b.validate()?;
        Ok(b)
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn demo_options(g: &Global, d: &DemoArgs) -> Result<DemoOptions, CliError> {
    let cancellation = match (d.k, d.n, d.m) {
        (Some(k), Some(n), Some(m)) => Some((k, n, m)),
        _ => None,
    };
    Ok(DemoOptions { budget: g.budget()?, bound: d.bound, witness_bound: d.witness_bound, cancellation })
}

fn demo_lines(r: &DemoReport) -> Vec<String> {
    let mut lines = vec![
        format!("demo {}: {}", r.name, r.shows),
        format!("status: {} (expected {}, {})", r.status, r.expected, if r.matches { "matches" } else { "MISMATCH" }),
    ];
    lines.extend(r.details.iter().map(|d| format!("  {d}")));
    lines
}

fn execute(cli: Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let lang = g.language();
    Ok(match cli.command {
        Command::Parse { input } => {
            let parsed = parse(read_input(&input)?.trim(), &lang)?;
            let (kind, text) = match &parsed {
                Parsed::Term(t) => ("term", t.to_string()),
                Parsed::Formula(f) => ("formula", f.to_string()),
                Parsed::ClauseSet(c) => ("clause set", c.to_string()),
            };
            Report::new("parse", None, vec![format!("{kind}: {text}")], json!({ "kind": kind, "text": text }))
        }
        Command::IsCycle { input, j, k } => {
            let c = read_clause_set(&input, g)?;
            let r = verify_param_cycle(&c, ParamCycleSpec::new(j, k, 0)?, &g.budget()?)?;
            let mut lines = vec![format!("descent: {}", r.c1)];
            lines.extend(r.c2.iter().enumerate().map(|(m, v)| format!("base at {m}: {v}")));
            lines.push(format!("({j},{k})-cycle: {}", r.is_cycle));
            Report::new("is-cycle", Some(r.is_cycle), lines, to_value(&r))
        }
        Command::Reduce { input, j, k } => {
            let c = read_clause_set(&input, g)?;
            let reduced = reduce_param_cycle(&c, j, k)?;
            Report::new("reduce", None, vec![reduced.to_string()], json!({ "clauses": reduced.to_string() }))
        }
        Command::Refutes { d, c, j, k, offset } => {
            let (d, c) = (read_clause_set(&d, g)?, read_clause_set(&c, g)?);
            let cert = verify_param_refutation(&d, &c, ParamCycleSpec::new(j, k, offset)?, &g.budget()?)?;
            let mut lines = vec![format!("descent: {}", cert.report.c1)];
            lines.extend(cert.report.c2.iter().enumerate().map(|(m, v)| format!("base at {m}: {v}")));
            lines.push(format!("D entails C: {}", cert.c3));
            lines.extend(cert.base.iter().enumerate().map(|(m, v)| format!("D at {m} refuted: {v}")));
            lines.push(format!("refutation: {}", cert.valid));
            Report::new("refutes", Some(cert.valid), lines, to_value(&cert))
        }
        Command::ReduceOffset { d, c, offset } => {
            let (d, c) = (read_clause_set(&d, g)?, read_clause_set(&c, g)?);
            let plain = reduce_external_offset(&d, &c, offset)?;
            Report::new("reduce-offset", None, vec![plain.to_string()], json!({ "clauses": plain.to_string() }))
        }
        Command::ToInductive { input } => {
            let cert = inductive_formula_of_cycle(&read_clause_set(&input, g)?)?;
            Report::new(
                "to-inductive",
                None,
                vec![format!("{} (induction variable {})", cert.formula, cert.var)],
                to_value(&cert),
            )
        }
        Command::FromInductive { input } => {
            let psi = read_formula(&input, &lang)?;
            match cycle_of_inductive_formula(&psi, &g.budget()?) {
                Ok(c) => Report::new("from-inductive", None, vec![c.to_string()], json!({ "clauses": c.to_string() })),
                Err(CycleError::NotInductive { base, step }) => {
                    let status = Status::of([&*base, &*step]);
                    Report::new(
                        "from-inductive",
                        Some(status),
                        vec![format!("not inductive: base {base}, step {step}")],
                        json!({ "base": base, "step": step }),
                    )
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Inductive { input, var, theory: name } => {
            let phi = read_formula(&input, &lang)?;
            let (base, step) = is_inductive(&theory(&name, &lang)?, &phi, &var, &g.budget()?)?;
            let status = Status::of([&base, &step]);
            let lines = vec![format!("base: {base}"), format!("step: {step}"), format!("inductive: {status}")];
            Report::new("inductive", Some(status), lines, json!({ "base": base, "step": step, "status": status }))
        }
        Command::Prove { input, theory: name } => {
            let phi = read_formula(&input, &lang)?;
            let v = prove(&theory(&name, &lang)?, &phi, &g.budget()?)?;
            Report::new("prove", Some(Status::of([&v])), vec![v.to_string()], to_value(&v))
        }
        Command::Components { input } => {
            let cs = to_components(&read_formula(&input, &lang)?)?;
            let lines = cs.iter().enumerate().map(|(i, c)| format!("{i}: {c}")).collect();
            Report::new("components", None, lines, to_value(&cs))
        }
        Command::Normalize { input, vars, trace } => {
            let phi = read_formula(&input, &lang)?;
            let vars = if vars.is_empty() { phi.free_vars() } else { vars };
            let s = shift_and_strip(&phi, &vars)?;
            let mut lines = vec![format!("shift: {}", s.shift), format!("formula: {}", s.formula)];
            lines.extend(s.cores.iter().map(|c| format!("core: {c}")));
            lines.push(format!("measures decrease: {}", s.measures_decrease()));
            if trace {
                lines.extend(s.log().map(|st| {
                    let after: Vec<String> = st.after.iter().map(|m| m.to_string()).collect();
                    format!("{:?} on {} in {}: {} -> [{}]", st.rule, st.literal, st.input, st.before, after.join(", "))
                }));
            }
            let mut data = json!({
                "shift": s.shift,
                "formula": s.formula.to_string(),
                "cores": s.cores.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "measures_decrease": s.measures_decrease(),
            });
            if trace {
                data["log"] = to_value(&s.log().collect::<Vec<_>>());
            }
            Report::new("normalize", None, lines, data)
        }
        Command::Descent { input, bound, length } => {
            let phi = read_formula(&input, &lang)?;
            match descent_for_formula(&phi, bound, length) {
                Ok(d) => {
                    let lines = vec![
                        format!("component {}: {}", d.index, d.components[d.index]),
                        format!("h0 = {:?}, m0 = {}", d.descent.h0, d.descent.m0),
                        format!("sequence: {:?}", d.descent.sequence),
                    ];
                    Report::new("descent", None, lines, to_value(&d))
                }
                Err(e @ DescentError::Insufficient { .. }) => Report::new(
                    "descent",
                    Some(Status::Undetermined),
                    vec![e.to_string()],
                    json!({ "error": e.to_string() }),
                ),
                Err(e) => return Err(e.into()),
            }
        }
        Command::ModelEval { input, model } => {
            let s: StructureId = model.structure.parse()?;
            let t = parse_term(read_input(&input)?.trim(), &lang.clone().with_function("f", 1))?;
            let v = s.eval_term(&parse_assignment(&model.assign)?, &t)?;
            Report::new(
                "model-eval",
                None,
                vec![format!("{t} = {v} in {s}")],
                json!({ "term": t.to_string(), "value": v }),
            )
        }
        Command::ModelCheck { input, model } => {
            let s: StructureId = model.structure.parse()?;
            let params = parse_assignment(&model.assign)?;
            let bounds = Bounds { value: model.bound, type_cap: model.type_cap, witness: model.witness_bound };
            let text = read_input(&input)?;
            let r = match parse(text.trim(), &lang)? {
                Parsed::Formula(f) => holds_bounded(s, &f, &params, &bounds)?,
                Parsed::ClauseSet(c) => holds_bounded(s, &c, &params, &bounds)?,
                Parsed::Term(_) => return Err(CliError::Usage("expected a formula or clause set".into())),
            };
            let status = match r.outcome {
                Outcome::HoldsAtBounds => Status::Yes,
                Outcome::Violated { .. } => Status::No,
                Outcome::Unknown { .. } => Status::Undetermined,
            };
            Report::new("model-check", Some(status), vec![r.to_string()], to_value(&r))
        }
        Command::Demo { name, list, demo } => match (name, list) {
            (None, _) | (_, true) => {
                let lines =
                    MANIFEST.iter().map(|d| format!("{:<28} {} (expected {})", d.name, d.shows, d.expected)).collect();
                Report::new("demo", None, lines, to_value(&MANIFEST.to_vec()))
            }
            (Some(name), false) => {
                let r = run_demo(&name, &demo_options(g, &demo)?)?;
                Report::new("demo", Some(r.status), demo_lines(&r), to_value(&r))
            }
        },
        Command::Suite { demo } => {
            let suite = demo_suite(&demo_options(g, &demo)?)?;
            let mut lines: Vec<String> = suite
                .demos
                .iter()
                .map(|r| {
                    let mark = if r.matches { "pass" } else { "FAIL" };
                    format!("{mark} {:<28} expected {:<12} got {:<12} {:.2}s", r.name, r.expected, r.status, r.seconds)
                })
                .collect();
            let passed = suite.demos.iter().filter(|r| r.matches).count();
            lines.push(format!("{passed}/{} demos match in {:.1}s", suite.demos.len(), suite.seconds));
            let code = suite.exit_code();
            let mut report = Report::new("suite", None, lines, to_value(&suite));
            report.code = code;
            report
        }
    })
}

/// Runs the command line and returns the exit code and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            return (code, e.render().to_string());
        }
    };
    let as_json = cli.global.json;
    let command = format!("{:?}", cli.command).split([' ', '{']).next().unwrap_or_default().to_lowercase();
    match execute(cli) {
        Ok(r) => (r.code, r.render(as_json)),
        Err(e) if as_json => {
            let v = json!({ "schema": SCHEMA, "command": command, "exit_code": EXIT_ERROR, "error": e.to_string() });
            (EXIT_ERROR, serde_json::to_string_pretty(&v).expect("reports serialize"))
        }
        Err(e) => (EXIT_ERROR, format!("error: {e}")),
    }
}
