//! Command dispatch for the `krbound` binary. [`run`] is pure apart from
//! reading the chosen input, so it can be driven directly in tests.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use krbound::bounds::{bennequin_report, verify_support_with};
use krbound::corpus::{parse_corpus, BUNDLED};
use krbound::homfly::{
    conventions_self_check, mfw_degrees, sln_state_sum_with, sln_vs_homfly_check_with, Caps,
    Conventions, HomflyEngine,
};
use krbound::labeling::{enumerate_labelings, segments, DEFAULT_MAX_SEGMENTS};
use krbound::moy::{moy_with, verify_composition, WideConvention};
use krbound::resolution::{parse_graph, resolve, resolve_all, ResolvedGraph};
use krbound::{
    braid_to_diagram, parse_braid, parse_diagram, seifert_stats, BraidWord, Error, LinkDiagram,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "krbound",
    version,
    about = "Seifert statistics, MOY/HOMFLY evaluation and Bennequin-type bounds for closed braids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    #[arg(long, global = true, default_value_t = 2)]
    pub n: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub m: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Crossing cap for both resolution enumeration and skein recursion
    #[arg(long, global = true)]
    pub max_crossings: Option<usize>,
    /// Cap on the transfer-matrix dimension n^O
    #[arg(long, global = true)]
    pub max_dim: Option<u64>,
    /// Read the input from a file instead of the command line
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Seifert statistics of a braid word or diagram
    Stats { input: Option<String> },
    /// All resolutions of a braid word
    Resolve { input: Option<String> },
    /// Labelings of a graph, or of one resolution of a braid word
    Labelings {
        input: Option<String>,
        #[arg(long)]
        resolution: Option<u64>,
    },
    /// MOY polynomial of a graph, or of one resolution of a braid word
    Moy {
        input: Option<String>,
        #[arg(long)]
        resolution: Option<u64>,
    },
    /// HOMFLY polynomial of a braid word or diagram
    Homfly { input: Option<String> },
    /// sl(n) state sum of a braid word, checked against HOMFLY
    Sln { input: Option<String> },
    /// Bennequin-type bound report
    Bounds { input: Option<String> },
    /// Run one verifier
    Verify {
        #[arg(value_enum)]
        check: VerifyKind,
        input: Option<String>,
    },
    /// Run verifiers over a corpus file (the bundled corpus by default)
    Corpus {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "mfw")]
        checks: Vec<Check>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Composition,
    Mfw,
    Support,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Mfw,
    Support,
    Sln,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Inline(String),
    File(PathBuf),
    Stdin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Stats,
    Resolve,
    Labelings { resolution: Option<u64> },
    Moy { resolution: Option<u64> },
    Homfly,
    Sln,
    Bounds,
    Verify(VerifyKind),
    Corpus { checks: Vec<Check> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` only for `corpus`.
    pub input: Option<Input>,
    pub n: u32,
    pub m: u32,
    pub format: Format,
    pub caps: Caps,
    /// `None` selects the bundled corpus.
    pub corpus: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, Error> {
        let o = self.opts;
        let pick = |inline: Option<String>| -> Result<Option<Input>, Error> {
            match (inline, &o.file) {
                (Some(_), Some(_)) => Err(Error::InvalidArgument(
                    "give either an inline input or --file, not both".into(),
                )),
                (Some(s), None) if s == "-" => Ok(Some(Input::Stdin)),
                (Some(s), None) => Ok(Some(Input::Inline(s))),
                (None, Some(p)) => Ok(Some(Input::File(p.clone()))),
                (None, None) => Err(Error::InvalidArgument("missing input".into())),
            }
        };
        let (command, input, corpus) = match self.command {
            CliCommand::Stats { input } => (Command::Stats, pick(input)?, None),
            CliCommand::Resolve { input } => (Command::Resolve, pick(input)?, None),
            CliCommand::Labelings { input, resolution } => {
                (Command::Labelings { resolution }, pick(input)?, None)
            }
            CliCommand::Moy { input, resolution } => {
                (Command::Moy { resolution }, pick(input)?, None)
            }
            CliCommand::Homfly { input } => (Command::Homfly, pick(input)?, None),
            CliCommand::Sln { input } => (Command::Sln, pick(input)?, None),
            CliCommand::Bounds { input } => (Command::Bounds, pick(input)?, None),
            CliCommand::Verify { check, input } => (Command::Verify(check), pick(input)?, None),
            CliCommand::Corpus { corpus, checks } => {
                (Command::Corpus { checks }, None, corpus.or(o.file.clone()))
            }
        };
        let mut caps = Caps::default();
        if let Some(c) = o.max_crossings {
            if c == 0 {
                return Err(Error::InvalidArgument(
                    "--max-crossings must be positive".into(),
                ));
            }
            caps.max_resolved_crossings = c;
            caps.max_skein_crossings = c;
        }
        if let Some(d) = o.max_dim {
            if d == 0 {
                return Err(Error::InvalidArgument("--max-dim must be positive".into()));
            }
            caps.max_dim = d;
        }
        Ok(RunConfig {
            command,
            input,
            n: o.n,
            m: o.m,
            format: o.format,
            caps,
            corpus,
        })
    }
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Done {
    holds: bool,
    json: Value,
    text: String,
    /// set when some corpus line failed to parse
    input_error: bool,
}

impl Done {
    fn ok(json: Value, text: String) -> Self {
        Self::checked(true, json, text)
    }

    fn checked(holds: bool, json: Value, text: String) -> Self {
        Self {
            holds,
            json,
            text,
            input_error: false,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Runs one command. `stdin` is read only when the input is `-`.
pub fn run(config: &RunConfig, stdin: &mut dyn Read) -> RunOutput {
    let result = read_input(config, stdin).and_then(|text| dispatch(config, text.as_deref()));
    match result {
        Ok(done) => {
            let code = if done.input_error {
                EXIT_INPUT
            } else if done.holds {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            let stdout = match config.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&done.json).expect("json")
                ),
                Format::Text => done.text,
            };
            RunOutput {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let (code, reason, message) = match f {
                Failure::Input(msg) => (EXIT_INPUT, "io", msg),
                Failure::Lib(e) => (
                    if e.is_cap() { EXIT_CAP } else { EXIT_INPUT },
                    e.reason(),
                    e.to_string(),
                ),
            };
            match config.format {
                Format::Json => RunOutput {
                    code,
                    stdout: format!(
                        "{}\n",
                        serde_json::to_string_pretty(
                            &json!({"error": {"reason": reason, "message": message}})
                        )
                        .expect("json")
                    ),
                    stderr: String::new(),
                },
                Format::Text => RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: format!("error ({reason}): {message}\n"),
                },
            }
        }
    }
}

fn read_input(config: &RunConfig, stdin: &mut dyn Read) -> Result<Option<String>, Failure> {
    match &config.input {
        None => Ok(None),
        Some(Input::Inline(s)) => Ok(Some(s.clone())),
        Some(Input::File(p)) => std::fs::read_to_string(p)
            .map(Some)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        Some(Input::Stdin) => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(Some(s))
        }
    }
}

/// A braid word if the text has a `:`, otherwise a diagram.
fn parse_link(text: &str) -> Result<(Option<BraidWord>, LinkDiagram), Error> {
    let t = text.trim();
    if t.contains(':') && !t.lines().any(|l| l.trim_start().starts_with(['X', 'L'])) {
        let b = parse_braid(t)?;
        let d = braid_to_diagram(&b);
        Ok((Some(b), d))
    } else {
        Ok((None, parse_diagram(t)?))
    }
}

fn graph_input(text: &str, resolution: Option<u64>) -> Result<ResolvedGraph, Error> {
    match resolution {
        Some(idx) => {
            let b = parse_braid(text.trim())?;
            if b.len() >= 64 || idx >> b.len() != 0 {
                return Err(Error::InvalidArgument(format!(
                    "resolution index {idx} out of range for {} crossings",
                    b.len()
                )));
            }
            Ok(resolve(&b, idx).graph)
        }
        None => parse_graph(text),
    }
}

fn dispatch(config: &RunConfig, text: Option<&str>) -> Result<Done, Failure> {
    let text = text.unwrap_or("");
    let (n, m, caps) = (config.n, config.m, &config.caps);
    let conv = Conventions::default();
    match &config.command {
        Command::Stats => {
            let (_, d) = parse_link(text)?;
            let s = seifert_stats(&d);
            let t = format!(
                "w {}\nO {}\nc+ {}\nc- {}\nO> {}\nO< {}\nO>= {}\nO<= {}\ncomponents {}\n",
                s.writhe,
                s.circles,
                s.c_plus,
                s.c_minus,
                s.o_gt,
                s.o_lt,
                s.o_geq,
                s.o_leq,
                s.components
            );
            Ok(Done::ok(to_json(&s), t))
        }
        Command::Resolve => {
            let b = parse_braid(text.trim())?;
            let rs = resolve_all(&b, caps.max_resolved_crossings)?;
            let mut t = String::new();
            for r in &rs {
                writeln!(
                    t,
                    "{} e+={} e-={} {}",
                    r.index, r.e_plus, r.e_minus, r.graph
                )
                .unwrap();
            }
            Ok(Done::ok(
                json!({"braid": b.to_string(), "resolutions": to_json(&rs)}),
                t,
            ))
        }
        Command::Labelings { resolution } => {
            let g = graph_input(text, *resolution)?;
            let fs = enumerate_labelings(&g, DEFAULT_MAX_SEGMENTS)?;
            let labelings: Vec<Value> = fs.iter().map(|f| to_json(&f.serialize_for(&g))).collect();
            let mut t = format!("{g}\n{} labelings\n", fs.len());
            for v in &labelings {
                writeln!(t, "{v}").unwrap();
            }
            Ok(Done::ok(
                json!({
                    "graph": g.to_string(),
                    "segments": to_json(&segments(&g)),
                    "count": fs.len(),
                    "labelings": labelings,
                }),
                t,
            ))
        }
        Command::Moy { resolution } => {
            let g = graph_input(text, *resolution)?;
            let p = moy_with(&g, n, caps.max_dim, WideConvention::default())?;
            let t = format!("{p}\n");
            Ok(Done::ok(
                json!({"graph": g.to_string(), "n": n, "moy": to_json(&p)}),
                t,
            ))
        }
        Command::Homfly => {
            let (b, d) = parse_link(text)?;
            let mut engine = HomflyEngine::new(caps.max_skein_crossings);
            let mfw = mfw_degrees(&d, &mut engine)?;
            let p = engine.homfly(&d)?;
            let mut j = json!({
                "homfly": to_json(&p),
                "mfw": {"min_a": mfw.min_a, "max_a": mfw.max_a, "w_minus_O": mfw.w_minus_o, "w_plus_O": mfw.w_plus_o, "holds": mfw.holds},
            });
            let mut t = format!("{p}\n");
            if let Some(b) = b {
                let s = sln_state_sum_with(&b, n, caps, &conv)?;
                writeln!(t, "sl({n}): {s}").unwrap();
                j["sln"] = json!({"n": n, "poly": to_json(&s)});
            }
            Ok(Done::ok(j, t))
        }
        Command::Sln => {
            if !conventions_self_check() {
                return Err(Failure::Input(
                    "frozen conventions failed their self-check".into(),
                ));
            }
            let b = parse_braid(text.trim())?;
            let r = sln_vs_homfly_check_with(
                &b,
                n,
                caps,
                &conv,
                &mut HomflyEngine::new(caps.max_skein_crossings),
            )?;
            let t = format!("{}\nmatches HOMFLY: {}\n", r.lhs, r.holds);
            Ok(Done::checked(
                r.holds,
                json!({"n": n, "poly": to_json(&r.lhs), "homfly": to_json(&r.homfly), "holds": r.holds, "lhs": to_json(&r.lhs), "rhs": to_json(&r.rhs)}),
                t,
            ))
        }
        Command::Bounds => {
            let (_, d) = parse_link(text)?;
            let r = bennequin_report(&seifert_stats(&d), n)?;
            Ok(Done::ok(to_json(&r), r.to_table()))
        }
        Command::Verify(VerifyKind::Composition) => {
            let g = parse_graph(text)?;
            let r = verify_composition(&g, m, n, caps.max_dim)?;
            let t = format!("holds: {}\nlhs: {}\nrhs: {}\n", r.holds, r.lhs, r.rhs);
            Ok(Done::checked(
                r.holds,
                json!({"graph": g.to_string(), "report": to_json(&r)}),
                t,
            ))
        }
        Command::Verify(VerifyKind::Mfw) => {
            let (_, d) = parse_link(text)?;
            let r = mfw_degrees(&d, &mut HomflyEngine::new(caps.max_skein_crossings))?;
            let t = format!(
                "holds: {}\na-degrees [{}, {}] within [{}, {}]\n",
                r.holds, r.min_a, r.max_a, r.w_minus_o, r.w_plus_o
            );
            Ok(Done::checked(r.holds, to_json(&r), t))
        }
        Command::Verify(VerifyKind::Support) => {
            let b = parse_braid(text.trim())?;
            let r = verify_support_with(&b, n, caps)?;
            let t = format!(
                "holds: {}\ntotal support {:?} within {}\n{} summands\n",
                r.holds,
                r.total_support,
                r.thm2_interval,
                r.details.len()
            );
            Ok(Done::checked(r.holds, to_json(&r), t))
        }
        Command::Corpus { checks } => corpus_run(config, checks),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Serialize)]
struct LineReport {
    line: usize,
    input: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    results: Vec<(Check, Status)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
}

fn run_check(
    check: Check,
    b: &BraidWord,
    n: u32,
    caps: &Caps,
    engine: &mut HomflyEngine,
) -> Result<bool, Error> {
    match check {
        Check::Mfw => Ok(mfw_degrees(&braid_to_diagram(b), engine)?.holds),
        Check::Support => Ok(verify_support_with(b, n, caps)?.holds),
        Check::Sln => {
            Ok(sln_vs_homfly_check_with(b, n, caps, &Conventions::default(), engine)?.holds)
        }
    }
}

fn corpus_run(config: &RunConfig, checks: &[Check]) -> Result<Done, Failure> {
    let text = match &config.corpus {
        None => BUNDLED.to_string(),
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
    };
    if checks.contains(&Check::Sln) && !conventions_self_check() {
        return Err(Failure::Input(
            "frozen conventions failed their self-check".into(),
        ));
    }
    let (n, caps) = (config.n, config.caps);
    let lines = parse_corpus(&text);
    let reports: Vec<LineReport> = lines
        .into_par_iter()
        .map_init(
            || HomflyEngine::new(caps.max_skein_crossings),
            |engine, l| match l.braid {
                Err(e) => LineReport {
                    line: l.line,
                    input: l.text,
                    results: Vec::new(),
                    error: Some(json!({"reason": e.reason(), "message": e.to_string()})),
                },
                Ok(b) => LineReport {
                    line: l.line,
                    input: l.text,
                    results: checks
                        .iter()
                        .map(|&c| {
                            let s = match run_check(c, &b, n, &caps, engine) {
                                Ok(true) => Status::Pass,
                                Ok(false) => Status::Fail,
                                Err(e) if e.is_cap() => Status::Skipped,
                                Err(_) => Status::Fail,
                            };
                            (c, s)
                        })
                        .collect(),
                    error: None,
                },
            },
        )
        .collect();

    let count = |st: Status| {
        reports
            .iter()
            .flat_map(|r| &r.results)
            .filter(|(_, s)| *s == st)
            .count()
    };
    let (pass, fail, skipped) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
    );
    let errors = reports.iter().filter(|r| r.error.is_some()).count();

    let mut t = String::new();
    for r in &reports {
        write!(t, "{:>5}  {:<28}", r.line, r.input).unwrap();
        if let Some(e) = &r.error {
            write!(t, "  error: {}", e["message"].as_str().unwrap_or("")).unwrap();
        }
        for (c, s) in &r.results {
            let c = to_json(c);
            let s = to_json(s);
            write!(
                t,
                "  {}={}",
                c.as_str().unwrap_or(""),
                s.as_str().unwrap_or("")
            )
            .unwrap();
        }
        t.push('\n');
    }
    writeln!(
        t,
        "pass {pass}  fail {fail}  skipped {skipped}  errors {errors}"
    )
    .unwrap();

    let json = json!({
        "n": n,
        "checks": to_json(&checks),
        "lines": to_json(&reports),
        "summary": {"lines": reports.len(), "pass": pass, "fail": fail, "skipped": skipped, "errors": errors},
    });
    Ok(Done {
        holds: fail == 0,
        json,
        text: t,
        input_error: errors > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig, Error> {
        Cli::try_parse_from(std::iter::once("krbound").chain(args.iter().copied()))
            .unwrap()
            .into_config()
    }

    #[test]
    fn one_input_source() {
        assert!(config(&["stats", "1:", "--file", "x"]).is_err());
        assert_eq!(config(&["stats", "-"]).unwrap().input, Some(Input::Stdin));
        assert!(config(&["stats", "1:", "--max-dim", "0"]).is_err());
        let c = config(&["corpus", "--max-crossings", "9"]).unwrap();
        assert_eq!(
            (
                c.input,
                c.caps.max_skein_crossings,
                c.caps.max_resolved_crossings
            ),
            (None, 9, 9)
        );
    }

    #[test]
    fn run_reads_stdin() {
        let c = config(&["moy", "-", "--n", "3", "--format", "text"]).unwrap();
        let out = run(&c, &mut "theta".as_bytes());
        assert_eq!(out.code, EXIT_OK);
        // [3][2]
        assert_eq!(out.stdout, "+1*q^-3 +2*q^-1 +2*q^1 +1*q^3\n");
    }

    #[test]
    fn failed_verification_exits_one() {
        let done = Done::checked(false, Value::Null, String::new());
        assert!(!done.holds);
        let c = config(&["verify", "mfw", "1:"]).unwrap();
        assert_eq!(run(&c, &mut std::io::empty()).code, EXIT_OK);
    }
}
