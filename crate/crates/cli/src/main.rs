//! `hooklab`: counting, enumeration and batch verification for skew hook
//! length formulas.

mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hooklab::excitations::enumerate_excitations;
use hooklab::hook_formulas::{hlf_count, naruse_count};
use hooklab::partitions::parse_partition;
use hooklab::tableaux::{enumerate_fssyt, enumerate_ssyt, enumerate_syt};
use hooklab::{Diagram, Flagging, Partition, Rational, SkewShape, Tableau};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hooklab", version, about = "Hook length formulas, excitations and flagged Schur polynomials")]
struct Cli {
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every random point and matrix.
    #[arg(long, global = true, env = "HOOKLAB_SEED", default_value_t = 0)]
    seed: u64,

    /// Worker threads for `verify`; all cores when omitted.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Report wall-clock time (stderr, and `elapsed_ms` in JSON).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of standard tableaux of a skew shape.
    Count {
        /// `λ/μ`, e.g. "3,2/1"; `λ` alone means `μ = ∅`.
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = CountMethod::Enum)]
        method: CountMethod,
    },
    /// Lists tableaux or excitations in canonical order.
    List {
        #[arg(value_enum)]
        kind: ListKind,
        /// `λ/μ` for syt, excitations and `fssyt --induced`.
        #[arg(long)]
        shape: Option<String>,
        /// Straight shape for ssyt and fssyt.
        #[arg(long)]
        shape_mu: Option<String>,
        /// Row bounds `b_1,b_2,…` for fssyt; the last one repeats.
        #[arg(long)]
        flags: Option<String>,
        /// Use the flagging induced by `--shape λ/μ`.
        #[arg(long)]
        induced: bool,
        /// Largest entry for ssyt.
        #[arg(long)]
        max_entry: Option<usize>,
    },
    /// Checks an identity on every instance in scope.
    Verify(verify::VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMethod {
    Enum,
    Naruse,
    Hlf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ListKind {
    Syt,
    Ssyt,
    Fssyt,
    Excitations,
}

/// Command failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable shape, flagging or range (exit 2).
    Parse(String),
    /// Arguments that do not fit the method or kind (exit 3).
    Mismatch(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Mismatch(m) => m,
        }
    }
}

pub fn parse_shape(text: &str) -> Result<SkewShape, Failure> {
    text.parse().map_err(|e| Failure::Parse(format!("shape {text:?}: {e}")))
}

pub fn parse_straight(text: &str) -> Result<Partition, Failure> {
    parse_partition(text).map_err(|e| Failure::Parse(format!("partition {text:?}: {e}")))
}

pub fn parse_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Parse(format!("expected comma-separated integers, got {text:?}")))
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
pub fn emit(line: impl std::fmt::Display) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

/// A JSON array with one compact element per line.
fn emit_json_array<T: serde::Serialize>(items: &[T]) {
    if items.is_empty() {
        emit("[]");
        return;
    }
    let body: Vec<String> = items
        .iter()
        .map(|item| format!("  {}", serde_json::to_string(item).expect("item serializes")))
        .collect();
    emit(format!("[\n{}\n]", body.join(",\n")));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count { shape, method } => count(&cli, shape, *method).map(|()| 0),
        Command::List {
            kind,
            shape,
            shape_mu,
            flags,
            induced,
            max_entry,
        } => list(&cli, *kind, shape.as_deref(), shape_mu.as_deref(), flags.as_deref(), *induced, *max_entry).map(|()| 0),
        Command::Verify(args) => verify::run(args, cli.json, cli.seed, cli.jobs, cli.timings),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn count_json(value: &Rational) -> Value {
    if value.is_integer() {
        if let Ok(n) = value.to_integer().to_string().parse::<u64>() {
            return json!(n);
        }
    }
    json!(format!("{}/{}", value.numer(), value.denom()))
}

fn count(cli: &Cli, shape: &str, method: CountMethod) -> Result<(), Failure> {
    let shape = parse_shape(shape)?;
    let (value, name) = match method {
        CountMethod::Enum => (
            Rational::from_integer(enumerate_syt(&shape.lambda, &shape.mu).len().into()),
            "enum",
        ),
        CountMethod::Naruse => (naruse_count(&shape.lambda, &shape.mu), "naruse"),
        CountMethod::Hlf => {
            if !shape.mu.is_empty() {
                return Err(Failure::Mismatch("hlf needs a straight shape (μ = ∅)".into()));
            }
            (hlf_count(&shape.lambda), "hlf")
        }
    };
    if cli.json {
        let out = json!({ "shape": shape.to_string(), "method": name, "count": count_json(&value) });
        emit(out);
    } else if value.is_integer() {
        emit(value.to_integer());
    } else {
        emit(format!("{}/{}", value.numer(), value.denom()));
    }
    Ok(())
}

fn diagram_text(d: &Diagram) -> String {
    let cells: Vec<String> = d.iter().map(ToString::to_string).collect();
    format!("{{{}}}", cells.join(", "))
}

fn print_tableaux(json_out: bool, tableaux: &[Tableau]) {
    if json_out {
        emit_json_array(tableaux);
    } else {
        for t in tableaux {
            emit(t);
        }
        eprintln!("{} tableaux", tableaux.len());
    }
}

fn list(
    cli: &Cli,
    kind: ListKind,
    shape: Option<&str>,
    shape_mu: Option<&str>,
    flags: Option<&str>,
    induced: bool,
    max_entry: Option<usize>,
) -> Result<(), Failure> {
    let need_shape = |what: &str| {
        shape.ok_or_else(|| Failure::Mismatch(format!("{what} needs --shape λ/μ"))).and_then(parse_shape)
    };
    let need_mu = |what: &str| {
        shape_mu
            .ok_or_else(|| Failure::Mismatch(format!("{what} needs --shape-mu")))
            .and_then(parse_straight)
    };
    match kind {
        ListKind::Syt => {
            let s = need_shape("syt")?;
            print_tableaux(cli.json, &enumerate_syt(&s.lambda, &s.mu));
        }
        ListKind::Ssyt => {
            let mu = need_mu("ssyt")?;
            let cap = max_entry.ok_or_else(|| Failure::Mismatch("ssyt needs --max-entry".into()))?;
            print_tableaux(cli.json, &enumerate_ssyt(&mu, cap));
        }
        ListKind::Fssyt => {
            let (mu, b) = match (induced, flags) {
                (true, None) => {
                    let s = need_shape("fssyt --induced")?;
                    let b = Flagging::induced(&s.lambda, &s.mu);
                    (s.mu, b)
                }
                (false, Some(text)) => {
                    let prefix = parse_list(text)?
                        .into_iter()
                        .map(|v| usize::try_from(v).map_err(|_| Failure::Parse(format!("negative flag in {text:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    if prefix.is_empty() {
                        return Err(Failure::Parse("empty flagging".into()));
                    }
                    (need_mu("fssyt --flags")?, Flagging::extended(prefix))
                }
                (true, Some(_)) => return Err(Failure::Mismatch("give either --flags or --induced".into())),
                (false, None) => return Err(Failure::Mismatch("fssyt needs --flags or --induced".into())),
            };
            print_tableaux(cli.json, &enumerate_fssyt(&mu, &b));
        }
        ListKind::Excitations => {
            let s = need_shape("excitations")?;
            let all = enumerate_excitations(&s.lambda, &s.mu);
            if cli.json {
                emit_json_array(&all);
            } else {
                for d in &all {
                    emit(diagram_text(d));
                }
                eprintln!("{} excitations", all.len());
            }
        }
    }
    Ok(())
}
