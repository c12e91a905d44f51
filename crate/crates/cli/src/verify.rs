//! `hooklab verify`: batch checks with deterministic, canonically ordered
//! output.

use std::time::Instant;

use clap::{Args, ValueEnum};
use hooklab::algebra::check_det_identities;
use hooklab::hook_formulas::{
    check_naruse, check_w_identities, shape_window, verify_at_random_points, verify_main, verify_rhs_recursion,
    verify_z_recursion, DEFAULT_ATTEMPTS,
};
use hooklab::report::{Report, Status};
use hooklab::schur_jt::{
    check_flagged_jt, check_h_recursions, konvalinka_check_with, konvalinka_variant_check_with,
    weakly_increasing_flaggings, HGrid, SchurTable,
};
use hooklab::{Partition, Rational, SkewShape};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{emit, parse_list, parse_shape, parse_straight, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Main,
    Naruse,
    Konvalinka,
    KonvalinkaVariant,
    Jt,
    HRecursions,
    DetIdentities,
    ZRecursion,
    RhsRecursion,
    WIdentities,
}

impl Identity {
    fn name(self) -> &'static str {
        match self {
            Identity::Main => "main",
            Identity::Naruse => "naruse",
            Identity::Konvalinka => "konvalinka",
            Identity::KonvalinkaVariant => "konvalinka-variant",
            Identity::Jt => "jt",
            Identity::HRecursions => "h-recursions",
            Identity::DetIdentities => "det-identities",
            Identity::ZRecursion => "z-recursion",
            Identity::RhsRecursion => "rhs-recursion",
            Identity::WIdentities => "w-identities",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    identity: Identity,

    /// A single instance: `λ/μ`, or `μ` for jt.
    #[arg(long, conflicts_with_all = ["box_", "max_size"])]
    shape: Option<String>,

    /// Every `λ` in an `R×C` box with every `μ ⊆ λ` (for jt: every `μ` in the box).
    #[arg(long = "box", value_name = "R,C", conflicts_with = "max_size")]
    box_: Option<String>,

    /// Every `λ` with at most this many boxes, with every `μ ⊆ λ`.
    #[arg(long)]
    max_size: Option<usize>,

    /// Random points per instance (default 3), or random matrices per size
    /// for det-identities (default 100).
    #[arg(long)]
    trials: Option<usize>,

    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    a_max: i64,

    #[arg(long, default_value_t = 4)]
    b_max: usize,

    #[arg(long, value_name = "LO,HI", default_value = "-4,4", allow_hyphen_values = true)]
    c_range: String,

    /// det-identities runs every size `1..=max-n`.
    #[arg(long, default_value_t = 4)]
    max_n: usize,

    /// jt runs every weakly increasing flagging with entries up to this bound.
    #[arg(long, default_value_t = 4)]
    max_flag: usize,
}

struct Outcome {
    status: Status,
    record: Value,
}

impl Outcome {
    fn from_report(report: Report, extra: Option<(&str, Value)>) -> Self {
        let mut record = serde_json::to_value(&report).expect("report serializes");
        if let (Some((key, value)), Value::Object(map)) = (extra, &mut record) {
            map.insert(key.to_string(), value);
        }
        Outcome {
            status: report.status,
            record,
        }
    }

    fn from_serializable<T: Serialize>(status: Status, value: &T) -> Self {
        Outcome {
            status,
            record: serde_json::to_value(value).expect("report serializes"),
        }
    }

    fn label(&self) -> String {
        let field = |k: &str| self.record.get(k).and_then(Value::as_str).map(str::to_owned);
        field("instance").unwrap_or_else(|| {
            let part = |k: &str| {
                let parts: Vec<String> = self.record[k]
                    .as_array()
                    .map(|a| a.iter().map(ToString::to_string).collect())
                    .unwrap_or_default();
                parts.join(",")
            };
            match (part("lambda"), part("mu")) {
                (l, m) if l.is_empty() => format!("∅{}", if m.is_empty() { String::new() } else { format!("/{m}") }),
                (l, m) if m.is_empty() => l,
                (l, m) => format!("{l}/{m}"),
            }
        })
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(i64, i64), Failure> {
    match parse_list(text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(Failure::Parse(format!("{what} expects two comma-separated integers, got {text:?}"))),
    }
}

fn nonnegative(v: i64, what: &str) -> Result<usize, Failure> {
    usize::try_from(v).map_err(|_| Failure::Parse(format!("{what} must be nonnegative")))
}

fn shapes(args: &VerifyArgs) -> Result<Vec<SkewShape>, Failure> {
    match (&args.shape, &args.box_, args.max_size) {
        (Some(s), _, _) => Ok(vec![parse_shape(s)?]),
        (_, Some(b), _) => {
            let (r, c) = parse_pair(b, "--box")?;
            Ok(SkewShape::all_in_box(nonnegative(r, "--box")?, nonnegative(c, "--box")?))
        }
        (_, _, Some(n)) => Ok(SkewShape::all_up_to_size(n)),
        _ => Err(Failure::Mismatch("this identity needs --shape, --box or --max-size".into())),
    }
}

/// Runs the checker over all instances in scope and prints the summary.
/// Returns the exit code: 0 if all pass, 1 on a violation or error, 4 if
/// sampling ran out of attempts.
pub fn run(args: &VerifyArgs, json_out: bool, seed: u64, jobs: Option<usize>, timings: bool) -> Result<u8, Failure> {
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Mismatch(format!("thread pool: {e}")))?;
    let outcomes = pool.install(|| collect(args, seed))?;
    let elapsed_ms = started.elapsed().as_millis() as u64;

    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    let status = outcomes
        .iter()
        .map(|o| o.status)
        .find(|s| matches!(s, Status::Violated | Status::Error))
        .or_else(|| {
            outcomes
                .iter()
                .any(|o| o.status == Status::SamplingExhausted)
                .then_some(Status::SamplingExhausted)
        })
        .unwrap_or(Status::Pass);
    let name = args.identity.name();

    if json_out {
        let mut summary = json!({
            "identity": name,
            "seed": seed,
            "status": status,
            "total": outcomes.len(),
            "passed": passed,
            "instances": outcomes.iter().map(|o| o.record.clone()).collect::<Vec<_>>(),
        });
        if timings {
            summary["elapsed_ms"] = json!(elapsed_ms);
        }
        emit(serde_json::to_string_pretty(&summary).expect("summary serializes"));
    } else {
        for o in &outcomes {
            let tag = match o.status {
                Status::Pass => "PASS",
                Status::Violated => "FAIL",
                Status::SamplingExhausted => "EXHAUSTED",
                Status::Error => "ERROR",
            };
            match o.record.get("witness").and_then(Value::as_str) {
                Some(w) if o.status != Status::Pass => emit(format!("{tag} {}: {w}", o.label())),
                _ => emit(format!("{tag} {}", o.label())),
            }
        }
        emit(format!("{name}: {passed}/{} passed", outcomes.len()));
    }
    if timings {
        eprintln!("{name}: {} instances in {elapsed_ms} ms", outcomes.len());
    }
    Ok(match status {
        Status::Pass => 0,
        Status::SamplingExhausted => 4,
        Status::Violated | Status::Error => 1,
    })
}

fn collect(args: &VerifyArgs, seed: u64) -> Result<Vec<Outcome>, Failure> {
    let trials = args.trials.unwrap_or(3);
    let sampled = |name: &'static str, check: fn(&Partition, &Partition, &hooklab::hook_formulas::ZPoint) -> hooklab::Result<()>| {
        move |s: &SkewShape| {
            let report = verify_at_random_points(name, &s.lambda, &s.mu, trials, seed, DEFAULT_ATTEMPTS, |pt| {
                check(&s.lambda, &s.mu, pt)
            });
            Outcome::from_serializable(report.status, &report)
        }
    };
    Ok(match args.identity {
        Identity::Main => shapes(args)?
            .par_iter()
            .map(|s| {
                let report = verify_main(&s.lambda, &s.mu, trials, seed).expect("shapes in scope are contained");
                Outcome::from_serializable(report.status, &report)
            })
            .collect(),
        Identity::ZRecursion => shapes(args)?.par_iter().map(sampled("z-recursion", verify_z_recursion)).collect(),
        Identity::RhsRecursion => shapes(args)?
            .par_iter()
            .map(sampled("rhs-recursion", verify_rhs_recursion))
            .collect(),
        Identity::WIdentities => shapes(args)?
            .par_iter()
            .map(sampled("w-identities", |lambda, mu, pt| {
                let n = (-shape_window(lambda, mu).0) as usize;
                check_w_identities(lambda, mu, n, pt).map(|_| ())
            }))
            .collect(),
        Identity::Naruse => shapes(args)?
            .par_iter()
            .map(|s| {
                let result = check_naruse(&s.lambda, &s.mu);
                let count = result.as_ref().ok().map(|c| json!(c.to_integer().to_string()));
                Outcome::from_report(
                    Report::from_result("naruse", s.to_string(), &result),
                    count.map(|c| ("count", c)),
                )
            })
            .collect(),
        Identity::Konvalinka | Identity::KonvalinkaVariant => konvalinka(args, shapes(args)?),
        Identity::Jt => jt(args, seed)?,
        Identity::HRecursions => {
            let (c_min, c_max) = parse_pair(&args.c_range, "--c-range")?;
            let grid = HGrid {
                a_max: args.a_max,
                b_max: args.b_max,
                c_min,
                c_max,
            };
            let instance = format!("a<={} b<={} c in [{c_min},{c_max}]", grid.a_max, grid.b_max);
            let result = check_h_recursions::<Rational>(&grid);
            let checks = result.as_ref().ok().map(|&n| ("checks", json!(n)));
            vec![Outcome::from_report(Report::from_result("h-recursions", instance, &result), checks)]
        }
        Identity::DetIdentities => {
            let trials = args.trials.unwrap_or(100);
            (1..=args.max_n)
                .into_par_iter()
                .map(|n| {
                    let result = check_det_identities(n, trials, seed);
                    let checks = result.as_ref().ok().map(|r| ("checks", json!(r.checks)));
                    Outcome::from_report(
                        Report::from_result("det-identities", format!("n={n} trials={trials}"), &result),
                        checks,
                    )
                })
                .collect()
        }
    })
}

/// λ = μ is left out: the recursion is stated for proper containment.
fn konvalinka(args: &VerifyArgs, shapes: Vec<SkewShape>) -> Vec<Outcome> {
    let variant = args.identity == Identity::KonvalinkaVariant;
    let mut groups: Vec<(Partition, Vec<Partition>)> = Vec::new();
    for s in shapes.into_iter().filter(|s| s.lambda != s.mu) {
        match groups.last_mut() {
            Some((lambda, mus)) if *lambda == s.lambda => mus.push(s.mu),
            _ => groups.push((s.lambda, vec![s.mu])),
        }
    }
    groups
        .par_iter()
        .flat_map_iter(|(lambda, mus)| {
            let table = SchurTable::<Rational>::new(lambda);
            mus.iter()
                .map(|mu| {
                    let label = format!("{lambda}/{mu}");
                    let report = if variant {
                        let n = lambda.len().max(mu.len()) + 1;
                        Report::from_result(
                            "konvalinka-variant",
                            label,
                            &konvalinka_variant_check_with(&table, mu, n),
                        )
                    } else {
                        Report::from_result("konvalinka", label, &konvalinka_check_with(&table, mu))
                    };
                    Outcome::from_report(report, None)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn jt(args: &VerifyArgs, seed: u64) -> Result<Vec<Outcome>, Failure> {
    let cases: Vec<(Partition, usize)> = match (&args.shape, &args.box_) {
        (Some(text), _) => {
            let mu = parse_straight(text)?;
            let n = mu.len();
            vec![(mu, n)]
        }
        (_, Some(b)) => {
            let (r, c) = parse_pair(b, "--box")?;
            let r = nonnegative(r, "--box")?;
            Partition::in_box(r, nonnegative(c, "--box")?)
                .into_iter()
                .map(|mu| (mu, r))
                .collect()
        }
        _ => return Err(Failure::Mismatch("jt needs --shape μ or --box R,C".into())),
    };
    let instances: Vec<(Partition, usize, hooklab::Flagging)> = cases
        .into_iter()
        .flat_map(|(mu, n)| {
            weakly_increasing_flaggings(n, args.max_flag)
                .into_iter()
                .map(move |b| (mu.clone(), n, b))
        })
        .collect();
    Ok(instances
        .par_iter()
        .map(|(mu, n, b)| {
            let flags: Vec<usize> = (1..=*n).map(|i| b.get(i)).collect();
            let label = format!("mu={mu} b={flags:?} n={n}");
            let result = check_flagged_jt(mu, b, *n, seed);
            let extra = result.as_ref().ok().map(|r| ("arrays", json!(r)));
            Outcome::from_report(Report::from_result("jt", label, &result), extra)
        })
        .collect())
}
