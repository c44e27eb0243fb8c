//! `strata-limits` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
//! 3 internal audit failure.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use strata_limits::io::{parse_action, parse_multicurve};
use strata_limits::limit_graph::{build_stratum_graph, BuildError, LabeledStratumGraph};
use strata_limits::multicurve::validate_multicurve;
use strata_limits::oracle::{audit_graph, AuditReport};
use strata_limits::orbifold::{stratum_dimension, SignatureError};
use strata_limits::pyramid::{self, Family, PyramidMulticurveParams, Variant};
use strata_limits::{MulticurveSpec, OrbifoldSignature, SurfaceKernelAction};

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const AUDIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "strata-limits",
    version,
    about = "Stable graphs of limit points of equisymmetric strata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an action file and, optionally, a multicurve file.
    Validate {
        #[arg(long)]
        action: String,
        #[arg(long)]
        multicurve: Option<String>,
    },
    /// Build the stable graph of a multicurve.
    Build {
        #[arg(long)]
        action: String,
        #[arg(long)]
        multicurve: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        audit: AuditFlags,
    },
    /// The dihedral pyramidal family.
    Pyramid {
        #[command(subcommand)]
        command: PyramidCommand,
    },
    /// Complex dimension of a stratum with `pinched` curves pinched.
    Dim {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        pinched: u32,
    },
}

#[derive(Subcommand)]
enum PyramidCommand {
    /// All distinct graphs for one `n`, with witnesses.
    Classify {
        #[arg(long)]
        n: u32,
        /// Also list arc-plus-closed candidates with cycle lengths no variant realizes.
        #[arg(long)]
        unproven: bool,
        #[arg(long, value_enum, default_value_t = ClassifyFormat::Text)]
        format: ClassifyFormat,
        #[command(flatten)]
        audit: AuditFlags,
    },
    /// One multicurve of a family.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        family: String,
        #[arg(long)]
        variant: String,
        #[arg(long)]
        param: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        audit: AuditFlags,
    },
}

#[derive(clap::Args)]
struct AuditFlags {
    /// Run the oracle audit (the default).
    #[arg(long, overrides_with = "no_audit")]
    audit: bool,
    /// Skip the oracle audit.
    #[arg(long)]
    no_audit: bool,
}

impl AuditFlags {
    fn enabled(&self) -> bool {
        !self.no_audit
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifyFormat {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(f) = configure_threads() {
        eprintln!("{}", f.message);
        return ExitCode::from(f.code);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("{}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("STRATA_LIMITS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        fail(
            USAGE,
            format!("STRATA_LIMITS_THREADS must be a positive integer, got {value:?}"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| fail(USAGE, format!("cannot configure worker pool: {e}")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { action, multicurve } => validate(&action, multicurve.as_deref()),
        Command::Build {
            action,
            multicurve,
            format,
            audit,
        } => {
            let a = load_action(&action)?;
            let mc = load_multicurve(&multicurve)?;
            let graph = build_or_fail(&a, &mc)?;
            let report = audit.enabled().then(|| audit_graph(&a, &mc, &graph));
            emit_graph(&graph, report.as_ref(), format, None);
            audit_result(report.as_ref())
        }
        Command::Pyramid {
            command:
                PyramidCommand::Classify {
                    n,
                    unproven,
                    format,
                    audit,
                },
        } => classify(n, unproven, format, audit.enabled()),
        Command::Pyramid {
            command:
                PyramidCommand::Build {
                    n,
                    family,
                    variant,
                    param,
                    format,
                    audit,
                },
        } => pyramid_build(n, &family, &variant, param, format, audit.enabled()),
        Command::Dim { signature, pinched } => {
            let sig: OrbifoldSignature = signature
                .parse()
                .map_err(|e: SignatureError| fail(USAGE, format!("bad signature: {e}")))?;
            match stratum_dimension(&sig, pinched) {
                Ok(d) => {
                    println!("{d}");
                    Ok(())
                }
                Err(SignatureError::NoSuchStratum(_)) => {
                    println!("no such stratum");
                    Err(fail(INVALID, ""))
                }
                Err(e) => Err(fail(INVALID, e.to_string())),
            }
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(USAGE, format!("cannot read {path}: {e}")))
}

fn load_action(path: &str) -> Result<SurfaceKernelAction, Failure> {
    parse_action(&read(path)?).map_err(|e| fail(USAGE, format!("{path}: {e}")))
}

fn load_multicurve(path: &str) -> Result<MulticurveSpec, Failure> {
    parse_multicurve(&read(path)?).map_err(|e| fail(USAGE, format!("{path}: {e}")))
}

fn validate(action: &str, multicurve: Option<&str>) -> Result<(), Failure> {
    let a = load_action(action)?;
    let mc = multicurve.map(load_multicurve).transpose()?;
    let mut problems: Vec<String> = a.validate().iter().map(|v| format!("action: {v}")).collect();
    if problems.is_empty() {
        if let Some(mc) = &mc {
            problems.extend(validate_multicurve(&a, mc).iter().map(|v| format!("multicurve: {v}")));
        }
    }
    if problems.is_empty() {
        println!("ok");
        Ok(())
    } else {
        Err(fail(INVALID, problems.join("\n")))
    }
}

fn build_or_fail(action: &SurfaceKernelAction, mc: &MulticurveSpec) -> Result<LabeledStratumGraph, Failure> {
    build_stratum_graph(action, mc).map_err(|e| match e {
        BuildError::InvalidAction(v) => fail(
            INVALID,
            v.iter().map(|x| format!("action: {x}")).collect::<Vec<_>>().join("\n"),
        ),
        BuildError::InvalidMulticurve(v) => fail(
            INVALID,
            v.iter()
                .map(|x| format!("multicurve: {x}"))
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        other => fail(AUDIT, format!("consistency check failed: {other}")),
    })
}

fn audit_result(report: Option<&AuditReport>) -> Result<(), Failure> {
    match report {
        Some(r) if !r.passed() => Err(fail(AUDIT, "audit failed")),
        _ => Ok(()),
    }
}

fn emit_graph(
    graph: &LabeledStratumGraph,
    report: Option<&AuditReport>,
    format: Format,
    extra: Option<serde_json::Value>,
) {
    let under = graph.underlying();
    match format {
        Format::Text => {
            print!("{}", under.to_text());
            if let Some(r) = report {
                println!("# audit");
                print!("{}", r.to_text());
            }
        }
        Format::Dot => {
            print!("{}", under.to_dot());
            if let Some(r) = report {
                for line in r.to_text().lines() {
                    println!("// {line}");
                }
            }
        }
        Format::Json => {
            let mut value = json!({ "graph": graph, "genus": under.genus() });
            if let Some(r) = report {
                value["audit"] = json!(r);
            }
            if let Some(serde_json::Value::Object(map)) = extra {
                for (k, v) in map {
                    value[k] = v;
                }
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
}

fn pyramid_failure(e: pyramid::PyramidError) -> Failure {
    match e {
        pyramid::PyramidError::Build(BuildError::InvalidAction(_) | BuildError::InvalidMulticurve(_)) => {
            fail(AUDIT, format!("generated spec is invalid: {e}"))
        }
        pyramid::PyramidError::Build(_) | pyramid::PyramidError::Graph(_) => fail(AUDIT, e.to_string()),
        _ => fail(USAGE, e.to_string()),
    }
}

fn pyramid_build(n: u32, family: &str, variant: &str, param: u32, format: Format, audit: bool) -> Result<(), Failure> {
    let family: Family = family.parse().map_err(pyramid_failure)?;
    let variant: Variant = variant.parse().map_err(pyramid_failure)?;
    let p = PyramidMulticurveParams::new(family, variant, param);
    let fam = pyramid::pyramid_action(n).map_err(pyramid_failure)?;
    let case = pyramid::predicted_case(n, p).map_err(pyramid_failure)?;
    let images = pyramid::image_report(&fam, p).map_err(pyramid_failure)?;
    let (mc, graph) = pyramid::build(&fam, p).map_err(pyramid_failure)?;
    let cycle = if family == Family::ArcPlusClosed {
        pyramid::cycle_data(&fam, &mc)
    } else {
        None
    };
    let report = audit.then(|| audit_graph(fam.action(), &mc, &graph));

    if format == Format::Json {
        let extra = json!({
            "params": p,
            "case": case,
            "images": images,
            "cycle": cycle.as_ref().map(|(m, r, d)| json!({ "m": m, "R": r, "d": d })),
        });
        emit_graph(&graph, report.as_ref(), format, Some(extra));
    } else {
        let prefix = if format == Format::Dot { "// " } else { "# " };
        println!("{prefix}{p}: {case}");
        for line in &images {
            println!(
                "{prefix}Im Φ_{} = {}  (order {})",
                line.of.replace("piece ", ""),
                line.generators,
                line.order
            );
        }
        if let Some((m, r, d)) = &cycle {
            println!("{prefix}m = {m}, R = {r}, d = {d}");
        }
        emit_graph(&graph, report.as_ref(), format, None);
    }
    if let Some(bad) = images.iter().find(|l| !l.matches) {
        return Err(fail(
            AUDIT,
            format!("image of {} differs from {}", bad.of, bad.generators),
        ));
    }
    audit_result(report.as_ref())
}

fn classify(n: u32, unproven: bool, format: ClassifyFormat, audit: bool) -> Result<(), Failure> {
    let c = pyramid::classify(n, unproven).map_err(pyramid_failure)?;
    let failures: Vec<String> = if audit {
        let fam = pyramid::pyramid_action(n).map_err(pyramid_failure)?;
        pyramid::all_params(n)
            .par_iter()
            .filter_map(|&p| match pyramid::build(&fam, p) {
                Ok((mc, g)) if audit_graph(fam.action(), &mc, &g).passed() => None,
                Ok(_) => Some(format!("{p}: audit failed")),
                Err(e) => Some(format!("{p}: {e}")),
            })
            .collect()
    } else {
        Vec::new()
    };
    match format {
        ClassifyFormat::Json => {
            let mut value = json!(c);
            if audit {
                value["audit_failures"] = json!(failures);
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        ClassifyFormat::Text => {
            println!("n = {n}: {} distinct graphs", c.entries.len());
            for (i, e) in c.entries.iter().enumerate() {
                let cases: Vec<String> = e.cases.iter().map(ToString::to_string).collect();
                println!();
                println!(
                    "graph {}: {} | {} witnesses, first: {}",
                    i + 1,
                    cases.join("; "),
                    e.witnesses.len(),
                    e.witnesses[0]
                );
                print!("{}", e.graph.to_text());
            }
            if unproven {
                println!();
                println!("unproven candidates: {}", c.unproven.len());
                for u in &c.unproven {
                    println!();
                    println!("candidate: {}", u.case);
                    print!("{}", u.graph.to_text());
                }
            }
            if audit {
                println!();
                let total = pyramid::all_params(n).len();
                println!("audit: {} of {total} specs pass", total - failures.len());
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(fail(AUDIT, failures.join("\n")))
    }
}
