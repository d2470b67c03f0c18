//! Command-line front end for the special 2-flag toolkit: class
//! enumeration, chart and Pfaffian display, bracket geometry, symmetry
//! prolongation, moduli scans, and rescaling normalization.
//!
//! All output is deterministic: fixed inputs produce byte-identical
//! reports.  Batch scans parallelize internally (thread count via the
//! RAYON_NUM_THREADS environment variable) but assemble output in
//! canonical order.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use flagtower_core::algebra::{format_scalar, parse_scalar, RingRef, Scalar, VarClass};
use flagtower_core::charts::{
    build_chart, fixture, pfaffian_system, zero_steps, Chart, ChartStep, ConstVal, FIXTURE_NAMES,
};
use flagtower_core::flagcomb::{enumerate_codes, validate_code};
use flagtower_core::geometry::{
    cauchy_characteristics, cauchy_of_generators, derived_flag, flag_generator_levels,
    verify_sandwich, FlagReport, VectorField,
};
use flagtower_core::normalization::{
    needs_sqrt, scaling_normalizes, solve_scaling_weights, sqrt_symbol,
};
use flagtower_core::symmetry::{
    evaluate_at_origin, jet_symbol_names, moduli_scan, prolong_symmetry, BaseField, Verdict,
};
use flagtower_core::{count_codes, Error};

#[derive(Parser)]
#[command(name = "flagtower", version, about = "Exact toolkit for special 2-flags", max_term_width = 80)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Chart selection shared by the geometry subcommands: either a named
/// fixture or a class code with explicit step constants.
#[derive(Args)]
struct ChartArgs {
    /// Named fixture (zzz, 212, 121, 123one, 121two, 121three)
    #[arg(long, conflicts_with_all = ["code", "consts"])]
    fixture: Option<String>,
    /// Class code word such as 1.2.3.1.2
    #[arg(long)]
    code: Option<String>,
    /// Step constants, e.g. --const step4=1,1 or --const step5=y:a
    #[arg(long = "const", value_name = "STEP=VALS")]
    consts: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate singularity class codes of a given length
    Enumerate {
        /// Flag width m
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        length: usize,
        /// Print only the number of classes
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Codimension of a class code
    Codim {
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sandwich class of a code (letters beyond 1 collapsed to S)
    Sandwich {
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a chart and print its generators
    Chart {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pfaffian system annihilating a chart's distribution
    Pfaff {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Derived-flag rank profile of a chart's distribution
    DerivedFlag {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cauchy characteristics of a chart's distribution
    Cauchy {
        #[command(flatten)]
        chart: ChartArgs,
        /// Use the first derived square [D, D] instead of D itself
        #[arg(long)]
        of_square: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the sandwich inclusions along the derived flag
    VerifySandwich {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prolong the generic infinitesimal symmetry through a fixture chart
    Symmetries {
        #[arg(long)]
        fixture: String,
        /// Jet truncation order (default: chart length + 1)
        #[arg(long)]
        order: Option<usize>,
        /// Evaluate the prolonged field at the fiber origin
        #[arg(long)]
        at_origin: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Scan all codes of a length for candidate moduli
    ModuliScan {
        #[arg(long)]
        length: usize,
        /// Comma-separated constant grid, e.g. 0,1
        #[arg(long, default_value = "0,1")]
        grid: String,
        /// Print every report line, not only the candidate classes
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Solve and apply a diagonal rescaling of chart parameters
    Rescale {
        #[arg(long)]
        fixture: String,
        /// Parameter targets, e.g. b=1,c=1 (value 1 or sgn)
        #[arg(long)]
        target: String,
        /// Verify the solution by pushforward and span comparison
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the named fixture charts
    Fixtures {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Domain(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Internal(msg) => Failure::Internal(msg),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

fn parse_const_value(s: &str) -> Result<ConstVal, Failure> {
    if let Some(v) = parse_scalar(s) {
        return Ok(ConstVal::Num(v));
    }
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(ConstVal::sym(s));
    }
    Err(domain(format!("invalid constant value '{s}'")))
}

/// Parse one `--const` argument: `stepK=x,y` (positional) or
/// `stepK=x:VAL`, `stepK=y:VAL`, `stepK=x:VAL,y:VAL` (tagged).
fn apply_const(steps: &mut [ChartStep], arg: &str) -> Result<(), Failure> {
    let (step_part, vals) = arg
        .split_once('=')
        .ok_or_else(|| domain(format!("invalid --const '{arg}': expected stepK=...")))?;
    let k: usize = step_part
        .strip_prefix("step")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| domain(format!("invalid step name '{step_part}'")))?;
    if k < 1 || k > steps.len() {
        return Err(domain(format!("step {k} out of range 1..={}", steps.len())));
    }
    let step = &mut steps[k - 1];
    let parts: Vec<&str> = vals.split(',').collect();
    let tagged = parts.iter().all(|p| p.starts_with("x:") || p.starts_with("y:"));
    if tagged {
        for p in parts {
            let (slot, val) = p.split_at(2);
            let val = parse_const_value(val)?;
            match slot {
                "x:" if step.const_x.is_some() => step.const_x = Some(val),
                "y:" if step.const_y.is_some() => step.const_y = Some(val),
                _ => {
                    return Err(domain(format!(
                        "step {k} has no {} constant slot",
                        &slot[..1]
                    )))
                }
            }
        }
        return Ok(());
    }
    let slots = [&mut step.const_x, &mut step.const_y]
        .into_iter()
        .flatten()
        .count();
    if parts.len() != slots {
        return Err(domain(format!(
            "step {k} takes {slots} constant(s), got {}",
            parts.len()
        )));
    }
    let mut it = parts.into_iter();
    if step.const_x.is_some() {
        step.const_x = Some(parse_const_value(it.next().unwrap())?);
    }
    if step.const_y.is_some() {
        step.const_y = Some(parse_const_value(it.next().unwrap())?);
    }
    Ok(())
}

fn resolve_chart(args: &ChartArgs, extra: &[(String, VarClass)]) -> Result<Chart, Failure> {
    if let Some(name) = &args.fixture {
        return Ok(fixture(name, extra)?);
    }
    let word = args
        .code
        .as_deref()
        .ok_or_else(|| domain("either --fixture or --code is required"))?;
    let code = validate_code(word, 2)?;
    let mut steps = zero_steps(&code);
    for c in &args.consts {
        apply_const(&mut steps, c)?;
    }
    if extra.is_empty() {
        Ok(build_chart(&code, steps)?)
    } else {
        Ok(Chart::build(&code, steps, extra)?)
    }
}

fn field_display(ring: &RingRef, v: &VectorField) -> String {
    let mut parts = Vec::new();
    for (i, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        parts.push(format!("({}) d/d{}", c, ring.name(i)));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn fields_json(fields: &[VectorField]) -> serde_json::Value {
    json!(fields
        .iter()
        .map(|g| g.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn flag_report_json(report: &FlagReport) -> serde_json::Value {
    json!({
        "schema": "flag-report/1",
        "levels": report
            .levels
            .iter()
            .map(|l| {
                json!({
                    "depth": l.depth,
                    "generator_count": l.generator_count,
                    "generic_rank": l.generic_rank,
                    "rank_at_origin": l.rank_at_origin,
                    "cauchy_rank": l.cauchy_rank,
                    "cauchy_in_previous": l.cauchy_in_previous,
                    "cauchy_corank_in_previous": l.cauchy_corank_in_previous,
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn parse_grid(s: &str) -> Result<Vec<Scalar>, Failure> {
    s.split(',')
        .map(|p| parse_scalar(p).ok_or_else(|| domain(format!("invalid grid value '{p}'"))))
        .collect()
}

fn verdict_str(v: &Verdict) -> &'static str {
    match v {
        Verdict::CandidateModulus => "candidate-modulus",
        Verdict::Movable => "movable",
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate {
            m,
            length,
            count,
            format,
        } => {
            if count {
                let n = count_codes(m, length);
                match format {
                    Format::Text => println!("{n}"),
                    Format::Json => println!(
                        "{}",
                        json!({"schema": "enumerate/1", "m": m, "length": length, "count": n})
                    ),
                }
            } else {
                let codes = enumerate_codes(m, length);
                match format {
                    Format::Text => {
                        for c in &codes {
                            println!("{c}");
                        }
                    }
                    Format::Json => println!(
                        "{}",
                        json!({
                            "schema": "enumerate/1",
                            "m": m,
                            "length": length,
                            "codes": codes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        })
                    ),
                }
            }
        }
        Command::Codim { code, m, format } => {
            let code = validate_code(&code, m)?;
            let d = code.codimension();
            match format {
                Format::Text => println!("{d}"),
                Format::Json => println!(
                    "{}",
                    json!({"schema": "codim/1", "code": code.to_string(), "codimension": d})
                ),
            }
        }
        Command::Sandwich { code, m, format } => {
            let code = validate_code(&code, m)?;
            let s = code.sandwich_class();
            match format {
                Format::Text => println!("{s}"),
                Format::Json => println!(
                    "{}",
                    json!({"schema": "sandwich/1", "code": code.to_string(), "sandwich": s.to_string()})
                ),
            }
        }
        Command::Chart { chart, format } => {
            let chart = resolve_chart(&chart, &[])?;
            match format {
                Format::Text => {
                    println!("code: {}", chart.code());
                    let ring = chart.ring();
                    for k in 1..=chart.length() {
                        println!("W{k}: {}", field_display(ring, chart.stage_generator(k)));
                    }
                }
                Format::Json => println!("{}", chart.to_json()),
            }
        }
        Command::Pfaff { chart, format } => {
            let chart = resolve_chart(&chart, &[])?;
            let pf = pfaffian_system(&chart)?;
            match format {
                Format::Text => {
                    for line in pf.display_lines() {
                        println!("{line}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "schema": "pfaff/1",
                        "code": chart.code().to_string(),
                        "forms": pf
                            .forms()
                            .iter()
                            .map(|f| f.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                ),
            }
        }
        Command::DerivedFlag { chart, format } => {
            let chart = resolve_chart(&chart, &[])?;
            let d = chart.distribution()?;
            let report = derived_flag(&d, chart.length())?;
            match format {
                Format::Text => {
                    for l in &report.levels {
                        println!(
                            "depth {}: rank {} ({} generators)",
                            l.depth, l.generic_rank, l.generator_count
                        );
                    }
                }
                Format::Json => println!("{}", flag_report_json(&report)),
            }
        }
        Command::Cauchy {
            chart,
            of_square,
            format,
        } => {
            let chart = resolve_chart(&chart, &[])?;
            let d = chart.distribution()?;
            let ring = chart.ring().clone();
            let gens = if of_square {
                let levels = flag_generator_levels(&d, 1)?;
                cauchy_of_generators(&ring, &levels[1])?
            } else {
                cauchy_characteristics(&d)?
            };
            match format {
                Format::Text => {
                    println!("rank: {}", gens.len());
                    for g in &gens {
                        println!("{}", field_display(&ring, g));
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "schema": "cauchy/1",
                        "code": chart.code().to_string(),
                        "of_square": of_square,
                        "rank": gens.len(),
                        "generators": fields_json(&gens),
                    })
                ),
            }
        }
        Command::VerifySandwich { chart, format } => {
            let chart = resolve_chart(&chart, &[])?;
            let report = verify_sandwich(&chart)?;
            let ok = report
                .levels
                .iter()
                .all(|l| l.cauchy_in_previous != Some(false));
            match format {
                Format::Text => {
                    for l in &report.levels {
                        let inc = match l.cauchy_in_previous {
                            Some(true) => "included",
                            Some(false) => "VIOLATED",
                            None => "skipped",
                        };
                        println!(
                            "depth {}: rank {}, cauchy rank {}, inclusion {}",
                            l.depth,
                            l.generic_rank,
                            l.cauchy_rank.map_or("-".to_string(), |r| r.to_string()),
                            inc
                        );
                    }
                    println!("sandwich: {}", if ok { "ok" } else { "violated" });
                }
                Format::Json => {
                    let mut v = flag_report_json(&report);
                    v["schema"] = json!("verify-sandwich/1");
                    v["ok"] = json!(ok);
                    println!("{v}");
                }
            }
        }
        Command::Symmetries {
            fixture: name,
            order,
            at_origin,
            format,
        } => {
            let probe = fixture(&name, &[])?;
            let order = order.unwrap_or(probe.length() + 1);
            let chart = fixture(&name, &jet_symbol_names(order))?;
            let ring = chart.ring().clone();
            let base = BaseField::generic(&ring, order)?;
            let prolonged = prolong_symmetry(&base, &chart)?;
            let comps: Vec<String> = if at_origin {
                evaluate_at_origin(&prolonged)
                    .iter()
                    .map(|p| p.to_string())
                    .collect()
            } else {
                prolonged.components().iter().map(|p| p.to_string()).collect()
            };
            match format {
                Format::Text => {
                    for (i, c) in comps.iter().enumerate() {
                        println!("{}: {}", ring.name(i), c);
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "schema": "symmetry/1",
                        "fixture": name,
                        "order": order,
                        "at_origin": at_origin,
                        "coordinates": (0..ring.n_coords())
                            .map(|i| ring.name(i).to_string())
                            .collect::<Vec<_>>(),
                        "components": comps,
                    })
                ),
            }
        }
        Command::ModuliScan {
            length,
            grid,
            all,
            format,
        } => {
            let grid = parse_grid(&grid)?;
            let reports = moduli_scan(length, &grid)?;
            let candidates: Vec<String> =
                flagtower_core::symmetry::candidate_classes(&reports)
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
            match format {
                Format::Text => {
                    if all {
                        for r in &reports {
                            println!(
                                "{} | {} | span {} | {}",
                                r.code,
                                r.constants,
                                r.span_dim,
                                verdict_str(&r.verdict)
                            );
                        }
                    }
                    for c in &candidates {
                        println!("{c}");
                    }
                }
                Format::Json => {
                    let mut out = json!({
                        "schema": "moduli-scan/1",
                        "length": length,
                        "grid": grid.iter().map(format_scalar).collect::<Vec<_>>(),
                        "candidates": candidates,
                    });
                    if all {
                        out["reports"] = json!(reports
                            .iter()
                            .map(|r| {
                                json!({
                                    "code": r.code.to_string(),
                                    "constants": r.constants,
                                    "span_dim": r.span_dim,
                                    "deficient_slots": r.deficient_slots,
                                    "verdict": verdict_str(&r.verdict),
                                })
                            })
                            .collect::<Vec<_>>());
                    }
                    println!("{out}");
                }
            }
        }
        Command::Rescale {
            fixture: name,
            target,
            verify,
            format,
        } => {
            let chart = fixture(&name, &[sqrt_symbol()])?;
            let mut normalize = Vec::new();
            for pair in target.split(',') {
                let (param, value) = pair
                    .split_once('=')
                    .ok_or_else(|| domain(format!("invalid target '{pair}'")))?;
                if !chart.parameters().iter().any(|p| p == param) {
                    return Err(domain(format!("chart has no parameter '{param}'")));
                }
                match value {
                    "1" | "sgn" => normalize.push(param.to_string()),
                    _ => {
                        return Err(domain(format!(
                            "unsupported target value '{value}' (use 1 or sgn)"
                        )))
                    }
                }
            }
            let refs: Vec<&str> = normalize.iter().map(|s| s.as_str()).collect();
            let set = solve_scaling_weights(&chart, &refs)?;
            let n = chart.ring().n_coords();
            let scaling = set.particular_scaling(n);
            let verified = if verify {
                let pos = scaling_normalizes(&chart, &scaling, 1)?;
                let neg = if needs_sqrt(&scaling) {
                    scaling_normalizes(&chart, &scaling, -1)?
                } else {
                    pos
                };
                Some(pos && neg)
            } else {
                None
            };
            match format {
                Format::Text => {
                    for i in 0..n {
                        println!(
                            "{}: b^{} |c|^{}",
                            chart.ring().name(i),
                            format_scalar(&scaling.b_exp[i]),
                            format_scalar(&scaling.c_exp[i]),
                        );
                    }
                    if let Some(v) = verified {
                        println!("verified: {v}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "schema": "rescale/1",
                        "fixture": name,
                        "target": target,
                        "coordinates": (0..n)
                            .map(|i| chart.ring().name(i).to_string())
                            .collect::<Vec<_>>(),
                        "b_exponents": scaling.b_exp.iter().map(format_scalar).collect::<Vec<_>>(),
                        "c_exponents": scaling.c_exp.iter().map(format_scalar).collect::<Vec<_>>(),
                        "verified": verified,
                    })
                ),
            }
        }
        Command::Fixtures { format } => match format {
            Format::Text => {
                for name in FIXTURE_NAMES {
                    let chart = fixture(name, &[])?;
                    println!("{name}\t{}", chart.code());
                }
            }
            Format::Json => {
                let entries: Result<Vec<_>, Failure> = FIXTURE_NAMES
                    .iter()
                    .map(|&name| {
                        let chart = fixture(name, &[])?;
                        Ok(json!({"name": name, "code": chart.code().to_string()}))
                    })
                    .collect();
                println!("{}", json!({"schema": "fixtures/1", "fixtures": entries?}));
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
