//! Command-line front end: enumeration, arithmetic criteria checks,
//! constructions, example families, retraction, property reports and
//! the theorem-verification harness.
//!
//! Exit codes: 0 success, 1 validation/usage error, 2 a verification
//! mismatch (arithmetic and enumeration disagree where they must not).

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skewbrace::arith::{criterion_report, CriterionKind};
use skewbrace::brace::{self, PropertyKind, SkewBrace};
use skewbrace::construct::{
    construct, example_generator, first_method_criteria, second_method_criteria,
    second_method_kernel, ConstructionSpec, CriteriaRecord, ExampleFamily, ExampleParams,
};
use skewbrace::enumerate::enumerate_order;
use skewbrace::solution::{self, mp_level, retraction, Solution};
use skewbrace::verify::{verify_theorem, VerifyError};

#[derive(Parser)]
#[command(
    name = "skewbrace",
    version,
    about = "finite skew braces and their Yang-Baxter solutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all skew braces of one order up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Evaluate an arithmetic criterion on n.
    Check(CheckArgs),
    /// Build a skew brace from a construction spec (JSON).
    Construct(ConstructArgs),
    /// Generate one member of a named example family.
    Example(ExampleArgs),
    /// Retract a solution (JSON), once or to a fixed point.
    Retract(RetractArgs),
    /// Compare an arithmetic criterion against exhaustive enumeration.
    VerifyTheorem(VerifyArgs),
    /// Print the property vector of a skew brace (JSON).
    Props(PropsArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    /// Write the full result (tables and property vectors) as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    criterion: String,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction spec: {"b": group, "c": group, "phi": [[..],..],
    /// "psi": [[..],..], "gamma": [[..],..] | null}.
    #[arg(long, visible_alias = "in", value_name = "PATH")]
    input: PathBuf,
    /// Write the constructed brace as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ExampleArgs {
    /// One of: pq1_i, pq1_ii, pq2, p3, p2_cyclic, p2_elementary.
    family: String,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    g: Option<u64>,
    /// Write the brace as JSON (to a path, or '-' for stdout).
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct RetractArgs {
    #[arg(long, visible_alias = "in", value_name = "PATH")]
    input: PathBuf,
    /// Iterate retraction until it stabilizes and report the level.
    #[arg(long)]
    iterate: bool,
    /// Write the (last) retracted solution as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: theorem_a, theorem_b, left_nilpotent, theorem_c.
    kind: String,
    #[arg(long)]
    max: Option<usize>,
    /// Reading of the mod-4 bullet for theorem_c.
    #[arg(long, value_enum, default_value_t = Reading::Odd)]
    reading: Reading,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reading {
    Literal,
    Odd,
}

#[derive(Args)]
struct PropsArgs {
    #[arg(long, visible_alias = "in", value_name = "PATH")]
    input: PathBuf,
}

/// Dispatches the argument vector; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Enumerate(args) => {
            let result = enumerate_order(args.order).map_err(|e| e.to_string())?;
            println!(
                "order {}: {} skew braces up to isomorphism ({} braces, {} non-braces)",
                result.order,
                result.total(),
                result.brace_count(),
                result.non_brace_count()
            );
            for (i, class) in result.classes.iter().enumerate() {
                let set: Vec<&str> = class
                    .properties
                    .named()
                    .iter()
                    .filter(|(_, v)| *v)
                    .map(|(n, _)| *n)
                    .collect();
                println!(
                    "  #{i}: additive group #{}  [{}]",
                    class.add_group_index,
                    set.join(", ")
                );
            }
            if let Some(path) = args.json {
                write_json(&path, &result)?;
            }
            Ok(0)
        }
        Command::Check(args) => {
            let kind = CriterionKind::parse(&args.criterion)
                .ok_or_else(|| format!("unknown criterion '{}'", args.criterion))?;
            let report = criterion_report(args.n, kind);
            println!(
                "criterion {} at n = {}: {}",
                kind.name(),
                args.n,
                report.holds
            );
            match &report.violation {
                Some(v) => println!("  violated: {v}"),
                None => println!("  no violating (i, j, k) triple"),
            }
            Ok(0)
        }
        Command::Construct(args) => {
            let text = fs::read_to_string(&args.input).map_err(|e| e.to_string())?;
            let spec: ConstructionSpec = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let brace = construct(&spec).map_err(|e| e.to_string())?;
            let criteria = if spec.gamma.is_some() {
                let c = second_method_criteria(&spec).map_err(|e| e.to_string())?;
                let kernel = second_method_kernel(&spec).map_err(|e| e.to_string())?;
                println!("kernel of lambda: {kernel:?}");
                c
            } else {
                first_method_criteria(&spec).map_err(|e| e.to_string())?
            };
            println!("constructed skew brace of order {}", brace.order());
            print_criteria(&criteria);
            if let Some(path) = args.json {
                write_json(&path, &brace)?;
            }
            Ok(0)
        }
        Command::Example(args) => {
            let family = ExampleFamily::parse(&args.family)
                .ok_or_else(|| format!("unknown family '{}'", args.family))?;
            let params = ExampleParams {
                p: args.p,
                q: args.q,
                g: args.g,
            };
            let brace = example_generator(family, params).map_err(|e| e.to_string())?;
            println!("{}: skew brace of order {}", family.name(), brace.order());
            match args.json.as_deref() {
                Some("-") => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&brace).map_err(|e| e.to_string())?
                    )
                }
                Some(path) => write_json(&PathBuf::from(path), &brace)?,
                None => {}
            }
            Ok(0)
        }
        Command::Retract(args) => {
            let text = fs::read_to_string(&args.input).map_err(|e| e.to_string())?;
            let sol: Solution = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            if args.iterate {
                match mp_level(&sol) {
                    Some(level) => println!("multipermutation level {level}"),
                    None => println!("retraction stabilizes above one point"),
                }
                let mut current = sol;
                let mut sizes = vec![current.size()];
                loop {
                    let (next, _) = retraction(&current).map_err(|e| e.to_string())?;
                    if next.size() == current.size() {
                        break;
                    }
                    sizes.push(next.size());
                    current = next;
                }
                println!("sizes: {sizes:?}");
                if let Some(path) = args.json {
                    write_json(&path, &current)?;
                }
            } else {
                let (next, proj) = retraction(&sol).map_err(|e| e.to_string())?;
                println!("retraction: {} -> {} points", sol.size(), next.size());
                println!("projection: {proj:?}");
                if let Some(path) = args.json {
                    write_json(&path, &next)?;
                }
            }
            Ok(0)
        }
        Command::VerifyTheorem(args) => {
            let kind = match (args.kind.as_str(), args.reading) {
                ("theorem_a", _) => CriterionKind::TheoremA,
                ("theorem_b", _) => CriterionKind::TheoremB,
                ("left_nilpotent", _) => CriterionKind::LeftNilpotent,
                ("theorem_c", Reading::Odd) | ("theorem_c_odd", _) => CriterionKind::TheoremCOdd,
                ("theorem_c", Reading::Literal) | ("theorem_c_literal", _) => {
                    CriterionKind::TheoremCLiteral
                }
                (other, _) => return Err(format!("unknown theorem '{other}'")),
            };
            let n_max = args
                .max
                .unwrap_or_else(|| skewbrace::verify::default_max(kind));
            match verify_theorem(kind, n_max) {
                Ok(report) => {
                    println!("{} up to n = {n_max}:", kind.name());
                    for row in &report.rows {
                        println!(
                            "  n = {:2}: arithmetic {:5}  enumeration {:5}  {}  [{} ms]{}",
                            row.n,
                            row.arithmetic,
                            row.enumeration,
                            if row.agrees() { "agree   " } else { "DISAGREE" },
                            row.elapsed_ms,
                            match &row.counterexample {
                                Some(c) => format!(
                                    "  counterexample: class {} fails {}",
                                    c.class_index, c.property
                                ),
                                None => String::new(),
                            }
                        );
                    }
                    let disagreements = report.disagreements();
                    if !disagreements.is_empty() {
                        println!("flagged disagreements at n = {disagreements:?}");
                    }
                    if let Some(path) = args.json {
                        write_json(&path, &report)?;
                    }
                    Ok(0)
                }
                Err(VerifyError::MismatchFound {
                    n,
                    property,
                    class_index,
                }) => {
                    eprintln!(
                        "MISMATCH at n = {n}: property {property} (class {class_index:?}) — \
                         either the implementation or the theorem reading is wrong"
                    );
                    Ok(2)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Props(args) => {
            let text = fs::read_to_string(&args.input).map_err(|e| e.to_string())?;
            let b: SkewBrace = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            println!("skew brace of order {}", b.order());
            for kind in PropertyKind::ALL {
                println!("  {:22} {}", kind.name(), brace::has_property(&b, kind));
            }
            println!(
                "  {:22} {:?}",
                "mp_level",
                brace::multipermutation_level(&b)
            );
            println!("  {:22} {}", "socle_size", brace::socle(&b).len());
            println!(
                "  {:22} {}",
                "annihilator_size",
                brace::annihilator(&b).len()
            );
            println!(
                "  {:22} {}",
                "derived_ideal_size",
                brace::derived_ideal(&b).len()
            );
            let sol = solution::from_skew_brace(&b);
            println!(
                "  {:22} {}",
                "solution_involutive",
                solution::is_involutive(&sol)
            );
            Ok(0)
        }
    }
}

fn print_criteria(c: &CriteriaRecord) {
    let fmt = |v: Option<bool>| match v {
        Some(b) => b.to_string(),
        None => "inapplicable (image of gamma is non-abelian)".into(),
    };
    println!("  two_sided:          {}", fmt(c.two_sided));
    println!("  bi_skew:            {}", fmt(c.bi_skew));
    println!("  lambda_homomorphic: {}", c.lambda_homomorphic);
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    fs::write(path, text).map_err(|e| e.to_string())
}
