//! Batch command-line front end: engine runs, structural certifications,
//! artifact exports and the CNF reduction.
//!
//! Exit codes: 0 success, 1 property violation or engine failure (with a
//! JSON witness on stdout), 2 usage, parse or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use pivotforge::engine::{active_set_run, default_max_iter, BuiltinRule, SUMMARY_CSV_HEADER};
use pivotforge::exact::{int, to_approx, to_pq};
use pivotforge::objectives::{expand, pad, LowerBoundPolynomial, ObjectiveOracle};
use pivotforge::sat::{self, brute_force_max, brute_force_sat, parse_dimacs, MAX_BRUTE_FORCE_VARS};
use pivotforge::structure::{hamiltonian_path, induce_orientation};
use pivotforge::verify::{self, Check, CheckReport};
use pivotforge::{BoxProgram, Execution, Point};

const CAP_ENV: &str = "PIVOTFORGE_MAX_N";
const CAP_RUNS: usize = 20;
const CAP_USO: usize = 10;
const CAP_SAT: usize = MAX_BRUTE_FORCE_VARS;

#[derive(Parser)]
#[command(
    name = "pivotforge",
    version,
    about = "Exact active-set and simplex runs on cubes, with certification of the worst-case construction"
)]
struct Cli {
    /// Raise every dimension cap to this value (also read from PIVOTFORGE_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Run brute-force scans on a single thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the active-set method on F_n from the origin.
    Run(RunArgs),
    /// Certify one structural claim; exits 1 with a witness on failure.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Export the expanded polynomial, the induced orientation, or the path.
    Export {
        what: ExportKind,
        #[arg(long)]
        n: usize,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce a DIMACS CNF file to its clause-product polynomial.
    Reduce {
        input: PathBuf,
        /// Also decide satisfiability by enumeration and compare with the polynomial maximum.
        #[arg(long)]
        check: bool,
        /// Write the polynomial JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    n: usize,
    /// lowest-index, highest-index, steepest or seeded-random.
    #[arg(long, default_value = "lowest-index")]
    rule: String,
    /// Seed for seeded-random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Embed F_n in a cube of this dimension.
    #[arg(long)]
    pad_to: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the trajectory (json) or summary row (csv) to this file.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Add lossy decimal approximations next to exact values.
    #[arg(long)]
    approx: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Polynomial,
    Orientation,
    Path,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct TrialArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum VerifyCommand {
    #[command(about = Check::Uniqueness.claim())]
    Uniqueness(DimArgs),
    #[command(about = Check::Gradient.claim())]
    Gradient(DimArgs),
    #[command(about = Check::Path.claim())]
    Path(DimArgs),
    #[command(about = Check::Constancy.claim())]
    Constancy(DimArgs),
    #[command(about = Check::Equivalence.claim())]
    Equivalence(TrialArgs),
    #[command(about = Check::Uso.claim())]
    Uso(DimArgs),
    #[command(about = Check::Sink.claim())]
    Sink(DimArgs),
    /// `--n` bounds the number of variables of the random formulas.
    #[command(about = Check::Sat.claim())]
    Sat(TrialArgs),
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{message}")]
    Violation { message: String, witness: Value },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation { .. } => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }
}

struct Ctx {
    override_cap: Option<usize>,
    exec: Execution,
}

impl Ctx {
    fn check_cap(&self, what: &str, n: usize, default_cap: usize) -> Result<(), CliError> {
        let cap = self.override_cap.unwrap_or(default_cap);
        if n > cap {
            return Err(CliError::Usage(format!(
                "{what}: n={n} exceeds the cap of {cap} (raise with --max-n or {CAP_ENV})"
            )));
        }
        Ok(())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// Writes an artifact to `output`, or to stdout with `summary` moved to
/// stderr so stdout stays valid JSON.
fn emit_artifact(output: Option<&Path>, artifact: &Value, summary: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_file(path, &pretty(artifact))?;
            println!("{summary}");
        }
        None => {
            print!("{}", pretty(artifact));
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn require_positive(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    Ok(())
}

fn cmd_run(ctx: &Ctx, args: RunArgs) -> Result<(), CliError> {
    require_positive(args.n)?;
    ctx.check_cap("run", args.n, CAP_RUNS)?;
    let dim = args.pad_to.unwrap_or(args.n);
    if dim < args.n {
        return Err(CliError::Usage(format!("--pad-to {dim} is smaller than n={}", args.n)));
    }
    ctx.check_cap("run --pad-to", dim, CAP_RUNS)?;
    let rule = BuiltinRule::from_name(&args.rule, args.seed)
        .ok_or_else(|| CliError::Usage(format!("unknown pivot rule {:?}", args.rule)))?;

    let program = BoxProgram::unit(dim);
    let f = LowerBoundPolynomial::new(args.n);
    let objective: Box<dyn ObjectiveOracle> = if dim > args.n {
        Box::new(pad(f, dim).map_err(|e| CliError::Usage(e.to_string()))?)
    } else {
        Box::new(f)
    };
    let trajectory = active_set_run(
        &program,
        objective.as_ref(),
        &Point::origin(dim),
        &mut rule.instantiate(),
        default_max_iter(dim),
    )
    .map_err(|e| CliError::Violation {
        message: format!("engine error: {e}"),
        witness: json!(e.to_string()),
    })?;

    if let Some(path) = &args.output {
        let contents = match args.format {
            Format::Json => pretty(&trajectory.to_json(&program, args.approx)),
            Format::Csv => format!(
                "{SUMMARY_CSV_HEADER}\n{}\n",
                trajectory.summary_csv_row(&program, rule.name())
            ),
        };
        write_file(path, &contents)?;
    }
    let final_id = program
        .vertex_id(&trajectory.final_point)
        .map(|v| v.to_string())
        .unwrap_or_else(|_| "-".into());
    let mut line = format!(
        "n={} rule={} iterations={} final={} value={}",
        args.n,
        rule.name(),
        trajectory.iterations(),
        final_id,
        to_pq(&trajectory.final_value)
    );
    if args.approx {
        line.push_str(&format!(" approx={}", to_approx(&trajectory.final_value)));
    }
    println!("{line}");
    if let pivotforge::Outcome::Error(e) = &trajectory.outcome {
        return Err(CliError::Violation {
            message: format!("engine stopped: {e}"),
            witness: json!(e.to_string()),
        });
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, check: VerifyCommand) -> Result<(), CliError> {
    let dim = |a: &DimArgs, default: usize, cap: usize, name: &str| -> Result<usize, CliError> {
        let n = a.n.unwrap_or(default);
        require_positive(n)?;
        ctx.check_cap(name, n, cap)?;
        Ok(n)
    };
    let exec = ctx.exec;
    let report: CheckReport = match check {
        VerifyCommand::Uniqueness(a) => verify::verify_uniqueness(dim(&a, 10, CAP_RUNS, "uniqueness")?, exec),
        VerifyCommand::Gradient(a) => verify::verify_gradient(dim(&a, 8, CAP_RUNS, "gradient")?, exec),
        VerifyCommand::Path(a) => verify::verify_path(dim(&a, 10, CAP_RUNS, "path")?),
        VerifyCommand::Constancy(a) => verify::verify_constancy(dim(&a, 8, CAP_RUNS, "constancy")?, exec),
        VerifyCommand::Uso(a) => verify::verify_uso(dim(&a, 8, CAP_USO, "uso")?, exec),
        VerifyCommand::Sink(a) => verify::verify_sink(dim(&a, 10, CAP_RUNS, "sink")?, exec),
        VerifyCommand::Equivalence(a) => {
            let n = dim(&DimArgs { n: a.n }, 8, CAP_RUNS, "equivalence")?;
            verify::verify_equivalence(n, a.trials.unwrap_or(100), a.seed)
        }
        VerifyCommand::Sat(a) => {
            let n = dim(&DimArgs { n: a.n }, 12, CAP_SAT, "sat")?;
            if n > CAP_SAT {
                return Err(CliError::Usage(format!(
                    "sat: enumeration is limited to {CAP_SAT} variables"
                )));
            }
            verify::verify_sat(n, a.trials.unwrap_or(200), a.seed, exec)
        }
    };
    println!("{report}");
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Violation {
            message: format!("{} violated", report.check),
            witness: report.to_json(),
        })
    }
}

fn cmd_export(ctx: &Ctx, what: ExportKind, n: usize, output: Option<&Path>) -> Result<(), CliError> {
    require_positive(n)?;
    match what {
        ExportKind::Polynomial => {
            ctx.check_cap("export polynomial", n, CAP_RUNS)?;
            let p = expand(n);
            let artifact = serde_json::to_value(p.to_records()).expect("terms serialize");
            let degree = p.total_degree().unwrap_or(0);
            emit_artifact(output, &artifact, &format!("degree={degree}"))
        }
        ExportKind::Orientation => {
            ctx.check_cap("export orientation", n, CAP_USO)?;
            let o = induce_orientation(&LowerBoundPolynomial::new(n)).map_err(|e| CliError::Violation {
                message: e.to_string(),
                witness: json!(e.to_string()),
            })?;
            emit_artifact(output, &o.to_json(), &format!("vertices={}", 1u64 << n))
        }
        ExportKind::Path => {
            ctx.check_cap("export path", n, CAP_RUNS)?;
            let path = hamiltonian_path(n).map_err(|e| CliError::Violation {
                message: e.to_string(),
                witness: json!(e.to_string()),
            })?;
            emit_artifact(output, &path.to_json(), &format!("vertices={}", path.vertices.len()))
        }
    }
}

fn cmd_reduce(ctx: &Ctx, input: &Path, check: bool, output: Option<&Path>) -> Result<(), CliError> {
    let text = fs::read_to_string(input).map_err(|source| CliError::Io {
        path: input.to_path_buf(),
        source,
    })?;
    let formula = parse_dimacs(&text).map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?;
    let poly = sat::reduce(&formula);
    let artifact = serde_json::to_value(poly.to_records()).expect("terms serialize");
    let degree = poly.total_degree().unwrap_or(0);
    emit_artifact(
        output,
        &artifact,
        &format!(
            "vars={} clauses={} degree={degree}",
            formula.n_vars(),
            formula.clauses().len()
        ),
    )?;
    if !check {
        return Ok(());
    }
    ctx.check_cap("reduce --check", formula.n_vars(), CAP_SAT)?;
    let too_large = |e: sat::TooLarge| CliError::Usage(e.to_string());
    let (max, argmax) = brute_force_max(&poly, ctx.exec).map_err(too_large)?;
    let witness = brute_force_sat(&formula, ctx.exec).map_err(too_large)?;
    let verdict = match witness {
        Some(w) => format!("verdict=SAT max={} witness={w}", to_pq(&max)),
        None => format!("verdict=UNSAT max={}", to_pq(&max)),
    };
    println!("{verdict}");
    if (max == int(0)) != witness.is_some() {
        return Err(CliError::Violation {
            message: "polynomial maximum disagrees with satisfiability".into(),
            witness: json!({ "max": to_pq(&max), "argmax": argmax, "sat_witness": witness, "dimacs": formula.to_dimacs() }),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_cap = match std::env::var(CAP_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) => Some(n),
            Err(_) => {
                eprintln!("error: {CAP_ENV}={v:?} is not a nonnegative integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => None,
    };
    let ctx = Ctx {
        override_cap: cli.max_n.or(env_cap),
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(&ctx, args),
        Command::Verify { check } => cmd_verify(&ctx, check),
        Command::Export { what, n, output } => cmd_export(&ctx, what, n, output.as_deref()),
        Command::Reduce { input, check, output } => cmd_reduce(&ctx, &input, check, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Violation { witness, .. } = &e {
                print!("{}", pretty(witness));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
