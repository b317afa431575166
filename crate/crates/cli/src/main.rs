mod compare;
mod error;
mod plot;
mod report;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sasaki_core::algebra::scalar::rat_from_f64;
use sasaki_core::algebra::{default_refine_width, parse_rat, DEFAULT_PRECISION};
use sasaki_core::brieskorn::{enumerate_regular_positive, positivity_and_index, weights_from_exponents};
use sasaki_core::cone::{reduced_numerator, ConeOptions};
use sasaki_core::sampling::DEFAULT_CEILING;
use sasaki_core::Rat;

use crate::error::{CliError, CliResult};
use crate::scenario::load_scenario;

#[derive(Parser, Debug)]
#[command(name = "sasaki-cone", version, about = "Extremal and CSC rays in the Sasaki-Reeb cone of admissible bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Scenario JSON file.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Bits for floating-point values reported next to exact enclosures.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Target width of root enclosures, as "p/q" or a decimal.
    #[arg(long, global = true)]
    refine_width: Option<String>,
    /// Largest interpolation degree before giving up (exit code 3).
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    degree_ceiling: usize,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads; SASAKI_CONE_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every task of a scenario and write report.json (plus cone.csv and cone.svg when requested).
    Run,
    /// Parse and validate a scenario without computing.
    Validate,
    /// List regular positive Brieskorn-Pham exponent vectors.
    Brieskorn {
        /// Restrict to one dimension (3 or 4).
        #[arg(long)]
        dimension: Option<usize>,
    },
    /// Compare a report with a reference report.
    Compare {
        report: PathBuf,
        reference: PathBuf,
        /// Relative tolerance for floats.
        #[arg(long, default_value_t = compare::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}

fn parse_width(text: &str) -> CliResult<Rat> {
    let bad = || CliError::Usage(format!("--refine-width: cannot parse {text:?}"));
    let w = match parse_rat(text) {
        Ok(r) => r,
        Err(_) => rat_from_f64(text.trim().parse::<f64>().map_err(|_| bad())?).ok_or_else(bad)?,
    };
    if w <= Rat::from_integer(0.into()) {
        return Err(CliError::Usage("--refine-width must be positive".into()));
    }
    Ok(w)
}

fn options(common: &Common) -> CliResult<ConeOptions> {
    let refine_width = match &common.refine_width {
        Some(t) => parse_width(t)?,
        None => default_refine_width(),
    };
    Ok(ConeOptions { degree_ceiling: common.degree_ceiling, refine_width, precision: common.precision })
}

fn configure_threads(flag: Option<usize>) -> CliResult<()> {
    let from_env = match std::env::var("SASAKI_CONE_THREADS") {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("SASAKI_CONE_THREADS: {v:?}")))?),
        Err(_) => None,
    };
    if let Some(n) = from_env.or(flag) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, body: &str) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io("create", dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| CliError::io("write", &path, e))?;
    Ok(path)
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io("read", path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn scenario_path(common: &Common) -> CliResult<&Path> {
    common.scenario.as_deref().ok_or_else(|| CliError::Usage("--scenario is required".into()))
}

fn run(common: &Common) -> CliResult<()> {
    let sc = load_scenario(scenario_path(common)?)?;
    let opts = options(common)?;
    let out = report::run_scenario(&sc, &opts)?;
    let mut text = serde_json::to_string_pretty(&out.report).expect("report serializes");
    text.push('\n');
    let mut written = vec![write_file(&common.out, "report.json", &text)?];
    if sc.output.csv {
        written.push(write_file(&common.out, "cone.csv", &plot::cone_csv(&sc)?)?);
    }
    if sc.output.svg {
        let svg = match &out.cone {
            Some(r) => plot::sign_heatmap(&r.reduced_numerator, &r.boundary_points(), sc.output.grid),
            None => plot::sign_heatmap(&reduced_numerator(&sc.setup, &sc.p, &opts)?, &[], sc.output.grid),
        };
        written.push(write_file(&common.out, "cone.svg", &svg)?);
    }
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

fn validate(common: &Common) -> CliResult<()> {
    let sc = load_scenario(scenario_path(common)?)?;
    let tasks: Vec<&str> = sc.tasks.iter().map(|t| t.key()).collect();
    let summary = json!({
        "scenario": sc.name,
        "valid": true,
        "m": sc.setup.m(),
        "p": report::exact(&sc.p),
        "tasks": tasks,
        "hypotheses": {
            "nonneg_base": sc.setup.theorem_hypotheses(&sc.p).nonneg_base,
            "p_ok": sc.setup.theorem_hypotheses(&sc.p).p_ok,
        },
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}

fn brieskorn(common: &Common, dimension: Option<usize>) -> CliResult<()> {
    let dims = match dimension {
        Some(n) => vec![n],
        None => vec![3, 4],
    };
    let mut list = Vec::new();
    for n in dims {
        for a in enumerate_regular_positive(n).map_err(|e| CliError::Usage(e.to_string()))? {
            let bd = weights_from_exponents(&a).map_err(|e| CliError::Usage(e.to_string()))?;
            let pos = positivity_and_index(&bd, 0);
            list.push(json!({ "n": n, "exponents": bd.exponents, "weights": bd.weights, "degree": bd.degree, "index": pos.index }));
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Array(list)).expect("list serializes");
    text.push('\n');
    print!("{text}");
    if common.out != Path::new(".") {
        write_file(&common.out, "brieskorn.json", &text)?;
    }
    Ok(())
}

fn compare(report: &Path, reference: &Path, tol: f64) -> CliResult<()> {
    let diff = compare::compare_reports(&read_json(report)?, &read_json(reference)?, tol);
    for line in &diff {
        println!("{line}");
    }
    if diff.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(diff.len()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(cli.common.threads).and_then(|_| match &cli.command {
        Command::Run => run(&cli.common),
        Command::Validate => validate(&cli.common),
        Command::Brieskorn { dimension } => brieskorn(&cli.common, *dimension),
        Command::Compare { report, reference, tolerance } => compare(report, reference, *tolerance),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
