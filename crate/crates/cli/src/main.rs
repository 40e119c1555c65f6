use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use toric_core::catalog::BUILDERS;
use toric_core::euler::count_lattice_points;
use toric_core::{
    build_catalog, run_verification, verify_ascending_step, verify_induction_step,
    verify_ishida as verify_ishida_identity, CatalogEntry, ChiMethod, Fan, HrrEngine,
    InductionStep, TorusDivisor, VerificationConfig,
};

/// Euler characteristics of line bundles on smooth complete toric varieties.
///
/// A FAN argument is either a path to a fan file or `catalog:NAME[:PARAMS]`,
/// e.g. `catalog:hirzebruch:2`.
#[derive(Parser)]
#[command(name = "toric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan file and report smoothness and completeness.
    Check { fanfile: PathBuf },
    /// Compute χ(O(D)).
    Chi {
        fan: String,
        /// Coefficients in ray order, e.g. `2,0,-1`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: TorusDivisor,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Check that the Todd class has degree one.
    VerifyIshida { fan: String },
    /// Cross-check every method and identity on seeded random divisors.
    VerifyHrr {
        fan: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Inclusive coefficient range `LO..HI`.
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true, value_parser = parse_range)]
        coeff_range: (i64, i64),
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate both induction steps for one divisor and ray.
    VerifyStep {
        fan: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: TorusDivisor,
        #[arg(long)]
        ray: usize,
    },
    /// List catalog builders or print a catalog fan.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    /// Print the fan file of a catalog entry, e.g. `emit hirzebruch 2`.
    Emit {
        name: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<i64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Hrr,
    Recursive,
    Cohomology,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<ChiMethod> {
        match self {
            MethodArg::Hrr => vec![ChiMethod::Hrr],
            MethodArg::Recursive => vec![ChiMethod::Recursive],
            MethodArg::Cohomology => vec![ChiMethod::Cohomology],
            MethodArg::All => ChiMethod::ALL.to_vec(),
        }
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

type CliResult = Result<bool, String>;

fn load_fan(source: &str) -> Result<Fan, String> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let entry: CatalogEntry = name.parse().map_err(|e| format!("{e}"))?;
        return entry.build().map_err(|e| format!("{source}: {e}"));
    }
    let text = fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
    text.parse().map_err(|e| format!("{source}: {e}"))
}

fn load_smooth_complete(source: &str) -> Result<Fan, String> {
    let fan = load_fan(source)?;
    fan.require_smooth_complete()
        .map_err(|e| format!("{source}: {e}"))?;
    Ok(fan)
}

fn check(path: &Path) -> CliResult {
    let fan = load_fan(&path.display().to_string())?;
    println!(
        "dim {}  rays {}  maximal cones {}",
        fan.dim(),
        fan.num_rays(),
        fan.maximal_cones().len()
    );
    let smooth = fan.is_smooth();
    let complete = fan.is_complete();
    println!("smooth: {smooth}");
    println!("complete: {complete}");
    Ok(smooth.holds() && complete.holds())
}

fn chi(source: &str, d: &TorusDivisor, method: MethodArg) -> CliResult {
    let fan = load_smooth_complete(source)?;
    d.check(&fan).map_err(|e| e.to_string())?;
    let mut values = Vec::new();
    for m in method.methods() {
        let v = m.chi(&fan, d).map_err(|e| format!("{m}: {e}"))?;
        println!("CHI {source} {d} {m} {v}");
        values.push(v);
    }
    if method == MethodArg::All {
        if let Some(v) = count_lattice_points(&fan, d).map_err(|e| e.to_string())? {
            println!("CHI {source} {d} lattice {v}");
            values.push(v);
        }
    }
    Ok(values.windows(2).all(|w| w[0] == w[1]))
}

fn verify_ishida(source: &str) -> CliResult {
    let fan = load_smooth_complete(source)?;
    let engine = HrrEngine::new(&fan).map_err(|e| e.to_string())?;
    let ok = verify_ishida_identity(&fan).map_err(|e| e.to_string())?;
    println!(
        "todd genus {}  ishida {}",
        engine.todd_genus(),
        if ok { "pass" } else { "FAIL" }
    );
    println!(
        "CHI {source} {} hrr {}",
        TorusDivisor::zero(fan.num_rays()),
        engine.todd_genus()
    );
    Ok(ok)
}

fn verify_hrr(source: &str, config: VerificationConfig) -> CliResult {
    let fan = load_smooth_complete(source)?;
    let report = run_verification(&fan, source, config).map_err(|e| e.to_string())?;
    print!("{}", report.render());
    Ok(report.passed())
}

fn print_step(label: &str, s: &InductionStep) {
    println!(
        "{label} ray {}: star {}  difference {}  cancelled {}  adjacent {}  {}",
        s.ray,
        s.star_chi,
        s.difference,
        s.cancelled,
        s.adjacent,
        if s.holds() { "pass" } else { "FAIL" }
    );
}

fn verify_step(source: &str, d: &TorusDivisor, ray: usize) -> CliResult {
    let fan = load_smooth_complete(source)?;
    let down = verify_induction_step(&fan, d, ray).map_err(|e| e.to_string())?;
    let up = verify_ascending_step(&fan, d, ray).map_err(|e| e.to_string())?;
    print_step("descending", &down);
    print_step("ascending", &up);
    Ok(down.holds() && up.holds())
}

fn catalog(cmd: &CatalogCommand) -> CliResult {
    match cmd {
        CatalogCommand::List => {
            for (name, params, description) in BUILDERS {
                let usage = if params.is_empty() {
                    name.to_string()
                } else {
                    format!("{name}:{params}")
                };
                println!("{usage:<22} {description}");
            }
            println!();
            println!("standard corpus:");
            for entry in toric_core::standard_catalog() {
                println!("  catalog:{entry}");
            }
        }
        CatalogCommand::Emit { name, params } => {
            let mut entry: CatalogEntry = name.parse().map_err(|e| format!("{e}"))?;
            entry.params.extend(params);
            let fan = build_catalog(&entry.name, &entry.params).map_err(|e| e.to_string())?;
            print!("{}", fan.to_fan_text());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { fanfile } => check(fanfile),
        Command::Chi {
            fan,
            divisor,
            method,
        } => chi(fan, divisor, *method),
        Command::VerifyIshida { fan } => verify_ishida(fan),
        Command::VerifyHrr {
            fan,
            trials,
            coeff_range,
            seed,
        } => verify_hrr(
            fan,
            VerificationConfig {
                trials: *trials,
                coeff_range: *coeff_range,
                seed: *seed,
            },
        ),
        Command::VerifyStep { fan, divisor, ray } => verify_step(fan, divisor, *ray),
        Command::Catalog(cmd) => catalog(cmd),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
