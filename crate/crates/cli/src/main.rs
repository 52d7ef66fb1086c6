//! `gcrit`: limits on the critical coupling from the command line.
//!
//! Exit codes: 0 success, 1 invariant or reproduction failure, 2 configuration
//! error, 3 numerical non-convergence.

mod check;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gcrit::report::{self, Format, Record, DEFAULT_DIGITS};
use gcrit::tables::{self, TableId};
use gcrit::{exact, limits, AngularMomentum, Error, QuadratureConfig};

use crate::config::{FileConfig, Overrides, PotentialSection, Quantity, RunConfig};

#[derive(Parser)]
#[command(name = "gcrit", version, about = "Lower and upper limits on the critical coupling of central potentials")]
struct Cli {
    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute limits and reference values for one potential.
    Compute(ComputeArgs),
    /// Recompute one of the four published comparison tables.
    Reproduce(ReproduceArgs),
    /// Run the invariant suite.
    Check(CheckArgs),
}

#[derive(Args)]
struct PotentialArgs {
    /// square_well, exponential, yukawa, stis, shell or tabulated.
    #[arg(long)]
    potential: Option<String>,
    /// Range parameter R.
    #[arg(long = "R", allow_negative_numbers = true)]
    scale: Option<f64>,
    /// STIS cutoff in units of R.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Shell width.
    #[arg(long, allow_negative_numbers = true)]
    width: Option<f64>,
    /// Two-column CSV grid for a tabulated potential.
    #[arg(long)]
    grid: Option<PathBuf>,
}

impl From<PotentialArgs> for PotentialSection {
    fn from(a: PotentialArgs) -> Self {
        PotentialSection { kind: a.potential, scale: a.scale, alpha: a.alpha, width: a.width, grid: a.grid }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    potential: PotentialArgs,
    /// Angular momenta: `0`, `0,2,5` or `0..5`.
    #[arg(long)]
    ell: Option<String>,
    /// Comma-separated methods, `all`, `shooting` or `nystrom`.
    #[arg(long)]
    methods: Option<String>,
    /// csv or md.
    #[arg(long)]
    format: Option<String>,
    /// Significant digits.
    #[arg(long)]
    digits: Option<usize>,
    /// Emit one wide row per l with every limit and both reference values.
    #[arg(long)]
    sandwich: bool,
    /// Add a wall-time column.
    #[arg(long)]
    timing: bool,
    /// Nodes of the Nystrom discretisation.
    #[arg(long, default_value_t = 400)]
    nodes: usize,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table number, 1 to 4.
    #[arg(long)]
    table: u8,
    /// csv or md.
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
}

#[derive(Args)]
struct CheckArgs {
    /// TOML configuration naming the potential and l values; defaults to the
    /// four built-in shapes with l = 0..5.
    #[arg(long)]
    config: Option<PathBuf>,
}

enum Failure {
    Invariant(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let quadrature = QuadratureConfig { execution: check::execution(cli.sequential), ..Default::default() };

    let result = match cli.command {
        Command::Compute(args) => compute(args, quadrature),
        Command::Reproduce(args) => reproduce(args, quadrature),
        Command::Check(args) => run_check(args, quadrature),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("gcrit: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("gcrit: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn compute(args: ComputeArgs, base: QuadratureConfig) -> Result<(), Failure> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let overrides = Overrides {
        potential: args.potential.into(),
        ell: args.ell,
        methods: args.methods,
        format: args.format,
        digits: args.digits,
    };
    let run = RunConfig::resolve(file, overrides, base)?;
    let cfg = run.quadrature;
    if args.nodes < 8 {
        return Err(config::config_error("nodes", "need at least 8").into());
    }

    if args.sandwich {
        let ells: Vec<AngularMomentum> = run.ells.iter().map(|&l| l.into()).collect();
        let reports = cfg
            .execution
            .map(&ells, |&ell| limits::sandwich(&run.potential, ell, &cfg))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        print!("{}", report::render_sandwich(&reports, run.format, run.digits));
        return Ok(());
    }

    let jobs: Vec<(u32, Quantity)> = run
        .ells
        .iter()
        .flat_map(|&l| run.quantities.iter().map(move |&q| (l, q)))
        .collect();
    let records = cfg
        .execution
        .map(&jobs, |&(l, q)| {
            let ell = AngularMomentum::new(l);
            let t0 = Instant::now();
            let mut record = match q {
                Quantity::Bound(m) => Record::from_bound(&m.compute(&run.potential, ell, &cfg)?, None),
                Quantity::Shooting => exact_record(l, q, exact::critical_coupling_shooting(&run.potential, ell, &cfg)?),
                Quantity::Nystrom => exact_record(
                    l,
                    q,
                    exact::critical_coupling_nystrom(&run.potential, ell, args.nodes, &cfg)?,
                ),
            };
            if args.timing {
                record.wall_time = Some(t0.elapsed().as_secs_f64());
            }
            Ok::<_, Error>(record)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", report::render_records(&records, run.format, run.digits));
    Ok(())
}

fn exact_record(ell: u32, q: Quantity, value: f64) -> Record {
    Record {
        ell,
        method: q.name().to_string(),
        value,
        optimal_param: None,
        error_estimate: None,
        wall_time: None,
    }
}

fn reproduce(args: ReproduceArgs, cfg: QuadratureConfig) -> Result<(), Failure> {
    let id = TableId::from_number(args.table)?;
    let format: Format = args.format.parse()?;
    if !(1..=17).contains(&args.digits) {
        return Err(config::config_error("digits", "must be between 1 and 17").into());
    }
    let table = tables::reproduce_table(id, &cfg)?;
    print!("{}", report::render_table(&table, format, args.digits));
    if table.pass {
        return Ok(());
    }
    let cells: Vec<String> = table
        .failures()
        .iter()
        .map(|(label, c)| {
            format!(
                "{}={label} {}: computed {} printed {} deviation {:.2e} (tolerance {:.0e})",
                id.label_name(),
                c.column.label(),
                report::format_sig(c.computed, args.digits),
                c.printed,
                c.deviation(),
                c.column.tolerance()
            )
        })
        .collect();
    Err(Failure::Invariant(format!("{id} cells outside tolerance: {}", cells.join("; "))))
}

fn run_check(args: CheckArgs, base: QuadratureConfig) -> Result<(), Failure> {
    let t0 = Instant::now();
    let (cases, cfg) = match &args.config {
        None => (check::default_cases(), base),
        Some(path) => {
            let file = FileConfig::load(path)?;
            let overrides = Overrides {
                potential: PotentialSection::default(),
                ell: None,
                methods: Some("all".into()),
                format: None,
                digits: None,
            };
            let run = RunConfig::resolve(file, overrides, base)?;
            let cases = run
                .ells
                .iter()
                .map(|&l| check::Case { potential: run.potential.clone(), ell: l.into() })
                .collect();
            (cases, run.quadrature)
        }
    };
    let lines = check::run(&cases, &cfg)?;
    let mut failed = 0;
    for line in &lines {
        println!("{} {}: {}", if line.pass { "PASS" } else { "FAIL" }, line.name, line.detail);
        failed += usize::from(!line.pass);
    }
    println!(
        "{} of {} invariants hold over {} cases ({:.1} s)",
        lines.len() - failed,
        lines.len(),
        cases.len(),
        t0.elapsed().as_secs_f64()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{failed} invariant(s) failed")))
    }
}
