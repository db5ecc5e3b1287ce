use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dimalg::files::{InputError, PoissonFile, Structure};
use dimalg::quantity::{Format, QuantityError, UnitRegistry};

/// Exact dimensioned arithmetic and axiom checks.
#[derive(Parser)]
#[command(name = "dimalg", version)]
struct Cli {
    /// Unit registry (JSON). Defaults to the bundled length/time registry.
    #[arg(long, global = true, value_name = "PATH")]
    registry: Option<PathBuf>,
    /// Print numbers as exact fractions.
    #[arg(long, global = true)]
    exact: bool,
    /// Significant digits for decimal output.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=60))]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a quantity expression such as "2.2 L/min + 2.1 L/min".
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Show the result in this unit.
        #[arg(long, value_name = "UNIT")]
        to: Option<String>,
    },
    /// Evaluate an expression and express it in the target unit.
    Convert {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        unit: String,
    },
    /// Unit registry commands.
    Registry {
        #[command(subcommand)]
        command: RegistryCommand,
    },
    /// Run the ring axiom suite on a structure file.
    Check { file: PathBuf },
    /// Poisson algebra commands on a JSON description.
    Poisson {
        #[command(subcommand)]
        command: PoissonCommand,
    },
}

#[derive(Subcommand)]
enum RegistryCommand {
    /// Validate a registry and list its units.
    Validate { file: Option<PathBuf> },
}

#[derive(Subcommand)]
enum PoissonCommand {
    /// The bracket of two polynomials.
    Bracket { file: PathBuf, f: String, g: String },
    /// N(I)/I for the file's ideal, up to a degree cutoff.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=12))]
        cutoff: u32,
    },
    /// Structure constants, Poisson identities and the ideal's coisotrope
    /// conditions.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 300)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status: 1 for failed laws or dimensions, 2 for bad input.
enum Failure {
    Law(String),
    Input(String),
}

impl From<QuantityError> for Failure {
    fn from(e: QuantityError) -> Self {
        match e.exit_code() {
            1 => Failure::Law(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn registry(cli: &Cli) -> Result<UnitRegistry, Failure> {
    Ok(match &cli.registry {
        Some(p) => UnitRegistry::load(p)?,
        None => UnitRegistry::si_subset(),
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let format = if cli.exact { Format::Exact } else { Format::Digits(cli.digits as usize) };
    match &cli.command {
        Command::Eval { expr, to } => {
            let reg = registry(cli)?;
            let mut q = reg.evaluate(expr)?;
            if let Some(u) = to {
                q = reg.convert(&q, u)?;
            }
            println!("{}", reg.format(&q, format)?);
        }
        Command::Convert { expr, unit } => {
            let reg = registry(cli)?;
            let q = reg.convert(&reg.evaluate(expr)?, unit)?;
            println!("{}", reg.format(&q, format)?);
        }
        Command::Registry { command: RegistryCommand::Validate { file } } => {
            let reg = match file.as_ref().or(cli.registry.as_ref()) {
                Some(p) => UnitRegistry::load(p)?,
                None => UnitRegistry::si_subset(),
            };
            println!("ok: {} base dimensions ({})", reg.rank(), reg.base().join(", "));
            for line in reg.describe() {
                println!("  {line}");
            }
        }
        Command::Check { file } => {
            let s = Structure::load(&read(file)?)?;
            let report = s.check()?;
            print!("{report}");
            if !report.all_passed() {
                return Err(Failure::Law(format!("{} law(s) failed", report.failures().count())));
            }
        }
        Command::Poisson { command } => poisson(command)?,
    }
    Ok(())
}

fn poisson(command: &PoissonCommand) -> Result<(), Failure> {
    match command {
        PoissonCommand::Bracket { file, f, g } => {
            let p = PoissonFile::load(&read(file)?)?;
            let (f, g) = (p.parse(f)?, p.parse(g)?);
            let b = p.poisson.bracket(&f, &g);
            println!("{}", p.ring().display(&b));
        }
        PoissonCommand::Reduce { file, cutoff } => {
            let p = PoissonFile::load(&read(file)?)?;
            let red = p.reduce(*cutoff).map_err(|e| Failure::Law(e.to_string()))?;
            let r = p.ring();
            let killed: Vec<&str> = p.ideal.iter().map(|&i| r.name(i)).collect();
            println!("N(I)/I for I = ({}), degree <= {cutoff}: rank {}", killed.join(", "), red.total_rank());
            for (dim, basis) in red.slices() {
                let shown: Vec<String> = basis.iter().map(|v| r.display(v)).collect();
                println!("  {dim}: {}", shown.join(", "));
            }
        }
        PoissonCommand::Check { file, count, degree, seed } => {
            let p = PoissonFile::load(&read(file)?)?;
            let reports = p.check(*count, *degree, *seed);
            let mut failed = 0;
            for rep in &reports {
                print!("{rep}");
                failed += rep.failures().count();
            }
            if failed > 0 {
                return Err(Failure::Law(format!("{failed} law(s) failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Law(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
