use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fnarc::format::FieldSpec;
use fnarc::Error;

mod commands;

#[derive(Parser)]
#[command(
    name = "fnarc",
    version,
    about = "Finite models of formal neighborhoods of arcs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the arc against the variety and choose the Jacobian minor.
    Check(Inputs),
    /// Build the finite model and its diagnostics.
    Model(Inputs),
    /// Lift a model solution over a test ring to a deformation of the arc.
    Lift {
        #[command(flatten)]
        inputs: Inputs,
        /// Solution file: values of the model unknowns over a test ring.
        solution: PathBuf,
    },
    /// Compare model solutions with jets of the variety by enumeration.
    Oracle(Inputs),
    /// Print the jet presentation of the variety.
    Jets {
        variety: PathBuf,
        /// Jet order `m`.
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Inputs {
    variety: PathBuf,
    arc: PathBuf,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
pub struct Opts {
    /// Base field, overriding the variety file: `rational` or `p=<prime>`.
    #[arg(long)]
    pub field: Option<String>,
    /// Arc precision (check, model), target precision (lift) or jet order (oracle).
    #[arg(long)]
    pub precision: Option<usize>,
    /// Exponent `e` of the model.
    #[arg(long = "e", default_value_t = 1)]
    pub e: usize,
    /// Comma-separated variables to eliminate, overriding the minor search.
    #[arg(long, value_delimiter = ',')]
    pub minor: Option<Vec<String>>,
    /// Reduce to a complete intersection by random combinations.
    #[arg(long)]
    pub reduce: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_trials: usize,
    /// Enumeration budget in candidate evaluations.
    #[arg(long, default_value_t = fnarc::lifting::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Test ring file; the dual numbers `k[e]/(e^2)` by default.
    #[arg(long)]
    pub test_ring: Option<PathBuf>,
    /// Order of the jet round-trip run by `oracle`.
    #[arg(long, default_value_t = 1)]
    pub hs_order: usize,
    /// Include every model solution in the oracle output.
    #[arg(long)]
    pub emit_solutions: bool,
    /// Include wall-clock timings in the output.
    #[arg(long)]
    pub timings: bool,
    /// Write the JSON output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub enum Failure {
    Math(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Math(e)
        }
    }
}

pub struct Outcome {
    pub json: serde_json::Value,
    pub table: String,
    pub pass: bool,
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn field_of(opts: &Opts, file: FieldSpec) -> Result<FieldSpec, Failure> {
    match &opts.field {
        Some(s) => Ok(s.parse()?),
        None => Ok(file),
    }
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), Failure> {
    let (job, opts) = match cli.command {
        Command::Check(i) => (
            commands::Job::check(read(&i.variety)?, read(&i.arc)?),
            i.opts,
        ),
        Command::Model(i) => (
            commands::Job::model(read(&i.variety)?, read(&i.arc)?),
            i.opts,
        ),
        Command::Lift { inputs, solution } => (
            commands::Job::lift(read(&inputs.variety)?, read(&inputs.arc)?, read(&solution)?),
            inputs.opts,
        ),
        Command::Oracle(i) => (
            commands::Job::oracle(read(&i.variety)?, read(&i.arc)?),
            i.opts,
        ),
        Command::Jets {
            variety,
            order,
            opts,
        } => (commands::Job::jets(read(&variety)?, order), opts),
    };
    let test_ring = opts.test_ring.as_ref().map(read).transpose()?;
    let job = job.with_test_ring(test_ring);
    let field = field_of(&opts, job.file_field()?)?;
    let out = opts.out.clone();
    Ok((commands::dispatch(field, &job, &opts)?, out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((outcome, out)) => {
            eprint!("{}", outcome.table);
            let text = serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if outcome.pass { 0 } else { 2 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::BudgetExceeded { .. }) {
                4
            } else {
                2
            })
        }
    }
}
