use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "slicereg", version, about = "Slice regular functions over JSON stdin/stdout")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Grid step used to analyse extension domains.
    #[arg(long, global = true, default_value_t = slicereg::domain::DEFAULT_GRID_STEP)]
    grid_step: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression: stdin {"expr": ..., "points": [...]}.
    Eval,
    /// Zeros of a polynomial: stdin {"center": ..., "coeffs": [...]}.
    Roots {
        #[arg(long, default_value_t = slicereg::zeros::DEFAULT_ZERO_TOL)]
        tol: f64,
    },
    /// Run the identity checks and print one JSON report per line.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, env = "SLICEREG_SEED", default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Also run the non-regular control functions (expected to fail).
        #[arg(long)]
        control: bool,
    },
    /// Extend slice data and evaluate: stdin {"stem"|"r","s": ..., "points": [...]}.
    Extend,
    /// Cauchy kernel value: stdin {"s": ..., "q": ...}, or two positional quaternions.
    Kernel {
        s: Option<String>,
        q: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Grf,
    Identities,
    Extension,
    All,
}

fn read_stdin() -> Result<String, CliError> {
    let mut buf = String::new();
    io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if !(cli.grid_step > 0.0 && cli.grid_step.is_finite()) {
        return Err(CliError::Usage(format!("--grid-step must be positive, got {}", cli.grid_step)));
    }
    let fmt = commands::Format { pretty: cli.pretty };
    match &cli.command {
        Command::Eval => commands::eval(&read_stdin()?, cli.grid_step, fmt),
        Command::Roots { tol } => commands::roots(&read_stdin()?, *tol, fmt),
        Command::Check { suite, seed, samples, control } => commands::check(*suite, *seed, *samples, *control),
        Command::Extend => commands::extend(&read_stdin()?, cli.grid_step, fmt),
        Command::Kernel { s, q } => match (s, q) {
            (Some(s), Some(q)) => commands::kernel_args(s, q, fmt),
            (None, None) => commands::kernel(&read_stdin()?, fmt),
            _ => Err(CliError::Usage("kernel takes both S and Q, or neither".into())),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (output, code) = match run(&cli) {
        Ok(out) => (out, 0),
        Err(CliError::CheckFailed(out)) => (out, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing stdout: {e}");
            return ExitCode::FAILURE;
        }
    }
    if code == 1 {
        eprintln!("error: one or more checks failed");
    }
    ExitCode::from(code)
}
