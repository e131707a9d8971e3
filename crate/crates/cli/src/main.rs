use std::path::PathBuf;
use std::process::ExitCode;

use bnctl::{CheckMethod, CliError, GenArgs, SetMethod};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bnctl", version, about = "Controllability tools for Boolean networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network file.
    Gen {
        /// majority-odd, majority-even, mtbi, phi, xor-window, xor-circulant, regular-majority, regular-mtbi
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide controllability for a control-node set.
    Check {
        network: PathBuf,
        /// Nodes such as x1,x3 (defaults to the file's control_set).
        #[arg(long)]
        control: Option<String>,
        #[arg(long, default_value = "auto")]
        method: CheckMethod,
    },
    /// Compute a control-node set.
    ControlSet {
        network: PathBuf,
        #[arg(long)]
        method: SetMethod,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Build a control scheme driving one state to another.
    Synthesize {
        network: PathBuf,
        #[arg(long)]
        control: Option<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Write the scheme file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a scheme file and compare the final state.
    Verify {
        network: PathBuf,
        scheme: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Evaluate lower and upper bounds on control-node set sizes.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        family: String,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Gen { family, k, m, n, seed, out } => {
            let file = bnctl::cmd_gen(&GenArgs { family, k, m, n, seed })?;
            let text = file.emit();
            match out {
                Some(p) => bnctl::write_file(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Check { network, control, method } => {
            bnctl::cmd_check(&network, control.as_deref(), method, &mut stdout)
        }
        Command::ControlSet { network, method, max_size } => {
            bnctl::cmd_control_set(&network, method, max_size, &mut stdout)
        }
        Command::Synthesize { network, control, from, to, out } => {
            bnctl::cmd_synthesize(&network, control.as_deref(), &from, &to, out.as_deref(), &mut stdout)
        }
        Command::Verify { network, scheme, from, to } => bnctl::cmd_verify(&network, &scheme, &from, &to, &mut stdout),
        Command::Bounds { n, k, s, family } => bnctl::cmd_bounds(n, k, s, &family, &mut stdout),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
