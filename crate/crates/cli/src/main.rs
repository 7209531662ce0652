use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use helix_h3_cli::{cmd_analyze, cmd_mesh, cmd_verify, CliError, Overrides, Run};

#[derive(Parser)]
#[command(name = "h3helix", version, about = "Helix surfaces in the Lorentzian Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-sample invariants (CSV) and a grid summary (JSON).
    Analyze(Common),
    /// Run residual suites; exit 0 iff every check passes.
    Verify(Common),
    /// Export the sampled surface as an OBJ mesh.
    Mesh(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override, NAME=VALUE; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suite to run (verify only); repeatable.
    #[arg(long = "suite", value_name = "NAME")]
    suite: Vec<String>,
}

impl Common {
    fn run(&self) -> Result<Run, CliError> {
        let o = Overrides { seed: self.seed, tol: self.tol.clone(), out: self.out.clone(), suite: self.suite.clone() };
        Run::load(&self.config, &o)
    }
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(c) => {
            for p in cmd_analyze(&c.run()?)? {
                println!("wrote {}", p.display());
            }
            Ok(0)
        }
        Command::Verify(c) => {
            let (suite, path) = cmd_verify(&c.run()?)?;
            for check in suite.checks.iter().filter(|c| !c.verdict.passed()) {
                eprintln!("FAIL {}: {:e} > {:e}", check.id, check.max_residual, check.tol);
            }
            println!("{}: {:?} ({} checks), wrote {}", suite.suite, suite.verdict, suite.checks.len(), path.display());
            Ok(if suite.passed() { 0 } else { 1 })
        }
        Command::Mesh(c) => {
            println!("wrote {}", cmd_mesh(&c.run()?)?.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
