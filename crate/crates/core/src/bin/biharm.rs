use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use biharm::cli::{self, verify, verify::Fault};

#[derive(Parser)]
#[command(
    name = "biharm",
    version,
    about = "Biharmonic-algebra elasticity solver for the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the displacement-gradient boundary problem described by a TOML config.
    Solve {
        config: PathBuf,
        /// Output directory; overrides the config and BIHARM_OUTPUT_DIR.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized invariant battery.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Break one check on purpose (algebra, cr, biharmonic, hessian, schwarz, lame, kernel).
        #[arg(long, value_name = "NAME")]
        inject_fault: Option<Fault>,
    },
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                cli::exit::CONFIG as u8
            } else {
                0
            });
        }
    };
    let code = match args.command {
        Command::Solve { config, out } => match cli::cmd_solve(&config, out.as_deref()) {
            Ok(outcome) => {
                let r = &outcome.report;
                println!(
                    "wrote fields and report to {}",
                    outcome.output_dir.display()
                );
                println!(
                    "boundary {:.3e}  equilibrium {:.3e}  hooke {:.3e}  airy {:.3e}  lame {:.3e}  loop {:.3e}  kernel {:.3e}",
                    r.boundary_residual,
                    r.equilibrium_residual,
                    r.hooke_residual,
                    r.airy_residual,
                    r.lame_residual,
                    r.loop_residual,
                    r.kernel_residual
                );
                if !r.passed {
                    eprintln!("threshold breach: {}", r.failures.join(", "));
                }
                outcome.exit_code()
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Command::Verify {
            seed,
            degree,
            inject_fault,
        } => {
            let report = verify::run(seed, degree, inject_fault);
            println!("{report}");
            report.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
