use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ehrhart3::cli::{
    self, CmdError, CmdOutput, ComputeOptions, Format, GenFamily, VerifyOptions,
};
use ehrhart3::oracle::DEFAULT_CELL_CAP;

const CELL_CAP_ENV: &str = "EHRHART3_CELL_CAP";

/// Exact Ehrhart polynomials of 3-dimensional simple lattice polytopes.
#[derive(Parser)]
#[command(name = "ehrhart3", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the polynomial coefficients of a polytope
    Compute {
        /// Input JSON file (default: stdin)
        #[arg(short = 'i', long = "input")]
        input: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Include per-edge and per-facet tables
        #[arg(long)]
        breakdown: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Drop input points that are not hull vertices instead of failing
        #[arg(long)]
        allow_interior: bool,
    },
    /// Check the formula against brute-force lattice-point counts
    Verify {
        /// Input JSON file (default: stdin)
        #[arg(short = 'i', long = "input")]
        input: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Largest dilate to count (must be >= 3)
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..))]
        lmax: u32,
        /// Bounding-box cell cap for the counting scan
        #[arg(long)]
        cell_cap: Option<u64>,
        /// Test hook: add a rational like 1/7 to c1 before comparing
        #[arg(long, hide = true)]
        inject_c1_delta: Option<String>,
    },
    /// Emit the vertex list of a built-in example family
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Tetrahedron with legs a, b, c on the axes (gcd(a, b, c) = 1)
    Tetra {
        a: i64,
        b: i64,
        c: i64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Triangular prism of leg a, top face shifted by (b, 0, c)
    Prism {
        a: i64,
        b: i64,
        c: i64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Cube with corners {0, n}^3
    Cube {
        n: i64,
        #[command(flatten)]
        common: GenCommon,
    },
}

#[derive(clap::Args)]
struct GenCommon {
    /// Apply a seed-deterministic unimodular shear and translation (0 = none)
    #[arg(long, default_value_t = 0)]
    fuzz_seed: u64,
    /// Output file (default: stdout)
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CmdError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CmdError {
            message: format!("cannot read {}: {e}", p.display()),
            exit_code: cli::EXIT_INVALID_INPUT,
        }),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CmdError {
                    message: format!("cannot read stdin: {e}"),
                    exit_code: cli::EXIT_INVALID_INPUT,
                })?;
            Ok(buf)
        }
    }
}

fn resolve_cell_cap(flag: Option<u64>) -> Result<u64, CmdError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CELL_CAP_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| CmdError {
            message: format!("{CELL_CAP_ENV} must be an unsigned integer, got {text:?}"),
            exit_code: cli::EXIT_INVALID_INPUT,
        }),
        Err(_) => Ok(DEFAULT_CELL_CAP),
    }
}

fn run() -> Result<(CmdOutput, Option<PathBuf>), CmdError> {
    let args = Args::parse();
    match args.command {
        Command::Compute {
            input,
            output,
            breakdown,
            format,
            allow_interior,
        } => {
            let text = read_input(&input)?;
            let opts = ComputeOptions {
                breakdown,
                format: match format {
                    FormatArg::Json => Format::Json,
                    FormatArg::Table => Format::Table,
                },
                allow_interior,
            };
            Ok((cli::cmd_compute(&text, &opts)?, output))
        }
        Command::Verify {
            input,
            output,
            lmax,
            cell_cap,
            inject_c1_delta,
        } => {
            let text = read_input(&input)?;
            let opts = VerifyOptions {
                lmax,
                cell_cap: resolve_cell_cap(cell_cap)?,
                inject_c1_delta: inject_c1_delta
                    .as_deref()
                    .map(cli::parse_rational)
                    .transpose()?,
            };
            Ok((cli::cmd_verify(&text, &opts)?, output))
        }
        Command::Gen { family } => {
            let (family, common) = match family {
                Family::Tetra { a, b, c, common } => (GenFamily::Tetra { a, b, c }, common),
                Family::Prism { a, b, c, common } => (GenFamily::Prism { a, b, c }, common),
                Family::Cube { n, common } => (GenFamily::Cube { n }, common),
            };
            Ok((cli::cmd_gen(&family, common.fuzz_seed)?, common.output))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok((out, dest)) => {
            for warning in &out.warnings {
                eprintln!("warning: {warning}");
            }
            match dest {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &out.stdout) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(cli::EXIT_INVALID_INPUT as u8);
                    }
                }
                None => print!("{}", out.stdout),
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code as u8)
        }
    }
}
