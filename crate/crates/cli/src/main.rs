//! `arrfree`: characteristic polynomials, restrictions, freeness verdicts
//! and root-system families from the command line.
//!
//! Machine output is JSON with sorted keys on stdout; a one-line summary
//! goes to stderr. Exit status: 0 success or pass, 1 usage or input error,
//! 2 not free or fail, 3 undetermined.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "arrfree",
    version,
    about = "Freeness of hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Characteristic polynomial, low-to-high coefficients.
    Charpoly {
        file: PathBuf,
        /// Also count complement points over F_p.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Intersection lattice with Möbius values.
    Lattice { file: PathBuf },
    /// Ziegler restriction onto one hyperplane.
    Restrict {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        hyperplane: usize,
    },
    /// Exponents of a rank-2 multiarrangement with a certificate.
    Exp2 { file: PathBuf },
    /// Freeness verdict.
    Free {
        file: PathBuf,
        #[arg(long)]
        hyperplane: Option<usize>,
        /// Expected exponents of the restriction, e.g. 4,4,4.
        #[arg(long, value_delimiter = ',')]
        hint: Option<Vec<u64>>,
    },
    /// Codimension of the restriction image for a 3-arrangement.
    Codim {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        hyperplane: usize,
    },
    /// Solomon–Terao limit against the characteristic polynomial.
    StCheck { file: PathBuf },
    /// Graded check of the restriction Hilbert series identity.
    HilbCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        hyperplane: usize,
        /// Largest x-degree compared; defaults to #A + 5.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Positive roots, sorted by height.
    Roots {
        #[arg(long = "type")]
        root_type: String,
    },
    /// Emit a deformation family.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a family cone against its predicted exponents.
    VerifyEr {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Arr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Weyl,
    Shi,
    Catalan,
    Interval,
    Interp,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Root system such as A2, B3, G2.
    #[arg(long = "type")]
    root_type: String,
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long, default_value_t = 1)]
    m: u64,
    /// Interval endpoints for `--family interval`.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Positive-root indices of the order ideal for `--family interp`.
    #[arg(long, value_delimiter = ',')]
    ideal: Option<Vec<usize>>,
}

fn configure_threads() {
    if let Some(n) = std::env::var("ARRFREE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match commands::run(cli.command) {
        Ok(out) => {
            if let Some(text) = out.stdout {
                print!("{text}");
            }
            eprintln!("{}", out.summary);
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
