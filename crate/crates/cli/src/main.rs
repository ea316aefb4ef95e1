//! `rcirc`: classification, exhaustive checks and table reproduction for
//! Ramanujan circulant graphs.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ramanujan_circulant::{Error, NumericPolicy};

use output::Out;

#[derive(Parser, Debug)]
#[command(name = "rcirc", version, about = "Edge removal preserving the Ramanujan property in circulant graphs")]
struct Cli {
    /// Significant digits for extended-precision checks (30 to 71); also
    /// sets the digits printed for reals.
    #[arg(long, global = true, value_name = "DIGITS")]
    precision: Option<u32>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an odd order as ordinary or exceptional.
    Classify { m: u128 },
    /// Maximal covalency preserving the Ramanujan property.
    Hatl {
        m: u128,
        /// Decide by exhaustive enumeration instead of the classification.
        #[arg(long)]
        oracle: bool,
        /// Largest number of subsets the oracle may visit per class.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
    },
    /// Classify every odd order in `[lo, hi]`.
    Scan {
        lo: u128,
        hi: u128,
        /// Write rows as CSV to this path (`-` for standard output).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Eigenvalues of the circulant with the given complement.
    Spectrum {
        m: u128,
        /// Removed residues, comma separated; 0 is always included.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        complement: String,
    },
    /// Small-order table, by exhaustive search.
    Table1,
    /// Exceptional markers of `k² + 5k + c`.
    Table3 {
        #[arg(long, default_value_t = 50)]
        kmax: u128,
    },
    /// Margins of the `a = 1, c = −5` prime family.
    Table4,
    /// Margins of the `c = −7` comparison family (outside J).
    Table5,
    /// Margins of the `a = 64, c = 5` family, in extended precision.
    Table6,
    /// Asymptotic thresholds γ, x̄1, γ5 and x̲2.
    Gamma,
    /// Points of the two-prime family.
    Family {
        #[arg(long)]
        a: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: i32,
        #[arg(long)]
        ymax: i64,
        /// Keep only points where both p and q are prime.
        #[arg(long)]
        prime_only: bool,
    },
    /// Counting functions.
    Count(CountArgs),
    /// Hardy–Littlewood constant for `k² + 5k + c`.
    Hlconst {
        #[arg(long, allow_hyphen_values = true)]
        c: i32,
        #[arg(long, default_value_t = 10_000_000)]
        plimit: u64,
    },
    /// `l̂` for a finite abelian group of odd order.
    Abelian {
        /// Invariant factors, comma separated, each dividing the next.
        #[arg(long, value_name = "LIST")]
        orders: String,
        /// Confirm by exhaustive enumeration (order up to 255).
        #[arg(long)]
        oracle: bool,
    },
    /// Candidate maxima against the bound as `x = √(q/p)` runs over (1, 2).
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        c: i32,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Write CSV to this path instead of standard output.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(subcommand)]
    what: CountCommand,
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    /// Exceptional `f_c(k)` by type.
    Exceptional {
        #[arg(long, allow_hyphen_values = true)]
        c: i32,
        #[arg(long)]
        kmax: u128,
    },
    /// `π₂(a; x)`, semiprimes `pq <= x` with `p < q < a·p`.
    P2 {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        x: u64,
    },
    /// `k <= x` with `f(k)` prime or a product of two distinct primes.
    Poly {
        /// Coefficients, highest degree first.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        x: u64,
        /// `prime` or `semiprime_distinct`.
        #[arg(long, default_value = "prime")]
        mode: String,
    },
}

/// Failure of a command, carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::BudgetExceeded { .. } | Error::Overflow(_) => 2,
            Error::Invariant(_) | Error::Mismatch(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

fn run(cli: Cli) -> CmdResult {
    let mut policy = NumericPolicy::default();
    if let Some(d) = cli.precision {
        policy.extended_digits = d;
    }
    policy.validate()?;
    let out = Out::new(cli.json, cli.precision);
    use commands as c;
    match cli.command {
        Command::Classify { m } => c::classify(&out, m, &policy),
        Command::Hatl { m, oracle, budget } => c::hatl(&out, m, oracle, budget, &policy),
        Command::Scan { lo, hi, csv } => c::scan(&out, lo, hi, csv, &policy),
        Command::Spectrum { m, complement } => c::spectrum(&out, m, &complement),
        Command::Table1 => c::table1(&out, &policy),
        Command::Table3 { kmax } => c::table3(&out, kmax, &policy),
        Command::Table4 => c::margin_table(&out, 4, &policy),
        Command::Table5 => c::margin_table(&out, 5, &policy),
        Command::Table6 => c::margin_table(&out, 6, &policy),
        Command::Gamma => c::gamma(&out),
        Command::Family { a, c: cc, ymax, prime_only } => c::family(&out, a, cc, ymax, prime_only, &policy),
        Command::Count(args) => match args.what {
            CountCommand::Exceptional { c: cc, kmax } => c::count_exceptional(&out, cc, kmax, &policy),
            CountCommand::P2 { a, x } => c::count_p2(&out, a, x),
            CountCommand::Poly { coeffs, x, mode } => c::count_poly(&out, &coeffs, x, &mode),
        },
        Command::Hlconst { c: cc, plimit } => c::hlconst(&out, cc, plimit),
        Command::Abelian { orders, oracle } => c::abelian(&out, &orders, oracle, &policy),
        Command::Profile { c: cc, k, samples, csv } => c::profile(&out, cc, k, samples, csv),
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rcirc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
