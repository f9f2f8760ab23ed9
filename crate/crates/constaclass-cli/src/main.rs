//! Command-line frontend: field construction from flags, factorization and
//! classification commands, reference-table regeneration, text and JSON
//! output.
//!
//! Exit codes: 0 success, 1 usage error, 2 math-domain error, 3 cap exceeded.

mod report;
mod selftest;
mod tables;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use constaclass::codes::{DEFAULT_CODE_CAP, DEFAULT_WEIGHT_CAP};
use constaclass::{
    classes, enumerate_codes, factor_consta, factorize_seeded, isometry, ConstaLength, Error,
    FiniteField, Poly,
};

#[derive(Parser)]
#[command(
    name = "constaclass",
    version,
    about = "Constacyclic code classification over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FieldArg {
    /// Field descriptor, e.g. "GF(2^4)" or "GF(5^2);modulus=2,4,1;xi=w"
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct LengthArg {
    /// Code length n
    #[arg(long)]
    n: Option<u64>,
    /// Prime different from the characteristic (with --t/--s: n = ell^t * p^s)
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
}

impl LengthArg {
    /// Either a plain n or the (ell, t, s) decomposition; exactly one form.
    fn resolve(&self, p: u64) -> Result<(u64, Option<ConstaLength>), String> {
        match (self.n, self.ell) {
            (Some(_), Some(_)) => Err("give either --n or --ell/--t/--s, not both".into()),
            (Some(n), None) => {
                if self.t.is_some() || self.s.is_some() {
                    return Err("--t/--s only make sense together with --ell".into());
                }
                if n == 0 {
                    return Err("length must be positive".into());
                }
                Ok((n, ConstaLength::detect(p, n)))
            }
            (None, Some(ell)) => {
                let len = ConstaLength {
                    ell,
                    t: self.t.unwrap_or(0),
                    s: self.s.unwrap_or(0),
                };
                match len.checked_value(p) {
                    Some(n) => Ok((n, Some(len))),
                    None => Err("ell^t * p^s overflows".into()),
                }
            }
            (None, None) => Err("a length is required: --n or --ell/--t/--s".into()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Factor X^n - lambda into irreducibles (closed form when n = ell^t * p^s)
    Factor {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        length: LengthArg,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the n-isometry classes of the nonzero field constants
    Classes {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: u64,
        /// Print all members even for classes above 100 elements
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Produce (a, k) with a^n * lambda = mu^k witnessing an isometry
    Witness {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate every lambda-constacyclic code of the given length
    Enumerate {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        length: LengthArg,
        #[arg(long)]
        lambda: String,
        /// Also print exhaustive weight enumerators (within the size cap)
        #[arg(long)]
        weights: bool,
        #[arg(long, default_value_t = DEFAULT_CODE_CAP)]
        max_codes: u128,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP)]
        max_weight_size: u128,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Regenerate the reference classification tables
    Tables {
        /// Which table (1-6); all of them when omitted
        #[arg(long)]
        which: Option<u32>,
        /// Stream every code row of the length-175 family instead of the
        /// parameterized presentation
        #[arg(long)]
        expand: bool,
    },
    /// Cross-check the closed-form factorization against the oracle
    Selftest {
        #[arg(long, default_value_t = 81)]
        max_q: u64,
        #[arg(long, default_value_t = 64)]
        max_n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's rendering but pin the usage exit code
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

enum CliError {
    Usage(String),
    Domain(Error),
    Cap(Error),
    Fail(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Parse { .. } => CliError::Usage(e.to_string()),
            Error::FieldTooLarge(_) | Error::TooManyCodes(_, _) | Error::CodeTooLarge(_, _) => {
                CliError::Cap(e)
            }
            _ => CliError::Domain(e),
        }
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> CliError {
        CliError::Usage(msg)
    }
}

fn effective_seed(flag: u64) -> u64 {
    match std::env::var("CONSTACLASS_SEED") {
        Ok(v) => v.parse().unwrap_or(flag),
        Err(_) => flag,
    }
}

fn parse_field(desc: &str) -> Result<Arc<FiniteField>, CliError> {
    Ok(FiniteField::parse_descriptor(desc)?)
}

fn nonzero_lambda(
    field: &Arc<FiniteField>,
    text: &str,
) -> Result<constaclass::FieldElement, CliError> {
    let lam = field.parse_element(text)?;
    if lam.is_zero() {
        return Err(CliError::Domain(Error::LogOfZero));
    }
    Ok(lam)
}

/// Factor X^n - lambda: closed form when the length fits ell^t * p^s, the
/// seeded oracle otherwise.
fn factorization_for(
    field: &Arc<FiniteField>,
    n: u64,
    length: Option<ConstaLength>,
    lambda: constaclass::FieldElement,
    seed: u64,
) -> Result<constaclass::Factorization, CliError> {
    match length {
        Some(len) => Ok(factor_consta(field, len, lambda)?),
        None => {
            let poly = Poly::x_pow_minus(field.clone(), n as usize, lambda);
            Ok(factorize_seeded(&poly, seed)?)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Factor {
            field,
            length,
            lambda,
            format,
            seed,
        } => {
            let field = parse_field(&field.field)?;
            let (n, len) = length.resolve(field.characteristic())?;
            let lam = nonzero_lambda(&field, &lambda)?;
            let fact = factorization_for(&field, n, len, lam, effective_seed(seed))?;
            match format {
                Format::Text => print!("{}", report::factor_text(&field, n, lam, &fact)),
                Format::Json => println!("{:#}", report::factor_json(&field, n, lam, &fact)),
            }
            Ok(())
        }
        Command::Classes {
            field,
            n,
            full,
            format,
        } => {
            let field = parse_field(&field.field)?;
            if n == 0 {
                return Err(CliError::Usage("length must be positive".into()));
            }
            let cls = classes(&field, n)?;
            match format {
                Format::Text => print!("{}", report::classes_text(&field, n, &cls, full)),
                Format::Json => println!("{:#}", report::classes_json(&field, n, &cls)),
            }
            Ok(())
        }
        Command::Witness {
            field,
            n,
            lambda,
            mu,
            format,
        } => {
            let field = parse_field(&field.field)?;
            if n == 0 {
                return Err(CliError::Usage("length must be positive".into()));
            }
            let lam = nonzero_lambda(&field, &lambda)?;
            let mu = nonzero_lambda(&field, &mu)?;
            let w = isometry::witness(&field, n, lam, mu)?;
            match format {
                Format::Text => print!("{}", report::witness_text(&field, &w)),
                Format::Json => println!("{:#}", report::witness_json(&field, &w)),
            }
            Ok(())
        }
        Command::Enumerate {
            field,
            length,
            lambda,
            weights,
            max_codes,
            max_weight_size,
            format,
            seed,
        } => {
            let field = parse_field(&field.field)?;
            let (n, len) = length.resolve(field.characteristic())?;
            let lam = nonzero_lambda(&field, &lambda)?;
            let fact = factorization_for(&field, n, len, lam, effective_seed(seed))?;
            let codes = enumerate_codes(&field, &fact, n, lam, max_codes)?;
            match format {
                Format::Text => {
                    print!(
                        "{}",
                        report::codes_text(
                            &field,
                            n,
                            lam,
                            &fact,
                            &codes,
                            weights,
                            max_weight_size
                        )?
                    )
                }
                Format::Json => println!(
                    "{:#}",
                    report::codes_json(&field, n, lam, &fact, &codes, weights, max_weight_size)?
                ),
            }
            Ok(())
        }
        Command::Tables { which, expand } => {
            let text = tables::render(which, expand)?;
            print!("{text}");
            Ok(())
        }
        Command::Selftest { max_q, max_n, seed } => {
            selftest::run(max_q, max_n, effective_seed(seed))
        }
    }
}
