//! `ezl`: command-line front end for the ezeta library.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 domain or region error,
//! 3 precision failure, 64 malformed input.

mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ezeta::limits::{zeta2_corollary, zeta2_near, zeta3_near, ApproachSpec};
use ezeta::verify::{self, Suite};
use ezeta::{laurent, mb, series, zeta, Cdd, Error, EvalConfig};
use render::{Format, Output};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "ezl", version, about = "Euler–Zagier multiple zeta-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in significant digits (15..=31).
    #[arg(long, global = true, env = "EZL_DIGITS", default_value_t = 30)]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ζ_r at a complex point.
    Eval {
        /// Comma-separated coordinates, e.g. `2,1.5+0.3i`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Laurent expansion at an integer point.
    Expand {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Stieltjes constants: one `γ_(n)`, a table, or a diagonal sum.
    Stieltjes {
        /// Multi-index `n_1,…,n_r`; depth one gives the classical normalization `γ_n`.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["depth", "sum"])]
        index: Vec<u8>,
        /// With `--order`: every `γ_(n)` of depth `r` and total order ≤ `order`.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, requires = "depth")]
        order: Option<usize>,
        /// With `--depth`: `Σ_{|n|=N} γ_(n)`.
        #[arg(long, requires = "depth", conflicts_with = "order")]
        sum: Option<usize>,
    },
    /// Restricted one-variable expansion at a positive integer point.
    Restricted {
        #[arg(long, value_delimiter = ',', required = true)]
        point: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Near-point value of ζ_2 or ζ_3 at `m + ε`.
    Limits {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<i64>,
        /// Offsets `ε`, one per coordinate (complex allowed).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        eps: Vec<String>,
        /// Use the three-group corollary form (depth 2 only).
        #[arg(long)]
        corollary: bool,
    },
    /// Run a verification suite, or all of them.
    Verify {
        #[arg(value_parser = ["stuffle", "lemma1", "remarks", "corollary", "mb-closure", "limits", "all"])]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Series,
    Mb,
    Auto,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::PrecisionUnreachable { .. } | Error::ConsistencyFailure { .. } => 3,
            Error::InvalidArgument(_) | Error::OrderCapExceeded { .. } => 64,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 64, message: message.into() }
}

fn parse_point(items: &[String]) -> Result<Vec<Cdd>, Failure> {
    items
        .iter()
        .map(|t| ezeta::dd::parse_complex(t).ok_or_else(|| usage(format!("cannot parse '{t}' as a complex number"))))
        .collect()
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let cfg = EvalConfig::with_digits(cli.common.digits)?;
    let digits = cli.common.digits;
    match cli.command {
        Command::Eval { point, method } => {
            let s = parse_point(&point)?;
            let (value, used) = match method {
                Method::Series => (series::ez_value(&s, &cfg)?, "series"),
                Method::Mb => (mb::ez_eval_mb(&s, &cfg)?, "mb"),
                Method::Auto if series::in_domain(&s) => (series::ez_value(&s, &cfg)?, "series"),
                Method::Auto => (mb::ez_eval_mb(&s, &cfg)?, "mb"),
            };
            Ok(Output::Value { point: s, method: used, value, digits })
        }
        Command::Expand { point, order } => Ok(Output::Expansion(laurent::expand(&point, order, &cfg)?)),
        Command::Stieltjes { index, depth, order, sum } => match (depth, order, sum) {
            (Some(r), Some(order), None) => {
                let table = laurent::multiple_stieltjes_table(r, order, &cfg.precision)?;
                Ok(Output::Table { depth: r, order, table, digits })
            }
            (Some(r), None, Some(n)) => {
                let value = laurent::stieltjes_sum(n, r, &cfg)?;
                Ok(Output::Scalar { label: format!("sum over |n| = {n}, depth {r}"), value, digits })
            }
            (None, None, None) if index.len() == 1 => {
                let value = Cdd::real(zeta::stieltjes(index[0] as usize, &cfg.precision)?);
                Ok(Output::Scalar { label: format!("γ_{}", index[0]), value, digits })
            }
            (None, None, None) if !index.is_empty() => {
                let value = laurent::multiple_stieltjes(&index, &cfg.precision)?;
                let label = index.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
                Ok(Output::Scalar { label: format!("γ_({label})"), value, digits })
            }
            _ => Err(usage("give --index, or --depth with one of --order / --sum")),
        },
        Command::Restricted { point, order } => Ok(Output::Restricted(laurent::restricted_expand(&point, order, &cfg)?, digits)),
        Command::Limits { point, eps, corollary } => {
            let eps = ApproachSpec::new(parse_point(&eps)?);
            if eps.eps.len() != point.len() {
                return Err(usage("--eps needs one offset per coordinate"));
            }
            match (point.len(), corollary) {
                (2, true) => Ok(Output::Near(ezeta::limits::NearPoint::Value(zeta2_corollary(&point, &eps, &cfg)?), digits)),
                (2, false) => Ok(Output::Near(ezeta::limits::NearPoint::Value(zeta2_near(&point, &eps, &cfg)?), digits)),
                (3, false) => Ok(Output::Near(zeta3_near(&point, &eps, &cfg)?, digits)),
                (3, true) => Err(usage("--corollary applies to depth 2 only")),
                _ => Err(usage("limits are available in depth 2 and 3")),
            }
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            Ok(Output::Reports(suites.into_iter().map(|s| verify::run(s, &cfg)).collect()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let format = cli.common.format;
    match run(cli) {
        Ok(out) => match out.render(format) {
            Ok(text) => {
                print!("{text}");
                ExitCode::from(if out.all_passed() { 0 } else { 1 })
            }
            Err(message) => {
                eprintln!("ezl: {message}");
                ExitCode::from(64)
            }
        },
        Err(f) => {
            eprintln!("ezl: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
