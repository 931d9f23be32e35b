//! `tmahler`: certified t-metric Mahler measures of rationals p^a/q^b.
//!
//! Every subcommand prints one JSON document to stdout (the curve command can
//! emit CSV instead) and exits 0 on a fully certified result, 1 on an error,
//! and 2 when something could not be certified at the precision cap. Results
//! are byte-identical across repeated runs with the same flags. The
//! `TMAHLER_PRECISION_CAP` environment variable overrides the default
//! escalation ceiling (in bits) for certified comparisons.

mod commands;
mod output;
mod parse;

use std::io::{self, ErrorKind, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tmahler::MtMethod;

use commands::{CurveFormat, Run};

const PRECISION_CAP_ENV: &str = "TMAHLER_PRECISION_CAP";

/// Prints the payload, folding a consumer that stopped reading (head, a
/// closed pager) into the exit code already decided by the computation.
fn emit(text: &str, newline: bool, code: ExitCode) -> ExitCode {
    let stdout = io::stdout();
    let mut handle = stdout.lock();
    let written = handle
        .write_all(text.as_bytes())
        .and_then(|()| if newline { handle.write_all(b"\n") } else { Ok(()) })
        .and_then(|()| handle.flush());
    match written {
        Ok(()) => code,
        Err(e) if e.kind() == ErrorKind::BrokenPipe => code,
        Err(e) => {
            eprintln!("cannot write to stdout: {e}");
            ExitCode::from(1)
        }
    }
}

#[derive(Parser)]
#[command(
    name = "tmahler",
    version,
    about = "Certified t-metric Mahler measures of rationals p^a/q^b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified continued-fraction prefix of xi = log q / log p
    Cf {
        /// First prime; its logarithm is the denominator of xi
        #[arg(long)]
        p: u64,
        /// Second prime
        #[arg(long)]
        q: u64,
        /// How many partial quotients to certify
        #[arg(long)]
        terms: usize,
    },
    /// Best approximations to xi with the full classification of each pair
    Approx {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Bound on the first exponent
        #[arg(long)]
        max_a: u64,
        /// Bound on the second exponent
        #[arg(long)]
        max_b: u64,
    },
    /// Characteristic transformation of alpha: columns and their measures
    Chartrans {
        /// Rational of the form P^a/Q^b, or a plain rational to be factored
        #[arg(long)]
        alpha: String,
    },
    /// All factorization vectors of alpha with their measure multisets
    Vectors {
        #[arg(long)]
        alpha: String,
    },
    /// m_t(alpha): certified value and minimizing classes
    Mt {
        #[arg(long)]
        alpha: String,
        /// Metric exponent, a positive decimal literal
        #[arg(long)]
        t: String,
        /// cf: through the factorization-vector route (alpha must be a best
        /// approximation pair); oracle: exhaustive enumeration
        #[arg(long, value_enum, default_value_t = MethodArg::Cf)]
        method: MethodArg,
    },
    /// Sampled measure-function curves and their lower envelope
    Curve {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 1.0)]
        t_min: f64,
        #[arg(long, default_value_t = 16.0)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Piecewise structure of t -> m_t(alpha) with certified breakpoints
    Exceptional {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 4.0)]
        t_max: f64,
        /// Number of grid samples before refinement
        #[arg(long, default_value_t = tmahler::infimum::PROFILE_GRID_DEFAULT)]
        grid: usize,
    },
    /// Factorization vectors in convex position
    Vertices {
        #[arg(long)]
        alpha: String,
    },
    /// Empirical minimal infimum set over (1, t_max]
    Minimal {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 4.0)]
        t_max: f64,
    },
    /// Smallest golden pair for an even index n, optionally with the full
    /// pipeline run on its alpha
    Golden {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        p_start: u64,
        /// Also enumerate vectors, bound-check their count, and compare the
        /// empirical minimal set against the conjectured family
        #[arg(long)]
        run: bool,
        #[arg(long, default_value_t = 4.0)]
        t_max: f64,
    },
    /// Structural audit of every minimizing factorization at one t > 1
    Audit {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        t: String,
    },
    /// m_t(alpha) by exhaustive factorization enumeration
    Oracle {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        t: String,
        /// Refuse inputs with a + b beyond this bound
        #[arg(long, default_value_t = tmahler::oracle::DEFAULT_BOUND)]
        oracle_bound: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Cf,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var(PRECISION_CAP_ENV) {
        match raw.trim().parse::<u32>() {
            Ok(bits) => tmahler::set_precision_cap(bits),
            Err(_) => {
                eprintln!("{PRECISION_CAP_ENV} must be a number of bits, got {raw:?}");
                return ExitCode::from(1);
            }
        }
    }
    // Exit 2 is reserved for uncertainty, so usage errors must not use
    // clap's default code for them.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let run = match cli.command {
        Command::Cf { p, q, terms } => commands::cf(p, q, terms),
        Command::Approx { p, q, max_a, max_b } => commands::approx(p, q, max_a, max_b),
        Command::Chartrans { alpha } => commands::chartrans(&alpha),
        Command::Vectors { alpha } => commands::vectors(&alpha),
        Command::Mt { alpha, t, method } => {
            let method = match method {
                MethodArg::Cf => MtMethod::CfInfimumSet,
                MethodArg::Oracle => MtMethod::Oracle,
            };
            commands::mt(&alpha, &t, method)
        }
        Command::Curve { alpha, t_min, t_max, samples, format } => {
            let format = match format {
                FormatArg::Csv => CurveFormat::Csv,
                FormatArg::Json => CurveFormat::Json,
            };
            commands::curve(&alpha, t_min, t_max, samples, format)
        }
        Command::Exceptional { alpha, t_max, grid } => {
            commands::exceptional(&alpha, t_max, grid)
        }
        Command::Vertices { alpha } => commands::vertices(&alpha),
        Command::Minimal { alpha, t_max } => commands::minimal(&alpha, t_max),
        Command::Golden { n, p_start, run, t_max } => {
            commands::golden(n, p_start, run, t_max)
        }
        Command::Audit { alpha, t } => commands::audit(&alpha, &t),
        Command::Oracle { alpha, t, oracle_bound } => {
            commands::oracle(&alpha, &t, oracle_bound)
        }
    };
    match run {
        Run::Doc { command, inputs, outcome } => match outcome {
            Ok((result, cert)) => {
                let code = if cert.uncertain() { ExitCode::from(2) } else { ExitCode::SUCCESS };
                emit(&output::document(command, &inputs, result, &cert), true, code)
            }
            Err(err) => {
                let code = if output::is_uncertainty(&err) {
                    ExitCode::from(2)
                } else {
                    ExitCode::from(1)
                };
                emit(&output::error_document(command, &inputs, &err), true, code)
            }
        },
        Run::Raw { text, flags } => {
            let code = if flags.is_empty() {
                ExitCode::SUCCESS
            } else {
                for flag in &flags {
                    eprintln!("uncertain: {flag}");
                }
                ExitCode::from(2)
            };
            emit(&text, false, code)
        }
    }
}
