//! Command-line front end. Exit codes: 0 success, 1 a failed check or
//! unreached tolerance, 2 usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bernoulli::{bernoulli, bernoulli_second};
use crate::borel::{borel_sum_with, registry_kernel, SumStatus};
use crate::error::{Error, Result};
use crate::exact::{format_rational, rat};
use crate::laurent::{laurent_mul, linear_combine, parse_vector};
use crate::real::{BigReal, Real};
use crate::verify::{emit_report, run_suite, Config, Format};
use crate::zeta::{zeta_even_exact, zeta_nonpos_exact, zeta_pos};

#[derive(Parser, Debug)]
#[command(name = "zeta-borel", version, about = "Bernoulli numbers, Laurent vectors and Borel sums of zeta series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Bernoulli number B_K.
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BernoulliKind::First)]
        kind: BernoulliKind,
    },
    /// ζ(N) at positive or nonpositive integers.
    Zeta {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = ZetaMethod::Series)]
        method: ZetaMethod,
        /// Decimal digits for the series method.
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Borel sum of a registered series at z.
    BorelSum {
        #[arg(long)]
        kernel: String,
        #[arg(long, allow_negative_numbers = true)]
        z: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Product or sum of two coefficient vectors such as "(1/2 | 1, 0)".
    Laurent {
        #[arg(long, value_enum)]
        op: LaurentOp,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Runs the verification catalogue.
    Verify {
        #[arg(long, default_value = "*")]
        suite: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Pretty)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        precision_digits: Option<usize>,
        #[arg(long)]
        quad_tol: Option<f64>,
        #[arg(long)]
        series_terms: Option<usize>,
        #[arg(long)]
        bernoulli_cache_path: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BernoulliKind {
    First,
    Second,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ZetaMethod {
    Series,
    Euler,
    ExactNonpos,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LaurentOp {
    Mul,
    Add,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReportFormat {
    Pretty,
    Json,
    Csv,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::Parse(_) | Error::UnknownKernel(_) | Error::Domain(_) | Error::Json(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Bernoulli { n, kind } => {
            let b = match kind {
                BernoulliKind::First => bernoulli(n),
                BernoulliKind::Second => bernoulli_second(n),
            };
            println!("{}", format_rational(&b));
            Ok(0)
        }
        Command::Zeta { n, method, digits } => zeta(n, method, digits),
        Command::BorelSum { kernel, z, tol, digits } => {
            let z: f64 = z.parse().map_err(|_| Error::Usage(format!("--z expects a number, got {z:?}")))?;
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Usage("--tol must be positive".into()));
            }
            let k = registry_kernel(&kernel)?;
            let (status, text) = if digits <= 15 {
                let r = borel_sum_with(&k, &z, &tol)?;
                (summary(&r.status), r.value().map(|v| rounded(*v, tol)))
            } else {
                BigReal::with_digits(digits, || -> Result<_> {
                    let r = borel_sum_with(&k, &BigReal::from_f64(z), &BigReal::from_f64(tol))?;
                    Ok((summary(&r.status), r.value().map(|v| v.to_sci())))
                })?
            };
            match text {
                Some(v) => {
                    println!("{v}");
                    eprintln!("{status}");
                    Ok(0)
                }
                None => {
                    println!("{status}");
                    Ok(if status == "not summable" { 0 } else { 1 })
                }
            }
        }
        Command::Laurent { op, lhs, rhs } => {
            let f = parse_vector(&lhs)?;
            let g = parse_vector(&rhs)?;
            let out = match op {
                LaurentOp::Add => linear_combine(&rat(1), &f, &rat(1), &g),
                LaurentOp::Mul => laurent_mul(&f, &g)?,
            };
            println!("{out}");
            Ok(0)
        }
        Command::Verify {
            suite,
            format,
            out,
            config,
            precision_digits,
            quad_tol,
            series_terms,
            bernoulli_cache_path,
        } => {
            let mut cfg = match config {
                Some(p) => Config::load(&p).map_err(|e| Error::Usage(format!("config {}: {e}", p.display())))?,
                None => Config::default(),
            };
            if let Some(d) = precision_digits {
                cfg.precision_digits = d;
            }
            if let Some(t) = quad_tol {
                cfg.quad_tol = t;
            }
            if let Some(s) = series_terms {
                cfg.series_terms = s;
            }
            if let Some(p) = bernoulli_cache_path {
                cfg.bernoulli_cache_path = Some(p);
            }
            let report = run_suite(&suite, &cfg)?;
            let format = match format {
                ReportFormat::Pretty => Format::Pretty,
                ReportFormat::Json => Format::Json,
                ReportFormat::Csv => Format::Csv,
            };
            emit_report(&report, format, out.as_deref())?;
            Ok(if report.failed() { 1 } else { 0 })
        }
    }
}

fn zeta(n: i64, method: ZetaMethod, digits: usize) -> Result<i32> {
    match method {
        ZetaMethod::Series => {
            if n < 2 {
                return Err(Error::Usage("the series method needs n >= 2".into()));
            }
            let text = if digits <= 15 {
                format!("{}", zeta_pos::<f64>(n as u32)?)
            } else {
                BigReal::with_digits(digits, || zeta_pos::<BigReal>(n as u32).map(|v| v.to_sci()))?
            };
            println!("{text}");
        }
        ZetaMethod::Euler => {
            if n < 2 || n % 2 == 1 {
                return Err(Error::Usage("Euler's formula needs an even n >= 2".into()));
            }
            let (q, p) = zeta_even_exact(n as u32)?;
            let value = crate::exact::rational_to_f64(&q) * std::f64::consts::PI.powi(p as i32);
            println!("{} * pi^{p}", format_rational(&q));
            println!("{value}");
        }
        ZetaMethod::ExactNonpos => {
            if n > 0 {
                return Err(Error::Usage("exact-nonpos needs n <= 0".into()));
            }
            println!("{}", format_rational(&zeta_nonpos_exact((-n) as u32)));
        }
    }
    Ok(0)
}

fn summary<R: Real>(s: &SumStatus<R>) -> String {
    match s {
        SumStatus::Summable { err, .. } => format!("summable, error bound {}", err.to_sci()),
        SumStatus::NotSummable => "not summable".into(),
        SumStatus::Inconclusive => "inconclusive".into(),
    }
}

/// Decimal form carrying as many places as the tolerance supports.
fn rounded(v: f64, tol: f64) -> String {
    let places = (-tol.log10()).ceil().clamp(0.0, 17.0) as usize;
    let s = format!("{v:.places$}");
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".into()
        } else {
            t.into()
        }
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::rounded;

    #[test]
    fn rounding_follows_tolerance() {
        assert_eq!(rounded(0.49999999999999994, 1e-12), "0.5");
        assert_eq!(rounded(-0.25000000000001, 1e-12), "-0.25");
        assert_eq!(rounded(0.6449340668482264, 1e-10), "0.6449340668");
        assert_eq!(rounded(2.0, 1e-3), "2");
    }
}
