//! Command-line front end. Every subcommand writes exactly one
//! [`OutputRecord`] to stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 on success, 2 for usage errors (unknown flags, out-of-range
//! parameters), 1 for domain errors (exact cap exceeded, evaluation failures).

mod betti;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

pub use betti::{betti_numbers, betti_table};
pub use output::{format_float, Cell, Format, OutputRecord, Row, SCHEMA};

use crate::asymptotics::{
    b0_over_pk, corollary_b, corollary_diff, default_order, pk_asymptotic, refined_main,
    theorem_main, AsymptoticQuery, Comparator, EXACT_NMAX_CAP,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rational::{d_coeffs, rat_to_f64};
use crate::series::CoefficientTable;
use crate::special::LogReal;

#[derive(Debug, Parser)]
#[command(
    name = "theta-asym",
    version,
    about = "Exact and asymptotic coefficients of inverse theta functions"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Lift the exact-computation cap on n.
    #[arg(long = "unsafe-nmax", global = true)]
    unsafe_nmax: bool,

    /// Evaluate everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Formula {
    /// Main term of the expansion of a_{m,k}(n).
    Theorem,
    /// Main term including the subleading j ≥ 1 exponentials.
    Refined,
    /// Leading term of a_{m,k}(n) - a_{m+r,k}(n); needs --r.
    CorollaryDiff,
    /// Leading term of b_{m,k}(n).
    CorollaryB,
    /// Leading term of the colored partition count p_k(n).
    Pk,
    /// Leading term of b_{0,k}(n) / p_k(n).
    Ratio,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact a_{m,k}(n) for n = 0..=nmax.
    Exact {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        nmax: usize,
    },
    /// Exact b_{m,k}(n): one m, or every m in 0..=n.
    Bcoeffs {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
    },
    /// Exact Taylor coefficients d_{m,k}(ℓ), ℓ = 1..=lmax.
    Dcoeffs {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        lmax: usize,
    },
    /// Asymptotic formulas at one or more n.
    Asympt {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        /// Comma-separated list.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        n: Vec<i64>,
        /// Number of retained terms; defaults to ⌈k/2⌉+3.
        #[arg(long = "N")]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Formula::Theorem)]
        formula: Formula,
        /// Shorthand for --formula refined.
        #[arg(long)]
        refined: bool,
    },
    /// Exact a_{m,k}(n) against its asymptotic expansion.
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        /// Comma-separated list.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        n: Vec<i64>,
        #[arg(long = "N")]
        order: Option<usize>,
        #[arg(long)]
        refined: bool,
    },
    /// Betti numbers of the Hilbert scheme of n points on a surface with b1 = 0.
    Betti {
        #[arg(long, allow_negative_numbers = true)]
        b2: i64,
        #[arg(long)]
        n: usize,
    },
    /// Exact colored partition counts p_k(n), n = 0..=nmax.
    Pk {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        nmax: usize,
    },
}

/// Parses `argv` (program name first), runs, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return 0;
            }
            // one line: the message up to clap's usage/help footer
            let message: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            let _ = writeln!(err, "{}", message.join(" "));
            return 2;
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(record) => match record.write(format, out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "{}", diagnostic(&e));
            exit_code(&e)
        }
    }
}

fn diagnostic(e: &Error) -> String {
    match e {
        Error::InvalidParameter { name, reason } => format!("error: --{name}: {reason}"),
        Error::ExactCapExceeded { n, cap } => format!(
            "error: --n/--nmax: {n} exceeds the exact-computation cap {cap} (pass --unsafe-nmax to override)"
        ),
        other => format!("error: {other}"),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. } => 2,
        _ => 1,
    }
}

struct Settings {
    cap: usize,
    exec: Exec,
}

impl Settings {
    fn check_cap(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::ExactCapExceeded {
                n: n as u64,
                cap: self.cap as u64,
            });
        }
        Ok(())
    }
}

fn execute(cli: Cli) -> Result<OutputRecord> {
    let settings = Settings {
        cap: if cli.unsafe_nmax {
            usize::MAX
        } else {
            EXACT_NMAX_CAP
        },
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
    };
    match cli.command {
        Command::Exact { k, m, nmax } => exact(&settings, k, m, nmax),
        Command::Bcoeffs { k, n, m } => bcoeffs(&settings, k, n, m),
        Command::Dcoeffs { k, m, lmax } => dcoeffs(k, m, lmax),
        Command::Asympt {
            k,
            m,
            r,
            n,
            order,
            formula,
            refined,
        } => {
            let formula = if refined { Formula::Refined } else { formula };
            asympt(&settings, k, m, r, &n, order, formula)
        }
        Command::Compare {
            k,
            m,
            n,
            order,
            refined,
        } => compare(&settings, k, m, &n, order, refined),
        Command::Betti { b2, n } => {
            settings.check_cap(n)?;
            betti_table(b2, n, settings.exec)
        }
        Command::Pk { k, nmax } => pk(&settings, k, nmax),
    }
}

fn exact(s: &Settings, k: i64, m: i64, nmax: usize) -> Result<OutputRecord> {
    s.check_cap(nmax)?;
    let table = CoefficientTable::new(k, nmax)?;
    let series = table.a_series(m, s.exec);
    let mut rec = OutputRecord::new("exact")
        .param("k", k)
        .param("m", m)
        .param("nmax", nmax);
    for (n, a) in series.into_coeffs().into_iter().enumerate() {
        rec.rows.push(Row::new().with("n", n as i64).with("a", a));
    }
    Ok(rec)
}

fn pk(s: &Settings, k: i64, nmax: usize) -> Result<OutputRecord> {
    s.check_cap(nmax)?;
    let table = CoefficientTable::new(k, nmax)?;
    let mut rec = OutputRecord::new("pk").param("k", k).param("nmax", nmax);
    for (n, p) in table.partitions().coeffs().iter().enumerate() {
        rec.rows
            .push(Row::new().with("n", n as i64).with("p", p.clone()));
    }
    Ok(rec)
}

fn bcoeffs(s: &Settings, k: i64, n: usize, m: Option<i64>) -> Result<OutputRecord> {
    s.check_cap(n)?;
    let table = CoefficientTable::new(k, n)?;
    let mut rec = OutputRecord::new("bcoeffs").param("k", k).param("n", n);
    let rows: Vec<(i64, BigInt)> = match m {
        Some(m) => {
            rec = rec.param("m", m);
            vec![(m, table.b(m, n)?)]
        }
        None => table
            .b_row(n, s.exec)?
            .into_iter()
            .enumerate()
            .map(|(m, b)| (m as i64, b))
            .collect(),
    };
    for (m, b) in rows {
        rec.rows.push(Row::new().with("m", m).with("b", b));
    }
    Ok(rec)
}

fn dcoeffs(k: i64, m: i64, lmax: usize) -> Result<OutputRecord> {
    let ds = d_coeffs(m, k, lmax)?;
    let mut rec = OutputRecord::new("dcoeffs")
        .param("k", k)
        .param("m", m)
        .param("lmax", lmax);
    for (i, d) in ds.into_iter().enumerate() {
        let approx = rat_to_f64(&d);
        rec.rows.push(
            Row::new()
                .with("l", (i + 1) as i64)
                .with("d", d)
                .with("d_f64", approx),
        );
    }
    Ok(rec)
}

fn order_or_default(k: i64, order: Option<usize>) -> Result<usize> {
    match order {
        Some(o) => Ok(o),
        None => {
            if k < 1 || k > u32::MAX as i64 {
                return Err(Error::invalid("k", format!("must be >= 1, got {k}")));
            }
            Ok(default_order(k as u32))
        }
    }
}

fn asympt(
    s: &Settings,
    k: i64,
    m: i64,
    r: Option<i64>,
    ns: &[i64],
    order: Option<usize>,
    formula: Formula,
) -> Result<OutputRecord> {
    let order = order_or_default(k, order)?;
    let r = match (formula, r) {
        (Formula::CorollaryDiff, None) => {
            return Err(Error::invalid("r", "required by --formula corollary-diff"))
        }
        (_, r) => r,
    };
    let evaluate = |&n: &i64| -> Result<LogReal> {
        match formula {
            Formula::Theorem => theorem_main(&AsymptoticQuery::new(m, k, n, order)?),
            Formula::Refined => refined_main(&AsymptoticQuery::new(m, k, n, order)?),
            Formula::CorollaryDiff => corollary_diff(m, r.unwrap_or(1), k, n),
            Formula::CorollaryB => corollary_b(m, k, n),
            Formula::Pk => pk_asymptotic(k, n),
            Formula::Ratio => b0_over_pk(k, n).map(LogReal::from_f64),
        }
    };
    let values: Vec<LogReal> = s
        .exec
        .map_slice(ns, evaluate)
        .into_iter()
        .collect::<Result<_>>()?;
    let mut rec = OutputRecord::new("asympt")
        .param("k", k)
        .param("m", m)
        .param("N", order)
        .param(
            "formula",
            formula
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default(),
        );
    if let Some(r) = r {
        rec = rec.param("r", r);
    }
    for (&n, v) in ns.iter().zip(values) {
        rec.rows.push(
            Row::new()
                .with("n", n)
                .with("value", v)
                .with("value_f64", v.to_f64()),
        );
    }
    Ok(rec)
}

fn compare(
    s: &Settings,
    k: i64,
    m: i64,
    ns: &[i64],
    order: Option<usize>,
    refined: bool,
) -> Result<OutputRecord> {
    let order = order_or_default(k, order)?;
    let queries: Vec<AsymptoticQuery> = ns
        .iter()
        .map(|&n| AsymptoticQuery::new(m, k, n, order))
        .collect::<Result<_>>()?;
    let nmax = queries.iter().map(|q| q.n as usize).max().unwrap_or(0);
    let comparator = Comparator::with_cap(k, nmax, s.cap)?;
    let reports = comparator.compare_all(&queries, refined, s.exec)?;
    let mut rec = OutputRecord::new("compare")
        .param("k", k)
        .param("m", m)
        .param("N", order)
        .param("refined", refined);
    for r in reports {
        rec.rows.push(
            Row::new()
                .with("n", r.query.n as i64)
                .with("exact", r.exact_value)
                .with("exact_log", r.exact)
                .with("approx", r.approx)
                .with("rel_error", r.rel_error)
                .with("scaled_residual", r.scaled_residual),
        );
    }
    Ok(rec)
}
