//! `hsosc`: data tables for the perturbative energy estimates of the quartic
//! anharmonic oscillator, plus the acceptance report.

mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hs_oscillator::hs_terms::Curve;
use hs_oscillator::scale_select::Method;

use crate::args::{parse_nonneg_f64, parse_pos_f64, parse_u32_list, ZRange};
use crate::output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] hs_oscillator::Error),
    #[error("{0} row(s) failed")]
    FailedRows(usize),
    #[error("acceptance criteria failed")]
    Acceptance,
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) | CliError::FailedRows(_) | CliError::Io(_) => 2,
            CliError::Acceptance => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "hsosc", version, about = "Perturbative and exact energies of the quartic anharmonic oscillator")]
struct Cli {
    /// Output format for tables [default: csv; report defaults to plain text]
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Fac,
    Pms,
    Var0,
    Var1,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Fac => Method::Fac,
            MethodArg::Pms => Method::Pms,
            MethodArg::Var0 => Method::Var0,
            MethodArg::Var1 => Method::Var1,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample partial sums (k0..k3) and resummed expectation values (h0, h1) over a Z grid
    Zsweep {
        /// Levels, e.g. `0..5` or `0,2`
        #[arg(long, default_value = "0", value_parser = parse_u32_list)]
        n: ::std::vec::Vec<u32>,
        /// Coupling g = (m/M)^2
        #[arg(long, default_value_t = 0.0, value_parser = parse_nonneg_f64)]
        g: f64,
        /// Uniform grid `min:max:steps` [default: the level's search window with 400 steps]
        #[arg(long)]
        z: Option<ZRange>,
        /// Comma-separated curve tags from k0,k1,k2,k3,h0,h1
        #[arg(long, default_value = "k0,k1,k2,k3,h0,h1")]
        tags: String,
        /// Add the diagonalized energy as a constant column
        #[arg(long)]
        exact: bool,
    },
    /// Choose Z by FAC, PMS or the variational rule and compare with the exact energy
    Select {
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Perturbative orders for fac/pms, e.g. `1..3` [default: 1]; not accepted for var0/var1
        #[arg(long, value_parser = parse_u32_list)]
        orders: Option<::std::vec::Vec<u32>>,
        #[arg(long, default_value = "0", value_parser = parse_u32_list)]
        n: ::std::vec::Vec<u32>,
        #[arg(long, default_value_t = 0.0, value_parser = parse_nonneg_f64)]
        g: f64,
        /// Exit with status 2 when any selection fails
        #[arg(long)]
        strict: bool,
    },
    /// Lowest eigenvalues from the harmonic-basis diagonalization
    Exact {
        #[arg(long, default_value_t = 0.0, value_parser = parse_nonneg_f64)]
        g: f64,
        /// Number of levels, starting from n = 0
        #[arg(long, default_value_t = 6)]
        levels: u32,
        /// Relative change between basis doublings that counts as converged
        #[arg(long, default_value_t = 1e-10, value_parser = parse_pos_f64)]
        tol: f64,
        /// Basis frequency [default: max(m, M (n_max+1)^(1/3))]
        #[arg(long, value_parser = parse_pos_f64)]
        omega: Option<f64>,
    },
    /// Spread between the two outer local minima of k3 and of h1
    Spread {
        #[arg(long, default_value = "0..5", value_parser = parse_u32_list)]
        n: ::std::vec::Vec<u32>,
        #[arg(long, default_value_t = 0.0, value_parser = parse_nonneg_f64)]
        g: f64,
    },
    /// Run every acceptance criterion; exit 0 only if all pass
    Report {
        #[arg(long, hide = true)]
        flip_e3_sign: bool,
    },
}

fn parse_tags(s: &str) -> Result<Vec<Curve>, CliError> {
    let mut tags = Vec::new();
    for t in s.split(',').map(str::trim) {
        let curve = Curve::from_tag(t).ok_or_else(|| CliError::Usage(format!("unknown tag `{t}` (use k0..k3, h0, h1)")))?;
        if !tags.contains(&curve) {
            tags.push(curve);
        }
    }
    Ok(tags)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format.unwrap_or(Format::Csv);
    let (output, strict) = match cli.command {
        Command::Zsweep { n, g, z, tags, exact } => (commands::zsweep(&n, g, z, &parse_tags(&tags)?, exact)?, true),
        Command::Select { method, orders, n, g, strict } => {
            let method = Method::from(method);
            let orders = match (method, orders) {
                (Method::Var0 | Method::Var1, Some(_)) => {
                    return Err(CliError::Usage(format!("--orders does not apply to {}", method.name())))
                }
                (Method::Var0, None) => vec![0],
                (Method::Var1, None) => vec![1],
                (_, Some(o)) => o,
                (_, None) => vec![1],
            };
            if matches!(method, Method::Fac | Method::Pms) {
                if let Some(bad) = orders.iter().find(|&&k| !(1..=3).contains(&k)) {
                    return Err(CliError::Usage(format!("order {bad} is outside 1..3")));
                }
            }
            (commands::select(method, &orders, &n, g)?, strict)
        }
        Command::Exact { g, levels, tol, omega } => (commands::exact(g, levels, tol, omega)?, true),
        Command::Spread { n, g } => (commands::spread(&n, g)?, true),
        Command::Report { flip_e3_sign } => {
            let (outcomes, ok) = commands::report(flip_e3_sign);
            match cli.format {
                None => {
                    for o in &outcomes {
                        writeln!(out, "{}", o.line())?;
                    }
                    let passed = outcomes.iter().filter(|o| o.passed).count();
                    writeln!(out, "{passed}/{} criteria passed", outcomes.len())?;
                }
                Some(f) => commands::report_table(&outcomes).write(f, out)?,
            }
            return if ok { Ok(()) } else { Err(CliError::Acceptance) };
        }
    };
    output.table.write(format, out)?;
    if strict && output.failed_rows > 0 {
        return Err(CliError::FailedRows(output.failed_rows));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Acceptance) {
                eprintln!("hsosc: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
