//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::integral_ops::{hilbert_multiplier, hilbert_pv, PeriodicSignal};
use crate::ks2::{dump_cubes, CubeSystem};
use crate::report::VerificationReport;
use crate::suites::{check_names, registry, run_suite, SuiteParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "almost-hilbert", version, about = "Numerical verification suites for natural Hilbert-space embeddings")]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// embedding, adjoint, schatten, ks2, integral or all
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, env = "ALMOST_HILBERT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Replaces the tolerance of every asserted check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub cubes: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the check names (of --suite) and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kuelbs-Steadman cube utilities.
    Ks2 {
        #[command(subcommand)]
        action: Ks2Action,
    },
    /// Singular integral operator utilities.
    Integral {
        #[command(subcommand)]
        action: IntegralAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum Ks2Action {
    /// CSV of the first cubes: k, l, i, center..., side.
    DumpCubes {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoOp {
    Hilbert,
    HilbertPv,
}

#[derive(Debug, Subcommand)]
pub enum IntegralAction {
    /// CSV of a square wave and its transform.
    Demo {
        #[arg(long, value_enum, default_value = "hilbert")]
        op: DemoOp,
        #[arg(long, default_value_t = 1024)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl RunArgs {
    pub fn params(&self) -> SuiteParams {
        SuiteParams {
            seed: self.seed,
            dim: self.dim,
            grid: self.grid,
            p: self.p,
            q: self.q,
            alpha: self.alpha,
            trials: self.trials,
            tol: self.tol,
            cubes: self.cubes,
        }
    }
}

pub fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut s = report.to_text();
            let reg = registry();
            for suite in crate::suites::SUITE_NAMES {
                let worst = report
                    .checks
                    .iter()
                    .filter(|c| reg.get(c.name.as_str()) == Some(&suite) && c.tolerance.is_some())
                    .max_by(|a, b| a.worst_violation.total_cmp(&b.worst_violation));
                if let Some(c) = worst {
                    s.push_str(&format!("  worst in {suite}: {} {:.3e}\n", c.name, c.worst_violation));
                }
            }
            s
        }
    }
}

fn write_out(text: &str, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Writes the report to `path` (standard output when `None`).
pub fn emit_report(report: &VerificationReport, format: Format, path: Option<&std::path::Path>) -> Result<()> {
    write_out(&render(report, format), path)
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    let result = match cli.command {
        Some(Command::Ks2 {
            action: Ks2Action::DumpCubes { n, count, out },
        }) => CubeSystem::unit(n, count).and_then(|s| write_out(&dump_cubes(&s), out.as_deref())).map(|_| EXIT_OK),
        Some(Command::Integral {
            action: IntegralAction::Demo { op, m, out },
        }) => demo_csv(op, m).and_then(|s| write_out(&s, out.as_deref())).map(|_| EXIT_OK),
        None => run_command(&cli.run),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn run_command(args: &RunArgs) -> Result<i32> {
    if args.list {
        let names = check_names(&args.suite)?;
        let reg = registry();
        let text: String = names.iter().map(|n| format!("{n}\t{}\n", reg[n])).collect();
        write_out(&text, args.out.as_deref())?;
        return Ok(EXIT_OK);
    }
    let start = std::time::Instant::now();
    let mut report = run_suite(&args.suite, &args.params())?;
    report.duration = Some(start.elapsed().as_secs_f64());
    emit_report(&report, args.format, args.out.as_deref())?;
    for c in report.failures() {
        eprintln!("FAIL {} worst={:e} tol={:?}", c.name, c.worst_violation, c.tolerance);
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

/// `t,f_re,f_im,hf_re,hf_im` rows for a unit square wave.
pub fn demo_csv(op: DemoOp, m: usize) -> Result<String> {
    let f = PeriodicSignal::from_real_fn(m, |t| if t < 0.5 { 1.0 } else { -1.0 })?;
    let hf = match op {
        DemoOp::Hilbert => hilbert_multiplier(&f),
        DemoOp::HilbertPv => hilbert_pv(&f, 4.0 / m as f64)?,
    };
    let mut s = String::from("t,f_re,f_im,hf_re,hf_im\n");
    for (j, (a, b)) in f.samples().iter().zip(hf.samples()).enumerate() {
        s.push_str(&format!("{:?},{:?},{:?},{:?},{:?}\n", j as f64 / m as f64, a.re, a.im, b.re, b.im));
    }
    Ok(s)
}
