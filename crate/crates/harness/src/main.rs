use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fpure_harness::error::{HarnessError, Result};
use fpure_harness::experiments::{catalog_run, deform_check, load_catalog, load_entry, stability_scan, RunOptions, ScanOptions};
use fpure_harness::report::{emit_report, Format, Report};
use fpure_harness::commands;

/// Prime-characteristic commutative algebra: Gröbner bases, canonical ideals,
/// splitting ideals, cyclic covers and F-purity experiments.
#[derive(Parser)]
#[command(name = "fpure", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Out {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of the defining ideal.
    Gb { file: PathBuf, #[command(flatten)] out: Out },
    /// Fedder's criterion for the ring (and for R/(f) when f is given).
    Fpure { file: PathBuf, #[command(flatten)] out: Out },
    /// Canonical ideal by linkage, with its symbolic-power certificate.
    Canonical { file: PathBuf, #[command(flatten)] out: Out },
    /// Least n with the n-th symbolic power of the canonical ideal principal.
    Index {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[command(flatten)]
        out: Out,
    },
    /// The e-th splitting ideal.
    SplittingIdeal {
        file: PathBuf,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Cyclic cover of D = m K of order n.
    Cover {
        file: PathBuf,
        #[arg(short)]
        n: u32,
        /// Multiple m of the canonical divisor.
        #[arg(short, long, default_value_t = 1)]
        multiple: u32,
        #[command(flatten)]
        out: Out,
    },
    /// F-purity of R/(f) and R, indices up and down.
    DeformCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[command(flatten)]
        out: Out,
    },
    /// F-purity of R/(f + ε) for sampled ε of degree N = 1..nmax.
    StabilityScan {
        file: PathBuf,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        monomial_cap: usize,
        #[command(flatten)]
        out: Out,
    },
    /// deform-check on every *.ring file of a directory; optionally also scans.
    CatalogRun {
        dir: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        /// Also run stability-scan on entries with an F-pure quotient.
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[command(flatten)]
        out: Out,
    },
}

fn single(kind: &str, out: &Out, record: serde_json::Value) -> Result<u8> {
    let mut r = Report::new(kind, Some(out.seed));
    r.records.push(record);
    write(&r, out)?;
    Ok(0)
}

fn write(r: &Report, out: &Out) -> Result<()> {
    emit_report(r, out.format, out.output.as_deref())
}

fn load(file: &Path) -> Result<fpure_harness::CatalogEntry> {
    load_entry(file)
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Gb { file, out } => single("gb", &out, commands::gb(&load(&file)?)?),
        Cmd::Fpure { file, out } => single("fpure", &out, commands::fpure(&load(&file)?)?),
        Cmd::Canonical { file, out } => single("canonical", &out, commands::canonical(&load(&file)?, out.seed)?),
        Cmd::Index { file, nmax, out } => single("index", &out, commands::index(&load(&file)?, nmax, out.seed)?),
        Cmd::SplittingIdeal { file, e, out } => {
            single("splitting-ideal", &out, commands::splitting(&load(&file)?, e, out.seed)?)
        }
        Cmd::Cover { file, n, multiple, out } => {
            single("cover", &out, commands::cover(&load(&file)?, n, multiple, out.seed)?)
        }
        Cmd::DeformCheck { file, nmax, out } => {
            let opts = RunOptions { seed: out.seed, index_max: nmax };
            let rec = deform_check(&load(&file)?, opts)?;
            let mut r = Report::new("deform-check", Some(out.seed));
            r.deform.push(rec);
            write(&r, &out)?;
            Ok(r.exit_code())
        }
        Cmd::StabilityScan { file, e, nmax, samples, monomial_cap, out } => {
            let opts = ScanOptions { e, n_max: nmax, samples, seed: out.seed, monomial_cap };
            let rep = stability_scan(&load(&file)?, opts)?;
            let mut r = Report::new("stability-scan", Some(out.seed));
            r.stability.push(rep);
            write(&r, &out)?;
            Ok(r.exit_code())
        }
        Cmd::CatalogRun { dir, nmax, scan, samples, out } => {
            let entries = load_catalog(&dir)?;
            let opts = RunOptions { seed: out.seed, index_max: nmax };
            let sopts = scan.then(|| ScanOptions { seed: out.seed, samples, n_max: nmax, ..ScanOptions::default() });
            let r = catalog_run(&entries, opts, sopts)?;
            write(&r, &out)?;
            Ok(r.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(HarnessError::exit_code(&e) as u8)
        }
    }
}
