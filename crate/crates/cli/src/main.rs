use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bec_polar::construction::{avr_distribution, rank};
use bec_polar::monomials::MAX_M;
use bec_polar::orders::{hasse_dot, hasse_edges};
use bec_polar::synthesis::{default_tolerance, synth_all_capped, synth_poly, DEFAULT_CAP};
use bec_polar::verify::{run_suite, Suite};
use bec_polar::{ChannelTable, Criterion, Monomial, PosetRelation};
use clap::{Parser, Subcommand, ValueEnum};

mod report;

use report::{CheckRecord, VerifyReport};

#[derive(Parser)]
#[command(
    name = "bec-polar",
    version,
    about = "Exact synthetic-channel polynomials and rankings for polar codes over the BEC"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print channel polynomial coefficients and path counts.
    Synth {
        #[command(flatten)]
        size: Size,
        /// Only this channel (integer label).
        #[arg(long)]
        u: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rank channels by average reliability, Z at fixed p, or beta-expansion.
    Rank {
        #[command(flatten)]
        size: Size,
        /// avr, p=<rational> or beta=<decimal>.
        #[arg(long, value_parser = parse_criterion)]
        by: Criterion,
        /// Keep the best K channels.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Hasse diagram of a monomial order in DOT.
    Poset {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        relation: RelationArg,
        /// Write DOT here instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run named verification checks; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
    },
    /// Channel counts per average-reliability decile (CSV).
    Distribution {
        #[command(flatten)]
        size: Size,
    },
    /// Two-column CSV of (u, Avr) plot data.
    Avrplot {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        out: PathBuf,
        /// Order rows by ascending Avr instead of by u.
        #[arg(long)]
        sorted: bool,
    },
}

#[derive(clap::Args)]
struct Size {
    #[arg(long)]
    m: usize,
    /// Allow m above the default cap.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    W,
    Std,
    Dom,
}

impl From<RelationArg> for PosetRelation {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::W => PosetRelation::Weak,
            RelationArg::Std => PosetRelation::Standard,
            RelationArg::Dom => PosetRelation::Dominance,
        }
    }
}

fn parse_criterion(s: &str) -> Result<Criterion, String> {
    s.parse().map_err(|e: bec_polar::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: bec_polar::Error| e.to_string())
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<bec_polar::Error> for Failure {
    fn from(e: bec_polar::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn cap(size: &Size) -> usize {
    if size.force {
        MAX_M
    } else {
        DEFAULT_CAP
    }
}

fn over_cap(m: usize, cap: usize) -> Failure {
    Failure::Usage(format!(
        "m = {m} exceeds the cap of {cap}; pass --force to override"
    ))
}

fn check_cap(size: &Size) -> Result<(), Failure> {
    if size.m > cap(size) {
        return Err(over_cap(size.m, cap(size)));
    }
    Ok(())
}

fn table(size: &Size) -> Result<ChannelTable, Failure> {
    synth_all_capped(size.m, cap(size)).map_err(|e| match e {
        bec_polar::Error::OverCap { m, cap } => over_cap(m, cap),
        e => e.into(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Synth { size, u, format } => {
            let rep = match u {
                Some(u) => {
                    check_cap(&size)?;
                    let u = Monomial::from_int(u, size.m)?;
                    report::synth_report(size.m, &[(u, &synth_poly(u))])?
                }
                None => {
                    let t = table(&size)?;
                    let polys: Vec<_> = t.monomials().map(|u| (u, t.get(u))).collect();
                    report::synth_report(size.m, &polys)?
                }
            };
            match format {
                Format::Json => report::write_json(&mut out, &rep)?,
                Format::Csv => report::write_synth_csv(&mut out, &rep)?,
            }
        }
        Command::Rank {
            size,
            by,
            k,
            format,
        } => {
            let t = table(&size)?;
            let k = k.unwrap_or(t.len());
            if k > t.len() {
                return Err(Failure::Usage(format!(
                    "k = {k} exceeds the {} channels at m = {}",
                    t.len(),
                    size.m
                )));
            }
            let ranked = rank(&t, &by)?;
            let rep = report::rank_report(&t, &ranked, k, &default_tolerance())?;
            match format {
                Format::Json => report::write_json(&mut out, &rep)?,
                Format::Csv => report::write_rank_csv(&mut out, &rep)?,
            }
        }
        Command::Poset { m, relation, dot } => {
            if m == 0 {
                return Err(bec_polar::Error::UnsupportedM(m).into());
            }
            let relation = relation.into();
            let edges = hasse_edges(m, relation)?;
            let text = hasse_dot(m, relation, &edges);
            match dot {
                Some(path) => File::create(path)?.write_all(text.as_bytes())?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Verify {
            size,
            suite,
            format,
        } => {
            check_cap(&size)?;
            let m = size.m;
            let checks = run_suite(suite, m)?;
            let passed = checks.iter().all(|c| c.passed);
            match format {
                VerifyFormat::Text => {
                    for c in &checks {
                        let tag = if c.passed { "PASS" } else { "FAIL" };
                        writeln!(out, "[{tag}] {}/{}: {}", c.suite, c.name, c.detail)?;
                    }
                    let failed = checks.iter().filter(|c| !c.passed).count();
                    writeln!(out, "{} checks, {failed} failed", checks.len())?;
                }
                VerifyFormat::Json => {
                    let rep = VerifyReport {
                        m,
                        suite: suite.to_string(),
                        passed,
                        checks: checks
                            .iter()
                            .map(|c| CheckRecord {
                                suite: c.suite.to_string(),
                                name: c.name.to_string(),
                                passed: c.passed,
                                detail: c.detail.clone(),
                                ops: c.ops.iter().map(|s| s.to_string()).collect(),
                            })
                            .collect(),
                    };
                    report::write_json(&mut out, &rep)?;
                }
            }
            out.flush()?;
            if !passed {
                return Err(Failure::Verification);
            }
        }
        Command::Distribution { size } => {
            let t = table(&size)?;
            report::write_distribution_csv(&mut out, &avr_distribution(&t)?)?;
        }
        Command::Avrplot {
            size,
            out: path,
            sorted,
        } => {
            let t = table(&size)?;
            let file = BufWriter::new(File::create(path)?);
            if sorted {
                let ranked = rank(&t, &Criterion::Average)?;
                report::write_avr_csv(file, &t, ranked.order.into_iter())?;
            } else {
                report::write_avr_csv(file, &t, t.monomials())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
