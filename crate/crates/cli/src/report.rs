//! Serializable output records and their CSV/JSON writers.

use std::io::Write;

use bec_polar::polynomials::{format_decimal, format_fraction, to_path_counts};
use bec_polar::synthesis::threshold_estimates;
use bec_polar::{ChannelTable, IntPoly, Monomial, RankedChannels, Rational, Result};
use serde::{Deserialize, Serialize};

/// Decimal places for presentation-only values.
pub const PLACES: usize = 6;

/// One channel of a ranking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub rank: usize,
    pub m: usize,
    pub u: u64,
    pub monomial: String,
    pub degree: usize,
    /// Ranking score as an exact fraction.
    pub score: String,
    pub avr: String,
    pub avr_decimal: String,
    pub threshold: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub m: usize,
    pub criterion: String,
    pub records: Vec<ReportRecord>,
}

/// Builds the first `k` records of a ranking.
pub fn rank_report(
    table: &ChannelTable,
    ranked: &RankedChannels,
    k: usize,
    tol: &Rational,
) -> Result<RankReport> {
    let chosen = &ranked.order[..k];
    let thresholds = threshold_estimates(chosen, tol)?;
    let records = chosen
        .iter()
        .zip(thresholds)
        .enumerate()
        .map(|(i, (&u, t))| {
            let avr = table.average(u);
            ReportRecord {
                rank: i + 1,
                m: ranked.m,
                u: u.to_int(),
                monomial: u.to_string(),
                degree: u.degree(),
                score: format_fraction(ranked.score(u)),
                avr: format_fraction(avr),
                avr_decimal: format_decimal(avr, PLACES),
                threshold: format_decimal(&t, PLACES),
            }
        })
        .collect();
    Ok(RankReport {
        m: ranked.m,
        criterion: ranked.criterion.to_string(),
        records,
    })
}

/// Coefficients and path counts of one channel; integers as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelRecord {
    pub m: usize,
    pub u: u64,
    pub monomial: String,
    pub degree: usize,
    pub coefficients: Vec<String>,
    pub path_counts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthReport {
    pub m: usize,
    pub channels: Vec<ChannelRecord>,
}

/// Records for `(u, Z(W^u))` pairs of one `m`.
pub fn synth_report(m: usize, polys: &[(Monomial, &IntPoly)]) -> Result<SynthReport> {
    let n = 1usize << m;
    let channels = polys
        .iter()
        .map(|&(u, z)| {
            Ok(ChannelRecord {
                m,
                u: u.to_int(),
                monomial: u.to_string(),
                degree: u.degree(),
                coefficients: z.coeffs().iter().map(ToString::to_string).collect(),
                path_counts: to_path_counts(z, n)?
                    .counts()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(SynthReport { m, channels })
}

pub fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(out)
}

pub fn write_rank_csv(out: impl Write, report: &RankReport) -> csv::Result<()> {
    let mut w = csv_writer(out);
    for r in &report.records {
        w.serialize(r)?;
    }
    if report.records.is_empty() {
        w.write_record([
            "rank",
            "m",
            "u",
            "monomial",
            "degree",
            "score",
            "avr",
            "avr_decimal",
            "threshold",
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Long format: one row per coefficient or path count.
pub fn write_synth_csv(out: impl Write, report: &SynthReport) -> csv::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["m", "u", "monomial", "kind", "index", "value"])?;
    for c in &report.channels {
        let rows = [
            ("coefficient", &c.coefficients),
            ("path_count", &c.path_counts),
        ];
        for (kind, values) in rows {
            for (i, v) in values.iter().enumerate() {
                w.write_record([
                    c.m.to_string().as_str(),
                    &c.u.to_string(),
                    &c.monomial,
                    kind,
                    &i.to_string(),
                    v,
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_distribution_csv(out: impl Write, buckets: &[usize; 10]) -> csv::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["lower", "upper", "count"])?;
    for (i, count) in buckets.iter().enumerate() {
        w.write_record([
            format!("{:.1}", i as f64 / 10.0),
            format!("{:.1}", (i + 1) as f64 / 10.0),
            count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `u,avr` rows in the given channel order.
pub fn write_avr_csv(
    out: impl Write,
    table: &ChannelTable,
    order: impl Iterator<Item = Monomial>,
) -> csv::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["u", "avr"])?;
    for u in order {
        w.write_record([
            u.to_int().to_string(),
            format_decimal(table.average(u), PLACES),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub ops: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub m: usize,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}
