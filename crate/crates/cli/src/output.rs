//! Rendering and parsing of the CLI artifacts: the scan CSV schema, slope
//! and coefficient list parsing, and the JSON payloads printed by --json.

use std::str::FromStr;

use num_rational::Rational64;
use reduction_core::cm::ReductionType;
use reduction_core::density::ScanRow;
use reduction_core::numfield::SplitClass;
use reduction_core::polygons::Valuation;

use crate::CliError;

pub const CSV_HEADER: &str = "p,degrees,split_class,inert_count,reduction_type";

/// One CSV row: p, degrees dash-separated ascending, split class,
/// inert count (or empty), reduction type (or empty for excluded primes).
pub fn row_to_csv(row: &ScanRow) -> String {
    let degrees = row
        .degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("-");
    let inert = row.inert_count.map_or(String::new(), |i| i.to_string());
    let reduction = row.reduction.map_or(String::new(), |r| r.to_string());
    format!(
        "{},{},{},{},{}",
        row.p, degrees, row.split_class, inert, reduction
    )
}

pub fn row_from_csv(line: &str) -> Result<ScanRow, CliError> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 5 {
        return Err(CliError::Config(format!(
            "expected 5 CSV fields, got {} in {line:?}",
            fields.len()
        )));
    }
    let p = fields[0]
        .parse::<u64>()
        .map_err(|e| CliError::Config(format!("bad prime in {line:?}: {e}")))?;
    let degrees = if fields[1].is_empty() {
        Vec::new()
    } else {
        fields[1]
            .split('-')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| CliError::Config(format!("bad degree in {line:?}: {e}")))
            })
            .collect::<Result<Vec<u32>, _>>()?
    };
    let split_class = SplitClass::from_str(fields[2]).map_err(CliError::Core)?;
    let inert_count = if fields[3].is_empty() {
        None
    } else {
        Some(
            fields[3]
                .parse::<u32>()
                .map_err(|e| CliError::Config(format!("bad inert count in {line:?}: {e}")))?,
        )
    };
    let reduction = if fields[4].is_empty() {
        None
    } else {
        Some(ReductionType::from_str(fields[4]).map_err(CliError::Core)?)
    };
    Ok(ScanRow {
        p,
        degrees,
        split_class,
        inert_count,
        reduction,
    })
}

pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 24 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row_to_csv(row));
        out.push('\n');
    }
    out
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ScanRow>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        other => {
            return Err(CliError::Config(format!(
                "bad or missing CSV header: {other:?}"
            )))
        }
    }
    lines.map(row_from_csv).collect()
}

/// Comma-separated i64 list ("0,0,1,-1,0").
pub fn parse_i64_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| CliError::Config(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Config(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

/// Exact rational: "3", "-2/5".
pub fn parse_rational(text: &str) -> Result<Rational64, CliError> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let n = num
                .trim()
                .parse::<i64>()
                .map_err(|e| CliError::Config(format!("bad rational {text:?}: {e}")))?;
            let d = den
                .trim()
                .parse::<i64>()
                .map_err(|e| CliError::Config(format!("bad rational {text:?}: {e}")))?;
            if d == 0 {
                return Err(CliError::Config(format!("zero denominator in {text:?}")));
            }
            Ok(Rational64::new(n, d))
        }
        None => text
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|e| CliError::Config(format!("bad rational {text:?}: {e}"))),
    }
}

/// Comma-separated valuations where "inf" marks a zero coefficient.
pub fn parse_valuations(text: &str) -> Result<Vec<(u64, Valuation)>, CliError> {
    text.split(',')
        .enumerate()
        .map(|(i, t)| {
            let t = t.trim();
            if t.eq_ignore_ascii_case("inf") {
                Ok((i as u64, Valuation::Infinite))
            } else {
                Ok((i as u64, Valuation::Finite(parse_rational(t)?)))
            }
        })
        .collect()
}

/// Polygon segments as JSON-friendly pairs (slope string, multiplicity).
pub fn polygon_segments_json(p: &reduction_core::Polygon) -> Vec<(String, u64)> {
    p.segments()
        .iter()
        .map(|&(s, m)| (s.to_string(), m))
        .collect()
}
