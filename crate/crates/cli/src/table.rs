//! The `f(i, N)` table: rows computed in parallel, written in a fixed order.

use std::fmt::Write as _;

use fermat_core::regulator::{f_indec, FIndec, Provenance};
use fermat_core::special::Hyp3F2Source;
use fermat_core::Error;
use rayon::prelude::*;

use crate::record::{ErrorRecord, OutputRecord};

/// Published `(i, N, f)` values, used to flag degrees with no reference.
pub const PUBLISHED: [(i64, u32, f64); 9] = [
    (2, 13, 0.0753593),
    (2, 17, 0.0591967),
    (3, 17, 0.0419067),
    (4, 17, 0.0306883),
    (3, 19, 0.0382251),
    (4, 19, 0.0285317),
    (3, 23, 0.0323588),
    (4, 23, 0.0247137),
    (5, 23, 0.0193323),
];

/// Whether any published value exists for degree `n`.
pub fn has_reference(n: u32) -> bool {
    PUBLISHED.iter().any(|&(_, m, _)| m == n)
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Header `i,N,f,err,hodge`, LF line endings.
    Csv,
    /// One [`OutputRecord`] per line.
    Json,
}

/// One `(i, N)` entry and its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// Index `i` of `Ω^{1,i,1,2i}`.
    pub i: i64,
    /// Curve degree.
    pub n: u32,
    /// `f(i, N)` or why it failed.
    pub result: Result<FIndec, Error>,
}

/// `2 ≤ i ≤ ⌊N/4⌋`, where `2i ≤ N/2` keeps both forms holomorphic.
pub fn default_range(n: u32) -> (i64, i64) {
    (2, i64::from(n / 4))
}

/// All `(i, N)` pairs, `N` ascending then `i` ascending; duplicates removed.
pub fn plan(ns: &[u32], range: Option<(i64, i64)>) -> Vec<(i64, u32)> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut out = Vec::new();
    for n in ns {
        let (lo, hi) = range.unwrap_or_else(|| default_range(n));
        out.extend((lo..=hi).map(|i| (i, n)));
    }
    out
}

/// Evaluates every planned row. Rows run in parallel; each row is computed
/// sequentially, so results do not depend on scheduling.
pub fn compute<S: Hyp3F2Source + Sync>(plan: &[(i64, u32)], src: &S) -> Vec<Row> {
    plan.par_iter()
        .map(|&(i, n)| Row {
            i,
            n,
            result: f_indec(i, n, src),
        })
        .collect()
}

/// `x` with six significant digits, fixed notation.
pub fn six_significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (5 - exp).clamp(0, 20) as usize;
    format!("{x:.decimals$}")
}

/// Renders the rows. CSV uses six significant digits unless `full`, which
/// prints the shortest round-trip representation; JSON is always lossless.
pub fn render(rows: &[Row], format: Format, full: bool) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("i,N,f,err,hodge\n");
    }
    for r in rows {
        match (&r.result, format) {
            (Ok(f), Format::Csv) => {
                let (v, e) = if full {
                    (format!("{}", f.value.value), format!("{:e}", f.value.err))
                } else {
                    (
                        six_significant(f.value.value),
                        format!("{:.1e}", f.value.err),
                    )
                };
                let _ = writeln!(out, "{},{},{v},{e},{}", r.i, r.n, f.hodge);
            }
            (Err(_), Format::Csv) => {
                let _ = writeln!(out, "{},{},NaN,NaN,", r.i, r.n);
            }
            (Ok(f), Format::Json) => {
                let rec = OutputRecord::new(
                    f.value.value,
                    f.value.err,
                    Provenance::ClosedForm.name(),
                    f.value.effort,
                )
                .input("i", r.i)
                .input("N", r.n)
                .hodge(f.hodge);
                out.push_str(&rec.to_json());
                out.push('\n');
            }
            (Err(e), Format::Json) => {
                let rec = ErrorRecord {
                    inputs: [("i".to_owned(), r.i.into()), ("N".to_owned(), r.n.into())]
                        .into_iter()
                        .collect(),
                    error: e.to_string(),
                };
                out.push_str(&serde_json::to_string(&rec).expect("serialisable"));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fermat_core::special::EvalConfig;

    #[test]
    fn plan_order_and_default_range() {
        assert_eq!(default_range(13), (2, 3));
        assert_eq!(
            plan(&[17, 13, 17], None),
            vec![(2, 13), (3, 13), (2, 17), (3, 17), (4, 17)]
        );
        assert_eq!(plan(&[13], Some((3, 3))), vec![(3, 13)]);
        assert!(plan(&[7], None).is_empty());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(six_significant(0.075359312), "0.0753593");
        assert_eq!(six_significant(0.17124149), "0.171241");
        assert_eq!(six_significant(-25.47142), "-25.4714");
        assert_eq!(six_significant(123456.7), "123457");
        assert_eq!(six_significant(0.0), "0");
    }

    #[test]
    fn csv_rows_and_errors() {
        let cfg = EvalConfig::default();
        let rows = compute(&[(2, 13), (2, 15)], &cfg);
        assert!(rows[0].result.is_ok());
        assert!(matches!(
            rows[1].result,
            Err(Error::UnsupportedModulus { n: 15 })
        ));
        let text = render(&rows, Format::Csv, false);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "i,N,f,err,hodge");
        assert!(lines[1].starts_with("2,13,0."), "{}", lines[1]);
        assert!(lines[1].ends_with(",false"));
        assert_eq!(lines[2], "2,15,NaN,NaN,");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_rows_are_lossless() {
        let cfg = EvalConfig::default();
        let rows = compute(&[(3, 17)], &cfg);
        let text = render(&rows, Format::Json, false);
        let rec: OutputRecord = serde_json::from_str(text.trim_end()).unwrap();
        let f = rows[0].result.as_ref().unwrap();
        assert_eq!(rec.value.to_bits(), f.value.value.to_bits());
        assert_eq!(rec.hodge, Some(false));
        assert_eq!(rec.provenance, "closed-form");
    }

    #[test]
    fn references() {
        assert!(has_reference(13) && has_reference(23));
        assert!(!has_reference(11));
    }
}
