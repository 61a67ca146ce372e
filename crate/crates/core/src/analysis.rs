//! Side-by-side comparison of the best naive parsing and the optimal
//! parsing for a list of bounds `m`.

use serde::Serialize;

use crate::corpus::Text;
use crate::entropy::{entropy_profile, parsing_stats, ParsingStats};
use crate::error::{Error, Result};
use crate::parsing::{best_naive, check_bound, parse_h0_optimal, parse_h1_optimal, Order, Parsing};
use crate::substring_index::build_counter;

/// Metrics of one parsing, normalised by the text length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParsingMetrics {
    /// `|Y|H₀(Y)/|S|` or `|Y|H₁(Y)/|S|`, depending on the order.
    pub bps: f64,
    /// `|S|/|Y|`
    pub avg_phrase_len: f64,
    pub distinct: usize,
    pub pairs: usize,
}

impl ParsingMetrics {
    fn new(stats: &ParsingStats, n: usize, order: Order) -> Self {
        let bits = match order {
            Order::H0 => stats.h0_bits,
            Order::H1 => stats.h1_bits,
        };
        let ratio = |x: f64, y: f64| if y == 0.0 { 0.0 } else { x / y };
        ParsingMetrics {
            bps: ratio(bits, n as f64),
            avg_phrase_len: ratio(n as f64, stats.phrases as f64),
            distinct: stats.distinct,
            pairs: stats.pairs,
        }
    }
}

/// One row of the comparison: baseline `B`, optimal parsing `A` and the
/// mean text entropy the bounds compare against, `(1/m)·Σ_{i<m} H_i(S)` for
/// H0 and `(1/m)·Σ_{m≤i<2m} H_i(S)` for H1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub file: String,
    pub variant: Order,
    pub m: usize,
    pub baseline: ParsingMetrics,
    /// Length of the baseline's blocks (equal to `m`) and its chosen offset.
    pub baseline_offset: usize,
    pub algorithm: ParsingMetrics,
    pub mean_entropy_bps: f64,
}

/// Optimal parsing of `text` under `order` with a fresh counter.
pub fn optimal_parsing(text: &Text, m: usize, order: Order) -> Result<(Parsing<'_>, f64)> {
    check_bound(m)?;
    match order {
        Order::H0 => parse_h0_optimal(text, m, &build_counter(text, m)?),
        Order::H1 => parse_h1_optimal(text, m, &build_counter(text, 2 * m)?),
    }
}

/// Computes one [`ReportRow`] per entry of `m_values`, sharing a single
/// substring counter and entropy profile across all of them.
pub fn analyze_text(
    file: &str,
    text: &Text,
    order: Order,
    m_values: &[usize],
) -> Result<Vec<ReportRow>> {
    if m_values.is_empty() {
        return Err(Error::param("no phrase bounds given"));
    }
    for &m in m_values {
        check_bound(m)?;
    }
    let max_m = *m_values.iter().max().unwrap();
    let span = match order {
        Order::H0 => max_m,
        Order::H1 => 2 * max_m,
    };
    let counter = build_counter(text, span)?;
    let profile = entropy_profile(text, span - 1);
    let n = text.len();

    let mut rows = Vec::with_capacity(m_values.len());
    for &m in m_values {
        let (baseline, _) = best_naive(text, m, order)?;
        let baseline_offset = baseline.phrases().first().map_or(0, |p| p.len % m);
        let (algorithm, _) = match order {
            Order::H0 => parse_h0_optimal(text, m, &counter)?,
            Order::H1 => parse_h1_optimal(text, m, &counter)?,
        };
        let orders = match order {
            Order::H0 => 0..m,
            Order::H1 => m..2 * m,
        };
        rows.push(ReportRow {
            file: file.to_owned(),
            variant: order,
            m,
            baseline: ParsingMetrics::new(&parsing_stats(&baseline), n, order),
            baseline_offset,
            algorithm: ParsingMetrics::new(&parsing_stats(&algorithm), n, order),
            mean_entropy_bps: profile.mean_bps(orders),
        });
    }
    Ok(rows)
}
