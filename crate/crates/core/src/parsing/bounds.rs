use serde::Serialize;

use crate::entropy::{EntropyProfile, ParsingStats};

/// One inequality `lhs ≤ rhs`, both in bits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl Bound {
    /// Whether `lhs ≤ rhs`, allowing 1e-9 relative rounding slack.
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + 1e-9 * self.rhs.abs().max(1.0)
    }
}

/// Upper bounds on `|A|H₀(A)` for a parsing `A` produced by
/// [`parse_h0_optimal`](super::parse_h0_optimal) with bound `m`:
///
/// - `(|S|/m)·Σ_{i<m} H_i(S) + |A|·log₂m`
/// - `|S|H_k(S) + |A|·log₂m + |A|·k·log₂σ` for every `0 ≤ k < m`.
///
/// `profile` must cover orders `0..m`.
pub fn h0_bounds(
    stats: &ParsingStats,
    profile: &EntropyProfile,
    m: usize,
    sigma: usize,
) -> Vec<Bound> {
    assert!(profile.max_order() + 1 >= m, "entropy profile too short");
    let phrases = stats.phrases as f64;
    let length_term = phrases * (m as f64).log2();
    let mut bounds = vec![Bound {
        name: "mean".into(),
        lhs: stats.h0_bits,
        rhs: profile.totals[..m].iter().sum::<f64>() / m as f64 + length_term,
    }];
    let log_sigma = if sigma > 1 {
        (sigma as f64).log2()
    } else {
        0.0
    };
    bounds.extend((0..m).map(|k| Bound {
        name: format!("k={k}"),
        lhs: stats.h0_bits,
        rhs: profile.totals[k] + length_term + phrases * k as f64 * log_sigma,
    }));
    bounds
}

/// Upper bounds on `|A|H₁(A)` for a parsing `A` produced by
/// [`parse_h1_optimal`](super::parse_h1_optimal) with bound `m`:
///
/// - `(|S|/m)·Σ_{m≤i<2m} H_i(S) + |A|·log₂m`
/// - `|S|H_m(S) + |A|·log₂m`.
///
/// `profile` must cover orders `0..2m`.
pub fn h1_bounds(stats: &ParsingStats, profile: &EntropyProfile, m: usize) -> Vec<Bound> {
    assert!(
        profile.max_order() + 1 >= 2 * m,
        "entropy profile too short"
    );
    let length_term = stats.phrases as f64 * (m as f64).log2();
    vec![
        Bound {
            name: "mean".into(),
            lhs: stats.h1_bits,
            rhs: profile.totals[m..2 * m].iter().sum::<f64>() / m as f64 + length_term,
        },
        Bound {
            name: format!("k={m}"),
            lhs: stats.h1_bits,
            rhs: profile.totals[m] + length_term,
        },
    ]
}
