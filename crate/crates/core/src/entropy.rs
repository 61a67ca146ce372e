//! Empirical entropies of texts and parsings. All values are totals in bits
//! (`|w|·H(w)`); divide by the text length for bits per symbol.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hash};

use serde::Serialize;

use crate::corpus::Text;
use crate::parsing::Parsing;
use crate::substring_index::SubstringClasses;

/// Hash map with a fixed hasher so iteration order, and therefore every
/// floating point sum taken over it, is reproducible between runs.
pub(crate) type DetHashMap<K, V> = HashMap<K, V, BuildHasherDefault<DefaultHasher>>;

/// Occurrence counts of a sequence's distinct items. Zero counts are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    pub fn from_counts<I: IntoIterator<Item = u64>>(counts: I) -> Self {
        let counts: Vec<u64> = counts.into_iter().filter(|&c| c > 0).collect();
        let total = counts.iter().sum();
        Histogram { counts, total }
    }

    /// Counts the items of `items`, numbering them by first occurrence.
    pub fn from_items<K: Hash + Eq, I: IntoIterator<Item = K>>(items: I) -> Self {
        let mut ids: DetHashMap<K, usize> = DetHashMap::default();
        let mut counts = Vec::new();
        for item in items {
            let next = counts.len();
            let id = *ids.entry(item).or_insert(next);
            if id == next {
                counts.push(0);
            }
            counts[id] += 1;
        }
        Histogram::from_counts(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }
}

/// `Σ c·log₂(total/c)` over the given counts.
pub(crate) fn h0_of_counts<I: IntoIterator<Item = u64>>(counts: I, total: u64) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    counts
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let c = c as f64;
            c * (t / c).log2()
        })
        .sum()
}

/// `|w|H₀(w)` in bits for the histogram of `w`.
pub fn h0_total(hist: &Histogram) -> f64 {
    h0_of_counts(hist.counts.iter().copied(), hist.total)
}

/// `|S|H_i(S)` for every order `i` in `0..=k_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyProfile {
    pub n: usize,
    pub totals: Vec<f64>,
}

impl EntropyProfile {
    /// `H_k(S)` in bits per symbol.
    pub fn bps(&self, k: usize) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.totals[k] / self.n as f64
        }
    }

    /// `(1/m)·Σ_{k ∈ orders} H_k(S)` in bits per symbol, with `m` the number
    /// of orders in the range.
    pub fn mean_bps(&self, orders: std::ops::Range<usize>) -> f64 {
        let m = orders.len();
        if m == 0 {
            return 0.0;
        }
        orders.map(|k| self.bps(k)).sum::<f64>() / m as f64
    }

    pub fn max_order(&self) -> usize {
        self.totals.len() - 1
    }
}

/// Computes `|S|H_k(S)` for all `k ≤ k_max` in one sweep over the text.
///
/// For `k ≥ 1` the contexts are the distinct length-`k` substrings `w`, and
/// `S_w` collects the symbols that follow an occurrence of `w`; the last `k`
/// positions have no follower. Orders with `k ≥ n` have total 0.
#[allow(clippy::needless_range_loop)]
pub fn entropy_profile(text: &Text, k_max: usize) -> EntropyProfile {
    let n = text.len();
    let mut totals = vec![0.0; k_max + 1];
    if n == 0 {
        return EntropyProfile { n, totals };
    }
    let mut classes = SubstringClasses::new(text.symbols());
    totals[0] = h0_of_counts(classes.sizes().iter().map(|&c| c as u64), n as u64);

    let mut seen: Vec<bool> = Vec::new();
    for k in 1..=k_max.min(n - 1) {
        debug_assert_eq!(classes.len(), k);
        let contexts = classes.classes()[..n - k].to_vec();
        // occurrences of each context that have a follower
        let mut followed = vec![0u64; classes.sizes().len()];
        for &c in &contexts {
            followed[c as usize] += 1;
        }
        classes.extend();
        let sizes = classes.sizes();
        seen.clear();
        seen.resize(sizes.len(), false);
        let mut bits = 0.0;
        for (&ctx, &u) in contexts.iter().zip(classes.classes()) {
            let u = u as usize;
            if !seen[u] {
                seen[u] = true;
                let c = sizes[u] as f64;
                bits += c * (followed[ctx as usize] as f64 / c).log2();
            }
        }
        totals[k] = bits;
    }
    EntropyProfile { n, totals }
}

/// `|S|H_k(S)` in bits.
pub fn hk_total(text: &Text, k: usize) -> f64 {
    entropy_profile(text, k).totals[k]
}

/// `(|Y|H₀(Y), |Σ_Y|)` where `Y` is the phrase sequence.
pub fn parsing_h0(parsing: &Parsing) -> (f64, usize) {
    let (ids, distinct) = parsing.phrase_ids();
    let mut counts = vec![0u64; distinct];
    for &id in &ids {
        counts[id as usize] += 1;
    }
    (h0_of_counts(counts, ids.len() as u64), distinct)
}

/// `(|Y|H₁(Y), |Σ_Y|, |pairs(Y)|)`.
///
/// Each phrase after the first is charged in the context of its
/// predecessor; the first phrase has no context and contributes nothing.
pub fn parsing_h1(parsing: &Parsing) -> (f64, usize, usize) {
    let (ids, distinct) = parsing.phrase_ids();
    let (bits, pairs) = h1_of_ids(&ids, distinct);
    (bits, distinct, pairs)
}

pub(crate) fn h1_of_ids(ids: &[u32], distinct: usize) -> (f64, usize) {
    let mut pair_counts: DetHashMap<u64, u64> = DetHashMap::default();
    let mut context_totals = vec![0u64; distinct];
    for w in ids.windows(2) {
        *pair_counts
            .entry(((w[0] as u64) << 32) | w[1] as u64)
            .or_insert(0) += 1;
        context_totals[w[0] as usize] += 1;
    }
    let bits = pair_counts
        .iter()
        .map(|(&key, &c)| {
            let c = c as f64;
            c * (context_totals[(key >> 32) as usize] as f64 / c).log2()
        })
        .sum();
    (bits, pair_counts.len())
}

/// `|L|H₀(L)` where `L` is the sequence of phrase lengths.
pub fn length_entropy(parsing: &Parsing) -> f64 {
    h0_total(&Histogram::from_items(
        parsing.phrases().iter().map(|p| p.len),
    ))
}

/// Everything the comparison tables report about one parsing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParsingStats {
    /// `|Y|`
    pub phrases: usize,
    /// `|Σ_Y|`
    pub distinct: usize,
    /// `|pairs(Y)|`, distinct adjacent phrase pairs.
    pub pairs: usize,
    /// `|Y|H₀(Y)` in bits.
    pub h0_bits: f64,
    /// `|Y|H₁(Y)` in bits.
    pub h1_bits: f64,
    /// `|L|H₀(L)` in bits.
    pub length_bits: f64,
}

pub fn parsing_stats(parsing: &Parsing) -> ParsingStats {
    let (ids, distinct) = parsing.phrase_ids();
    let mut counts = vec![0u64; distinct];
    for &id in &ids {
        counts[id as usize] += 1;
    }
    let (h1_bits, pairs) = h1_of_ids(&ids, distinct);
    ParsingStats {
        phrases: ids.len(),
        distinct,
        pairs,
        h0_bits: h0_of_counts(counts, ids.len() as u64),
        h1_bits,
        length_bits: length_entropy(parsing),
    }
}
