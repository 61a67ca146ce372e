//! Bounded-factor parsings, their phrase costs and the parsers that build
//! them.
//!
//! A phrase `y` of an `m`-bounded parsing is charged
//! `-log₂ p_H0(y)` with `p_H0(y) = (1/m)·cnt(y)/n`, or, when its
//! predecessor `y'` is known, `-log₂ p_H1(y, y') = -log₂((1/m)·cnt(y'y)/cnt(y'))`.
//! Both are telescoped products of empirical conditional probabilities, so
//! the cost of a phrase approximates coding each of its symbols with a
//! context of growing order, and `1/m` is a uniform model of the phrase
//! length.

mod bounds;
mod dp;
mod naive;

use std::fmt;

use serde::Serialize;

use crate::corpus::Text;
use crate::entropy::DetHashMap;
use crate::error::{Error, Result};
use crate::substring_index::SubstringCounter;

pub use bounds::{h0_bounds, h1_bounds, Bound};
pub use dp::{parse_h0_optimal, parse_h1_optimal};
pub use naive::{best_naive, naive_parsing};

/// Largest supported phrase bound.
pub const MAX_BOUND: usize = 255;

/// Entropy order a parsing is optimised for or measured with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Order {
    H0,
    H1,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::H0 => "h0",
            Order::H1 => "h1",
        })
    }
}

/// One factor `S[start..start+len)` of a parsing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub start: usize,
    pub len: usize,
}

impl Phrase {
    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

/// Surrogate coding cost of a phrase in bits.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PhraseCost(pub f64);

/// A partition of a text into consecutive phrases of length at most `m`.
#[derive(Clone, Debug)]
pub struct Parsing<'t> {
    text: &'t Text,
    phrases: Vec<Phrase>,
    m: usize,
}

pub(crate) fn check_bound(m: usize) -> Result<()> {
    if m == 0 || m > MAX_BOUND {
        return Err(Error::param(format!(
            "phrase bound {m} outside 1..={MAX_BOUND}"
        )));
    }
    Ok(())
}

impl<'t> Parsing<'t> {
    /// Builds the parsing of `text` whose phrase lengths are `lengths`.
    pub fn from_lengths(text: &'t Text, lengths: &[usize], m: usize) -> Result<Self> {
        check_bound(m)?;
        let mut phrases = Vec::with_capacity(lengths.len());
        let mut start = 0;
        for &len in lengths {
            if len == 0 || len > m {
                return Err(Error::param(format!("phrase length {len} outside 1..={m}")));
            }
            phrases.push(Phrase { start, len });
            start += len;
        }
        if start != text.len() {
            return Err(Error::param(format!(
                "phrases cover {start} symbols of a text of length {}",
                text.len()
            )));
        }
        Ok(Parsing { text, phrases, m })
    }

    pub(crate) fn from_phrases_unchecked(text: &'t Text, phrases: Vec<Phrase>, m: usize) -> Self {
        debug_assert!(phrases.iter().all(|p| p.len >= 1 && p.len <= m));
        debug_assert_eq!(phrases.iter().map(|p| p.len).sum::<usize>(), text.len());
        Parsing { text, phrases, m }
    }

    pub fn text(&self) -> &'t Text {
        self.text
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    /// The bound `m` the parsing respects.
    pub fn bound(&self) -> usize {
        self.m
    }

    /// Number of phrases `|Y|`.
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.phrases.iter().map(|p| p.len).collect()
    }

    /// Symbols of the `i`-th phrase.
    pub fn phrase_symbols(&self, i: usize) -> &'t [u8] {
        let p = self.phrases[i];
        &self.text.symbols()[p.start..p.end()]
    }

    /// Numbers the distinct phrases by first occurrence; returns the id of
    /// every phrase and the number of distinct phrases.
    pub fn phrase_ids(&self) -> (Vec<u32>, usize) {
        let mut ids: DetHashMap<&[u8], u32> = DetHashMap::default();
        let seq = (0..self.len())
            .map(|i| {
                let next = ids.len() as u32;
                *ids.entry(self.phrase_symbols(i)).or_insert(next)
            })
            .collect();
        (seq, ids.len())
    }
}

fn check_counter(counter: &SubstringCounter, text_len: usize, query_len: usize) -> Result<()> {
    if counter.text_len() != text_len {
        return Err(Error::param("counter was built for a different text"));
    }
    if counter.max_query_len() < query_len.min(text_len) {
        return Err(Error::param(format!(
            "counter answers queries up to length {}, {} needed",
            counter.max_query_len(),
            query_len
        )));
    }
    Ok(())
}

/// `-log₂((1/m)·cnt(y)/n)`.
pub fn cost_h0(counter: &SubstringCounter, phrase: Phrase, m: usize) -> Result<PhraseCost> {
    check_bound(m)?;
    if phrase.len > m {
        return Err(Error::param(format!(
            "phrase length {} exceeds bound {m}",
            phrase.len
        )));
    }
    let cnt = counter.count(phrase.start, phrase.len)?;
    Ok(PhraseCost(
        (m as f64 * counter.text_len() as f64 / cnt as f64).log2(),
    ))
}

/// `-log₂((1/m)·cnt(y'y)/cnt(y'))` for `phrase` directly preceded by `prev`.
pub fn cost_h1(
    counter: &SubstringCounter,
    prev: Phrase,
    phrase: Phrase,
    m: usize,
) -> Result<PhraseCost> {
    check_bound(m)?;
    if prev.end() != phrase.start {
        return Err(Error::param(
            "previous phrase must end where the phrase starts",
        ));
    }
    if phrase.len > m || prev.len > m {
        return Err(Error::param(format!("phrase length exceeds bound {m}")));
    }
    let context = counter.count(prev.start, prev.len)?;
    let joint = counter.count(prev.start, prev.len + phrase.len)?;
    Ok(PhraseCost(
        (m as f64 * context as f64 / joint as f64).log2(),
    ))
}

/// Sum of the phrase costs of `parsing` under `order`. With `H1` the first
/// phrase is charged its `H0` cost.
pub fn total_cost(
    parsing: &Parsing,
    counter: &SubstringCounter,
    m: usize,
    order: Order,
) -> Result<f64> {
    let phrases = parsing.phrases();
    let mut total = 0.0;
    for (i, &p) in phrases.iter().enumerate() {
        total += match (order, i) {
            (Order::H0, _) | (Order::H1, 0) => cost_h0(counter, p, m)?.0,
            (Order::H1, _) => cost_h1(counter, phrases[i - 1], p, m)?.0,
        };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load_text;
    use crate::substring_index::build_counter;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }

    fn ph(start: usize, len: usize) -> Phrase {
        Phrase { start, len }
    }

    #[test]
    fn h0_costs() {
        let t = load_text(b"aaaa");
        let c = build_counter(&t, 4).unwrap();
        assert!(close(
            cost_h0(&c, ph(0, 2), 2).unwrap().0,
            (8.0f64 / 3.0).log2()
        ));
        assert!(close(cost_h0(&c, ph(0, 2), 2).unwrap().0, 1.4150375));
        assert!(close(cost_h0(&c, ph(3, 1), 2).unwrap().0, 1.0));
        assert!(cost_h0(&c, ph(0, 3), 2).is_err());

        let t = load_text(b"abracadabra");
        let c = build_counter(&t, 4).unwrap();
        assert!(close(cost_h0(&c, ph(7, 4), 4).unwrap().0, 22f64.log2()));
    }

    #[test]
    fn h1_costs() {
        let t = load_text(b"abab");
        let c = build_counter(&t, 4).unwrap();
        assert!(close(cost_h1(&c, ph(0, 2), ph(2, 2), 2).unwrap().0, 2.0));

        let t = load_text(b"aaaa");
        let c = build_counter(&t, 4).unwrap();
        assert!(close(
            cost_h1(&c, ph(0, 1), ph(1, 1), 2).unwrap().0,
            (8.0f64 / 3.0).log2()
        ));

        // "b" is always followed by "c"
        let t = load_text(b"abcabc");
        let c = build_counter(&t, 2).unwrap();
        assert_eq!(cost_h1(&c, ph(1, 1), ph(2, 1), 1).unwrap().0, 0.0);
        assert!(cost_h1(&c, ph(0, 1), ph(2, 1), 1).is_err());
    }

    #[test]
    fn total_costs() {
        let t = load_text(b"aaaa");
        let c = build_counter(&t, 4).unwrap();
        let ones = Parsing::from_lengths(&t, &[1, 1, 1, 1], 2).unwrap();
        let twos = Parsing::from_lengths(&t, &[2, 2], 2).unwrap();
        assert!(close(total_cost(&ones, &c, 2, Order::H0).unwrap(), 4.0));
        assert!(close(
            total_cost(&twos, &c, 2, Order::H0).unwrap(),
            2.0 * (8.0f64 / 3.0).log2()
        ));
        // first phrase at H0 cost, the rest conditioned on "a"
        let h1 = 1.0 + 3.0 * (8.0f64 / 3.0).log2();
        assert!(close(total_cost(&ones, &c, 2, Order::H1).unwrap(), h1));
    }

    #[test]
    fn parsing_validation() {
        let t = load_text(b"abcde");
        assert!(Parsing::from_lengths(&t, &[2, 3], 3).is_ok());
        assert!(Parsing::from_lengths(&t, &[2, 2], 3).is_err());
        assert!(Parsing::from_lengths(&t, &[1, 4], 3).is_err());
        assert!(Parsing::from_lengths(&t, &[0, 5], 5).is_err());
        assert!(Parsing::from_lengths(&t, &[5], 0).is_err());
        let p = Parsing::from_lengths(&t, &[2, 3], 3).unwrap();
        assert_eq!(p.phrases()[1], ph(2, 3));
        assert_eq!(p.phrase_symbols(1), &[2, 3, 4]);
    }

    #[test]
    fn phrase_ids_first_occurrence() {
        let t = load_text(b"abxyab");
        let p = Parsing::from_lengths(&t, &[2, 2, 2], 2).unwrap();
        assert_eq!(p.phrase_ids(), (vec![0, 1, 0], 2));
    }
}
