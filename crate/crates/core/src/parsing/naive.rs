use super::{check_bound, Order, Parsing, Phrase};
use crate::corpus::Text;
use crate::entropy::{parsing_h0, parsing_h1};
use crate::error::{Error, Result};

/// Fixed-length parsing: a first phrase of length `offset` (omitted when
/// 0), then phrases of length `l`, the last one taking whatever remains.
pub fn naive_parsing(text: &Text, l: usize, offset: usize) -> Result<Parsing<'_>> {
    check_bound(l)?;
    if offset >= l {
        return Err(Error::param(format!("offset {offset} must be below {l}")));
    }
    let n = text.len();
    let mut phrases = Vec::with_capacity(n / l + 2);
    let mut start = 0;
    if offset > 0 && n > 0 {
        let len = offset.min(n);
        phrases.push(Phrase { start, len });
        start += len;
    }
    while start < n {
        let len = l.min(n - start);
        phrases.push(Phrase { start, len });
        start += len;
    }
    Ok(Parsing::from_phrases_unchecked(text, phrases, l))
}

/// Evaluates the `l` naive parsings and returns the one with the smallest
/// `|B|H₀(B)` (or `|B|H₁(B)`) together with that entropy in bits. Ties go
/// to the smallest offset.
pub fn best_naive(text: &Text, l: usize, order: Order) -> Result<(Parsing<'_>, f64)> {
    check_bound(l)?;
    let mut best: Option<(Parsing, f64)> = None;
    for offset in 0..l {
        let parsing = naive_parsing(text, l, offset)?;
        let bits = match order {
            Order::H0 => parsing_h0(&parsing).0,
            Order::H1 => parsing_h1(&parsing).0,
        };
        if best.as_ref().is_none_or(|(_, b)| bits < *b) {
            best = Some((parsing, bits));
        }
        if offset >= text.len() {
            // every remaining offset yields the same single phrase
            break;
        }
    }
    Ok(best.expect("l >= 1"))
}
