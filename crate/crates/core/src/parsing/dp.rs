use super::{check_bound, check_counter, Parsing, Phrase};
use crate::corpus::Text;
use crate::error::Result;
use crate::substring_index::SubstringCounter;

/// Finds the `m`-bounded parsing of `text` minimising the sum of
/// [`cost_h0`](super::cost_h0) over its phrases, in `O(n·m)` time.
///
/// `dp(i) = min_{1≤j≤m} dp(i-j) + cost(S[i-j..i))`. Among transitions of
/// equal cost the longest phrase wins. The counter must answer queries of
/// length `m`. Returns the parsing and its total cost; an empty text gives
/// an empty parsing of cost 0.
pub fn parse_h0_optimal<'t>(
    text: &'t Text,
    m: usize,
    counter: &SubstringCounter,
) -> Result<(Parsing<'t>, f64)> {
    check_bound(m)?;
    let n = text.len();
    check_counter(counter, n, m)?;
    if n == 0 {
        return Ok((Parsing::from_phrases_unchecked(text, Vec::new(), m), 0.0));
    }

    let scale = m as f64 * n as f64;
    let mut best = vec![f64::INFINITY; n + 1];
    let mut choice = vec![0u8; n + 1];
    best[0] = 0.0;
    for i in 1..=n {
        let mut b = f64::INFINITY;
        let mut arg = 0;
        for j in (1..=m.min(i)).rev() {
            let cnt = counter.get(i - j, j);
            let cand = best[i - j] + (scale / cnt as f64).log2();
            if cand < b {
                b = cand;
                arg = j;
            }
        }
        best[i] = b;
        choice[i] = arg as u8;
    }

    let mut lens = Vec::new();
    let mut i = n;
    while i > 0 {
        let j = choice[i] as usize;
        lens.push(j);
        i -= j;
    }
    Ok((phrases_from_reversed(text, lens, m), best[n]))
}

/// Finds the `m`-bounded parsing minimising the first phrase's
/// [`cost_h0`](super::cost_h0) plus every later phrase's
/// [`cost_h1`](super::cost_h1) given its predecessor, in `O(n·m²)` time.
///
/// `dp(i, u)` is the cheapest parsing of `S[..i)` whose last phrase has
/// length `u`; it is minimised over the length `v` of the phrase before.
/// Ties prefer the longer phrase at every step. The counter must answer
/// queries of length `2m`.
pub fn parse_h1_optimal<'t>(
    text: &'t Text,
    m: usize,
    counter: &SubstringCounter,
) -> Result<(Parsing<'t>, f64)> {
    check_bound(m)?;
    let n = text.len();
    check_counter(counter, n, 2 * m)?;
    if n == 0 {
        return Ok((Parsing::from_phrases_unchecked(text, Vec::new(), m), 0.0));
    }

    let h0_scale = m as f64 * n as f64;
    let mf = m as f64;
    // dp[i * m + (u - 1)], back[...] = v (0 marks the first phrase)
    let mut dp = vec![f64::INFINITY; (n + 1) * m];
    let mut back = vec![0u8; (n + 1) * m];
    for i in 1..=n {
        for u in 1..=m.min(i) {
            let slot = i * m + u - 1;
            if u == i {
                dp[slot] = (h0_scale / counter.get(0, u) as f64).log2();
                continue;
            }
            let j = i - u;
            let mut b = f64::INFINITY;
            let mut arg = 0;
            for v in (1..=m.min(j)).rev() {
                let prev = dp[j * m + v - 1];
                if prev == f64::INFINITY {
                    continue;
                }
                let context = counter.get(j - v, v);
                let joint = counter.get(j - v, v + u);
                let cand = prev + (mf * context as f64 / joint as f64).log2();
                if cand < b {
                    b = cand;
                    arg = v;
                }
            }
            dp[slot] = b;
            back[slot] = arg as u8;
        }
    }

    let mut best = f64::INFINITY;
    let mut last = 0;
    for u in (1..=m.min(n)).rev() {
        if dp[n * m + u - 1] < best {
            best = dp[n * m + u - 1];
            last = u;
        }
    }
    let mut lens = Vec::new();
    let (mut i, mut u) = (n, last);
    while i > 0 {
        lens.push(u);
        let v = back[i * m + u - 1] as usize;
        i -= u;
        u = v;
    }
    Ok((phrases_from_reversed(text, lens, m), best))
}

fn phrases_from_reversed(text: &Text, mut lens: Vec<usize>, m: usize) -> Parsing<'_> {
    lens.reverse();
    let mut start = 0;
    let phrases = lens
        .into_iter()
        .map(|len| {
            let p = Phrase { start, len };
            start += len;
            p
        })
        .collect();
    Parsing::from_phrases_unchecked(text, phrases, m)
}
