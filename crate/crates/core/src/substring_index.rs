//! Occurrence counts `cnt(w)` for the substrings of a text.
//!
//! Substrings are grouped into equivalence classes one length at a time: the
//! classes of length `ℓ + 1` refine those of length `ℓ` by the following
//! symbol. After `L` refinement rounds every `(start, len ≤ L)` query is a
//! single table lookup.

use crate::corpus::Text;
use crate::error::{check_range, Error, Result};

/// Equivalence classes of all length-`len` substrings of a symbol sequence.
///
/// `class(p) == class(q)` iff `S[p..p+len) == S[q..q+len)`.
pub(crate) struct SubstringClasses<'a> {
    symbols: &'a [u8],
    len: usize,
    classes: Vec<u32>,
    sizes: Vec<u32>,
    order: Vec<u32>,
}

impl<'a> SubstringClasses<'a> {
    /// Classes of the length-1 substrings, i.e. the symbols themselves.
    pub(crate) fn new(symbols: &'a [u8]) -> Self {
        assert!(symbols.len() < u32::MAX as usize, "text too long");
        let mut sizes = vec![0u32; 256];
        for &s in symbols {
            sizes[s as usize] += 1;
        }
        SubstringClasses {
            symbols,
            len: if symbols.is_empty() { 0 } else { 1 },
            classes: symbols.iter().map(|&s| s as u32).collect(),
            sizes,
            order: Vec::new(),
        }
    }

    /// Current substring length.
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// Class of every start position `0..=n-len`.
    pub(crate) fn classes(&self) -> &[u32] {
        &self.classes
    }

    /// Occurrence count of each class id.
    pub(crate) fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Refines to length `len + 1`. Returns false once `len == n`.
    pub(crate) fn extend(&mut self) -> bool {
        let n = self.symbols.len();
        if self.len == 0 || self.len >= n {
            return false;
        }
        let starts = n - self.len;

        // Bucket the surviving start positions by their current class.
        let mut bucket = vec![0u32; self.sizes.len() + 1];
        for &c in &self.classes[..starts] {
            bucket[c as usize + 1] += 1;
        }
        for i in 1..bucket.len() {
            bucket[i] += bucket[i - 1];
        }
        self.order.clear();
        self.order.resize(starts, 0);
        for p in 0..starts {
            let c = self.classes[p] as usize;
            self.order[bucket[c] as usize] = p as u32;
            bucket[c] += 1;
        }

        // Within a bucket, split by the next symbol.
        let mut stamp_class = [u32::MAX; 256];
        let mut stamp_id = [0u32; 256];
        let mut next = vec![0u32; starts];
        let mut sizes = Vec::new();
        for &p in &self.order {
            let p = p as usize;
            let c = self.classes[p];
            let a = self.symbols[p + self.len] as usize;
            let id = if stamp_class[a] == c {
                stamp_id[a]
            } else {
                stamp_class[a] = c;
                stamp_id[a] = sizes.len() as u32;
                sizes.push(0);
                stamp_id[a]
            };
            next[p] = id;
            sizes[id as usize] += 1;
        }
        self.classes = next;
        self.sizes = sizes;
        self.len += 1;
        true
    }
}

/// Answers `cnt(S[start..start+len))` for all `len ≤ max_query_len`.
#[derive(Clone, Debug)]
pub struct SubstringCounter {
    n: usize,
    max_query_len: usize,
    levels: usize,
    // counts[(len - 1) * n + start]
    counts: Vec<u32>,
}

/// Preprocesses `text` for occurrence queries of length up to `max_query_len`.
pub fn build_counter(text: &Text, max_query_len: usize) -> Result<SubstringCounter> {
    if max_query_len == 0 {
        return Err(Error::param("max_query_len must be at least 1"));
    }
    let symbols = text.symbols();
    let n = symbols.len();
    let levels = max_query_len.min(n);
    let mut counts = vec![0u32; levels * n];
    let mut classes = SubstringClasses::new(symbols);
    for len in 1..=levels {
        debug_assert_eq!(classes.len(), len);
        let row = &mut counts[(len - 1) * n..len * n];
        let sizes = classes.sizes();
        for (slot, &c) in row.iter_mut().zip(classes.classes()) {
            *slot = sizes[c as usize];
        }
        if len < levels {
            classes.extend();
        }
    }
    Ok(SubstringCounter {
        n,
        max_query_len,
        levels,
        counts,
    })
}

impl SubstringCounter {
    pub fn max_query_len(&self) -> usize {
        self.max_query_len
    }

    /// Length of the indexed text.
    pub fn text_len(&self) -> usize {
        self.n
    }

    /// Number of occurrences of `S[start..start+len)` in `S`; always ≥ 1.
    pub fn count(&self, start: usize, len: usize) -> Result<u32> {
        if len == 0 || len > self.max_query_len {
            return Err(Error::param(format!(
                "query length {len} outside 1..={}",
                self.max_query_len
            )));
        }
        check_range(start, len, self.n)?;
        Ok(self.get(start, len))
    }

    #[inline]
    pub(crate) fn get(&self, start: usize, len: usize) -> u32 {
        debug_assert!(len >= 1 && len <= self.levels && start + len <= self.n);
        self.counts[(len - 1) * self.n + start]
    }
}
