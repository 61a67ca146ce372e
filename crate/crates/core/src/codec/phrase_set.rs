//! The set of distinct phrases, stored as sorted base-`(σ+1)` numbers.
//!
//! Symbol `s` becomes digit `s + 1`, so no phrase number has a zero digit
//! and different phrases never collide. The sorted numbers are written as
//! the first value followed by the successive differences.

use super::bits::{BitReader, BitWriter};
use super::elias::{read_delta, read_delta_usize_minus_one, write_delta};
use crate::error::{Error, Result};

/// Number of phrase `phrase` over an alphabet of `sigma` symbols, or `None`
/// if it does not fit in 128 bits.
pub fn phrase_number(phrase: &[u8], sigma: usize) -> Option<u128> {
    let base = sigma as u128 + 1;
    phrase.iter().try_fold(0u128, |acc, &s| {
        debug_assert!((s as usize) < sigma);
        acc.checked_mul(base)?.checked_add(s as u128 + 1)
    })
}

/// Inverse of [`phrase_number`]; fails on a zero digit.
pub fn number_to_phrase(mut number: u128, sigma: usize) -> Result<Vec<u8>> {
    let base = sigma as u128 + 1;
    let mut out = Vec::new();
    while number > 0 {
        let digit = number % base;
        if digit == 0 {
            return Err(Error::format("phrase number has a zero digit"));
        }
        out.push((digit - 1) as u8);
        number /= base;
    }
    out.reverse();
    Ok(out)
}

/// Longest phrase whose number is guaranteed to fit for alphabet size
/// `sigma`.
pub fn max_phrase_len(sigma: usize) -> usize {
    let base = sigma.max(1) as f64 + 1.0;
    // largest number of length k is (σ+1)^k - 1
    (128.0 / base.log2()).floor() as usize
}

/// Distinct phrases in ascending number order; the position of a phrase is
/// its symbol in the encoded parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhraseSet {
    sigma: usize,
    data: Vec<u8>,
    ends: Vec<usize>,
}

impl PhraseSet {
    /// Sorts `phrases` into number order. Fails on empty, duplicate or
    /// oversized phrases.
    pub fn new<'p, I>(phrases: I, sigma: usize) -> Result<Self>
    where
        I: IntoIterator<Item = &'p [u8]>,
    {
        let mut keyed = Vec::new();
        for p in phrases {
            if p.is_empty() {
                return Err(Error::param("empty phrase"));
            }
            if p.iter().any(|&s| s as usize >= sigma) {
                return Err(Error::param("phrase symbol outside the alphabet"));
            }
            let num = phrase_number(p, sigma).ok_or_else(|| {
                Error::param(format!(
                    "phrase of length {} too long for alphabet size {sigma}",
                    p.len()
                ))
            })?;
            keyed.push((num, p));
        }
        keyed.sort_unstable_by_key(|e| e.0);
        if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::param("duplicate phrase"));
        }
        let mut set = PhraseSet {
            sigma,
            ..Default::default()
        };
        for (_, p) in keyed {
            set.push(p);
        }
        Ok(set)
    }

    fn push(&mut self, phrase: &[u8]) {
        self.data.extend_from_slice(phrase);
        self.ends.push(self.data.len());
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn get(&self, i: usize) -> &[u8] {
        let start = if i == 0 { 0 } else { self.ends[i - 1] };
        &self.data[start..self.ends[i]]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// Length of the longest phrase.
    pub fn max_len(&self) -> usize {
        self.iter().map(<[u8]>::len).max().unwrap_or(0)
    }

    pub fn numbers(&self) -> impl Iterator<Item = u128> + '_ {
        self.iter()
            .map(|p| phrase_number(p, self.sigma).expect("checked on construction"))
    }

    /// Appends `|set| + 1` and `P′`.
    pub fn write(&self, w: &mut BitWriter) {
        write_delta(w, self.len() as u128 + 1);
        let mut prev = 0;
        for num in self.numbers() {
            write_delta(w, num - prev);
            prev = num;
        }
    }

    pub fn read(r: &mut BitReader, sigma: usize) -> Result<Self> {
        let count = read_delta_usize_minus_one(r)?;
        let mut set = PhraseSet {
            sigma,
            ..Default::default()
        };
        let mut prev = 0u128;
        for _ in 0..count {
            prev = prev
                .checked_add(read_delta(r)?)
                .ok_or_else(|| Error::format("phrase number overflow"))?;
            set.push(&number_to_phrase(prev, sigma)?);
        }
        Ok(set)
    }
}

/// Standalone serialisation of a phrase set.
pub fn phrase_set_encode(phrases: &[&[u8]], sigma: usize) -> Result<BitWriter> {
    let mut w = BitWriter::new();
    PhraseSet::new(phrases.iter().copied(), sigma)?.write(&mut w);
    Ok(w)
}

/// Decodes a phrase set; phrases come back in number order.
pub fn phrase_set_decode(bits: &BitWriter, sigma: usize) -> Result<Vec<Vec<u8>>> {
    let mut r = BitReader::new(bits.as_bytes(), bits.len());
    Ok(PhraseSet::read(&mut r, sigma)?
        .iter()
        .map(<[u8]>::to_vec)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn example_numbers() {
        // a = 0, b = 1 over σ = 3
        let set = PhraseSet::new([&[0u8][..], &[0, 1], &[1, 0]], 3).unwrap();
        assert_eq!(set.numbers().collect::<Vec<_>>(), vec![1, 6, 9]);
        let bits = phrase_set_encode(&[&[1, 0], &[0], &[0, 1]], 3).unwrap();
        let mut expect = BitWriter::new();
        for v in [4, 1, 5, 3] {
            write_delta(&mut expect, v);
        }
        assert_eq!(bits, expect);
        assert_eq!(
            phrase_set_decode(&bits, 3).unwrap(),
            vec![vec![0], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn single_phrase() {
        let bits = phrase_set_encode(&[&[0]], 1).unwrap();
        let mut expect = BitWriter::new();
        write_delta(&mut expect, 2);
        write_delta(&mut expect, 1);
        assert_eq!(bits, expect);
    }

    #[test]
    fn errors() {
        assert!(PhraseSet::new([&[0u8][..], &[0]], 2).is_err());
        assert!(PhraseSet::new([&[][..]], 2).is_err());
        assert!(PhraseSet::new([&[2u8][..]], 2).is_err());
        assert!(PhraseSet::new([&[255u8; 16][..]], 256).is_err());
        assert!(PhraseSet::new([&[255u8; 15][..]], 256).is_ok());
        assert_eq!(max_phrase_len(256), 15);
        assert!(number_to_phrase(4, 3).is_err());
    }

    #[test]
    fn longer_phrases_sort_after_shorter() {
        let set = PhraseSet::new([&[0u8, 0][..], &[2], &[1]], 3).unwrap();
        assert_eq!(set.get(0), &[1]);
        assert_eq!(set.get(1), &[2]);
        assert_eq!(set.get(2), &[0, 0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(
            sigma in 1usize..=256,
            raw in proptest::collection::btree_set(proptest::collection::vec(any::<u8>(), 1..8), 0..40),
        ) {
            let phrases: BTreeSet<Vec<u8>> = raw
                .into_iter()
                .map(|p| p.into_iter().map(|b| (b as usize % sigma) as u8).collect())
                .collect();
            let refs: Vec<&[u8]> = phrases.iter().map(Vec::as_slice).collect();
            let decoded = phrase_set_decode(&phrase_set_encode(&refs, sigma).unwrap(), sigma).unwrap();
            prop_assert_eq!(decoded.iter().cloned().collect::<BTreeSet<_>>(), phrases);
            let nums: Vec<u128> = decoded.iter().map(|p| phrase_number(p, sigma).unwrap()).collect();
            prop_assert!(nums.windows(2).all(|w| w[0] < w[1]));
            for (p, &n) in decoded.iter().zip(&nums) {
                prop_assert_eq!(&number_to_phrase(n, sigma).unwrap(), p);
            }
        }
    }
}
