//! Canonical prefix codes and their compact serialisation.
//!
//! A codebook is serialised as two lists. `C′` holds the codewords with a
//! leading `1` bit prepended, read as binary numbers, sorted and
//! difference-coded with Elias Delta. `L` holds the symbol of each
//! codeword in that order, coded as signed differences.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::bits::{BitReader, BitWriter};
use super::elias::{read_delta, read_delta_usize_minus_one, write_delta};
use crate::error::{Error, Result};

/// Longest supported codeword.
pub const MAX_CODE_LEN: u8 = 63;

/// Optimal prefix-code lengths for `freqs` (Huffman's construction).
///
/// A single symbol gets the empty codeword: its occurrences cost no bits
/// because the decoder knows how many symbols to produce.
pub fn code_lengths(freqs: &[u64]) -> Vec<u8> {
    match freqs.len() {
        0 => return Vec::new(),
        1 => return vec![0],
        _ => {}
    }
    let leaves = freqs.len();
    let mut parent = vec![usize::MAX; 2 * leaves - 1];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = freqs
        .iter()
        .enumerate()
        .map(|(i, &f)| Reverse((f, i)))
        .collect();
    let mut next = leaves;
    while heap.len() > 1 {
        let Reverse((wa, a)) = heap.pop().unwrap();
        let Reverse((wb, b)) = heap.pop().unwrap();
        parent[a] = next;
        parent[b] = next;
        heap.push(Reverse((wa + wb, next)));
        next += 1;
    }
    // parents are created after their children, so walk from the root down
    let mut depth = vec![0u8; 2 * leaves - 1];
    for node in (0..2 * leaves - 2).rev() {
        depth[node] = depth[parent[node]] + 1;
    }
    depth.truncate(leaves);
    assert!(
        depth.iter().all(|&d| d <= MAX_CODE_LEN),
        "code length limit exceeded"
    );
    depth
}

/// A canonical prefix code. Entries are kept in code order, which for a
/// canonical code is ascending `(length, code)`; `symbols()` is the list `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodeBook {
    symbols: Vec<u32>,
    lengths: Vec<u8>,
    codes: Vec<u64>,
}

/// Builds the canonical Huffman code for `(symbol, frequency)` pairs.
///
/// Codewords of equal length are handed out in ascending symbol order.
pub fn build_codebook(freqs: &[(u32, u64)]) -> Result<CodeBook> {
    if freqs.is_empty() {
        return Err(Error::param("codebook needs at least one symbol"));
    }
    let weights: Vec<u64> = freqs.iter().map(|&(_, f)| f).collect();
    let lengths = code_lengths(&weights);
    let mut entries: Vec<(u8, u32)> = lengths
        .iter()
        .zip(freqs)
        .map(|(&len, &(sym, _))| (len, sym))
        .collect();
    entries.sort_unstable();
    if entries.windows(2).any(|w| w[0].1 == w[1].1) {
        return Err(Error::param("duplicate symbol in codebook"));
    }
    Ok(CodeBook::canonical(entries))
}

impl CodeBook {
    /// Assigns canonical codes to `(length, symbol)` entries sorted by
    /// length.
    fn canonical(entries: Vec<(u8, u32)>) -> Self {
        let mut codes = Vec::with_capacity(entries.len());
        let mut code = 0u64;
        let mut prev_len = entries.first().map_or(0, |e| e.0);
        for (i, &(len, _)) in entries.iter().enumerate() {
            if i > 0 {
                code = (code + 1) << (len - prev_len);
            }
            codes.push(code);
            prev_len = len;
        }
        CodeBook {
            symbols: entries.iter().map(|e| e.1).collect(),
            lengths: entries.iter().map(|e| e.0).collect(),
            codes,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The letter order `L`: symbols in codeword order.
    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn lengths(&self) -> &[u8] {
        &self.lengths
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    /// `(symbol, code, length)` in code order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u64, u8)> + '_ {
        self.symbols
            .iter()
            .zip(&self.codes)
            .zip(&self.lengths)
            .map(|((&s, &c), &l)| (s, c, l))
    }

    /// `Σ 2^(-len)`; at most 1 for a prefix code.
    pub fn kraft_sum(&self) -> f64 {
        self.lengths.iter().map(|&l| (-(l as f64)).exp2()).sum()
    }

    /// The 1-prefixed codeword numbers `C`, ascending.
    pub fn code_numbers(&self) -> impl Iterator<Item = u64> + '_ {
        self.codes
            .iter()
            .zip(&self.lengths)
            .map(|(&c, &l)| (1u64 << l) | c)
    }

    /// Rebuilds a codebook from its codeword numbers and letter order,
    /// checking that the code is canonical.
    pub fn from_parts(numbers: &[u64], symbols: Vec<u32>) -> Result<Self> {
        if numbers.len() != symbols.len() {
            return Err(Error::format("code list and letter order differ in length"));
        }
        let mut entries = Vec::with_capacity(numbers.len());
        for &num in numbers {
            let len = 63 - num.leading_zeros() as u8;
            if num == 0 || len > MAX_CODE_LEN {
                return Err(Error::format("invalid codeword number"));
            }
            entries.push(len);
        }
        let book = CodeBook::canonical(entries.iter().copied().zip(symbols).collect());
        if !book.code_numbers().eq(numbers.iter().copied())
            || book
                .codes
                .iter()
                .zip(&book.lengths)
                .any(|(&c, &l)| c >> l != 0)
            || (book.lengths.contains(&0) && book.len() != 1)
        {
            return Err(Error::format("codebook is not canonical"));
        }
        let mut seen = book.symbols.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::format("duplicate symbol in letter order"));
        }
        Ok(book)
    }
}

/// Writes `C′`: the first codeword number, then successive differences.
pub fn write_code_list(w: &mut BitWriter, book: &CodeBook) {
    let mut prev = 0u64;
    for num in book.code_numbers() {
        write_delta(w, (num - prev) as u128);
        prev = num;
    }
}

pub fn read_code_list(r: &mut BitReader, count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count.min(1 << 20));
    let mut prev = 0u64;
    for _ in 0..count {
        let d = u64::try_from(read_delta(r)?).map_err(|_| Error::format("codeword too long"))?;
        prev = prev
            .checked_add(d)
            .ok_or_else(|| Error::format("codeword too long"))?;
        out.push(prev);
    }
    Ok(out)
}

/// Writes a letter order `L`: `L[0] + 1`, then for every later entry a
/// sign bit and a magnitude. Sign 0 is a positive difference `d` coded as
/// `d`; sign 1 is a difference `d ≤ 0` coded as `1 - d`.
pub fn write_letter_order(w: &mut BitWriter, letters: &[u32]) {
    let Some((&first, rest)) = letters.split_first() else {
        return;
    };
    write_delta(w, first as u128 + 1);
    let mut prev = first as i64;
    for &l in rest {
        let d = l as i64 - prev;
        if d > 0 {
            w.write_bit(false);
            write_delta(w, d as u128);
        } else {
            w.write_bit(true);
            write_delta(w, (1 - d) as u128);
        }
        prev = l as i64;
    }
}

pub fn read_letter_order(r: &mut BitReader, count: usize) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(count.min(1 << 20));
    if count == 0 {
        return Ok(out);
    }
    let first = read_delta_usize_minus_one(r)?;
    let mut prev = i64::try_from(first).map_err(|_| Error::format("letter out of range"))?;
    push_letter(&mut out, prev)?;
    for _ in 1..count {
        let negative = r.read_bit()?;
        let mag =
            i64::try_from(read_delta(r)?).map_err(|_| Error::format("letter out of range"))?;
        prev += if negative { 1 - mag } else { mag };
        push_letter(&mut out, prev)?;
    }
    Ok(out)
}

fn push_letter(out: &mut Vec<u32>, v: i64) -> Result<()> {
    out.push(u32::try_from(v).map_err(|_| Error::format("letter out of range"))?);
    Ok(())
}

/// Standalone serialisation: `|book| + 1`, `C′`, then `L`.
pub fn codebook_encode(book: &CodeBook) -> BitWriter {
    let mut w = BitWriter::new();
    write_delta(&mut w, book.len() as u128 + 1);
    write_code_list(&mut w, book);
    write_letter_order(&mut w, book.symbols());
    w
}

pub fn codebook_decode(bits: &BitWriter) -> Result<CodeBook> {
    let mut r = BitReader::new(bits.as_bytes(), bits.len());
    let count = read_delta_usize_minus_one(&mut r)?;
    let numbers = read_code_list(&mut r, count)?;
    let letters = read_letter_order(&mut r, count)?;
    CodeBook::from_parts(&numbers, letters)
}

/// Canonical decoding tables for one or more codebooks, stored flat.
///
/// For every codeword length present in a book, a level records the first
/// code of that length, how many codes have it and where their symbols
/// start; decoding compares once per level.
#[derive(Clone, Debug)]
pub struct DecodeTables {
    levels: Vec<Level>,
    level_start: Vec<u32>,
    symbols: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
struct Level {
    len: u8,
    count: u32,
    first_code: u64,
    first_index: u32,
}

impl Default for DecodeTables {
    fn default() -> Self {
        Self::new()
    }
}

impl DecodeTables {
    pub fn new() -> Self {
        DecodeTables {
            levels: Vec::new(),
            level_start: vec![0],
            symbols: Vec::new(),
        }
    }

    /// Adds `book` (canonical) and returns its index. Empty books are
    /// allowed and decode nothing.
    pub fn push(&mut self, book: &CodeBook) -> usize {
        let base = self.symbols.len() as u32;
        self.symbols.extend_from_slice(book.symbols());
        let mut i = 0;
        while i < book.len() {
            let len = book.lengths[i];
            let j = i + book.lengths[i..].iter().take_while(|&&l| l == len).count();
            self.levels.push(Level {
                len,
                count: (j - i) as u32,
                first_code: book.codes[i],
                first_index: base + i as u32,
            });
            i = j;
        }
        self.level_start.push(self.levels.len() as u32);
        self.level_start.len() - 2
    }

    pub fn books(&self) -> usize {
        self.level_start.len() - 1
    }

    /// Whether book `book` has no symbols.
    pub fn is_empty_book(&self, book: usize) -> bool {
        self.level_start[book] == self.level_start[book + 1]
    }

    /// Decodes one symbol of book `book` from `r`.
    pub fn decode(&self, book: usize, r: &mut BitReader) -> Result<u32> {
        let levels =
            &self.levels[self.level_start[book] as usize..self.level_start[book + 1] as usize];
        let mut code = 0u64;
        let mut len = 0u8;
        for level in levels {
            while len < level.len {
                code = (code << 1) | r.read_bit()? as u64;
                len += 1;
            }
            let offset = code.wrapping_sub(level.first_code);
            if offset < level.count as u64 {
                return Ok(self.symbols[(level.first_index as u64 + offset) as usize]);
            }
        }
        Err(Error::format("invalid codeword"))
    }
}
