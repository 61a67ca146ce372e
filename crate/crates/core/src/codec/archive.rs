//! The compressed file format and the H0/H1 compression pipelines.
//!
//! Layout: `"BFPC"`, version `0x01`, variant (`0x00` H0, `0x01` H1), then a
//! bit stream holding `δ(n+1) δ(σ+1) δ(m)`, padding, the σ alphabet bytes
//! and the sections `[PhraseSet, Dictionary, FirstPhrase (H1), Payload]`.
//! Every section is `δ(bits+1)`, padding, the section bits, padding, where
//! `δ` is Elias Delta.

use serde::Serialize;

use super::bits::{BitReader, BitWriter};
use super::elias::{read_delta_usize_minus_one, write_delta};
use super::huffman::{
    build_codebook, read_code_list, read_letter_order, write_code_list, write_letter_order,
    CodeBook, DecodeTables,
};
use super::phrase_set::PhraseSet;
use crate::corpus::{Alphabet, Text};
use crate::entropy::DetHashMap;
use crate::error::{Error, Result};
use crate::parsing::{check_bound, parse_h0_optimal, parse_h1_optimal, Order, Parsing};
use crate::substring_index::build_counter;

pub const MAGIC: &[u8; 4] = b"BFPC";
pub const VERSION: u8 = 1;

/// A compressed text, kept as its serialised sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Archive {
    order: Order,
    n: usize,
    m: usize,
    alphabet: Alphabet,
    phrase_set: BitWriter,
    dictionary: BitWriter,
    first_phrase: BitWriter,
    payload: BitWriter,
}

/// Sizes of an archive in bits and in bits per text symbol. With `n = 0`
/// the per-symbol figures are reported as zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub total_bits: u64,
    pub string_bits: u64,
    pub dict_bits: u64,
    pub total_bps: f64,
    pub string_bps: f64,
    pub dict_bps: f64,
}

impl Archive {
    pub fn order(&self) -> Order {
        self.order
    }

    /// Length of the original text.
    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> usize {
        self.m
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn payload(&self) -> &BitWriter {
        &self.payload
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(6);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(match self.order {
            Order::H0 => 0,
            Order::H1 => 1,
        });
        let mut w = BitWriter::new();
        write_delta(&mut w, self.n as u128 + 1);
        write_delta(&mut w, self.alphabet.size() as u128 + 1);
        write_delta(&mut w, self.m as u128);
        w.align();
        for &b in self.alphabet.table() {
            w.write_bits(b as u64, 8);
        }
        for section in self.sections() {
            write_section(&mut w, section);
        }
        out.extend_from_slice(w.as_bytes());
        out
    }

    fn sections(&self) -> Vec<&BitWriter> {
        let mut s = vec![&self.phrase_set, &self.dictionary];
        if self.order == Order::H1 {
            s.push(&self.first_phrase);
        }
        s.push(&self.payload);
        s
    }

    /// Parses an archive occupying all of `bytes`.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (archive, used) = Self::read_prefix(bytes)?;
        if used != bytes.len() {
            return Err(Error::format("trailing data after archive"));
        }
        Ok(archive)
    }

    /// Parses an archive at the start of `bytes`; returns it with the
    /// number of bytes it occupies.
    pub fn read_prefix(bytes: &[u8]) -> Result<(Self, usize)> {
        if bytes.len() < 6 || &bytes[..4] != MAGIC {
            return Err(Error::format("not a BFPC archive"));
        }
        if bytes[4] != VERSION {
            return Err(Error::format(format!("unsupported version {}", bytes[4])));
        }
        let order = match bytes[5] {
            0 => Order::H0,
            1 => Order::H1,
            v => return Err(Error::format(format!("unknown variant {v}"))),
        };
        let body = &bytes[6..];
        let mut r = BitReader::new(body, body.len() as u64 * 8);
        let n = read_delta_usize_minus_one(&mut r)?;
        let sigma = read_delta_usize_minus_one(&mut r)?;
        let m = read_delta_usize_minus_one(&mut r)? + 1;
        if sigma > 256 {
            return Err(Error::format("alphabet larger than 256"));
        }
        check_bound(m).map_err(|_| Error::format("phrase bound out of range"))?;
        r.align();
        let table = r.take_aligned(sigma as u64 * 8)?;
        let alphabet =
            Alphabet::from_table(table).ok_or_else(|| Error::format("repeated alphabet byte"))?;
        let phrase_set = read_section(&mut r)?;
        let dictionary = read_section(&mut r)?;
        let first_phrase = match order {
            Order::H0 => BitWriter::new(),
            Order::H1 => read_section(&mut r)?,
        };
        let payload = read_section(&mut r)?;
        let used = 6 + (r.position() / 8) as usize;
        Ok((
            Archive {
                order,
                n,
                m,
                alphabet,
                phrase_set,
                dictionary,
                first_phrase,
                payload,
            },
            used,
        ))
    }

    pub fn size_report(&self) -> SizeReport {
        let total_bits = self.to_bytes().len() as u64 * 8;
        let string_bits = self.payload.len();
        let dict_bits = self.phrase_set.len() + self.dictionary.len() + self.first_phrase.len();
        let per = |bits: u64| {
            if self.n == 0 {
                0.0
            } else {
                bits as f64 / self.n as f64
            }
        };
        SizeReport {
            n: self.n,
            total_bits,
            string_bits,
            dict_bits,
            total_bps: per(total_bits),
            string_bps: per(string_bits),
            dict_bps: per(dict_bits),
        }
    }

    pub fn decompress(&self) -> Result<Vec<u8>> {
        let set = self.read_phrase_set()?;
        let phrase_bytes: Vec<Vec<u8>> = set
            .iter()
            .map(|p| p.iter().map(|&s| self.alphabet.byte(s)).collect())
            .collect();
        let mut out = Vec::with_capacity(self.n);
        let mut payload = BitReader::new(self.payload.as_bytes(), self.payload.len());
        match self.order {
            Order::H0 => {
                let book = self.read_h0_codebook(set.len())?;
                let mut tables = DecodeTables::new();
                tables.push(&book);
                while out.len() < self.n {
                    let id = tables.decode(0, &mut payload)?;
                    out.extend_from_slice(&phrase_bytes[id as usize]);
                }
            }
            Order::H1 => {
                let tables = self.read_h1_tables(set.len())?;
                if self.n > 0 {
                    let mut r =
                        BitReader::new(self.first_phrase.as_bytes(), self.first_phrase.len());
                    let mut prev = read_delta_usize_minus_one(&mut r)?;
                    if prev >= set.len() || r.remaining() != 0 {
                        return Err(Error::format("invalid first phrase"));
                    }
                    out.extend_from_slice(&phrase_bytes[prev]);
                    while out.len() < self.n {
                        prev = tables.decode(prev, &mut payload)? as usize;
                        out.extend_from_slice(&phrase_bytes[prev]);
                    }
                }
            }
        }
        if out.len() != self.n || payload.remaining() != 0 {
            return Err(Error::format("payload does not match the text length"));
        }
        Ok(out)
    }

    pub(crate) fn read_phrase_set(&self) -> Result<PhraseSet> {
        let mut r = BitReader::new(self.phrase_set.as_bytes(), self.phrase_set.len());
        let set = PhraseSet::read(&mut r, self.alphabet.size())?;
        if r.remaining() != 0 {
            return Err(Error::format("trailing bits in phrase set"));
        }
        if set.max_len() > self.m {
            return Err(Error::format("phrase longer than the bound"));
        }
        if self.n > 0 && set.is_empty() {
            return Err(Error::format("no phrases for a non-empty text"));
        }
        Ok(set)
    }

    pub(crate) fn read_h0_codebook(&self, k: usize) -> Result<CodeBook> {
        let mut r = BitReader::new(self.dictionary.as_bytes(), self.dictionary.len());
        let numbers = read_code_list(&mut r, k)?;
        let letters = read_letter_order(&mut r, k)?;
        if r.remaining() != 0 || letters.iter().any(|&l| l as usize >= k) {
            return Err(Error::format("invalid dictionary"));
        }
        CodeBook::from_parts(&numbers, letters)
    }

    /// One decode table per context, indexed by the preceding phrase.
    fn read_h1_tables(&self, k: usize) -> Result<DecodeTables> {
        let mut r = BitReader::new(self.dictionary.as_bytes(), self.dictionary.len());
        let mut lists = Vec::with_capacity(k);
        let mut total = 0usize;
        for _ in 0..k {
            let count = read_delta_usize_minus_one(&mut r)?;
            if count > k {
                return Err(Error::format("context has more followers than phrases"));
            }
            total += count;
            lists.push(read_code_list(&mut r, count)?);
        }
        let mut letters = read_letter_order(&mut r, total)?.into_iter();
        if r.remaining() != 0 {
            return Err(Error::format("trailing bits in dictionary"));
        }
        let mut tables = DecodeTables::new();
        for numbers in lists {
            let own: Vec<u32> = letters.by_ref().take(numbers.len()).collect();
            if own.iter().any(|&l| l as usize >= k) {
                return Err(Error::format("letter outside the phrase set"));
            }
            tables.push(&CodeBook::from_parts(&numbers, own)?);
        }
        Ok(tables)
    }
}

fn write_section(w: &mut BitWriter, section: &BitWriter) {
    write_delta(w, section.len() as u128 + 1);
    w.align();
    w.append(section);
    w.align();
}

fn read_section(r: &mut BitReader) -> Result<BitWriter> {
    let len = read_delta_usize_minus_one(r)? as u64;
    r.align();
    let bytes = r.take_aligned(len)?;
    r.align();
    Ok(BitWriter::from_parts(bytes.to_vec(), len))
}

/// An H0 archive together with the intermediate values the random-access
/// structure samples from.
pub(crate) struct H0Encoding {
    pub archive: Archive,
    pub set: PhraseSet,
    pub book: CodeBook,
    /// Phrase-set index of every phrase of the parsing.
    pub ids: Vec<u32>,
}

/// Replaces every phrase of `parsing` by its index in the phrase set.
fn index_phrases(parsing: &Parsing) -> Result<(PhraseSet, Vec<u32>)> {
    let text = parsing.text();
    let (first_ids, distinct) = parsing.phrase_ids();
    let mut reps: Vec<&[u8]> = vec![&[]; distinct];
    for (i, &id) in first_ids.iter().enumerate() {
        if reps[id as usize].is_empty() {
            reps[id as usize] = parsing.phrase_symbols(i);
        }
    }
    let set = PhraseSet::new(reps.iter().copied(), text.sigma())?;
    let index: DetHashMap<&[u8], u32> =
        set.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let remap: Vec<u32> = reps.iter().map(|p| index[p]).collect();
    Ok((
        set,
        first_ids.iter().map(|&id| remap[id as usize]).collect(),
    ))
}

fn histogram(ids: impl Iterator<Item = u32>, k: usize) -> Vec<(u32, u64)> {
    let mut counts = vec![0u64; k];
    for id in ids {
        counts[id as usize] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (i as u32, c))
        .collect()
}

/// `(code, length)` of every symbol, indexed by symbol.
fn code_table(book: &CodeBook, k: usize) -> Vec<(u64, u8)> {
    let mut table = vec![(0, 0); k];
    for (s, c, l) in book.entries() {
        table[s as usize] = (c, l);
    }
    table
}

fn header_parts(parsing: &Parsing, order: Order, set: &PhraseSet) -> Archive {
    let text = parsing.text();
    let mut phrase_set = BitWriter::new();
    set.write(&mut phrase_set);
    Archive {
        order,
        n: text.len(),
        m: parsing.bound(),
        alphabet: text.alphabet().clone(),
        phrase_set,
        dictionary: BitWriter::new(),
        first_phrase: BitWriter::new(),
        payload: BitWriter::new(),
    }
}

pub(crate) fn encode_h0(parsing: &Parsing) -> Result<H0Encoding> {
    let (set, ids) = index_phrases(parsing)?;
    let mut archive = header_parts(parsing, Order::H0, &set);
    if ids.is_empty() {
        return Ok(H0Encoding {
            archive,
            set,
            book: CodeBook::default(),
            ids,
        });
    }
    let book = build_codebook(&histogram(ids.iter().copied(), set.len()))?;
    write_code_list(&mut archive.dictionary, &book);
    write_letter_order(&mut archive.dictionary, book.symbols());
    let codes = code_table(&book, set.len());
    for &id in &ids {
        let (c, l) = codes[id as usize];
        archive.payload.write_bits(c, l as u32);
    }
    Ok(H0Encoding {
        archive,
        set,
        book,
        ids,
    })
}

fn encode_h1(parsing: &Parsing) -> Result<Archive> {
    let (set, ids) = index_phrases(parsing)?;
    let k = set.len();
    let mut archive = header_parts(parsing, Order::H1, &set);
    let Some(&first) = ids.first() else {
        return Ok(archive);
    };
    write_delta(&mut archive.first_phrase, first as u128 + 1);

    let mut pairs: Vec<(u32, u32)> = ids.windows(2).map(|w| (w[0], w[1])).collect();
    pairs.sort_unstable();
    // follower histograms straight from the sorted pairs
    let mut followers: Vec<Vec<(u32, u64)>> = vec![Vec::new(); k];
    for run in pairs.chunk_by(|a, b| a == b) {
        followers[run[0].0 as usize].push((run[0].1, run.len() as u64));
    }
    let mut books = Vec::with_capacity(k);
    for freqs in &followers {
        books.push(if freqs.is_empty() {
            CodeBook::default()
        } else {
            build_codebook(freqs)?
        });
    }
    let mut letters = Vec::new();
    for book in &books {
        write_delta(&mut archive.dictionary, book.len() as u128 + 1);
        write_code_list(&mut archive.dictionary, book);
        letters.extend_from_slice(book.symbols());
    }
    write_letter_order(&mut archive.dictionary, &letters);

    // per-context `(follower, code, length)`, sorted by follower
    let tables: Vec<Vec<(u32, u64, u8)>> = books
        .iter()
        .map(|b| {
            let mut t: Vec<_> = b.entries().collect();
            t.sort_unstable_by_key(|e| e.0);
            t
        })
        .collect();
    for w in ids.windows(2) {
        let table = &tables[w[0] as usize];
        let (_, c, l) = table[table
            .binary_search_by_key(&w[1], |e| e.0)
            .expect("pair was counted")];
        archive.payload.write_bits(c, l as u32);
    }
    Ok(archive)
}

/// Encodes an existing parsing (for example a naive baseline) under `order`.
pub fn compress_parsing(parsing: &Parsing, order: Order) -> Result<Archive> {
    match order {
        Order::H0 => Ok(encode_h0(parsing)?.archive),
        Order::H1 => encode_h1(parsing),
    }
}

/// Compresses `text` with its optimal H0 parsing under bound `m`.
pub fn compress_h0(text: &Text, m: usize) -> Result<Archive> {
    check_bound(m)?;
    let counter = build_counter(text, m)?;
    let (parsing, _) = parse_h0_optimal(text, m, &counter)?;
    compress_parsing(&parsing, Order::H0)
}

/// Compresses `text` with its optimal H1 parsing under bound `m`.
pub fn compress_h1(text: &Text, m: usize) -> Result<Archive> {
    check_bound(m)?;
    let counter = build_counter(text, 2 * m)?;
    let (parsing, _) = parse_h1_optimal(text, m, &counter)?;
    compress_parsing(&parsing, Order::H1)
}

pub fn compress(text: &Text, m: usize, order: Order) -> Result<Archive> {
    match order {
        Order::H0 => compress_h0(text, m),
        Order::H1 => compress_h1(text, m),
    }
}

/// Restores the original bytes from a serialised archive.
pub fn decompress(bytes: &[u8]) -> Result<Vec<u8>> {
    Archive::from_bytes(bytes)?.decompress()
}
