//! `access(i)` and block reads over an H0 archive without decompressing it.
//!
//! Two sample arrays make this work. For every position `j` that is a
//! multiple of `d`, `Z` holds the phrase containing `j` and `O` the offset
//! of `j` inside it. For every `t`-th phrase the structure keeps the bit
//! offset of its code in the payload. A query jumps to the sampled position
//! at or before `i`, to the sampled code at or before that phrase, and
//! decodes forward.

use serde::Serialize;

use crate::codec::{
    encode_h0, read_delta_usize_minus_one, write_delta, Archive, BitReader, BitWriter, DecodeTables,
};
use crate::corpus::Text;
use crate::error::{check_range, Error, Result};
use crate::parsing::{check_bound, parse_h0_optimal, Order, Parsing};
use crate::substring_index::build_counter;

pub const SECTION_MAGIC: &[u8; 4] = b"RAX1";

/// Queryable H0 representation of a text.
#[derive(Clone, Debug)]
pub struct AccessStructure {
    archive: Archive,
    d: usize,
    t: usize,
    phrase_count: usize,
    /// Bytes of every phrase-set entry, concatenated.
    phrase_data: Vec<u8>,
    phrase_ends: Vec<usize>,
    tables: DecodeTables,
    z: Vec<u32>,
    o: Vec<u8>,
    code_samples: Vec<u64>,
}

/// Size of a structure relative to its text and to the plain archive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StructureSize {
    pub total_bits: u64,
    pub archive_bits: u64,
    pub bps: f64,
    pub archive_bps: f64,
    /// Overhead of the samples over the plain archive, in bits per symbol.
    pub delta_bps: f64,
}

/// Builds the structure over the optimal H0 parsing of `text` with bound
/// `m`, sampling every `d`-th position and every `t`-th code.
pub fn build_access(text: &Text, m: usize, d: usize, t: usize) -> Result<AccessStructure> {
    check_bound(m)?;
    let counter = build_counter(text, m)?;
    let (parsing, _) = parse_h0_optimal(text, m, &counter)?;
    build_access_from_parsing(&parsing, d, t)
}

/// Builds the structure over an arbitrary parsing, such as a naive one.
pub fn build_access_from_parsing(parsing: &Parsing, d: usize, t: usize) -> Result<AccessStructure> {
    if d == 0 || t == 0 {
        return Err(Error::param("sampling rates d and t must be at least 1"));
    }
    let enc = encode_h0(parsing)?;
    let n = parsing.text().len();
    let codes: Vec<u8> = {
        let mut len_of = vec![0u8; enc.set.len()];
        for (s, _, l) in enc.book.entries() {
            len_of[s as usize] = l;
        }
        enc.ids.iter().map(|&id| len_of[id as usize]).collect()
    };

    let mut z = Vec::with_capacity(n.div_ceil(d));
    let mut o = Vec::with_capacity(n.div_ceil(d));
    let mut code_samples = Vec::with_capacity(enc.ids.len().div_ceil(t));
    let mut bit = 0u64;
    for (p, phrase) in parsing.phrases().iter().enumerate() {
        if p % t == 0 {
            code_samples.push(bit);
        }
        bit += codes[p] as u64;
        let mut j = phrase.start.div_ceil(d) * d;
        while j < phrase.end() {
            z.push(p as u32);
            o.push((j - phrase.start) as u8);
            j += d;
        }
    }
    AccessStructure::assemble(enc.archive, d, t, enc.ids.len(), z, o, code_samples)
}

impl AccessStructure {
    fn assemble(
        archive: Archive,
        d: usize,
        t: usize,
        phrase_count: usize,
        z: Vec<u32>,
        o: Vec<u8>,
        code_samples: Vec<u64>,
    ) -> Result<Self> {
        let set = archive.read_phrase_set()?;
        let book = archive.read_h0_codebook(set.len())?;
        let mut tables = DecodeTables::new();
        tables.push(&book);
        let alphabet = archive.alphabet();
        let mut phrase_data = Vec::new();
        let mut phrase_ends = Vec::with_capacity(set.len());
        for p in set.iter() {
            phrase_data.extend(p.iter().map(|&s| alphabet.byte(s)));
            phrase_ends.push(phrase_data.len());
        }
        Ok(AccessStructure {
            archive,
            d,
            t,
            phrase_count,
            phrase_data,
            phrase_ends,
            tables,
            z,
            o,
            code_samples,
        })
    }

    pub fn len(&self) -> usize {
        self.archive.text_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position_rate(&self) -> usize {
        self.d
    }

    pub fn code_rate(&self) -> usize {
        self.t
    }

    /// Number of phrases `|Y|` of the underlying parsing.
    pub fn phrase_count(&self) -> usize {
        self.phrase_count
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    fn phrase(&self, id: u32) -> &[u8] {
        let id = id as usize;
        let start = if id == 0 { 0 } else { self.phrase_ends[id - 1] };
        &self.phrase_data[start..self.phrase_ends[id]]
    }

    /// Positions a cursor on the phrase holding text position `i`. Returns
    /// the cursor (before that phrase's code), the phrase's start and the
    /// number of codes skipped.
    fn locate(&self, i: usize) -> Result<(BitReader<'_>, usize, usize)> {
        let j = i / self.d;
        let p = self.z[j] as usize;
        let start = (j * self.d)
            .checked_sub(self.o[j] as usize)
            .ok_or_else(|| Error::format("inconsistent position samples"))?;
        let payload = self.archive.payload();
        let mut r = BitReader::new(payload.as_bytes(), payload.len());
        let s = p / self.t;
        r.seek(self.code_samples[s])?;
        for _ in s * self.t..p {
            self.tables.decode(0, &mut r)?;
        }
        Ok((r, start, p - s * self.t))
    }

    /// `S[i]`.
    pub fn access(&self, i: usize) -> Result<u8> {
        Ok(self.access_traced(i)?.0)
    }

    /// `S[i]` together with the number of codes decoded to find it.
    pub fn access_traced(&self, i: usize) -> Result<(u8, usize)> {
        check_range(i, 1, self.len())?;
        let (mut r, mut pos, mut work) = self.locate(i)?;
        loop {
            let phrase = self.phrase(self.tables.decode(0, &mut r)?);
            work += 1;
            if i < pos + phrase.len() {
                return Ok((phrase[i - pos], work));
            }
            pos += phrase.len();
        }
    }

    /// `S[i..i+len)`.
    pub fn read_block(&self, i: usize, len: usize) -> Result<Vec<u8>> {
        check_range(i, len, self.len())?;
        let mut out = Vec::with_capacity(len);
        if len == 0 {
            return Ok(out);
        }
        let end = i + len;
        let (mut r, mut pos, _) = self.locate(i)?;
        while pos < end {
            let phrase = self.phrase(self.tables.decode(0, &mut r)?);
            let next = pos + phrase.len();
            if next > i {
                out.extend_from_slice(&phrase[i.max(pos) - pos..end.min(next) - pos]);
            }
            pos = next;
        }
        Ok(out)
    }

    fn offset_bits(&self) -> u32 {
        usize::BITS - (self.archive.bound() - 1).leading_zeros()
    }

    fn sample_section(&self) -> BitWriter {
        let mut w = BitWriter::new();
        write_delta(&mut w, self.d as u128);
        write_delta(&mut w, self.t as u128);
        write_delta(&mut w, self.phrase_count as u128 + 1);
        let mut prev = 0;
        for &z in &self.z {
            write_delta(&mut w, (z - prev) as u128 + 1);
            prev = z;
        }
        let width = self.offset_bits();
        for &o in &self.o {
            w.write_bits(o as u64, width);
        }
        let mut prev = 0;
        for &c in &self.code_samples {
            write_delta(&mut w, (c - prev) as u128 + 1);
            prev = c;
        }
        w.align();
        w
    }

    /// The archive followed by the `RAX1` sample section.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.archive.to_bytes();
        out.extend_from_slice(SECTION_MAGIC);
        out.extend_from_slice(self.sample_section().as_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (archive, used) = Archive::read_prefix(bytes)?;
        if archive.order() != Order::H0 {
            return Err(Error::format("random access needs an H0 archive"));
        }
        let rest = &bytes[used..];
        if rest.len() < 4 || &rest[..4] != SECTION_MAGIC {
            return Err(Error::format("missing RAX1 section"));
        }
        let body = &rest[4..];
        let mut r = BitReader::new(body, body.len() as u64 * 8);
        let d = read_delta_usize_minus_one(&mut r)? + 1;
        let t = read_delta_usize_minus_one(&mut r)? + 1;
        let phrase_count = read_delta_usize_minus_one(&mut r)?;
        let n = archive.text_len();
        let m = archive.bound();
        if (n == 0) != (phrase_count == 0) || phrase_count > n {
            return Err(Error::format("phrase count does not match the text"));
        }
        let samples = n.div_ceil(d);
        let mut z = Vec::with_capacity(samples);
        let mut prev = 0usize;
        for _ in 0..samples {
            prev += read_delta_usize_minus_one(&mut r)?;
            if prev >= phrase_count {
                return Err(Error::format("position sample past the last phrase"));
            }
            z.push(prev as u32);
        }
        let mut structure =
            AccessStructure::assemble(archive, d, t, phrase_count, z, Vec::new(), Vec::new())?;
        let width = structure.offset_bits();
        let mut o = Vec::with_capacity(samples);
        for _ in 0..samples {
            let v = r.read_bits(width)?;
            if v as usize >= m {
                return Err(Error::format("offset sample out of range"));
            }
            o.push(v as u8);
        }
        let payload_len = structure.archive.payload().len();
        let mut code_samples = Vec::with_capacity(phrase_count.div_ceil(t));
        let mut prev = 0u64;
        for _ in 0..phrase_count.div_ceil(t) {
            prev = prev
                .checked_add(read_delta_usize_minus_one(&mut r)? as u64)
                .filter(|&c| c <= payload_len)
                .ok_or_else(|| Error::format("code sample past the payload"))?;
            code_samples.push(prev);
        }
        r.align();
        if r.remaining() != 0 {
            return Err(Error::format("trailing data after RAX1 section"));
        }
        structure.o = o;
        structure.code_samples = code_samples;
        Ok(structure)
    }

    pub fn structure_size(&self) -> StructureSize {
        let archive_bits = self.archive.size_report().total_bits;
        let total_bits = archive_bits + 32 + self.sample_section().len();
        let n = self.len();
        let per = |bits: u64| if n == 0 { 0.0 } else { bits as f64 / n as f64 };
        StructureSize {
            total_bits,
            archive_bits,
            bps: per(total_bits),
            archive_bps: per(archive_bits),
            delta_bps: per(total_bits - archive_bits),
        }
    }
}
