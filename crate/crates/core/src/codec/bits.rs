use crate::error::{Error, Result};

/// Append-only bit buffer, MSB first within each byte.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitWriter {
    bytes: Vec<u8>,
    len: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of bits written.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Wraps the first `len` bits of `bytes`; the remaining bits of the
    /// last byte must be zero.
    pub(crate) fn from_parts(bytes: Vec<u8>, len: u64) -> Self {
        debug_assert_eq!(bytes.len() as u64, len.div_ceil(8));
        BitWriter { bytes, len }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    #[inline]
    pub fn write_bit(&mut self, bit: bool) {
        let shift = (self.len % 8) as u32;
        if shift == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> shift;
        }
        self.len += 1;
    }

    /// Writes the low `n` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, n: u32) {
        debug_assert!(n <= 64);
        for i in (0..n).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    pub fn write_bits_u128(&mut self, value: u128, n: u32) {
        debug_assert!(n <= 128);
        for i in (0..n).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    /// Pads with zero bits up to the next byte boundary.
    pub fn align(&mut self) {
        self.len = self.bytes.len() as u64 * 8;
    }

    /// Appends every bit of `other`.
    pub fn append(&mut self, other: &BitWriter) {
        if self.len.is_multiple_of(8) {
            self.bytes.extend_from_slice(&other.bytes);
            self.len += other.len;
            return;
        }
        let mut r = BitReader::new(&other.bytes, other.len);
        while let Ok(b) = r.read_bit() {
            self.write_bit(b);
        }
    }
}

/// Cursor over a bit sequence written by [`BitWriter`].
#[derive(Clone, Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
    end: u64,
}

impl<'a> BitReader<'a> {
    /// Reader over the first `len_bits` bits of `bytes`.
    pub fn new(bytes: &'a [u8], len_bits: u64) -> Self {
        let end = len_bits.min(bytes.len() as u64 * 8);
        BitReader { bytes, pos: 0, end }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.end - self.pos
    }

    pub fn seek(&mut self, pos: u64) -> Result<()> {
        if pos > self.end {
            return Err(Error::format("seek past end of bit stream"));
        }
        self.pos = pos;
        Ok(())
    }

    #[inline]
    pub fn read_bit(&mut self) -> Result<bool> {
        if self.pos >= self.end {
            return Err(Error::format("unexpected end of bit stream"));
        }
        let byte = self.bytes[(self.pos / 8) as usize];
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, n: u32) -> Result<u64> {
        debug_assert!(n <= 64);
        if self.remaining() < n as u64 {
            return Err(Error::format("unexpected end of bit stream"));
        }
        let mut v = 0u64;
        for _ in 0..n {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Ok(v)
    }

    pub fn read_bits_u128(&mut self, n: u32) -> Result<u128> {
        debug_assert!(n <= 128);
        if self.remaining() < n as u64 {
            return Err(Error::format("unexpected end of bit stream"));
        }
        let mut v = 0u128;
        for _ in 0..n {
            v = (v << 1) | self.read_bit()? as u128;
        }
        Ok(v)
    }

    /// Returns the next `len_bits` bits as whole bytes and skips past them.
    /// The reader must be byte-aligned.
    pub(crate) fn take_aligned(&mut self, len_bits: u64) -> Result<&'a [u8]> {
        debug_assert_eq!(self.pos % 8, 0);
        if self.remaining() < len_bits {
            return Err(Error::format("section extends past end of data"));
        }
        let start = (self.pos / 8) as usize;
        let end = start + len_bits.div_ceil(8) as usize;
        self.pos += len_bits;
        Ok(&self.bytes[start..end])
    }

    /// Skips to the next byte boundary.
    pub fn align(&mut self) {
        self.pos = self.pos.div_ceil(8) * 8;
        self.pos = self.pos.min(self.end);
    }
}
