//! Elias Delta code: the bit length `L` of `v` in Elias Gamma, then the
//! `L - 1` bits of `v` below its leading one.

use super::bits::{BitReader, BitWriter};
use crate::error::{Error, Result};

/// Appends the Elias Delta code of `value` (which must be ≥ 1).
pub fn write_delta(w: &mut BitWriter, value: u128) {
    assert!(value >= 1, "Elias Delta is undefined for 0");
    let len = 128 - value.leading_zeros();
    let len_bits = 32 - len.leading_zeros();
    w.write_bits(0, len_bits - 1);
    w.write_bits(len as u64, len_bits);
    w.write_bits_u128(value, len - 1);
}

pub fn read_delta(r: &mut BitReader) -> Result<u128> {
    let mut zeros = 0u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 7 {
            return Err(Error::format("Elias Delta length prefix too long"));
        }
    }
    let len = (1u32 << zeros) | r.read_bits(zeros)? as u32;
    if len > 128 {
        return Err(Error::format("Elias Delta value exceeds 128 bits"));
    }
    Ok((1u128 << (len - 1)) | r.read_bits_u128(len - 1)?)
}

/// Reads a delta-coded value that must fit in `u64`.
pub fn read_delta_u64(r: &mut BitReader) -> Result<u64> {
    u64::try_from(read_delta(r)?).map_err(|_| Error::format("value out of range"))
}

/// Reads a value stored as `v + 1`.
pub(crate) fn read_delta_usize_minus_one(r: &mut BitReader) -> Result<usize> {
    let v = read_delta(r)? - 1;
    usize::try_from(v).map_err(|_| Error::format("value out of range"))
}

/// Elias Delta code of `value` as a standalone stream.
pub fn delta_encode(value: u128) -> Result<BitWriter> {
    if value == 0 {
        return Err(Error::param("Elias Delta is undefined for 0"));
    }
    let mut w = BitWriter::new();
    write_delta(&mut w, value);
    Ok(w)
}

/// Decodes one value from the front of `bits`; returns it with the number of
/// bits consumed.
pub fn delta_decode(bits: &BitWriter) -> Result<(u128, u64)> {
    let mut r = BitReader::new(bits.as_bytes(), bits.len());
    let v = read_delta(&mut r)?;
    Ok((v, r.position()))
}
