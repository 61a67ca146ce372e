//! Bit-level serialisation and the archive format.

mod archive;
mod bits;
mod elias;
mod huffman;
mod phrase_set;

pub(crate) use archive::encode_h0;
pub use archive::{
    compress, compress_h0, compress_h1, compress_parsing, decompress, Archive, SizeReport, MAGIC,
    VERSION,
};
pub use bits::{BitReader, BitWriter};
pub(crate) use elias::read_delta_usize_minus_one;
pub use elias::{delta_decode, delta_encode, read_delta, read_delta_u64, write_delta};
pub use huffman::{
    build_codebook, code_lengths, codebook_decode, codebook_encode, read_code_list,
    read_letter_order, write_code_list, write_letter_order, CodeBook, DecodeTables, MAX_CODE_LEN,
};
pub use phrase_set::{
    max_phrase_len, number_to_phrase, phrase_number, phrase_set_decode, phrase_set_encode,
    PhraseSet,
};
