//! Byte texts over a dense alphabet.

use crate::error::{check_range, Result};

const UNMAPPED: u16 = u16::MAX;

/// Bijection between the bytes that occur in a text and symbol ids `0..σ`.
///
/// Ids are assigned in order of first occurrence, so the numbering depends
/// only on the text and never on unused byte values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    byte_to_symbol: [u16; 256],
    symbol_to_byte: Vec<u8>,
}

impl Alphabet {
    /// Builds the alphabet of `bytes` in first-occurrence order.
    pub fn of(bytes: &[u8]) -> Self {
        let mut byte_to_symbol = [UNMAPPED; 256];
        let mut symbol_to_byte = Vec::new();
        for &b in bytes {
            if byte_to_symbol[b as usize] == UNMAPPED {
                byte_to_symbol[b as usize] = symbol_to_byte.len() as u16;
                symbol_to_byte.push(b);
            }
        }
        Alphabet {
            byte_to_symbol,
            symbol_to_byte,
        }
    }

    /// Rebuilds an alphabet from its symbol-ordered byte table.
    ///
    /// Returns `None` if the table repeats a byte.
    pub fn from_table(table: &[u8]) -> Option<Self> {
        let mut byte_to_symbol = [UNMAPPED; 256];
        for (s, &b) in table.iter().enumerate() {
            if byte_to_symbol[b as usize] != UNMAPPED {
                return None;
            }
            byte_to_symbol[b as usize] = s as u16;
        }
        Some(Alphabet {
            byte_to_symbol,
            symbol_to_byte: table.to_vec(),
        })
    }

    /// Number of distinct symbols, σ.
    pub fn size(&self) -> usize {
        self.symbol_to_byte.len()
    }

    pub fn symbol(&self, byte: u8) -> Option<u8> {
        match self.byte_to_symbol[byte as usize] {
            UNMAPPED => None,
            s => Some(s as u8),
        }
    }

    pub fn byte(&self, symbol: u8) -> u8 {
        self.symbol_to_byte[symbol as usize]
    }

    /// Bytes in symbol order; `table()[s]` is the byte of symbol `s`.
    pub fn table(&self) -> &[u8] {
        &self.symbol_to_byte
    }
}

/// A text `S` of `n` symbols over an [`Alphabet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u8>,
    alphabet: Alphabet,
}

/// Loads `bytes` as a [`Text`]; the empty input gives `n = σ = 0`.
pub fn load_text(bytes: &[u8]) -> Text {
    let alphabet = Alphabet::of(bytes);
    let symbols = bytes
        .iter()
        .map(|&b| alphabet.byte_to_symbol[b as usize] as u8)
        .collect();
    Text { symbols, alphabet }
}

impl Text {
    /// Builds a text from symbol ids and an existing alphabet.
    ///
    /// Returns `None` if some symbol id is outside the alphabet.
    pub fn from_symbols(symbols: Vec<u8>, alphabet: Alphabet) -> Option<Self> {
        if symbols.iter().any(|&s| s as usize >= alphabet.size()) {
            return None;
        }
        Some(Text { symbols, alphabet })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.size()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// The view `S[start..start+len)`.
    pub fn substring(&self, start: usize, len: usize) -> Result<&[u8]> {
        check_range(start, len, self.len())?;
        Ok(&self.symbols[start..start + len])
    }

    /// Maps the symbols back to the original bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.symbols
            .iter()
            .map(|&s| self.alphabet.byte(s))
            .collect()
    }
}
