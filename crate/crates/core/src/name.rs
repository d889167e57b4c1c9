//! Identifiers for names and atom symbols.
//!
//! Both are drawn from the language `[a-z][a-z0-9]*` and stored as their rank in
//! shortlex order (shorter strings first, then ASCII order), so `a` is 0, `z` is 25
//! and `a0` is 26. Every `u64` decodes to exactly one identifier.

use std::fmt;

const FIRST: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
const REST: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn count_of_length(len: u32) -> u128 {
    26 * 36u128.pow(len - 1)
}

/// Rank of an identifier in shortlex order, or `None` if the text is not an
/// identifier or its rank does not fit in 64 bits.
pub fn encode_ident(text: &str) -> Option<u64> {
    let bytes = text.as_bytes();
    let (&first, rest) = bytes.split_first()?;
    let mut rank: u128 = (1..bytes.len() as u32).map(count_of_length).sum();
    let mut offset = FIRST.iter().position(|&c| c == first)? as u128;
    for &c in rest {
        offset = offset * 36 + REST.iter().position(|&r| r == c)? as u128;
        if offset > u64::MAX as u128 {
            return None;
        }
    }
    rank += offset;
    u64::try_from(rank).ok()
}

/// Identifier whose shortlex rank is `rank`.
pub fn decode_ident(rank: u64) -> String {
    let mut rest = rank as u128;
    let mut len = 1;
    while rest >= count_of_length(len) {
        rest -= count_of_length(len);
        len += 1;
    }
    let mut tail = Vec::with_capacity(len as usize - 1);
    for _ in 1..len {
        tail.push(REST[(rest % 36) as usize]);
        rest /= 36;
    }
    let mut out = String::with_capacity(len as usize);
    out.push(FIRST[rest as usize] as char);
    out.extend(tail.iter().rev().map(|&c| c as char));
    out
}

/// A name labelling one atom occurrence. Names are totally ordered by their
/// numeric identifier, which also fixes the enumeration used for fresh names.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Name(pub u64);

impl Name {
    pub fn parse(text: &str) -> Option<Name> {
        encode_ident(text).map(Name)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&decode_ident(self.0))
    }
}

/// An atom symbol, using the same identifier language as names.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol(pub u64);

impl Symbol {
    pub fn parse(text: &str) -> Option<Symbol> {
        encode_ident(text).map(Symbol)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&decode_ident(self.0))
    }
}
