//! Byte-oriented run-length encoding of sparse redistribution vectors.
//!
//! A vector is a sorted list of `(index, k)` pairs standing for the value
//! `1/k` at `index`. Each entry is coded relative to the previous index as a
//! gap (number of skipped zeros). Small entries take a single byte
//! `k << 5 | gap` with `1 <= k <= 7` and `gap < 32`; anything else is an
//! escape byte `0` followed by the gap and `k` as LEB128 varints.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("truncated input at byte {0}")]
    Truncated(usize),
    #[error("varint overflow at byte {0}")]
    Overflow(usize),
    #[error("zero split count at byte {0}")]
    ZeroCount(usize),
}

fn put_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn get_varint(bytes: &[u8], pos: &mut usize) -> Result<u64, DecodeError> {
    let mut x = 0u64;
    let mut shift = 0;
    loop {
        let &byte = bytes.get(*pos).ok_or(DecodeError::Truncated(*pos))?;
        *pos += 1;
        if shift >= 64 {
            return Err(DecodeError::Overflow(*pos - 1));
        }
        x |= u64::from(byte & 0x7f) << shift;
        if byte & 0x80 == 0 {
            return Ok(x);
        }
        shift += 7;
    }
}

/// Encodes entries with strictly increasing indices and non-zero `k`.
pub fn encode(entries: impl IntoIterator<Item = (usize, u16)>) -> Vec<u8> {
    let mut out = Vec::new();
    let mut next = 0usize;
    for (index, k) in entries {
        assert!(index >= next && k > 0, "entries must be sorted with k > 0");
        let gap = index - next;
        if (1..8).contains(&k) && gap < 32 {
            out.push((k as u8) << 5 | gap as u8);
        } else {
            out.push(0);
            put_varint(&mut out, gap as u64);
            put_varint(&mut out, u64::from(k));
        }
        next = index + 1;
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<Vec<(usize, u16)>, DecodeError> {
    let mut out = Vec::new();
    let mut pos = 0;
    let mut next = 0usize;
    while pos < bytes.len() {
        let start = pos;
        let byte = bytes[pos];
        pos += 1;
        let (gap, k) = if byte == 0 {
            let gap = get_varint(bytes, &mut pos)?;
            let k = get_varint(bytes, &mut pos)?;
            let k = u16::try_from(k).map_err(|_| DecodeError::Overflow(start))?;
            (usize::try_from(gap).map_err(|_| DecodeError::Overflow(start))?, k)
        } else {
            (usize::from(byte & 0x1f), u16::from(byte >> 5))
        };
        if k == 0 {
            return Err(DecodeError::ZeroCount(start));
        }
        let index = next.checked_add(gap).ok_or(DecodeError::Overflow(start))?;
        out.push((index, k));
        next = index + 1;
    }
    Ok(out)
}
