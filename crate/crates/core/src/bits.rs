//! Word-packed bit vector helpers shared by the field and matrix code.
//!
//! Bit 0 is always the least significant bit of word 0 (little-endian by
//! bit); for polynomials over F2 this means bit i holds the coefficient
//! of x^i.

pub(crate) fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

pub(crate) fn set(words: &mut [u64], i: usize, v: bool) {
    if v {
        words[i / 64] |= 1u64 << (i % 64);
    } else {
        words[i / 64] &= !(1u64 << (i % 64));
    }
}

pub(crate) fn xor_in(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub(crate) fn is_zero(words: &[u64]) -> bool {
    words.iter().all(|w| *w == 0)
}

/// dst ^= src << k, where dst is large enough to hold the shifted value.
pub(crate) fn shl_xor(dst: &mut [u64], src: &[u64], k: usize) {
    let (wshift, bshift) = (k / 64, k % 64);
    if bshift == 0 {
        for (i, s) in src.iter().enumerate() {
            dst[i + wshift] ^= s;
        }
    } else {
        let mut carry = 0u64;
        for (i, s) in src.iter().enumerate() {
            dst[i + wshift] ^= (s << bshift) | carry;
            carry = s >> (64 - bshift);
        }
        if carry != 0 {
            dst[src.len() + wshift] ^= carry;
        }
    }
}

/// Index of the highest set bit, if any.
pub(crate) fn degree(words: &[u64]) -> Option<usize> {
    for (i, w) in words.iter().enumerate().rev() {
        if *w != 0 {
            return Some(i * 64 + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

pub(crate) fn parity_and(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() % 2 == 1
}

/// Hex form of the bit vector read as an integer whose bit i is
/// coefficient i (so GF(2^8)'s x^8+x^4+x^3+x+1 prints as "11b").
pub(crate) fn to_hex(words: &[u64], nbits: usize) -> String {
    let nibbles = nbits.div_ceil(4).max(1);
    let mut out = String::with_capacity(nibbles);
    let mut started = false;
    for i in (0..nibbles).rev() {
        let mut nib = 0u8;
        for b in 0..4 {
            let bit = i * 4 + b;
            if bit < nbits && get(words, bit) {
                nib |= 1 << b;
            }
        }
        if nib != 0 || started || i == 0 {
            started = true;
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
    }
    out
}

/// Inverse of [`to_hex`]; rejects values with bits at or above nbits.
pub(crate) fn from_hex(s: &str, nbits: usize) -> Option<Vec<u64>> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let mut words = vec![0u64; words_for(nbits.max(1))];
    for (pos, c) in s.chars().rev().enumerate() {
        let nib = c.to_digit(16)? as u64;
        if nib == 0 {
            continue;
        }
        for b in 0..4 {
            if nib >> b & 1 == 1 {
                let bit = pos * 4 + b;
                if bit >= nbits {
                    return None;
                }
                set(&mut words, bit, true);
            }
        }
    }
    Some(words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shl_xor_crosses_words() {
        let mut dst = vec![0u64; 3];
        shl_xor(&mut dst, &[0xffff_ffff_ffff_ffff], 60);
        assert_eq!(dst, vec![0xf000_0000_0000_0000, 0x0fff_ffff_ffff_ffff, 0]);
    }

    #[test]
    fn hex_roundtrip() {
        let mut w = vec![0u64; 4];
        for i in [0, 1, 3, 4, 8, 74, 233] {
            set(&mut w, i, true);
        }
        let h = to_hex(&w, 234);
        assert_eq!(from_hex(&h, 234).unwrap(), w);
        assert!(from_hex(&h, 200).is_none()); // bit 233 out of range
    }

    #[test]
    fn degree_and_parity() {
        let mut w = vec![0u64; 2];
        assert_eq!(degree(&w), None);
        set(&mut w, 70, true);
        set(&mut w, 3, true);
        assert_eq!(degree(&w), Some(70));
        assert!(!parity_and(&w, &w)); // two overlapping bits, even parity
        assert!(parity_and(&w, &[0x8, 0]));
    }
}
