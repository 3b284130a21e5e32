//! Fixed-length packed bit vectors.

use std::fmt;

/// A fixed-length vector over GF(2), packed into 64-bit blocks.
///
/// Bits beyond `len` in the last block are always zero, so block-wise
/// popcounts never see padding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: usize,
    blocks: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self {
            len,
            blocks: vec![u64::MAX; len.div_ceil(64)],
        };
        w.clear_padding();
        w
    }

    /// Parses a string of `'0'`/`'1'` characters, first character = coordinate 0.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut w = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(i, true),
                _ => return None,
            }
        }
        Some(w)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.blocks[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.blocks[i / 64] |= mask;
        } else {
            self.blocks[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.blocks[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn clear(&mut self) {
        self.blocks.iter_mut().for_each(|b| *b = 0);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Returns `(d10, d01)`: coordinates where `self` is 1 and `other` is 0,
    /// and where `self` is 0 and `other` is 1.
    ///
    /// Panics if the lengths differ.
    #[inline]
    pub fn cross_counts(&self, other: &BitWord) -> (usize, usize) {
        assert_eq!(
            self.len, other.len,
            "cross_counts on words of unequal length"
        );
        let mut d10 = 0usize;
        let mut d01 = 0usize;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            d10 += (a & !b).count_ones() as usize;
            d01 += (!a & b).count_ones() as usize;
        }
        (d10, d01)
    }

    pub fn hamming(&self, other: &BitWord) -> usize {
        let (a, b) = self.cross_counts(other);
        a + b
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        assert_eq!(self.len, other.len, "xor on words of unequal length");
        BitWord {
            len: self.len,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let tz = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(bi * 64 + tz)
                }
            })
        })
    }

    fn clear_padding(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}
