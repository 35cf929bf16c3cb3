//! Word-level bit helpers shared by the graph storage, the samplers and the
//! `PCG1` codec. Bit `i` of a word slice lives in word `i / 64` at position
//! `i % 64` (least significant first).

use rand::RngCore;

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        !0
    } else {
        (1u64 << len) - 1
    }
}

#[inline]
pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

/// Reads `len <= 64` bits starting at bit `start`.
#[inline]
pub(crate) fn read_bits(words: &[u64], start: usize, len: usize) -> u64 {
    debug_assert!(len <= 64);
    if len == 0 {
        return 0;
    }
    let w = start >> 6;
    let o = start & 63;
    let mut out = words[w] >> o;
    if o != 0 && o + len > 64 {
        out |= words[w + 1] << (64 - o);
    }
    out & mask(len)
}

/// ORs the low `len <= 64` bits of `value` into the slice at bit `start`.
#[inline]
pub(crate) fn or_bits(words: &mut [u64], start: usize, value: u64, len: usize) {
    debug_assert!(len <= 64);
    if len == 0 {
        return;
    }
    let value = value & mask(len);
    let w = start >> 6;
    let o = start & 63;
    words[w] |= value << o;
    if o != 0 && o + len > 64 {
        words[w + 1] |= value >> (64 - o);
    }
}

/// A sequential source of bits, consumed least significant bit first.
pub(crate) trait BitSource {
    fn take(&mut self, len: usize) -> u64;
}

/// Bit stream over the output words of a random number generator.
pub(crate) struct RngBits<R> {
    rng: R,
    buf: u64,
    avail: usize,
}

impl<R: RngCore> RngBits<R> {
    pub(crate) fn new(rng: R) -> Self {
        Self { rng, buf: 0, avail: 0 }
    }
}

impl<R: RngCore> BitSource for RngBits<R> {
    fn take(&mut self, len: usize) -> u64 {
        debug_assert!(len <= 64);
        if len == 0 {
            return 0;
        }
        if self.avail >= len {
            let out = self.buf & mask(len);
            self.buf = if len == 64 { 0 } else { self.buf >> len };
            self.avail -= len;
            return out;
        }
        let low = self.buf;
        let have = self.avail;
        let need = len - have;
        let fresh = self.rng.next_u64();
        let out = if have == 0 { fresh & mask(need) } else { low | ((fresh & mask(need)) << have) };
        self.buf = if need == 64 { 0 } else { fresh >> need };
        self.avail = 64 - need;
        out
    }
}

/// Bit stream over a word slice.
pub(crate) struct SliceBits<'a> {
    words: &'a [u64],
    pos: usize,
}

impl<'a> SliceBits<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        Self { words, pos: 0 }
    }
}

impl BitSource for SliceBits<'_> {
    fn take(&mut self, len: usize) -> u64 {
        let out = read_bits(self.words, self.pos, len);
        self.pos += len;
        out
    }
}

/// Append-only bit buffer.
#[derive(Default)]
pub(crate) struct BitPacker {
    words: Vec<u64>,
    len: usize,
}

impl BitPacker {
    pub(crate) fn with_capacity(bits: usize) -> Self {
        Self { words: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    pub(crate) fn push(&mut self, value: u64, len: usize) {
        if len == 0 {
            return;
        }
        let end = self.len + len;
        self.words.resize(end.div_ceil(64), 0);
        or_bits(&mut self.words, self.len, value, len);
        self.len = end;
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// Little-endian bytes, truncated to `ceil(len / 8)`.
    pub(crate) fn into_bytes(self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut bytes = Vec::with_capacity(self.words.len() * 8);
        for w in &self.words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        bytes.truncate(nbytes);
        bytes
    }
}

/// In-place transpose of a 64x64 bit matrix where `a[r]` bit `c` is entry
/// `(r, c)`.
pub(crate) fn transpose64(a: &mut [u64; 64]) {
    let mut j = 32;
    let mut m: u64 = 0x0000_0000_FFFF_FFFF;
    while j != 0 {
        let mut k = 0;
        while k < 64 {
            for i in k..k + j {
                let t = ((a[i] >> j) ^ a[i + j]) & m;
                a[i] ^= t << j;
                a[i + j] ^= t;
            }
            k += 2 * j;
        }
        j >>= 1;
        m ^= m << j;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transpose_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut a = [0u64; 64];
        for w in a.iter_mut() {
            *w = rng.random();
        }
        let orig = a;
        transpose64(&mut a);
        for (r, row) in orig.iter().enumerate() {
            for (c, col) in a.iter().enumerate() {
                assert_eq!((col >> r) & 1, (row >> c) & 1, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn rng_bits_are_the_word_stream() {
        let words: Vec<u64> = {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            (0..8).map(|_| rng.next_u64()).collect()
        };
        let mut src = RngBits::new(ChaCha8Rng::seed_from_u64(11));
        let mut pos = 0;
        for len in [1usize, 7, 64, 13, 63, 64, 2, 0, 50, 64, 3] {
            assert_eq!(src.take(len), read_bits(&words, pos, len), "len {len} at {pos}");
            pos += len;
        }
    }

    #[test]
    fn packer_round_trips_through_slice() {
        let mut p = BitPacker::default();
        let chunks = [(0b1011u64, 4usize), (!0, 64), (0x1234_5678, 31), (1, 1), (0, 9), (0xdead_beef, 40)];
        for &(v, l) in &chunks {
            p.push(v, l);
        }
        assert_eq!(p.len(), 149);
        let bytes = p.into_bytes();
        assert_eq!(bytes.len(), 19);
        let mut words = vec![0u64; bytes.len().div_ceil(8)];
        for (i, b) in bytes.iter().enumerate() {
            words[i / 8] |= (*b as u64) << (8 * (i % 8));
        }
        let mut src = SliceBits::new(&words);
        for &(v, l) in &chunks {
            assert_eq!(src.take(l), v & mask(l));
        }
    }
}
