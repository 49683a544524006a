//! Dense fixed-length bit vectors with the shift-or kernel used by every
//! sumset computation in the crate.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits { len, words: vec![u64::MAX; len.div_ceil(WORD)] };
        b.clear_tail();
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut b = Bits::new(len);
        for i in it {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn unset(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones { bits: self, word: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn or_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn negate(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        self.clear_tail();
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_count(&self, other: &Bits) -> usize {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// ORs `src` shifted up by `shift` positions into `self`; bits pushed past
    /// `self.len()` are dropped.
    pub fn or_shifted(&mut self, src: &Bits, shift: usize) {
        if shift >= self.len {
            return;
        }
        let ws = shift / WORD;
        let bs = shift % WORD;
        let n = self.words.len();
        for (i, &w) in src.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let j = i + ws;
            if j >= n {
                break;
            }
            if bs == 0 {
                self.words[j] |= w;
            } else {
                self.words[j] |= w << bs;
                if j + 1 < n {
                    self.words[j + 1] |= w >> (WORD - bs);
                }
            }
        }
        self.clear_tail();
    }

    /// Copies bits `start .. start + len` into a fresh vector (bits past the
    /// end read as zero).
    pub fn slice(&self, start: usize, len: usize) -> Bits {
        let mut out = Bits::new(len);
        if start >= self.len {
            return out;
        }
        let ws = start / WORD;
        let bs = start % WORD;
        for k in 0..out.words.len() {
            let lo = self.words.get(ws + k).copied().unwrap_or(0);
            let v = if bs == 0 {
                lo
            } else {
                let hi = self.words.get(ws + k + 1).copied().unwrap_or(0);
                (lo >> bs) | (hi << (WORD - bs))
            };
            out.words[k] = v;
        }
        out.clear_tail();
        out
    }

    /// Cyclic rotation by `shift` within `len` bits: bit `i` moves to
    /// `(i + shift) % len`.
    pub fn rotated(&self, shift: usize) -> Bits {
        let m = self.len;
        if m == 0 {
            return self.clone();
        }
        let shift = shift % m;
        if shift == 0 {
            return self.clone();
        }
        let mut wide = Bits::new(2 * m);
        wide.or_shifted(self, shift);
        fold(&wide, m)
    }

    /// `{a + b : a in self, b in other}` truncated to `len` bits.
    pub fn linear_sumset(&self, other: &Bits, len: usize) -> Bits {
        let (small, big) = if self.count() <= other.count() { (self, other) } else { (other, self) };
        let mut out = Bits::new(len);
        let big = if big.len > len { big.slice(0, len) } else { big.clone() };
        for s in small.ones() {
            if s >= len {
                break;
            }
            out.or_shifted(&big, s);
        }
        out
    }

    /// Cyclic sumset of two vectors of equal length `m`.
    pub fn cyclic_sumset(&self, other: &Bits) -> Bits {
        let m = self.len;
        assert_eq!(m, other.len);
        let (small, big) = if self.count() <= other.count() { (self, other) } else { (other, self) };
        let mut wide = Bits::new(2 * m);
        let mut dense = Bits::new(2 * m);
        dense.or_shifted(big, 0);
        for s in small.ones() {
            wide.or_shifted(&dense, s);
        }
        fold(&wide, m)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Reduces a `2m`-bit vector modulo `m`.
fn fold(wide: &Bits, m: usize) -> Bits {
    let mut low = wide.slice(0, m);
    let high = wide.slice(m, m);
    low.or_assign(&high);
    low
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

pub struct Ones<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word];
        }
    }
}
