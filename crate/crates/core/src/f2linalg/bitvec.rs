use std::fmt;
use std::ops::BitXor;

/// Widest vector representable; vectors are packed into a single `u64`.
pub const MAX_DIM: usize = 64;

/// Mask selecting entry `index` (1-based, entry 1 = most significant bit) of
/// an `n`-entry vector packed into a `u64`.
#[inline]
pub fn entry_mask(n: usize, index: usize) -> u64 {
    debug_assert!(index >= 1 && index <= n && n <= MAX_DIM);
    1u64 << (n - index)
}

/// All-ones mask over the low `n` bits.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A column vector over GF(2).
///
/// Entry 1 is the most significant bit: the integer `i = Σ a_j 2^(n-j)` has
/// vector `[a_1, …, a_n]`. The packed representation is the integer itself,
/// so `BitVec::from_int(i, n).to_int() == i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVec {
    bits: u64,
    len: usize,
}

impl BitVec {
    /// Panics if `len > 64` or `value` does not fit in `len` bits.
    pub fn from_int(value: u64, len: usize) -> Self {
        assert!(len <= MAX_DIM, "vector length {len} exceeds {MAX_DIM}");
        assert!(
            value & !full_mask(len) == 0,
            "value {value} does not fit in {len} bits"
        );
        BitVec { bits: value, len }
    }

    pub fn to_int(self) -> u64 {
        self.bits
    }

    pub fn zero(len: usize) -> Self {
        Self::from_int(0, len)
    }

    /// The basis vector `e_t` (1-based).
    pub fn unit(t: usize, len: usize) -> Self {
        assert!(t >= 1 && t <= len, "basis index {t} out of range 1..={len}");
        Self::from_int(entry_mask(len, t), len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Entry `index`, 1-based.
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index >= 1 && index <= self.len,
            "index {index} out of range"
        );
        self.bits & entry_mask(self.len, index) != 0
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index >= 1 && index <= self.len,
            "index {index} out of range"
        );
        let m = entry_mask(self.len, index);
        if value {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
    }

    /// 1-based indices of the set entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.len).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl BitXor for BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.len, rhs.len, "length mismatch");
        BitVec {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl From<BitVec> for u64 {
    fn from(v: BitVec) -> u64 {
        v.bits
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
