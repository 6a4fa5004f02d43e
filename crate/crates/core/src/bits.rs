//! Small helpers for `u64` vertex/variable masks.

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub fn indices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> u64 {
    it.into_iter().fold(0, |m, v| m | bit(v))
}

/// Iterator over the set bits of a mask, ascending.
pub struct Ones(pub u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Packs the bits of `mask` that lie in `within` into the low positions,
/// preserving order (software `pext`).
#[inline]
pub fn compress(mask: u64, within: u64) -> u64 {
    let mut out = 0;
    for (i, v) in Ones(within).enumerate() {
        if mask & bit(v) != 0 {
            out |= bit(i);
        }
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `packed` onto `within`.
#[inline]
pub fn expand(packed: u64, within: u64) -> u64 {
    let mut out = 0;
    for (i, v) in Ones(within).enumerate() {
        if packed & bit(i) != 0 {
            out |= bit(v);
        }
    }
    out
}
