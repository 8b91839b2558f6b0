//! Bit-mask helpers for subsets of small ground sets.
//!
//! Ground sets are index sets `{0, …, n−1}` with `n ≤ 16`; a subset is a
//! `u64` mask. The evaluator performs on the order of `2^n` membership
//! queries per quantifier, so everything here is branch-light.

/// Largest supported ground-set size.
pub const MAX_GROUND: usize = 16;

/// Mask of the full ground set `{0, …, n−1}`.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_GROUND);
    if n == 0 {
        0
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over all `2^n` subset masks of `{0, …, n−1}` in increasing order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = u64> {
    debug_assert!(n <= MAX_GROUND);
    0..(1u64 << n)
}

/// Iterator over the subsets of `mask`, in increasing numeric order.
pub fn subsets_of(mask: u64) -> SubsetsOf {
    SubsetsOf {
        mask,
        current: 0,
        done: false,
    }
}

pub struct SubsetsOf {
    mask: u64,
    current: u64,
    done: bool,
}

impl Iterator for SubsetsOf {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.current;
        if self.current == self.mask {
            self.done = true;
        } else {
            // standard trick: next subset of `mask` after `current`
            self.current = (self.current.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

/// Iterator over the elements (set bit positions) of a mask.
pub fn elements(mask: u64) -> impl Iterator<Item = usize> {
    BitIter(mask)
}

pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// All masks of popcount `k` over `{0, …, n−1}`, in increasing order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack.
    let mut v = full_mask(k);
    let limit = 1u64 << n;
    while v < limit {
        out.push(v);
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_mask_enumerates_all() {
        let got: Vec<u64> = subsets_of(0b1010).collect();
        assert_eq!(got, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(subsets_of(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn sized_subsets() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(4, 0), vec![0]);
        assert_eq!(subsets_of_size(3, 3), vec![0b111]);
        assert!(subsets_of_size(2, 3).is_empty());
    }

    #[test]
    fn element_iter() {
        assert_eq!(elements(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
