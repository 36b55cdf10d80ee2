use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 64;

/// Bits `0..n` set.
#[inline]
pub fn ground_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSetSize(n))
    }
}

/// One subset of the ground set, stored as a bitmask over 0-indexed elements.
///
/// The ground set size is carried by the owning [`SetFamily`](super::SetFamily);
/// a word on its own only knows which bits are set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SetWord(pub u64);

impl SetWord {
    pub const EMPTY: SetWord = SetWord(0);

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a word from 0-indexed elements.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> SetWord {
        SetWord(elements.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    /// Builds a word from 1-indexed elements, rejecting anything outside `[n]`.
    pub fn from_one_indexed(elements: &[usize], n: usize) -> Result<SetWord> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(SetWord(bits))
    }

    /// Cardinality.
    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, element: usize) -> bool {
        element < 64 && (self.0 >> element) & 1 == 1
    }

    #[inline]
    pub const fn with(self, element: usize) -> SetWord {
        SetWord(self.0 | (1u64 << element))
    }

    #[inline]
    pub const fn without(self, element: usize) -> SetWord {
        SetWord(self.0 & !(1u64 << element))
    }

    #[inline]
    pub const fn union(self, other: SetWord) -> SetWord {
        SetWord(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: SetWord) -> SetWord {
        SetWord(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: SetWord) -> SetWord {
        SetWord(self.0 & !other.0)
    }

    #[inline]
    pub const fn symmetric_difference(self, other: SetWord) -> SetWord {
        SetWord(self.0 ^ other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: SetWord) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when no bit at position `>= n` is set.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !ground_mask(n) == 0
    }

    /// 0-indexed elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// 1-indexed elements in ascending order.
    pub fn to_one_indexed(self) -> Vec<usize> {
        self.elements().map(|e| e + 1).collect()
    }

    /// Ordering used for every family: cardinality first, then numeric value.
    #[inline]
    pub fn canonical_cmp(self, other: SetWord) -> Ordering {
        (self.0.count_ones(), self.0).cmp(&(other.0.count_ones(), other.0))
    }
}

impl Ord for SetWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(*other)
    }
}

impl PartialOrd for SetWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

/// Iterator over the set bits of a word.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let e = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(e)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// All `k`-subsets of `[n]` in increasing numeric order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(ground_mask(k))
    };
    KSubsets {
        limit: ground_mask(n),
        next,
    }
}

#[derive(Clone)]
pub struct KSubsets {
    limit: u64,
    next: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = SetWord;

    fn next(&mut self) -> Option<SetWord> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur as u128;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let ones = ((ripple ^ c) >> 2) / low;
            let nxt = ripple | ones;
            if nxt > self.limit as u128 {
                None
            } else {
                Some(nxt as u64)
            }
        };
        Some(SetWord(cur))
    }
}

/// Compresses the bits of `word` selected by the ordered positions into a
/// dense index (software `pext`).
#[inline]
pub(crate) fn project(word: u64, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| acc | ((((word >> p) & 1) as usize) << j))
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
