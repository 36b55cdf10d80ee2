use std::fmt;
use std::sync::OnceLock;

use super::word::{check_n, SetWord};
use crate::error::{Error, Result};

/// Membership bitsets are only built up to this ground set size (2 MiB).
pub const INDEX_MAX_N: usize = 24;

/// A duplicate-free family of subsets of `[n]`, kept in canonical order
/// (cardinality, then numeric value).
///
/// Values are immutable once built. The `2^n`-bit membership index is built
/// lazily on the first lookup and only when `n <= 24`; larger ground sets fall
/// back to binary search over the sorted members.
pub struct SetFamily {
    n: usize,
    members: Vec<SetWord>,
    index: OnceLock<Option<Box<[u64]>>>,
}

impl SetFamily {
    /// Builds a family, sorting and deduplicating the members.
    pub fn new<I: IntoIterator<Item = SetWord>>(n: usize, members: I) -> Result<SetFamily> {
        check_n(n)?;
        let mut members: Vec<SetWord> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|w| !w.fits(n)) {
            return Err(Error::SetOutOfRange {
                set: format!("{:#x}", bad.bits()),
                n,
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self::from_canonical(n, members))
    }

    /// Builds from 1-indexed element lists.
    pub fn from_one_indexed<S: AsRef<[usize]>>(n: usize, sets: &[S]) -> Result<SetFamily> {
        check_n(n)?;
        let words = sets
            .iter()
            .map(|s| SetWord::from_one_indexed(s.as_ref(), n))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, words)
    }

    /// Members must already be valid, sorted and duplicate-free.
    pub(crate) fn from_canonical(n: usize, members: Vec<SetWord>) -> SetFamily {
        debug_assert!(members.windows(2).all(|p| p[0] < p[1]));
        debug_assert!(members.iter().all(|w| w.fits(n)));
        SetFamily {
            n,
            members,
            index: OnceLock::new(),
        }
    }

    pub(crate) fn from_unsorted(n: usize, mut members: Vec<SetWord>) -> SetFamily {
        members.sort_unstable();
        members.dedup();
        Self::from_canonical(n, members)
    }

    pub fn empty(n: usize) -> Result<SetFamily> {
        SetFamily::new(n, std::iter::empty())
    }

    /// All `2^n` subsets of `[n]`.
    pub fn power_set(n: usize) -> Result<SetFamily> {
        check_n(n)?;
        if n > INDEX_MAX_N {
            return Err(Error::InvalidArgument(format!(
                "power set of [{n}] is too large to materialize"
            )));
        }
        Ok(Self::from_unsorted(n, (0..1u64 << n).map(SetWord).collect()))
    }

    /// Power set of `base`, on the ground set `[n]`.
    pub fn power_set_of(n: usize, base: SetWord) -> Result<SetFamily> {
        check_n(n)?;
        if !base.fits(n) {
            return Err(Error::SetOutOfRange {
                set: base.to_string(),
                n,
            });
        }
        let mut out = Vec::with_capacity(1 << base.len());
        let mut sub = base.bits();
        loop {
            out.push(SetWord(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & base.bits();
        }
        Ok(Self::from_unsorted(n, out))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn members(&self) -> &[SetWord] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SetWord> {
        self.members.iter()
    }

    pub fn into_members(self) -> Vec<SetWord> {
        self.members
    }

    /// Largest member size, or `None` for the empty family.
    pub fn max_member_size(&self) -> Option<usize> {
        self.members.last().map(|w| w.len())
    }

    pub fn contains(&self, w: SetWord) -> bool {
        if !w.fits(self.n) {
            return false;
        }
        match self.index.get_or_init(|| self.build_index()) {
            Some(bits) => {
                let v = w.bits() as usize;
                (bits[v >> 6] >> (v & 63)) & 1 == 1
            }
            None => self.members.binary_search(&w).is_ok(),
        }
    }

    pub fn has_index(&self) -> bool {
        matches!(self.index.get(), Some(Some(_)))
    }

    fn build_index(&self) -> Option<Box<[u64]>> {
        if self.n > INDEX_MAX_N {
            return None;
        }
        let words = ((1usize << self.n) + 63) / 64;
        let mut bits = vec![0u64; words].into_boxed_slice();
        for w in &self.members {
            let v = w.bits() as usize;
            bits[v >> 6] |= 1 << (v & 63);
        }
        Some(bits)
    }
}

impl Clone for SetFamily {
    fn clone(&self) -> Self {
        Self::from_canonical(self.n, self.members.clone())
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl std::hash::Hash for SetFamily {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.members.hash(state);
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, ", self.n)?;
        f.debug_list().entries(self.members.iter()).finish()?;
        f.write_str(")")
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a SetWord;
    type IntoIter = std::slice::Iter<'a, SetWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
