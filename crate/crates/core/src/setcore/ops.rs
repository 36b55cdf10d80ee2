use std::collections::HashSet;

use super::family::SetFamily;
use super::word::{k_subsets, project, SetWord};
use crate::error::{invalid, Error, Result};

/// The largest trace over all `k`-subsets, with the numerically smallest
/// subset attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxTrace {
    pub max: usize,
    pub witness: SetWord,
}

impl SetFamily {
    fn check_word(&self, y: SetWord) -> Result<()> {
        if y.fits(self.n()) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange {
                set: format!("{:#x}", y.bits()),
                n: self.n(),
            })
        }
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: i + 1,
                n: self.n(),
            })
        }
    }

    /// `{F ∩ Y : F ∈ self}`, on the same ground set.
    pub fn trace(&self, y: SetWord) -> Result<SetFamily> {
        self.check_word(y)?;
        Ok(SetFamily::from_unsorted(
            self.n(),
            self.iter().map(|f| f.intersection(y)).collect(),
        ))
    }

    /// `|trace(y)|` without materializing the trace.
    pub fn trace_size(&self, y: SetWord) -> Result<usize> {
        self.check_word(y)?;
        Ok(trace_count(self.members(), y))
    }

    /// Maximum of `|trace(Y)|` over all `Y` of size `k`.
    pub fn max_trace_over_ksets(&self, k: usize) -> Result<MaxTrace> {
        if k == 0 || k > self.n() {
            return Err(invalid(format!("window size {k} outside 1..={}", self.n())));
        }
        let mut best = MaxTrace {
            max: 0,
            witness: SetWord::EMPTY,
        };
        let mut first = true;
        for y in k_subsets(self.n(), k) {
            let t = trace_count(self.members(), y);
            if first || t > best.max {
                best = MaxTrace { max: t, witness: y };
                first = false;
            }
        }
        Ok(best)
    }

    /// `self → (a, b)`: some `a`-set carries a trace of at least `b` sets.
    pub fn arrows(&self, a: usize, b: usize) -> Result<bool> {
        if a == 0 || a > self.n() {
            return Err(invalid(format!("window size {a} outside 1..={}", self.n())));
        }
        Ok(k_subsets(self.n(), a).any(|y| trace_count(self.members(), y) >= b))
    }

    /// `F(i) = {F \ {i} : i ∈ F}`.
    pub fn link(&self, i: usize) -> Result<SetFamily> {
        self.check_element(i)?;
        Ok(SetFamily::from_unsorted(
            self.n(),
            self.iter()
                .filter(|f| f.contains(i))
                .map(|f| f.without(i))
                .collect(),
        ))
    }

    /// `F(ī) = {F : i ∉ F}`.
    pub fn delete(&self, i: usize) -> Result<SetFamily> {
        self.check_element(i)?;
        Ok(SetFamily::from_canonical(
            self.n(),
            self.iter().copied().filter(|f| !f.contains(i)).collect(),
        ))
    }

    /// `F(i,j) = {F \ {i,j} : {i,j} ⊆ F}`.
    pub fn pair_link(&self, i: usize, j: usize) -> Result<SetFamily> {
        self.check_pair(i, j)?;
        let pair = SetWord::from_elements([i, j]);
        Ok(SetFamily::from_unsorted(
            self.n(),
            self.iter()
                .filter(|f| pair.is_subset(**f))
                .map(|f| f.difference(pair))
                .collect(),
        ))
    }

    /// `F(ī,j̄) = {F : F ∩ {i,j} = ∅}`.
    pub fn pair_delete(&self, i: usize, j: usize) -> Result<SetFamily> {
        self.check_pair(i, j)?;
        let pair = SetWord::from_elements([i, j]);
        Ok(SetFamily::from_canonical(
            self.n(),
            self.iter()
                .copied()
                .filter(|f| f.intersection(pair).is_empty())
                .collect(),
        ))
    }

    /// `F(i, j̄) = {F \ {i} : i ∈ F, j ∉ F}`.
    pub fn link_avoiding(&self, i: usize, j: usize) -> Result<SetFamily> {
        self.check_pair(i, j)?;
        Ok(SetFamily::from_unsorted(
            self.n(),
            self.iter()
                .filter(|f| f.contains(i) && !f.contains(j))
                .map(|f| f.without(i))
                .collect(),
        ))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_element(i)?;
        self.check_element(j)?;
        if i == j {
            return Err(invalid(format!("pair needs distinct elements, got {} twice", i + 1)));
        }
        Ok(())
    }

    /// Members of size exactly `l`.
    pub fn level(&self, l: usize) -> Result<SetFamily> {
        if l > self.n() {
            return Err(invalid(format!("level {l} exceeds n={}", self.n())));
        }
        Ok(SetFamily::from_canonical(
            self.n(),
            self.iter().copied().filter(|f| f.len() == l).collect(),
        ))
    }

    /// 2-subsets of the members of a 3-uniform family.
    pub fn shadow(&self) -> Result<SetFamily> {
        let mut out = Vec::with_capacity(self.len() * 3);
        for f in self {
            if f.len() != 3 {
                return Err(invalid(format!("shadow expects 3-sets, found {f}")));
            }
            for e in f.elements() {
                out.push(f.without(e));
            }
        }
        Ok(SetFamily::from_unsorted(self.n(), out))
    }

    /// Closed under taking subsets; checking single-element deletions suffices.
    pub fn is_downset(&self) -> bool {
        self.first_downset_gap().is_none()
    }

    /// A member together with a missing immediate subset, if any.
    pub fn first_downset_gap(&self) -> Option<(SetWord, SetWord)> {
        for &f in self {
            for e in f.elements() {
                let g = f.without(e);
                if !self.contains(g) {
                    return Some((f, g));
                }
            }
        }
        None
    }

    /// No member strictly contains another.
    pub fn is_antichain(&self) -> bool {
        let m = self.members();
        // Strict containment needs a strictly smaller member, which comes earlier.
        for (j, &big) in m.iter().enumerate() {
            for &small in &m[..j] {
                if small.len() < big.len() && small.is_subset(big) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest down-set containing every member.
    pub fn down_closure(&self) -> SetFamily {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = self.iter().map(|w| w.bits()).collect();
        while let Some(w) = stack.pop() {
            if seen.insert(w) {
                let mut rest = w;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    rest ^= low;
                    let sub = w ^ low;
                    if !seen.contains(&sub) {
                        stack.push(sub);
                    }
                }
            }
        }
        SetFamily::from_unsorted(self.n(), seen.into_iter().map(SetWord).collect())
    }

    /// Union of all members.
    pub fn span(&self) -> SetWord {
        self.iter().fold(SetWord::EMPTY, |acc, f| acc.union(*f))
    }
}

/// Number of distinct `F ∩ Y`.
///
/// Windows of up to six elements use a `2^|Y|`-slot bitmask keyed by the
/// packed projection (16 slots for four-element windows); larger windows hash
/// the intersections.
pub(crate) fn trace_count(members: &[SetWord], y: SetWord) -> usize {
    let k = y.len();
    if k <= 6 {
        let mut positions = [0usize; 6];
        for (slot, e) in positions.iter_mut().zip(y.elements()) {
            *slot = e;
        }
        let positions = &positions[..k];
        let mut seen = 0u64;
        for f in members {
            seen |= 1u64 << project(f.bits() & y.bits(), positions);
        }
        seen.count_ones() as usize
    } else {
        members
            .iter()
            .map(|f| f.bits() & y.bits())
            .collect::<HashSet<_>>()
            .len()
    }
}
