use serde::{Deserialize, Serialize};

use crate::error::{contract, invalid, Result};
use crate::setcore::{check_n, SetFamily, SetWord};

/// A graph `g2` and a 3-graph `g3` on `[n]` with `∂g3 ⊆ g2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeFamily {
    n: usize,
    g2: SetFamily,
    g3: SetFamily,
}

/// Largest 4-set load `|g2 ∩ (C choose 2)| + |g3 ∩ (C choose 3)|` and the
/// lexicographically first 4-set attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HookMax {
    pub max: usize,
    pub witness: SetWord,
}

impl TildeFamily {
    /// Validates sizes and completeness; the error lists missing shadow pairs.
    pub fn new(g2: SetFamily, g3: SetFamily) -> Result<TildeFamily> {
        let n = g2.n();
        if g3.n() != n {
            return Err(invalid(format!(
                "g2 lives on [{}] but g3 on [{}]",
                n,
                g3.n()
            )));
        }
        if let Some(p) = g2.iter().find(|p| p.len() != 2) {
            return Err(invalid(format!("g2 member {p} is not a pair")));
        }
        if let Some(t) = g3.iter().find(|t| t.len() != 3) {
            return Err(invalid(format!("g3 member {t} is not a triple")));
        }
        let missing: Vec<String> = g3
            .shadow()?
            .iter()
            .filter(|p| !g2.contains(**p))
            .map(|p| p.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(contract(format!(
                "family is not complete; shadow pairs missing from g2: {}",
                missing.join(" ")
            )));
        }
        Ok(TildeFamily { n, g2, g3 })
    }

    pub fn from_one_indexed(n: usize, g2: &[[usize; 2]], g3: &[[usize; 3]]) -> Result<TildeFamily> {
        TildeFamily::new(
            SetFamily::from_one_indexed(n, g2)?,
            SetFamily::from_one_indexed(n, g3)?,
        )
    }

    pub fn empty(n: usize) -> Result<TildeFamily> {
        TildeFamily::new(SetFamily::empty(n)?, SetFamily::empty(n)?)
    }

    /// A graph with no triples.
    pub fn graph(g2: SetFamily) -> Result<TildeFamily> {
        let n = g2.n();
        TildeFamily::new(g2, SetFamily::empty(n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g2(&self) -> &SetFamily {
        &self.g2
    }

    pub fn g3(&self) -> &SetFamily {
        &self.g3
    }

    /// `|g2| + |g3|`.
    pub fn len(&self) -> usize {
        self.g2.len() + self.g3.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members of `g2` and `g3` lying inside `c`.
    pub fn load(&self, c: SetWord) -> usize {
        self.g2.iter().filter(|p| p.is_subset(c)).count()
            + self.g3.iter().filter(|t| t.is_subset(c)).count()
    }

    pub fn hook_count_max(&self) -> Result<HookMax> {
        if self.n < 4 {
            return Err(invalid(format!("hook counts need n >= 4, got n={}", self.n)));
        }
        let mut best: Option<HookMax> = None;
        for c in lex_four_sets(self.n) {
            let load = self.load(c);
            if best.map_or(true, |b| load > b.max) {
                best = Some(HookMax { max: load, witness: c });
            }
        }
        Ok(best.expect("n >= 4 has a 4-set"))
    }

    /// Some 4-set carries a load of at least `c`.
    pub fn hookarrow(&self, c: usize) -> Result<bool> {
        if self.n < 4 {
            return Err(invalid(format!("hook counts need n >= 4, got n={}", self.n)));
        }
        Ok(lex_four_sets(self.n).any(|s| self.load(s) >= c))
    }

    /// Adds `∅` and every singleton.
    pub fn to_full(&self) -> SetFamily {
        let mut out: Vec<SetWord> = Vec::with_capacity(self.len() + self.n + 1);
        out.push(SetWord::EMPTY);
        out.extend((0..self.n).map(|i| SetWord(1 << i)));
        out.extend(self.g2.iter().copied());
        out.extend(self.g3.iter().copied());
        SetFamily::from_unsorted(self.n, out)
    }

    /// Strips `∅` and the singletons from a down-set whose members have size
    /// at most 3 and which contains every set of size at most 1.
    pub fn from_full(fam: &SetFamily) -> Result<TildeFamily> {
        check_n(fam.n())?;
        let n = fam.n();
        if let Some(f) = fam.iter().find(|f| f.len() > 3) {
            return Err(contract(format!("member {f} has more than 3 elements")));
        }
        let missing: Vec<String> = std::iter::once(SetWord::EMPTY)
            .chain((0..n).map(|i| SetWord(1 << i)))
            .filter(|w| !fam.contains(*w))
            .map(|w| w.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(contract(format!(
                "family lacks sets of size <= 1: {}",
                missing.join(" ")
            )));
        }
        if let Some((f, g)) = fam.first_downset_gap() {
            return Err(contract(format!(
                "not a down-set; {f} is present but {g} is not"
            )));
        }
        TildeFamily::new(fam.level(2)?, fam.level(3)?)
    }
}

/// 4-subsets of `[n]` in lexicographic order of their element lists.
pub(crate) fn lex_four_sets(n: usize) -> impl Iterator<Item = SetWord> {
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| {
            (b + 1..n).flat_map(move |c| {
                (c + 1..n).map(move |d| SetWord::from_elements([a, b, c, d]))
            })
        })
    })
}

#[derive(Serialize, Deserialize)]
struct TildeJson {
    n: usize,
    g2: Vec<Vec<usize>>,
    g3: Vec<Vec<usize>>,
}

impl Serialize for TildeFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TildeJson {
            n: self.n,
            g2: self.g2.iter().map(|w| w.to_one_indexed()).collect(),
            g3: self.g3.iter().map(|w| w.to_one_indexed()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TildeFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TildeJson::deserialize(d)?;
        let build = || -> Result<TildeFamily> {
            TildeFamily::new(
                SetFamily::from_one_indexed(j.n, &j.g2)?,
                SetFamily::from_one_indexed(j.n, &j.g3)?,
            )
        };
        build().map_err(serde::de::Error::custom)
    }
}

impl TildeFamily {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tilde serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<TildeFamily> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_family_is_rejected_with_missing_pairs() {
        let err = TildeFamily::from_one_indexed(4, &[[1, 2]], &[[1, 2, 3]]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("{1,3}") && msg.contains("{2,3}"), "{msg}");
    }

    #[test]
    fn wrong_sizes_are_rejected() {
        let g2 = SetFamily::from_one_indexed(4, &[vec![1, 2, 3]]).unwrap();
        assert!(TildeFamily::graph(g2).is_err());
    }

    #[test]
    fn empty_tilde_to_full() {
        let t = TildeFamily::empty(5).unwrap();
        let f = t.to_full();
        assert_eq!(f.len(), 6);
        assert_eq!(TildeFamily::from_full(&f).unwrap(), t);
    }

    #[test]
    fn complete_graph_on_five_has_load_six() {
        let all: Vec<[usize; 2]> = (1..=5)
            .flat_map(|a| (a + 1..=5).map(move |b| [a, b]))
            .collect();
        let t = TildeFamily::from_one_indexed(5, &all, &[]).unwrap();
        let m = t.hook_count_max().unwrap();
        assert_eq!(m.max, 6);
        assert_eq!(m.witness, SetWord(0b1111));
        assert!(!t.hookarrow(7).unwrap());
        assert!(t.hookarrow(6).unwrap());
    }

    #[test]
    fn from_full_contract_errors() {
        let big = SetFamily::power_set(4).unwrap();
        assert!(TildeFamily::from_full(&big).is_err());
        let no_singletons = SetFamily::from_one_indexed(3, &[vec![], vec![1]]).unwrap();
        assert!(TildeFamily::from_full(&no_singletons).unwrap_err().to_string().contains("{2}"));
    }

    #[test]
    fn lex_order_of_four_sets() {
        let v: Vec<Vec<usize>> = lex_four_sets(5).map(|w| w.to_one_indexed()).collect();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], vec![1, 2, 3, 4]);
        assert_eq!(v[1], vec![1, 2, 3, 5]);
        assert_eq!(v[4], vec![2, 3, 4, 5]);
    }
}
