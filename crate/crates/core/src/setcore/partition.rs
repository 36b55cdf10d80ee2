use serde::{Deserialize, Serialize};

use super::family::SetFamily;
use super::word::SetWord;
use crate::error::{contract, Error, Result};

/// Disjoint classes `Z_1..Z_r` of `[n]` together with an auxiliary family
/// `H ⊆ 2^[r]` recording which class patterns occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStructure {
    n: usize,
    classes: Vec<SetWord>,
    aux: SetFamily,
}

impl PartitionStructure {
    pub fn new(n: usize, classes: Vec<SetWord>, aux: SetFamily) -> Result<Self> {
        let mut seen = SetWord::EMPTY;
        for c in &classes {
            if c.is_empty() {
                return Err(contract("partition classes must be nonempty"));
            }
            if !c.fits(n) {
                return Err(Error::SetOutOfRange {
                    set: c.to_string(),
                    n,
                });
            }
            if !c.intersection(seen).is_empty() {
                return Err(contract(format!("class {c} overlaps an earlier class")));
            }
            seen = seen.union(*c);
        }
        if aux.n() < classes.len() || aux.iter().any(|h| !h.fits(classes.len())) {
            return Err(contract(format!(
                "auxiliary family must live on [{}]",
                classes.len()
            )));
        }
        Ok(PartitionStructure { n, classes, aux })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of classes `r`.
    pub fn r(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[SetWord] {
        &self.classes
    }

    pub fn aux(&self) -> &SetFamily {
        &self.aux
    }

    /// Class sizes `b_i = |Z_i|`.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// `b_H = ∏_{i ∈ H} b_i`.
    pub fn weight(&self, h: SetWord) -> u128 {
        h.elements()
            .map(|i| self.classes[i].len() as u128)
            .product()
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(x))
    }

    /// `{F : |F ∩ Z_i| <= 1 for all i, {i : F ∩ Z_i ≠ ∅} ∈ H}`, with elements
    /// outside every class never used.
    pub fn reconstruct(&self) -> SetFamily {
        let mut out = Vec::new();
        for pattern in self.aux.iter() {
            let parts: Vec<SetWord> = pattern.elements().map(|i| self.classes[i]).collect();
            let mut acc = vec![SetWord::EMPTY];
            for part in parts {
                acc = acc
                    .into_iter()
                    .flat_map(|w| part.elements().map(move |e| w.with(e)))
                    .collect();
            }
            out.extend(acc);
        }
        SetFamily::from_unsorted(self.n, out)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: usize,
    classes: Vec<Vec<usize>>,
    aux: SetFamily,
}

impl Serialize for PartitionStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson {
            n: self.n,
            classes: self.classes.iter().map(|c| c.to_one_indexed()).collect(),
            aux: self.aux.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PartitionJson::deserialize(d)?;
        let classes = j
            .classes
            .iter()
            .map(|c| SetWord::from_one_indexed(c, j.n))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PartitionStructure::new(j.n, classes, j.aux).map_err(serde::de::Error::custom)
    }
}
