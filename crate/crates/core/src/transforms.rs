//! Family transformations that keep traces under control: down-shift
//! compression, symmetrization of two elements, and the partition of a
//! down-set into classes of elements with equal links.

use std::collections::HashMap;

use crate::error::{contract, invalid, Result};
use crate::setcore::{PartitionStructure, SetFamily, SetWord};

fn check_element(fam: &SetFamily, i: usize) -> Result<()> {
    if i < fam.n() {
        Ok(())
    } else {
        Err(crate::Error::ElementOutOfRange {
            element: i + 1,
            n: fam.n(),
        })
    }
}

/// Replaces each `F ∋ i` by `F \ {i}` unless `F \ {i}` is already a member.
///
/// Size is preserved and no trace grows.
pub fn downshift(fam: &SetFamily, i: usize) -> Result<SetFamily> {
    check_element(fam, i)?;
    Ok(shift_once(fam, i).0)
}

fn shift_once(fam: &SetFamily, i: usize) -> (SetFamily, bool) {
    let mut changed = false;
    let members = fam
        .iter()
        .map(|&f| {
            if f.contains(i) && !fam.contains(f.without(i)) {
                changed = true;
                f.without(i)
            } else {
                f
            }
        })
        .collect();
    (SetFamily::from_unsorted(fam.n(), members), changed)
}

/// Repeats down-shifts over `i = 1..n` until a full pass changes nothing.
///
/// The result is a down-set of the same size whose trace on every `Y` is no
/// larger than the input's. Every effective shift lowers `Σ|F|`, so the loop
/// terminates.
pub fn downset_compress(fam: &SetFamily) -> SetFamily {
    let mut cur = fam.clone();
    loop {
        let mut any = false;
        for i in 0..cur.n() {
            let (next, changed) = shift_once(&cur, i);
            any |= changed;
            cur = next;
        }
        if !any {
            return cur;
        }
    }
}

/// Removes every member containing `y` and adds `{y} ∪ G` for each
/// `G ∈ F(x, ȳ)`.
///
/// Afterwards no member contains both `x` and `y`. When `3·2^(a-2) < b`, a
/// down-set with `F ↛ (a,b)` keeps that property.
pub fn symmetrize(fam: &SetFamily, x: usize, y: usize) -> Result<SetFamily> {
    check_element(fam, x)?;
    check_element(fam, y)?;
    if x == y {
        return Err(invalid(format!("symmetrize needs x != y, got {} twice", x + 1)));
    }
    if let Some((f, g)) = fam.first_downset_gap() {
        return Err(contract(format!(
            "symmetrize expects a down-set; {f} is present but {g} is not"
        )));
    }
    let mut out: Vec<SetWord> = fam.iter().copied().filter(|f| !f.contains(y)).collect();
    out.extend(
        fam.iter()
            .filter(|f| f.contains(x) && !f.contains(y))
            .map(|f| f.without(x).with(y)),
    );
    Ok(SetFamily::from_unsorted(fam.n(), out))
}

/// Symmetrizes in whichever direction does not shrink the family.
///
/// Requires that no member contains `{x, y}`; then `F(x, ȳ) = F(x)` and the
/// result has `link(x) = link(y)`.
pub fn symmetrize_if_profitable(fam: &SetFamily, x: usize, y: usize) -> Result<SetFamily> {
    check_element(fam, x)?;
    check_element(fam, y)?;
    if x == y {
        return Err(invalid(format!("symmetrize needs x != y, got {} twice", x + 1)));
    }
    let pair = SetWord::from_elements([x, y]);
    if let Some(f) = fam.iter().find(|f| pair.is_subset(**f)) {
        return Err(contract(format!(
            "member {f} contains both {} and {}",
            x + 1,
            y + 1
        )));
    }
    let deg = |e: usize| fam.iter().filter(|f| f.contains(e)).count();
    if deg(x) >= deg(y) {
        symmetrize(fam, x, y)
    } else {
        symmetrize(fam, y, x)
    }
}

/// Partitions `[n]` by the relation `link(x) = link(y)`.
///
/// Classes are listed by size descending, then by smallest element. The
/// auxiliary family on `[r]` holds `{i : F ∩ Z_i ≠ ∅}` for each member `F`.
pub fn partition_classes(fam: &SetFamily) -> Result<PartitionStructure> {
    if let Some((f, g)) = fam.first_downset_gap() {
        return Err(contract(format!(
            "partition expects a down-set; {f} is present but {g} is not"
        )));
    }
    let n = fam.n();
    let mut by_link: HashMap<Vec<SetWord>, SetWord> = HashMap::new();
    for x in 0..n {
        let link = fam.link(x)?.into_members();
        let class = by_link.entry(link).or_default();
        *class = class.with(x);
    }
    let mut classes: Vec<SetWord> = by_link.into_values().collect();
    classes.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.bits().trailing_zeros()));

    let mut owner = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for e in c.elements() {
            owner[e] = i;
        }
    }
    let aux: Vec<SetWord> = fam
        .iter()
        .map(|f| SetWord::from_elements(f.elements().map(|e| owner[e])))
        .collect();
    let r = classes.len();
    let aux = SetFamily::new(r, aux)?;
    PartitionStructure::new(n, classes, aux)
}

/// Any two distinct 3-sets of the auxiliary family share at most one class.
pub fn check_claim24(ps: &PartitionStructure) -> bool {
    let triples: Vec<SetWord> = ps.aux().iter().copied().filter(|h| h.len() == 3).collect();
    triples.iter().enumerate().all(|(i, h)| {
        triples[i + 1..]
            .iter()
            .all(|g| h.intersection(*g).len() <= 1)
    })
}
