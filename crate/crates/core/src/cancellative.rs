//! Cancellative and union-free uniform families, small Turán numbers for
//! `K_{k+1}^(k)` and `K_{k+1}^(k)-`, and the link between them and the
//! arrow relation on down-sets.

use serde::{Deserialize, Serialize};

use crate::error::{contract, invalid, Result};
use crate::search::constraints::{Cancellative, UnionFreeStar, WindowCap};
use crate::search::engine::{solve, Problem};
use crate::search::{SearchResult, SearchSettings, Witness};
use crate::setcore::{binomial, k_subsets, SetFamily, SetWord};

/// Three edges witnessing a forbidden configuration, in the order
/// `(H1, H2, H3)` with `H1 △ H2 ⊆ H3`.
pub type Triple = (SetWord, SetWord, SetWord);

fn check_uniform(h: &SetFamily, l: usize) -> Result<()> {
    match h.iter().find(|f| f.len() != l) {
        Some(f) => Err(invalid(format!("expected {l}-sets, found {f}"))),
        None => Ok(()),
    }
}

/// The canonically first `(H1, H2, H3)` with `|H1 ∩ H2| = l-1` and
/// `H1 △ H2 ⊆ H3`, if any.
pub fn cancellative_violation(h: &SetFamily, l: usize) -> Result<Option<Triple>> {
    check_uniform(h, l)?;
    let m = h.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if a.intersection(b).len() + 1 != l {
                continue;
            }
            let d = a.symmetric_difference(b);
            if let Some(&c) = m.iter().find(|c| d.is_subset(**c)) {
                return Ok(Some((a, b, c)));
            }
        }
    }
    Ok(None)
}

pub fn is_cancellative(h: &SetFamily, l: usize) -> Result<bool> {
    Ok(cancellative_violation(h, l)?.is_none())
}

/// The canonically first triple of distinct edges with `F1 △ F2 ⊆ F3`.
pub fn unionfree_violation(h: &SetFamily, l: usize) -> Result<Option<Triple>> {
    check_uniform(h, l)?;
    let m = h.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            let d = a.symmetric_difference(b);
            if let Some(&c) = m.iter().find(|c| **c != a && **c != b && d.is_subset(**c)) {
                return Ok(Some((a, b, c)));
            }
        }
    }
    Ok(None)
}

pub fn is_unionfree_star(h: &SetFamily, l: usize) -> Result<bool> {
    Ok(unionfree_violation(h, l)?.is_none())
}

/// For a down-set whose level `l` has `F1, F2` with `|F1 ∩ F2| = l-1` and
/// `F1 △ F2 ∈ F`, returns `Y = F1 ∪ F2`, whose trace is recounted to be at
/// least `3·2^(l-1) + 1` before it is returned.
pub fn claim21_witness(fam: &SetFamily, l: usize) -> Result<Option<SetWord>> {
    if let Some((f, g)) = fam.first_downset_gap() {
        return Err(contract(format!(
            "expected a down-set; {f} is present but {g} is not"
        )));
    }
    if l == 0 || l > fam.n() {
        return Ok(None);
    }
    let level = fam.level(l)?;
    let need = 3usize << (l - 1);
    let m = level.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if a.intersection(b).len() + 1 != l || !fam.contains(a.symmetric_difference(b)) {
                continue;
            }
            let y = a.union(b);
            if fam.trace_size(y)? > need {
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

/// `K_{k+1}^(k)` (all `k+1` edges on `k+1` vertices) or `K_{k+1}^(k)-`
/// (the same minus one edge).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    KComplete,
    KMinus,
}

impl Pattern {
    /// Edges of the pattern on its `k+1` vertices.
    pub fn edges(self, k: usize) -> usize {
        match self {
            Pattern::KComplete => k + 1,
            Pattern::KMinus => k,
        }
    }
}

impl std::str::FromStr for Pattern {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k-complete" | "complete" | "k4" => Ok(Pattern::KComplete),
            "k-minus" | "minus" | "k4-" => Ok(Pattern::KMinus),
            other => Err(invalid(format!("unknown pattern `{other}`"))),
        }
    }
}

/// Whether a `k`-uniform family has a `(k+1)`-set spanning the pattern.
pub fn contains_pattern(h: &SetFamily, k: usize, pattern: Pattern) -> Result<bool> {
    check_uniform(h, k)?;
    let need = pattern.edges(k);
    Ok(k_subsets(h.n(), k + 1).any(|y| h.iter().filter(|e| e.is_subset(y)).count() >= need))
}

fn checked_settings(n: usize, l: usize) -> Result<()> {
    crate::setcore::check_n(n)?;
    if l == 0 || l > n {
        return Err(invalid(format!("need 1 <= l <= n, got l={l}, n={n}")));
    }
    if binomial(n, l) > 4096 {
        return Err(invalid(format!("C({n},{l}) candidates is too many for exhaustive search")));
    }
    Ok(())
}

fn family_result(n: usize, o: crate::search::engine::Outcome) -> Result<SearchResult> {
    let fam = SetFamily::new(n, o.witness.iter().copied())?;
    Ok(SearchResult::from_outcome(o, Witness::Family(fam)))
}

/// Largest cancellative `l`-graph on `[n]`.
pub fn max_cancellative(n: usize, l: usize, settings: &SearchSettings) -> Result<SearchResult> {
    checked_settings(n, l)?;
    if l < 2 {
        return Err(invalid("cancellative search needs l >= 2"));
    }
    let cands: Vec<SetWord> = k_subsets(n, l).collect();
    let c = Cancellative::new(&cands, n, l, settings.window_bound);
    let o = solve(&Problem::unrestricted(n, cands, c), settings);
    let r = family_result(n, o)?;
    if !is_cancellative(r.witness.family().expect("family"), l)? {
        return Err(contract("search witness is not cancellative"));
    }
    Ok(r)
}

/// Largest `l`-graph with no three distinct edges `F1 △ F2 ⊆ F3`.
pub fn max_unionfree_star(n: usize, l: usize, settings: &SearchSettings) -> Result<SearchResult> {
    checked_settings(n, l)?;
    let cands: Vec<SetWord> = k_subsets(n, l).collect();
    let c = UnionFreeStar::new(&cands, n, l, settings.window_bound);
    let o = solve(&Problem::unrestricted(n, cands, c), settings);
    let r = family_result(n, o)?;
    if !is_unionfree_star(r.witness.family().expect("family"), l)? {
        return Err(contract("search witness is not union-free"));
    }
    Ok(r)
}

/// `ex_k(n, pattern)`: largest `k`-graph on `[n]` without the pattern.
pub fn ex_uniform(n: usize, k: usize, pattern: Pattern, settings: &SearchSettings) -> Result<SearchResult> {
    checked_settings(n, k)?;
    let cands: Vec<SetWord> = k_subsets(n, k).collect();
    let cap = WindowCap::new(&cands, n, k + 1, pattern.edges(k) - 1, settings.window_bound);
    let o = solve(&Problem::unrestricted(n, cands, cap), settings);
    let r = family_result(n, o)?;
    if contains_pattern(r.witness.family().expect("family"), k, pattern)? {
        return Err(contract("search witness contains the forbidden pattern"));
    }
    Ok(r)
}

/// `ex_3(n, K_4^(3))` or `ex_3(n, K_4^(3)-)`.
pub fn ex3(n: usize, pattern: Pattern, settings: &SearchSettings) -> Result<SearchResult> {
    ex_uniform(n, 3, pattern, settings)
}

/// Both sides of one half of the arrow/Turán equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prop4Side {
    pub arrow_holds: bool,
    pub pattern_free: bool,
}

impl Prop4Side {
    /// The equivalence says exactly one of the two is true.
    pub fn consistent(&self) -> bool {
        self.arrow_holds != self.pattern_free
    }
}

/// `(i)`: `F → (k+1, 2^(k+1)-1)` against `K_{k+1}^(k)`-freeness of the top
/// level; `(ii)`: `F → (k+1, 2^(k+1)-2)` against `K_{k+1}^(k)-`-freeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prop4 {
    pub complete: Prop4Side,
    pub minus: Prop4Side,
}

pub fn classify_prop4(fam: &SetFamily, k: usize) -> Result<Prop4> {
    if k == 0 || k >= fam.n() {
        return Err(invalid(format!("need 1 <= k < n, got k={k}, n={}", fam.n())));
    }
    if let Some(f) = fam.iter().find(|f| f.len() > k) {
        return Err(invalid(format!("member {f} has more than {k} elements")));
    }
    if let Some((f, g)) = fam.first_downset_gap() {
        return Err(contract(format!(
            "expected a down-set; {f} is present but {g} is not"
        )));
    }
    let top = fam.level(k)?;
    let full = 1usize << (k + 1);
    let side = |b: usize, p: Pattern| -> Result<Prop4Side> {
        Ok(Prop4Side {
            arrow_holds: fam.arrows(k + 1, b)?,
            pattern_free: !contains_pattern(&top, k, p)?,
        })
    };
    Ok(Prop4 {
        complete: side(full - 1, Pattern::KComplete)?,
        minus: side(full - 2, Pattern::KMinus)?,
    })
}

/// Which of the two dual bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `m(n, k+1, 2^(k+1)-1)` via `K_{k+1}^(k)`.
    I,
    /// `m(n, k+1, 2^(k+1)-2)` via `K_{k+1}^(k)-`.
    II,
}

impl Variant {
    pub fn pattern(self) -> Pattern {
        match self {
            Variant::I => Pattern::KComplete,
            Variant::II => Pattern::KMinus,
        }
    }

    /// The trace threshold `b` this variant speaks about.
    pub fn b(self, k: usize) -> usize {
        match self {
            Variant::I => (1 << (k + 1)) - 1,
            Variant::II => (1 << (k + 1)) - 2,
        }
    }
}

/// `m(n, k+1, b) = 1 + Σ_{l<k} C(n,l) + ex_k(n, pattern)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Corollary45 {
    pub value: u128,
    pub ex: usize,
    pub proved_optimal: bool,
}

pub fn corollary45(n: usize, k: usize, variant: Variant, settings: &SearchSettings) -> Result<Corollary45> {
    if !(2..=4).contains(&k) {
        return Err(invalid(format!("corollary evaluation supports 2 <= k <= 4, got k={k}")));
    }
    let r = ex_uniform(n, k, variant.pattern(), settings)?;
    let lower: u128 = (0..k).map(|l| binomial(n, l)).sum();
    Ok(Corollary45 {
        value: 1 + lower + r.optimum as u128,
        ex: r.optimum,
        proved_optimal: r.proved_optimal,
    })
}
