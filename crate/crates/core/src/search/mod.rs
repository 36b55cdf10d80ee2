//! Exact branch-and-bound for the extremal sizes behind the arrow relation.
//!
//! Searches run over candidate sets in canonical order, include-first. Every
//! node bounds the best completion by counting (or window-packing) the
//! candidates that can still be added, and prefixes that are isomorphic to an
//! earlier one are skipped. Budgets turn an unfinished search into an
//! unproved best-found answer, never into a wrong optimum.

mod canon;
pub(crate) mod constraints;
pub(crate) mod engine;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::constructions::TildeFamily;
use crate::error::{contract, invalid, Result};
use crate::setcore::{binomial, check_n, k_subsets, SetFamily, SetWord};
use constraints::{TracedWindows, WindowCap};
use engine::{solve, Outcome, Problem};

const MAX_CANDIDATES: usize = 4096;
const MAX_INCIDENCES: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Down-sets with every trace on `a`-sets below `b`.
    FullDownset,
    /// Complete pairs-plus-triples families avoiding a hook load of `c`.
    TildeComplete,
    /// Antichains with every trace on `a`-sets below `b`.
    Antichain,
}

impl std::str::FromStr for SearchMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-downset" | "full" | "downset" => Ok(SearchMode::FullDownset),
            "tilde-complete" | "tilde" => Ok(SearchMode::TildeComplete),
            "antichain" => Ok(SearchMode::Antichain),
            other => Err(invalid(format!("unknown search mode `{other}`"))),
        }
    }
}

/// Budgets and engine switches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub budget_nodes: u64,
    pub budget_secs: f64,
    pub threads: usize,
    pub isomorph_rejection: bool,
    /// Window-packing bound in place of the plain candidate count.
    pub window_bound: bool,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings {
            budget_nodes: 100_000_000,
            budget_secs: 300.0,
            threads: 1,
            isomorph_rejection: true,
            window_bound: true,
        }
    }
}

/// `(n, a, b, mode)`: forbid traces of size `>= b` on `a`-sets.
///
/// Tilde queries carry `a = 4` and `b = c + 5`, the full-family threshold
/// that corresponds to a hook load of `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrowQuery {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub mode: SearchMode,
    pub settings: SearchSettings,
}

impl ArrowQuery {
    pub fn full(n: usize, a: usize, b: usize) -> ArrowQuery {
        ArrowQuery {
            n,
            a,
            b,
            mode: SearchMode::FullDownset,
            settings: SearchSettings::default(),
        }
    }

    pub fn tilde(n: usize, c: usize) -> ArrowQuery {
        ArrowQuery {
            n,
            a: 4,
            b: c + 5,
            mode: SearchMode::TildeComplete,
            settings: SearchSettings::default(),
        }
    }

    /// Antichains with `F ↛ (k+1, 2^(k+1))`.
    pub fn antichain(n: usize, k: usize) -> ArrowQuery {
        ArrowQuery {
            n,
            a: k + 1,
            b: 1usize.checked_shl(k as u32 + 1).unwrap_or(usize::MAX),
            mode: SearchMode::Antichain,
            settings: SearchSettings::default(),
        }
    }

    pub fn with_settings(mut self, settings: SearchSettings) -> ArrowQuery {
        self.settings = settings;
        self
    }

    /// Hook load `c` of a tilde query.
    pub fn c(&self) -> Option<usize> {
        (self.mode == SearchMode::TildeComplete).then(|| self.b.saturating_sub(5))
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if self.mode == SearchMode::TildeComplete {
            if self.a != 4 {
                return Err(invalid(format!("tilde queries use a = 4, got a={}", self.a)));
            }
            if self.n < 4 {
                return Err(invalid(format!("tilde queries need n >= 4, got n={}", self.n)));
            }
            let c = self.b.checked_sub(5).unwrap_or(0);
            if !(1..=10).contains(&c) {
                return Err(invalid(format!("hook load c must lie in 1..=10, got b={}", self.b)));
            }
        } else {
            if self.a == 0 || self.a > self.n {
                return Err(invalid(format!("need 1 <= a <= n, got a={}, n={}", self.a, self.n)));
            }
            let full = 1u128 << self.a.min(127);
            if self.b < 2 || self.b as u128 > full {
                return Err(invalid(format!(
                    "need 2 <= b <= 2^a = {full}; b={} is vacuous or out of range",
                    self.b
                )));
            }
        }
        let s = &self.settings;
        if !(s.budget_secs > 0.0) || s.budget_nodes == 0 {
            return Err(invalid("budgets must be positive"));
        }
        Ok(())
    }
}

/// The certified extremal object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Family(SetFamily),
    Tilde(TildeFamily),
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Witness::Family(f) => f.serialize(s),
            Witness::Tilde(t) => t.serialize(s),
        }
    }
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Family(f) => f.len(),
            Witness::Tilde(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn family(&self) -> Option<&SetFamily> {
        match self {
            Witness::Family(f) => Some(f),
            Witness::Tilde(_) => None,
        }
    }

    pub fn tilde(&self) -> Option<&TildeFamily> {
        match self {
            Witness::Tilde(t) => Some(t),
            Witness::Family(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: Witness,
    pub proved_optimal: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl Serialize for SearchResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            optimum: usize,
            proved_optimal: bool,
            witness: &'a Witness,
            nodes: u64,
            elapsed_ms: u64,
        }
        Out {
            optimum: self.optimum,
            proved_optimal: self.proved_optimal,
            witness: &self.witness,
            nodes: self.nodes,
            elapsed_ms: self.elapsed.as_millis() as u64,
        }
        .serialize(s)
    }
}

impl SearchResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialization is infallible")
    }

    pub(crate) fn from_outcome(o: Outcome, witness: Witness) -> SearchResult {
        SearchResult {
            optimum: o.optimum,
            witness,
            proved_optimal: o.proved_optimal,
            nodes: o.nodes,
            elapsed: o.elapsed,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QueryJson {
    n: usize,
    #[serde(default)]
    a: Option<usize>,
    #[serde(default)]
    b: Option<usize>,
    #[serde(default)]
    c: Option<usize>,
    mode: SearchMode,
    #[serde(default)]
    budget_nodes: Option<u64>,
    #[serde(default)]
    budget_secs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threads: Option<usize>,
}

impl ArrowQuery {
    /// Tilde queries accept `c` in place of `b`.
    pub fn from_json(s: &str) -> Result<ArrowQuery> {
        let j: QueryJson = serde_json::from_str(s)?;
        let defaults = SearchSettings::default();
        let settings = SearchSettings {
            budget_nodes: j.budget_nodes.unwrap_or(defaults.budget_nodes),
            budget_secs: j.budget_secs.unwrap_or(defaults.budget_secs),
            threads: j.threads.unwrap_or(defaults.threads),
            ..defaults
        };
        let q = match j.mode {
            SearchMode::TildeComplete => {
                let b = match (j.b, j.c) {
                    (_, Some(c)) => c + 5,
                    (Some(b), None) => b,
                    (None, None) => return Err(invalid("tilde query needs `c`")),
                };
                if let (Some(b0), Some(c)) = (j.b, j.c) {
                    if b0 != c + 5 {
                        return Err(invalid(format!("inconsistent tilde query: b={b0}, c={c}")));
                    }
                }
                ArrowQuery {
                    n: j.n,
                    a: j.a.unwrap_or(4),
                    b,
                    mode: j.mode,
                    settings,
                }
            }
            mode => ArrowQuery {
                n: j.n,
                a: j.a.ok_or_else(|| invalid("query needs `a`"))?,
                b: j.b.ok_or_else(|| invalid("query needs `b`"))?,
                mode,
                settings,
            },
        };
        q.validate()?;
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        let j = QueryJson {
            n: self.n,
            a: Some(self.a),
            b: Some(self.b),
            c: self.c(),
            mode: self.mode,
            budget_nodes: Some(self.settings.budget_nodes),
            budget_secs: Some(self.settings.budget_secs),
            threads: None,
        };
        serde_json::to_string(&j).expect("query serialization is infallible")
    }
}

fn check_size(cands: usize, windows: u128) -> Result<()> {
    if cands > MAX_CANDIDATES || cands as u128 * windows > MAX_INCIDENCES {
        return Err(invalid(format!(
            "instance too large for exhaustive search ({cands} candidates, {windows} windows)"
        )));
    }
    Ok(())
}

fn sets_up_to(n: usize, max: usize) -> Vec<SetWord> {
    (0..=max.min(n)).flat_map(|k| k_subsets(n, k)).collect()
}

fn reverify_family(w: &SetFamily, a: usize, b: usize) -> Result<()> {
    if w.arrows(a, b)? {
        return Err(contract(format!(
            "search witness violates the trace bound ({a},{b})"
        )));
    }
    Ok(())
}

/// Dispatches on the query mode.
pub fn run(q: &ArrowQuery) -> Result<SearchResult> {
    match q.mode {
        SearchMode::FullDownset => max_family(q),
        SearchMode::TildeComplete => max_tilde(q),
        SearchMode::Antichain => max_antichain(q),
    }
}

/// Largest down-set with `F ↛ (a,b)`, i.e. `m(n,a,b) - 1`.
///
/// Members have size at most `a - 1`: a member of size `a` alone gives a full
/// trace of `2^a >= b`. On a down-set the trace on `Y` is the number of
/// members inside `Y`, which the engine keeps per window.
pub fn max_family(q: &ArrowQuery) -> Result<SearchResult> {
    if q.mode != SearchMode::FullDownset {
        return Err(invalid("max_family expects a full-downset query"));
    }
    q.validate()?;
    let (n, a, b) = (q.n, q.a, q.b);
    let cands = sets_up_to(n, a - 1);
    check_size(cands.len(), binomial(n, a))?;
    let cap = WindowCap::new(&cands, n, a, b - 1, q.settings.window_bound);
    let problem = Problem::downward(n, cands, cap);
    let o = solve(&problem, &q.settings);
    let fam = SetFamily::new(n, o.witness.iter().copied())?;
    reverify_family(&fam, a, b)?;
    if !fam.is_downset() {
        return Err(contract("search witness is not a down-set"));
    }
    Ok(SearchResult::from_outcome(o, Witness::Family(fam)))
}

/// Largest complete `|g2| + |g3|` with every 4-set load below `c`,
/// i.e. `m~(n,4,c) - 1`.
pub fn max_tilde(q: &ArrowQuery) -> Result<SearchResult> {
    if q.mode != SearchMode::TildeComplete {
        return Err(invalid("max_tilde expects a tilde-complete query"));
    }
    q.validate()?;
    let n = q.n;
    let c = q.c().expect("tilde query");
    let cands: Vec<SetWord> = k_subsets(n, 2).chain(k_subsets(n, 3)).collect();
    check_size(cands.len(), binomial(n, 4))?;
    let cap = WindowCap::new(&cands, n, 4, c - 1, q.settings.window_bound);
    let problem = Problem::downward(n, cands, cap);
    let o = solve(&problem, &q.settings);
    let g2 = SetFamily::new(n, o.witness.iter().copied().filter(|w| w.len() == 2))?;
    let g3 = SetFamily::new(n, o.witness.iter().copied().filter(|w| w.len() == 3))?;
    let tf = TildeFamily::new(g2, g3)?;
    if tf.hookarrow(c)? {
        return Err(contract(format!("search witness carries a hook load of {c}")));
    }
    Ok(SearchResult::from_outcome(o, Witness::Tilde(tf)))
}

/// Largest antichain with `F ↛ (a,b)`; no down-set reduction applies.
pub fn max_antichain(q: &ArrowQuery) -> Result<SearchResult> {
    if q.mode != SearchMode::Antichain {
        return Err(invalid("max_antichain expects an antichain query"));
    }
    q.validate()?;
    traced_search(q.n, q.a, q.b, q.n, true, &q.settings)
}

/// Largest family of sets of size at most `max_size` with `F ↛ (a,b)`,
/// without assuming a down-set.
pub fn max_family_unrestricted(
    n: usize,
    a: usize,
    b: usize,
    max_size: usize,
    settings: &SearchSettings,
) -> Result<SearchResult> {
    let q = ArrowQuery::full(n, a, b).with_settings(settings.clone());
    q.validate()?;
    traced_search(n, a, b, max_size, false, settings)
}

fn traced_search(
    n: usize,
    a: usize,
    b: usize,
    max_size: usize,
    antichain: bool,
    settings: &SearchSettings,
) -> Result<SearchResult> {
    if a > 6 {
        return Err(invalid(format!("traced search supports a <= 6, got a={a}")));
    }
    let cands = sets_up_to(n, max_size);
    check_size(cands.len(), binomial(n, a) << a)?;
    let tw = TracedWindows::new(&cands, n, a, b - 1, antichain);
    let problem = Problem::unrestricted(n, cands, tw);
    let o = solve(&problem, settings);
    let fam = SetFamily::new(n, o.witness.iter().copied())?;
    reverify_family(&fam, a, b)?;
    if antichain && !fam.is_antichain() {
        return Err(contract("search witness is not an antichain"));
    }
    Ok(SearchResult::from_outcome(o, Witness::Family(fam)))
}

/// Three-valued answer to `(n,m) → (a,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrowDecision {
    Holds,
    Fails,
    /// The budget ran out before the optimum was settled.
    Indeterminate,
}

/// Decides `(n,m) → (a,b)` from the optimum `m(n,a,b) - 1`.
///
/// A best-found family of size `>= m` settles `Fails` even without a proof
/// of optimality.
pub fn decide_arrow(
    n: usize,
    m: usize,
    a: usize,
    b: usize,
    settings: &SearchSettings,
) -> Result<(ArrowDecision, SearchResult)> {
    let r = max_family(&ArrowQuery::full(n, a, b).with_settings(settings.clone()))?;
    let d = if r.optimum >= m {
        ArrowDecision::Fails
    } else if r.proved_optimal {
        ArrowDecision::Holds
    } else {
        ArrowDecision::Indeterminate
    };
    Ok((d, r))
}

/// Both sides of `m~(n,4,c) = m(n,4,c+5) - n - 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crosscheck {
    pub n: usize,
    pub c: usize,
    pub tilde_optimum: usize,
    pub full_optimum: usize,
    /// `None` when either search was cut short.
    pub holds: Option<bool>,
}

pub fn crosscheck_mtilde(n: usize, c: usize, settings: &SearchSettings) -> Result<Crosscheck> {
    let t = max_tilde(&ArrowQuery::tilde(n, c).with_settings(settings.clone()))?;
    let f = max_family(&ArrowQuery::full(n, 4, c + 5).with_settings(settings.clone()))?;
    let holds = (t.proved_optimal && f.proved_optimal).then(|| t.optimum + n + 1 == f.optimum);
    Ok(Crosscheck {
        n,
        c,
        tilde_optimum: t.optimum,
        full_optimum: f.optimum,
        holds,
    })
}
