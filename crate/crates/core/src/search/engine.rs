use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

/// Wall clock; on wasm32 time is not measured and only node budgets apply.
#[derive(Clone, Copy)]
struct Clock(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Clock {
    fn start() -> Clock {
        #[cfg(not(target_arch = "wasm32"))]
        return Clock(std::time::Instant::now());
        #[cfg(target_arch = "wasm32")]
        return Clock();
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed();
        #[cfg(target_arch = "wasm32")]
        return Duration::ZERO;
    }
}

use super::canon::canonical_image;
use super::constraints::Constraint;
use super::SearchSettings;
use crate::setcore::{binomial, SetWord};

/// Largest `m` for which `Sym([m])` is used for isomorph rejection.
const ISO_MAX_M: usize = 8;
/// Maps tried per canonical form before a boundary gives up on a node.
const ISO_PERM_LIMIT: u64 = 5040;
/// Total words kept across all seen-sets.
const ISO_MAX_WORDS: usize = 1 << 23;
const ISO_MIN_REMAINING: usize = 3;
const CHECK_EVERY: u64 = 1 << 10;
const SPLIT_DEPTH: usize = 14;

/// A maximisation problem over subsets of `cands`.
///
/// Candidates are listed in canonical order. `reqs[j]` lists earlier
/// candidates that must be present before `j` may be added.
pub(crate) struct Problem<C> {
    pub n: usize,
    pub cands: Vec<SetWord>,
    pub reqs: Vec<Vec<u32>>,
    pub constraint: C,
}

pub(crate) struct Outcome {
    pub optimum: usize,
    pub witness: Vec<SetWord>,
    pub proved_optimal: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl<C: Constraint> Problem<C> {
    /// Immediate subsets become requirements; subsets outside `cands` are
    /// treated as always present.
    pub(crate) fn downward(n: usize, cands: Vec<SetWord>, constraint: C) -> Problem<C> {
        let reqs = cands
            .iter()
            .map(|c| {
                c.elements()
                    .filter_map(|e| cands.binary_search(&c.without(e)).ok())
                    .map(|i| i as u32)
                    .collect()
            })
            .collect();
        Problem {
            n,
            cands,
            reqs,
            constraint,
        }
    }

    pub(crate) fn unrestricted(n: usize, cands: Vec<SetWord>, constraint: C) -> Problem<C> {
        let reqs = vec![Vec::new(); cands.len()];
        Problem {
            n,
            cands,
            reqs,
            constraint,
        }
    }
}

struct Boundary {
    m: usize,
    slot: usize,
}

/// Positions where the decided prefix is invariant under `Sym([m])`: the
/// first size-`s` candidate with value at least `2^m`.
fn boundaries(n: usize, cands: &[SetWord]) -> Vec<Option<Boundary>> {
    let mut at: Vec<Option<Boundary>> = (0..=cands.len()).map(|_| None).collect();
    let mut slot = 0;
    let mut start = 0;
    while start < cands.len() {
        let s = cands[start].len();
        let mut end = start;
        while end < cands.len() && cands[end].len() == s {
            end += 1;
        }
        let complete = binomial(n, s) == (end - start) as u128;
        if complete && s > 0 {
            for m in s + 1..=n.min(ISO_MAX_M) {
                let pos = start + binomial(m, s) as usize;
                if pos + ISO_MIN_REMAINING <= cands.len() && m >= 2 {
                    at[pos] = Some(Boundary { m, slot });
                    slot += 1;
                }
            }
        }
        start = end;
    }
    at
}

struct Shared<'a, C> {
    problem: &'a Problem<C>,
    settings: &'a SearchSettings,
    iso: Vec<Option<Boundary>>,
    seen: Vec<Mutex<HashSet<Box<[u64]>>>>,
    seen_words: AtomicUsize,
    best: AtomicUsize,
    witness: Mutex<Vec<u32>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    start: Clock,
}

impl<C> Shared<'_, C> {
    fn offer(&self, stack: &[u32]) {
        if stack.len() <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut w = self.witness.lock().expect("witness lock");
        if stack.len() > self.best.load(Ordering::Relaxed) {
            *w = stack.to_vec();
            self.best.store(stack.len(), Ordering::Relaxed);
        }
    }

    /// Returns true when an isomorphic prefix was seen before.
    fn already_seen(&self, b: &Boundary, members: &[SetWord]) -> bool {
        let Some(form) = canonical_image(members, b.m, ISO_PERM_LIMIT) else {
            return false;
        };
        let mut seen = self.seen[b.slot].lock().expect("seen lock");
        if seen.contains(form.as_slice()) {
            return true;
        }
        if self.seen_words.load(Ordering::Relaxed) + form.len() + 1 <= ISO_MAX_WORDS {
            self.seen_words.fetch_add(form.len() + 1, Ordering::Relaxed);
            seen.insert(form.into_boxed_slice());
        }
        false
    }
}

struct Worker<'s, 'a, C> {
    sh: &'s Shared<'a, C>,
    c: C,
    included: Vec<bool>,
    stack: Vec<u32>,
    words: Vec<SetWord>,
    alive: Vec<bool>,
    alive_list: Vec<u32>,
    pending: u64,
    split: Option<(usize, Vec<(Vec<u32>, usize)>)>,
}

impl<'s, 'a, C: Constraint> Worker<'s, 'a, C> {
    fn new(sh: &'s Shared<'a, C>) -> Self {
        let n = sh.problem.cands.len();
        Worker {
            sh,
            c: sh.problem.constraint.clone(),
            included: vec![false; n],
            stack: Vec::new(),
            words: Vec::new(),
            alive: vec![false; n],
            alive_list: Vec::new(),
            pending: 0,
            split: None,
        }
    }

    fn push(&mut self, j: usize) {
        self.c.add(j);
        self.included[j] = true;
        self.stack.push(j as u32);
        self.words.push(self.sh.problem.cands[j]);
    }

    fn pop(&mut self) {
        let j = self.stack.pop().expect("non-empty stack") as usize;
        self.words.pop();
        self.included[j] = false;
        self.c.remove(j);
    }

    fn flush(&mut self, check: bool) {
        let total = self.sh.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        let s = self.sh.settings;
        if !check {
            return;
        }
        if total >= s.budget_nodes || self.sh.start.elapsed().as_secs_f64() >= s.budget_secs {
            self.sh.exhausted.store(true, Ordering::Relaxed);
            self.sh.stop.store(true, Ordering::Relaxed);
        }
    }

    fn reqs_met(&self, j: usize) -> bool {
        self.sh.problem.reqs[j].iter().all(|&r| self.included[r as usize])
    }

    fn upper_bound(&mut self, from: usize) -> usize {
        let p = self.sh.problem;
        self.alive_list.clear();
        for i in from..p.cands.len() {
            let ok = p.reqs[i].iter().all(|&r| {
                let r = r as usize;
                if r < from {
                    self.included[r]
                } else {
                    self.alive[r]
                }
            }) && self.c.fits(i);
            self.alive[i] = ok;
            if ok {
                self.alive_list.push(i as u32);
            }
        }
        let list = std::mem::take(&mut self.alive_list);
        let b = self.c.bound(&list).min(list.len());
        self.alive_list = list;
        b
    }

    fn dfs(&mut self, k: usize) {
        if self.sh.stop.load(Ordering::Relaxed) {
            return;
        }
        self.pending += 1;
        if self.pending >= CHECK_EVERY || self.sh.settings.budget_nodes < CHECK_EVERY {
            self.flush(true);
        }
        if let Some((depth, tasks)) = &mut self.split {
            if k >= *depth {
                tasks.push((self.stack.clone(), k));
                return;
            }
        }
        let p = self.sh.problem;
        let isomorph = self.sh.settings.isomorph_rejection;
        let mut j = k;
        loop {
            if isomorph {
                if let Some(b) = &self.sh.iso[j] {
                    if self.sh.already_seen(b, &self.words) {
                        return;
                    }
                }
            }
            if j == p.cands.len() {
                self.sh.offer(&self.stack);
                return;
            }
            if self.reqs_met(j) && self.c.fits(j) {
                break;
            }
            j += 1;
        }
        let ub = self.upper_bound(j);
        if self.stack.len() + ub <= self.sh.best.load(Ordering::Relaxed) {
            return;
        }
        self.push(j);
        self.dfs(j + 1);
        self.pop();
        self.dfs(j + 1);
    }
}

pub(crate) fn solve<C: Constraint>(problem: &Problem<C>, settings: &SearchSettings) -> Outcome {
    let start = Clock::start();
    let iso = boundaries(problem.n, &problem.cands);
    let slots = iso.iter().flatten().count();
    let shared = Shared {
        problem,
        settings,
        iso,
        seen: (0..slots).map(|_| Mutex::new(HashSet::new())).collect(),
        seen_words: AtomicUsize::new(0),
        best: AtomicUsize::new(0),
        witness: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        start,
    };
    let threads = settings.threads.max(1);

    let sh = &shared;
    if cfg!(target_arch = "wasm32") {
        let mut w = Worker::new(sh);
        w.dfs(0);
        w.flush(false);
    } else if threads == 1 || problem.cands.len() <= SPLIT_DEPTH {
        std::thread::scope(|scope| {
            spawn_big(scope, move || {
                let mut w = Worker::new(sh);
                w.dfs(0);
                w.flush(false);
            })
            .join()
            .expect("search thread panicked");
        });
    } else {
        let tasks = std::thread::scope(|scope| {
            spawn_big(scope, move || {
                let mut w = Worker::new(sh);
                w.split = Some((SPLIT_DEPTH, Vec::new()));
                w.dfs(0);
                w.flush(false);
                w.split.take().map(|(_, t)| t).unwrap_or_default()
            })
            .join()
            .expect("search thread panicked")
        });
        let next = AtomicUsize::new(0);
        let (tasks, next) = (&tasks, &next);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|_| {
                    spawn_big(scope, move || {
                        let mut w = Worker::new(sh);
                        while let Some((prefix, k)) = tasks.get(next.fetch_add(1, Ordering::Relaxed)) {
                            for &j in prefix {
                                w.push(j as usize);
                            }
                            w.dfs(*k);
                            while !w.stack.is_empty() {
                                w.pop();
                            }
                        }
                        w.flush(false);
                    })
                })
                .collect();
            for h in handles {
                h.join().expect("search thread panicked");
            }
        });
    }

    let witness: Vec<SetWord> = shared
        .witness
        .into_inner()
        .expect("witness lock")
        .into_iter()
        .map(|j| problem.cands[j as usize])
        .collect();
    Outcome {
        optimum: witness.len(),
        witness,
        proved_optimal: !shared.exhausted.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    }
}

fn spawn_big<'scope, T: Send + 'scope>(
    scope: &'scope std::thread::Scope<'scope, '_>,
    f: impl FnOnce() -> T + Send + 'scope,
) -> std::thread::ScopedJoinHandle<'scope, T> {
    std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn_scoped(scope, f)
        .expect("spawn search thread")
}
