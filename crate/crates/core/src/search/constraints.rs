use std::sync::Arc;

use crate::setcore::{k_subsets, SetWord};

/// Incremental feasibility for a growing family of candidate indices.
///
/// `fits` must be monotone: once a candidate stops fitting, adding more
/// members never makes it fit again. `remove` undoes the latest `add`.
pub(crate) trait Constraint: Clone + Send + Sync {
    fn fits(&self, j: usize) -> bool;
    fn add(&mut self, j: usize);
    fn remove(&mut self, j: usize);

    /// Upper bound on how many of `alive` can be added together.
    fn bound(&mut self, alive: &[u32]) -> usize {
        alive.len()
    }
}

/// Windows of a fixed size, each allowed at most `cap` members inside it.
#[derive(Clone)]
pub(crate) struct WindowCap {
    cap: u16,
    counts: Vec<u16>,
    windows_of: Arc<Vec<Vec<u32>>>,
    tight: bool,
    assigned: Vec<u16>,
    touched: Vec<u32>,
}

impl WindowCap {
    pub(crate) fn new(cands: &[SetWord], n: usize, wsize: usize, cap: usize, tight: bool) -> WindowCap {
        let windows: Vec<SetWord> = k_subsets(n, wsize).collect();
        let windows_of: Vec<Vec<u32>> = cands
            .iter()
            .map(|c| {
                windows
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| c.is_subset(**w))
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        WindowCap {
            cap: cap.min(u16::MAX as usize) as u16,
            counts: vec![0; windows.len()],
            windows_of: Arc::new(windows_of),
            tight,
            assigned: vec![0; windows.len()],
            touched: Vec::new(),
        }
    }
}

impl Constraint for WindowCap {
    fn fits(&self, j: usize) -> bool {
        self.windows_of[j].iter().all(|&w| self.counts[w as usize] < self.cap)
    }

    fn add(&mut self, j: usize) {
        for &w in &self.windows_of[j] {
            self.counts[w as usize] += 1;
        }
    }

    fn remove(&mut self, j: usize) {
        for &w in &self.windows_of[j] {
            self.counts[w as usize] -= 1;
        }
    }

    /// Sends every alive candidate to its tightest window; a window can take
    /// no more than its residual capacity of the candidates sent to it.
    fn bound(&mut self, alive: &[u32]) -> usize {
        if !self.tight {
            return alive.len();
        }
        let mut free = 0;
        for &j in alive {
            let wins = &self.windows_of[j as usize];
            let Some(&w) = wins.iter().min_by_key(|&&w| self.cap - self.counts[w as usize]) else {
                free += 1;
                continue;
            };
            if self.assigned[w as usize] == 0 {
                self.touched.push(w);
            }
            self.assigned[w as usize] += 1;
        }
        let mut total = free;
        for &w in &self.touched {
            let w = w as usize;
            let residual = self.cap - self.counts[w];
            total += residual.min(self.assigned[w]) as usize;
            self.assigned[w] = 0;
        }
        self.touched.clear();
        total
    }
}

/// True traces on every window of size `a <= 6`: at most `cap` distinct
/// intersection patterns per window, optionally with an antichain side
/// condition.
#[derive(Clone)]
pub(crate) struct TracedWindows {
    cap: u16,
    nwin: usize,
    slots: usize,
    patterns: Arc<Vec<u8>>,
    counts: Vec<u16>,
    distinct: Vec<u16>,
    comparable: Option<Arc<Vec<Vec<u32>>>>,
    blocked: Vec<u16>,
}

impl TracedWindows {
    pub(crate) fn new(cands: &[SetWord], n: usize, a: usize, cap: usize, antichain: bool) -> TracedWindows {
        assert!(a <= 6, "traced windows hold at most 64 patterns");
        let windows: Vec<SetWord> = k_subsets(n, a).collect();
        let nwin = windows.len();
        let mut patterns = Vec::with_capacity(cands.len() * nwin);
        for c in cands {
            for w in &windows {
                let positions: Vec<usize> = w.elements().collect();
                patterns.push(crate::setcore::project(c.intersection(*w).bits(), &positions) as u8);
            }
        }
        let comparable = antichain.then(|| {
            Arc::new(
                cands
                    .iter()
                    .map(|c| {
                        cands
                            .iter()
                            .enumerate()
                            .filter(|(_, d)| *d != c && (c.is_subset(**d) || d.is_subset(*c)))
                            .map(|(i, _)| i as u32)
                            .collect()
                    })
                    .collect(),
            )
        });
        let slots = 1 << a;
        TracedWindows {
            cap: cap.min(u16::MAX as usize) as u16,
            nwin,
            slots,
            patterns: Arc::new(patterns),
            counts: vec![0; nwin * slots],
            distinct: vec![0; nwin],
            comparable,
            blocked: vec![0; cands.len()],
        }
    }
}

impl Constraint for TracedWindows {
    fn fits(&self, j: usize) -> bool {
        if self.blocked[j] > 0 {
            return false;
        }
        let row = &self.patterns[j * self.nwin..(j + 1) * self.nwin];
        row.iter().enumerate().all(|(w, &p)| {
            self.counts[w * self.slots + p as usize] > 0 || self.distinct[w] < self.cap
        })
    }

    fn add(&mut self, j: usize) {
        for w in 0..self.nwin {
            let p = self.patterns[j * self.nwin + w] as usize;
            let slot = &mut self.counts[w * self.slots + p];
            if *slot == 0 {
                self.distinct[w] += 1;
            }
            *slot += 1;
        }
        if let Some(comp) = &self.comparable {
            for &i in &comp[j] {
                self.blocked[i as usize] += 1;
            }
        }
    }

    fn remove(&mut self, j: usize) {
        for w in 0..self.nwin {
            let p = self.patterns[j * self.nwin + w] as usize;
            let slot = &mut self.counts[w * self.slots + p];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[w] -= 1;
            }
        }
        if let Some(comp) = &self.comparable {
            for &i in &comp[j] {
                self.blocked[i as usize] -= 1;
            }
        }
    }
}

fn pair_index(n: usize, p: SetWord) -> usize {
    let lo = p.bits().trailing_zeros() as usize;
    let hi = 63 - p.bits().leading_zeros() as usize;
    lo * n + hi
}

/// No edges `H1, H2, H3` with `|H1 ∩ H2| = l - 1` and `H1 △ H2 ⊆ H3`.
///
/// Such a family also has at most two edges inside any `(l+1)`-set, which
/// supplies the bound.
#[derive(Clone)]
pub(crate) struct Cancellative {
    n: usize,
    l: usize,
    cands: Arc<Vec<SetWord>>,
    included: Vec<u32>,
    diffs: Vec<u16>,
    cover: Vec<u16>,
    window: WindowCap,
}

impl Cancellative {
    pub(crate) fn new(cands: &[SetWord], n: usize, l: usize, tight: bool) -> Cancellative {
        Cancellative {
            n,
            l,
            cands: Arc::new(cands.to_vec()),
            included: Vec::new(),
            diffs: vec![0; n * n],
            cover: vec![0; n * n],
            window: WindowCap::new(cands, n, l + 1, 2, tight),
        }
    }

    fn pairs(w: SetWord) -> impl Iterator<Item = SetWord> {
        w.elements()
            .flat_map(move |x| w.elements().filter(move |&y| y > x).map(move |y| SetWord::from_elements([x, y])))
    }

    fn step(&mut self, j: usize, up: bool) {
        let c = self.cands[j];
        for &h in &self.included {
            let h = self.cands[h as usize];
            if h.intersection(c).len() + 1 == self.l {
                let slot = &mut self.diffs[pair_index(self.n, h.symmetric_difference(c))];
                if up {
                    *slot += 1;
                } else {
                    *slot -= 1;
                }
            }
        }
        for p in Self::pairs(c) {
            let slot = &mut self.cover[pair_index(self.n, p)];
            if up {
                *slot += 1;
            } else {
                *slot -= 1;
            }
        }
    }
}

impl Constraint for Cancellative {
    fn fits(&self, j: usize) -> bool {
        if !self.window.fits(j) {
            return false;
        }
        let c = self.cands[j];
        if Self::pairs(c).any(|p| self.diffs[pair_index(self.n, p)] > 0) {
            return false;
        }
        self.included.iter().all(|&h| {
            let h = self.cands[h as usize];
            h.intersection(c).len() + 1 != self.l
                || self.cover[pair_index(self.n, h.symmetric_difference(c))] == 0
        })
    }

    fn add(&mut self, j: usize) {
        self.step(j, true);
        self.included.push(j as u32);
        self.window.add(j);
    }

    fn remove(&mut self, j: usize) {
        let last = self.included.pop();
        debug_assert_eq!(last, Some(j as u32));
        self.step(j, false);
        self.window.remove(j);
    }

    fn bound(&mut self, alive: &[u32]) -> usize {
        self.window.bound(alive)
    }
}

/// No three distinct edges with `F1 △ F2 ⊆ F3`.
#[derive(Clone)]
pub(crate) struct UnionFreeStar {
    cands: Arc<Vec<SetWord>>,
    included: Vec<SetWord>,
    window: Option<WindowCap>,
}

impl UnionFreeStar {
    pub(crate) fn new(cands: &[SetWord], n: usize, l: usize, tight: bool) -> UnionFreeStar {
        UnionFreeStar {
            cands: Arc::new(cands.to_vec()),
            included: Vec::new(),
            window: (l + 1 <= n).then(|| WindowCap::new(cands, n, l + 1, 2, tight)),
        }
    }
}

impl Constraint for UnionFreeStar {
    fn fits(&self, j: usize) -> bool {
        if let Some(w) = &self.window {
            if !w.fits(j) {
                return false;
            }
        }
        let c = self.cands[j];
        let inc = &self.included;
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                if a.symmetric_difference(b).is_subset(c) {
                    return false;
                }
            }
            let d = a.symmetric_difference(c);
            if inc.iter().any(|&b| b != a && d.is_subset(b)) {
                return false;
            }
        }
        true
    }

    fn add(&mut self, j: usize) {
        self.included.push(self.cands[j]);
        if let Some(w) = &mut self.window {
            w.add(j);
        }
    }

    fn remove(&mut self, j: usize) {
        self.included.pop();
        if let Some(w) = &mut self.window {
            w.remove(j);
        }
    }

    fn bound(&mut self, alive: &[u32]) -> usize {
        match &mut self.window {
            Some(w) => w.bound(alive),
            None => alive.len(),
        }
    }
}
