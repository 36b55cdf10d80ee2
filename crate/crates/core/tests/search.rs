use std::collections::HashSet;

use tracelab::search::{
    crosscheck_mtilde, decide_arrow, max_antichain, max_family, max_family_unrestricted, max_tilde, run,
    ArrowDecision, ArrowQuery, SearchMode, SearchSettings,
};
use tracelab::setcore::{k_subsets, SetFamily, SetWord};

fn plain() -> SearchSettings {
    SearchSettings::default()
}

fn no_iso() -> SearchSettings {
    SearchSettings {
        isomorph_rejection: false,
        ..SearchSettings::default()
    }
}

fn loose() -> SearchSettings {
    SearchSettings {
        window_bound: false,
        ..SearchSettings::default()
    }
}

/// Every down-set of `2^[n]`, by include/exclude over sets in size order.
fn all_downsets(n: usize) -> Vec<Vec<u64>> {
    let sets: Vec<u64> = (0..=n).flat_map(|k| k_subsets(n, k)).map(|w| w.bits()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(i: usize, sets: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == sets.len() {
            out.push(cur.clone());
            return;
        }
        let s = sets[i];
        let ok = (0..64).filter(|e| s >> e & 1 == 1).all(|e| cur.contains(&(s & !(1 << e))));
        if ok {
            cur.push(s);
            go(i + 1, sets, cur, out);
            cur.pop();
        }
        go(i + 1, sets, cur, out);
    }
    go(0, &sets, &mut cur, &mut out);
    out
}

fn max_trace(members: &[u64], n: usize, a: usize) -> usize {
    k_subsets(n, a)
        .map(|y| members.iter().map(|m| m & y.bits()).collect::<HashSet<_>>().len())
        .max()
        .unwrap_or(0)
}

fn maximal(members: &[u64]) -> Vec<u64> {
    members
        .iter()
        .copied()
        .filter(|&m| !members.iter().any(|&o| o != m && o & m == m))
        .collect()
}

#[test]
fn downset_enumeration_counts() {
    assert_eq!(all_downsets(3).len(), 20);
    assert_eq!(all_downsets(4).len(), 168);
    assert_eq!(all_downsets(5).len(), 7581);
}

#[test]
fn full_optima_match_enumeration() {
    for n in 2..=5 {
        let ds = all_downsets(n);
        for a in 1..=n {
            let traces: Vec<(usize, usize)> = ds.iter().map(|d| (d.len(), max_trace(d, n, a))).collect();
            for b in 2..=(1 << a) {
                let oracle = traces.iter().filter(|(_, t)| *t < b).map(|(s, _)| *s).max().unwrap();
                for settings in [plain(), no_iso(), loose()] {
                    let r = max_family(&ArrowQuery::full(n, a, b).with_settings(settings)).unwrap();
                    assert!(r.proved_optimal);
                    assert_eq!(r.optimum, oracle, "n={n} a={a} b={b}");
                    let w = r.witness.family().unwrap();
                    assert_eq!(w.len(), r.optimum);
                    assert!(w.is_downset());
                    assert!(!w.arrows(a, b).unwrap());
                }
            }
        }
    }
}

#[test]
fn tilde_optima_match_enumeration() {
    for n in 4..=5 {
        let ds: Vec<Vec<u64>> = all_downsets(n)
            .into_iter()
            .filter(|d| d.len() > n && d.iter().all(|m| m.count_ones() <= 3))
            .filter(|d| (0..n).all(|i| d.contains(&(1 << i))))
            .collect();
        let traces: Vec<(usize, usize)> = ds.iter().map(|d| (d.len() - n - 1, max_trace(d, n, 4))).collect();
        for c in 1..=10 {
            let oracle = traces.iter().filter(|(_, t)| *t < c + 5).map(|(s, _)| *s).max().unwrap();
            for settings in [plain(), no_iso()] {
                let r = max_tilde(&ArrowQuery::tilde(n, c).with_settings(settings)).unwrap();
                assert!(r.proved_optimal);
                assert_eq!(r.optimum, oracle, "n={n} c={c}");
                let t = r.witness.tilde().unwrap();
                assert!(!t.hookarrow(c).unwrap());
            }
        }
    }
}

#[test]
fn antichain_optima_match_enumeration() {
    for n in 3..=5 {
        let antichains: Vec<Vec<u64>> = all_downsets(n).iter().map(|d| maximal(d)).collect();
        for k in 0..n {
            let a = k + 1;
            let oracle = antichains
                .iter()
                .filter(|x| max_trace(x, n, a) < 1 << a)
                .map(|x| x.len())
                .max()
                .unwrap();
            let r = max_antichain(&ArrowQuery::antichain(n, k)).unwrap();
            assert!(r.proved_optimal);
            assert_eq!(r.optimum, oracle, "n={n} k={k}");
            let w = r.witness.family().unwrap();
            assert!(w.is_antichain());
            assert!(r.optimum as u128 >= binomial(n, k));
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[test]
fn antichain_examples() {
    let r = max_antichain(&ArrowQuery::antichain(4, 1)).unwrap();
    assert!(r.optimum <= 4);
    let r = max_antichain(&ArrowQuery::antichain(4, 2)).unwrap();
    assert_eq!(r.optimum, 6);
    for n in 3..=5 {
        for k in 1..n {
            let level = SetFamily::power_set(n).unwrap().level(k).unwrap();
            assert!(!level.arrows(k + 1, 1 << (k + 1)).unwrap());
        }
    }
}

#[test]
fn search_examples() {
    assert_eq!(max_family(&ArrowQuery::full(4, 3, 7)).unwrap().optimum, 9);
    assert_eq!(max_family(&ArrowQuery::full(4, 2, 4)).unwrap().optimum, 5);
    assert!(max_family(&ArrowQuery::full(5, 4, 13)).unwrap().optimum >= 18);
    assert_eq!(max_tilde(&ArrowQuery::tilde(6, 7)).unwrap().optimum, 16);
    assert_eq!(max_tilde(&ArrowQuery::tilde(5, 5)).unwrap().optimum, 6);
    assert_eq!(max_tilde(&ArrowQuery::tilde(5, 1)).unwrap().optimum, 0);
}

#[test]
fn arrow_decisions() {
    assert_eq!(decide_arrow(4, 10, 3, 7, &plain()).unwrap().0, ArrowDecision::Holds);
    assert_eq!(decide_arrow(4, 9, 3, 7, &plain()).unwrap().0, ArrowDecision::Fails);
    for n in [4, 5] {
        for a in [2, 3] {
            let m = 1 + (0..a).map(|i| binomial(n, i)).sum::<u128>() as usize;
            assert_eq!(decide_arrow(n, m, a, 1 << a, &plain()).unwrap().0, ArrowDecision::Holds);
            assert_eq!(decide_arrow(n, m - 1, a, 1 << a, &plain()).unwrap().0, ArrowDecision::Fails);
        }
    }
    let tiny = SearchSettings {
        budget_nodes: 1,
        ..plain()
    };
    let (d, r) = decide_arrow(6, 1000, 4, 13, &tiny).unwrap();
    assert_eq!(d, ArrowDecision::Indeterminate);
    assert!(!r.proved_optimal);
}

#[test]
fn crosschecks() {
    for (n, c) in [(5, 2), (5, 5), (6, 7), (5, 7), (6, 3)] {
        let x = crosscheck_mtilde(n, c, &plain()).unwrap();
        assert_eq!(x.holds, Some(true), "n={n} c={c}");
    }
    let x = crosscheck_mtilde(6, 7, &plain()).unwrap();
    assert_eq!((x.tilde_optimum, x.full_optimum), (16, 23));
}

#[test]
fn downset_restriction_agrees_with_unrestricted() {
    for n in 3..=6 {
        let d = max_family(&ArrowQuery::full(n, 3, 7)).unwrap();
        let u = max_family_unrestricted(n, 3, 7, 2, &plain()).unwrap();
        assert!(d.proved_optimal && u.proved_optimal);
        assert_eq!(d.optimum, u.optimum, "n={n}");
        assert!(!u.witness.family().unwrap().arrows(3, 7).unwrap());
    }
}

#[test]
fn optima_are_monotone() {
    let mut grid = vec![vec![0usize; 17]; 8];
    for n in 4..=6 {
        for b in 2..=16 {
            grid[n][b] = max_family(&ArrowQuery::full(n, 4, b)).unwrap().optimum;
        }
    }
    for n in 4..=6 {
        for b in 3..=16 {
            assert!(grid[n][b] >= grid[n][b - 1]);
        }
    }
    for n in 5..=6 {
        for b in 2..=16 {
            assert!(grid[n][b] >= grid[n - 1][b]);
        }
    }
    for c in 1..=10 {
        let mut prev = 0;
        for n in 4..=7 {
            let o = max_tilde(&ArrowQuery::tilde(n, c)).unwrap().optimum;
            assert!(o >= prev);
            prev = o;
        }
    }
}

#[test]
fn threads_agree_with_serial() {
    let many = SearchSettings {
        threads: 3,
        ..plain()
    };
    for (n, c) in [(6, 5), (6, 7), (7, 6)] {
        let s = max_tilde(&ArrowQuery::tilde(n, c)).unwrap();
        let p = max_tilde(&ArrowQuery::tilde(n, c).with_settings(many.clone())).unwrap();
        assert_eq!(s.optimum, p.optimum);
        assert!(p.proved_optimal);
    }
    let s = max_family(&ArrowQuery::full(6, 4, 13)).unwrap();
    let p = max_family(&ArrowQuery::full(6, 4, 13).with_settings(many)).unwrap();
    assert_eq!(s.optimum, p.optimum);
}

#[test]
fn budget_exhaustion_is_reported() {
    let tiny = SearchSettings {
        budget_nodes: 5,
        ..plain()
    };
    let r = max_family(&ArrowQuery::full(7, 4, 13).with_settings(tiny)).unwrap();
    assert!(!r.proved_optimal);
    let w = r.witness.family().unwrap();
    assert!(!w.arrows(4, 13).unwrap());
    assert!(w.is_downset());
}

#[test]
fn invalid_queries() {
    assert!(max_family(&ArrowQuery::full(4, 3, 9)).is_err());
    assert!(max_family(&ArrowQuery::full(4, 5, 7)).is_err());
    assert!(max_family(&ArrowQuery::full(4, 3, 1)).is_err());
    assert!(max_tilde(&ArrowQuery::tilde(5, 11)).is_err());
    assert!(max_tilde(&ArrowQuery::full(5, 4, 9)).is_err());
    assert!(max_antichain(&ArrowQuery::antichain(3, 3)).is_err());
}

#[test]
fn query_and_result_json() {
    let q = ArrowQuery::from_json(r#"{"n":6,"mode":"tilde-complete","c":7}"#).unwrap();
    assert_eq!((q.a, q.b, q.mode), (4, 12, SearchMode::TildeComplete));
    assert_eq!(ArrowQuery::from_json(&q.to_json()).unwrap(), q);
    let q2 = ArrowQuery::from_json(r#"{"n":4,"a":3,"b":7,"mode":"full-downset","budget_nodes":1000,"budget_secs":5}"#)
        .unwrap();
    assert_eq!(q2.settings.budget_nodes, 1000);
    assert!(ArrowQuery::from_json(r#"{"n":6,"mode":"tilde-complete","c":7,"b":13}"#).is_err());
    assert!(ArrowQuery::from_json(r#"{"n":4,"mode":"full-downset","a":3}"#).is_err());

    let r = run(&q).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["optimum"], 16);
    assert_eq!(v["proved_optimal"], true);
    assert!(v["witness"]["g2"].is_array());
    assert!(v["nodes"].as_u64().unwrap() > 0);
    assert!(v["elapsed_ms"].is_u64());

    let r = run(&q2).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let w = SetFamily::from_json(&v["witness"].to_string()).unwrap();
    assert_eq!(w.len(), 9);
    assert!(w.contains(SetWord::EMPTY));
}
