use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tracelab::cancellative::{
    cancellative_violation, claim21_witness, classify_prop4, contains_pattern, corollary45, ex3, ex_uniform,
    is_cancellative, is_unionfree_star, max_cancellative, max_unionfree_star, unionfree_violation, Pattern,
    Variant,
};
use tracelab::constructions::{
    cancellative_bound, partite_family, six_vertex_k4_minus_free, turan_k4_free, PartRule,
};
use tracelab::random::{random_downset, random_uniform};
use tracelab::search::{max_family, ArrowQuery, SearchSettings};
use tracelab::setcore::{k_subsets, SetFamily, SetWord};

fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
    SetFamily::from_one_indexed(n, sets).unwrap()
}

fn settings() -> SearchSettings {
    SearchSettings::default()
}

fn brute_cancellative(edges: &[u64], l: usize) -> bool {
    for &a in edges {
        for &b in edges {
            if a == b || (a & b).count_ones() as usize + 1 != l {
                continue;
            }
            if edges.iter().any(|&c| (a ^ b) & !c == 0) {
                return false;
            }
        }
    }
    true
}

fn brute_pattern(edges: &[u64], n: usize, need: usize) -> bool {
    k_subsets(n, 4).any(|y| edges.iter().filter(|&&e| e & !y.bits() == 0).count() >= need)
}

fn subfamilies(n: usize, k: usize) -> impl Iterator<Item = Vec<u64>> {
    let all: Vec<u64> = k_subsets(n, k).map(|w| w.bits()).collect();
    (0u64..1 << all.len()).map(move |mask| {
        all.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect()
    })
}

#[test]
fn predicate_examples() {
    let h = fam(5, &[&[1, 2, 3], &[1, 2, 4], &[3, 4, 5]]);
    let w = cancellative_violation(&h, 3).unwrap().unwrap();
    assert_eq!(w, (SetWord(0b111), SetWord(0b1011), SetWord(0b11100)));
    assert!(!is_cancellative(&h, 3).unwrap());
    for n in 3..=12 {
        let top = partite_family(n, 3, &PartRule::Balanced).unwrap().level(3).unwrap();
        assert!(is_cancellative(&top, 3).unwrap());
    }
    assert!(is_cancellative(&fam(5, &[&[1, 2, 3], &[1, 2, 4]]), 3).unwrap());
    assert!(is_cancellative(&fam(4, &[&[1, 2, 3, 4]]), 3).is_err());

    let u = fam(5, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 5]]);
    assert!(!is_unionfree_star(&u, 3).unwrap());
    assert!(unionfree_violation(&u, 3).unwrap().is_some());
    assert!(is_unionfree_star(&fam(5, &[&[1, 2, 3]]), 3).unwrap());
}

#[test]
fn claim21_examples() {
    let f = fam(4, &[&[1, 2, 3], &[1, 2, 4], &[3, 4]]).down_closure();
    let y = claim21_witness(&f, 3).unwrap().unwrap();
    assert_eq!(y, SetWord(0b1111));
    assert!(f.trace_size(y).unwrap() >= 13);
    let g = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]).down_closure();
    let y = claim21_witness(&g, 2).unwrap().unwrap();
    assert_eq!(y, SetWord(0b111));
    assert_eq!(g.trace_size(y).unwrap(), 7);
    let p = partite_family(9, 3, &PartRule::Balanced).unwrap();
    assert_eq!(claim21_witness(&p, 3).unwrap(), None);
    assert!(claim21_witness(&fam(3, &[&[1, 2]]), 2).is_err());
}

#[test]
fn search_examples() {
    assert_eq!(max_cancellative(4, 2, &settings()).unwrap().optimum, 4);
    assert_eq!(max_cancellative(6, 3, &settings()).unwrap().optimum, 8);
    assert_eq!(max_cancellative(3, 3, &settings()).unwrap().optimum, 1);
    assert_eq!(ex3(4, Pattern::KComplete, &settings()).unwrap().optimum, 3);
    assert_eq!(ex3(4, Pattern::KMinus, &settings()).unwrap().optimum, 2);
}

#[test]
fn cancellative_optima_match_enumeration() {
    for n in 3..=6 {
        let oracle = subfamilies(n, 2).filter(|e| brute_cancellative(e, 2)).map(|e| e.len()).max().unwrap();
        let r = max_cancellative(n, 2, &settings()).unwrap();
        assert_eq!(r.optimum, oracle, "n={n}");
        assert_eq!(r.optimum as u128, cancellative_bound(n, 2));
        assert!(is_cancellative(r.witness.family().unwrap(), 2).unwrap());
    }
    for n in 3..=5 {
        let oracle = subfamilies(n, 3).filter(|e| brute_cancellative(e, 3)).map(|e| e.len()).max().unwrap();
        let r = max_cancellative(n, 3, &settings()).unwrap();
        assert_eq!(r.optimum, oracle, "n={n}");
        assert!(is_cancellative(r.witness.family().unwrap(), 3).unwrap());
    }
}

#[test]
fn extremal_values_in_supported_range() {
    for n in 3..=8 {
        let r = max_cancellative(n, 2, &settings()).unwrap();
        assert!(r.proved_optimal);
        assert_eq!(r.optimum, n * n / 4);
    }
    for n in 4..=7 {
        let r = max_cancellative(n, 3, &settings()).unwrap();
        assert!(r.proved_optimal);
        assert_eq!(r.optimum as u128, cancellative_bound(n, 3));
    }
}

#[test]
fn unionfree_search_is_below_cancellative() {
    for (n, l) in [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3)] {
        let u = max_unionfree_star(n, l, &settings()).unwrap();
        let c = max_cancellative(n, l, &settings()).unwrap();
        assert!(u.optimum <= c.optimum);
        assert!(is_unionfree_star(u.witness.family().unwrap(), l).unwrap());
    }
}

#[test]
fn turan_numbers_match_enumeration() {
    for n in 4..=5 {
        for (pattern, need) in [(Pattern::KComplete, 4), (Pattern::KMinus, 3)] {
            let oracle = subfamilies(n, 3).filter(|e| !brute_pattern(e, n, need)).map(|e| e.len()).max().unwrap();
            let r = ex3(n, pattern, &settings()).unwrap();
            assert!(r.proved_optimal);
            assert_eq!(r.optimum, oracle, "n={n} {pattern:?}");
            assert!(!contains_pattern(r.witness.family().unwrap(), 3, pattern).unwrap());
        }
    }
}

#[test]
fn turan_numbers_beat_constructions() {
    let k4 = turan_k4_free(6).unwrap();
    assert!(!contains_pattern(&k4, 3, Pattern::KComplete).unwrap());
    let minus = six_vertex_k4_minus_free();
    assert!(!contains_pattern(&minus, 3, Pattern::KMinus).unwrap());
    assert!(ex3(6, Pattern::KComplete, &settings()).unwrap().optimum >= k4.len());
    assert!(ex3(6, Pattern::KMinus, &settings()).unwrap().optimum >= minus.len());
    let plain = ex3(5, Pattern::KComplete, &settings()).unwrap().optimum;
    let no_iso = SearchSettings {
        isomorph_rejection: false,
        ..settings()
    };
    assert_eq!(ex3(5, Pattern::KComplete, &no_iso).unwrap().optimum, plain);
    assert!(plain as f64 >= 5.0 / 9.0 * 10.0 - 1.0);
    let graphs = ex_uniform(5, 2, Pattern::KComplete, &settings()).unwrap();
    assert_eq!(graphs.optimum, 6);
}

#[test]
fn prop4_examples() {
    let all = SetFamily::new(4, k_subsets(4, 3)).unwrap().down_closure();
    let p = classify_prop4(&all, 3).unwrap();
    assert!(p.complete.arrow_holds && !p.complete.pattern_free);

    let minus = fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4]]).down_closure();
    let p = classify_prop4(&minus, 3).unwrap();
    assert!(p.minus.arrow_holds && !p.minus.pattern_free);
    assert!(p.complete.consistent() && p.minus.consistent());

    let low = SetFamily::power_set(5).unwrap().level(2).unwrap().down_closure();
    let p = classify_prop4(&low, 3).unwrap();
    assert!(!p.complete.arrow_holds && p.complete.pattern_free);
    assert!(!p.minus.arrow_holds && p.minus.pattern_free);

    assert!(classify_prop4(&SetFamily::power_set(4).unwrap(), 3).is_err());
}

#[test]
fn prop4_holds_for_graphs() {
    for n in 3..=5 {
        for edges in subfamilies(n, 2) {
            let g = SetFamily::new(n, edges.into_iter().map(SetWord)).unwrap().down_closure();
            let p = classify_prop4(&g, 2).unwrap();
            assert!(p.complete.consistent() && p.minus.consistent(), "{g:?}");
        }
    }
}

#[test]
fn corollary_dual_path() {
    assert_eq!(corollary45(4, 3, Variant::I, &settings()).unwrap().value, 15);
    assert_eq!(corollary45(4, 3, Variant::II, &settings()).unwrap().value, 14);
    for n in 4..=5 {
        for variant in [Variant::I, Variant::II] {
            let c = corollary45(n, 3, variant, &settings()).unwrap();
            let direct = max_family(&ArrowQuery::full(n, 4, variant.b(3))).unwrap();
            assert!(c.proved_optimal && direct.proved_optimal);
            assert_eq!(c.value, 1 + direct.optimum as u128, "n={n} {variant:?}");
        }
    }
    for n in 3..=6 {
        let c = corollary45(n, 2, Variant::I, &settings()).unwrap();
        let direct = max_family(&ArrowQuery::full(n, 3, 7)).unwrap();
        assert_eq!(c.value, 1 + direct.optimum as u128);
    }
    assert!(corollary45(5, 5, Variant::I, &settings()).is_err());
}

#[test]
fn claim21_recounts_on_random_downsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(4..=8);
        let l = rng.gen_range(2..=3);
        let gens = rng.gen_range(1..=8);
        let f = random_downset(&mut rng, n, gens, l).unwrap();
        let top = f.level(l).unwrap();
        let got = claim21_witness(&f, l).unwrap();
        if let Some(y) = got {
            assert!(f.trace_size(y).unwrap() > 3 << (l - 1));
            assert!(y.len() == l + 1);
        }
        if !is_cancellative(&top, l).unwrap() {
            assert!(got.is_some(), "{f:?}");
        }
        let close_pair = top.iter().any(|a| {
            top.iter().any(|b| {
                a.intersection(*b).len() + 1 == l && f.contains(a.symmetric_difference(*b))
            })
        });
        assert_eq!(got.is_some(), close_pair, "{f:?}");
    }
}

proptest! {
    #[test]
    fn unionfree_implies_cancellative(seed in any::<u64>(), n in 3usize..=8, l in 2usize..=3, p in 0.0f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_uniform(&mut rng, n, l, p).unwrap();
        if is_unionfree_star(&h, l).unwrap() {
            prop_assert!(is_cancellative(&h, l).unwrap());
        }
        let edges: Vec<u64> = h.iter().map(|w| w.bits()).collect();
        prop_assert_eq!(is_cancellative(&h, l).unwrap(), brute_cancellative(&edges, l));
    }

    #[test]
    fn small_families_are_cancellative(seed in any::<u64>(), n in 3usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<SetWord> = k_subsets(n, 3).filter(|_| rng.gen_bool(0.1)).take(2).collect();
        let h = SetFamily::new(n, edges).unwrap();
        prop_assert!(is_cancellative(&h, 3).unwrap());
    }
}
