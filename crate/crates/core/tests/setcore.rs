use std::collections::HashSet;

use proptest::prelude::*;
use tracelab::constructions::{partite_family, PartRule};
use tracelab::setcore::{ground_mask, k_subsets, SetFamily, SetWord};

fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
    SetFamily::from_one_indexed(n, sets).unwrap()
}

fn brute_trace(f: &SetFamily, y: SetWord) -> usize {
    f.iter().map(|m| m.bits() & y.bits()).collect::<HashSet<u64>>().len()
}

fn brute_max_trace(f: &SetFamily, k: usize) -> (usize, SetWord) {
    let mut best: Option<(usize, SetWord)> = None;
    for bits in 0..(1u64 << f.n()) {
        if bits.count_ones() as usize != k {
            continue;
        }
        let t = brute_trace(f, SetWord(bits));
        if best.map_or(true, |b| t > b.0) {
            best = Some((t, SetWord(bits)));
        }
    }
    best.expect("some k-set")
}

fn family_strategy(max_n: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<u64>(), 0..40)
            .prop_map(move |raw| SetFamily::new(n, raw.into_iter().map(|w| SetWord(w & ground_mask(n)))).unwrap())
    })
}

fn downset_strategy(max_n: usize) -> impl Strategy<Value = SetFamily> {
    family_strategy(max_n).prop_map(|f| f.down_closure())
}

#[test]
fn trace_examples() {
    let p4 = SetFamily::power_set(4).unwrap();
    assert_eq!(p4.trace_size(SetWord(0b0111)).unwrap(), 8);

    let f42 = partite_family(4, 2, &PartRule::Balanced).unwrap();
    assert_eq!(f42.len(), 9);
    let t = f42.trace(SetWord(0b0111)).unwrap();
    assert_eq!(t, fam(4, &[&[], &[1], &[2], &[3], &[1, 3], &[2, 3]]));

    let e = fam(5, &[&[]]);
    assert_eq!(e.trace_size(SetWord(0b10101)).unwrap(), 1);
    assert!(p4.trace(SetWord(0b10000)).is_err());
}

#[test]
fn max_trace_examples() {
    let f = partite_family(12, 3, &PartRule::Balanced).unwrap();
    assert_eq!(f.max_trace_over_ksets(4).unwrap().max, 12);
    assert!(!f.arrows(4, 13).unwrap());

    let p = SetFamily::power_set_of(4, SetWord(0b0111)).unwrap();
    assert_eq!(p.max_trace_over_ksets(4).unwrap().max, 8);
    assert!(SetFamily::power_set(4).unwrap().arrows(4, 16).unwrap());
    assert!(!partite_family(6, 2, &PartRule::Balanced).unwrap().arrows(3, 7).unwrap());
    assert!(p.max_trace_over_ksets(0).is_err());
    assert!(p.max_trace_over_ksets(5).is_err());
}

#[test]
fn link_examples() {
    let f = fam(2, &[&[], &[1], &[2], &[1, 2]]);
    assert_eq!(f.link(0).unwrap(), fam(2, &[&[], &[2]]));
    assert_eq!(f.delete(0).unwrap(), fam(2, &[&[], &[2]]));
    let f63 = partite_family(6, 3, &PartRule::Balanced).unwrap();
    assert_eq!(f63.link(0).unwrap().len(), 9);
    assert!(f.link(2).is_err());
    assert!(f.pair_link(0, 0).is_err());
}

#[test]
fn level_and_shadow_examples() {
    assert_eq!(SetFamily::power_set(3).unwrap().level(2).unwrap().len(), 3);
    assert_eq!(partite_family(9, 3, &PartRule::Balanced).unwrap().level(3).unwrap().len(), 27);

    let t = fam(3, &[&[1, 2, 3]]);
    assert_eq!(t.shadow().unwrap(), fam(3, &[&[1, 2], &[1, 3], &[2, 3]]));
    let g3 = fam(6, &[&[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]]);
    assert_eq!(g3.shadow().unwrap(), tracelab::constructions::turan_graph(3, 6).unwrap());
    assert!(fam(3, &[&[1, 2]]).shadow().is_err());
}

#[test]
fn predicate_examples() {
    assert!(fam(2, &[&[], &[1], &[2], &[1, 2]]).is_downset());
    assert!(!fam(2, &[&[1, 2]]).is_downset());
    for (n, l) in [(5, 2), (7, 3), (4, 4)] {
        assert!(partite_family(n, l, &PartRule::Balanced).unwrap().is_downset());
    }
    assert!(fam(2, &[&[1], &[2]]).is_antichain());
    assert!(!fam(2, &[&[1], &[1, 2]]).is_antichain());
    for k in 0..=5 {
        assert!(SetFamily::power_set(5).unwrap().level(k).unwrap().is_antichain());
    }
}

#[test]
fn membership_index_threshold() {
    let small = fam(24, &[&[1, 24]]);
    assert!(small.contains(SetWord::from_elements([0, 23])));
    assert!(small.has_index());
    let big = SetFamily::new(40, [SetWord(1 << 39)]).unwrap();
    assert!(big.contains(SetWord(1 << 39)));
    assert!(!big.contains(SetWord(1)));
    assert!(!big.has_index());
}

#[test]
fn random_shadows_match_nested_loops() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(3..=9);
        let triples: Vec<SetWord> = k_subsets(n, 3).filter(|_| rng.gen_bool(0.3)).collect();
        let h = SetFamily::new(n, triples.clone()).unwrap();
        let mut pairs = HashSet::new();
        for t in &triples {
            let e: Vec<usize> = t.elements().collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    pairs.insert(SetWord::from_elements([e[i], e[j]]));
                }
            }
        }
        assert_eq!(h.shadow().unwrap(), SetFamily::new(n, pairs).unwrap());
    }
}

proptest! {
    #[test]
    fn link_plus_delete_is_size(f in family_strategy(8), i in 0usize..8) {
        let i = i % f.n();
        prop_assert_eq!(f.len(), f.link(i).unwrap().len() + f.delete(i).unwrap().len());
    }

    #[test]
    fn trace_size_bounds(f in family_strategy(8), y in any::<u64>()) {
        let y = SetWord(y & ground_mask(f.n()));
        let t = f.trace_size(y).unwrap();
        prop_assert!(t <= f.len());
        prop_assert!(t as u128 <= 1u128 << y.len());
        prop_assert_eq!(t, brute_trace(&f, y));
        prop_assert_eq!(f.trace(y).unwrap().len(), t);
    }

    #[test]
    fn trace_composes(f in family_strategy(8), y in any::<u64>(), z in any::<u64>()) {
        let y = SetWord(y & ground_mask(f.n()));
        let z = SetWord(z & y.bits());
        prop_assert_eq!(f.trace(y).unwrap().trace(z).unwrap(), f.trace(z).unwrap());
    }

    #[test]
    fn links_of_downsets_are_downsets(f in downset_strategy(8), i in 0usize..8) {
        let i = i % f.n();
        prop_assert!(f.is_downset());
        prop_assert!(f.link(i).unwrap().is_downset());
        prop_assert!(f.delete(i).unwrap().is_downset());
    }

    #[test]
    fn max_trace_matches_brute_force(f in family_strategy(8), k in 1usize..=8) {
        let k = 1 + (k - 1) % f.n();
        let got = f.max_trace_over_ksets(k).unwrap();
        let (max, witness) = brute_max_trace(&f, k);
        prop_assert_eq!(got.max, max);
        prop_assert_eq!(got.witness, witness);
    }

    #[test]
    fn levels_partition_family(f in family_strategy(8)) {
        let total: usize = (0..=f.n()).map(|l| f.level(l).unwrap().len()).sum();
        prop_assert_eq!(total, f.len());
    }
}
