//! Seedable generators for test instances.

use rand::Rng;

use crate::constructions::TildeFamily;
use crate::error::{invalid, Result};
use crate::setcore::{check_n, ground_mask, k_subsets, SetFamily, SetWord};

/// `m` uniform draws from `2^[n]`, deduplicated.
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<SetFamily> {
    check_n(n)?;
    let mask = ground_mask(n);
    SetFamily::new(n, (0..m).map(|_| SetWord(rng.gen::<u64>() & mask)))
}

/// Down-closure of `generators` random sets of size at most `max_size`.
pub fn random_downset<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    generators: usize,
    max_size: usize,
) -> Result<SetFamily> {
    check_n(n)?;
    let mut gens = vec![SetWord::EMPTY];
    for _ in 0..generators {
        let size = rng.gen_range(0..=max_size.min(n));
        gens.push(random_kset(rng, n, size));
    }
    Ok(SetFamily::new(n, gens)?.down_closure())
}

/// A uniformly random `k`-subset of `[n]`.
pub fn random_kset<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> SetWord {
    let mut w = SetWord::EMPTY;
    let mut need = k.min(n);
    for (seen, e) in (0..n).enumerate() {
        let left = n - seen;
        if rng.gen_range(0..left) < need {
            w = w.with(e);
            need -= 1;
        }
    }
    w
}

/// Each `k`-subset independently with probability `p`.
pub fn random_uniform<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    p: f64,
) -> Result<SetFamily> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("probability {p} outside [0,1]")));
    }
    let sets: Vec<SetWord> = k_subsets(n, k).filter(|_| rng.gen_bool(p)).collect();
    SetFamily::new(n, sets)
}

/// A random complete tilde family: random triples, their shadow, and extra
/// random pairs.
pub fn random_tilde<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p3: f64,
    p2: f64,
) -> Result<TildeFamily> {
    let g3 = random_uniform(rng, n, 3, p3)?;
    let extra = random_uniform(rng, n, 2, p2)?;
    let g2 = SetFamily::new(n, g3.shadow()?.iter().chain(extra.iter()).copied())?;
    TildeFamily::new(g2, g3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=10);
            assert!(random_downset(&mut rng, n, 5, 3).unwrap().is_downset());
            assert_eq!(random_kset(&mut rng, n, 3.min(n)).len(), 3.min(n));
            let f = random_family(&mut rng, n, 20).unwrap();
            assert!(f.len() <= 20);
        }
        let t = random_tilde(&mut rng, 7, 0.2, 0.3).unwrap();
        assert!(t.g3().shadow().unwrap().iter().all(|p| t.g2().contains(*p)));
    }
}
