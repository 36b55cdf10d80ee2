use crate::setcore::{ground_mask, SetWord};

/// Lexicographically least sorted image of `members` under the permutations
/// of `{0..m}` that fix every other element.
///
/// Elements are first split into classes by an invariant colouring, and only
/// permutations sending each class onto a fixed block of positions are
/// tried. Returns `None` when that still leaves more than `limit` maps.
pub(crate) fn canonical_image(members: &[SetWord], m: usize, limit: u64) -> Option<Vec<u64>> {
    let movable = ground_mask(m);
    let ranks = refine(members, m, movable);

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| (ranks[x], x));
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && ranks[order[end]] == ranks[order[start]] {
            end += 1;
        }
        blocks.push((start, end));
        start = end;
    }

    let mut count: u64 = 1;
    for &(s, e) in &blocks {
        for f in 2..=(e - s) as u64 {
            count = count.saturating_mul(f);
        }
        if count > limit {
            return None;
        }
    }

    let mut pos = vec![0usize; m];
    for (p, &x) in order.iter().enumerate() {
        pos[x] = p;
    }
    let mut best: Option<Vec<u64>> = None;
    let mut image = Vec::with_capacity(members.len());
    permute_blocks(&blocks, &order, 0, &mut pos, &mut |pos| {
        image.clear();
        image.extend(members.iter().map(|f| {
            let mut w = f.bits() & !movable;
            let mut rest = f.bits() & movable;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                w |= 1 << pos[x];
            }
            w
        }));
        image.sort_unstable();
        if best.as_ref().map_or(true, |b| image < *b) {
            best = Some(image.clone());
        }
    });
    best
}

/// Ranks of an invariant colouring of `{0..m}`, refined once by the colours
/// of co-occurring elements.
fn refine(members: &[SetWord], m: usize, movable: u64) -> Vec<u32> {
    let base: Vec<Vec<(u32, u64)>> = (0..m)
        .map(|x| {
            let mut key: Vec<(u32, u64)> = members
                .iter()
                .filter(|f| f.contains(x))
                .map(|f| (f.len() as u32, f.bits() & !movable))
                .collect();
            key.sort_unstable();
            key
        })
        .collect();
    let r0 = rank(&base);

    let next: Vec<(u32, Vec<(u32, u64, Vec<u32>)>)> = (0..m)
        .map(|x| {
            let mut key: Vec<(u32, u64, Vec<u32>)> = members
                .iter()
                .filter(|f| f.contains(x))
                .map(|f| {
                    let mut others: Vec<u32> = f
                        .without(x)
                        .elements()
                        .filter(|&y| y < m)
                        .map(|y| r0[y])
                        .collect();
                    others.sort_unstable();
                    (f.len() as u32, f.bits() & !movable, others)
                })
                .collect();
            key.sort_unstable();
            (r0[x], key)
        })
        .collect();
    rank(&next)
}

fn rank<K: Ord>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("present") as u32)
        .collect()
}

/// Calls `visit` once for every assignment of each block's elements to the
/// block's positions.
fn permute_blocks(
    blocks: &[(usize, usize)],
    order: &[usize],
    b: usize,
    pos: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if b == blocks.len() {
        visit(pos);
        return;
    }
    let (s, e) = blocks[b];
    let mut elems: Vec<usize> = order[s..e].to_vec();
    heap_permute(&mut elems, e - s, &mut |perm| {
        for (i, &x) in perm.iter().enumerate() {
            pos[x] = s + i;
        }
        permute_blocks(blocks, order, b + 1, pos, visit);
    });
}

fn heap_permute(v: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(v, k - 1, f);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
    heap_permute(v, k - 1, f);
}
