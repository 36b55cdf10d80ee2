//! Closed-form extremal constructions and the formula evaluators that go
//! with them.

mod formulas;
mod tilde;

pub use formulas::{
    balanced_parts, cancellative_bound, multipartite_edges, pairwise_sum_bound_check,
    partite_size, partite_size_from_parts, t3_closed_form, t_count, table1_value, threshold,
    PairwiseBound, Table1Value, ThresholdKind, PAIRWISE_REL_TOL,
};
pub use tilde::{HookMax, TildeFamily};

use crate::error::{invalid, Result};
use crate::setcore::{check_n, SetFamily, SetWord};

/// How `[n]` is cut into consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartRule {
    /// Sizes `⌊(n+i)/l⌋`, largest first.
    Balanced,
    /// Explicit block sizes, used in the given order.
    Sizes(Vec<usize>),
}

/// Consecutive blocks of `[n]` with the given sizes.
pub fn blocks(n: usize, sizes: &[usize]) -> Result<Vec<SetWord>> {
    check_n(n)?;
    if sizes.iter().sum::<usize>() != n {
        return Err(invalid(format!(
            "part sizes {sizes:?} do not sum to n={n}"
        )));
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(invalid(format!("part sizes {sizes:?} contain an empty part")));
    }
    let mut start = 0;
    Ok(sizes
        .iter()
        .map(|&s| {
            let w = SetWord::from_elements(start..start + s);
            start += s;
            w
        })
        .collect())
}

fn rule_sizes(n: usize, l: usize, rule: &PartRule) -> Result<Vec<usize>> {
    match rule {
        PartRule::Balanced => {
            if l == 0 || l > n {
                return Err(invalid(format!("need 1 <= l <= n, got l={l}, n={n}")));
            }
            Ok(balanced_parts(n, l))
        }
        PartRule::Sizes(s) => Ok(s.clone()),
    }
}

/// `F(n,l)`: all sets meeting every block in at most one element.
pub fn partite_family(n: usize, l: usize, rule: &PartRule) -> Result<SetFamily> {
    let parts = blocks(n, &rule_sizes(n, l, rule)?)?;
    let mut acc = vec![SetWord::EMPTY];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * (1 + part.len()));
        for w in acc {
            next.push(w);
            next.extend(part.elements().map(|e| w.with(e)));
        }
        acc = next;
    }
    Ok(SetFamily::from_unsorted(n, acc))
}

/// Edges of the complete multipartite graph on consecutive blocks.
pub fn multipartite_graph(n: usize, sizes: &[usize]) -> Result<SetFamily> {
    let parts = blocks(n, sizes)?;
    let mut owner = vec![0usize; n];
    for (i, p) in parts.iter().enumerate() {
        for e in p.elements() {
            owner[e] = i;
        }
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if owner[x] != owner[y] {
                edges.push(SetWord::from_elements([x, y]));
            }
        }
    }
    Ok(SetFamily::from_unsorted(n, edges))
}

/// `T(r,n)`, the Turán graph.
pub fn turan_graph(r: usize, n: usize) -> Result<SetFamily> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    multipartite_graph(n, &balanced_parts(n, r))
}

/// The six-vertex complete family with `g3 = {135, 146, 236, 245}` and
/// `g2 = ∂g3`, the complete 3-partite graph on `{1,2},{3,4},{5,6}`.
pub fn special6() -> TildeFamily {
    let g3 = SetFamily::from_one_indexed(6, &[[1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]])
        .expect("valid triples");
    let g2 = g3.shadow().expect("3-uniform");
    TildeFamily::new(g2, g3).expect("complete by construction")
}

/// Turán's `K_4^(3)`-free 3-graph: blocks `V_0, V_1, V_2`, all transversals
/// and every triple with two vertices in `V_i` and one in `V_{i+1 mod 3}`.
pub fn turan_k4_free(n: usize) -> Result<SetFamily> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got n={n}")));
    }
    let parts = blocks(n, &balanced_parts(n, 3))?;
    let class = |x: usize| parts.iter().position(|p| p.contains(x)).expect("covered");
    let mut edges = Vec::new();
    for t in crate::setcore::k_subsets(n, 3) {
        let c: Vec<usize> = t.elements().map(class).collect();
        let keep = if c[0] != c[1] && c[1] != c[2] && c[0] != c[2] {
            true
        } else if c[0] == c[1] && c[1] == c[2] {
            false
        } else {
            let (pair, single) = if c[0] == c[1] {
                (c[0], c[2])
            } else if c[1] == c[2] {
                (c[1], c[0])
            } else {
                (c[0], c[1])
            };
            single == (pair + 1) % 3
        };
        if keep {
            edges.push(t);
        }
    }
    Ok(SetFamily::from_unsorted(n, edges))
}

/// A 10-triple 3-graph on six vertices in which every 4 vertices span at most
/// two triples.
pub fn six_vertex_k4_minus_free() -> SetFamily {
    SetFamily::from_one_indexed(
        6,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 2],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 2],
            [5, 6, 3],
            [6, 2, 4],
        ],
    )
    .expect("valid triples")
}
