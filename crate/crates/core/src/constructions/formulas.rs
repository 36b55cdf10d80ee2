use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::setcore::binomial;

/// Sizes `⌊(n+i)/l⌋` for `0 <= i < l`, largest first.
pub fn balanced_parts(n: usize, l: usize) -> Vec<usize> {
    let mut parts: Vec<usize> = (0..l).map(|i| (n + i) / l).collect();
    parts.reverse();
    parts
}

/// `|F(n,l)| = ∏_{0<=i<l} (1 + ⌊(n+i)/l⌋)`, evaluated directly from the formula.
pub fn partite_size(n: usize, l: usize) -> BigUint {
    (0..l)
        .map(|i| BigUint::from(1 + (n + i) / l))
        .product()
}

/// `∏ (1 + b_i)` over explicit part sizes.
pub fn partite_size_from_parts(parts: &[usize]) -> BigUint {
    parts.iter().map(|&b| BigUint::from(1 + b)).product()
}

/// Edges of the complete multipartite graph with the given parts.
pub fn multipartite_edges(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    binomial(n, 2) - parts.iter().map(|&b| binomial(b, 2)).sum::<u128>()
}

/// `t(r,n)`: edges of the Turán graph with `r` near-equal parts.
pub fn t_count(r: usize, n: usize) -> u128 {
    multipartite_edges(&balanced_parts(n, r.max(1)))
}

/// `t(3,n) = C(n,2) - C(⌊n/3⌋,2) - C(⌊(n+1)/3⌋,2) - C(⌊(n+2)/3⌋,2)`.
pub fn t3_closed_form(n: usize) -> u128 {
    binomial(n, 2) - binomial(n / 3, 2) - binomial((n + 1) / 3, 2) - binomial((n + 2) / 3, 2)
}

/// `∏_{0<=i<l} ⌊(n+i)/l⌋`, the cancellative bound.
pub fn cancellative_bound(n: usize, l: usize) -> u128 {
    (0..l).map(|i| ((n + i) / l) as u128).product()
}

/// A row of the `m~(n,4,c)` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Table1Value {
    /// Exact value of `m~(n,4,c)`.
    Exact { value: u128 },
    /// The row is only claimed for larger `n`; `value` is what the formula gives.
    FormulaOutOfRange { value: u128, valid_from: usize },
    /// Only asymptotic bounds are known.
    Bounds { lower: String, upper: String },
}

impl Table1Value {
    pub fn exact(&self) -> Option<u128> {
        match self {
            Table1Value::Exact { value } => Some(*value),
            _ => None,
        }
    }
}

/// Table entry for `m~(n,4,c)`, `1 <= c <= 8`, `n >= 5`.
pub fn table1_value(c: usize, n: usize) -> Result<Table1Value> {
    if n < 5 {
        return Err(invalid(format!("table rows are stated for n >= 5, got n={n}")));
    }
    let exact = |value| Ok(Table1Value::Exact { value });
    match c {
        1 => exact(1),
        2 => exact(2),
        3 => exact((2 * n / 3) as u128 + 1),
        4 => Ok(Table1Value::Bounds {
            lower: "(n/2)^(3/2) + o(n^(3/2))".into(),
            upper: "(1/2) n^(3/2) + O(n)".into(),
        }),
        5 => exact((n * n / 4) as u128 + 1),
        6 => exact(t3_closed_form(n) + 1),
        7 if n == 6 => exact(17),
        7 => exact(binomial(n, 2) + 1),
        8 => {
            let value = cancellative_bound(n, 3) + 1;
            if n >= 25 {
                exact(value)
            } else {
                Ok(Table1Value::FormulaOutOfRange {
                    value,
                    valid_from: 25,
                })
            }
        }
        _ => Err(invalid(format!("table rows cover 1 <= c <= 8, got c={c}"))),
    }
}

/// The arrow thresholds `m` for which an `(n,m) → (a,b)` relation is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    /// `1 + Σ_{i<l} C(n,i)`, forcing `(l, 2^l)`.
    Shattering,
    /// `⌊n²/4⌋ + n + 2`, forcing `(3,7)`.
    ThreeSeven,
    /// `1 + ∏_{0<=i<l} ⌊(n+l+i)/l⌋`, conjectured to force `(l+1, 3·2^(l-1)+1)`.
    PartiteConjecture,
    /// `∏ ⌊(n+i)/3⌋ + C(n,2) + n + 2`, forcing `(4,13)`.
    CancellativeThree,
    /// `∏ ⌊(n+i)/4⌋ + C(n,3) + C(n,2) + n + 2`, forcing `(5,25)`.
    CancellativeFour,
}

impl std::str::FromStr for ThresholdKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shattering" | "sauer-shelah" => Ok(ThresholdKind::Shattering),
            "three-seven" | "lovasz" => Ok(ThresholdKind::ThreeSeven),
            "partite" | "partite-conjecture" => Ok(ThresholdKind::PartiteConjecture),
            "cancellative-3" => Ok(ThresholdKind::CancellativeThree),
            "cancellative-4" => Ok(ThresholdKind::CancellativeFour),
            other => Err(invalid(format!("unknown threshold kind `{other}`"))),
        }
    }
}

pub fn threshold(kind: ThresholdKind, n: usize, l: usize) -> Result<u128> {
    let checked = |v: Option<u128>| v.ok_or_else(|| invalid("threshold overflows u128"));
    match kind {
        ThresholdKind::Shattering => {
            let mut acc: u128 = 1;
            for i in 0..l.min(n + 1) {
                acc = checked(acc.checked_add(binomial(n, i)))?;
            }
            Ok(acc)
        }
        ThresholdKind::ThreeSeven => Ok((n * n / 4 + n + 2) as u128),
        ThresholdKind::PartiteConjecture => {
            if l == 0 {
                return Err(invalid("partite threshold needs l >= 1"));
            }
            let mut acc: u128 = 1;
            for i in 0..l {
                acc = checked(acc.checked_mul(((n + l + i) / l) as u128))?;
            }
            checked(acc.checked_add(1))
        }
        ThresholdKind::CancellativeThree => {
            Ok(cancellative_bound(n, 3) + binomial(n, 2) + n as u128 + 2)
        }
        ThresholdKind::CancellativeFour => {
            Ok(cancellative_bound(n, 4) + binomial(n, 3) + binomial(n, 2) + n as u128 + 2)
        }
    }
}

/// Outcome of comparing `Σ_{i<j} a_i a_j` with `((m-1)/2m) (Σ a_i)²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairwiseBound {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs <= rhs (1 + 1e-9)`.
    pub holds: bool,
    /// `|lhs - rhs| <= 1e-9 · rhs`.
    pub tight: bool,
}

pub const PAIRWISE_REL_TOL: f64 = 1e-9;

pub fn pairwise_sum_bound_check(a: &[f64]) -> Result<PairwiseBound> {
    if a.is_empty() {
        return Err(invalid("need at least one value"));
    }
    if let Some(x) = a.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
        return Err(invalid(format!("values must be finite and non-negative, got {x}")));
    }
    let m = a.len() as f64;
    let mut lhs = 0.0;
    for (i, x) in a.iter().enumerate() {
        for y in &a[i + 1..] {
            lhs += x * y;
        }
    }
    let sum: f64 = a.iter().sum();
    let rhs = (m - 1.0) / (2.0 * m) * sum * sum;
    let slack = PAIRWISE_REL_TOL * rhs;
    Ok(PairwiseBound {
        lhs,
        rhs,
        holds: lhs <= rhs + slack,
        tight: (lhs - rhs).abs() <= slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_counts() {
        assert_eq!(t_count(3, 6), 12);
        assert_eq!(t_count(3, 7), 16);
        assert_eq!(t_count(2, 5), 6);
        assert_eq!(t_count(1, 5), 0);
        for n in 1..50 {
            assert_eq!(t_count(3, n), t3_closed_form(n));
        }
    }

    #[test]
    fn table_rows() {
        assert_eq!(table1_value(5, 5).unwrap().exact(), Some(7));
        assert_eq!(table1_value(7, 6).unwrap().exact(), Some(17));
        assert_eq!(table1_value(7, 7).unwrap().exact(), Some(22));
        assert_eq!(table1_value(3, 7).unwrap().exact(), Some(5));
        assert_eq!(table1_value(6, 7).unwrap().exact(), Some(17));
        assert_eq!(table1_value(8, 25).unwrap().exact(), Some(9 * 8 * 8 + 1));
        assert!(matches!(table1_value(4, 9).unwrap(), Table1Value::Bounds { .. }));
        assert!(matches!(
            table1_value(8, 9).unwrap(),
            Table1Value::FormulaOutOfRange { value: 28, valid_from: 25 }
        ));
        assert!(table1_value(9, 6).is_err());
        assert!(table1_value(0, 6).is_err());
        assert!(table1_value(3, 4).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold(ThresholdKind::PartiteConjecture, 25, 3).unwrap(), 811);
        assert_eq!(threshold(ThresholdKind::ThreeSeven, 4, 0).unwrap(), 10);
        assert_eq!(threshold(ThresholdKind::Shattering, 4, 2).unwrap(), 6);
        assert_eq!(threshold(ThresholdKind::CancellativeThree, 6, 3).unwrap(), 8 + 15 + 8);
        assert_eq!("lovasz".parse::<ThresholdKind>().unwrap(), ThresholdKind::ThreeSeven);
        assert!("nope".parse::<ThresholdKind>().is_err());
    }

    #[test]
    fn partite_sizes() {
        assert_eq!(partite_size(6, 3), BigUint::from(27u32));
        assert_eq!(partite_size(25, 3), BigUint::from(810u32));
        assert_eq!(partite_size(4, 1), BigUint::from(5u32));
        assert_eq!(balanced_parts(7, 3), vec![3, 2, 2]);
    }

    #[test]
    fn pairwise_examples() {
        let u = pairwise_sum_bound_check(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((u.lhs, u.rhs), (3.0, 3.0));
        assert!(u.holds && u.tight);
        let v = pairwise_sum_bound_check(&[2.0, 0.0]).unwrap();
        assert_eq!((v.lhs, v.rhs), (0.0, 1.0));
        assert!(v.holds && !v.tight);
        assert!(pairwise_sum_bound_check(&[1.0, -1.0]).is_err());
        assert!(pairwise_sum_bound_check(&[]).is_err());
        assert!(pairwise_sum_bound_check(&[f64::NAN]).is_err());
    }
}
