//! Integer number theory used by the counting and enumeration code:
//! prime factorization, divisors, ordered factorizations of `m` into `n`
//! factors, and partitions of `k` into at most `n` parts.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Prime factorization `m = p_1^a_1 * ... * p_l^a_l`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// All divisors of the factored number, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let prev = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `m` by trial division over a 2,3-wheel.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be a positive integer".into()));
    }
    let mut rest = m;
    let mut pairs = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    take(2, &mut rest);
    take(3, &mut rest);
    // candidates 6k-1, 6k+1
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= rest) {
        take(p, &mut rest);
        take(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

pub fn divisors(m: u64) -> Result<Vec<u64>> {
    Ok(factorize(m)?.divisors())
}

/// Lexicographic stream of ordered tuples `(d_1, ..., d_n)` of positive
/// integers with `d_1 * ... * d_n = m`.
#[derive(Debug, Clone)]
pub struct OrderedFactorizations {
    m: u64,
    divisors: Vec<u64>,
    current: Option<Vec<u64>>,
}

impl OrderedFactorizations {
    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        let n = cur.len();
        // remaining[i] = m / (d_1 ... d_{i})
        let mut remaining = Vec::with_capacity(n);
        let mut r = self.m;
        for &d in cur.iter() {
            remaining.push(r);
            r /= d;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            let r = remaining[i];
            let next = self
                .divisors
                .iter()
                .copied()
                .find(|&d| d > cur[i] && r % d == 0);
            if let Some(d) = next {
                cur[i] = d;
                for slot in cur.iter_mut().take(n - 1).skip(i + 1) {
                    *slot = 1;
                }
                cur[n - 1] = r / d;
                return;
            }
        }
        self.current = None;
    }
}

impl Iterator for OrderedFactorizations {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone()?;
        self.advance();
        Some(out)
    }
}

pub fn ordered_factorizations(m: u64, n: usize) -> Result<OrderedFactorizations> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    let divisors = divisors(m)?;
    let mut first = vec![1u64; n];
    first[n - 1] = m;
    Ok(OrderedFactorizations {
        m,
        divisors,
        current: Some(first),
    })
}

/// Weakly decreasing tuple of nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("partition needs at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// Number of weakly decreasing nonnegative `n`-tuples summing to `k`,
/// i.e. partitions of `k` into at most `n` positive parts.
///
/// Memoized table over `p_j(t) = p_{j-1}(t) + p_j(t - j)` with
/// `p_j(0) = 1` and `p_0(t) = 0` for `t > 0`.
pub fn partition_count(n: usize, k: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    let k = k as usize;
    let mut prev: Vec<BigUint> = (0..=k)
        .map(|t| if t == 0 { BigUint::one() } else { BigUint::zero() })
        .collect();
    for j in 1..=n {
        let mut row = Vec::with_capacity(k + 1);
        for t in 0..=k {
            let mut v = prev[t].clone();
            if t >= j {
                v += &row[t - j];
            }
            row.push(v);
        }
        prev = row;
    }
    Ok(prev.swap_remove(k))
}

/// Reverse-lexicographic stream of partitions of `k` into `n` nonnegative parts.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Partitions {
    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        let n = cur.len();
        let mut tail: u64 = 0;
        for i in (0..n.saturating_sub(1)).rev() {
            tail += cur[i + 1] as u64;
            if cur[i] == 0 {
                continue;
            }
            let cap = cur[i] - 1;
            let rest = tail + 1;
            if (n - 1 - i) as u64 * cap as u64 >= rest {
                cur[i] = cap;
                let mut left = rest;
                for slot in cur.iter_mut().skip(i + 1) {
                    let v = left.min(cap as u64);
                    *slot = v as u32;
                    left -= v;
                }
                return;
            }
        }
        self.current = None;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.clone()?;
        self.advance();
        Some(Partition { parts })
    }
}

pub fn partitions(n: usize, k: u32) -> Result<Partitions> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    let mut first = vec![0; n];
    first[0] = k;
    Ok(Partitions {
        current: Some(first),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_partition_count(n: usize, k: u32) -> u64 {
        // nested loops over weakly decreasing tuples
        fn rec(slots: usize, max: u32, left: u32) -> u64 {
            if slots == 0 {
                return (left == 0) as u64;
            }
            (0..=max.min(left)).map(|x| rec(slots - 1, x, left - x)).sum()
        }
        rec(n, k, k)
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().pairs().is_empty());
        assert_eq!(factorize(97).unwrap().pairs(), &[(97, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_edge_values() {
        assert_eq!(factorize(25).unwrap().pairs(), &[(5, 2)]);
        assert_eq!(factorize(49).unwrap().pairs(), &[(7, 2)]);
        assert_eq!(factorize(999_999_937).unwrap().pairs(), &[(999_999_937, 1)]);
        assert_eq!(
            factorize(1 << 40).unwrap().pairs(),
            &[(2, 40)]
        );
    }

    #[test]
    fn ordered_factorization_examples() {
        let v: Vec<_> = ordered_factorizations(2, 2).unwrap().collect();
        assert_eq!(v, vec![vec![1, 2], vec![2, 1]]);
        let v: Vec<_> = ordered_factorizations(4, 1).unwrap().collect();
        assert_eq!(v, vec![vec![4]]);
        let v: Vec<_> = ordered_factorizations(4, 3).unwrap().collect();
        assert_eq!(
            v,
            vec![
                vec![1, 1, 4],
                vec![1, 2, 2],
                vec![1, 4, 1],
                vec![2, 1, 2],
                vec![2, 2, 1],
                vec![4, 1, 1]
            ]
        );
        let v: Vec<_> = ordered_factorizations(1, 3).unwrap().collect();
        assert_eq!(v, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn ordered_factorizations_match_triple_loop() {
        for m in 1..=60u64 {
            let mut brute = Vec::new();
            for a in 1..=m {
                for b in 1..=m {
                    for c in 1..=m {
                        if a * b * c == m {
                            brute.push(vec![a, b, c]);
                        }
                    }
                }
            }
            let got: Vec<_> = ordered_factorizations(m, 3).unwrap().collect();
            assert_eq!(got, brute, "m = {m}");
        }
    }

    #[test]
    fn ordered_factorization_count_is_multiset_coefficient() {
        for m in 1..=60u64 {
            let f = factorize(m).unwrap();
            for n in 1..=5usize {
                let expected: u64 = f
                    .exponents()
                    .map(|a| binomial(a as u64 + n as u64 - 1, n as u64 - 1))
                    .product();
                let got = ordered_factorizations(m, n).unwrap().count() as u64;
                assert_eq!(got, expected, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn partition_count_examples() {
        assert_eq!(partition_count(1, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_count(3, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_count(3, 3).unwrap(), BigUint::from(3u32));
        assert_eq!(partition_count(2, 2).unwrap(), BigUint::from(2u32));
        assert!(partition_count(0, 2).is_err());
    }

    #[test]
    fn partitions_examples() {
        let v: Vec<_> = partitions(3, 3).unwrap().map(|p| p.parts().to_vec()).collect();
        assert_eq!(v, vec![vec![3, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]);
        let v: Vec<_> = partitions(2, 0).unwrap().map(|p| p.parts().to_vec()).collect();
        assert_eq!(v, vec![vec![0, 0]]);
        let v: Vec<_> = partitions(1, 4).unwrap().map(|p| p.parts().to_vec()).collect();
        assert_eq!(v, vec![vec![4]]);
    }

    #[test]
    fn partition_stream_matches_count_and_brute_force() {
        for n in 1..=6usize {
            for k in 0..=30u32 {
                let stream: Vec<_> = partitions(n, k).unwrap().collect();
                let count = partition_count(n, k).unwrap();
                assert_eq!(BigUint::from(stream.len()), count, "n = {n}, k = {k}");
                assert_eq!(brute_partition_count(n, k), stream.len() as u64);
                // reverse-lexicographic, hence strictly decreasing
                assert!(stream.windows(2).all(|w| w[0] > w[1]));
                for p in &stream {
                    assert_eq!(p.total(), k);
                    assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
                }
            }
        }
    }

    #[test]
    fn partition_rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert_eq!(Partition::new(vec![2, 2, 0]).unwrap().total(), 4);
    }

    proptest! {
        #[test]
        fn factorize_expands_back(m in 1u64..=1_000_000) {
            let f = factorize(m).unwrap();
            prop_assert_eq!(f.expand(), m);
            prop_assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            for &(p, e) in f.pairs() {
                prop_assert!(e >= 1);
                prop_assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
            }
        }

        #[test]
        fn divisors_divide(m in 1u64..=100_000) {
            let divs = divisors(m).unwrap();
            prop_assert!(divs.iter().all(|d| m % d == 0));
            prop_assert!(divs.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(divs.len(), (1..=m).filter(|d| m % d == 0).count());
        }
    }
}
