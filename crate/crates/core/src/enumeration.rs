//! Exhaustive enumeration of the sublattices of index `m` in `Z^n` and their
//! census by Smith invariant chain.
//!
//! Every sublattice has exactly one Hermite basis, and the Hermite bases of
//! index `m` are exactly the lower-triangular matrices whose diagonal is an
//! ordered factorization of `m` and whose entry `(i, j)`, `j < i`, lies in
//! `[0, d_j)`. Enumerating those matrices therefore lists every sublattice
//! once.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, ordered_factorizations, partitions, OrderedFactorizations};
use crate::counting::{f_product, f_star_of, f_sum};
use crate::error::{Error, Result};
use crate::normal_forms::{invariant_chain, HnfBasis, IntMatrix, InvariantChain};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Streams the Hermite bases of index `m`, ordered by diagonal
/// (lexicographically), then by the below-diagonal entries in row-major
/// order (lexicographically).
#[derive(Debug, Clone)]
pub struct HnfEnumeration {
    n: usize,
    diagonals: OrderedFactorizations,
    current: Option<DiagonalBlock>,
}

#[derive(Debug, Clone)]
struct DiagonalBlock {
    diagonal: Vec<u64>,
    // below-diagonal positions (i, j) in row-major order
    slots: Vec<(usize, usize)>,
    counters: Vec<u64>,
    exhausted: bool,
}

impl DiagonalBlock {
    fn new(n: usize, diagonal: Vec<u64>) -> Self {
        let slots: Vec<_> = (1..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        let counters = vec![0; slots.len()];
        Self {
            diagonal,
            slots,
            counters,
            exhausted: false,
        }
    }

    fn matrix(&self) -> HnfBasis {
        let n = self.diagonal.len();
        let mut m = IntMatrix::zeros(n);
        for (i, &d) in self.diagonal.iter().enumerate() {
            m.set(i, i, BigInt::from(d));
        }
        for (&(i, j), &v) in self.slots.iter().zip(&self.counters) {
            m.set(i, j, BigInt::from(v));
        }
        HnfBasis::new_unchecked(m)
    }

    fn step(&mut self) {
        for k in (0..self.slots.len()).rev() {
            let bound = self.diagonal[self.slots[k].1];
            self.counters[k] += 1;
            if self.counters[k] < bound {
                return;
            }
            self.counters[k] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for HnfEnumeration {
    type Item = HnfBasis;

    fn next(&mut self) -> Option<HnfBasis> {
        loop {
            if let Some(block) = self.current.as_mut() {
                if !block.exhausted {
                    let out = block.matrix();
                    block.step();
                    return Some(out);
                }
            }
            let diagonal = self.diagonals.next()?;
            self.current = Some(DiagonalBlock::new(self.n, diagonal));
        }
    }
}

pub fn enumerate_hnf(n: usize, m: u64) -> Result<HnfEnumeration> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    Ok(HnfEnumeration {
        n,
        diagonals: ordered_factorizations(m, n)?,
        current: None,
    })
}

/// Hermite bases sharing one diagonal, in enumeration order.
fn enumerate_block(n: usize, diagonal: Vec<u64>) -> impl Iterator<Item = HnfBasis> {
    let mut block = DiagonalBlock::new(n, diagonal);
    std::iter::from_fn(move || {
        if block.exhausted {
            return None;
        }
        let out = block.matrix();
        block.step();
        Some(out)
    })
}

/// All divisibility chains `d_1, ..., d_n` with product `m` and
/// `d_j | d_{j-1}`, largest first. One partition of each prime exponent
/// into at most `n` parts gives one chain.
pub fn class_chains(n: usize, m: u64) -> Result<std::vec::IntoIter<InvariantChain>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    let factorization = factorize(m)?;
    let mut chains: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32); n]];
    for &(p, alpha) in factorization.pairs() {
        let parts: Vec<_> = partitions(n, alpha)?.collect();
        let mut next = Vec::with_capacity(chains.len() * parts.len());
        for chain in &chains {
            for part in &parts {
                let extended = chain
                    .iter()
                    .zip(part.parts())
                    .map(|(d, &beta)| d * BigUint::from(p).pow(beta))
                    .collect();
                next.push(extended);
            }
        }
        chains = next;
    }
    let mut chains = chains
        .into_iter()
        .map(InvariantChain::new)
        .collect::<Result<Vec<_>>>()?;
    chains.sort_unstable_by(|a, b| b.cmp(a));
    Ok(chains.into_iter())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SublatticeClass {
    pub chain: InvariantChain,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub size: BigUint,
    pub representative: HnfBasis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub m: u64,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub total_enumerated: BigUint,
    /// Sorted by chain, descending lexicographic.
    pub classes: Vec<SublatticeClass>,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub formula_f: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub formula_f_star: BigUint,
}

impl CensusReport {
    /// Named consistency checks between the census and the closed forms.
    pub fn checks(&self) -> Vec<(String, bool)> {
        let size_sum: BigUint = self.classes.iter().map(|c| &c.size).sum();
        let expected_chains: Option<Vec<InvariantChain>> =
            class_chains(self.n, self.m).ok().map(|c| c.collect());
        let chains: Vec<InvariantChain> = self.classes.iter().map(|c| c.chain.clone()).collect();
        vec![
            ("size_sum == f".into(), size_sum == self.formula_f),
            (
                "total_enumerated == f".into(),
                self.total_enumerated == self.formula_f,
            ),
            (
                "class_count == f_star".into(),
                BigUint::from(self.classes.len()) == self.formula_f_star,
            ),
            (
                "chains == class_chains".into(),
                expected_chains.as_ref() == Some(&chains),
            ),
            (
                "representatives match chains".into(),
                self.classes.iter().all(|c| {
                    invariant_chain(c.representative.matrix()).ok().as_ref() == Some(&c.chain)
                }),
            ),
        ]
    }
}

/// Enumerates every sublattice of index `m`, groups them by invariant chain
/// and checks the census against the closed-form counts.
///
/// Fails with [`Error::CapExceeded`] when `f_n(m) > cap`, and with
/// [`Error::Internal`] if any census check fails.
pub fn classify(n: usize, m: u64, cap: u64) -> Result<CensusReport> {
    let report = census(n, m, cap)?;
    let failed: Vec<_> = report
        .checks()
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect();
    if !failed.is_empty() {
        return Err(Error::Internal(format!(
            "census for n = {n}, m = {m} failed: {}",
            failed.join(", ")
        )));
    }
    Ok(report)
}

struct ClassTally {
    size: u64,
    // (diagonal rank, basis) of the first member in enumeration order
    first: (usize, HnfBasis),
}

/// Like [`classify`] but returns the report without enforcing the checks.
pub fn census(n: usize, m: u64, cap: u64) -> Result<CensusReport> {
    let expected = f_product(n, m)?;
    if expected > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            count: expected.to_string(),
            cap,
        });
    }
    let diagonals: Vec<_> = ordered_factorizations(m, n)?.enumerate().collect();
    let tallies = diagonals
        .into_par_iter()
        .map(|(rank, diagonal)| {
            let mut local: BTreeMap<InvariantChain, ClassTally> = BTreeMap::new();
            for basis in enumerate_block(n, diagonal) {
                let chain = invariant_chain(basis.matrix())?;
                local
                    .entry(chain)
                    .and_modify(|t| t.size += 1)
                    .or_insert(ClassTally {
                        size: 1,
                        first: (rank, basis),
                    });
            }
            Ok(local)
        })
        .try_reduce(BTreeMap::new, |mut acc, other| {
            for (chain, tally) in other {
                match acc.get_mut(&chain) {
                    Some(t) => {
                        t.size += tally.size;
                        if tally.first.0 < t.first.0 {
                            t.first = tally.first;
                        }
                    }
                    None => {
                        acc.insert(chain, tally);
                    }
                }
            }
            Ok(acc)
        })?;

    let total: u64 = tallies.values().map(|t| t.size).sum();
    let classes = tallies
        .into_iter()
        .rev()
        .map(|(chain, t)| SublatticeClass {
            chain,
            size: BigUint::from(t.size),
            representative: t.first.1,
        })
        .collect();
    Ok(CensusReport {
        n,
        m,
        total_enumerated: BigUint::from(total),
        classes,
        formula_f: f_sum(n, m)?,
        formula_f_star: f_star_of(n, &factorize(m)?)?,
    })
}
