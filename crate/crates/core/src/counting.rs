//! Closed-form counts of sublattices of index `m` in `Z^n`.
//!
//! Three independent routes to the number of sublattices `f_n(m)` are
//! provided so they can be checked against each other:
//!
//! * [`f_recursive`]: `f_n(m) = sum_{d | m} d * f_{n-1}(d)`, `f_1 = 1`.
//! * [`f_sum`]: the sum over ordered factorizations `d_1 ... d_n = m` of
//!   `d_1^0 d_2^1 ... d_n^(n-1)`.
//! * [`f_product`]: the product over prime powers `p^a || m` of
//!   `prod_{j=1..a} (p^(j+n-1) - 1) / (p^j - 1)`, cross-checked against
//!   `prod_{j=1..n-1} (p^(j+a) - 1) / (p^j - 1)`.
//!
//! [`f_star`] counts equivalence classes as the product of the number of
//! partitions of each exponent into at most `n` parts.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::arith::{factorize, ordered_factorizations, partition_count, Factorization};
use crate::error::{Error, Result};

fn check_args(n: usize, m: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be a positive integer".into()));
    }
    Ok(())
}

pub fn f_recursive(n: usize, m: u64) -> Result<BigUint> {
    check_args(n, m)?;
    let divisors = factorize(m)?.divisors();
    let mut memo = HashMap::new();
    Ok(f_recursive_memo(n, m, &divisors, &mut memo))
}

// divisors of d are exactly the divisors of m that divide d
fn f_recursive_memo(
    n: usize,
    m: u64,
    divisors: &[u64],
    memo: &mut HashMap<(usize, u64), BigUint>,
) -> BigUint {
    if n == 1 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&(n, m)) {
        return v.clone();
    }
    let mut total = BigUint::default();
    for &d in divisors.iter().filter(|&&d| m.is_multiple_of(d)) {
        total += f_recursive_memo(n - 1, d, divisors, memo) * d;
    }
    memo.insert((n, m), total.clone());
    total
}

pub fn f_sum(n: usize, m: u64) -> Result<BigUint> {
    check_args(n, m)?;
    let mut total = BigUint::default();
    for tuple in ordered_factorizations(m, n)? {
        let term = tuple
            .iter()
            .enumerate()
            .fold(BigUint::one(), |acc, (j, &d)| acc * BigUint::from(d).pow(j as u32));
        total += term;
    }
    Ok(total)
}

fn prime_power_minus_one(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e) - 1u32
}

/// Both product forms for a single prime power `p^alpha`.
fn product_forms(p: u64, alpha: u32, n: usize) -> Result<(BigUint, BigUint)> {
    let n = n as u32;
    let exact_div = |num: BigUint, den: BigUint, form: &str| {
        let (q, r) = num.div_rem(&den);
        if r != BigUint::default() {
            return Err(Error::Internal(format!(
                "{form} product for p = {p}, alpha = {alpha}, n = {n} is not integral"
            )));
        }
        Ok(q)
    };

    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 1..=alpha {
        num *= prime_power_minus_one(p, j + n - 1);
        den *= prime_power_minus_one(p, j);
    }
    let first = exact_div(num, den, "exponent-indexed")?;

    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 1..n {
        num *= prime_power_minus_one(p, j + alpha);
        den *= prime_power_minus_one(p, j);
    }
    let second = exact_div(num, den, "dimension-indexed")?;
    Ok((first, second))
}

pub fn f_product(n: usize, m: u64) -> Result<BigUint> {
    check_args(n, m)?;
    let mut total = BigUint::one();
    for &(p, alpha) in factorize(m)?.pairs() {
        let (first, second) = product_forms(p, alpha, n)?;
        if first != second {
            return Err(Error::Internal(format!(
                "product forms disagree for p = {p}, alpha = {alpha}, n = {n}: {first} vs {second}"
            )));
        }
        total *= first;
    }
    Ok(total)
}

pub fn f_star(n: usize, m: u64) -> Result<BigUint> {
    check_args(n, m)?;
    f_star_of(n, &factorize(m)?)
}

pub(crate) fn f_star_of(n: usize, factorization: &Factorization) -> Result<BigUint> {
    factorization
        .exponents()
        .try_fold(BigUint::one(), |acc, alpha| Ok(acc * partition_count(n, alpha)?))
}

/// All counts for one `(n, m)` cell together with the bound values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub m: u64,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub f_recursive: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub f_sum: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub f_product: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub f_star: BigUint,
    /// `m^(n^2)`
    #[serde(serialize_with = "crate::serde_decimal")]
    pub siegel_bound: BigUint,
    /// `m^(n-1)`
    #[serde(serialize_with = "crate::serde_decimal")]
    pub lower_bound: BigUint,
    /// `m^n`
    #[serde(serialize_with = "crate::serde_decimal")]
    pub upper_bound: BigUint,
    pub agree: bool,
}

impl CountReport {
    /// `lower <= f <= upper <= siegel`, evaluated on `f_sum`.
    pub fn bounds_hold(&self) -> bool {
        self.lower_bound <= self.f_sum
            && self.f_sum <= self.upper_bound
            && self.upper_bound <= self.siegel_bound
    }
}

pub fn bounds_report(n: usize, m: u64) -> Result<CountReport> {
    check_args(n, m)?;
    let f_recursive = f_recursive(n, m)?;
    let f_sum = f_sum(n, m)?;
    let f_product = f_product(n, m)?;
    let agree = f_recursive == f_sum && f_sum == f_product;
    let base = BigUint::from(m);
    let n32 = n as u32;
    Ok(CountReport {
        n,
        m,
        f_star: f_star(n, m)?,
        siegel_bound: base.clone().pow(n32 * n32),
        lower_bound: base.clone().pow(n32 - 1),
        upper_bound: base.pow(n32),
        f_recursive,
        f_sum,
        f_product,
        agree,
    })
}
