//! Deliberately naive verifiers, independent of the reductions in
//! [`crate::normal_forms`]. They exist to validate results on small inputs
//! (`n <= 3`) and make no attempt to scale.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::normal_forms::{IntMatrix, InvariantChain};

pub const MAX_ORACLE_DIM: usize = 3;

/// The box `[-radius, radius]^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointBox {
    n: usize,
    radius: i64,
}

impl PointBox {
    pub fn new(n: usize, radius: i64) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidArgument("box radius must be at least 1".into()));
        }
        if n == 0 || n > MAX_ORACLE_DIM {
            return Err(Error::InvalidArgument(format!(
                "oracle supports dimensions 1..={MAX_ORACLE_DIM}, got {n}"
            )));
        }
        Ok(Self { n, radius })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }
}

fn guard(a: &IntMatrix) -> Result<()> {
    if a.dim() > MAX_ORACLE_DIM {
        return Err(Error::InvalidArgument(format!(
            "oracle supports dimensions 1..={MAX_ORACLE_DIM}, got {}",
            a.dim()
        )));
    }
    Ok(())
}

/// Cofactor expansion along the first row of the submatrix picked by
/// `rows` x `cols`.
fn laplace(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    if rows.len() == 1 {
        return a.get(rows[0], cols[0]).clone();
    }
    let sub_rows = &rows[1..];
    let mut total = BigInt::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = a.get(rows[0], c);
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = entry * laplace(a, sub_rows, &sub_cols);
        if k % 2 == 0 {
            total += minor;
        } else {
            total -= minor;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

fn to_i64(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    a.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::InvalidArgument(format!("entry {x} too large for the oracle")))
                })
                .collect()
        })
        .collect()
}

/// All points `z * B` with `z` integral that lie in the box.
///
/// Coefficient window: for a lattice point `x = z B` we have
/// `z = x adj(B) / det(B)`, hence `|z_i| <= n * radius * max|adj(B)| / |det B|`.
/// Ranging every coefficient over that window finds every point in the box.
pub fn lattice_points_in_box(b: &IntMatrix, bx: PointBox) -> Result<BTreeSet<Vec<i64>>> {
    guard(b)?;
    let n = b.dim();
    if n != bx.dim() {
        return Err(Error::DimensionMismatch {
            left: n,
            right: bx.dim(),
        });
    }
    let all: Vec<usize> = (0..n).collect();
    let det = laplace(b, &all, &all);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let mut max_adj = BigInt::from(1);
    if n > 1 {
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = all.iter().copied().filter(|&r| r != i).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
                max_adj = max_adj.max(laplace(b, &rows, &cols).abs());
            }
        }
    }
    let window = (BigInt::from(n as i64 * bx.radius()) * max_adj).div_floor(&det.abs());
    let window = window
        .to_i64()
        .ok_or_else(|| Error::InvalidArgument("coefficient window too large".into()))?;

    let rows = to_i64(b)?;
    let mut points = BTreeSet::new();
    let mut z = vec![-window; n];
    loop {
        let point: Vec<i128> = (0..n)
            .map(|j| (0..n).map(|i| z[i] as i128 * rows[i][j] as i128).sum())
            .collect();
        if point.iter().all(|&x| x.abs() <= bx.radius() as i128) {
            points.insert(point.into_iter().map(|x| x as i64).collect());
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return Ok(points);
            }
            z[k] += 1;
            if z[k] <= window {
                break;
            }
            z[k] = -window;
            k += 1;
        }
    }
}

/// Point-set comparison in a box.
pub fn oracle_equal(a: &IntMatrix, b: &IntMatrix, bx: PointBox) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(lattice_points_in_box(a, bx)? == lattice_points_in_box(b, bx)?)
}

/// A radius at which [`oracle_equal`] decides true lattice equality for
/// this pair: once the box holds the rows of both bases, matching point
/// sets put each basis inside the other lattice.
pub fn sufficient_radius(a: &IntMatrix, b: &IntMatrix) -> i64 {
    a.max_abs_entry()
        .max(b.max_abs_entry())
        .to_i64()
        .unwrap_or(i64::MAX)
        .max(1)
}

/// Invariant chain from determinantal divisors: `D_k` is the gcd of all
/// `k x k` minors, the ascending factors are `D_k / D_{k-1}`, and the chain
/// is returned largest first.
pub fn oracle_snf(a: &IntMatrix) -> Result<InvariantChain> {
    guard(a)?;
    let n = a.dim();
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                g = g.gcd(&laplace(a, &rows, &cols));
            }
        }
        divisors.push(g);
    }
    if divisors[n].is_zero() {
        return Err(Error::Singular);
    }
    let chain: Vec<BigUint> = (1..=n)
        .rev()
        .map(|k| (&divisors[k] / &divisors[k - 1]).magnitude().clone())
        .collect();
    InvariantChain::new(chain)
}
