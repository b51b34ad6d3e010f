//! Exact integer matrix algebra over unbounded integers.
//!
//! Matrices are square and act on row vectors: row `i` holds the
//! coordinates of basis vector `i` with respect to the standard basis of
//! `Z^n`, and the lattice generated by a matrix `A` is `{ zA : z in Z^n }`.
//!
//! Two normal forms are provided:
//!
//! * [`hnf_reduce`] returns the lower-triangular Hermite form with positive
//!   diagonal where every entry below the diagonal lies in `[0, h_jj)` for
//!   its column `j`. Two bases generate the same lattice iff their Hermite
//!   forms coincide.
//! * [`snf_reduce`] returns the Smith form `L * A * R = diag(d_1, ..., d_n)`
//!   with `L`, `R` unimodular and the chain ordered largest first, so that
//!   `d_i | d_{i-1}`.
//!
//! The row-bounded triangular variant (entries below `h_ii` in row `i`) is
//! also a valid normal form but is not used here.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("matrix must have at least one row".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {} (matrix must be square)",
                i + 1,
                r.len(),
                n
            )));
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Lattice-preserving row form of the matrix used by the reductions.
    fn to_work(&self) -> Vec<Vec<BigInt>> {
        self.rows()
    }

    fn from_work(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let n = rows.len();
        IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }
}

/// Renders as `r11,r12;r21,r22`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Serialized in the text form.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses either the text form `2,0;1,2` or a JSON array of integer arrays.
impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            return parse_json_matrix(s);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        let x = x.trim();
                        x.parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(rows)
    }
}

fn parse_json_matrix(s: &str) -> Result<IntMatrix> {
    let value: serde_json::Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("each row must be a JSON array".into()))?
                .iter()
                .map(|x| {
                    if let Some(v) = x.as_i64() {
                        Ok(BigInt::from(v))
                    } else if let Some(v) = x.as_u64() {
                        Ok(BigInt::from(v))
                    } else {
                        Err(Error::Parse(format!("not an integer: {x}")))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.n;
    let mut m = a.to_work();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    det(a).abs().is_one()
}

fn row_combine(
    rows: &mut [Vec<BigInt>],
    target: usize,
    other: usize,
    coeffs: (&BigInt, &BigInt, &BigInt, &BigInt),
) {
    // (target, other) <- ([[a, b], [c, d]]) * (target, other)
    let (a, b, c, d) = coeffs;
    for col in 0..rows[target].len() {
        let x = &rows[target][col];
        let y = &rows[other][col];
        let nx = a * x + b * y;
        let ny = c * x + d * y;
        rows[target][col] = nx;
        rows[other][col] = ny;
    }
}

fn row_sub_multiple(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for col in 0..rows[target].len() {
        let delta = q * &rows[src][col];
        rows[target][col] -= delta;
    }
}

fn negate_row(rows: &mut [Vec<BigInt>], r: usize) {
    for x in rows[r].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Row-reduces `rows` in place to Hermite form, applying every row
/// operation to `transform` as well.
fn hermite_in_place(
    rows: &mut [Vec<BigInt>],
    mut transform: Option<&mut [Vec<BigInt>]>,
) -> Result<()> {
    let n = rows.len();
    for c in (0..n).rev() {
        // fold column c of rows 0..c into row c
        for r in 0..c {
            if rows[r][c].is_zero() {
                continue;
            }
            if rows[c][c].is_zero() {
                rows.swap(r, c);
                if let Some(t) = transform.as_deref_mut() {
                    t.swap(r, c);
                }
                continue;
            }
            let a = rows[c][c].clone();
            let b = rows[r][c].clone();
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                row_sub_multiple(rows, r, c, &q);
                if let Some(t) = transform.as_deref_mut() {
                    row_sub_multiple(t, r, c, &q);
                }
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (s, t_coef) = (eg.x, eg.y);
            let c_coef = -(&b / &eg.gcd);
            let d_coef = &a / &eg.gcd;
            let coeffs = (&s, &t_coef, &c_coef, &d_coef);
            row_combine(rows, c, r, coeffs);
            if let Some(t) = transform.as_deref_mut() {
                row_combine(t, c, r, coeffs);
            }
        }
        if rows[c][c].is_zero() {
            return Err(Error::Singular);
        }
        if rows[c][c].is_negative() {
            negate_row(rows, c);
            if let Some(t) = transform.as_deref_mut() {
                negate_row(t, c);
            }
        }
    }
    for i in 1..n {
        for j in (0..i).rev() {
            let q = rows[i][j].div_floor(&rows[j][j]);
            if q.is_zero() {
                continue;
            }
            row_sub_multiple(rows, i, j, &q);
            if let Some(t) = transform.as_deref_mut() {
                row_sub_multiple(t, i, j, &q);
            }
        }
    }
    Ok(())
}

/// Canonical lower-triangular basis: positive diagonal, zeros above it and
/// `0 <= h_ij < h_jj` below it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnfBasis {
    matrix: IntMatrix,
}

impl PartialOrd for IntMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl HnfBasis {
    /// Validates that `matrix` already satisfies every Hermite form constraint.
    pub fn try_from_matrix(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.n;
        for i in 0..n {
            if !matrix.get(i, i).is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry ({i},{i}) must be positive"
                )));
            }
            for j in 0..n {
                let x = matrix.get(i, j);
                if j > i && !x.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) above the diagonal must be zero"
                    )));
                }
                if j < i && (x.is_negative() || x >= matrix.get(j, j)) {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) must lie in [0, {})",
                        matrix.get(j, j)
                    )));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: IntMatrix) -> Self {
        debug_assert!(HnfBasis::try_from_matrix(matrix.clone()).is_ok());
        Self { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.n
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.matrix.n)
            .map(|i| self.matrix.get(i, i).clone())
            .collect()
    }

    /// Product of the diagonal.
    pub fn index(&self) -> BigUint {
        self.diagonal()
            .iter()
            .fold(BigUint::one(), |acc, d| acc * d.magnitude())
    }
}

impl Serialize for HnfBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl fmt::Display for HnfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

pub fn hnf_reduce(a: &IntMatrix) -> Result<HnfBasis> {
    let mut rows = a.to_work();
    hermite_in_place(&mut rows, None)?;
    Ok(HnfBasis::new_unchecked(IntMatrix::from_work(rows)))
}

/// Hermite form together with the unimodular `U` such that `U * A = H`.
pub fn hnf_with_transform(a: &IntMatrix) -> Result<(HnfBasis, IntMatrix)> {
    let mut rows = a.to_work();
    let mut t = IntMatrix::identity(a.n).to_work();
    hermite_in_place(&mut rows, Some(&mut t))?;
    Ok((
        HnfBasis::new_unchecked(IntMatrix::from_work(rows)),
        IntMatrix::from_work(t),
    ))
}

/// Exact inverse of a unimodular matrix. The Hermite form of a unimodular
/// matrix is the identity, so the accumulated row transform is the inverse.
pub fn inverse_unimodular(a: &IntMatrix) -> Result<IntMatrix> {
    let (h, u) = hnf_with_transform(a)?;
    if *h.matrix() != IntMatrix::identity(a.n) {
        return Err(Error::InvalidArgument(format!(
            "matrix is not unimodular (|det| = {})",
            h.index()
        )));
    }
    Ok(u)
}

/// Smith invariant chain `(d_1, ..., d_n)` with `d_i | d_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantChain {
    chain: Vec<BigUint>,
}

impl InvariantChain {
    /// Checks positivity and the divisibility order.
    pub fn new(chain: Vec<BigUint>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidArgument("chain must be non-empty".into()));
        }
        if chain.iter().any(|d| d.is_zero()) {
            return Err(Error::InvalidArgument("chain entries must be positive".into()));
        }
        if chain.windows(2).any(|w| !w[0].is_multiple_of(&w[1])) {
            return Err(Error::InvalidArgument(
                "each chain entry must divide its predecessor".into(),
            ));
        }
        Ok(Self { chain })
    }

    pub fn from_u64(chain: &[u64]) -> Result<Self> {
        Self::new(chain.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.chain
    }

    pub fn dim(&self) -> usize {
        self.chain.len()
    }

    pub fn product(&self) -> BigUint {
        self.chain.iter().product()
    }
}

/// Serialized as an array of decimal strings.
impl Serialize for InvariantChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.chain.iter().map(|d| d.to_string()))
    }
}

impl fmt::Display for InvariantChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.chain.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub chain: InvariantChain,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let n = self.chain.dim();
        let mut d = IntMatrix::zeros(n);
        for (i, x) in self.chain.entries().iter().enumerate() {
            d.set(i, i, BigInt::from(x.clone()));
        }
        d
    }
}

struct SmithWork {
    a: Vec<Vec<BigInt>>,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(l) = self.left.as_mut() {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(r) = self.right.as_mut() {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_target -= q * row_src
    fn row_sub(&mut self, target: usize, src: usize, q: &BigInt) {
        row_sub_multiple(&mut self.a, target, src, q);
        if let Some(l) = self.left.as_mut() {
            row_sub_multiple(l, target, src, q);
        }
    }

    /// col_target -= q * col_src
    fn col_sub(&mut self, target: usize, src: usize, q: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
            for row in m.iter_mut() {
                let delta = q * &row[src];
                row[target] -= delta;
            }
        }
        apply(&mut self.a, target, src, q);
        if let Some(r) = self.right.as_mut() {
            apply(r, target, src, q);
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.a.len();
        for k in 0..n {
            loop {
                let pivot = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !self.a[i][j].is_zero())
                    .min_by(|&(i, j), &(p, q)| self.a[i][j].magnitude().cmp(self.a[p][q].magnitude()));
                let Some((pi, pj)) = pivot else {
                    return Err(Error::Singular);
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);

                let mut clean = true;
                for i in k + 1..n {
                    if self.a[i][k].is_zero() {
                        continue;
                    }
                    let q = self.a[i][k].div_floor(&self.a[k][k]);
                    self.row_sub(i, k, &q);
                    if !self.a[i][k].is_zero() {
                        clean = false;
                    }
                }
                for j in k + 1..n {
                    if self.a[k][j].is_zero() {
                        continue;
                    }
                    let q = self.a[k][j].div_floor(&self.a[k][k]);
                    self.col_sub(j, k, &q);
                    if !self.a[k][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let pivot = self.a[k][k].clone();
                let offender =
                    (k + 1..n).find(|&i| (k + 1..n).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => {
                        // row_k += row_i, then the next pass shrinks the pivot
                        self.row_sub(k, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[k][k].is_negative() {
                negate_row(&mut self.a, k);
                if let Some(l) = self.left.as_mut() {
                    negate_row(l, k);
                }
            }
        }
        Ok(())
    }

    fn descending_chain(&self) -> InvariantChain {
        let n = self.a.len();
        let chain = (0..n)
            .rev()
            .map(|i| self.a[i][i].magnitude().clone())
            .collect();
        InvariantChain { chain }
    }
}

/// Smith decomposition `left * A * right = diag(chain)`, chain largest first.
pub fn snf_reduce(a: &IntMatrix) -> Result<SmithDecomposition> {
    let n = a.n;
    let mut work = SmithWork {
        a: a.to_work(),
        left: Some(IntMatrix::identity(n).to_work()),
        right: Some(IntMatrix::identity(n).to_work()),
    };
    work.run()?;
    let chain = work.descending_chain();
    // The reduction produces the ascending order; reversing both the rows of
    // `left` and the columns of `right` flips the diagonal.
    let mut left = work.left.take().unwrap_or_default();
    left.reverse();
    let mut right = work.right.take().unwrap_or_default();
    for row in right.iter_mut() {
        row.reverse();
    }
    Ok(SmithDecomposition {
        chain,
        left: IntMatrix::from_work(left),
        right: IntMatrix::from_work(right),
    })
}

/// Just the invariant chain, without accumulating the witnesses.
pub fn invariant_chain(a: &IntMatrix) -> Result<InvariantChain> {
    let mut work = SmithWork {
        a: a.to_work(),
        left: None,
        right: None,
    };
    work.run()?;
    Ok(work.descending_chain())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn chain(v: &[u64]) -> InvariantChain {
        InvariantChain::from_u64(v).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMatrix::identity(3)), BigInt::from(1));
        assert_eq!(det(&m(&[&[1, 0], &[0, 2]])), BigInt::from(2));
        assert_eq!(det(&m(&[&[4, 2], &[2, 2]])), BigInt::from(4));
    }

    #[test]
    fn det_needs_pivoting_and_sign() {
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(
            det(&m(&[&[2, -3, 1], &[2, 0, -1], &[1, 4, 5]])),
            BigInt::from(49)
        );
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&m(&[&[0, 1], &[1, 0]])));
        assert!(!is_unimodular(&m(&[&[2, 0], &[0, 1]])));
        assert!(is_unimodular(&m(&[&[1, 1], &[0, 1]])));
    }

    #[test]
    fn hnf_examples() {
        let h = hnf_reduce(&m(&[&[4, 2], &[2, 2]])).unwrap();
        assert_eq!(h.matrix(), &m(&[&[2, 0], &[0, 2]]));
        let h = hnf_reduce(&m(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(h.matrix(), &m(&[&[1, 0], &[0, 2]]));
        // negative diagonal is normalized; point-set oracle confirms the
        // lattice {(3a, b)} (see tests/oracle_agreement.rs)
        let h = hnf_reduce(&m(&[&[-3, 0], &[0, 1]])).unwrap();
        assert_eq!(h.matrix(), &m(&[&[3, 0], &[0, 1]]));
        let h = hnf_reduce(&m(&[&[1, 0], &[2, 2]])).unwrap();
        assert_eq!(h.matrix(), &m(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn hnf_rejects_singular() {
        assert_eq!(hnf_reduce(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
        assert_eq!(hnf_reduce(&m(&[&[0]])), Err(Error::Singular));
    }

    #[test]
    fn hnf_transform_and_inverse() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let (h, u) = hnf_with_transform(&a).unwrap();
        assert_eq!(u.mul(&a).unwrap(), *h.matrix());
        assert!(is_unimodular(&u));

        let w = m(&[&[2, 3], &[1, 2]]);
        let inv = inverse_unimodular(&w).unwrap();
        assert_eq!(w.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert!(inverse_unimodular(&m(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn hnf_basis_validation() {
        assert!(HnfBasis::try_from_matrix(m(&[&[2, 0], &[1, 3]])).is_ok());
        assert!(HnfBasis::try_from_matrix(m(&[&[2, 0], &[2, 3]])).is_err());
        assert!(HnfBasis::try_from_matrix(m(&[&[2, 1], &[0, 3]])).is_err());
        assert!(HnfBasis::try_from_matrix(m(&[&[2, 0], &[-1, 3]])).is_err());
        assert!(HnfBasis::try_from_matrix(m(&[&[0, 0], &[0, 3]])).is_err());
    }

    #[test]
    fn snf_examples() {
        for (a, expected) in [
            (m(&[&[1, 0], &[0, 2]]), chain(&[2, 1])),
            (m(&[&[2, 0], &[0, 2]]), chain(&[2, 2])),
            (m(&[&[2, 0], &[1, 1]]), chain(&[2, 1])),
        ] {
            let s = snf_reduce(&a).unwrap();
            assert_eq!(s.chain, expected);
            assert_eq!(invariant_chain(&a).unwrap(), expected);
            assert!(is_unimodular(&s.left));
            assert!(is_unimodular(&s.right));
            let prod = s.left.mul(&a).unwrap().mul(&s.right).unwrap();
            assert_eq!(prod, s.diagonal_matrix());
        }
    }

    #[test]
    fn snf_divisibility_fixup() {
        // diag(2, 3) is not in Smith form; the chain must be (6, 1)
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = snf_reduce(&a).unwrap();
        assert_eq!(s.chain, chain(&[6, 1]));
        assert_eq!(
            s.left.mul(&a).unwrap().mul(&s.right).unwrap(),
            s.diagonal_matrix()
        );
        assert_eq!(snf_reduce(&m(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::Singular);
    }

    #[test]
    fn chain_validation() {
        assert!(InvariantChain::from_u64(&[4, 2, 1]).is_ok());
        assert!(InvariantChain::from_u64(&[2, 4]).is_err());
        assert!(InvariantChain::from_u64(&[3, 0]).is_err());
        assert_eq!(chain(&[12, 6, 1]).product(), BigUint::from(72u32));
        assert_eq!(chain(&[4, 1]).to_string(), "(4,1)");
    }

    #[test]
    fn text_format() {
        let a: IntMatrix = "2,0;1,2".parse().unwrap();
        assert_eq!(a, m(&[&[2, 0], &[1, 2]]));
        assert_eq!(a.to_string(), "2,0;1,2");
        let b: IntMatrix = "[[2,0],[1,2]]".parse().unwrap();
        assert_eq!(a, b);
        let c: IntMatrix = " 7 ".parse().unwrap();
        assert_eq!(c, m(&[&[7]]));
        let big: IntMatrix = "123456789012345678901234567890,0;0,1".parse().unwrap();
        assert_eq!(big.to_string(), "123456789012345678901234567890,0;0,1");
    }

    #[test]
    fn text_format_rejects_bad_input() {
        assert!("1,2;3".parse::<IntMatrix>().is_err());
        assert!("1,2,3;4,5,6".parse::<IntMatrix>().is_err());
        assert!("".parse::<IntMatrix>().is_err());
        assert!("1,x;0,1".parse::<IntMatrix>().is_err());
        assert!("[[1,2],[3]]".parse::<IntMatrix>().is_err());
        assert!("[[1.5,0],[0,1]]".parse::<IntMatrix>().is_err());
        assert!("[]".parse::<IntMatrix>().is_err());
    }
}
