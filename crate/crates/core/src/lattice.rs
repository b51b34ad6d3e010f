//! Full-rank sublattices of `Z^n`, stored by their canonical Hermite basis.
//!
//! Identity of sublattices is equality of Hermite forms. Equivalence (some
//! unimodular map of `Z^n` carries one onto the other) is equality of Smith
//! invariant chains. Maps act on row vectors by right multiplication, so a
//! witness `M` sends the lattice generated by `A` to the one generated by
//! `A * M`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::normal_forms::{
    det, hnf_reduce, inverse_unimodular, invariant_chain, is_unimodular, snf_reduce, HnfBasis,
    IntMatrix, InvariantChain,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    canonical: HnfBasis,
    index: BigUint,
}

impl Sublattice {
    /// Builds the sublattice generated by the rows of `rows`.
    pub fn from_rows(rows: &IntMatrix) -> Result<Self> {
        let canonical = hnf_reduce(rows)?;
        let index = canonical.index();
        if det(rows).magnitude() != &index {
            return Err(Error::Internal(format!(
                "hermite form of {rows} changed |det| to {index}"
            )));
        }
        Ok(Self { canonical, index })
    }

    pub fn from_hnf(canonical: HnfBasis) -> Self {
        let index = canonical.index();
        Self { canonical, index }
    }

    pub fn dim(&self) -> usize {
        self.canonical.dim()
    }

    pub fn canonical(&self) -> &HnfBasis {
        &self.canonical
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    pub fn invariant_chain(&self) -> InvariantChain {
        invariant_chain(self.canonical.matrix())
            .expect("canonical bases are nonsingular")
    }

    fn check_dim(&self, other: &Sublattice) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn equals(&self, other: &Sublattice) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.canonical == other.canonical)
    }

    pub fn equivalent(&self, other: &Sublattice) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.invariant_chain() == other.invariant_chain())
    }

    /// A unimodular `M` with `lattice(A * M) = other`, or `None` when the
    /// two sublattices are not equivalent. The witness is verified before it
    /// is returned.
    pub fn equivalence_witness(&self, other: &Sublattice) -> Result<Option<IntMatrix>> {
        self.check_dim(other)?;
        let a = snf_reduce(self.canonical.matrix())?;
        let b = snf_reduce(other.canonical.matrix())?;
        if a.chain != b.chain {
            return Ok(None);
        }
        // L_a A R_a = S = L_b B R_b, so A R_a R_b^{-1} = L_a^{-1} L_b B
        // generates the same lattice as B.
        let witness = a.right.mul(&inverse_unimodular(&b.right)?)?;
        if !self.is_witness(other, &witness)? {
            return Err(Error::Internal(format!(
                "constructed witness {witness} does not map {} onto {}",
                self.canonical, other.canonical
            )));
        }
        Ok(Some(witness))
    }

    /// Checks that `m` is unimodular and maps this sublattice onto `other`.
    pub fn is_witness(&self, other: &Sublattice, m: &IntMatrix) -> Result<bool> {
        self.check_dim(other)?;
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: m.dim(),
            });
        }
        if !is_unimodular(m) {
            return Ok(false);
        }
        let image = hnf_reduce(&self.canonical.matrix().mul(m)?)?;
        Ok(image == other.canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> Sublattice {
        Sublattice::from_rows(&IntMatrix::from_i64_rows(rows).unwrap()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn construction_examples() {
        let a = lat(&[&[1, 0], &[0, 2]]);
        assert_eq!(a.index(), &BigUint::from(2u32));
        assert_eq!(a.canonical().matrix(), &m(&[&[1, 0], &[0, 2]]));

        let b = lat(&[&[2, 0], &[0, 1]]);
        assert_eq!(b.index(), &BigUint::from(2u32));
        assert_eq!(b.canonical().matrix(), &m(&[&[2, 0], &[0, 1]]));

        let c = lat(&[&[4, 2], &[2, 2]]);
        assert_eq!(c.index(), &BigUint::from(4u32));
        assert_eq!(c.canonical().matrix(), &m(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn singular_rows_rejected() {
        let err = Sublattice::from_rows(&m(&[&[1, 2], &[-2, -4]])).unwrap_err();
        assert_eq!(err, Error::Singular);
        assert_eq!(err.to_string(), "rows are linearly dependent");
    }

    #[test]
    fn equality_examples() {
        let a = lat(&[&[1, 0], &[0, 2]]);
        assert!(a.equals(&lat(&[&[1, 0], &[2, 2]])).unwrap());
        assert!(!a.equals(&lat(&[&[2, 0], &[0, 1]])).unwrap());
        assert!(a.equals(&a).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let a = lat(&[&[1, 0], &[0, 2]]);
        let b = lat(&[&[2, 0], &[0, 1]]);
        assert!(a.equivalent(&b).unwrap());
        assert!(!lat(&[&[2, 0], &[0, 2]])
            .equivalent(&lat(&[&[4, 0], &[0, 1]]))
            .unwrap());
        assert!(a.equivalent(&a).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let a = lat(&[&[1, 0], &[0, 2]]);
        let b = lat(&[&[2]]);
        assert!(matches!(a.equals(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.equivalent(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            a.equivalence_witness(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn witness_for_coordinate_swap() {
        let a = lat(&[&[1, 0], &[0, 2]]);
        let b = lat(&[&[2, 0], &[0, 1]]);
        let w = a.equivalence_witness(&b).unwrap().unwrap();
        assert!(is_unimodular(&w));
        assert!(a.is_witness(&b, &w).unwrap());
        // the swap e1 <-> e2 is also accepted
        assert!(a.is_witness(&b, &m(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(!a.is_witness(&b, &IntMatrix::identity(2)).unwrap());
    }

    #[test]
    fn witness_absent_or_trivial() {
        let a = lat(&[&[2, 0], &[0, 2]]);
        let b = lat(&[&[4, 0], &[0, 1]]);
        assert_eq!(a.equivalence_witness(&b).unwrap(), None);

        let c = lat(&[&[3, 0, 0], &[1, 2, 0], &[5, 7, 6]]);
        let w = c.equivalence_witness(&c).unwrap().unwrap();
        assert!(c.is_witness(&c, &w).unwrap());
        assert!(c.is_witness(&c, &IntMatrix::identity(3)).unwrap());
    }

    #[test]
    fn witness_non_diagonal_pair() {
        let a = lat(&[&[6, 0, 0], &[2, 1, 0], &[1, 0, 1]]);
        let b = lat(&[&[1, 0, 0], &[0, 2, 0], &[0, 1, 3]]);
        assert!(a.equivalent(&b).unwrap());
        let w = a.equivalence_witness(&b).unwrap().unwrap();
        assert!(a.is_witness(&b, &w).unwrap());
        let back = b.equivalence_witness(&a).unwrap().unwrap();
        assert!(b.is_witness(&a, &back).unwrap());
    }
}
