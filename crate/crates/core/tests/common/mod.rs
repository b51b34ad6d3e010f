#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use sublattice_core::normal_forms::det;
use sublattice_core::IntMatrix;

pub fn matrix(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).unwrap()
}

/// Product of up to `max_ops` random elementary integer row operations
/// (swap, negate, add a multiple of another row).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, max_ops: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let ops = rng.gen_range(0..=max_ops);
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|x| *x = -*x),
            _ if i != j => {
                let k = rng.gen_range(-3i64..=3);
                let src = rows[j].clone();
                for (x, s) in rows[i].iter_mut().zip(src) {
                    *x += k * s;
                }
            }
            _ => {}
        }
    }
    IntMatrix::from_i64_rows(&rows).unwrap()
}

/// Random nonsingular matrix with entries in `[-bound, bound]`.
pub fn random_nonsingular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        if det(&m) != BigInt::from(0) {
            return m;
        }
    }
}
