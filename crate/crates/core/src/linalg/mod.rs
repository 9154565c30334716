//! Exact dense linear algebra over prime fields.

pub mod field;
pub mod gf2;
mod matrix;

pub use field::FpScalar;
pub use gf2::BitMatrix;
pub use matrix::{EchelonDecomposition, FpMatrix};

use crate::error::{domain, Result};

/// Dimensions of two column spaces, their intersection and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceDims {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_intersection: usize,
    pub dim_sum: usize,
}

/// Column spaces of `a` and `b` in GF(p)^rows. The sum is `rank [A|B]`; the
/// intersection is obtained from the modular law.
pub fn subspace_dims(a: &FpMatrix, b: &FpMatrix) -> Result<SubspaceDims> {
    if a.rows() != b.rows() {
        return Err(domain(format!(
            "subspaces of different ambient dimension: {} vs {}",
            a.rows(),
            b.rows()
        )));
    }
    let dim_a = a.rank();
    let dim_b = b.rank();
    let dim_sum = a.hcat(b)?.rank();
    Ok(SubspaceDims {
        dim_a,
        dim_b,
        dim_intersection: dim_a + dim_b - dim_sum,
        dim_sum,
    })
}

/// Dimension of `col(A) ∩ col(B)` computed from the kernel of `[A | -B]`:
/// every kernel vector `(x, y)` gives `Ax = By` in the intersection.
pub fn intersection_dim_via_kernel(a: &FpMatrix, b: &FpMatrix) -> Result<usize> {
    let stacked = a.hcat(&b.scale(-1))?;
    let kernel = stacked.kernel_basis();
    // x-part: the first a.cols() rows of each kernel vector
    let top = kernel.transpose().columns(0..a.cols()).transpose();
    Ok(a.mul(&top)?.rank())
}

/// A generalized inverse: returns `y` with `x * y * x == x`.
///
/// With `P x = R` in reduced echelon form, `Z` selects the pivot columns
/// (`Z[c_i, i] = 1`), so `R Z R = R` and `y = Z P` works.
pub fn regular_witness(x: &FpMatrix) -> FpMatrix {
    let ech = x.echelon();
    let mut z = FpMatrix::zeros(x.prime(), x.cols(), x.rows()).expect("prime already checked");
    for (i, &c) in ech.pivots.iter().enumerate() {
        z.set(c, i, 1);
    }
    z.mul(&ech.transform).expect("shapes agree by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn subspace_dims_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = FpMatrix::random_low_rank(7, 6, 4, 3, &mut rng).unwrap();
        let d = subspace_dims(&a, &a).unwrap();
        assert_eq!(
            d,
            SubspaceDims {
                dim_a: 3,
                dim_b: 3,
                dim_intersection: 3,
                dim_sum: 3
            }
        );

        let e12 = m(3, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let e34 = m(3, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]);
        let d = subspace_dims(&e12, &e34).unwrap();
        assert_eq!(
            (d.dim_a, d.dim_b, d.dim_intersection, d.dim_sum),
            (2, 2, 0, 4)
        );
        assert!(subspace_dims(&e12, &m(3, &[&[1]])).is_err());
    }

    #[test]
    fn kernel_route_matches_modular_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = FpMatrix::random(5, 4, 2, &mut rng).unwrap();
            let b = FpMatrix::random(5, 4, 3, &mut rng).unwrap();
            let d = subspace_dims(&a, &b).unwrap();
            assert_eq!(
                intersection_dim_via_kernel(&a, &b).unwrap(),
                d.dim_intersection
            );
        }
    }

    #[test]
    fn regular_witness_examples() {
        let zero = FpMatrix::zeros(5, 3, 3).unwrap();
        let y = regular_witness(&zero);
        assert!(zero.mul(&y).unwrap().mul(&zero).unwrap().is_zero());

        let x = m(3, &[&[1, 0], &[0, 0]]);
        let y = regular_witness(&x);
        assert_eq!(y, x);
        assert_eq!(x.mul(&y).unwrap().mul(&x).unwrap(), x);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let inv = FpMatrix::random_invertible(7, 5, &mut rng).unwrap();
        let y = regular_witness(&inv);
        assert_eq!(inv.mul(&y).unwrap(), FpMatrix::identity(7, 5).unwrap());
    }

    #[test]
    fn regular_witness_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = FpMatrix::random_low_rank(3, 4, 6, 2, &mut rng).unwrap();
        let y = regular_witness(&x);
        assert_eq!((y.rows(), y.cols()), (6, 4));
        assert_eq!(x.mul(&y).unwrap().mul(&x).unwrap(), x);
    }
}
