//! Exact determinants over any integral domain.
//!
//! `exact_det` runs fraction-free (Bareiss) elimination with row pivoting and
//! sign tracking, so it works over non-field domains like the soft-edge moment
//! polynomial ring, where every intermediate division is guaranteed exact.
//! `det_cofactor` is the independent oracle used by the property tests.

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use num_traits::{One, Zero};

/// Minimal integral-domain interface for exact elimination.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact division: `Some(q)` with `q * rhs == self`, `None` otherwise.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        GaussianRational::div_exact(self, rhs)
    }
}

fn check_square<R>(m: &[Vec<R>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::argument(format!(
                "matrix is not square: {} rows, row of length {}",
                n,
                row.len()
            )));
        }
    }
    Ok(n)
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn exact_det<R: Ring>(matrix: &[Vec<R>]) -> Result<R> {
    let n = check_square(matrix)?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search below row k
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul_ref(&m[k][k]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step division must be exact over an integral domain");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg_ref() } else { det })
}

/// Determinant by cofactor expansion along the first row. Exponential in the
/// dimension; kept as an independent oracle for small matrices.
pub fn det_cofactor<R: Ring>(matrix: &[Vec<R>]) -> Result<R> {
    check_square(matrix)?;
    fn go<R: Ring>(m: &[Vec<R>]) -> R {
        let n = m.len();
        if n == 0 {
            return R::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = R::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<R>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[i][c].clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul_ref(&go(&minor));
            acc = if j % 2 == 0 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        acc
    }
    Ok(go(matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn identity(n: usize) -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| (0..n).map(|j| rat_int((i == j) as i64)).collect())
            .collect()
    }

    #[test]
    fn identity_det_is_one() {
        assert_eq!(exact_det(&identity(3)).unwrap(), rat_int(1));
    }

    #[test]
    fn equal_rows_give_zero() {
        let m = vec![
            vec![rat(1, 2), rat(2, 3)],
            vec![rat(1, 2), rat(2, 3)],
        ];
        assert_eq!(exact_det(&m).unwrap(), rat_int(0));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let m = vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ];
        assert_eq!(exact_det(&m).unwrap(), rat_int(-1));
    }

    #[test]
    fn empty_matrix_det_is_one() {
        let m: Vec<Vec<Rational>> = vec![];
        assert_eq!(exact_det(&m).unwrap(), rat_int(1));
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let m = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(3)]];
        assert!(exact_det(&m).is_err());
    }

    #[test]
    fn gaussian_rational_det() {
        // det [[i, 1],[1, i]] = i*i - 1 = -2
        let i = GaussianRational::i;
        let one = GaussianRational::one;
        let m = vec![vec![i(), one()], vec![one(), i()]];
        assert_eq!(exact_det(&m).unwrap(), GaussianRational::from_int(-2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn bareiss_matches_cofactor_on_4x4(entries in prop::collection::vec((-40i64..40, 1i64..12), 16)) {
            let m: Vec<Vec<Rational>> = (0..4)
                .map(|i| (0..4).map(|j| {
                    let (p, q) = entries[4 * i + j];
                    rat(p, q)
                }).collect())
                .collect();
            prop_assert_eq!(exact_det(&m).unwrap(), det_cofactor(&m).unwrap());
        }
    }
}
