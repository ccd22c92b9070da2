//! Determinants over `Z[Z^n]`.

use super::LaurentPoly;
use crate::matrix::Matrix;

/// Fraction-free (Bareiss) determinant with exact division.
pub fn determinant(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let nvars = m.iter().next().map_or(1, LaurentPoly::nvars);
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    let mut a = m.to_rows();
    let mut prev = LaurentPoly::one(nvars);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return LaurentPoly::zero(nvars);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Cofactor expansion along the first row; exponential, for small matrices
/// and cross-checks.
pub fn determinant_cofactor(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    assert!(m.is_square());
    let n = m.rows();
    let nvars = m.iter().next().map_or(1, LaurentPoly::nvars);
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut total = LaurentPoly::zero(nvars);
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let term = m.get(0, j) * &determinant_cofactor(&m.minor(Some(0), Some(j)));
        if j % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::univariate(terms)
    }

    #[test]
    fn small_determinants() {
        let id = Matrix::from_fn(3, 3, |i, j| if i == j { t(&[(0, 1)]) } else { t(&[]) });
        assert!(determinant(&id).is_one());
        let d = Matrix::from_rows(vec![vec![t(&[(1, 1)]), t(&[])], vec![t(&[]), t(&[(-1, 1)])]]);
        assert!(determinant(&d).is_one());
        let m = Matrix::from_rows(vec![vec![t(&[(0, 1), (1, -1)]), t(&[(1, 1)])], vec![t(&[(1, 1)]), t(&[(0, 1), (1, -1)])]]);
        assert_eq!(determinant(&m), t(&[(0, 1), (1, -2)]));
        assert_eq!(determinant_cofactor(&m), t(&[(0, 1), (1, -2)]));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = Matrix::from_rows(vec![
            vec![t(&[]), t(&[(0, 1)]), t(&[(1, 1)])],
            vec![t(&[(0, 1)]), t(&[]), t(&[(0, 2)])],
            vec![t(&[(2, 1)]), t(&[(0, 3)]), t(&[])],
        ]);
        assert_eq!(determinant(&m), determinant_cofactor(&m));
    }
}
