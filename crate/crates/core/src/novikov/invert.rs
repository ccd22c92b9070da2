use crate::laurent::{determinant, Exponent, LaurentError, LaurentPoly, Phi};
use crate::matrix::Matrix;

use super::series::{Direction, NovikovSeries};
use super::NovikovError;

/// `A = A' g + A''` with `A'` on the minimal level (shifted to level zero),
/// `g` a monomial on that level and `A''` strictly above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDecomposition {
    /// Scaled minimal level `C`.
    pub level: i128,
    /// Exponent of `g`: the lexicographically least exponent on level `C`.
    pub shift: Exponent,
    /// `A'`, entries supported on level zero.
    pub leading: Matrix<LaurentPoly>,
    /// `A''`, entries supported strictly above level `C`.
    pub tail: Matrix<LaurentPoly>,
}

impl LevelDecomposition {
    /// `A' g + A''`.
    pub fn reassemble(&self) -> Matrix<LaurentPoly> {
        Matrix::from_fn(self.leading.rows(), self.leading.cols(), |i, j| &self.leading.get(i, j).shift(&self.shift) + self.tail.get(i, j))
    }
}

/// Splits `a` at its minimal `phi`-level.
pub fn decompose(a: &Matrix<LaurentPoly>, phi: &Phi) -> Result<LevelDecomposition, NovikovError> {
    let level = a.iter().filter_map(|p| phi.min_level(p)).min().ok_or(NovikovError::ZeroMatrix)?;
    let shift = a
        .iter()
        .flat_map(|p| p.terms().filter(|(e, _)| phi.scaled_level(e) == level).map(|(e, _)| e.clone()))
        .min()
        .expect("minimal level is attained");
    let neg: Exponent = shift.iter().map(|x| -x).collect();
    let leading = a.map(|p| phi.slice(p, level).shift(&neg));
    let tail = a.map(|p| p - &phi.slice(p, level));
    Ok(LevelDecomposition { level, shift, leading, tail })
}

/// Verdict of the leading-level test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invertibility {
    Invertible,
    NotInvertible,
    /// The leading slice has a nonzero annihilator, so the test says nothing.
    Degenerate,
}

/// Classical adjugate, with entries from Bareiss determinants of minors.
pub fn adjugate(m: &Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
    let n = m.rows();
    let nvars = m.iter().next().map_or(1, LaurentPoly::nvars);
    if n == 1 {
        return Matrix::from_fn(1, 1, |_, _| LaurentPoly::one(nvars));
    }
    Matrix::from_fn(n, n, |i, j| {
        let d = determinant(&m.minor(Some(j), Some(i)));
        if (i + j) % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// Inverse of a unit `±x^e`.
pub fn unit_inverse(u: &LaurentPoly) -> Option<LaurentPoly> {
    if !u.is_unit() {
        return None;
    }
    let (e, c) = u.terms().next()?;
    Some(LaurentPoly::monomial(e.iter().map(|x| -x).collect(), c.clone()))
}

/// Leading-level verdict for a square Laurent matrix in the given completion.
pub fn leading_slice_test(a: &Matrix<LaurentPoly>, phi: &Phi, direction: Direction) -> Result<Invertibility, NovikovError> {
    if !a.is_square() {
        return Err(NovikovError::NotSquare);
    }
    if a.rows() == 0 {
        return Ok(Invertibility::Invertible);
    }
    let d = decompose(a, &direction.effective(phi))?;
    let det = determinant(&d.leading);
    Ok(if det.is_zero() {
        Invertibility::Degenerate
    } else if det.is_unit() {
        Invertibility::Invertible
    } else {
        Invertibility::NotInvertible
    })
}

/// Inverse of a square Laurent matrix in the Novikov completion, computed as
/// `(I + P)^-1 A'^-1 g^-1` with `P = A'^-1 g^-1 A''` and the geometric series
/// for `(I + P)^-1`.
///
/// `horizon` counts levels (in units of `phi`) above the lowest level of the
/// inverse; the product with `a` is then the identity below level `horizon`.
pub fn invert_matrix(
    a: &Matrix<LaurentPoly>,
    phi: &Phi,
    direction: Direction,
    horizon: i64,
) -> Result<Matrix<NovikovSeries>, NovikovError> {
    if !a.is_square() {
        return Err(NovikovError::NotSquare);
    }
    let eff = direction.effective(phi);
    let n = a.rows();
    if n == 0 {
        return Ok(Matrix::empty(0, 0));
    }
    let d = decompose(a, &eff)?;
    let det = determinant(&d.leading);
    if det.is_zero() {
        return Err(NovikovError::Degenerate);
    }
    let Some(det_inv) = unit_inverse(&det) else {
        return Err(NovikovError::NotInvertible { reason: "leading slice is not invertible".into() });
    };
    let neg_shift: Exponent = d.shift.iter().map(|x| -x).collect();
    // A'^-1 g^-1, supported on level -C
    let lead_inv = adjugate(&d.leading).map(|p| (p * &det_inv).shift(&neg_shift));
    let p = mat_mul(&lead_inv, &d.tail);
    let h = horizon as i128 * eff.denom();
    let s = geometric_inverse(&p, &eff, h);
    let b = mat_mul(&s, &lead_inv);
    let top = h - d.level;
    Ok(b.map(|x| NovikovSeries::new(x.clone(), eff.clone(), Some(top))))
}

/// Inverse of a single polynomial; see [`invert_matrix`].
pub fn invert_series(p: &LaurentPoly, phi: &Phi, direction: Direction, horizon: i64) -> Result<NovikovSeries, NovikovError> {
    let m = Matrix::from_fn(1, 1, |_, _| p.clone());
    Ok(invert_matrix(&m, phi, direction, horizon)?.get(0, 0).clone())
}

/// Whether `p` is a unit of the completion: its lowest slice (highest for
/// `Minus`) is `±` a monomial.
pub fn laurent_invertible(p: &LaurentPoly, phi: &Phi, direction: Direction) -> Result<bool, NovikovError> {
    if p.is_zero() {
        return Err(NovikovError::Laurent(LaurentError::ZeroPolynomial));
    }
    let eff = direction.effective(phi);
    let level = eff.min_level(p).expect("nonzero");
    Ok(eff.slice(p, level).is_unit())
}

/// `sum_k (-P)^k` truncated at scaled level `h`, for `P` strictly positive.
fn geometric_inverse(p: &Matrix<LaurentPoly>, phi: &Phi, h: i128) -> Matrix<LaurentPoly> {
    let n = p.rows();
    let nvars = phi.nvars();
    let ident = Matrix::from_fn(n, n, |i, j| if i == j { LaurentPoly::one(nvars) } else { LaurentPoly::zero(nvars) });
    let neg_p = p.map(|x| -x);
    let mut total = ident.clone();
    let mut power = ident;
    loop {
        power = truncate_matrix(&mat_mul(&power, &neg_p), phi, h);
        if power.iter().all(LaurentPoly::is_zero) {
            break;
        }
        total = Matrix::from_fn(n, n, |i, j| total.get(i, j) + power.get(i, j));
    }
    total
}

fn truncate_matrix(m: &Matrix<LaurentPoly>, phi: &Phi, h: i128) -> Matrix<LaurentPoly> {
    m.map(|x| {
        let lo = phi.min_level(x).unwrap_or(h);
        phi.window(x, lo, Some(h))
    })
}

pub fn mat_mul(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
    assert_eq!(a.cols(), b.rows());
    let nvars = a.iter().chain(b.iter()).next().map_or(1, LaurentPoly::nvars);
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = LaurentPoly::zero(nvars);
        for k in 0..a.cols() {
            let (x, y) = (a.get(i, k), b.get(k, j));
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::series::{exact_matrix, is_identity_to_precision, series_matrix_mul};

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::univariate(terms)
    }

    #[test]
    fn decomposition_examples() {
        let phi = Phi::standard();
        let diag = Matrix::from_rows(vec![vec![t(&[(0, 1)]), t(&[])], vec![t(&[]), t(&[(1, 1)])]]);
        let d = decompose(&diag, &phi).unwrap();
        assert_eq!(d.level, 0);
        assert_eq!(d.leading, Matrix::from_rows(vec![vec![t(&[(0, 1)]), t(&[])], vec![t(&[]), t(&[])]]));
        assert_eq!(d.tail, Matrix::from_rows(vec![vec![t(&[]), t(&[])], vec![t(&[]), t(&[(1, 1)])]]));
        assert_eq!(d.reassemble(), diag);
        let d = decompose(&Matrix::from_rows(vec![vec![t(&[(-1, 1), (0, 2)])]]), &phi).unwrap();
        assert_eq!((d.level, d.shift.clone()), (-1, vec![-1]));
        assert_eq!(d.leading.get(0, 0), &t(&[(0, 1)]));
        assert_eq!(d.tail.get(0, 0), &t(&[(0, 2)]));
        assert_eq!(decompose(&Matrix::from_rows(vec![vec![t(&[])]]), &phi), Err(NovikovError::ZeroMatrix));
    }

    #[test]
    fn geometric_series_inverse() {
        let phi = Phi::standard();
        let inv = invert_series(&t(&[(0, 1), (1, -1)]), &phi, Direction::Plus, 4).unwrap();
        assert_eq!(inv.poly(), &t(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
        assert!(!laurent_invertible(&t(&[(0, 2), (1, -1)]), &phi, Direction::Plus).unwrap());
        assert!(laurent_invertible(&t(&[(0, 2), (1, -1)]), &phi, Direction::Minus).unwrap());
        let inv = invert_series(&t(&[(0, 2), (1, -1)]), &phi, Direction::Minus, 5).unwrap();
        let prod = NovikovSeries::exact(t(&[(0, 2), (1, -1)]), &Direction::Minus.effective(&phi)).mul(&inv);
        assert!(prod.agrees_with(&NovikovSeries::one(&Direction::Minus.effective(&phi))));
    }

    #[test]
    fn triangular_matrix_inverse() {
        let phi = Phi::standard();
        let a = Matrix::from_rows(vec![vec![t(&[(0, 1), (1, -1)]), t(&[(1, 1)])], vec![t(&[]), t(&[(0, 1), (1, -1)])]]);
        let b = invert_matrix(&a, &phi, Direction::Plus, 4).unwrap();
        let ea = exact_matrix(&a, &phi);
        assert!(is_identity_to_precision(&series_matrix_mul(&ea, &b, &phi)));
        assert!(is_identity_to_precision(&series_matrix_mul(&b, &ea, &phi)));
        assert_eq!(b.get(0, 0).poly(), &t(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn degenerate_leading_slice() {
        let phi = Phi::standard();
        let a = Matrix::from_rows(vec![vec![t(&[(0, 1)]), t(&[])], vec![t(&[]), t(&[(1, 1)])]]);
        assert_eq!(invert_matrix(&a, &phi, Direction::Plus, 8), Err(NovikovError::Degenerate));
        assert_eq!(leading_slice_test(&a, &phi, Direction::Plus).unwrap(), Invertibility::Degenerate);
    }
}
