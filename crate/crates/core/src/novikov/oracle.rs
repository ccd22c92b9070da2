//! Slow reference solver for one-variable inverses: solves `A X = I` level by
//! level with rational linear algebra and checks integrality at each level.
//! Shares no code with the leading-slice machinery it is used to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::laurent::LaurentPoly;
use crate::linalg::solve_rational;
use crate::matrix::Matrix;

use super::series::Direction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// `A X = I` is solvable over the integers below level `horizon`; the
    /// truncated solution is returned.
    Invertible(Matrix<LaurentPoly>),
    /// The unique rational solution has a non-integral coefficient at the
    /// given level of the product.
    NotInvertible { level: i64 },
    /// The lowest coefficient matrix is singular over `Q`, so the level
    /// recursion does not determine a solution.
    Singular,
}

/// Solves `A X = I` in `Z[t^-1, t]]` (`Plus`) or `Z[[t^-1, t]` (`Minus`) for
/// a square one-variable matrix, up to product level `horizon`.
pub fn truncated_inverse_oracle(a: &Matrix<LaurentPoly>, direction: Direction, horizon: i64) -> OracleOutcome {
    assert!(a.is_square());
    assert!(a.iter().all(|p| p.nvars() == 1), "oracle handles one variable");
    let n = a.rows();
    let a = match direction {
        Direction::Plus => a.clone(),
        Direction::Minus => a.map(LaurentPoly::invert_variables),
    };
    let exps: Vec<i64> = a.iter().flat_map(|p| p.terms().map(|(e, _)| e[0]).collect::<Vec<_>>()).collect();
    let (Some(&a0), Some(&a1)) = (exps.iter().min(), exps.iter().max()) else {
        return OracleOutcome::Singular;
    };
    let coeff = |j: i64| -> Matrix<BigRational> { Matrix::from_fn(n, n, |r, c| BigRational::from_integer(a.get(r, c).coeff(&[j]))) };
    let coeffs: Vec<Matrix<BigRational>> = (a0..=a1).map(coeff).collect();
    let lead = &coeffs[0];
    let k0 = -a0;
    let mut xs: Vec<Matrix<BigRational>> = Vec::new();
    for m in 0..horizon {
        // rhs = delta_{m0} I - sum_{j > a0} A_j X_{m - j}
        let mut rhs =
            Matrix::from_fn(n, n, |r, c| if m == 0 && r == c { BigRational::from_integer(1.into()) } else { BigRational::zero() });
        for (off, aj) in coeffs.iter().enumerate().skip(1) {
            let j = a0 + off as i64;
            let idx = m - j - k0;
            if idx < 0 || idx as usize >= xs.len() {
                continue;
            }
            let x = &xs[idx as usize];
            for r in 0..n {
                for c in 0..n {
                    let mut s = BigRational::zero();
                    for k in 0..n {
                        s += aj.get(r, k) * x.get(k, c);
                    }
                    rhs[(r, c)] -= s;
                }
            }
        }
        let Some(x) = solve_rational(lead, &rhs) else {
            return OracleOutcome::Singular;
        };
        if x.iter().any(|v| !v.is_integer()) {
            return OracleOutcome::NotInvertible { level: m };
        }
        xs.push(x);
    }
    let inverse = Matrix::from_fn(n, n, |r, c| {
        let mut p = LaurentPoly::zero(1);
        for (i, x) in xs.iter().enumerate() {
            let v: BigInt = x.get(r, c).to_integer();
            p.add_term(vec![k0 + i as i64], v);
        }
        match direction {
            Direction::Plus => p,
            Direction::Minus => p.invert_variables(),
        }
    });
    OracleOutcome::Invertible(inverse)
}
