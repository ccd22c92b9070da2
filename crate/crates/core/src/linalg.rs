//! Exact linear algebra over Z and Q: Smith invariants, saturated integer
//! kernels, Hermite row reduction and rational elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;

/// Nonzero diagonal of the Smith normal form, each entry positive and
/// dividing the next.
pub fn smith_invariants(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Row Hermite normal form of the lattice spanned by `vectors`; zero rows are
/// dropped, pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`.
pub fn hermite_rows(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..dim {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[p][col]);
                for k in 0..dim {
                    let v = &rows[p][k] * &q;
                    rows[i][k] -= v;
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.swap_remove(p);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(r);
            pivots.push(col);
        }
    }
    for idx in 0..out.len() {
        let col = pivots[idx];
        let pivot = out[idx][col].clone();
        for above in 0..idx {
            let q = out[above][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for k in 0..dim {
                let v = &out[idx][k] * &q;
                out[above][k] -= v;
            }
        }
    }
    out
}

/// Basis (in Hermite form) of the saturated lattice `{v in Z^cols : m v = 0}`.
pub fn integer_kernel(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    // unimodular column transform, tracked as its columns
    let mut u: Vec<Vec<BigInt>> =
        (0..cols).map(|j| (0..cols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pc = 0;
    for r in 0..rows {
        if pc >= cols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pc..cols).filter(|&j| !a[r][j].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    for row in a.iter_mut() {
                        row.swap(pc, j);
                    }
                    u.swap(pc, j);
                    pc += 1;
                }
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&j| a[r][j].abs()).unwrap();
            for &j in &nonzero {
                if j == p {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][p]);
                for row in a.iter_mut() {
                    let v = &row[p] * &q;
                    row[j] -= v;
                }
                let up = u[p].clone();
                for (x, y) in u[j].iter_mut().zip(up.iter()) {
                    *x -= y * &q;
                }
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = u[pc..].to_vec();
    hermite_rows(&basis, cols)
}

/// Integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &Matrix<BigInt>, b: &[BigInt]) -> Option<Vec<BigInt>> {
    // Solve via the kernel of the augmented matrix [m | -b]: a kernel vector
    // with last coordinate 1 gives a solution.
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| if j < m.cols() { m.get(i, j).clone() } else { -b[i].clone() });
    let kernel = integer_kernel(&aug);
    let last = m.cols();
    // The last coordinates of kernel vectors generate an ideal dZ; the system
    // is solvable iff d = 1.
    let mut combo = vec![BigInt::zero(); last + 1];
    let mut g = BigInt::zero();
    for v in &kernel {
        if v[last].is_zero() {
            continue;
        }
        let e = g.extended_gcd(&v[last]);
        let (new_g, x, y) = (e.gcd, e.x, e.y);
        for k in 0..=last {
            combo[k] = &combo[k] * &x + &v[k] * &y;
        }
        g = new_g;
    }
    if !g.is_one() {
        return None;
    }
    Some(combo[..last].to_vec())
}

pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Rank over Q.
pub fn rank_rational(m: &Matrix<BigRational>) -> usize {
    let mut a = m.to_rows();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i == rank || a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[rank][col];
            for j in col..m.cols() {
                let v = &a[rank][j] * &f;
                a[i][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn det_rational(m: &Matrix<BigRational>) -> BigRational {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= &a[col][col];
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let v = &a[col][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Solves `m X = b` for nonsingular square `m`.
pub fn solve_rational(m: &Matrix<BigRational>, b: &Matrix<BigRational>) -> Option<Matrix<BigRational>> {
    assert!(m.is_square() && m.rows() == b.rows());
    let n = m.rows();
    let k = b.cols();
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|i| m.row(i).iter().chain(b.row(i).iter()).cloned().collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..n + k {
                let v = &a[col][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    Some(Matrix::from_fn(n, k, |i, j| a[i][n + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    fn zv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_invariants(&zm(vec![vec![2, 4], vec![6, 8]])), zv(&[2, 4]));
        assert_eq!(smith_invariants(&zm(vec![vec![2, 0], vec![0, 3]])), zv(&[1, 6]));
        assert_eq!(smith_invariants(&zm(vec![vec![0, 0]])), zv(&[]));
    }

    #[test]
    fn kernel_is_saturated_and_canonical() {
        let k = integer_kernel(&zm(vec![vec![2, 2]]));
        assert_eq!(k, vec![zv(&[1, -1])]);
        let k = integer_kernel(&zm(vec![vec![0, 0]]));
        assert_eq!(k, vec![zv(&[1, 0]), zv(&[0, 1])]);
        let k = integer_kernel(&Matrix::empty(0, 3));
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn integer_solutions() {
        let m = zm(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&m, &zv(&[4, 9])), Some(zv(&[2, 3])));
        assert_eq!(solve_integer(&m, &zv(&[1, 0])), None);
    }

    #[test]
    fn rational_elimination() {
        let m = to_rational(&zm(vec![vec![1, 2], vec![3, 4]]));
        assert_eq!(det_rational(&m), BigRational::from_integer((-2).into()));
        assert_eq!(rank_rational(&m), 2);
        let inv = solve_rational(&m, &to_rational(&zm(vec![vec![1, 0], vec![0, 1]]))).unwrap();
        assert_eq!(inv.get(0, 0), &BigRational::from_integer((-2).into()));
    }
}
