//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use rand::Rng;

use novikov_core::groups::{CohomologyClass, GroupPresentation, Word};
use novikov_core::laurent::{LaurentPoly, Phi, TorsionValue};
use novikov_core::novikov::BasedComplex;
use novikov_core::torsion::{build_complex, tau_of_complex, AbelianImage, PresentationComplex};
use novikov_core::Matrix;

pub fn t(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::univariate(terms)
}

/// `1 - t`.
pub fn one_minus_t() -> LaurentPoly {
    t(&[(0, 1), (1, -1)])
}

pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_terms: usize, exp: i64, coeff: i64) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Vec<i64>, i64)> = (0..n)
        .map(|_| {
            let e = (0..nvars).map(|_| rng.gen_range(-exp..=exp)).collect();
            let mut c = rng.gen_range(-coeff..=coeff);
            if c == 0 {
                c = 1;
            }
            (e, c)
        })
        .collect();
    LaurentPoly::from_terms(nvars, terms)
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, nvars: usize, max_terms: usize, exp: i64, coeff: i64) -> LaurentPoly {
    loop {
        let p = random_poly(rng, nvars, max_terms.max(1), exp, coeff);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random signed letter sequence; the word is freely reduced on creation.
pub fn random_word<R: Rng>(rng: &mut R, ngens: usize, len: usize) -> Word {
    let letters: Vec<i64> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=ngens as i64);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::from_signed(&letters)
}

/// A random two-generator one-relator presentation whose relator is
/// cyclically reduced and nontrivial.
pub fn random_deficiency_one<R: Rng>(rng: &mut R) -> GroupPresentation {
    loop {
        let len = rng.gen_range(4..=12);
        let w = random_word(rng, 2, len).cyclically_reduced();
        if w.len() < 2 {
            continue;
        }
        if let Ok(p) = GroupPresentation::with_default_names(2, vec![w]) {
            return p;
        }
    }
}

/// Torsion of the maximal free abelian cover for the given class.
pub fn torsion_for(p: &GroupPresentation, class: &CohomologyClass) -> (TorsionValue, PresentationComplex, Phi) {
    let gamma = AbelianImage::abelianization(p).expect("abelianization");
    let phi = gamma.phi_on_quotient(class).expect("phi on quotient");
    let cx = build_complex(p, &gamma, &phi).expect("complex");
    (tau_of_complex(&cx).expect("torsion"), cx, phi)
}

/// Boundary-shape complex `R^{n-1} -B-> R^n -A-> R` with
/// `A = a (1, u_2, ..., u_n)` and the first row of `B` chosen so `A B = 0`;
/// `B'` is the supplied block.
pub fn boundary_complex(a: LaurentPoly, u: &[LaurentPoly], bp: &Matrix<LaurentPoly>) -> BasedComplex {
    let n = u.len() + 1;
    assert_eq!(bp.rows(), n - 1);
    assert_eq!(bp.cols(), n - 1);
    let nvars = a.nvars();
    let arow = Matrix::from_fn(1, n, |_, j| if j == 0 { a.clone() } else { &a * &u[j - 1] });
    let b = Matrix::from_fn(n, n - 1, |i, j| {
        if i == 0 {
            let mut acc = LaurentPoly::zero(nvars);
            for k in 0..n - 1 {
                acc -= &(&u[k] * bp.get(k, j));
            }
            acc
        } else {
            bp.get(i - 1, j).clone()
        }
    });
    BasedComplex::boundary(arow, b).expect("valid complex")
}

/// Closed-shape complex with `C = c (1, w_2, ..., w_n)^T`.
pub fn closed_complex(a: LaurentPoly, u: &[LaurentPoly], c: LaurentPoly, w: &[LaurentPoly], bp: &Matrix<LaurentPoly>) -> BasedComplex {
    let n = u.len() + 1;
    assert_eq!(w.len(), n - 1);
    let nvars = a.nvars();
    let arow = Matrix::from_fn(1, n, |_, j| if j == 0 { a.clone() } else { &a * &u[j - 1] });
    let ccol = Matrix::from_fn(n, 1, |i, _| if i == 0 { c.clone() } else { &c * &w[i - 1] });
    let b = Matrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => {
            let mut acc = LaurentPoly::zero(nvars);
            for r in 0..n - 1 {
                for s in 0..n - 1 {
                    acc += &(&(&u[r] * &w[s]) * bp.get(r, s));
                }
            }
            acc
        }
        (0, j) => {
            let mut acc = LaurentPoly::zero(nvars);
            for r in 0..n - 1 {
                acc -= &(&u[r] * bp.get(r, j - 1));
            }
            acc
        }
        (i, 0) => {
            let mut acc = LaurentPoly::zero(nvars);
            for s in 0..n - 1 {
                acc -= &(&w[s] * bp.get(i - 1, s));
            }
            acc
        }
        (i, j) => bp.get(i - 1, j - 1).clone(),
    });
    BasedComplex::closed(arow, b, ccol).expect("valid complex")
}

/// Abelianized Fox derivative with every generator sent to `t`, computed by
/// summing `±t^prefix` over occurrences of the generator.
pub fn abelian_fox_by_prefix(letters: &[i64], gen: i64) -> LaurentPoly {
    let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
    let mut prefix = 0;
    for &l in letters {
        if l == gen {
            *coeffs.entry(prefix).or_default() += 1;
        } else if l == -gen {
            *coeffs.entry(prefix - 1).or_default() -= 1;
        }
        prefix += l.signum();
    }
    let terms: Vec<(i64, i64)> = coeffs.into_iter().collect();
    t(&terms)
}

/// Determinant by Laplace expansion along the first row.
pub fn laplace_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return t(&[(0, 1)]);
    }
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero(nvars);
    for j in 0..n {
        let minor: Vec<Vec<LaurentPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &laplace_det(&minor);
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

fn mat_mul_rows(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = LaurentPoly::zero(1);
                    for k in 0..n {
                        acc += &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Reduced Burau matrix of `sigma_i^{±1}` on `n` strands.
fn burau_generator(n: usize, letter: i64) -> Vec<Vec<LaurentPoly>> {
    let d = n - 1;
    let i = letter.unsigned_abs() as usize - 1;
    let mut m: Vec<Vec<LaurentPoly>> =
        (0..d).map(|r| (0..d).map(|c| if r == c { t(&[(0, 1)]) } else { LaurentPoly::zero(1) }).collect()).collect();
    let inverse = letter < 0;
    // row i holds (t, -t, 1) around the diagonal, or (1, -1/t, 1/t) for the inverse
    let (left, mid, right) =
        if inverse { (t(&[(0, 1)]), t(&[(-1, -1)]), t(&[(-1, 1)])) } else { (t(&[(1, 1)]), t(&[(1, -1)]), t(&[(0, 1)])) };
    if i > 0 {
        m[i][i - 1] = left;
    }
    m[i][i] = mid;
    if i + 1 < d {
        m[i][i + 1] = right;
    }
    m
}

/// Alexander polynomial of the closure of a braid whose closure is a knot,
/// from `det(I - psi(beta)) = Delta (1 + t + ... + t^{n-1})`.
pub fn burau_alexander(braid: &[i64]) -> LaurentPoly {
    let n = braid.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1;
    if n == 1 {
        return t(&[(0, 1)]);
    }
    let d = n - 1;
    let mut m: Vec<Vec<LaurentPoly>> =
        (0..d).map(|r| (0..d).map(|c| if r == c { t(&[(0, 1)]) } else { LaurentPoly::zero(1) }).collect()).collect();
    for &l in braid {
        m = mat_mul_rows(&m, &burau_generator(n, l));
    }
    let i_minus: Vec<Vec<LaurentPoly>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| row.iter().enumerate().map(|(c, p)| if r == c { &t(&[(0, 1)]) - p } else { -p }).collect())
        .collect();
    let det = laplace_det(&i_minus);
    let geometric: Vec<(i64, i64)> = (0..n as i64).map(|k| (k, 1)).collect();
    det.exact_div(&t(&geometric)).expect("divisible by 1 + ... + t^{n-1}")
}

/// Hand-derived Fox data for the two-bridge knot presentations
/// `<a, b | a w b^-1 w^-1>`: relator letters and the abelianized derivative
/// with respect to `a`.
pub struct KnotFixture {
    pub name: &'static str,
    pub relator: &'static str,
    pub letters: &'static [i64],
    /// `d r / d a` under `a, b -> t`, as `(exponent, coefficient)`.
    pub fox_a: &'static [(i64, i64)],
    pub alexander: &'static [(i64, i64)],
    pub monic: bool,
}

pub const KNOTS: [KnotFixture; 3] = [
    KnotFixture {
        name: "trefoil",
        relator: "abaBAB",
        letters: &[1, 2, 1, -2, -1, -2],
        fox_a: &[(0, 1), (1, -1), (2, 1)],
        alexander: &[(0, 1), (1, -1), (2, 1)],
        monic: true,
    },
    KnotFixture {
        name: "figure-eight",
        relator: "abABaBAbaB",
        letters: &[1, 2, -1, -2, 1, -2, -1, 2, 1, -2],
        fox_a: &[(-1, -1), (0, 3), (1, -1)],
        alexander: &[(0, 1), (1, -3), (2, 1)],
        monic: true,
    },
    KnotFixture {
        name: "five-two",
        relator: "abaBAbaBABabAB",
        letters: &[1, 2, 1, -2, -1, 2, 1, -2, -1, -2, 1, 2, -1, -2],
        fox_a: &[(0, 2), (1, -3), (2, 2)],
        alexander: &[(0, 2), (1, -3), (2, 2)],
        monic: false,
    },
];
