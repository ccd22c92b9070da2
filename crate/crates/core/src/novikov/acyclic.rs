//! Acyclicity of based complexes `0 -> R -C-> R^n -B-> R^n -A-> R -> 0` (or
//! the length-two variant `R^{n-1} -B-> R^n -A-> R`) over a completion of
//! `Z[Z^n]`, reduced to invertibility of the block `B'`.
//!
//! Maps act on column vectors, so `A B = 0` and `B C = 0`.

use crate::laurent::{determinant, FractionElement, LaurentPoly, Phi};
use crate::matrix::Matrix;

use super::invert::{invert_series, laurent_invertible, leading_slice_test, mat_mul, Invertibility};
use super::series::{Direction, NovikovSeries};
use super::NovikovError;

/// A based chain complex over `Z[Z^n]` of one of the two shapes above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedComplex {
    /// `1 x n`.
    pub a: Matrix<LaurentPoly>,
    /// `n x n` (closed shape) or `n x (n-1)` (boundary shape).
    pub b: Matrix<LaurentPoly>,
    /// `n x 1`, present exactly in the closed shape.
    pub c: Option<Matrix<LaurentPoly>>,
}

impl BasedComplex {
    pub fn boundary(a: Matrix<LaurentPoly>, b: Matrix<LaurentPoly>) -> Result<Self, NovikovError> {
        let cx = BasedComplex { a, b, c: None };
        cx.validate()?;
        Ok(cx)
    }

    pub fn closed(a: Matrix<LaurentPoly>, b: Matrix<LaurentPoly>, c: Matrix<LaurentPoly>) -> Result<Self, NovikovError> {
        let cx = BasedComplex { a, b, c: Some(c) };
        cx.validate()?;
        Ok(cx)
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    fn validate(&self) -> Result<(), NovikovError> {
        let n = self.n();
        if self.a.rows() != 1 || n == 0 {
            return Err(NovikovError::BadShape("A must be a nonempty row".into()));
        }
        let want_cols = if self.c.is_some() { n } else { n - 1 };
        if self.b.rows() != n || self.b.cols() != want_cols {
            return Err(NovikovError::BadShape(format!("B is {}x{}, expected {}x{}", self.b.rows(), self.b.cols(), n, want_cols)));
        }
        if let Some(c) = &self.c {
            if c.rows() != n || c.cols() != 1 {
                return Err(NovikovError::BadShape("C must be an n x 1 column".into()));
            }
            if !mat_mul(&self.b, c).iter().all(LaurentPoly::is_zero) {
                return Err(NovikovError::NotAComplex);
            }
        }
        if !mat_mul(&self.a, &self.b).iter().all(LaurentPoly::is_zero) {
            return Err(NovikovError::NotAComplex);
        }
        Ok(())
    }

    /// The block `B'`: `B` without its first row (and first column in the
    /// closed shape).
    pub fn b_prime(&self) -> Matrix<LaurentPoly> {
        let col = self.c.as_ref().map(|_| 0);
        self.b.minor(Some(0), col)
    }

    pub fn corner_a(&self) -> &LaurentPoly {
        self.a.get(0, 0)
    }

    pub fn corner_c(&self) -> Option<&LaurentPoly> {
        self.c.as_ref().map(|c| c.get(0, 0))
    }
}

/// A commutative ring containing `Z[Z^n]` in which the test is carried out.
pub trait CompletionRing {
    type Elem: Clone;

    fn embed(&self, p: &LaurentPoly) -> Self::Elem;
    /// Inverse of an embedded polynomial, if it is a unit of the ring.
    fn unit_inverse(&self, p: &LaurentPoly) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Equality, up to the working precision where that applies.
    fn agrees(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// Whether a square Laurent matrix is invertible over the ring.
    fn matrix_invertible(&self, m: &Matrix<LaurentPoly>) -> Result<bool, NovikovError>;
}

/// The Novikov completion in one direction, with a working horizon for the
/// series that appear in the row and column operations.
#[derive(Clone, Debug)]
pub struct NovikovCompletion {
    pub phi: Phi,
    pub direction: Direction,
    pub horizon: i64,
}

impl CompletionRing for NovikovCompletion {
    type Elem = NovikovSeries;

    fn embed(&self, p: &LaurentPoly) -> NovikovSeries {
        NovikovSeries::exact(p.clone(), &self.direction.effective(&self.phi))
    }

    fn unit_inverse(&self, p: &LaurentPoly) -> Option<NovikovSeries> {
        invert_series(p, &self.phi, self.direction, self.horizon).ok()
    }

    fn add(&self, a: &NovikovSeries, b: &NovikovSeries) -> NovikovSeries {
        a.add(b)
    }

    fn mul(&self, a: &NovikovSeries, b: &NovikovSeries) -> NovikovSeries {
        a.mul(b)
    }

    fn neg(&self, a: &NovikovSeries) -> NovikovSeries {
        a.neg()
    }

    fn agrees(&self, a: &NovikovSeries, b: &NovikovSeries) -> bool {
        a.agrees_with(b)
    }

    /// Over a commutative ring a matrix is invertible iff its determinant is
    /// a unit, so this test is exact and never degenerate.
    fn matrix_invertible(&self, m: &Matrix<LaurentPoly>) -> Result<bool, NovikovError> {
        if m.rows() == 0 {
            return Ok(true);
        }
        let det = determinant(m);
        if det.is_zero() {
            return Ok(false);
        }
        laurent_invertible(&det, &self.phi, self.direction)
    }
}

/// The fraction field `Q(Z^n)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FractionField;

impl CompletionRing for FractionField {
    type Elem = FractionElement;

    fn embed(&self, p: &LaurentPoly) -> FractionElement {
        FractionElement::from_poly(p.clone())
    }

    fn unit_inverse(&self, p: &LaurentPoly) -> Option<FractionElement> {
        FractionElement::from_poly(p.clone()).inverse()
    }

    fn add(&self, a: &FractionElement, b: &FractionElement) -> FractionElement {
        a + b
    }

    fn mul(&self, a: &FractionElement, b: &FractionElement) -> FractionElement {
        a * b
    }

    fn neg(&self, a: &FractionElement) -> FractionElement {
        -a
    }

    fn agrees(&self, a: &FractionElement, b: &FractionElement) -> bool {
        a == b
    }

    fn matrix_invertible(&self, m: &Matrix<LaurentPoly>) -> Result<bool, NovikovError> {
        Ok(m.rows() == 0 || !determinant(m).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub acyclic: bool,
    pub b_prime: Matrix<LaurentPoly>,
    /// `det B'` (one for the empty block).
    pub det_b_prime: LaurentPoly,
}

fn ring_mat_mul<R: CompletionRing>(ring: &R, x: &Matrix<R::Elem>, y: &Matrix<R::Elem>, zero: &R::Elem) -> Matrix<R::Elem> {
    Matrix::from_fn(x.rows(), y.cols(), |i, j| {
        let mut acc = zero.clone();
        for k in 0..x.cols() {
            acc = ring.add(&acc, &ring.mul(x.get(i, k), y.get(k, j)));
        }
        acc
    })
}

/// Decides acyclicity by building the row and column operations `P`, `Q`
/// that clear `C` and `A` against their unit corners, reading off `B'` from
/// `Q^-1 B P`, and testing `B'` for invertibility.
pub fn acyclicity_test<R: CompletionRing>(cx: &BasedComplex, ring: &R) -> Result<AcyclicityReport, NovikovError> {
    let n = cx.n();
    let nvars = cx.corner_a().nvars();
    let zero = ring.embed(&LaurentPoly::zero(nvars));
    let one = ring.embed(&LaurentPoly::one(nvars));
    let ident = |i: usize, j: usize| if i == j { one.clone() } else { zero.clone() };

    let a1_inv = ring.unit_inverse(cx.corner_a()).ok_or_else(|| NovikovError::BadShape("corner of A is not a unit".into()))?;
    // Q: identity with first row (1, -a1^-1 a2, ..., -a1^-1 an); Q^-1 flips the signs.
    let a = cx.a.map(|p| ring.embed(p));
    let q = Matrix::from_fn(n, n, |i, j| if i == 0 && j > 0 { ring.neg(&ring.mul(&a1_inv, a.get(0, j))) } else { ident(i, j) });
    let q_inv = Matrix::from_fn(n, n, |i, j| if i == 0 && j > 0 { ring.mul(&a1_inv, a.get(0, j)) } else { ident(i, j) });
    let aq = ring_mat_mul(ring, &a, &q, &zero);
    let a_corner = a.get(0, 0).clone();
    for j in 0..n {
        let want = if j == 0 { &a_corner } else { &zero };
        if !ring.agrees(aq.get(0, j), want) {
            return Err(NovikovError::BadShape("A Q is not concentrated in its corner".into()));
        }
    }

    let b = cx.b.map(|p| ring.embed(p));
    let mut transformed = ring_mat_mul(ring, &q_inv, &b, &zero);
    if let Some(c_mat) = &cx.c {
        let c1 = c_mat.get(0, 0);
        let c1_inv = ring.unit_inverse(c1).ok_or_else(|| NovikovError::BadShape("corner of C is not a unit".into()))?;
        let c = c_mat.map(|p| ring.embed(p));
        // P: identity with first column (1, c2 c1^-1, ..., cn c1^-1)
        let p = Matrix::from_fn(n, n, |i, j| if j == 0 && i > 0 { ring.mul(c.get(i, 0), &c1_inv) } else { ident(i, j) });
        let p_inv = Matrix::from_fn(n, n, |i, j| if j == 0 && i > 0 { ring.neg(&ring.mul(c.get(i, 0), &c1_inv)) } else { ident(i, j) });
        let pc = ring_mat_mul(ring, &p_inv, &c, &zero);
        let c_corner = c.get(0, 0).clone();
        for i in 0..n {
            let want = if i == 0 { &c_corner } else { &zero };
            if !ring.agrees(pc.get(i, 0), want) {
                return Err(NovikovError::BadShape("P^-1 C is not concentrated in its corner".into()));
            }
        }
        transformed = ring_mat_mul(ring, &transformed, &p, &zero);
    }

    let b_prime = cx.b_prime();
    let col0 = usize::from(cx.c.is_some());
    for i in 0..b_prime.rows() {
        for j in 0..b_prime.cols() {
            let extracted = transformed.get(i + 1, j + col0);
            if !ring.agrees(extracted, &ring.embed(b_prime.get(i, j))) {
                return Err(NovikovError::BadShape("transformed block differs from B'".into()));
            }
        }
    }
    let det_b_prime = if b_prime.rows() == 0 { LaurentPoly::one(nvars) } else { determinant(&b_prime) };
    let acyclic = ring.matrix_invertible(&b_prime)?;
    Ok(AcyclicityReport { acyclic, b_prime, det_b_prime })
}

/// Leading-level verdict on `B'` alone; may be `Degenerate` where the exact
/// determinant test still decides.
pub fn b_prime_leading_test(cx: &BasedComplex, phi: &Phi, direction: Direction) -> Result<Invertibility, NovikovError> {
    leading_slice_test(&cx.b_prime(), phi, direction)
}

/// Rank over the fraction field by Gaussian elimination.
pub fn fraction_rank(m: &Matrix<LaurentPoly>) -> usize {
    let mut rows: Vec<Vec<FractionElement>> =
        m.to_rows().into_iter().map(|r| r.into_iter().map(FractionElement::from_poly).collect()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] * &inv;
            for j in col..m.cols() {
                let v = &f * &rows[rank][j];
                rows[i][j] = &rows[i][j] - &v;
            }
        }
        rank += 1;
    }
    rank
}

/// Exactness over the fraction field checked through ranks of the
/// differentials.
pub fn acyclic_by_rank(cx: &BasedComplex) -> bool {
    let n = cx.n();
    let ra = fraction_rank(&cx.a);
    let rb = fraction_rank(&cx.b);
    match &cx.c {
        Some(c) => fraction_rank(c) == 1 && rb == n - 1 && ra == 1,
        None => rb == n - 1 && ra == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::univariate(terms)
    }

    /// Boundary-shape complex whose `B'` is the 1x1 matrix `bp`, with
    /// `A = (1 - t, 1 - t)` and `B = (-bp, bp)^T`.
    fn complex_with(bp: LaurentPoly) -> BasedComplex {
        let a = Matrix::from_rows(vec![vec![t(&[(0, 1), (1, -1)]), t(&[(0, 1), (1, -1)])]]);
        let b = Matrix::from_rows(vec![vec![-bp.clone()], vec![bp]]);
        BasedComplex::boundary(a, b).unwrap()
    }

    #[test]
    fn novikov_acyclicity_examples() {
        let ring = NovikovCompletion { phi: Phi::standard(), direction: Direction::Plus, horizon: 16 };
        assert!(acyclicity_test(&complex_with(t(&[(0, 1), (1, -1)])), &ring).unwrap().acyclic);
        assert!(!acyclicity_test(&complex_with(t(&[(0, 2), (1, -1)])), &ring).unwrap().acyclic);
        let minus = NovikovCompletion { direction: Direction::Minus, ..ring };
        assert!(acyclicity_test(&complex_with(t(&[(0, 2), (1, -1)])), &minus).unwrap().acyclic);
    }

    #[test]
    fn empty_block_is_acyclic() {
        let a = Matrix::from_rows(vec![vec![t(&[(0, 1), (1, -1)])]]);
        let cx = BasedComplex::boundary(a, Matrix::empty(1, 0)).unwrap();
        let ring = NovikovCompletion { phi: Phi::standard(), direction: Direction::Plus, horizon: 8 };
        let report = acyclicity_test(&cx, &ring).unwrap();
        assert!(report.acyclic);
        assert_eq!(report.b_prime.rows(), 0);
    }

    #[test]
    fn non_unit_corner_is_bad_shape() {
        let a = Matrix::from_rows(vec![vec![t(&[(0, 2), (1, -1)])]]);
        let cx = BasedComplex::boundary(a, Matrix::empty(1, 0)).unwrap();
        let ring = NovikovCompletion { phi: Phi::standard(), direction: Direction::Plus, horizon: 8 };
        assert!(matches!(acyclicity_test(&cx, &ring), Err(NovikovError::BadShape(_))));
    }

    #[test]
    fn fraction_field_rank_agrees() {
        for bp in [t(&[(0, 1), (1, -1)]), t(&[])] {
            let cx = complex_with(bp);
            let report = acyclicity_test(&cx, &FractionField).unwrap();
            assert_eq!(report.acyclic, acyclic_by_rank(&cx));
        }
    }
}
