use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::groups::{fox_jacobian_in, CohomologyClass, GroupPresentation, GroupRingMap};
use crate::laurent::{default_names, determinant, Exponent, LaurentPoly, Phi, TorsionValue};
use crate::matrix::Matrix;
use crate::novikov::{mat_mul, BasedComplex};

use super::TorsionError;

/// A homomorphism from a presented group onto `Z^n`, given by the images of
/// the generators; evaluates the free group ring into `Z[Z^n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianImage {
    nvars: usize,
    images: Vec<Exponent>,
}

impl AbelianImage {
    /// Checks that every relator maps to zero.
    pub fn new(p: &GroupPresentation, nvars: usize, images: Vec<Exponent>) -> Result<Self, TorsionError> {
        if images.len() != p.num_generators() || images.iter().any(|e| e.len() != nvars) {
            return Err(TorsionError::BadShape("one image per generator, each of length nvars".into()));
        }
        let map = AbelianImage { nvars, images };
        for (i, r) in p.relators().iter().enumerate() {
            if map.image_of(r.syllables()).iter().any(|&x| x != 0) {
                return Err(TorsionError::RelatorNotTrivial { relator: i });
            }
        }
        Ok(map)
    }

    /// The maximal free abelian quotient `G -> H_1(G)/torsion`, coordinates
    /// given by an integral basis of `Hom(G, Z)`.
    pub fn abelianization(p: &GroupPresentation) -> Result<Self, TorsionError> {
        let classes = p.induced_phi()?;
        let nvars = classes.len();
        let images = (0..p.num_generators())
            .map(|j| {
                classes
                    .iter()
                    .map(|c| {
                        let v = &c.values()[j];
                        i64::try_from(v.to_integer()).map_err(|_| TorsionError::BadShape("image exponent overflows".into()))
                    })
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(p, nvars, images)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn images(&self) -> &[Exponent] {
        &self.images
    }

    pub fn image_of(&self, syllables: &[(usize, i64)]) -> Exponent {
        let mut out = vec![0; self.nvars];
        for &(g, e) in syllables {
            for (o, x) in out.iter_mut().zip(&self.images[g]) {
                *o += e * x;
            }
        }
        out
    }

    /// The grading on `Z^n` through which `class` factors.
    pub fn phi_on_quotient(&self, class: &CohomologyClass) -> Result<Phi, TorsionError> {
        let m = self.images.len();
        let n = self.nvars;
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        // Solve the normal equations M^T M c = M^T v, then confirm M c = v.
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|a| {
                let mut row: Vec<BigRational> = (0..n).map(|b| (0..m).map(|j| q(self.images[j][a] * self.images[j][b])).sum()).collect();
                row.push((0..m).map(|j| q(self.images[j][a]) * &class.values()[j]).sum());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = BigRational::one() / &rows[r][col];
            rows[r].iter_mut().for_each(|x| *x = &*x * &inv);
            for i in 0..n {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for k in col..=n {
                        let v = &f * &rows[r][k];
                        rows[i][k] -= v;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let mut c = vec![BigRational::zero(); n];
        for (i, &col) in pivots.iter().enumerate() {
            c[col] = rows[i][n].clone();
        }
        for j in 0..m {
            let val: BigRational = (0..n).map(|a| q(self.images[j][a]) * &c[a]).sum();
            if val != class.values()[j] {
                return Err(TorsionError::PhiNotOnQuotient);
            }
        }
        Ok(Phi::new(c))
    }
}

impl GroupRingMap for AbelianImage {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.nvars)
    }

    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.nvars)
    }

    fn letter(&self, g: usize, inverse: bool) -> LaurentPoly {
        let e = if inverse { self.images[g].iter().map(|x| -x).collect() } else { self.images[g].clone() };
        LaurentPoly::monomial(e, BigInt::one())
    }

    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }

    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }

    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }

    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
}

/// Cellular chain complex of a presentation 2-complex (or an explicit
/// closed-shape complex) over `Z[Z^n]`.
///
/// `d2` is the Fox Jacobian, rows indexed by relators and columns by
/// generators; `d1` is the row `(1 - x_j)`. The corresponding based complex
/// in column convention has `A = d1` and `B = d2^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationComplex {
    pub d1: Matrix<LaurentPoly>,
    pub d2: Matrix<LaurentPoly>,
    /// `n x 1` top differential, present only for closed-shape complexes.
    pub d3: Option<Matrix<LaurentPoly>>,
    /// Original generator index of each column, after rotation.
    pub generator_order: Vec<usize>,
    pub nvars: usize,
}

impl PresentationComplex {
    /// A closed-shape complex given in column convention (`A B = 0`,
    /// `B C = 0`).
    pub fn closed(a: Matrix<LaurentPoly>, b: Matrix<LaurentPoly>, c: Matrix<LaurentPoly>) -> Result<Self, TorsionError> {
        let based = BasedComplex::closed(a, b, c)?;
        let nvars = based.corner_a().nvars();
        Ok(PresentationComplex { generator_order: (0..based.n()).collect(), d1: based.a, d2: based.b.transpose(), d3: based.c, nvars })
    }

    /// A boundary-shape complex given in column convention.
    pub fn boundary(a: Matrix<LaurentPoly>, b: Matrix<LaurentPoly>) -> Result<Self, TorsionError> {
        let based = BasedComplex::boundary(a, b)?;
        let nvars = based.corner_a().nvars();
        Ok(PresentationComplex { generator_order: (0..based.n()).collect(), d1: based.a, d2: based.b.transpose(), d3: None, nvars })
    }

    pub fn is_closed(&self) -> bool {
        self.d3.is_some()
    }

    pub fn variable_names(&self) -> Vec<String> {
        default_names(self.nvars)
    }

    /// The complex in the column convention used by the acyclicity test.
    pub fn to_based(&self) -> Result<BasedComplex, TorsionError> {
        let b = self.d2.transpose();
        let b = if b.rows() == 0 { Matrix::empty(self.d1.cols(), b.cols()) } else { b };
        Ok(match &self.d3 {
            Some(c) => BasedComplex::closed(self.d1.clone(), b, c.clone())?,
            None => BasedComplex::boundary(self.d1.clone(), b)?,
        })
    }
}

/// Fox Jacobian of `p` pushed through `gamma`, generators rotated so that the
/// first one has nonzero `phi`.
pub fn build_complex(p: &GroupPresentation, gamma: &AbelianImage, phi: &Phi) -> Result<PresentationComplex, TorsionError> {
    let m = p.num_generators();
    let k = (0..m).find(|&j| phi.scaled_level(&gamma.images[j]) != 0).ok_or(TorsionError::NoPhiNonzeroGenerator)?;
    let order: Vec<usize> = (0..m).map(|i| (i + k) % m).collect();
    let jac = fox_jacobian_in(gamma, p.relators(), m);
    let d2 = Matrix::from_fn(p.num_relators(), m, |i, j| jac.get(i, order[j]).clone());
    let d1 = Matrix::from_fn(1, m, |_, j| &LaurentPoly::one(gamma.nvars) - &gamma.letter(order[j], false));
    if d2.rows() > 0 && !mat_mul(&d1, &d2.transpose()).iter().all(LaurentPoly::is_zero) {
        return Err(TorsionError::BadShape("d1 d2 is not zero".into()));
    }
    Ok(PresentationComplex { d1, d2, d3: None, generator_order: order, nvars: gamma.nvars })
}

/// `det B' / a` (boundary shape) or `det B' / (a c)` (closed shape), zero
/// when `B'` is singular.
pub fn tau_of_complex(c: &PresentationComplex) -> Result<TorsionValue, TorsionError> {
    let based = c.to_based()?;
    let bp = based.b_prime();
    let det = if bp.rows() == 0 { LaurentPoly::one(c.nvars) } else { determinant(&bp) };
    if det.is_zero() {
        return Ok(TorsionValue::Zero);
    }
    let mut den = based.corner_a().clone();
    if let Some(cc) = based.corner_c() {
        den = &den * cc;
    }
    if den.is_zero() {
        return Err(TorsionError::BadShape("corner entry is zero".into()));
    }
    Ok(TorsionValue::from_parts(det, den))
}

/// `0`, a polynomial, or `(num) / (den)` in the given variable names.
pub fn torsion_string(tau: &TorsionValue, names: &[String]) -> String {
    match tau.fraction() {
        None => "0".into(),
        Some(f) if f.denominator().is_one() => f.numerator().to_string_with(names),
        Some(f) => format!("({}) / ({})", f.numerator().to_string_with(names), f.denominator().to_string_with(names)),
    }
}
