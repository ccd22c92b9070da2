//! Exact multivariable Laurent polynomials over the integers.
//!
//! Elements of `Z[Z^n]` are stored as sparse maps from exponent vectors to
//! nonzero big-integer coefficients. Gradings by a rational covector, the
//! fraction field, determinants and the monicness predicates live in the
//! submodules.

mod determinant;
mod format;
mod fraction;
mod gcd;
mod grading;

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use determinant::{determinant, determinant_cofactor};
pub use format::default_names;
pub use fraction::{monic_fraction, FractionElement, TorsionValue};
pub use gcd::gcd;
pub use grading::{deg_phi, deg_phi_fraction, is_bottom_monic, is_monic, is_top_monic, Degree, Phi};

/// Exponent vector of a monomial in `Z^n`.
pub type Exponent = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("zero polynomial has no extreme coefficients")]
    ZeroPolynomial,
    #[error("zero value")]
    ZeroValue,
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let nvars = exp.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `x_i` in `n` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn from_terms<C: Into<BigInt>>(nvars: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c.into());
        }
        p
    }

    /// One-variable polynomial from `(exponent, coefficient)` pairs.
    pub fn univariate(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(1, terms.iter().map(|&(e, c)| (vec![e], c)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponent, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `±x^e` for a single term with unit coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Lexicographically largest term.
    pub fn leading_lex(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing_lex(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next()
    }

    /// Componentwise minimum and maximum of the support.
    pub fn bounding_box(&self) -> Option<(Exponent, Exponent)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for e in it {
            for k in 0..self.nvars {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        Some((lo, hi))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Greatest common divisor of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    debug_assert!((x % c).is_zero());
                    (e.clone(), x / c)
                })
                .collect(),
        }
    }

    /// Applies a monoid map on exponents, merging coefficients that collide.
    pub fn map_exponents(&self, nvars_out: usize, f: impl Fn(&[i64]) -> Exponent) -> Self {
        let mut out = Self::zero(nvars_out);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Substitutes `t -> t^-1` in every variable.
    pub fn invert_variables(&self) -> Self {
        self.map_exponents(self.nvars, |e| e.iter().map(|x| -x).collect())
    }

    /// Evaluates at a point with nonzero rational coordinates.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                term *= pow_rational(x, k);
            }
            total += term;
        }
        total
    }

    /// Exact division in `Z[Z^n]`; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (lead_e, lead_c) = d.leading_lex().map(|(e, c)| (e.clone(), c.clone()))?;
        // Degrees in each variable are additive in a domain, which boxes the
        // support of any exact quotient.
        let (plo, phi) = self.bounding_box()?;
        let (dlo, dhi) = d.bounding_box()?;
        let qlo: Exponent = plo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let qhi: Exponent = phi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_lex().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exponent = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(qlo.iter().zip(&qhi)).any(|(x, (lo, hi))| x < lo || x > hi) {
                return None;
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let step = LaurentPoly::monomial(qe.clone(), qc.clone());
            rem -= &(&step * d);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Splits `self = u * p` with `u = ±x^e` a unit and `p` canonical: the
    /// componentwise minimum exponent of `p` is zero and its lexicographically
    /// smallest coefficient is positive.
    pub fn unit_normalize(&self) -> (BigInt, Exponent, LaurentPoly) {
        let Some((lo, _)) = self.bounding_box() else {
            return (BigInt::one(), vec![0; self.nvars], self.clone());
        };
        let neg: Exponent = lo.iter().map(|x| -x).collect();
        let mut p = self.shift(&neg);
        let sign = if p.trailing_lex().is_some_and(|(_, c)| c.is_negative()) {
            p = -p;
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        (sign, lo, p)
    }

    /// Canonical representative of the class of `self` modulo `±` monomials.
    pub fn canonical(&self) -> LaurentPoly {
        self.unit_normalize().2
    }

    /// Equality up to multiplication by `±x^e`.
    pub fn associated(&self, other: &LaurentPoly) -> bool {
        self.canonical() == other.canonical()
    }

    /// Dense coefficient list of a one-variable polynomial from its lowest
    /// exponent upwards, together with that exponent.
    pub fn univariate_coeffs(&self) -> (i64, Vec<BigInt>) {
        assert_eq!(self.nvars, 1);
        let Some((lo, hi)) = self.bounding_box() else { return (0, Vec::new()) };
        let mut v = vec![BigInt::zero(); (hi[0] - lo[0] + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo[0]) as usize] = c.clone();
        }
        (lo[0], v)
    }
}

fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut n = k.unsigned_abs();
    let mut acc = BigRational::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
