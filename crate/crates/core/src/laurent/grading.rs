//! Gradings of `Z[Z^n]` by a rational covector, degrees and monicness.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{LaurentError, LaurentPoly};

/// A rational covector `phi: Z^n -> Q`.
///
/// Levels are compared through the integer vector `scaled = denom * phi`, so
/// all slice computations stay in exact integer arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phi {
    values: Vec<BigRational>,
    scaled: Vec<i128>,
    denom: i128,
}

impl Phi {
    /// Panics if a scaled coordinate does not fit in `i128`.
    pub fn new(values: Vec<BigRational>) -> Self {
        let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scaled = values.iter().map(|v| (v.numer() * (&denom / v.denom())).to_i128().expect("grading too large")).collect();
        Phi { values, scaled, denom: denom.to_i128().expect("grading too large") }
    }

    pub fn integral(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// `phi(t) = 1` on the single variable `t`.
    pub fn standard() -> Self {
        Self::integral(&[1])
    }

    pub fn nvars(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.scaled.iter().all(|&v| v == 0)
    }

    pub fn negate(&self) -> Self {
        Phi { values: self.values.iter().map(|v| -v).collect(), scaled: self.scaled.iter().map(|v| -v).collect(), denom: self.denom }
    }

    /// Common denominator of the values.
    pub fn denom(&self) -> i128 {
        self.denom
    }

    /// `denom * phi(e)`.
    pub fn scaled_level(&self, e: &[i64]) -> i128 {
        e.iter().zip(&self.scaled).map(|(&a, &b)| a as i128 * b).sum()
    }

    pub fn level(&self, e: &[i64]) -> BigRational {
        BigRational::new(self.scaled_level(e).into(), self.denom.into())
    }

    /// Converts a scaled level back to a rational.
    pub fn unscale(&self, scaled: i128) -> BigRational {
        BigRational::new(scaled.into(), self.denom.into())
    }

    pub fn min_level(&self, p: &LaurentPoly) -> Option<i128> {
        p.terms().map(|(e, _)| self.scaled_level(e)).min()
    }

    pub fn max_level(&self, p: &LaurentPoly) -> Option<i128> {
        p.terms().map(|(e, _)| self.scaled_level(e)).max()
    }

    /// Terms of `p` whose scaled level equals `level`.
    pub fn slice(&self, p: &LaurentPoly, level: i128) -> LaurentPoly {
        LaurentPoly::from_terms(p.nvars(), p.terms().filter(|(e, _)| self.scaled_level(e) == level).map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Terms of `p` whose scaled level lies in `[lo, hi)`.
    pub fn window(&self, p: &LaurentPoly, lo: i128, hi: Option<i128>) -> LaurentPoly {
        LaurentPoly::from_terms(
            p.nvars(),
            p.terms()
                .filter(|(e, _)| {
                    let l = self.scaled_level(e);
                    l >= lo && hi.is_none_or(|h| l < h)
                })
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Smallest positive scaled level attained by an integer vector, i.e. the
    /// gcd of the scaled coordinates.
    pub fn level_step(&self) -> i128 {
        self.scaled.iter().fold(0i128, |g, &v| g.gcd(&v)).max(1)
    }
}

/// A degree value: either `-inf` (for zero) or a rational number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(BigRational),
}

impl Degree {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    pub fn from_int(d: i64) -> Self {
        Degree::Finite(BigRational::from_integer(d.into()))
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl Sub for Degree {
    type Output = Degree;

    /// Degree of a quotient; `-inf - x = -inf`, and `x - (-inf)` is not a
    /// meaningful degree so it panics.
    fn sub(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a - b),
            (Degree::NegInfinity, _) => Degree::NegInfinity,
            (_, Degree::NegInfinity) => panic!("degree of a zero denominator"),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `max phi(g) - min phi(h)` over the support of `p`.
pub fn deg_phi(p: &LaurentPoly, phi: &Phi) -> Degree {
    match (phi.min_level(p), phi.max_level(p)) {
        (Some(lo), Some(hi)) => Degree::Finite(phi.unscale(hi - lo)),
        _ => Degree::NegInfinity,
    }
}

/// Degree of a fraction: `deg(num) - deg(den)`.
pub fn deg_phi_fraction(f: &super::FractionElement, phi: &Phi) -> Degree {
    deg_phi(f.numerator(), phi) - deg_phi(f.denominator(), phi)
}

fn slice_is_unit(p: &LaurentPoly, phi: &Phi, level: Option<i128>) -> Result<bool, LaurentError> {
    let level = level.ok_or(LaurentError::ZeroPolynomial)?;
    Ok(phi.slice(p, level).is_unit())
}

/// The highest-level slice of `p` is `±` a monomial.
pub fn is_top_monic(p: &LaurentPoly, phi: &Phi) -> Result<bool, LaurentError> {
    slice_is_unit(p, phi, phi.max_level(p))
}

/// The lowest-level slice of `p` is `±` a monomial.
pub fn is_bottom_monic(p: &LaurentPoly, phi: &Phi) -> Result<bool, LaurentError> {
    slice_is_unit(p, phi, phi.min_level(p))
}

/// Both extreme slices of `p` are units.
pub fn is_monic(p: &LaurentPoly, phi: &Phi) -> Result<bool, LaurentError> {
    Ok(is_top_monic(p, phi)? && is_bottom_monic(p, phi)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let phi = Phi::standard();
        assert_eq!(deg_phi(&LaurentPoly::zero(1), &phi), Degree::NegInfinity);
        assert_eq!(deg_phi(&LaurentPoly::univariate(&[(0, 1), (1, -1), (2, 1)]), &phi), Degree::from_int(2));
        let uv = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![1, 1], 1)]);
        assert_eq!(deg_phi(&uv, &Phi::integral(&[1, 2])), Degree::from_int(3));
    }

    #[test]
    fn rational_grading_levels() {
        let phi = Phi::new(vec![BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())]);
        assert_eq!(phi.denom(), 6);
        assert_eq!(phi.level(&[1, 1]), BigRational::new(5.into(), 6.into()));
        assert_eq!(phi.level_step(), 1);
    }

    #[test]
    fn monicness() {
        let phi = Phi::standard();
        let fig8 = LaurentPoly::univariate(&[(0, 1), (1, -3), (2, 1)]);
        let five2 = LaurentPoly::univariate(&[(0, 2), (1, -3), (2, 2)]);
        let two_minus_t = LaurentPoly::univariate(&[(0, 2), (1, -1)]);
        assert!(is_monic(&fig8, &phi).unwrap());
        assert!(!is_monic(&five2, &phi).unwrap());
        assert!(!is_top_monic(&five2, &phi).unwrap());
        assert!(is_top_monic(&two_minus_t, &phi).unwrap());
        assert!(!is_monic(&two_minus_t, &phi).unwrap());
        assert_eq!(is_monic(&LaurentPoly::zero(1), &phi), Err(LaurentError::ZeroPolynomial));
    }
}
