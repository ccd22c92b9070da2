//! The fraction field of `Z[Z^n]` and torsion values up to units.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{gcd, is_monic, LaurentError, LaurentPoly, Phi};

/// A reduced fraction `num / den`.
///
/// The gcd of numerator and denominator is removed and the denominator is
/// brought to canonical form, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionElement {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FractionElement {
    /// Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        if num.is_zero() {
            return FractionElement { num, den: LaurentPoly::one(den.nvars()) };
        }
        let g = gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let (sign, shift, den) = den.unit_normalize();
        let neg: Vec<i64> = shift.iter().map(|x| -x).collect();
        let num = num.shift(&neg).scale(&sign);
        FractionElement { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        FractionElement { num: p, den: LaurentPoly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(FractionElement::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &FractionElement) -> Option<Self> {
        Some(self * &other.inverse()?)
    }

    /// The element as a Laurent polynomial, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }
}

impl Add for &FractionElement {
    type Output = FractionElement;

    fn add(self, rhs: &FractionElement) -> FractionElement {
        if self.den == rhs.den {
            return FractionElement::new(&self.num + &rhs.num, self.den.clone());
        }
        FractionElement::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &FractionElement {
    type Output = FractionElement;

    fn sub(self, rhs: &FractionElement) -> FractionElement {
        self + &(-rhs)
    }
}

impl Mul for &FractionElement {
    type Output = FractionElement;

    fn mul(self, rhs: &FractionElement) -> FractionElement {
        FractionElement::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &FractionElement {
    type Output = FractionElement;

    fn neg(self) -> FractionElement {
        FractionElement { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Debug for FractionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FractionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A fraction that is `monic`: its reduced numerator and denominator both
/// have unit extreme slices.
pub fn monic_fraction(f: &FractionElement, phi: &Phi) -> Result<bool, LaurentError> {
    if f.is_zero() {
        return Err(LaurentError::ZeroValue);
    }
    Ok(is_monic(f.numerator(), phi)? && is_monic(f.denominator(), phi)?)
}

/// A torsion value: zero, or a nonzero fraction known only up to
/// multiplication by `±` monomials.
///
/// Both numerator and denominator are stored in canonical form, so derived
/// equality is equality modulo units.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TorsionValue {
    Zero,
    Value(FractionElement),
}

impl TorsionValue {
    pub fn from_fraction(f: FractionElement) -> Self {
        if f.is_zero() {
            return TorsionValue::Zero;
        }
        let num = f.num.canonical();
        TorsionValue::Value(FractionElement { num, den: f.den })
    }

    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self::from_fraction(FractionElement::new(num, den))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TorsionValue::Zero)
    }

    pub fn fraction(&self) -> Option<&FractionElement> {
        match self {
            TorsionValue::Zero => None,
            TorsionValue::Value(f) => Some(f),
        }
    }
}

impl fmt::Debug for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionValue::Zero => write!(f, "0"),
            TorsionValue::Value(v) => write!(f, "{v}"),
        }
    }
}
