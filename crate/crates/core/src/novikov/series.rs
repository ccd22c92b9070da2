use std::fmt;

use crate::laurent::{LaurentPoly, Phi};
use crate::matrix::Matrix;

/// Which Novikov completion: supports bounded below in `phi` (`Plus`) or in
/// `-phi` (`Minus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    /// The grading whose levels must be bounded below.
    pub fn effective(self, phi: &Phi) -> Phi {
        match self {
            Direction::Plus => phi.clone(),
            Direction::Minus => phi.negate(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Plus => "+",
            Direction::Minus => "-",
        }
    }
}

/// A truncated element of a Novikov completion of `Z[Z^n]`.
///
/// `poly` holds every term of scaled level below `horizon`; terms at or above
/// the horizon are unknown. A `None` horizon means the element is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct NovikovSeries {
    poly: LaurentPoly,
    phi: Phi,
    horizon: Option<i128>,
}

impl NovikovSeries {
    pub fn new(poly: LaurentPoly, phi: Phi, horizon: Option<i128>) -> Self {
        let poly = match horizon {
            Some(h) => {
                let lo = phi.min_level(&poly).unwrap_or(h);
                phi.window(&poly, lo, Some(h))
            }
            None => poly,
        };
        NovikovSeries { poly, phi, horizon }
    }

    pub fn exact(poly: LaurentPoly, phi: &Phi) -> Self {
        NovikovSeries { poly, phi: phi.clone(), horizon: None }
    }

    pub fn zero(phi: &Phi, horizon: Option<i128>) -> Self {
        Self::new(LaurentPoly::zero(phi.nvars()), phi.clone(), horizon)
    }

    pub fn one(phi: &Phi) -> Self {
        Self::exact(LaurentPoly::one(phi.nvars()), phi)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn phi(&self) -> &Phi {
        &self.phi
    }

    /// Scaled level of the precision bound, `None` if exact.
    pub fn horizon(&self) -> Option<i128> {
        self.horizon
    }

    pub fn level_min(&self) -> Option<i128> {
        self.phi.min_level(&self.poly)
    }

    /// Known to be zero up to the horizon.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lowest level where the element may be nonzero: the lowest stored
    /// level, or the horizon for a truncated zero.
    fn effective_min(&self) -> Option<i128> {
        self.level_min().or(self.horizon)
    }

    pub fn truncate(&self, horizon: i128) -> Self {
        let h = self.horizon.map_or(horizon, |x| x.min(horizon));
        Self::new(self.poly.clone(), self.phi.clone(), Some(h))
    }

    pub fn add(&self, other: &Self) -> Self {
        let h = min_opt(self.horizon, other.horizon);
        Self::new(&self.poly + &other.poly, self.phi.clone(), h)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NovikovSeries { poly: -&self.poly, phi: self.phi.clone(), horizon: self.horizon }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut h = None;
        if let (Some(ha), Some(mb)) = (self.horizon, other.effective_min()) {
            h = min_opt(h, Some(ha + mb));
        }
        if let (Some(hb), Some(ma)) = (other.horizon, self.effective_min()) {
            h = min_opt(h, Some(hb + ma));
        }
        // skip products that land above the horizon
        let product = match h {
            Some(limit) => {
                let mut out = LaurentPoly::zero(self.poly.nvars());
                let lb: Vec<(i128, &Vec<i64>, _)> = other.poly.terms().map(|(e, c)| (self.phi.scaled_level(e), e, c)).collect();
                for (ea, ca) in self.poly.terms() {
                    let la = self.phi.scaled_level(ea);
                    for &(lb, eb, cb) in &lb {
                        if la + lb < limit {
                            out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
                        }
                    }
                }
                out
            }
            None => &self.poly * &other.poly,
        };
        Self::new(product, self.phi.clone(), h)
    }

    /// Equality of all coefficients below both horizons.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let body = self.poly.to_string_with(names);
        match self.horizon {
            Some(h) => format!("{body} + O(level >= {})", self.phi.unscale(h)),
            None => body,
        }
    }
}

fn min_opt(a: Option<i128>, b: Option<i128>) -> Option<i128> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::laurent::default_names(self.poly.nvars());
        f.write_str(&self.to_string_with(&names))
    }
}

impl fmt::Debug for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NovikovSeries({self})")
    }
}

pub fn series_matrix_mul(a: &Matrix<NovikovSeries>, b: &Matrix<NovikovSeries>, phi: &Phi) -> Matrix<NovikovSeries> {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = NovikovSeries::exact(LaurentPoly::zero(phi.nvars()), phi);
        for k in 0..a.cols() {
            acc = acc.add(&a.get(i, k).mul(b.get(k, j)));
        }
        acc
    })
}

pub fn exact_matrix(m: &Matrix<LaurentPoly>, phi: &Phi) -> Matrix<NovikovSeries> {
    m.map(|p| NovikovSeries::exact(p.clone(), phi))
}

/// Every entry agrees with the identity matrix up to its horizon.
pub fn is_identity_to_precision(m: &Matrix<NovikovSeries>) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            let e = m.get(i, j);
            let target = if i == j { LaurentPoly::one(e.poly().nvars()) } else { LaurentPoly::zero(e.poly().nvars()) };
            e.agrees_with(&NovikovSeries::exact(target, e.phi()))
        })
    })
}
