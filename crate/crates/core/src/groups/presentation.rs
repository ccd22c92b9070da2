use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{GroupError, Word};
use crate::linalg::{integer_kernel, smith_invariants};
use crate::matrix::Matrix;

/// A finite presentation `<x_1, ..., x_n | r_1, ..., r_m>`.
///
/// Relators are stored freely and cyclically reduced; trivial relators are
/// dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(GroupError::UnknownGenerator(g));
                }
            }
        }
        let relators = relators.iter().map(Word::cyclically_reduced).filter(|r| !r.is_empty()).collect();
        Ok(GroupPresentation { generators, relators })
    }

    /// Generators named `a`, `b`, `c`, ... (then `g26`, `g27`, ...).
    pub fn with_default_names(ngens: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        Self::new(default_generator_names(ngens), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// Relators by generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> Matrix<BigInt> {
        let n = self.num_generators();
        if self.relators.is_empty() || n == 0 {
            return Matrix::empty(self.relators.len(), n);
        }
        Matrix::from_fn(self.relators.len(), n, |i, j| BigInt::from(self.relators[i].exponent_sum(j)))
    }

    /// Free rank and torsion coefficients of the abelianization.
    pub fn abelianization(&self) -> Abelianization {
        let inv = smith_invariants(&self.exponent_matrix());
        let rank = self.num_generators() - inv.len();
        let torsion = inv.into_iter().filter(|d| !d.is_one()).collect();
        Abelianization { rank, torsion }
    }

    /// Integral basis of `Hom(G, Z)` in Hermite form, each vector giving the
    /// values on the generators.
    pub fn integral_cohomology_basis(&self) -> Vec<Vec<BigInt>> {
        let m = self.exponent_matrix();
        if m.rows() == 0 {
            return (0..self.num_generators())
                .map(|i| (0..self.num_generators()).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect();
        }
        integer_kernel(&m)
    }

    /// Classes induced by the abelianization: the primitive generator when
    /// `Hom(G, Z)` has rank one (positive on the first generator it does not
    /// vanish on), otherwise a basis.
    pub fn induced_phi(&self) -> Result<Vec<CohomologyClass>, GroupError> {
        let mut basis = self.integral_cohomology_basis();
        if basis.is_empty() {
            return Err(GroupError::NoFreeQuotient);
        }
        if basis.len() == 1 {
            let v = &mut basis[0];
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
        }
        Ok(basis.into_iter().map(|v| CohomologyClass { values: v.into_iter().map(BigRational::from_integer).collect() }).collect())
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.to_string_with(&self.generators)
    }
}

pub fn default_generator_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("g{i}") }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    /// Torsion coefficients greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

/// A class `phi in Hom(G, Q)` given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    values: Vec<BigRational>,
}

impl CohomologyClass {
    /// Validates that `values` vanish on every relator.
    pub fn new(p: &GroupPresentation, values: Vec<BigRational>) -> Result<Self, GroupError> {
        if values.len() != p.num_generators() {
            return Err(GroupError::DimensionMismatch { expected: p.num_generators(), found: values.len() });
        }
        let c = CohomologyClass { values };
        for (i, r) in p.relators().iter().enumerate() {
            if !c.evaluate(r).is_zero() {
                return Err(GroupError::PhiNotHomomorphism { relator: i });
            }
        }
        Ok(c)
    }

    pub fn from_integers(p: &GroupPresentation, values: &[i64]) -> Result<Self, GroupError> {
        Self::new(p, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn evaluate(&self, w: &Word) -> BigRational {
        w.syllables().iter().map(|&(g, e)| &self.values[g] * BigRational::from_integer(e.into())).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// All values integral with gcd one.
    pub fn is_primitive(&self) -> bool {
        self.values.iter().all(|v| v.is_integer()) && self.values.iter().fold(BigInt::zero(), |g, v| g.gcd(v.numer())).is_one()
    }

    /// The primitive integral class on the same ray, and the positive factor
    /// `s` with `primitive = s * self`. `None` for the zero class.
    pub fn to_primitive_integral(&self) -> Option<(Vec<i64>, BigRational)> {
        if self.is_zero() {
            return None;
        }
        let lcm = self.values.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let ints: Vec<BigInt> = self.values.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let prim: Option<Vec<i64>> = ints.iter().map(|v| (v / &g).to_i64()).collect();
        Some((prim?, BigRational::new(lcm, g)))
    }
}
