//! Group rings of torsion-free class-2 nilpotent groups given by polycyclic
//! presentations, with the Heisenberg group as the built-in instance.
//!
//! Elements of the group are normal-form exponent tuples `g_1^{a_1} ...
//! g_r^{a_r}`. The last generators are central, and for non-central `i < j`
//! the rule `g_j g_i = g_i g_j w_ij` holds with `w_ij` a word in the central
//! generators. Under these rules collection has the closed form
//! `a * b = a + b + sum_{i<j} a_j b_i w_ij`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::groups::Word;
use crate::laurent::{Degree, Phi};
use crate::linalg::integer_kernel;
use crate::matrix::Matrix;
use crate::novikov::Invertibility;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("generator index {0} out of range")]
    UnknownGenerator(usize),
    #[error("commutator rule for ({0}, {1}) leaves the central generators")]
    NotCentral(usize, usize),
    #[error("rule given for a pair that is not (non-central i < j)")]
    BadRule,
    #[error("collection rules are not associative on generators {0:?}")]
    NotConfluent([usize; 3]),
    #[error("grading does not vanish on the commutator of generators {0} and {1}")]
    GradingNotHomomorphism(usize, usize),
    #[error("grading has {found} values for {expected} generators")]
    GradingLength { expected: usize, found: usize },
    #[error("kernel of the grading is not abelian; leading-level test needs a further recursion")]
    UnsupportedKernel,
    #[error("zero matrix has no leading level")]
    ZeroMatrix,
    #[error("matrix is not square")]
    NotSquare,
}

/// Polycyclic presentation of a class-2 nilpotent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcGroup {
    names: Vec<String>,
    central_start: usize,
    /// `rules[(i, j)]`: exponent vector of `w_ij` (zero outside the central
    /// coordinates).
    rules: BTreeMap<(usize, usize), Vec<i64>>,
}

impl PcGroup {
    /// `central_start` is the index of the first central generator; `rules`
    /// give `w_ij` for non-central `i < j` (missing pairs commute).
    pub fn new(
        names: Vec<String>,
        central_start: usize,
        rules: impl IntoIterator<Item = ((usize, usize), Vec<i64>)>,
    ) -> Result<Self, PcError> {
        let r = names.len();
        if central_start > r {
            return Err(PcError::UnknownGenerator(central_start));
        }
        let mut map = BTreeMap::new();
        for ((i, j), w) in rules {
            if i >= j || j >= central_start {
                return Err(PcError::BadRule);
            }
            if w.len() != r {
                return Err(PcError::UnknownGenerator(w.len()));
            }
            if w[..central_start].iter().any(|&x| x != 0) {
                return Err(PcError::NotCentral(i, j));
            }
            if w.iter().any(|&x| x != 0) {
                map.insert((i, j), w);
            }
        }
        let g = PcGroup { names, central_start, rules: map };
        g.check_confluence()?;
        Ok(g)
    }

    /// `<x, y, z | z central, y x = x y z^-1>`, so that `z = x^-1 y^-1 x y`.
    pub fn heisenberg() -> Self {
        PcGroup::new(vec!["x".into(), "y".into(), "z".into()], 2, [((0, 1), vec![0, 0, -1])]).expect("Heisenberg rules are consistent")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn central_start(&self) -> usize {
        self.central_start
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut e = self.identity();
        e[i] = 1;
        e
    }

    /// Product of normal forms.
    pub fn multiply(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        for (&(i, j), w) in &self.rules {
            let k = a[j] * b[i];
            if k != 0 {
                for (o, &wc) in out.iter_mut().zip(w) {
                    *o += k * wc;
                }
            }
        }
        out
    }

    pub fn inverse(&self, a: &[i64]) -> Vec<i64> {
        // a^-1 = -a + correction; solve a * b = 1 with b = -a + c, c central
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        let prod = self.multiply(a, &neg);
        prod.iter().zip(&neg).map(|(p, n)| n - p).collect()
    }

    /// Collects a word in the pc generators to normal form.
    pub fn collect(&self, w: &Word) -> Result<Vec<i64>, PcError> {
        let mut acc = self.identity();
        for &(g, e) in w.syllables() {
            if g >= self.rank() {
                return Err(PcError::UnknownGenerator(g));
            }
            let mut step = self.identity();
            step[g] = e;
            acc = self.multiply(&acc, &step);
        }
        Ok(acc)
    }

    /// Commutator residue `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&self.inverse(&ba), &ab)
    }

    fn check_confluence(&self) -> Result<(), PcError> {
        let r = self.rank();
        let mut gens = Vec::new();
        for i in 0..r {
            gens.push(self.generator(i));
            gens.push(self.generator(i).iter().map(|x| -x).collect::<Vec<_>>());
        }
        for (ia, a) in gens.iter().enumerate() {
            for (ib, b) in gens.iter().enumerate() {
                for (ic, c) in gens.iter().enumerate() {
                    let left = self.multiply(&self.multiply(a, b), c);
                    let right = self.multiply(a, &self.multiply(b, c));
                    if left != right {
                        return Err(PcError::NotConfluent([ia / 2, ib / 2, ic / 2]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element_string(&self, e: &[i64]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| if x == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], x) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// An element of the integral group ring, a finite sum of normal forms.
#[derive(Clone)]
pub struct PcElement {
    group: Arc<PcGroup>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl PartialEq for PcElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for PcElement {}

impl PcElement {
    pub fn zero(group: &Arc<PcGroup>) -> Self {
        PcElement { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn one(group: &Arc<PcGroup>) -> Self {
        Self::group_element(group, group.identity())
    }

    pub fn group_element(group: &Arc<PcGroup>, e: Vec<i64>) -> Self {
        Self::from_terms(group, [(e, 1)])
    }

    pub fn generator(group: &Arc<PcGroup>, i: usize) -> Self {
        Self::group_element(group, group.generator(i))
    }

    pub fn constant(group: &Arc<PcGroup>, c: i64) -> Self {
        Self::from_terms(group, [(group.identity(), c)])
    }

    pub fn from_terms<C: Into<BigInt>>(group: &Arc<PcGroup>, items: impl IntoIterator<Item = (Vec<i64>, C)>) -> Self {
        let mut out = Self::zero(group);
        for (e, c) in items {
            assert_eq!(e.len(), group.rank());
            out.add_term(e, c.into());
        }
        out
    }

    pub fn group(&self) -> &Arc<PcGroup> {
        &self.group
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `±g` for a single group element `g`.
    pub fn is_trivial_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PcElement { group: self.group.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.group);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(self.group.multiply(ea, eb), ca * cb);
            }
        }
        out
    }

    /// Right multiplication by a group element.
    pub fn mul_group(&self, g: &[i64]) -> Self {
        PcElement { group: self.group.clone(), terms: self.terms.iter().map(|(e, c)| (self.group.multiply(e, g), c.clone())).collect() }
    }

    /// Terms as a list of `(exponent tuple, coefficient)` pairs.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| match c.to_i64() {
                    Some(v) => json!([e, v]),
                    None => json!([e, c.to_string()]),
                })
                .collect(),
        )
    }
}

impl fmt::Display for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let abs = c.abs();
            let mono = self.group.element_string(e);
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcElement({self})")
    }
}

/// A homomorphism `phi: G -> Q`, given by its values on the pc generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcGrading {
    phi: Phi,
}

impl PcGrading {
    /// Checks that `phi` kills every commutator residue.
    pub fn new(group: &PcGroup, values: Vec<BigRational>) -> Result<Self, PcError> {
        if values.len() != group.rank() {
            return Err(PcError::GradingLength { expected: group.rank(), found: values.len() });
        }
        let phi = Phi::new(values);
        for (&(i, j), w) in &group.rules {
            if phi.scaled_level(w) != 0 {
                return Err(PcError::GradingNotHomomorphism(i, j));
            }
        }
        Ok(PcGrading { phi })
    }

    pub fn integral(group: &PcGroup, values: &[i64]) -> Result<Self, PcError> {
        Self::new(group, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// Levels are additive on normal forms because `phi` vanishes on every
    /// collection correction.
    pub fn phi(&self) -> &Phi {
        &self.phi
    }
}

fn level_range(p: &PcElement, grading: &PcGrading) -> Option<(i128, i128)> {
    let levels = p.terms.keys().map(|e| grading.phi.scaled_level(e));
    let (mut lo, mut hi) = (None::<i128>, None::<i128>);
    for l in levels {
        lo = Some(lo.map_or(l, |x| x.min(l)));
        hi = Some(hi.map_or(l, |x| x.max(l)));
    }
    Some((lo?, hi?))
}

/// `max phi - min phi` over the support.
pub fn pc_deg_phi(p: &PcElement, grading: &PcGrading) -> Degree {
    match level_range(p, grading) {
        Some((lo, hi)) => Degree::Finite(grading.phi.unscale(hi - lo)),
        None => Degree::NegInfinity,
    }
}

/// Whether `ker phi` is abelian, checked on a lattice basis of exponent
/// tuples of level zero.
pub fn kernel_is_abelian(group: &PcGroup, grading: &PcGrading) -> bool {
    let r = group.rank();
    let row = Matrix::from_fn(1, r, |_, j| {
        let mut e = vec![0; r];
        e[j] = 1;
        BigInt::from(grading.phi.scaled_level(&e))
    });
    let basis: Vec<Vec<i64>> =
        integer_kernel(&row).into_iter().map(|v| v.iter().map(|x| x.to_i64().expect("small basis")).collect()).collect();
    let id = group.identity();
    basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| group.commutator(a, b) == id))
}

/// Cofactor expansion in a commutative subring.
fn commutative_det(m: &Matrix<PcElement>, group: &Arc<PcGroup>) -> PcElement {
    let n = m.rows();
    if n == 0 {
        return PcElement::one(group);
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut total = PcElement::zero(group);
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let term = m.get(0, j).mul(&commutative_det(&m.minor(Some(0), Some(j)), group));
        total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// Leading-level invertibility of a square matrix over the Novikov
/// completion of `Z[G]`.
///
/// The matrix is split as `A = A' g + A''` at its minimal level; `A'` lives
/// in `Z[ker phi]`. When that kernel is abelian, `Z[ker phi]` is a Laurent
/// ring whose units are `±` group elements, so `A'` is invertible exactly
/// when its determinant (computed in the commutative subring) is such a unit.
pub fn pc_invertibility(a: &Matrix<PcElement>, grading: &PcGrading) -> Result<Invertibility, PcError> {
    if !a.is_square() {
        return Err(PcError::NotSquare);
    }
    let Some(first) = a.iter().next() else {
        return Ok(Invertibility::Invertible);
    };
    let group = first.group.clone();
    let phi = &grading.phi;
    let level = a.iter().flat_map(|p| p.terms.keys().map(|e| phi.scaled_level(e))).min().ok_or(PcError::ZeroMatrix)?;
    if !kernel_is_abelian(&group, grading) {
        return Err(PcError::UnsupportedKernel);
    }
    let g = a.iter().flat_map(|p| p.terms.keys().filter(|e| phi.scaled_level(e) == level).cloned()).min().expect("minimal level attained");
    let g_inv = group.inverse(&g);
    let leading = a.map(|p| {
        let slice = PcElement {
            group: group.clone(),
            terms: p.terms.iter().filter(|(e, _)| phi.scaled_level(e) == level).map(|(e, c)| (e.clone(), c.clone())).collect(),
        };
        slice.mul_group(&g_inv)
    });
    let det = commutative_det(&leading, &group);
    Ok(if det.is_zero() {
        Invertibility::Degenerate
    } else if det.is_trivial_unit() {
        Invertibility::Invertible
    } else {
        Invertibility::NotInvertible
    })
}
