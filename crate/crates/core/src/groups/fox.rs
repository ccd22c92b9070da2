//! Free differential calculus.
//!
//! Derivatives are evaluated directly in a target ring through
//! [`GroupRingMap`], so Jacobians of long relators never materialise in the
//! free group ring unless that ring is the target.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Word;
use crate::matrix::Matrix;

/// A ring together with a homomorphism from the free group ring `Z[F]`.
pub trait GroupRingMap {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of the generator `g`, or of its inverse.
    fn letter(&self, g: usize, inverse: bool) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn word(&self, w: &Word) -> Self::Elem {
        let mut acc = self.one();
        for (g, inv) in w.letters() {
            acc = self.mul(&acc, &self.letter(g, inv));
        }
        acc
    }
}

/// Image of `d w / d x_gen` under `ring`.
pub fn fox_derivative_in<R: GroupRingMap>(ring: &R, w: &Word, gen: usize) -> R::Elem {
    let mut prefix = ring.one();
    let mut total = ring.zero();
    for (g, inv) in w.letters() {
        let letter = ring.letter(g, inv);
        if g == gen {
            if inv {
                // d(x^-1)/dx = -x^-1
                total = ring.sub(&total, &ring.mul(&prefix, &letter));
            } else {
                total = ring.add(&total, &prefix);
            }
        }
        prefix = ring.mul(&prefix, &letter);
    }
    total
}

/// Fox Jacobian `(d r_i / d x_j)` mapped into `ring`, rows indexed by
/// relators and columns by generators.
pub fn fox_jacobian_in<R: GroupRingMap>(ring: &R, relators: &[Word], ngens: usize) -> Matrix<R::Elem> {
    if relators.is_empty() || ngens == 0 {
        return Matrix::empty(relators.len(), ngens);
    }
    Matrix::from_fn(relators.len(), ngens, |i, j| fox_derivative_in(ring, &relators[i], j))
}

/// Checks `sum_j (d r / d x_j)(x_j - 1) = r - 1` in `ring`.
pub fn fundamental_identity_holds<R: GroupRingMap>(ring: &R, r: &Word, ngens: usize) -> bool
where
    R::Elem: PartialEq,
{
    let mut lhs = ring.zero();
    for j in 0..ngens {
        let d = fox_derivative_in(ring, r, j);
        let xm1 = ring.sub(&ring.letter(j, false), &ring.one());
        lhs = ring.add(&lhs, &ring.mul(&d, &xm1));
    }
    lhs == ring.sub(&ring.word(r), &ring.one())
}

/// An element of the integral group ring of a free group.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeGroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl FreeGroupRingElement {
    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        FreeGroupRingElement { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut out = FreeGroupRingElement::default();
        for (w, c) in items {
            out.add_term(w, BigInt::from(c));
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                out.push_str(&format!(" {sign} "));
            } else if c.is_negative() {
                out.push('-');
            }
            let abs = c.abs();
            let word = w.to_string_with(names);
            if abs.is_one() {
                out.push_str(&word);
            } else if w.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}*{word}"));
            }
        }
        out
    }
}

impl fmt::Debug for FreeGroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// The identity map of `Z[F]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeGroupRing;

impl GroupRingMap for FreeGroupRing {
    type Elem = FreeGroupRingElement;

    fn zero(&self) -> Self::Elem {
        FreeGroupRingElement::default()
    }

    fn one(&self) -> Self::Elem {
        FreeGroupRingElement::from_word(Word::identity())
    }

    fn letter(&self, g: usize, inverse: bool) -> Self::Elem {
        FreeGroupRingElement::from_word(Word::power(g, if inverse { -1 } else { 1 }))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (w, c) in &b.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = FreeGroupRingElement::default();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        FreeGroupRingElement { terms: a.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

/// `d w / d x_gen` in the free group ring.
pub fn fox_derivative(w: &Word, gen: usize) -> FreeGroupRingElement {
    fox_derivative_in(&FreeGroupRing, w, gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_examples() {
        let x = Word::generator(0);
        assert_eq!(fox_derivative(&x, 0), FreeGroupRingElement::from_word(Word::identity()));
        // d(x y x^-1 y^-1)/dx = 1 - x y x^-1
        let comm = Word::from_signed(&[1, 2, -1, -2]);
        let expected = FreeGroupRingElement::from_terms([(Word::identity(), 1), (Word::from_signed(&[1, 2, -1]), -1)]);
        assert_eq!(fox_derivative(&comm, 0), expected);
        let cube = Word::power(0, 3);
        let expected = FreeGroupRingElement::from_terms([(Word::identity(), 1), (Word::generator(0), 1), (Word::power(0, 2), 1)]);
        assert_eq!(fox_derivative(&cube, 0), expected);
        assert_eq!(fox_derivative(&Word::power(0, -1), 0), FreeGroupRingElement::from_terms([(Word::power(0, -1), -1)]));
    }

    #[test]
    fn fundamental_identity_on_samples() {
        for w in [Word::from_signed(&[1, 2, -1, -2]), Word::from_signed(&[1, 1, 2, -3, 1, -2]), Word::from_signed(&[-1, -1, -1])] {
            assert!(fundamental_identity_holds(&FreeGroupRing, &w, 3));
        }
    }
}
