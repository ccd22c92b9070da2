use std::fmt;
use std::ops::Mul;

/// A freely reduced word in a free group, stored as syllables `(generator,
/// exponent)` with nonzero exponents and no two adjacent syllables on the
/// same generator.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: usize, e: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, e);
        w
    }

    /// Builds a word from `(generator, exponent)` pairs, reducing freely.
    pub fn from_syllables(items: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in items {
            w.push(g, e);
        }
        w
    }

    /// Builds a word from letters given as signed 1-based indices: `2` is the
    /// second generator, `-2` its inverse.
    pub fn from_signed(letters: &[i64]) -> Self {
        Self::from_syllables(letters.iter().map(|&l| {
            assert!(l != 0, "zero letter");
            (l.unsigned_abs() as usize - 1, l.signum())
        }))
    }

    /// Appends `g^e` on the right, cancelling against the last syllable.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    /// Letters one at a time as `(generator, inverse?)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| std::iter::repeat_n((g, e < 0), e.unsigned_abs() as usize))
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `u w u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Self {
        u.concat(self).concat(&u.inverse())
    }

    /// The cyclic reduction: strips matching inverse ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut s = self.syllables.clone();
        loop {
            if s.len() < 2 {
                return Word { syllables: s };
            }
            let (g0, e0) = s[0];
            let (g1, e1) = s[s.len() - 1];
            if g0 != g1 {
                return Word { syllables: s };
            }
            // merge last syllable into the first, since the word is read cyclically
            s.pop();
            s[0].1 = e0 + e1;
            if s[0].1 == 0 {
                s.remove(0);
            }
        }
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.syllables.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    pub fn exponent_vector(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0; ngens];
        for &(g, e) in &self.syllables {
            v[g] += e;
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.0).max()
    }

    /// Image under the endomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for &(g, e) in &self.syllables {
            w = w.concat(&images[g].pow(e));
        }
        w
    }

    /// Letter string with the given generator names; capitals for inverses
    /// when every name is a single lowercase letter, `x^-1` notation otherwise.
    pub fn to_string_with(&self, names: &[String]) -> String {
        let simple = names.iter().all(|n| n.len() == 1 && n.chars().all(|c| c.is_ascii_lowercase()));
        if self.is_empty() {
            return "1".to_string();
        }
        if simple {
            self.letters().map(|(g, inv)| if inv { names[g].to_ascii_uppercase() } else { names[g].clone() }).collect()
        } else {
            self.syllables
                .iter()
                .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{}", names[g], e) })
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for (i, (g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{g}^{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_signed(&[1, 2, -2, -1, 1]);
        assert_eq!(w, Word::generator(0));
        assert_eq!(Word::from_signed(&[1, 1, 1]).syllables(), &[(0, 3)]);
        let u = Word::from_signed(&[1, 2, -1]);
        assert!(u.concat(&u.inverse()).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_signed(&[1, 2, 3, -1]);
        assert_eq!(w.cyclically_reduced(), Word::from_signed(&[2, 3]));
        let w = Word::from_signed(&[1, 2, 1]);
        assert_eq!(w.cyclically_reduced(), Word::from_signed(&[1, 1, 2]).cyclically_reduced());
        assert_eq!(w.cyclically_reduced().len(), 3);
    }

    #[test]
    fn substitution() {
        let w = Word::from_signed(&[1, 2]);
        let images = vec![Word::from_signed(&[2]), Word::from_signed(&[-2, 1])];
        assert_eq!(w.substitute(&images), Word::generator(0));
    }
}
