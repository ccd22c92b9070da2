use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::laurent::{determinant, Exponent, LaurentPoly, Phi};
use crate::novikov::{adjugate, decompose, mat_mul, unit_inverse};

use super::complex::PresentationComplex;
use super::TorsionError;

/// An open cone of classes `psi` described by strict conditions
/// `psi(g) > 0` and `psi(g) != 0` on group elements `g` of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeProbe {
    pub nvars: usize,
    /// Support of `P` in the normalization `B' = A' g (I + P)`.
    pub positive: Vec<Exponent>,
    /// Exponents of the corner units; `psi` must not vanish on them.
    pub nonzero: Vec<Exponent>,
}

fn pairing(e: &[i64], psi: &[BigRational]) -> BigRational {
    e.iter().zip(psi).map(|(&x, v)| BigRational::from_integer(BigInt::from(x)) * v).fold(BigRational::zero(), |a, b| a + b)
}

fn covector_string(e: &[i64], names: &[String]) -> String {
    let mut out = String::new();
    for (k, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 { "-" } else { "+" };
        let mag = x.unsigned_abs();
        let body = if mag == 1 { format!("psi({})", names[k]) } else { format!("{mag}*psi({})", names[k]) };
        if out.is_empty() {
            out = if x < 0 { format!("-{body}") } else { body };
        } else {
            out.push_str(&format!(" {sign} {body}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl ConeProbe {
    pub fn contains(&self, psi: &[BigRational]) -> bool {
        self.positive.iter().all(|e| pairing(e, psi) > BigRational::zero()) && self.nonzero.iter().all(|e| !pairing(e, psi).is_zero())
    }

    /// Human-readable constraints, strict inequalities first.
    pub fn constraints(&self, names: &[String]) -> Vec<String> {
        let mut out: Vec<String> = self.positive.iter().map(|e| format!("{} > 0", covector_string(e, names))).collect();
        out.extend(self.nonzero.iter().map(|e| format!("{} != 0", covector_string(e, names))));
        out
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        json!({
            "positive": self.positive,
            "nonzero": self.nonzero,
            "constraints": self.constraints(names),
        })
    }
}

fn corner_exponents(p: &LaurentPoly) -> impl Iterator<Item = Exponent> + '_ {
    p.terms().map(|(e, _)| e.clone()).filter(|e| e.iter().any(|&x| x != 0))
}

/// Classes `psi` near `phi` for which Novikov homology still vanishes:
/// writes `B' = A' g (I + P)` with `P` of strictly positive `phi`-level and
/// returns the conditions `psi > 0` on the support of `P`.
pub fn fibered_cone_probe(c: &PresentationComplex, phi: &Phi) -> Result<ConeProbe, TorsionError> {
    let based = c.to_based()?;
    let mut nonzero: BTreeSet<Exponent> = corner_exponents(based.corner_a()).collect();
    if let Some(cc) = based.corner_c() {
        nonzero.extend(corner_exponents(cc));
    }
    let bp = based.b_prime();
    let mut positive = BTreeSet::new();
    if bp.rows() > 0 {
        let d = decompose(&bp, phi)?;
        let det = determinant(&d.leading);
        let det_inv = unit_inverse(&det).ok_or(TorsionError::NotNormalizable)?;
        let neg_shift: Exponent = d.shift.iter().map(|x| -x).collect();
        let lead_inv = adjugate(&d.leading).map(|p| (p * &det_inv).shift(&neg_shift));
        let p = mat_mul(&lead_inv, &d.tail);
        for entry in p.iter() {
            positive.extend(entry.terms().map(|(e, _)| e.clone()));
        }
    }
    Ok(ConeProbe { nvars: c.nvars, positive: positive.into_iter().collect(), nonzero: nonzero.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn complex_with(bp: LaurentPoly) -> PresentationComplex {
        let n = bp.nvars();
        let a = &LaurentPoly::one(n) - &LaurentPoly::var(n, 0);
        PresentationComplex::boundary(Matrix::from_rows(vec![vec![a.clone(), a]]), Matrix::from_rows(vec![vec![-&bp], vec![bp]])).unwrap()
    }

    #[test]
    fn single_support_element() {
        let bp = LaurentPoly::univariate(&[(0, 1), (1, -1)]);
        let probe = fibered_cone_probe(&complex_with(bp), &Phi::standard()).unwrap();
        assert_eq!(probe.positive, vec![vec![1]]);
        assert_eq!(probe.constraints(&["t".into()]), vec!["psi(t) > 0", "psi(t) != 0"]);
    }

    #[test]
    fn two_variable_support() {
        let bp = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![1, -1], -1), (vec![1, 0], -1)]);
        let probe = fibered_cone_probe(&complex_with(bp), &Phi::integral(&[1, 0])).unwrap();
        let names = vec!["t".to_string(), "u".to_string()];
        assert_eq!(probe.constraints(&names)[..2], ["psi(t) - psi(u) > 0".to_string(), "psi(t) > 0".to_string()]);
        let q = |a: i64, b: i64| vec![BigRational::from_integer(a.into()), BigRational::from_integer(b.into())];
        assert!(probe.contains(&q(2, 1)));
        assert!(!probe.contains(&q(1, 1)));
    }

    #[test]
    fn empty_tail() {
        let bp = LaurentPoly::var(1, 0);
        let probe = fibered_cone_probe(&complex_with(bp), &Phi::standard()).unwrap();
        assert!(probe.positive.is_empty());
        let bp = LaurentPoly::univariate(&[(0, 2), (1, 1)]);
        assert_eq!(fibered_cone_probe(&complex_with(bp), &Phi::standard()), Err(TorsionError::NotNormalizable));
    }
}
