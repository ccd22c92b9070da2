use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::groups::{CohomologyClass, GroupPresentation};
use crate::laurent::{deg_phi_fraction, monic_fraction, Degree, Phi, TorsionValue};
use crate::novikov::{acyclicity_test, Direction, NovikovCompletion, DEFAULT_HORIZON};

use super::complex::{build_complex, tau_of_complex, torsion_string, AbelianImage, PresentationComplex};
use super::TorsionError;

/// Outcome of a Novikov homology vanishing test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vanishing {
    Vanishes,
    NonVanishing,
    /// The leading-level test was degenerate and nothing else decides.
    Inconclusive,
}

impl Vanishing {
    pub fn vanishes(self) -> bool {
        self == Vanishing::Vanishes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Vanishing::Vanishes => "vanishes",
            Vanishing::NonVanishing => "non-vanishing",
            Vanishing::Inconclusive => "inconclusive",
        }
    }
}

/// Whether `H_1` of the complex vanishes over the Novikov completion in the
/// given direction. Over `Z[Z^n]` this is decided exactly.
pub fn novikov_vanishes(c: &PresentationComplex, phi: &Phi, direction: Direction) -> Result<Vanishing, TorsionError> {
    let based = c.to_based()?;
    let ring = NovikovCompletion { phi: phi.clone(), direction, horizon: DEFAULT_HORIZON };
    let report = acyclicity_test(&based, &ring)?;
    Ok(if report.acyclic { Vanishing::Vanishes } else { Vanishing::NonVanishing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every obstruction computed here vanishes.
    Passed,
    /// The named test fails.
    Obstructed { witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberVerdict {
    pub tau: TorsionValue,
    pub tau_degree: Degree,
    pub monic: bool,
    pub novikov_plus: bool,
    pub novikov_minus: bool,
    /// `max(deg tau, 0)`, a lower bound for the Thurston norm of `phi`.
    pub thurston_lower_bound: BigRational,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
    /// Names of the variables of the free abelian quotient.
    pub variables: Vec<String>,
}

impl FiberVerdict {
    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            Verdict::Passed => json!("passed"),
            Verdict::Obstructed { witness } => json!({ "obstructed": witness }),
        };
        json!({
            "tau": torsion_string(&self.tau, &self.variables),
            "degree": self.tau_degree.to_string(),
            "monic": self.monic,
            "novikov": { "plus": self.novikov_plus, "minus": self.novikov_minus },
            "bound": self.thurston_lower_bound.to_string(),
            "verdict": verdict,
            "caveats": self.caveats,
        })
    }

    pub fn to_text(&self) -> String {
        let verdict = match &self.verdict {
            Verdict::Passed => "passed".to_string(),
            Verdict::Obstructed { witness } => format!("obstructed ({witness})"),
        };
        let mut out = format!(
            "tau: {}\ndegree: {}\nmonic: {}\nnovikov +phi: {}\nnovikov -phi: {}\nthurston norm >= {}\nverdict: {}\n",
            torsion_string(&self.tau, &self.variables),
            self.tau_degree,
            self.monic,
            self.novikov_plus,
            self.novikov_minus,
            self.thurston_lower_bound,
            verdict
        );
        for c in &self.caveats {
            out.push_str(&format!("caveat: {c}\n"));
        }
        out
    }
}

/// Degree and monicness of a torsion value.
pub fn torsion_degree(tau: &TorsionValue, phi: &Phi) -> Result<(Degree, bool), TorsionError> {
    match tau.fraction() {
        None => Ok((Degree::NegInfinity, false)),
        Some(f) => Ok((deg_phi_fraction(f, phi), monic_fraction(f, phi)?)),
    }
}

/// Torsion, its degree and monicness, and both Novikov vanishing tests for
/// `phi` on the maximal free abelian cover.
pub fn fiber_check(p: &GroupPresentation, phi: &CohomologyClass) -> Result<FiberVerdict, TorsionError> {
    let (prim, scale) = phi.to_primitive_integral().ok_or(TorsionError::ZeroClass)?;
    let class = CohomologyClass::from_integers(p, &prim)?;
    let gamma = AbelianImage::abelianization(p)?;
    let grading = gamma.phi_on_quotient(&class)?;
    let cx = build_complex(p, &gamma, &grading)?;
    let tau = tau_of_complex(&cx)?;
    let (tau_degree, monic) = torsion_degree(&tau, &grading)?;
    let novikov_plus = novikov_vanishes(&cx, &grading, Direction::Plus)?.vanishes();
    let novikov_minus = novikov_vanishes(&cx, &grading, Direction::Minus)?.vanishes();
    let thurston_lower_bound = match tau_degree.finite() {
        Some(d) if d > &BigRational::zero() => d.clone(),
        _ => BigRational::zero(),
    };
    let witness = if tau.is_zero() {
        Some("tau-vanishes")
    } else if !monic {
        Some("non-monic")
    } else if !novikov_plus {
        Some("novikov-plus")
    } else if !novikov_minus {
        Some("novikov-minus")
    } else {
        None
    };
    let verdict = match witness {
        None => Verdict::Passed,
        Some(w) => Verdict::Obstructed { witness: w.to_string() },
    };
    let mut caveats = vec!["a passing verdict certifies fiberedness only when the input presents a 3-manifold group".to_string()];
    if scale != BigRational::from_integer(1.into()) {
        caveats.push(format!("phi rescaled by {scale} to a primitive integral class"));
    }
    if let Some(d) = tau_degree.finite() {
        if d < &BigRational::zero() {
            caveats.push(format!(
                "deg tau = {d} is below the trivial norm bound; with b1 = 1 the corrected degree is deg tau + 1 = {}",
                d + BigRational::from_integer(1.into())
            ));
        }
    }
    Ok(FiberVerdict {
        tau,
        tau_degree,
        monic,
        novikov_plus,
        novikov_minus,
        thurston_lower_bound,
        verdict,
        caveats,
        variables: cx.variable_names(),
    })
}

/// `deg tau + 1` for a group with abelianization `Z`, the degree of its
/// Alexander polynomial.
pub fn delta_zero(p: &GroupPresentation) -> Result<i64, TorsionError> {
    let ab = p.abelianization();
    if ab.rank != 1 || !ab.torsion.is_empty() {
        return Err(TorsionError::NotAKnotGroup);
    }
    let gamma = AbelianImage::abelianization(p)?;
    let phi = Phi::standard();
    let cx = build_complex(p, &gamma, &phi)?;
    let tau = tau_of_complex(&cx)?;
    let (deg, _) = torsion_degree(&tau, &phi)?;
    let d = deg.finite().ok_or(TorsionError::TauVanishes)?;
    let shifted: num_bigint::BigInt = d.to_integer() + 1;
    shifted.to_i64().ok_or(TorsionError::TauVanishes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{braid_to_knot_group, parse_presentation};
    use crate::laurent::LaurentPoly;

    fn knot(braid: &[i64]) -> GroupPresentation {
        braid_to_knot_group(braid).unwrap()
    }

    fn phi_of(p: &GroupPresentation) -> CohomologyClass {
        p.induced_phi().unwrap().remove(0)
    }

    #[test]
    fn trefoil_verdict() {
        let p = knot(&[1, 1, 1]);
        let v = fiber_check(&p, &phi_of(&p)).unwrap();
        assert_eq!(
            v.tau,
            TorsionValue::from_parts(LaurentPoly::univariate(&[(0, 1), (1, -1), (2, 1)]), LaurentPoly::univariate(&[(0, 1), (1, -1)]))
        );
        assert_eq!(v.tau_degree, Degree::from_int(1));
        assert!(v.monic && v.novikov_plus && v.novikov_minus);
        assert_eq!(v.verdict, Verdict::Passed);
        assert_eq!(v.thurston_lower_bound, BigRational::from_integer(1.into()));
        assert_eq!(delta_zero(&p).unwrap(), 2);
    }

    #[test]
    fn figure_eight_verdict() {
        let p = knot(&[1, -2, 1, -2]);
        let v = fiber_check(&p, &phi_of(&p)).unwrap();
        assert_eq!(v.tau_degree, Degree::from_int(1));
        assert_eq!(v.verdict, Verdict::Passed);
        assert_eq!(delta_zero(&p).unwrap(), 2);
    }

    #[test]
    fn five_two_is_obstructed() {
        let p = knot(&[1, 1, 1, 2, -1, 2]);
        let v = fiber_check(&p, &phi_of(&p)).unwrap();
        assert_eq!(
            v.tau,
            TorsionValue::from_parts(LaurentPoly::univariate(&[(0, 2), (1, -3), (2, 2)]), LaurentPoly::univariate(&[(0, 1), (1, -1)]))
        );
        assert!(!v.monic && !v.novikov_plus && !v.novikov_minus);
        assert_eq!(v.verdict, Verdict::Obstructed { witness: "non-monic".into() });
    }

    #[test]
    fn unknot_degree_and_caveat() {
        let p = parse_presentation("gens: x").unwrap();
        let v = fiber_check(&p, &phi_of(&p)).unwrap();
        assert_eq!(v.tau_degree, Degree::from_int(-1));
        assert_eq!(v.thurston_lower_bound, BigRational::zero());
        assert_eq!(v.caveats.len(), 2);
        assert_eq!(delta_zero(&p).unwrap(), 0);
    }

    #[test]
    fn rational_phi_is_rescaled() {
        let p = knot(&[1, 1, 1]);
        let half = CohomologyClass::new(&p, vec![BigRational::new(1.into(), 2.into()); 2]).unwrap();
        let v = fiber_check(&p, &half).unwrap();
        assert_eq!(v.verdict, Verdict::Passed);
        assert!(v.caveats.iter().any(|c| c.contains("rescaled by 2")));
        let json = v.to_json();
        assert_eq!(json["verdict"], "passed");
        assert_eq!(json["novikov"]["plus"], true);
    }

    #[test]
    fn delta_zero_needs_knot_group() {
        let p = parse_presentation("gens: a b").unwrap();
        assert_eq!(delta_zero(&p), Err(TorsionError::NotAKnotGroup));
    }
}
