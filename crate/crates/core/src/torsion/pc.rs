use std::sync::Arc;

use num_rational::BigRational;

use crate::groups::{fox_jacobian_in, GroupPresentation, GroupRingMap};
use crate::matrix::Matrix;
use crate::novikov::{Direction, Invertibility};
use crate::polycyclic::{pc_invertibility, PcElement, PcGrading, PcGroup};

use super::verdict::Vanishing;
use super::TorsionError;

/// A homomorphism from a presented group to a polycyclic group, given by
/// normal forms of the generator images.
#[derive(Clone, Debug)]
pub struct PcImage {
    group: Arc<PcGroup>,
    images: Vec<Vec<i64>>,
}

impl PcImage {
    /// Checks that every relator collects to the identity.
    pub fn new(p: &GroupPresentation, group: Arc<PcGroup>, images: Vec<Vec<i64>>) -> Result<Self, TorsionError> {
        if images.len() != p.num_generators() || images.iter().any(|e| e.len() != group.rank()) {
            return Err(TorsionError::BadShape("one normal form per generator".into()));
        }
        let map = PcImage { group, images };
        let id = map.group.identity();
        for (i, r) in p.relators().iter().enumerate() {
            let mut acc = id.clone();
            for (g, inv) in r.letters() {
                let step = if inv { map.group.inverse(&map.images[g]) } else { map.images[g].clone() };
                acc = map.group.multiply(&acc, &step);
            }
            if acc != id {
                return Err(TorsionError::RelatorNotTrivial { relator: i });
            }
        }
        Ok(map)
    }

    pub fn group(&self) -> &Arc<PcGroup> {
        &self.group
    }
}

impl GroupRingMap for PcImage {
    type Elem = PcElement;

    fn zero(&self) -> PcElement {
        PcElement::zero(&self.group)
    }

    fn one(&self) -> PcElement {
        PcElement::one(&self.group)
    }

    fn letter(&self, g: usize, inverse: bool) -> PcElement {
        let e = if inverse { self.group.inverse(&self.images[g]) } else { self.images[g].clone() };
        PcElement::group_element(&self.group, e)
    }

    fn add(&self, a: &PcElement, b: &PcElement) -> PcElement {
        a.add(b)
    }

    fn mul(&self, a: &PcElement, b: &PcElement) -> PcElement {
        a.mul(b)
    }

    fn neg(&self, a: &PcElement) -> PcElement {
        a.neg()
    }

    fn is_zero(&self, a: &PcElement) -> bool {
        a.is_zero()
    }
}

/// The block `B'` of the Fox Jacobian over the polycyclic group ring: the
/// column of the first generator with nonzero grading is removed.
pub fn pc_b_prime(p: &GroupPresentation, target: &PcImage, grading: &PcGrading) -> Result<Matrix<PcElement>, TorsionError> {
    let phi = grading.phi();
    let k = (0..p.num_generators()).find(|&j| phi.scaled_level(&target.images[j]) != 0).ok_or(TorsionError::NoPhiNonzeroGenerator)?;
    let jac = fox_jacobian_in(target, p.relators(), p.num_generators());
    let bp = jac.minor(None, Some(k));
    if !bp.is_square() {
        return Err(TorsionError::BadShape(format!("B' is {}x{}", bp.rows(), bp.cols())));
    }
    Ok(bp)
}

/// Novikov vanishing over the group ring of a class-2 nilpotent quotient,
/// decided by the leading-level test; a degenerate leading slice gives
/// [`Vanishing::Inconclusive`].
pub fn novikov_vanishes_pc(
    p: &GroupPresentation,
    target: &PcImage,
    grading: &PcGrading,
    direction: Direction,
) -> Result<Vanishing, TorsionError> {
    let bp = pc_b_prime(p, target, grading)?;
    let effective = match direction {
        Direction::Plus => grading.clone(),
        Direction::Minus => {
            let neg: Vec<BigRational> = grading.phi().values().iter().map(|v| -v).collect();
            PcGrading::new(&target.group, neg)?
        }
    };
    Ok(match pc_invertibility(&bp, &effective)? {
        Invertibility::Invertible => Vanishing::Vanishes,
        Invertibility::NotInvertible => Vanishing::NonVanishing,
        Invertibility::Degenerate => Vanishing::Inconclusive,
    })
}
