//! Torsion and Novikov homology of presentation complexes, fiberedness
//! verdicts, and probing of the fibered cone.
//!
//! A presentation `<x_1, ..., x_m | r_1, ..., r_k>` gives the complex
//! `Z[H]^k -> Z[H]^m -> Z[H]` with the Fox Jacobian and the row `(1 - x_j)`
//! as differentials, where `H` is a free abelian (or polycyclic) quotient.

mod complex;
mod cone;
mod pc;
mod verdict;

use thiserror::Error;

use crate::groups::GroupError;
use crate::laurent::LaurentError;
use crate::novikov::NovikovError;
use crate::polycyclic::PcError;

pub use complex::{build_complex, tau_of_complex, torsion_string, AbelianImage, PresentationComplex};
pub use cone::{fibered_cone_probe, ConeProbe};
pub use pc::{novikov_vanishes_pc, pc_b_prime, PcImage};
pub use verdict::{delta_zero, fiber_check, novikov_vanishes, torsion_degree, FiberVerdict, Vanishing, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("phi vanishes on every generator")]
    NoPhiNonzeroGenerator,
    #[error("complex has the wrong shape: {0}")]
    BadShape(String),
    #[error("relator {relator} does not map to the identity")]
    RelatorNotTrivial { relator: usize },
    #[error("phi does not factor through the chosen quotient")]
    PhiNotOnQuotient,
    #[error("phi is the zero class")]
    ZeroClass,
    #[error("leading slice of B' is not invertible, so B' cannot be normalized")]
    NotNormalizable,
    #[error("abelianization is not Z")]
    NotAKnotGroup,
    #[error("torsion vanishes")]
    TauVanishes,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}
