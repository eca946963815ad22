use thiserror::Error;

use crate::algebra::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("inconsistent system")]
    InconsistentSystem,

    #[error("not a subspace: sub-generators are not contained in the ambient span")]
    NotASubspace,

    #[error("invalid {what}: {report}")]
    Invalid { what: &'static str, report: ValidationReport },

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(String, String),

    #[error("bimodules are over different base structures")]
    MixedBase,

    #[error("inconsistent weight: no single weight satisfies the identity on all basis pairs")]
    InconsistentWeight,

    #[error("corrected Psi coefficients are not pinned for degree {0}")]
    UnresolvedPsiCoefficient(usize),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("section induces different bimodule: {0}")]
    SectionInducesDifferentBimodule(String),

    #[error("not a section: projection composed with it is not the identity")]
    NotASection,

    #[error("not cohomologous via theta")]
    NotCohomologous,

    #[error("not an equivalence: transporting the deformation does not give the target")]
    NotAnEquivalence,

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("deformation fails at order {order}")]
    DeformationFailsAtOrder { order: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("range error: {0}")]
    Range(String),
}
