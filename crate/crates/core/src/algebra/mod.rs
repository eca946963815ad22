//! Finite-dimensional associative algebras given by structure constants,
//! modified Rota-Baxter and Rota-Baxter operators on them, bimodules, and
//! the constructions that produce new structures from old ones.
//!
//! Every axiom is checked on basis tuples only; bilinearity extends the
//! identities to all elements. Validators return exhaustive reports rather
//! than a boolean so that hand-entered constants can be debugged.

mod assoc;
mod bimodule;
mod operator;
mod report;

pub use assoc::AlgebraRep;
pub(crate) use bimodule::abelian_extension_algebra;
pub use bimodule::{
    adjoint_bimodule, direct_sum, endo_bimodule, induced_bimodule_ms, lift_bimodule, semidirect_product, twisted_bimodule,
    BimoduleActions, BimoduleRep, RBBimodule,
};
pub use operator::{
    check_morphism, from_rota_baxter, graph_subalgebra_check, induced_algebra, induced_mrb, infer_weight, GraphCheck,
    MRBStructure, RBStructure,
};
pub use report::{Axiom, ValidationReport, Violation};
