//! The cellular structure of the q-Schur algebra and its specializations.

mod datum;
mod specht;

pub use datum::{
    rho_of_phi, signed_canonical_check, verify_axioms, AxiomReport, CellDatum, CellElt, CellLabel, RingSpec, SignedMatch,
};
pub use specht::{specialize, CellModule, FieldSpec, QValue, Specialization, SpechtData};
