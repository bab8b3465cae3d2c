//! The q-Schur algebra attached to a list of parabolic subgroups: its
//! canonical basis, structure constants, cells and the map into the
//! asymptotic ring.

mod algebra;
mod elt;
mod embed;
mod spec;
mod xi;

pub use algebra::{operational_form, printed_form, IntRow, LaurentRow, SchurAlgebra};
pub use elt::{Basis, SchurElt};
pub use embed::{bilinear_form, form_via_embedding, gram, phi_embed, Embedded, EmbeddedBlock};
pub use spec::OrbitSpec;
pub use xi::{XiIndex, XiSet};
