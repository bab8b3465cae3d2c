//! The asymptotic algebra `J`: its simple modules over `Z` and the
//! invariants read off from them.

mod block;
mod embedding;
mod invariants;
mod special;
mod split;

pub use embedding::{check_embedding, EmbeddingReport, LeftCellCount};
pub use invariants::{mat_mul, mat_transpose, RepData, RepInvariants};
pub use special::{j_mul, positive_multiple, JVector, SpecialLine, SpecialModules};
pub use split::{split_irreps, IntMatrix, Irrep};
