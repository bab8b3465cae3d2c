//! Exact construction of q-Schur algebras of finite type: canonical bases,
//! cells, asymptotic algebras, representations and cellular structure.

pub mod cellular;
pub mod coxeter;
pub mod error;
pub mod exact;
pub mod hecke;
pub mod preorder;
pub mod props;
pub mod asym;
pub mod schur;

pub use error::{Error, Result};
pub use exact::{LaurentInt, RatFunc};
