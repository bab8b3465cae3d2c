//! Finite Weyl groups: enumeration, Bruhat order, parabolic subgroups and double cosets.

mod cartan;
mod coset;
mod group;

pub use cartan::{CartanDatum, CartanType};
pub use coset::DoubleCoset;
pub use group::{Elem, Parabolic, WeylElement, WeylGroup, DEFAULT_ORDER_BOUND};
