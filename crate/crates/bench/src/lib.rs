//! Shared fixtures for the pipeline benchmarks.

use cellq_core::asym::RepData;
use cellq_core::coxeter::{CartanDatum, CartanType, WeylGroup};
use cellq_core::hecke::HeckeData;
use cellq_core::schur::{OrbitSpec, SchurAlgebra};

/// Seed used by every benchmark so runs are comparable.
pub const SEED: u64 = 7;

/// Benchmarked instances: type, rank and orbit specification.
pub const INSTANCES: &[(CartanType, usize, &str)] =
    &[(CartanType::A, 2, "1,2;1;2;-"), (CartanType::B, 2, "1,2;1;2;-"), (CartanType::G, 2, "1;2;-")];

pub fn name(kind: CartanType, rank: usize, spec: &str) -> String {
    format!("{kind:?}{rank} {spec}")
}

pub fn hecke(kind: CartanType, rank: usize) -> HeckeData {
    let datum = CartanDatum::new(kind, rank).expect("valid Cartan datum");
    HeckeData::build(WeylGroup::new(datum).expect("finite group")).expect("Hecke tables")
}

pub fn algebra(hd: &HeckeData, rank: usize, spec: &str) -> SchurAlgebra {
    SchurAlgebra::build(hd, &OrbitSpec::parse(spec, rank).expect("valid orbit spec")).expect("algebra")
}

pub fn reps(alg: &SchurAlgebra) -> RepData {
    RepData::compute(alg, SEED).expect("representations split")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        for &(kind, rank, spec) in INSTANCES {
            let hd = hecke(kind, rank);
            let alg = algebra(&hd, rank, spec);
            assert!(!reps(&alg).irreps.is_empty(), "{}", name(kind, rank, spec));
        }
    }
}
