//! The conformance suite on randomly drawn orbit specs of small rank.

use cellq_core::asym::RepData;
use cellq_core::coxeter::{CartanDatum, CartanType, Parabolic, WeylGroup};
use cellq_core::hecke::HeckeData;
use cellq_core::props::{run_suite, SuiteConfig, SuiteInput};
use cellq_core::schur::{OrbitSpec, SchurAlgebra};
use proptest::prelude::*;

fn hecke(kind: CartanType) -> &'static HeckeData {
    static CACHE: std::sync::OnceLock<Vec<(CartanType, HeckeData)>> = std::sync::OnceLock::new();
    let all = CACHE.get_or_init(|| {
        [CartanType::A, CartanType::B, CartanType::G]
            .into_iter()
            .map(|k| (k, HeckeData::build(WeylGroup::new(CartanDatum::new(k, 2).unwrap()).unwrap()).unwrap()))
            .collect()
    });
    &all.iter().find(|(k, _)| *k == kind).unwrap().1
}

fn spec() -> impl Strategy<Value = (CartanType, Vec<u32>)> {
    (prop::sample::select(vec![CartanType::A, CartanType::B, CartanType::G]), prop::collection::vec(0u32..4, 1..4))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn suite_passes_on_random_specs((kind, masks) in spec(), seed in 0u64..1000) {
        let orbits: Vec<Parabolic> = masks.iter().map(|m| Parabolic::from_generators((0..2).filter(|s| m >> s & 1 == 1))).collect();
        let spec = OrbitSpec::new(orbits).unwrap();
        let hd = hecke(kind);
        let alg = SchurAlgebra::build(hd, &spec).unwrap();
        let reps = RepData::compute(&alg, seed).unwrap();
        let input = SuiteInput { hecke: hd, alg: &alg, reps: &reps, cells: None, regular: None };
        let config = SuiteConfig { seed, ..SuiteConfig::default() };
        let report = run_suite(&input, &config);
        let failed: Vec<String> = report.failed().map(|c| format!("{}: {:?}", c.name, c.witnesses.first())).collect();
        prop_assert!(failed.is_empty(), "{kind:?}2 {spec}: {failed:?}");
        // same inputs, same bytes
        prop_assert_eq!(report.to_json(), run_suite(&input, &config).to_json());
    }

    #[test]
    fn representation_invariants_do_not_depend_on_the_seed((kind, masks) in spec(), s1 in 0u64..1000, s2 in 0u64..1000) {
        let orbits: Vec<Parabolic> = masks.iter().map(|m| Parabolic::from_generators((0..2).filter(|s| m >> s & 1 == 1))).collect();
        let alg = SchurAlgebra::build(hecke(kind), &OrbitSpec::new(orbits).unwrap()).unwrap();
        let (a, b) = (RepData::compute(&alg, s1).unwrap(), RepData::compute(&alg, s2).unwrap());
        let key = |r: &RepData| {
            let mut v: Vec<(usize, usize, i64, u32, Vec<i64>)> = r
                .irreps
                .iter()
                .zip(&r.invariants)
                .map(|(rep, inv)| (rep.family, rep.dim, inv.f, inv.a, inv.multiplicities.clone()))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(key(&a), key(&b));
        prop_assert_eq!(&a.bad_primes, &b.bad_primes);
    }
}
