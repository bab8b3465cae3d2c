use cellq_bench::{algebra, hecke, name, reps, INSTANCES};
use cellq_core::cellular::{CellDatum, RingSpec};
use cellq_core::props::{run_suite, SuiteConfig, SuiteInput};
use criterion::{criterion_group, criterion_main, Criterion};

fn stages(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for &(kind, rank, spec) in INSTANCES {
        let id = name(kind, rank, spec);
        group.bench_function(format!("hecke {kind:?}{rank}"), |b| b.iter(|| hecke(kind, rank)));
        let hd = hecke(kind, rank);
        group.bench_function(format!("build {id}"), |b| b.iter(|| algebra(&hd, rank, spec)));
        let alg = algebra(&hd, rank, spec);
        group.bench_function(format!("reps {id}"), |b| b.iter(|| reps(&alg)));
        let rd = reps(&alg);
        group.bench_function(format!("cellbasis {id}"), |b| {
            b.iter(|| CellDatum::build(&alg, &rd, &RingSpec::Auto).expect("cell datum"))
        });
        let datum = CellDatum::build(&alg, &rd, &RingSpec::Auto).expect("cell datum");
        let config = SuiteConfig::default();
        group.bench_function(format!("verify {id}"), |b| {
            b.iter(|| {
                let input = SuiteInput { hecke: &hd, alg: &alg, reps: &rd, cells: Some(&datum), regular: None };
                run_suite(&input, &config)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, stages);
criterion_main!(benches);
