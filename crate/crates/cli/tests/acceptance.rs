//! End-to-end acceptance run: one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cellq_core::asym::{RepData, SpecialModules};
use cellq_core::cellular::{signed_canonical_check, specialize, verify_axioms, CellDatum, RingSpec, Specialization};
use cellq_core::coxeter::{CartanDatum, CartanType, WeylGroup};
use cellq_core::hecke::HeckeData;
use cellq_core::props::{run_suite, Status, SuiteConfig, SuiteInput};
use cellq_core::schur::{OrbitSpec, SchurAlgebra};
use cellq_core::{LaurentInt, RatFunc};
use num_traits::One;

const SEED: u64 = 11;

/// The instances of the conformance criterion: full parabolic multisets in
/// ranks one and two, three specs each for G2 and A3.
const INSTANCES: &[(CartanType, usize, &str)] = &[
    (CartanType::A, 1, "1;-"),
    (CartanType::A, 2, "1,2;1;2;-"),
    (CartanType::B, 2, "1,2;1;2;-"),
    (CartanType::G, 2, "1;2;-"),
    (CartanType::G, 2, "1,2;1;2;-"),
    (CartanType::G, 2, "1;1;-"),
    (CartanType::A, 3, "1;2;-"),
    (CartanType::A, 3, "1,2;2,3;-"),
    (CartanType::A, 3, "1,2,3;1,3;2"),
];

struct Built {
    name: String,
    hd: HeckeData,
    alg: SchurAlgebra,
    reps: RepData,
    datum: CellDatum,
}

fn hecke(kind: CartanType, rank: usize) -> HeckeData {
    HeckeData::build(WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap()).unwrap()
}

fn build(kind: CartanType, rank: usize, spec: &str) -> Built {
    let hd = hecke(kind, rank);
    let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse(spec, rank).unwrap()).unwrap();
    let reps = RepData::compute(&alg, SEED).unwrap();
    let datum = CellDatum::build(&alg, &reps, &RingSpec::Auto).unwrap();
    Built { name: format!("{kind:?}{rank} {spec}"), hd, alg, reps, datum }
}

fn laurent(lo: i64, coeffs: &[i64]) -> LaurentInt {
    LaurentInt::from_ints(lo, coeffs)
}

/// Writes past the test harness's output capture so the criterion lines
/// appear in every `cargo test` run.
macro_rules! report {
    ($($arg:tt)*) => {{
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, $($arg)*);
        let _ = out.flush();
    }};
}

/// Collects failure messages for one criterion.
#[derive(Default)]
struct Criterion {
    problems: Vec<String>,
}

impl Criterion {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }
}

fn micro_instance(c: &mut Criterion) {
    let start = Instant::now();
    let b = build(CartanType::A, 1, "1;-");
    let (alg, reps) = (&b.alg, &b.reps);
    let one = LaurentInt::one();
    let q_plus_inv = laurent(-1, &[1, 0, 1]);
    c.expect(alg.len() == 5, || format!("|Xi| = {}", alg.len()));
    c.expect(alg.distinguished() == [0, 3, 4], || format!("distinguished {:?}", alg.distinguished()));
    // (γ,e,ν) is the off-diagonal element from the parabolic orbit to the regular one
    let xi = alg.xi();
    let gamma_nu = (0..5).find(|&i| xi.get(i).row == 0 && xi.get(i).col == 1);
    c.expect(gamma_nu == Some(1), || format!("(γ,e,ν) at {gamma_nu:?}"));
    c.expect(alg.phi(1) == [(1, q_plus_inv.clone())], || format!("Phi((γ,e,ν)) = {:?}", alg.phi(1)));
    c.expect(alg.product(1, 2) == [(0, q_plus_inv.clone())], || format!("X2 X3 = {:?}", alg.product(1, 2)));
    c.expect(alg.product(2, 1) == [(4, one.clone())], || format!("X3 X2 = {:?}", alg.product(2, 1)));
    c.expect(reps.dims() == [2, 1], || format!("dims {:?}", reps.dims()));
    c.expect(reps.f_values() == [1, 1], || format!("f {:?}", reps.f_values()));
    let a: Vec<u32> = reps.invariants.iter().map(|i| i.a).collect();
    c.expect(a == [1, 0], || format!("a {a:?}"));
    let schur: Vec<&RatFunc> = reps.invariants.iter().map(|i| &i.schur_element).collect();
    let expected = [RatFunc::from_laurent(laurent(-2, &[1, 0, 1])), RatFunc::from_laurent(laurent(0, &[1, 0, 1]))];
    c.expect(schur == [&expected[0], &expected[1]], || format!("Schur elements {schur:?}"));
    match signed_canonical_check(&b.datum) {
        Ok(m) => c.expect(m.failures.is_empty() && m.all_positive() && m.matches.len() == 5, || {
            format!("cellular basis matches {:?}, failures {:?}", m.matches, m.failures)
        }),
        Err(e) => c.expect(false, || format!("signed comparison failed: {e}")),
    }
    let elapsed = start.elapsed();
    c.expect(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
}

fn hecke_degeneration(c: &mut Criterion) {
    for (kind, rank) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2)] {
        let hd = hecke(kind, rank);
        let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse("-", rank).unwrap()).unwrap();
        let g = &hd.group;
        let xi = alg.xi();
        c.expect(alg.len() == g.order(), || format!("{kind:?}{rank}: |Xi| = {}", alg.len()));
        let index: Vec<Option<usize>> = g.elements().map(|w| xi.find(0, 0, w)).collect();
        for x in g.elements() {
            for y in g.elements() {
                let (Some(a), Some(b)) = (index[x], index[y]) else {
                    c.expect(false, || format!("{kind:?}{rank}: element missing from the basis"));
                    return;
                };
                let mut ours: Vec<(usize, LaurentInt)> =
                    alg.product(a, b).iter().map(|(e, v)| (xi.get(*e).max_rep, v.clone())).collect();
                ours.sort_by_key(|p| p.0);
                c.expect(ours == hd.h.product(x, y), || {
                    format!("{kind:?}{rank}: {} * {} differs", g.word_string(x), g.word_string(y))
                });
            }
        }
    }
}

fn conformance(c: &mut Criterion, built: &[Built], elapsed: Duration) {
    let config = SuiteConfig::default();
    for b in built {
        let report = run_suite(
            &SuiteInput { hecke: &b.hd, alg: &b.alg, reps: &b.reps, cells: Some(&b.datum), regular: None },
            &config,
        );
        c.expect(report.mode == "exhaustive", || format!("{}: mode {}", b.name, report.mode));
        c.expect(report.checks.len() >= 15, || format!("{}: only {} checks", b.name, report.checks.len()));
        for check in report.failed() {
            c.expect(false, || format!("{}: {} failed, first witness {:?}", b.name, check.name, check.witnesses.first()));
        }
        let skipped = report.count(Status::Skipped);
        let passed = report.count(Status::Pass);
        report!("    {:<22} {passed} pass, {skipped} skipped", b.name);
    }
    c.expect(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"));
}

fn positivity(c: &mut Criterion, built: &[Built]) {
    for b in built {
        for x in 0..b.alg.len() {
            for y in 0..b.alg.len() {
                for (z, v) in b.alg.product(x, y) {
                    c.expect(v.is_nonneg(), || format!("{}: g({x},{y},{z}) = {v}", b.name));
                }
            }
        }
        for w in b.hd.group.elements() {
            for (x, p) in b.hd.kl.column(w) {
                c.expect(p.is_nonneg(), || format!("{}: P({x},{w}) = {p}", b.name));
            }
        }
    }
}

fn cellularity(c: &mut Criterion, built: &[Built]) {
    for b in built {
        let r = verify_axioms(&b.alg, &b.reps, &b.datum);
        c.expect(r.passed(), || {
            format!("{}: {:?}", b.name, [&r.independence, &r.involution, &r.multiplication, &r.round_trip, &r.support])
        });
        c.expect(r.products_checked > 0, || format!("{}: no products checked", b.name));
    }
}

fn schur_inclusion(c: &mut Criterion, built: &[Built]) {
    let mut regular: BTreeMap<(CartanType, usize), Vec<RatFunc>> = BTreeMap::new();
    for b in built.iter().filter(|b| b.alg.xi().spec().contains_regular()) {
        let datum = b.alg.datum();
        let hecke_elements = regular.entry((datum.kind(), datum.rank())).or_insert_with(|| {
            let alg = SchurAlgebra::build(&b.hd, &OrbitSpec::regular()).unwrap();
            RepData::compute(&alg, SEED).unwrap().invariants.into_iter().map(|i| i.schur_element).collect()
        });
        // multiset inclusion
        let mut available = hecke_elements.clone();
        for inv in &b.reps.invariants {
            match available.iter().position(|p| *p == inv.schur_element) {
                Some(i) => {
                    available.swap_remove(i);
                }
                None => c.expect(false, || format!("{}: {} is not a Hecke Schur element", b.name, inv.schur_element)),
            }
        }
    }
    c.expect(!regular.is_empty(), || "no instance contains the regular orbit".into());
}

fn left_cell_identity(c: &mut Criterion, built: &[Built]) {
    for b in built {
        let sums = b.reps.left_cell_sums();
        c.expect(sums.len() == b.alg.left_cells().len(), || format!("{}: {} sums", b.name, sums.len()));
        for (g, s) in sums.iter().enumerate() {
            c.expect(s.is_one(), || format!("{}: left cell {g} sums to {s}", b.name));
        }
    }
}

fn special_modules(c: &mut Criterion, built: &[Built]) {
    for b in built {
        let sm = match SpecialModules::compute(&b.alg) {
            Ok(sm) => sm,
            Err(e) => {
                c.expect(false, || format!("{}: {e}", b.name));
                continue;
            }
        };
        for g in 0..b.alg.left_cells().len() {
            let lines: Vec<_> = sm.lines.iter().filter(|l| l.left == g).collect();
            c.expect(!lines.is_empty(), || format!("{}: no line for left cell {g}", b.name));
            for l in lines {
                c.expect(!l.vector.is_empty() && l.vector.iter().all(|&(_, v)| v > 0), || {
                    format!("{}: line ({},{}) is not positive: {:?}", b.name, l.left, l.right, l.vector)
                });
            }
        }
        let failures = sm.verify(&b.alg);
        c.expect(failures.is_empty(), || format!("{}: {:?}", b.name, failures));
    }
}

fn specht_layer(c: &mut Criterion, built: &[Built]) {
    for b in built {
        for sp in [Specialization::generic(), Specialization::rational(1)] {
            match specialize(&b.alg, &b.reps, &b.datum, &sp) {
                Ok(d) => c.expect(d.is_identity() && d.lower_unitriangular, || {
                    format!("{} at {}: {:?}", b.name, sp.describe(), d.decomposition)
                }),
                Err(e) => c.expect(false, || format!("{} at {}: {e}", b.name, sp.describe())),
            }
        }
    }
    let b = build(CartanType::A, 1, "-");
    match specialize(&b.alg, &b.reps, &b.datum, &Specialization::root_of_unity(4)) {
        Ok(d) => c.expect(d.lower_unitriangular && !d.is_identity() && d.off_diagonal_entries() == 1, || {
            format!("A1 at q^2 = -1: {:?}", d.decomposition)
        }),
        Err(e) => c.expect(false, || format!("A1 at q^2 = -1: {e}")),
    }
}

fn cellq(args: &[&str], cache: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cellq")).args(args).env("CELLQ_CACHE", cache).output().expect("cellq runs")
}

fn read_dir_sorted(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

fn determinism_and_caching(c: &mut Criterion) {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let run = |out: &str, cache: &str| {
        let out_dir = root.join(out);
        let o = cellq(
            &[
                "pipeline", "--type", "B", "--rank", "2", "--orbits", "1,2;1;2;-", "--specialize", "generic",
                "--specialize", "Q@1", "--specialize", "Fp:3@1", "--out-dir", out_dir.to_str().unwrap(),
            ],
            &root.join(cache),
        );
        (o, read_dir_sorted(&out_dir))
    };
    let (first, a) = run("out1", "cache1");
    let (second, b) = run("out2", "cache2");
    let (third, cached) = run("out3", "cache1");
    for (i, o) in [&first, &second, &third].into_iter().enumerate() {
        c.expect(o.status.code() == Some(0), || {
            format!("run {} exited {:?}: {}", i + 1, o.status.code(), String::from_utf8_lossy(&o.stderr))
        });
    }
    c.expect(a.len() >= 8, || format!("only {} artifacts", a.len()));
    c.expect(a == b, || "fresh runs differ".into());
    c.expect(a == cached, || "cached run differs".into());
    let log = |o: &std::process::Output| String::from_utf8_lossy(&o.stderr).into_owned();
    c.expect(log(&first).contains("hits=0 "), || format!("first run log: {}", log(&first)));
    c.expect(log(&third).contains(" misses=0"), || format!("cached run log: {}", log(&third)));
    c.expect(!log(&third).contains("hits=0 "), || format!("cached run log: {}", log(&third)));
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let built: Vec<Built> = INSTANCES.iter().map(|&(k, r, s)| build(k, r, s)).collect();
    let build_time = start.elapsed();

    let mut results: Vec<(usize, &str, Criterion)> = Vec::new();
    let mut run = |n: usize, name: &'static str, f: &dyn Fn(&mut Criterion)| {
        let mut c = Criterion::default();
        f(&mut c);
        let status = if c.problems.is_empty() { "PASS" } else { "FAIL" };
        report!("criterion {n:>2} {name:<34} {status}");
        for p in c.problems.iter().take(5) {
            report!("    {p}");
        }
        results.push((n, name, c));
    };
    report!();
    run(1, "micro-instance ground truth", &micro_instance);
    run(2, "Hecke degeneration", &hecke_degeneration);
    run(3, "conformance suite", &|c| {
        let t = Instant::now();
        conformance(c, &built, build_time + t.elapsed());
    });
    run(4, "positivity", &|c| positivity(c, &built));
    run(5, "cellularity", &|c| cellularity(c, &built));
    run(6, "Schur-element inclusion", &|c| schur_inclusion(c, &built));
    run(7, "left-cell identity", &|c| left_cell_identity(c, &built));
    run(8, "special modules", &|c| special_modules(c, &built));
    run(9, "Specht layer", &|c| specht_layer(c, &built));
    run(10, "determinism and caching", &determinism_and_caching);

    let failed: Vec<usize> = results.iter().filter(|r| !r.2.problems.is_empty()).map(|r| r.0).collect();
    report!("acceptance: {}/{} criteria pass in {:?}", results.len() - failed.len(), results.len(), start.elapsed());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
