//! Conformance suite: machine checks of the cell properties, the
//! asymptotic-algebra identities and the representation-theoretic
//! identities, collected into a deterministic report.

mod asymptotic;
mod cells;
mod reps;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asym::RepData;
use crate::cellular::{CellDatum, RingSpec};
use crate::hecke::HeckeData;
use crate::schur::{OrbitSpec, SchurAlgebra};

pub const REPORT_SCHEMA: &str = "cellq.props/1";
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 150;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed_ce11;
const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// A reproducible counterexample: basis labels plus the offending values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    /// Number of quantifier instances examined.
    pub cases: u64,
    pub failures: u64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall-clock time, omitted from reports unless timing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl CheckOutcome {
    fn from_failures(cases: u64, failures: Vec<Witness>) -> Self {
        let count = failures.len() as u64;
        CheckOutcome {
            name: String::new(),
            status: if count == 0 { Status::Pass } else { Status::Fail },
            cases,
            failures: count,
            witnesses: failures.into_iter().take(MAX_WITNESSES).collect(),
            note: None,
            millis: None,
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        CheckOutcome {
            name: String::new(),
            status: Status::Skipped,
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
            note: Some(reason.into()),
            millis: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub cartan: String,
    pub orbits: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub schema: String,
    pub instance: InstanceInfo,
    /// `exhaustive` or `sampled`.
    pub mode: String,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} [{}] |Ξ| = {} ({}, seed {})\n",
            self.instance.cartan, self.instance.orbits, self.instance.size, self.mode, self.seed
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("  {tag}  {:width$}  {:>9} cases", c.name, c.cases));
            if let Some(ms) = c.millis {
                out.push_str(&format!("  {ms} ms"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("  ({n})"));
            }
            out.push('\n');
            for w in &c.witnesses {
                out.push_str(&format!("        {}: {}\n", w.indices.join(" "), w.detail));
            }
        }
        out.push_str(&format!(
            "  {} passed, {} failed, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Largest `|Ξ|` for which every quantifier range is enumerated.
    pub exhaustive_limit: usize,
    /// Tuples drawn per check above the limit.
    pub samples: usize,
    pub seed: u64,
    /// Record per-check wall-clock times (makes the report nondeterministic).
    pub timing: bool,
    /// Restrict to these check names; empty runs every check.
    pub only: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            timing: false,
            only: Vec::new(),
        }
    }
}

/// Everything the checks read. Optional parts are computed on demand.
pub struct SuiteInput<'a> {
    pub hecke: &'a HeckeData,
    pub alg: &'a SchurAlgebra,
    pub reps: &'a RepData,
    pub cells: Option<&'a CellDatum>,
    /// Representations of the Hecke algebra itself, for comparing Schur elements.
    pub regular: Option<&'a RepData>,
}

/// Enumerates quantifier ranges, or samples them with a fixed seed once the
/// instance is too large.
pub(crate) struct Domain {
    n: usize,
    exhaustive: bool,
    samples: usize,
    seed: u64,
}

impl Domain {
    fn rng(&self, salt: &str) -> ChaCha8Rng {
        let mix = salt.bytes().fold(self.seed, |h, b| h.rotate_left(7) ^ u64::from(b).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        ChaCha8Rng::seed_from_u64(mix)
    }

    pub(crate) fn all(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    pub(crate) fn pairs(&self, salt: &str) -> Vec<(usize, usize)> {
        let n = self.n;
        if self.exhaustive || n * n <= self.samples {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            let mut rng = self.rng(salt);
            (0..self.samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        }
    }

    pub(crate) fn triples(&self, salt: &str) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        if self.exhaustive || n * n * n <= self.samples {
            (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect()
        } else {
            let mut rng = self.rng(salt);
            (0..self.samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        }
    }
}

/// Runs `f` on every item in parallel; `None` means the case holds.
pub(crate) fn scan<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<Witness> + Sync) -> CheckOutcome {
    let failures: Vec<Witness> = items.par_iter().filter_map(&f).collect();
    CheckOutcome::from_failures(items.len() as u64, failures)
}

pub(crate) fn witness(indices: Vec<String>, detail: impl Into<String>) -> Witness {
    Witness { indices, detail: detail.into() }
}

pub(crate) struct Ctx<'a> {
    pub hd: &'a HeckeData,
    pub alg: &'a SchurAlgebra,
    pub reps: &'a RepData,
    pub cells: Option<&'a CellDatum>,
    pub regular: Option<&'a RepData>,
    pub dom: Domain,
}

impl Ctx<'_> {
    pub(crate) fn label(&self, c: usize) -> String {
        self.alg.xi().label(&self.hd.group, c)
    }

    pub(crate) fn labels(&self, cs: &[usize]) -> Vec<String> {
        cs.iter().map(|&c| self.label(c)).collect()
    }

    /// Triples `(x, y, z)` with `col x = row y` and `col y = row z`, the
    /// only ones whose triple products can be nonzero.
    pub(crate) fn chains(&self, salt: &str) -> Vec<(usize, usize, usize)> {
        let alg = self.alg;
        let xi = alg.xi();
        let k = xi.n_orbits();
        let after = |x: usize| -> Vec<usize> { (0..k).flat_map(|o| xi.block(alg.col(x), o).iter().copied()).collect() };
        if self.dom.exhaustive {
            return (0..self.dom.n)
                .flat_map(|x| {
                    let ys = after(x);
                    ys.into_iter().flat_map(move |y| after(y).into_iter().map(move |z| (x, y, z)))
                })
                .collect();
        }
        let mut rng = self.dom.rng(salt);
        (0..self.dom.samples)
            .map(|_| {
                let x = rng.gen_range(0..self.dom.n);
                let ys = after(x);
                let y = ys[rng.gen_range(0..ys.len())];
                let zs = after(y);
                (x, y, zs[rng.gen_range(0..zs.len())])
            })
            .collect()
    }
}

type CheckFn = fn(&Ctx) -> CheckOutcome;

/// Every check in report order.
pub fn check_names() -> Vec<&'static str> {
    registry().into_iter().map(|(n, _)| n).collect()
}

fn registry() -> Vec<(&'static str, CheckFn)> {
    let mut out: Vec<(&'static str, CheckFn)> = Vec::new();
    out.extend_from_slice(cells::CHECKS);
    out.extend_from_slice(asymptotic::CHECKS);
    out.extend_from_slice(reps::CHECKS);
    out
}

pub fn run_suite(input: &SuiteInput, config: &SuiteConfig) -> PropertyReport {
    let alg = input.alg;
    let n = alg.len();
    let exhaustive = n <= config.exhaustive_limit;

    // Optional inputs are only built when the caller did not supply them.
    let owned_cells = match input.cells {
        Some(_) => None,
        None => CellDatum::build(alg, input.reps, &RingSpec::Auto).ok(),
    };
    let owned_regular = match input.regular {
        Some(_) => None,
        None if *alg.xi().spec() == OrbitSpec::regular() => None,
        None => SchurAlgebra::build(input.hecke, &OrbitSpec::regular())
            .and_then(|r| RepData::compute(&r, input.reps.seed))
            .ok(),
    };
    let regular = input.regular.or(owned_regular.as_ref()).or_else(|| {
        (*alg.xi().spec() == OrbitSpec::regular()).then_some(input.reps)
    });

    let ctx = Ctx {
        hd: input.hecke,
        alg,
        reps: input.reps,
        cells: input.cells.or(owned_cells.as_ref()),
        regular,
        dom: Domain { n, exhaustive, samples: config.samples, seed: config.seed },
    };
    let selected: Vec<(&'static str, CheckFn)> = registry()
        .into_iter()
        .filter(|(name, _)| config.only.is_empty() || config.only.iter().any(|o| o == name))
        .collect();
    let checks = selected
        .par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let mut out = f(&ctx);
            out.name = (*name).to_string();
            if config.timing {
                out.millis = Some(start.elapsed().as_millis() as u64);
            }
            out
        })
        .collect();

    PropertyReport {
        schema: REPORT_SCHEMA.to_string(),
        instance: InstanceInfo { cartan: alg.datum().to_string(), orbits: alg.xi().spec().to_string(), size: n },
        mode: if exhaustive { "exhaustive" } else { "sampled" }.to_string(),
        samples: if exhaustive { 0 } else { config.samples },
        seed: config.seed,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType, WeylGroup};

    fn run(kind: CartanType, rank: usize, spec: &str, config: &SuiteConfig) -> PropertyReport {
        let g = WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap();
        let hd = HeckeData::build(g).unwrap();
        let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse(spec, rank).unwrap()).unwrap();
        let reps = RepData::compute(&alg, 11).unwrap();
        run_suite(&SuiteInput { hecke: &hd, alg: &alg, reps: &reps, cells: None, regular: None }, config)
    }

    #[test]
    fn rank_one_instance_passes_everything() {
        let report = run(CartanType::A, 1, "1;-", &SuiteConfig::default());
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.checks.len(), check_names().len());
        assert_eq!(report.mode, "exhaustive");
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(CartanType::A, 2, "1;-", &SuiteConfig::default()).to_json();
        let b = run(CartanType::A, 2, "1;-", &SuiteConfig::default()).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn sampling_kicks_in_above_the_limit() {
        let config = SuiteConfig { exhaustive_limit: 3, samples: 50, ..SuiteConfig::default() };
        let report = run(CartanType::A, 1, "1;-", &config);
        assert_eq!(report.mode, "sampled");
        assert!(report.passed(), "{}", report.to_text());
        let assoc = report.checks.iter().find(|c| c.name == "canonical_product_associative").unwrap();
        assert_eq!(assoc.cases, 50);
    }

    #[test]
    fn names_are_unique() {
        let mut names = check_names();
        let total = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), total);
        assert!(total >= 15);
    }
}
