//! Lazily evaluated pipeline stages over one instance. Each stage artifact
//! is looked up in the cache first; intermediate objects are built only when
//! a missing artifact needs them.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use cellq_core::asym::{RepData, SpecialModules};
use cellq_core::cellular::{specialize, CellDatum, RingSpec};
use cellq_core::coxeter::WeylGroup;
use cellq_core::hecke::HeckeData;
use cellq_core::props::{run_suite, PropertyReport, SuiteConfig, SuiteInput};
use cellq_core::schur::SchurAlgebra;
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::artifact::{
    to_bytes, AlgArtifact, DatumArtifact, RepsArtifact, SpecialArtifact, SpechtArtifact, ALG_SCHEMA, DATUM_SCHEMA,
    REPS_SCHEMA, SPECHT_SCHEMA, SPECIAL_SCHEMA,
};
use crate::cache::{self, Cache, ENGINE_VERSION};
use crate::config::{Instance, NamedSpecialization};
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
}

pub struct Session {
    pub instance: Instance,
    pub seed: u64,
    pub ring: RingSpec,
    cache: Option<Cache>,
    verbosity: u8,
    hits: AtomicUsize,
    misses: AtomicUsize,
    hecke: OnceLock<HeckeData>,
    alg: OnceLock<SchurAlgebra>,
    alg_summary: OnceLock<AlgArtifact>,
    reps: OnceLock<RepData>,
    datum: OnceLock<CellDatum>,
    /// SHA-256 of the stage artifacts feeding later cache keys.
    alg_digest: OnceLock<String>,
    reps_digest: OnceLock<String>,
    datum_digest: OnceLock<String>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn init<T>(cell: &OnceLock<T>, make: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = make()?;
    Ok(cell.get_or_init(|| v))
}

impl Session {
    pub fn new(instance: Instance, seed: u64, ring: RingSpec, cache: Option<Cache>, verbosity: u8) -> Self {
        Session {
            instance,
            seed,
            ring,
            cache,
            verbosity,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            hecke: OnceLock::new(),
            alg: OnceLock::new(),
            alg_summary: OnceLock::new(),
            reps: OnceLock::new(),
            datum: OnceLock::new(),
            alg_digest: OnceLock::new(),
            reps_digest: OnceLock::new(),
            datum_digest: OnceLock::new(),
        }
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats { hits: self.hits.load(Ordering::Relaxed), misses: self.misses.load(Ordering::Relaxed) }
    }

    pub fn log(&self, level: u8, msg: impl AsRef<str>) {
        if self.verbosity >= level {
            eprintln!("cellq: {}", msg.as_ref());
        }
    }

    /// Supplies an algebra artifact read from disk.
    pub fn provide_alg(&self, bytes: &[u8], artifact: AlgArtifact) {
        let _ = self.alg_digest.set(digest(bytes));
        let _ = self.alg.set(artifact.clone().into_algebra());
        let _ = self.alg_summary.set(artifact);
    }

    pub fn provide_reps(&self, bytes: &[u8], reps: RepData) {
        let _ = self.reps_digest.set(digest(bytes));
        let _ = self.reps.set(reps);
    }

    pub fn provide_datum(&self, bytes: &[u8], datum: CellDatum) {
        let _ = self.datum_digest.set(digest(bytes));
        let _ = self.datum.set(datum);
    }

    fn alg_digest(&self) -> Result<&String> {
        init(&self.alg_digest, || Ok(digest(&self.alg_bytes()?)))
    }

    fn reps_digest(&self) -> Result<&String> {
        init(&self.reps_digest, || Ok(digest(&self.reps_bytes()?)))
    }

    fn datum_digest(&self) -> Result<&String> {
        init(&self.datum_digest, || Ok(digest(&self.datum_bytes()?)))
    }

    /// Remembers the digest of freshly produced stage bytes so later keys
    /// need not fetch them again.
    fn noted(cell: &OnceLock<String>, bytes: Vec<u8>) -> Vec<u8> {
        let _ = cell.set(digest(&bytes));
        bytes
    }

    fn stage<P: Serialize>(&self, stage: &str, params: &P, compute: impl FnOnce() -> Result<Vec<u8>>) -> Result<Vec<u8>> {
        let key = cache::key(&self.instance, stage, params);
        if let Some(bytes) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            self.log(1, format!("{stage}: cache hit {}", &key[..12]));
            return Ok(bytes);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        self.log(1, format!("{stage}: computing"));
        let bytes = compute()?;
        if let Some(c) = &self.cache {
            c.put(&key, &bytes)?;
        }
        Ok(bytes)
    }

    fn parse<T: DeserializeOwned>(&self, stage: &str, bytes: &[u8]) -> Result<T> {
        serde_json::from_slice(bytes)
            .map_err(|source| CliError::CorruptCache { key: format!("{} {stage}", self.instance), source })
    }

    pub fn hecke(&self) -> Result<&HeckeData> {
        init(&self.hecke, || {
            self.log(1, "hecke: computing");
            let g = WeylGroup::new(self.instance.datum()?).map_err(CliError::stage("hecke"))?;
            HeckeData::build(g).map_err(CliError::stage("hecke"))
        })
    }

    pub fn alg_bytes(&self) -> Result<Vec<u8>> {
        let bytes = self.stage("alg", &(), || {
            let hd = self.hecke()?;
            let alg = init(&self.alg, || {
                SchurAlgebra::build(hd, &self.instance.spec()?).map_err(CliError::stage("build"))
            })?;
            let artifact = AlgArtifact::new(&self.instance, hd, alg);
            let bytes = to_bytes(&artifact);
            let _ = self.alg_summary.set(artifact);
            Ok(bytes)
        })?;
        Ok(Self::noted(&self.alg_digest, bytes))
    }

    fn alg_artifact(&self) -> Result<&AlgArtifact> {
        init(&self.alg_summary, || {
            let a: AlgArtifact = self.parse("alg", &self.alg_bytes()?)?;
            debug_assert_eq!(a.schema, ALG_SCHEMA);
            Ok(a)
        })
    }

    pub fn alg(&self) -> Result<&SchurAlgebra> {
        init(&self.alg, || Ok(self.alg_artifact()?.clone().into_algebra()))
    }

    pub fn reps_bytes(&self) -> Result<Vec<u8>> {
        let bytes = self.stage("reps", &(self.seed, self.alg_digest()?), || {
            let alg = self.alg()?;
            let reps = init(&self.reps, || RepData::compute(alg, self.seed).map_err(CliError::stage("reps")))?;
            Ok(to_bytes(&RepsArtifact {
                schema: REPS_SCHEMA.into(),
                engine: ENGINE_VERSION.into(),
                instance: self.instance.clone(),
                seed: self.seed,
                reps: reps.clone(),
            }))
        })?;
        Ok(Self::noted(&self.reps_digest, bytes))
    }

    pub fn reps(&self) -> Result<&RepData> {
        init(&self.reps, || {
            let a: RepsArtifact = self.parse("reps", &self.reps_bytes()?)?;
            Ok(a.reps)
        })
    }

    pub fn special_bytes(&self) -> Result<Vec<u8>> {
        self.stage("special", self.alg_digest()?, || {
            let modules = SpecialModules::compute(self.alg()?).map_err(CliError::stage("special"))?;
            Ok(to_bytes(&SpecialArtifact {
                schema: SPECIAL_SCHEMA.into(),
                engine: ENGINE_VERSION.into(),
                instance: self.instance.clone(),
                modules,
            }))
        })
    }

    pub fn datum_bytes(&self) -> Result<Vec<u8>> {
        let bytes = self.stage("cellbasis", &(&self.ring, self.alg_digest()?, self.reps_digest()?), || {
            let (alg, reps) = (self.alg()?, self.reps()?);
            let datum =
                init(&self.datum, || CellDatum::build(alg, reps, &self.ring).map_err(CliError::stage("cellbasis")))?;
            Ok(to_bytes(&DatumArtifact {
                schema: DATUM_SCHEMA.into(),
                engine: ENGINE_VERSION.into(),
                instance: self.instance.clone(),
                seed: self.seed,
                ring: self.ring.clone(),
                datum: datum.clone(),
            }))
        })?;
        Ok(Self::noted(&self.datum_digest, bytes))
    }

    pub fn datum(&self) -> Result<&CellDatum> {
        init(&self.datum, || {
            let a: DatumArtifact = self.parse("cellbasis", &self.datum_bytes()?)?;
            Ok(a.into_datum())
        })
    }

    /// Runs the property suite; the report does not depend on the ring.
    pub fn verify_bytes(&self, suite: &SuiteConfig) -> Result<(Vec<u8>, bool)> {
        let bytes = self.stage("verify", &(suite, self.alg_digest()?, self.reps_digest()?), || {
            let (hd, alg, reps) = (self.hecke()?, self.alg()?, self.reps()?);
            let cells = match &self.ring {
                RingSpec::Auto => Some(self.datum()?),
                RingSpec::Invert(_) => None,
            };
            let report = run_suite(&SuiteInput { hecke: hd, alg, reps, cells, regular: None }, suite);
            Ok(report.to_json().into_bytes())
        })?;
        let report: PropertyReport = self.parse("verify", &bytes)?;
        Ok((bytes, report.passed()))
    }

    pub fn specht_bytes(&self, sp: &NamedSpecialization) -> Result<Vec<u8>> {
        self.stage("specialize", &(&sp.spec, self.alg_digest()?, self.reps_digest()?, self.datum_digest()?), || {
            let decomposition = specialize(self.alg()?, self.reps()?, self.datum()?, &sp.spec)
                .map_err(CliError::stage("specialize"))?;
            Ok(to_bytes(&SpechtArtifact {
                schema: SPECHT_SCHEMA.into(),
                engine: ENGINE_VERSION.into(),
                instance: self.instance.clone(),
                specialization: sp.spec.describe(),
                decomposition,
            }))
        })
    }

    /// Human-readable overview; reads only stage artifacts.
    pub fn summary(&self, verdict: Option<bool>, specht: &[SpechtArtifact]) -> Result<String> {
        use std::fmt::Write;
        let a = self.alg_artifact()?;
        let s = &a.summary;
        let reps = self.reps()?;
        let mut out = String::new();
        let _ = writeln!(out, "instance      {}", self.instance);
        let _ = writeln!(out, "|W|           {}", s.group_order);
        let _ = writeln!(out, "|Xi|          {}", s.size);
        let _ = writeln!(out, "cells         {} left, {} right, {} two-sided", s.left_cells, s.right_cells, s.two_sided_cells);
        let _ = writeln!(out, "distinguished {}", s.distinguished.join(" "));
        let _ = writeln!(out, "families      {}", reps.families.len());
        let _ = writeln!(out, "bad primes    {:?}", reps.bad_primes);
        let _ = writeln!(out, "irreps");
        let _ = writeln!(out, "  {:<8} {:>6} {:>3} {:>4} {:>4}  schur element", "label", "family", "d", "f", "a");
        for (rep, inv) in reps.irreps.iter().zip(&reps.invariants) {
            let _ = writeln!(
                out,
                "  {:<8} {:>6} {:>3} {:>4} {:>4}  {}",
                rep.label, rep.family, rep.dim, inv.f, inv.a, inv.schur_element
            );
        }
        for sp in specht {
            let _ = writeln!(out, "decomposition at {}", sp.specialization);
            out.push_str(&sp.decomposition.table());
        }
        if let Some(v) = verdict {
            let _ = writeln!(out, "verification  {}", if v { "pass" } else { "FAIL" });
        }
        Ok(out)
    }
}
