//! Run configuration, validated in full before any computation starts.

use std::path::PathBuf;

use cellq_core::cellular::{RingSpec, Specialization};
use cellq_core::coxeter::{CartanDatum, CartanType};
use cellq_core::props::{self, SuiteConfig};
use cellq_core::schur::OrbitSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The `(type, rank, orbit spec)` triple identifying one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(rename = "type")]
    pub cartan: CartanType,
    pub rank: usize,
    pub orbits: String,
}

impl Instance {
    /// Parses and normalizes, so equal algebras get equal descriptors.
    pub fn new(cartan: &str, rank: usize, orbits: &str) -> Result<Self> {
        let cartan: CartanType = cartan.parse().map_err(CliError::Config)?;
        let inst = Instance { cartan, rank, orbits: orbits.to_string() };
        inst.datum()?;
        let spec = inst.spec()?;
        Ok(Instance { orbits: spec.to_string(), ..inst })
    }

    /// Parses `TYPE RANK:ORBITS`, e.g. `A2:1,2;1;2;-`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("instance '{text}' is not of the form TYPE RANK:ORBITS, e.g. A2:1;-"));
        let (head, orbits) = text.split_once(':').ok_or_else(bad)?;
        let head = head.trim();
        let split = head.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?;
        let rank = head[split..].parse().map_err(|_| bad())?;
        Instance::new(&head[..split], rank, orbits)
    }

    pub fn datum(&self) -> Result<CartanDatum> {
        CartanDatum::new(self.cartan, self.rank).map_err(CliError::Config)
    }

    pub fn spec(&self) -> Result<OrbitSpec> {
        OrbitSpec::parse(&self.orbits, self.rank).map_err(CliError::Config)
    }
}

impl std::fmt::Display for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}:{}", self.cartan, self.rank, self.orbits)
    }
}

/// Options of the property suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropsOptions {
    /// `all` or a comma-separated list of check names.
    pub select: String,
    pub exhaustive_limit: usize,
    pub samples: usize,
}

impl Default for PropsOptions {
    fn default() -> Self {
        PropsOptions {
            select: "all".into(),
            exhaustive_limit: props::DEFAULT_EXHAUSTIVE_LIMIT,
            samples: props::DEFAULT_SAMPLES,
        }
    }
}

impl PropsOptions {
    pub fn suite(&self, seed: u64) -> Result<SuiteConfig> {
        let known = props::check_names();
        let only: Vec<String> = match self.select.trim() {
            "all" => Vec::new(),
            list => list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        };
        if let Some(bad) = only.iter().find(|s| !known.contains(&s.as_str())) {
            return Err(CliError::Usage(format!("unknown property check '{bad}'")));
        }
        Ok(SuiteConfig { exhaustive_limit: self.exhaustive_limit, samples: self.samples, seed, timing: false, only })
    }
}

/// Everything a pipeline run depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub cartan: String,
    pub rank: usize,
    pub orbits: String,
    /// `auto`, `Z` or `invert:p,q,...`.
    #[serde(default = "default_ring")]
    pub ring: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub verbosity: u8,
    #[serde(default)]
    pub props: PropsOptions,
    /// Entries `FIELD@Q`, e.g. `generic`, `Q@1`, `Fp:5@2`, `cyclotomic:4@zeta`.
    #[serde(default = "default_specializations")]
    pub specializations: Vec<String>,
}

fn default_ring() -> String {
    "auto".into()
}

fn default_seed() -> u64 {
    props::DEFAULT_SEED
}

pub fn default_specializations() -> Vec<String> {
    vec!["generic".into(), "Q@1".into()]
}

/// A parsed `FIELD@Q` specialization together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSpecialization {
    pub text: String,
    pub spec: Specialization,
}

impl NamedSpecialization {
    pub fn parse(text: &str) -> Result<Self> {
        let spec = match text.split_once('@') {
            None if text == "generic" => Specialization::generic(),
            None => return Err(CliError::Usage(format!("specialization '{text}' needs the form FIELD@Q"))),
            Some((field, q)) => Specialization::parse(field, q).map_err(CliError::Config)?,
        };
        Ok(NamedSpecialization { text: text.to_string(), spec })
    }

    /// File-name fragment.
    pub fn slug(&self) -> String {
        let s: String = self.text.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '-' }).collect();
        s.trim_matches('-').to_string()
    }
}

/// A validated [`RunConfig`].
#[derive(Clone, Debug)]
pub struct Resolved {
    pub instance: Instance,
    pub ring: RingSpec,
    pub seed: u64,
    pub suite: SuiteConfig,
    pub specializations: Vec<NamedSpecialization>,
}

impl RunConfig {
    pub fn new(cartan: &str, rank: usize, orbits: &str) -> Self {
        RunConfig {
            cartan: cartan.into(),
            rank,
            orbits: orbits.into(),
            ring: default_ring(),
            seed: default_seed(),
            cache_dir: None,
            out_dir: None,
            verbosity: 0,
            props: PropsOptions::default(),
            specializations: default_specializations(),
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn resolve(&self) -> Result<Resolved> {
        Ok(Resolved {
            instance: Instance::new(&self.cartan, self.rank, &self.orbits)?,
            ring: RingSpec::parse(&self.ring).map_err(CliError::Config)?,
            seed: self.seed,
            suite: self.props.suite(self.seed)?,
            specializations: self.specializations.iter().map(|s| NamedSpecialization::parse(s)).collect::<Result<_>>()?,
        })
    }
}
