//! On-disk artifact formats. Every artifact names its schema, the engine
//! version and the instance it was computed for.

use std::fs;
use std::path::Path;

use cellq_core::asym::{RepData, SpecialModules};
use cellq_core::cellular::{CellDatum, RingSpec, SpechtData};
use cellq_core::hecke::{HeckeData, KlTable};
use cellq_core::schur::SchurAlgebra;
use cellq_core::LaurentInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cache::ENGINE_VERSION;
use crate::config::Instance;
use crate::error::{CliError, Result};

pub const ALG_SCHEMA: &str = "cellq.alg/1";
pub const REPS_SCHEMA: &str = "cellq.reps/1";
pub const SPECIAL_SCHEMA: &str = "cellq.special/1";
pub const DATUM_SCHEMA: &str = "cellq.datum/1";
pub const SPECHT_SCHEMA: &str = "cellq.specht/1";
pub const HECKE_SCHEMA: &str = "cellq.hecke/1";
pub const MULTI_REPORT_SCHEMA: &str = "cellq.report/1";

/// Pretty JSON with a trailing newline.
pub fn to_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("artifacts serialize");
    out.push(b'\n');
    out
}

/// Reads an artifact, returning its raw bytes alongside the parsed value.
pub fn read<T: DeserializeOwned>(path: &Path) -> Result<(Vec<u8>, T)> {
    let bytes = fs::read(path).map_err(CliError::io(path))?;
    let value =
        serde_json::from_slice(&bytes).map_err(|source| CliError::Artifact { path: path.to_path_buf(), source })?;
    Ok((bytes, value))
}

pub fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
    }
    fs::write(path, bytes).map_err(CliError::io(path))
}

pub fn check_schema(path: &Path, found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{}: schema {found}, expected {expected}", path.display())))
    }
}

/// Headline numbers of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgSummary {
    pub group_order: usize,
    pub size: usize,
    pub left_cells: usize,
    pub right_cells: usize,
    pub two_sided_cells: usize,
    pub distinguished: Vec<String>,
    /// Basis labels in index order.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgArtifact {
    pub schema: String,
    pub engine: String,
    pub instance: Instance,
    pub summary: AlgSummary,
    pub algebra: SchurAlgebra,
}

impl AlgArtifact {
    pub fn new(instance: &Instance, hd: &HeckeData, alg: &SchurAlgebra) -> Self {
        let labels: Vec<String> = (0..alg.len()).map(|i| alg.xi().label(&hd.group, i)).collect();
        AlgArtifact {
            schema: ALG_SCHEMA.into(),
            engine: ENGINE_VERSION.into(),
            instance: instance.clone(),
            summary: AlgSummary {
                group_order: hd.group.order(),
                size: alg.len(),
                left_cells: alg.left_cells().len(),
                right_cells: alg.right_cells().len(),
                two_sided_cells: alg.two_sided_cells().len(),
                distinguished: alg.distinguished().iter().map(|&d| labels[d].clone()).collect(),
                labels,
            },
            algebra: alg.clone(),
        }
    }

    pub fn into_algebra(self) -> SchurAlgebra {
        let mut alg = self.algebra;
        alg.reindex();
        alg
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepsArtifact {
    pub schema: String,
    pub engine: String,
    pub instance: Instance,
    pub seed: u64,
    pub reps: RepData,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecialArtifact {
    pub schema: String,
    pub engine: String,
    pub instance: Instance,
    pub modules: SpecialModules,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumArtifact {
    pub schema: String,
    pub engine: String,
    pub instance: Instance,
    pub seed: u64,
    pub ring: RingSpec,
    pub datum: CellDatum,
}

impl DatumArtifact {
    pub fn into_datum(self) -> CellDatum {
        let mut d = self.datum;
        d.reindex();
        d
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpechtArtifact {
    pub schema: String,
    pub engine: String,
    pub instance: Instance,
    pub specialization: String,
    pub decomposition: SpechtData,
}

/// The group-level tables: KL polynomials and KL-basis structure constants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeArtifact {
    pub schema: String,
    pub engine: String,
    #[serde(rename = "type")]
    pub cartan: String,
    pub rank: usize,
    pub order: usize,
    /// Reduced words in ShortLex normal form, by element index.
    pub words: Vec<String>,
    pub kl: KlTable,
    /// `h[x][y]` lists `(z, h_{x,y}^z)`.
    pub h: Vec<Vec<Vec<(usize, LaurentInt)>>>,
}

impl HeckeArtifact {
    pub fn new(hd: &HeckeData) -> Self {
        let g = &hd.group;
        HeckeArtifact {
            schema: HECKE_SCHEMA.into(),
            engine: ENGINE_VERSION.into(),
            cartan: g.datum().kind().to_string(),
            rank: g.rank(),
            order: g.order(),
            words: g.elements().map(|w| g.word_string(w)).collect(),
            kl: hd.kl.clone(),
            h: g.elements().map(|x| g.elements().map(|y| hd.h.product(x, y).to_vec()).collect()).collect(),
        }
    }
}
