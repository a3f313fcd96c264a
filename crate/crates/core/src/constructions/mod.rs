//! End-to-end constructions of the surfaces W: the Hirzebruch double-cover
//! route for the E-types and the K3 double-plane route for the Z/W types.

mod en;
mod zw;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::check::{Check, Checklist};
use crate::curves::families::FamilyError;
use crate::graphs::{lookup, CatalogEntry, ConfigError, ConfigSpec, FiberType};
use crate::lattice::{DivisorClass, LatticeError, SurfaceModel};

pub use en::{k_section, run_en_pipeline};
pub use zw::run_zw_pipeline;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("fibre variant {fiber} is not allowed for {ty}")]
    IllegalFiber { ty: SingularityType, fiber: String },
    #[error("T2,3,n resolution supports n = 6 or 7, got {0}")]
    UnsupportedTIndex(u32),
    #[error("{0} is handled by the other pipeline")]
    WrongPipeline(SingularityType),
    #[error("base surface has no branch class rule")]
    UnsupportedBase,
    #[error("unknown singularity type {0:?}")]
    UnknownType(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SingularityType {
    E12,
    E13,
    E14,
    Z11,
    Z12,
    Z13,
    W12,
    W13,
}

impl SingularityType {
    pub const ALL: [Self; 8] = [Self::E12, Self::E13, Self::E14, Self::Z11, Self::Z12, Self::Z13, Self::W12, Self::W13];

    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Self::E12 => "E12",
            Self::E13 => "E13",
            Self::E14 => "E14",
            Self::Z11 => "Z11",
            Self::Z12 => "Z12",
            Self::Z13 => "Z13",
            Self::W12 => "W12",
            Self::W13 => "W13",
        }
    }

    #[must_use]
    pub fn is_e_type(self) -> bool {
        matches!(self, Self::E12 | Self::E13 | Self::E14)
    }

    #[must_use]
    pub fn catalog_entry(self) -> &'static CatalogEntry {
        lookup(self.label()).expect("every type is in the catalog")
    }

    /// Fibre variants the second singular fibre may take.
    #[must_use]
    pub fn allowed_fibers(self) -> &'static [FiberType] {
        match self {
            Self::E13 => &[FiberType::I(2), FiberType::I(3), FiberType::III, FiberType::IV],
            Self::E14 => &[FiberType::I(3), FiberType::I(4)],
            _ => &[],
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SingularityType {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.label() == s.trim())
            .ok_or_else(|| ConstructionError::UnknownType(s.to_string()))
    }
}

/// Which sextic family to verify alongside a Z/W run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySelection {
    pub row: String,
    pub variant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineSpec {
    pub ty: SingularityType,
    /// n of the T2,3,n point on the branch curve (E-types).
    pub t_index: u32,
    pub fiber: Option<FiberType>,
    /// Declared exceptional configuration; defaults to the catalog graph.
    pub exceptional: Option<ConfigSpec>,
    pub family: Option<FamilySelection>,
    pub seed: u64,
}

impl PipelineSpec {
    #[must_use]
    pub fn new(ty: SingularityType) -> Self {
        Self { ty, t_index: 6, fiber: None, exceptional: None, family: None, seed: 0 }
    }

    #[must_use]
    pub fn with_fiber(mut self, fiber: FiberType) -> Self {
        self.fiber = Some(fiber);
        self
    }

    #[must_use]
    pub fn with_t_index(mut self, n: u32) -> Self {
        self.t_index = n;
        self
    }

    #[must_use]
    pub fn with_family(mut self, row: &str, variant: Option<&str>) -> Self {
        self.family = Some(FamilySelection { row: row.to_string(), variant: variant.map(str::to_string) });
        self
    }

    /// Label used for reports and for matching known discrepancies.
    #[must_use]
    pub fn context(&self) -> String {
        let mut parts = vec![self.ty.label().to_string()];
        if let Some(f) = self.fiber {
            parts.push(f.to_string());
        }
        if self.ty.is_e_type() {
            parts.push(format!("n{}", self.t_index));
        }
        if let Some(fam) = &self.family {
            parts.push(fam.row.clone());
            parts.extend(fam.variant.clone());
        }
        parts.join("/")
    }

    fn declared_exceptional(&self) -> ConfigSpec {
        self.exceptional.clone().unwrap_or_else(|| self.ty.catalog_entry().spec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub context: String,
    pub checklist: Checklist,
    pub models: Vec<(String, SurfaceModel)>,
}

impl PipelineResult {
    #[must_use]
    pub fn checks(&self) -> &[Check] {
        self.checklist.checks()
    }

    #[must_use]
    pub fn model(&self, name: &str) -> Option<&SurfaceModel> {
        self.models.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

pub fn run_pipeline(spec: &PipelineSpec) -> Result<PipelineResult, ConstructionError> {
    if spec.ty.is_e_type() {
        run_en_pipeline(spec)
    } else {
        run_zw_pipeline(spec)
    }
}

/// The class of the branch divisor: 2(Γ − K) on 𝔽ₙ and 6H on ℙ².
pub fn branch_class_for(p: &SurfaceModel) -> Result<DivisorClass, ConstructionError> {
    let basis = p.lattice().basis();
    if basis == ["H"] {
        return Ok(p.class_from_terms(&[("H", 6)])?);
    }
    if basis == ["Cinf", "Gamma"] {
        let gamma = p.class_from_terms(&[("Gamma", 1)])?;
        return Ok(2 * &(&gamma - p.canonical()));
    }
    Err(ConstructionError::UnsupportedBase)
}
