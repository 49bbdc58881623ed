//! A space, a pair of self-maps, β, ψ and a seed: one checkable instance.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::Probe;
use crate::maps::{BetaFunction, MapError, SelfMap};
use crate::psi::{PsiError, PsiFunction};
use crate::scalar::{unit_grid, Scalar};
use crate::space::{FuzzySpace, SpaceError, TimeGrid};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {message} at line {line}, column {column} (field `{field}`)")]
    Parse { path: String, field: String, line: usize, column: usize, message: String },
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("psi: {0}")]
    Psi(#[from] PsiError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairInstance {
    pub name: String,
    pub space: FuzzySpace,
    pub f: SelfMap,
    pub g: SelfMap,
    #[serde(default)]
    pub beta: BetaFunction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<PsiFunction>,
    /// ψ₁, ψ₂, ψ₃ of the additive condition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psis: Option<[PsiFunction; 3]>,
    /// a, b, c of the linear condition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<[Scalar; 3]>,
    pub x0: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<TimeGrid>,
}

impl PairInstance {
    pub fn new(name: &str, space: FuzzySpace, f: SelfMap, g: SelfMap, beta: BetaFunction, psi: PsiFunction, x0: Scalar) -> Self {
        Self { name: name.to_string(), space, f, g, beta, psi: Some(psi), psis: None, coefficients: None, x0, grid: None }
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self, InstanceError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let inst: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            let (line, column) = (inner.line(), inner.column());
            let full = inner.to_string();
            let message = full.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&full).to_string();
            InstanceError::Parse { path: origin.to_string(), field, line, column, message }
        })?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path).map_err(|e| InstanceError::Io(path.display().to_string(), e))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn time_grid(&self) -> TimeGrid {
        self.grid.clone().unwrap_or_else(|| self.space.default_time_grid())
    }

    pub fn probes(&self) -> Vec<Scalar> {
        self.space.probe_points()
    }

    pub fn probe(&self) -> Probe<'_> {
        Probe::new(&self.space, &self.probes(), &self.time_grid())
    }

    /// The ψ used by single-ψ conditions and certificates; min{ψ₁,ψ₂,ψ₃}
    /// when only a triple is given.
    pub fn main_psi(&self) -> Option<PsiFunction> {
        if let Some(p) = &self.psi {
            return Some(p.clone());
        }
        if let Some(ps) = &self.psis {
            return Some(PsiFunction::Min(ps.to_vec()));
        }
        self.coefficients.as_ref().and_then(|[a, b, c]| {
            let parts = [a, b, c].map(|s| PsiFunction::capped(s.clone()));
            parts.into_iter().collect::<Result<Vec<_>, _>>().ok().map(PsiFunction::Min)
        })
    }

    /// Same instance with other maps, for single-map variants.
    pub fn with_maps(&self, f: SelfMap, g: SelfMap) -> Self {
        Self { f, g, ..self.clone() }
    }

    pub fn with_beta(&self, beta: BetaFunction) -> Self {
        Self { beta, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        self.space.validate()?;
        if !self.space.contains(&self.x0) {
            return Err(SpaceError::NotInSpace(self.x0.to_string()).into());
        }
        let unit = unit_grid(100);
        let mut all: Vec<&PsiFunction> = self.psi.iter().collect();
        all.extend(self.psis.iter().flatten());
        if all.is_empty() && self.coefficients.is_none() {
            return Err(InstanceError::Invalid("instance needs `psi`, `psis` or `coefficients`".into()));
        }
        for p in all {
            let report = p.validate(&unit)?;
            if !report.all_passed() {
                return Err(InstanceError::Invalid(format!("{p} is not in the psi family: {report}")));
            }
        }
        if let Some(cs) = &self.coefficients {
            if cs.iter().any(|c| !c.is_exact() || c.compare(&Scalar::one()).is_le()) {
                return Err(InstanceError::Invalid("coefficients must be exact and > 1".into()));
            }
        }
        let mut points = self.probes();
        if !points.contains(&self.x0) {
            points.push(self.x0.clone());
        }
        for map in [&self.f, &self.g] {
            map.check_branches(&points)?;
            for x in &points {
                let y = map.apply(x)?;
                if !self.space.contains(&y) {
                    return Err(MapError::Range(map.to_string(), x.to_string(), y.to_string()).into());
                }
            }
        }
        Ok(())
    }
}
