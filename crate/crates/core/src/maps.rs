//! Self-mappings `f, g : X → X` and weight functions `β : X² × (0,∞) → (0,∞)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{matching_count, select_branch, Bindings, Branch, ExprError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("expression: {0}")]
    Expression(#[from] ExprError),
    #[error("no branch of {0} matches x = {1}")]
    NoBranch(String, String),
    #[error("{0} has no table entry for {1}")]
    GridMiss(String, String),
    #[error("beta({0}, {1}) = {2} is not positive")]
    NonPositiveBeta(String, String, String),
    #[error("{0} maps {1} to {2}, which is outside the space")]
    Range(String, String, String),
    #[error("{0}: guards are not exclusive and exhaustive at x = {1} ({2} branches match)")]
    Branches(String, String, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Continuity {
    Continuous,
    Discontinuous,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapEntry {
    pub x: Scalar,
    pub y: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapRule {
    Identity,
    Const { value: Scalar },
    Table { entries: Vec<MapEntry> },
    Piecewise { branches: Vec<Branch> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfMap {
    #[serde(flatten)]
    pub rule: MapRule,
    #[serde(default = "unknown_continuity")]
    pub continuity: Continuity,
}

fn unknown_continuity() -> Continuity {
    Continuity::Unknown
}

impl SelfMap {
    pub fn identity() -> Self {
        Self { rule: MapRule::Identity, continuity: Continuity::Continuous }
    }

    pub fn constant(value: Scalar) -> Self {
        Self { rule: MapRule::Const { value }, continuity: Continuity::Continuous }
    }

    pub fn table(pairs: Vec<(Scalar, Scalar)>, continuity: Continuity) -> Self {
        let entries = pairs.into_iter().map(|(x, y)| MapEntry { x, y }).collect();
        Self { rule: MapRule::Table { entries }, continuity }
    }

    pub fn piecewise(branches: Vec<Branch>, continuity: Continuity) -> Self {
        Self { rule: MapRule::Piecewise { branches }, continuity }
    }

    pub fn apply(&self, x: &Scalar) -> Result<Scalar, MapError> {
        match &self.rule {
            MapRule::Identity => Ok(x.clone()),
            MapRule::Const { value } => Ok(value.clone()),
            MapRule::Table { entries } => entries
                .iter()
                .find(|e| &e.x == x)
                .map(|e| e.y.clone())
                .ok_or_else(|| MapError::GridMiss(self.to_string(), x.to_string())),
            MapRule::Piecewise { branches } => {
                let env = Bindings::x(x);
                let (_, b) = select_branch(branches, env)?.ok_or_else(|| MapError::NoBranch(self.to_string(), x.to_string()))?;
                Ok(b.value.eval(env)?)
            }
        }
    }

    /// `self ∘ other`, applied as `self(other(x))`.
    pub fn compose_apply(&self, other: &SelfMap, x: &Scalar) -> Result<Scalar, MapError> {
        self.apply(&other.apply(x)?)
    }

    /// Piecewise guards must select exactly one branch at each point.
    pub fn check_branches(&self, points: &[Scalar]) -> Result<(), MapError> {
        if let MapRule::Piecewise { branches } = &self.rule {
            for x in points {
                let n = matching_count(branches, Bindings::x(x))?;
                if n != 1 {
                    return Err(MapError::Branches(self.to_string(), x.to_string(), n));
                }
            }
        }
        Ok(())
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity == Continuity::Continuous
    }
}

impl fmt::Display for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            MapRule::Identity => f.write_str("identity"),
            MapRule::Const { value } => write!(f, "const {value}"),
            MapRule::Table { entries } => write!(f, "table of {} entries", entries.len()),
            MapRule::Piecewise { branches } => {
                let parts: Vec<String> = branches.iter().map(|b| format!("{} if {}", b.value, b.when)).collect();
                write!(f, "piecewise [{}]", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaEntry {
    pub x: Scalar,
    pub y: Scalar,
    pub value: Scalar,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaFunction {
    #[default]
    ConstOne,
    Table {
        #[serde(default)]
        entries: Vec<BetaEntry>,
        default: Scalar,
    },
    /// Branches over `x` and `y`; β here never depends on `t`.
    Piecewise { branches: Vec<Branch> },
}

impl BetaFunction {
    pub fn constant(value: Scalar) -> Self {
        Self::Table { entries: Vec::new(), default: value }
    }

    pub fn is_const_one(&self) -> bool {
        match self {
            Self::ConstOne => true,
            Self::Table { entries, default } => default == &Scalar::one() && entries.iter().all(|e| e.value == Scalar::one()),
            Self::Piecewise { .. } => false,
        }
    }

    /// β(x, y, t) together with the label of the rule that produced it.
    pub fn eval_labelled(&self, x: &Scalar, y: &Scalar, _t: &Scalar) -> Result<(Scalar, Option<String>), MapError> {
        let (v, label) = match self {
            Self::ConstOne => (Scalar::one(), None),
            Self::Table { entries, default } => match entries.iter().find(|e| &e.x == x && &e.y == y) {
                Some(e) => (e.value.clone(), Some("table entry".to_string())),
                None => (default.clone(), Some("default".to_string())),
            },
            Self::Piecewise { branches } => {
                let env = Bindings::xy(x, y);
                let (i, b) = select_branch(branches, env)?
                    .ok_or_else(|| MapError::NoBranch("beta".into(), format!("({x}, {y})")))?;
                (b.value.eval(env)?, Some(format!("branch {}: {}", i + 1, b.when)))
            }
        };
        if !v.is_positive() {
            return Err(MapError::NonPositiveBeta(x.to_string(), y.to_string(), v.to_string()));
        }
        Ok((v, label))
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<Scalar, MapError> {
        self.eval_labelled(x, y, t).map(|(v, _)| v)
    }

    /// β(x,y,t) ≤ 1, decided exactly whenever β is exact.
    pub fn le_one(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<(bool, bool), MapError> {
        let c = self.eval(x, y, t)?.compare(&Scalar::one());
        Ok((c.is_le(), c.exact))
    }
}

impl fmt::Display for BetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ConstOne => f.write_str("beta = 1"),
            Self::Table { entries, default } => write!(f, "beta table ({} entries, default {default})", entries.len()),
            Self::Piecewise { branches } => {
                let parts: Vec<String> = branches.iter().map(|b| format!("{} if {}", b.value, b.when)).collect();
                write!(f, "beta piecewise [{}]", parts.join("; "))
            }
        }
    }
}
