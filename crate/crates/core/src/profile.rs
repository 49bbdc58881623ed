//! Frozen hypothesis sets, one per fixed point theorem or corollary.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{CertificateKind, EngineError};
use crate::space::Completeness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileName {
    Res3,
    Corts,
    Cort,
    Thc32,
    AbcCor,
    Th32,
    Th33,
    Cor35,
    Cor35sa,
    Res4,
    Onlyf,
    FinalKm,
    Res3Single,
    Th32Single,
    Th33Single,
    Res4Identity,
    FinalKmSquare,
    Cor310,
}

impl ProfileName {
    pub const ALL: [ProfileName; 18] = [
        Self::Res3,
        Self::Corts,
        Self::Cort,
        Self::Thc32,
        Self::AbcCor,
        Self::Th32,
        Self::Th33,
        Self::Cor35,
        Self::Cor35sa,
        Self::Res4,
        Self::Onlyf,
        Self::FinalKm,
        Self::Res3Single,
        Self::Th32Single,
        Self::Th33Single,
        Self::Res4Identity,
        Self::FinalKmSquare,
        Self::Cor310,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Res3 => "RES3",
            Self::Corts => "CORTS",
            Self::Cort => "CORT",
            Self::Thc32 => "THC32",
            Self::AbcCor => "ABC_COR",
            Self::Th32 => "TH32",
            Self::Th33 => "TH33",
            Self::Cor35 => "COR35",
            Self::Cor35sa => "COR35SA",
            Self::Res4 => "RES4",
            Self::Onlyf => "ONLYF",
            Self::FinalKm => "FINAL_KM",
            Self::Res3Single => "RES3_SINGLE",
            Self::Th32Single => "TH32_SINGLE",
            Self::Th33Single => "TH33_SINGLE",
            Self::Res4Identity => "RES4_IDENTITY",
            Self::FinalKmSquare => "FINAL_KM_SQUARE",
            Self::Cor310 => "COR310",
        }
    }
}

impl fmt::Display for ProfileName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileName {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        Self::ALL.into_iter().find(|p| p.as_str() == up).ok_or_else(|| EngineError::NotFound(format!("profile `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindRequirement {
    /// KM; GV spaces qualify too.
    Any,
    Gv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ConditionKind {
    /// β·M(fx,gy,t) ≥ ψ(min{M(x,y,t), M(x,fx,t), M(y,gy,t)})
    PairMin { guarded: bool },
    /// β·M(fx,gy,t) ≥ ψ₁(M(x,y,t)) + ψ₂(M(x,fx,t)) + ψ₃(M(y,gy,t))
    Additive,
    /// β·M(fx,gy,t) ≥ a·M(x,y,t) + b·M(x,fx,t) + c·M(y,gy,t)
    Linear,
    /// β·M(gfx,fgy,t) ≥ ψ(min{M(x,y,t), M(x,fx,t), M(y,gy,t)})
    GfFg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuityRequirement {
    Both,
    One,
    None,
}

/// How the pair (f, g) is formed from an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapVariant {
    Pair,
    /// g := f
    SameMap,
    /// g := identity
    GIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedCondition {
    /// β(x₀,fx₀,t) ≤ 1 and M(x₀,fx₀,t) > 0
    BetaAndPositive,
    /// M(x₀,fx₀,t) > 0
    Positive,
    /// β(x₀,fx₀,t) ≤ 1
    Beta,
    /// β(x₀,fx₀,t) ≤ 1 and M(fx₀,gfx₀,t), M(gfx₀,fgfx₀,t) > 0
    BetaAndComposedPositive,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaLimit {
    /// β(x_{r_n}, x, t) ≤ 1 along the cluster subsequence
    Subsequence,
    /// β(x_{r_n}, x, t), β(x, x_{r_n}, t) ≤ 1 along the cluster subsequence
    SubsequenceBoth,
    /// β(x_n, x, t) ≤ 1 along the whole orbit
    FullSequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum UniquenessClaim {
    Conditional { beta_le_one: bool, positive: bool },
    Unconditional,
    /// Claimed by the original statement, known to be false.
    Withdrawn,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremProfile {
    pub name: ProfileName,
    pub summary: String,
    pub space_kind: KindRequirement,
    pub completeness: Completeness,
    pub non_archimedean: bool,
    pub condition: ConditionKind,
    pub continuity: ContinuityRequirement,
    pub maps: MapVariant,
    pub beta_fixed_one: bool,
    pub seed: SeedCondition,
    pub self_distance: bool,
    pub beta_limit: Option<BetaLimit>,
    pub eventual_pairwise: bool,
    pub cauchy_mode: bool,
    /// t-norm must be min and f, g each fuzzy ψ-contractive.
    pub min_tnorm_and_single_contractive: bool,
    pub uniqueness: UniquenessClaim,
    pub notes: Vec<String>,
}

impl TheoremProfile {
    pub fn certificate_kind(&self) -> CertificateKind {
        match self.condition {
            ConditionKind::GfFg => CertificateKind::Res4,
            _ => CertificateKind::Res3,
        }
    }
}

struct Shape {
    summary: &'static str,
    gv: bool,
    completeness: Completeness,
    non_archimedean: bool,
    condition: ConditionKind,
    continuity: ContinuityRequirement,
    maps: MapVariant,
    beta_fixed_one: bool,
    seed: SeedCondition,
    self_distance: bool,
    beta_limit: Option<BetaLimit>,
    eventual_pairwise: bool,
    cauchy_mode: bool,
    uniqueness: UniquenessClaim,
}

const BOTH_CLAUSES: UniquenessClaim = UniquenessClaim::Conditional { beta_le_one: true, positive: true };
const BETA_CLAUSE: UniquenessClaim = UniquenessClaim::Conditional { beta_le_one: true, positive: false };
const POSITIVE_CLAUSE: UniquenessClaim = UniquenessClaim::Conditional { beta_le_one: false, positive: true };

const RES3: Shape = Shape {
    summary: "weak G-complete KM space, f and g continuous, beta-psi contractive pair, symmetric beta-admissible, seed condition",
    gv: false,
    completeness: Completeness::WeakGComplete,
    non_archimedean: false,
    condition: ConditionKind::PairMin { guarded: true },
    continuity: ContinuityRequirement::Both,
    maps: MapVariant::Pair,
    beta_fixed_one: false,
    seed: SeedCondition::BetaAndPositive,
    self_distance: true,
    beta_limit: None,
    eventual_pairwise: false,
    cauchy_mode: false,
    uniqueness: BOTH_CLAUSES,
};

const TH32: Shape = Shape {
    summary: "non-Archimedean weak G-complete GV space, no continuity, beta-psi contractive pair, beta limit condition along the cluster subsequence",
    gv: true,
    non_archimedean: true,
    continuity: ContinuityRequirement::None,
    seed: SeedCondition::Beta,
    self_distance: false,
    beta_limit: Some(BetaLimit::Subsequence),
    uniqueness: BETA_CLAUSE,
    ..RES3
};

const TH33: Shape = Shape {
    summary: "non-Archimedean complete GV space, no continuity, beta-psi contractive pair, beta limit condition along the sequence, eventual pairwise beta",
    completeness: Completeness::Complete,
    beta_limit: Some(BetaLimit::FullSequence),
    eventual_pairwise: true,
    cauchy_mode: true,
    ..TH32
};

const RES4: Shape = Shape {
    summary: "weak G-complete KM space, f and g continuous, gf/fg beta-psi contractive, symmetric beta-admissible, composed seed condition",
    condition: ConditionKind::GfFg,
    seed: SeedCondition::BetaAndComposedPositive,
    self_distance: false,
    ..RES3
};

const ONLYF: Shape = Shape {
    summary: "weak G-complete KM space, one of f, g continuous, gf/fg beta-psi contractive, two-sided beta limit condition",
    continuity: ContinuityRequirement::One,
    beta_limit: Some(BetaLimit::SubsequenceBoth),
    ..RES4
};

const FINAL_KM: Shape = Shape {
    summary: "non-Archimedean complete KM space, one of f, g continuous, gf/fg beta-psi contractive, two-sided beta limit condition, eventual pairwise beta",
    completeness: Completeness::Complete,
    non_archimedean: true,
    eventual_pairwise: true,
    cauchy_mode: true,
    ..ONLYF
};

fn shape(name: ProfileName) -> Shape {
    match name {
        ProfileName::Res3 => RES3,
        ProfileName::Corts => Shape {
            summary: "weak G-complete KM space, f and g continuous, psi-contractive pair with beta = 1",
            condition: ConditionKind::PairMin { guarded: false },
            beta_fixed_one: true,
            seed: SeedCondition::Positive,
            uniqueness: POSITIVE_CLAUSE,
            ..RES3
        },
        ProfileName::Cort => Shape {
            summary: "G-complete KM space with the min t-norm, f and g continuous and each fuzzy psi-contractive, psi-contractive pair",
            completeness: Completeness::GComplete,
            condition: ConditionKind::PairMin { guarded: false },
            beta_fixed_one: true,
            seed: SeedCondition::Positive,
            uniqueness: UniquenessClaim::Withdrawn,
            ..RES3
        },
        ProfileName::Thc32 => Shape {
            summary: "weak G-complete KM space, f and g continuous, additive three-psi contractive condition",
            condition: ConditionKind::Additive,
            ..RES3
        },
        ProfileName::AbcCor => Shape {
            summary: "weak G-complete KM space, f and g continuous, linear contractive condition with a, b, c > 1",
            condition: ConditionKind::Linear,
            ..RES3
        },
        ProfileName::Th32 => TH32,
        ProfileName::Th33 => TH33,
        ProfileName::Cor35 => Shape {
            summary: "non-Archimedean weak G-complete GV space, psi-contractive pair with beta = 1, unique fixed point",
            condition: ConditionKind::PairMin { guarded: false },
            beta_fixed_one: true,
            seed: SeedCondition::None,
            beta_limit: None,
            uniqueness: UniquenessClaim::Unconditional,
            ..TH32
        },
        ProfileName::Cor35sa => Shape {
            summary: "non-Archimedean complete GV space, psi-contractive pair with beta = 1, unique fixed point",
            condition: ConditionKind::PairMin { guarded: false },
            beta_fixed_one: true,
            seed: SeedCondition::None,
            beta_limit: None,
            eventual_pairwise: false,
            uniqueness: UniquenessClaim::Unconditional,
            ..TH33
        },
        ProfileName::Res4 => RES4,
        ProfileName::Onlyf => ONLYF,
        ProfileName::FinalKm => FINAL_KM,
        ProfileName::Res3Single => Shape { summary: "single map form of RES3 (g = f)", maps: MapVariant::SameMap, ..RES3 },
        ProfileName::Th32Single => Shape { summary: "single map form of TH32 (g = f)", maps: MapVariant::SameMap, ..TH32 },
        ProfileName::Th33Single => Shape { summary: "single map form of TH33 (g = f)", maps: MapVariant::SameMap, ..TH33 },
        ProfileName::Res4Identity => Shape { summary: "single map form of RES4 with g the identity", maps: MapVariant::GIdentity, ..RES4 },
        ProfileName::FinalKmSquare => Shape {
            summary: "single map form of FINAL_KM (g = f, condition on f squared)",
            maps: MapVariant::SameMap,
            ..FINAL_KM
        },
        ProfileName::Cor310 => Shape {
            summary: "ONLYF with beta = 1",
            beta_fixed_one: true,
            beta_limit: None,
            uniqueness: POSITIVE_CLAUSE,
            ..ONLYF
        },
    }
}

pub fn profile_get(name: ProfileName) -> TheoremProfile {
    let s = shape(name);
    let mut notes = Vec::new();
    match name {
        ProfileName::Cort => {
            notes.push("rectified: hypothesis M(x,fx,t), M(x,gx,t) > 0 added; the original proof needs it".to_string());
            notes.push("rectified: the original uniqueness claim is withdrawn; the discrete metric with f = g = identity has every point fixed".to_string());
        }
        ProfileName::Onlyf => {
            notes.push("open question: can the continuity hypothesis of both f and g be omitted?".to_string());
        }
        ProfileName::AbcCor => {
            notes.push("seed condition read as M(x0,fx0,t) > 0; the relation is missing in the original statement".to_string());
        }
        _ => {}
    }
    TheoremProfile {
        name,
        summary: s.summary.to_string(),
        space_kind: if s.gv { KindRequirement::Gv } else { KindRequirement::Any },
        completeness: s.completeness,
        non_archimedean: s.non_archimedean,
        condition: s.condition,
        continuity: s.continuity,
        maps: s.maps,
        beta_fixed_one: s.beta_fixed_one,
        seed: s.seed,
        self_distance: s.self_distance,
        beta_limit: s.beta_limit,
        eventual_pairwise: s.eventual_pairwise,
        cauchy_mode: s.cauchy_mode,
        min_tnorm_and_single_contractive: name == ProfileName::Cort,
        uniqueness: s.uniqueness,
        notes,
    }
}

pub fn profile_by_name(name: &str) -> Result<TheoremProfile, EngineError> {
    Ok(profile_get(name.parse()?))
}
