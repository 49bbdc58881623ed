//! Frozen worked instances with their expected verification outcomes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::EngineError;
use crate::expr::Branch;
use crate::instance::PairInstance;
use crate::maps::{BetaFunction, Continuity, SelfMap};
use crate::profile::{profile_get, ProfileName};
use crate::psi::PsiFunction;
use crate::scalar::Scalar;
use crate::space::{Completeness, Component, FuzzySpace, Metric, PointSet, SpaceKind};
use crate::tnorm::TNorm;
use crate::verify::{verify_theorem, Outcome, TheoremReport, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CorpusId {
    Ex33,
    Ex1,
    CortCounterexample,
    Th32Example,
    Res4Beta1,
    OnlyfExample,
}

impl CorpusId {
    pub const ALL: [CorpusId; 6] = [Self::Ex33, Self::Ex1, Self::CortCounterexample, Self::Th32Example, Self::Res4Beta1, Self::OnlyfExample];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ex33 => "EX33",
            Self::Ex1 => "EX1",
            Self::CortCounterexample => "CORT_COUNTEREXAMPLE",
            Self::Th32Example => "TH32_EXAMPLE",
            Self::Res4Beta1 => "RES4_BETA1",
            Self::OnlyfExample => "ONLYF_EXAMPLE",
        }
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorpusId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| EngineError::NotFound(format!("corpus entry `{s}`")))
    }
}

/// What one profile run on an entry must produce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedRun {
    pub profile: ProfileName,
    pub outcome: Outcome,
    pub fixed_point: Option<Scalar>,
    pub fixed_points: Vec<Scalar>,
    pub unique: bool,
    /// Uniqueness preconditions, when the profile states any.
    pub uniqueness_preconditions: Option<bool>,
    /// Name and witness of the first violated hypothesis.
    pub violated: Option<(String, Vec<(String, Scalar)>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: CorpusId,
    pub description: String,
    pub instance: PairInstance,
    pub expected: Vec<ExpectedRun>,
}

impl CorpusEntry {
    pub fn profiles(&self) -> Vec<ProfileName> {
        self.expected.iter().map(|e| e.profile).collect()
    }

    pub fn export(&self) -> String {
        self.instance.to_json()
    }
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn one() -> Scalar {
    Scalar::one()
}

fn br(when: &str, value: &str) -> Branch {
    Branch::new(when, value).expect("corpus branch parses")
}

/// `{1/2ⁿ : n ≥ 2} ∪ [1/2, 1]` with M = min/max and the product t-norm.
fn dyadic_ratio_space(probes: Vec<Scalar>) -> FuzzySpace {
    let points = PointSet::Symbolic {
        components: vec![
            Component::DyadicReciprocals { min_exponent: 2 },
            Component::Interval { lo: q(1, 2), hi: one(), lo_open: false, hi_open: false },
        ],
    };
    FuzzySpace::new(points, Metric::Ratio, TNorm::Product, SpaceKind::GV)
        .with_completeness(Completeness::WeakGComplete)
        .with_probes(probes)
}

pub fn default_probes() -> Vec<Scalar> {
    [(1, 8), (1, 4), (1, 2), (9, 16), (5, 8), (3, 4), (7, 8), (1, 1)].iter().map(|&(n, d)| q(n, d)).collect()
}

fn ex33_beta() -> BetaFunction {
    BetaFunction::Piecewise { branches: vec![br("x <= y", "1/x"), br("y < x < 1", "(1+x)/(2*x)"), br("y < x = 1", "2")] }
}

fn one_or_four() -> BetaFunction {
    BetaFunction::Piecewise { branches: vec![br("x = y = 1", "1"), br("else", "4")] }
}

fn run(profile: ProfileName, outcome: Outcome, fixed_point: Option<Scalar>, fixed_points: Vec<Scalar>) -> ExpectedRun {
    let unique = fixed_points.len() == 1;
    ExpectedRun { profile, outcome, fixed_point, fixed_points, unique, uniqueness_preconditions: None, violated: None }
}

fn ex33() -> CorpusEntry {
    let inst = PairInstance::new(
        "EX33",
        dyadic_ratio_space(default_probes()),
        SelfMap::identity(),
        SelfMap::constant(one()),
        ex33_beta(),
        PsiFunction::AffineHalf,
        one(),
    );
    CorpusEntry {
        id: CorpusId::Ex33,
        description: "ratio metric, f = identity, g = 1, three-branch beta, psi = (1+r)/2".into(),
        instance: inst,
        expected: vec![
            ExpectedRun { uniqueness_preconditions: Some(false), ..run(ProfileName::Res3, Outcome::Verified, Some(one()), vec![one()]) },
            ExpectedRun { uniqueness_preconditions: Some(false), ..run(ProfileName::Res4, Outcome::Verified, Some(one()), vec![one()]) },
        ],
    }
}

fn ex1() -> CorpusEntry {
    let m = SelfMap::piecewise(vec![br("x = 1/4", "1/4"), br("else", "1")], Continuity::Continuous);
    let inst = PairInstance::new("EX1", dyadic_ratio_space(default_probes()), m.clone(), m, one_or_four(), PsiFunction::AffineHalf, one());
    let both = vec![q(1, 4), one()];
    CorpusEntry {
        id: CorpusId::Ex1,
        description: "ratio metric, f = g fixing 1/4 and sending the rest to 1, beta = 4 off the point (1,1)".into(),
        instance: inst,
        expected: vec![
            ExpectedRun { uniqueness_preconditions: Some(false), ..run(ProfileName::Res3, Outcome::Verified, Some(one()), both.clone()) },
            ExpectedRun { uniqueness_preconditions: Some(false), ..run(ProfileName::Res4, Outcome::Verified, Some(one()), both) },
        ],
    }
}

fn cort_counterexample() -> CorpusEntry {
    let pts = vec![Scalar::zero(), q(1, 3), q(2, 3), one()];
    let space = FuzzySpace::new(PointSet::finite(pts.clone()), Metric::Discrete, TNorm::Min, SpaceKind::KM).with_completeness(Completeness::GComplete);
    let inst = PairInstance::new(
        "CORT_COUNTEREXAMPLE",
        space,
        SelfMap::identity(),
        SelfMap::identity(),
        BetaFunction::ConstOne,
        PsiFunction::Sqrt,
        q(1, 3),
    );
    CorpusEntry {
        id: CorpusId::CortCounterexample,
        description: "discrete metric on {0, 1/3, 2/3, 1}, min t-norm, f = g = identity, psi = sqrt".into(),
        instance: inst,
        expected: vec![run(ProfileName::Cort, Outcome::Verified, Some(q(1, 3)), pts)],
    }
}

fn th32_example() -> CorpusEntry {
    let probes = vec![q(1, 4), q(1, 2), Scalar::inv_sqrt2(), q(3, 4), one()];
    let f = SelfMap::piecewise(vec![br("x in Q", "1"), br("else", "inv_sqrt2")], Continuity::Discontinuous);
    let g = SelfMap::piecewise(vec![br("x = 1", "1"), br("x = inv_sqrt2", "inv_sqrt2"), br("else", "1/2")], Continuity::Discontinuous);
    let inst = PairInstance::new("TH32_EXAMPLE", dyadic_ratio_space(probes), f, g, one_or_four(), PsiFunction::AffineHalf, one());
    CorpusEntry {
        id: CorpusId::Th32Example,
        description: "ratio metric, discontinuous f and g with common fixed points 1 and 1/sqrt(2)".into(),
        instance: inst,
        expected: vec![ExpectedRun {
            uniqueness_preconditions: Some(false),
            ..run(ProfileName::Th32, Outcome::Verified, Some(one()), vec![Scalar::inv_sqrt2(), one()])
        }],
    }
}

fn res4_beta1() -> CorpusEntry {
    let inst = PairInstance::new(
        "RES4_BETA1",
        dyadic_ratio_space(default_probes()),
        SelfMap::identity(),
        SelfMap::constant(one()),
        BetaFunction::ConstOne,
        PsiFunction::AffineHalf,
        one(),
    );
    let witness = vec![("x".into(), q(1, 2)), ("y".into(), one()), ("t".into(), one()), ("lhs".into(), q(1, 2)), ("rhs".into(), q(3, 4))];
    CorpusEntry {
        id: CorpusId::Res4Beta1,
        description: "the EX33 maps with beta = 1".into(),
        instance: inst,
        expected: vec![
            ExpectedRun { uniqueness_preconditions: Some(true), ..run(ProfileName::Res4, Outcome::Verified, Some(one()), vec![one()]) },
            ExpectedRun {
                uniqueness_preconditions: Some(true),
                violated: Some(("psi-contractive pair".into(), witness)),
                ..run(ProfileName::Res3, Outcome::NotApplicable, None, vec![one()])
            },
        ],
    }
}

fn onlyf_example() -> CorpusEntry {
    let mut probes = default_probes();
    probes.insert(3, Scalar::inv_sqrt2());
    let f = SelfMap::piecewise(vec![br("x in Q", "1"), br("else", "1/2")], Continuity::Discontinuous);
    let inst = PairInstance::new(
        "ONLYF_EXAMPLE",
        dyadic_ratio_space(probes),
        f,
        SelfMap::constant(one()),
        BetaFunction::ConstOne,
        PsiFunction::AffineHalf,
        one(),
    );
    CorpusEntry {
        id: CorpusId::OnlyfExample,
        description: "ratio metric, f = 1 on rationals and 1/2 elsewhere, g = 1".into(),
        instance: inst,
        expected: vec![ExpectedRun {
            uniqueness_preconditions: Some(true),
            ..run(ProfileName::Onlyf, Outcome::Verified, Some(one()), vec![one()])
        }],
    }
}

pub fn corpus_get(id: CorpusId) -> CorpusEntry {
    match id {
        CorpusId::Ex33 => ex33(),
        CorpusId::Ex1 => ex1(),
        CorpusId::CortCounterexample => cort_counterexample(),
        CorpusId::Th32Example => th32_example(),
        CorpusId::Res4Beta1 => res4_beta1(),
        CorpusId::OnlyfExample => onlyf_example(),
    }
}

pub fn corpus_by_name(name: &str) -> Result<CorpusEntry, EngineError> {
    Ok(corpus_get(name.parse()?))
}

pub fn corpus_all() -> Vec<CorpusEntry> {
    CorpusId::ALL.into_iter().map(corpus_get).collect()
}

/// Differences between an expected run and a fresh report; empty when the
/// golden holds.
pub fn drift(expected: &ExpectedRun, report: &TheoremReport) -> Vec<String> {
    let mut out = Vec::new();
    let c = &report.conclusion;
    if report.status != expected.outcome {
        out.push(format!("status {} instead of {}", report.status, expected.outcome));
    }
    if c.fixed_point != expected.fixed_point {
        out.push(format!("fixed point {:?} instead of {:?}", c.fixed_point.as_ref().map(Scalar::to_string), expected.fixed_point.as_ref().map(Scalar::to_string)));
    }
    let mut got = c.fixed_points.clone();
    let mut want = expected.fixed_points.clone();
    got.sort_by(|a, b| a.compare(b).ordering);
    want.sort_by(|a, b| a.compare(b).ordering);
    if got != want {
        out.push(format!("{} fixed points instead of {}", got.len(), want.len()));
    }
    if c.unique != Some(expected.unique) {
        out.push(format!("unique = {:?}", c.unique));
    }
    if expected.uniqueness_preconditions.is_some() && c.uniqueness_preconditions != expected.uniqueness_preconditions {
        out.push(format!("uniqueness preconditions {:?}", c.uniqueness_preconditions));
    }
    if let Some((name, values)) = &expected.violated {
        match report.first_violation() {
            Some(h) if &h.name == name => {
                let w = h.verdict.as_ref().and_then(|v| v.witness.as_ref());
                for (k, v) in values {
                    if w.and_then(|w| w.get(k)) != Some(v) {
                        out.push(format!("witness {k} differs: {:?}", w.and_then(|w| w.get(k)).map(Scalar::to_string)));
                    }
                }
            }
            Some(h) => out.push(format!("first violation is `{}`", h.name)),
            None => out.push(format!("`{name}` not violated")),
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct GoldenResult {
    pub id: CorpusId,
    pub profile: ProfileName,
    pub report: TheoremReport,
    pub drift: Vec<String>,
}

impl GoldenResult {
    pub fn ok(&self) -> bool {
        self.drift.is_empty()
    }
}

/// Re-runs every expected profile of an entry.
pub fn check_entry(entry: &CorpusEntry, opts: &VerifyOptions) -> Result<Vec<GoldenResult>, EngineError> {
    entry
        .expected
        .iter()
        .map(|exp| {
            let report = verify_theorem(&profile_get(exp.profile), &entry.instance, opts)?;
            let drift = drift(exp, &report);
            Ok(GoldenResult { id: entry.id, profile: exp.profile, report, drift })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        assert_eq!("ex33".parse::<CorpusId>().unwrap(), CorpusId::Ex33);
        assert!(matches!("EX99".parse::<CorpusId>(), Err(EngineError::NotFound(_))));
    }

    #[test]
    fn export_round_trips() {
        for e in corpus_all() {
            let back = PairInstance::from_json(&e.export(), e.id.as_str()).unwrap();
            assert_eq!(back, e.instance, "{}", e.id);
        }
    }

    #[test]
    fn goldens_hold() {
        let mut bad = Vec::new();
        for e in corpus_all() {
            for r in check_entry(&e, &VerifyOptions::default()).unwrap() {
                if !r.ok() {
                    bad.push(format!("{} {}: {:?}\n{}", r.id, r.profile, r.drift, r.report));
                }
            }
        }
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}
