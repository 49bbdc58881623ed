//! Whole-theorem verification: hypotheses, orbit, certificate, cluster,
//! fixed point and uniqueness, folded into one report.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::axiom::{AxiomReport, EvidenceClass, Witness};
use crate::conditions::{self as cond, ConditionVerdict, Status};
use crate::engine::{
    certify_orbit, detect_cluster, find_all_common_fixed_points, generate_orbit, verify_common_fixed_point, CertificateSummary, Cluster,
    EngineError, DEFAULT_N_MAX,
};
use crate::instance::PairInstance;
use crate::maps::{BetaFunction, Continuity, SelfMap};
use crate::profile::{BetaLimit, ConditionKind, ContinuityRequirement, KindRequirement, MapVariant, SeedCondition, TheoremProfile, UniquenessClaim};
use crate::psi::PsiFunction;
use crate::scalar::Scalar;
use crate::sequence::{default_eps, Evidence};
use crate::space::{SpaceKind, TimeGrid};
use crate::tnorm::TNorm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Verified,
    NotApplicable,
    RefutationCandidate,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Verified => 0,
            Self::NotApplicable => 2,
            Self::RefutationCandidate => 3,
            Self::Inconclusive => 4,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Verified => "VERIFIED",
            Self::NotApplicable => "NOT-APPLICABLE",
            Self::RefutationCandidate => "REFUTATION-CANDIDATE",
            Self::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HypStatus {
    HoldsExact,
    HoldsSampled,
    /// Taken from the instance declaration, not checked.
    Declared,
    Violated,
}

impl HypStatus {
    pub fn holds(self) -> bool {
        self != Self::Violated
    }
}

impl From<Status> for HypStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::HoldsExact => Self::HoldsExact,
            Status::HoldsSampled => Self::HoldsSampled,
            Status::Violated => Self::Violated,
        }
    }
}

impl fmt::Display for HypStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::HoldsExact => "HOLDS (exact)",
            Self::HoldsSampled => "HOLDS (sampled)",
            Self::Declared => "UNVERIFIED-DECLARED",
            Self::Violated => "VIOLATED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypStatus,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ConditionVerdict>,
}

impl Hypothesis {
    fn plain(name: &str, status: HypStatus, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), status, detail: detail.into(), verdict: None }
    }

    fn from_verdict(name: &str, v: ConditionVerdict) -> Self {
        let detail = match &v.witness {
            Some(w) => format!("witness {w}"),
            None => format!("{} cases", v.checked),
        };
        Self { name: name.to_string(), status: v.status.into(), detail, verdict: Some(v) }
    }

    fn from_axioms(name: &str, r: &AxiomReport) -> Self {
        match r.failures().next() {
            Some(c) => Self::plain(
                name,
                HypStatus::Violated,
                format!("clause {} fails{}", c.axiom, c.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()),
            ),
            None if r.checks.iter().all(|c| c.evidence != EvidenceClass::Sampled) => Self::plain(name, HypStatus::HoldsExact, "all clauses"),
            None => Self::plain(name, HypStatus::HoldsSampled, "all clauses on the probe set"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub length: usize,
    pub stopped_early: bool,
    pub head: Vec<Scalar>,
    pub last: Scalar,
    pub alternation_holds: bool,
    /// All recorded β(x_n, x_{n+1}, t) and β(x_{n+1}, x_n, t) ≤ 1, when the
    /// seed satisfies β ≤ 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_propagation: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conclusion {
    pub fixed_point: Option<Scalar>,
    pub pointwise: Option<bool>,
    pub metric: Option<bool>,
    pub fixed_points: Vec<Scalar>,
    /// The fixed point set covers probes only.
    pub relative: bool,
    pub unique: Option<bool>,
    /// Whether the uniqueness preconditions hold on the probes.
    pub uniqueness_preconditions: Option<bool>,
    pub uniqueness_claim: UniquenessClaim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub profile: TheoremProfile,
    pub instance: String,
    pub status: Outcome,
    pub hypotheses: Vec<Hypothesis>,
    pub orbit: Option<OrbitSummary>,
    pub certificate: Option<CertificateSummary>,
    pub cluster: Option<Cluster>,
    pub conclusion: Conclusion,
    pub caveats: Vec<String>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    pub fn first_violation(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.status == HypStatus::Violated)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn list(points: &[Scalar]) -> String {
    let v: Vec<String> = points.iter().map(Scalar::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profile {} on {}: {}", self.profile.name, self.instance, self.status)?;
        writeln!(f, "  {}", self.profile.summary)?;
        writeln!(f, "hypotheses:")?;
        for h in &self.hypotheses {
            writeln!(f, "  [{}] {}: {}", h.status, h.name, h.detail)?;
            if let Some(v) = &h.verdict {
                for line in &v.info {
                    writeln!(f, "      info: {line}")?;
                }
                for (branch, n) in &v.branch_hits {
                    writeln!(f, "      {branch}: {n} cases")?;
                }
            }
        }
        if let Some(o) = &self.orbit {
            writeln!(
                f,
                "orbit: {} points{}, starts {}, ends at {}; alternation {}",
                o.length,
                if o.stopped_early { " (stopped early)" } else { "" },
                list(&o.head),
                o.last,
                if o.alternation_holds { "ok" } else { "BROKEN" }
            )?;
            if let Some(b) = o.beta_propagation {
                writeln!(f, "  beta <= 1 along the orbit: {}", if b { "yes" } else { "NO" })?;
            }
        }
        if let Some(c) = &self.certificate {
            write!(f, "certificate {:?} with {}: {} steps, {}", c.kind, c.psi, c.steps_checked, if c.passed { "pass" } else { "FAIL" })?;
            writeln!(f, "{}", if c.exact { " (exact)" } else { " (tolerance)" })?;
            if let Some(s) = &c.first_failure {
                writeln!(f, "  first failure at n={} t={}: actual {} < bound {}", s.n, s.t, s.actual, s.bound)?;
            }
        }
        if let Some(c) = &self.cluster {
            writeln!(f, "cluster: {} along {:?} indices, evidence {:?}", c.candidate, c.parity, c.evidence.evidence)?;
        }
        let c = &self.conclusion;
        match &c.fixed_point {
            Some(x) => writeln!(f, "fixed point: {x} (pointwise {}, metric {})", yes_no(c.pointwise), yes_no(c.metric))?,
            None => writeln!(f, "fixed point: none concluded")?,
        }
        writeln!(f, "common fixed points{}: {}", if c.relative { " among probes" } else { "" }, list(&c.fixed_points))?;
        writeln!(f, "unique: {}; uniqueness preconditions hold: {}", yes_no(c.unique), yes_no(c.uniqueness_preconditions))?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        for cv in &self.caveats {
            writeln!(f, "caveat: {cv}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub eps: Option<Scalar>,
    pub grid: Option<TimeGrid>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { n_max: DEFAULT_N_MAX, eps: None, grid: None }
    }
}

/// Instance as the profile reads it: map variant and β override applied.
fn effective_instance(profile: &TheoremProfile, inst: &PairInstance, notes: &mut Vec<String>) -> PairInstance {
    let mut e = match profile.maps {
        MapVariant::Pair => inst.clone(),
        MapVariant::SameMap => inst.with_maps(inst.f.clone(), inst.f.clone()),
        MapVariant::GIdentity => inst.with_maps(inst.f.clone(), SelfMap::identity()),
    };
    if profile.maps != MapVariant::Pair && inst.g != e.g {
        notes.push(format!("g replaced by {} for the single map form", e.g));
    }
    if profile.beta_fixed_one && !inst.beta.is_const_one() {
        notes.push("beta replaced by the constant 1".into());
        e = e.with_beta(BetaFunction::ConstOne);
    }
    e
}

fn positive_everywhere(inst: &PairInstance, pairs: &[(Scalar, Scalar)]) -> Result<Option<String>, EngineError> {
    for t in inst.time_grid().times() {
        for (a, b) in pairs {
            if !inst.space.m(a, b, t)?.is_positive() {
                return Ok(Some(format!("M({a}, {b}, {t}) = 0")));
            }
        }
    }
    Ok(None)
}

fn seed_hypothesis(seed: SeedCondition, inst: &PairInstance) -> Result<Option<Hypothesis>, EngineError> {
    if seed == SeedCondition::None {
        return Ok(None);
    }
    let x0 = &inst.x0;
    let fx0 = inst.f.apply(x0)?;
    let mut failures = Vec::new();
    if matches!(seed, SeedCondition::BetaAndPositive | SeedCondition::Beta | SeedCondition::BetaAndComposedPositive) {
        for t in inst.time_grid().times() {
            let b = inst.beta.eval(x0, &fx0, t)?;
            if b.compare(&Scalar::one()).is_gt() {
                failures.push(format!("beta(x0, fx0, {t}) = {b} > 1"));
                break;
            }
        }
    }
    let pairs = match seed {
        SeedCondition::BetaAndPositive | SeedCondition::Positive => vec![(x0.clone(), fx0.clone())],
        SeedCondition::BetaAndComposedPositive => {
            let gfx0 = inst.g.apply(&fx0)?;
            let fgfx0 = inst.f.apply(&gfx0)?;
            vec![(fx0.clone(), gfx0.clone()), (gfx0, fgfx0)]
        }
        _ => Vec::new(),
    };
    if let Some(msg) = positive_everywhere(inst, &pairs)? {
        failures.push(msg);
    }
    let name = format!("seed condition at x0 = {x0}");
    Ok(Some(if failures.is_empty() {
        Hypothesis::plain(&name, HypStatus::HoldsExact, format!("fx0 = {fx0}, checked on the time grid"))
    } else {
        Hypothesis::plain(&name, HypStatus::Violated, failures.join("; "))
    }))
}

fn continuity_hypothesis(req: ContinuityRequirement, inst: &PairInstance) -> Option<Hypothesis> {
    let decl = |m: &SelfMap| m.continuity;
    let (f, g) = (decl(&inst.f), decl(&inst.g));
    let show = |c: Continuity| format!("{c:?}").to_lowercase();
    let detail = format!("declared f {}, g {}", show(f), show(g));
    let ok = match req {
        ContinuityRequirement::None => return None,
        ContinuityRequirement::Both => f == Continuity::Continuous && g == Continuity::Continuous,
        ContinuityRequirement::One => f == Continuity::Continuous || g == Continuity::Continuous,
    };
    let name = match req {
        ContinuityRequirement::Both => "f and g continuous",
        _ => "one of f, g continuous",
    };
    Some(Hypothesis::plain(name, if ok { HypStatus::Declared } else { HypStatus::Violated }, detail))
}

pub fn verify_theorem(profile: &TheoremProfile, inst: &PairInstance, opts: &VerifyOptions) -> Result<TheoremReport, EngineError> {
    if profile.space_kind == KindRequirement::Gv && inst.space.space_kind != SpaceKind::GV {
        return Err(EngineError::Profile(format!("{} needs a GV space, instance {} is {}", profile.name, inst.name, inst.space.space_kind)));
    }
    let mut notes = profile.notes.clone();
    let mut caveats = Vec::new();
    let mut e = effective_instance(profile, inst, &mut notes);
    if let Some(g) = &opts.grid {
        e.grid = Some(g.clone());
    }
    let psi = e.main_psi().ok_or_else(|| EngineError::Profile(format!("{} needs a psi function", profile.name)))?;
    let grid = e.time_grid();
    let probe = e.probe();
    let probes = probe.points.clone();
    let exhaustive = e.space.probes_exhaustive();

    let mut hyps = Vec::new();
    let axioms = e.space.check_axioms(&probes, &grid)?;
    hyps.push(Hypothesis::from_axioms(&format!("{} fuzzy metric axioms", e.space.space_kind), &axioms));

    let declared = e.space.completeness;
    let completeness = if declared.satisfies(profile.completeness) {
        caveats.push(format!("completeness is declared ({declared}), not verified"));
        HypStatus::Declared
    } else {
        HypStatus::Violated
    };
    hyps.push(Hypothesis::plain(&format!("{} space", profile.completeness), completeness, format!("declared {declared}")));

    if profile.non_archimedean {
        let h = match e.space.non_archimedean {
            Some(true) => Hypothesis::plain("non-Archimedean", HypStatus::Declared, "declared"),
            Some(false) => Hypothesis::plain("non-Archimedean", HypStatus::Violated, "declared false"),
            None => Hypothesis::from_axioms("non-Archimedean", &e.space.check_non_archimedean(&probes, &grid)?),
        };
        hyps.push(h);
    }
    if profile.min_tnorm_and_single_contractive {
        let ok = e.space.tnorm == TNorm::Min;
        hyps.push(Hypothesis::plain("min t-norm", if ok { HypStatus::HoldsExact } else { HypStatus::Violated }, format!("t-norm is {}", e.space.tnorm)));
    }
    if let Some(h) = continuity_hypothesis(profile.continuity, &e) {
        if h.status == HypStatus::Declared {
            caveats.push("continuity is declared, not verified".into());
        }
        hyps.push(h);
    }
    if profile.self_distance {
        let maps: Vec<(&str, &SelfMap)> = vec![("f", &e.f), ("g", &e.g)];
        hyps.push(Hypothesis::from_verdict("M(x,fx,t), M(x,gx,t) > 0", cond::check_self_distance_positive(&probe, &maps)?));
    }
    let mut implication_exceptions = 0;
    match profile.condition {
        ConditionKind::PairMin { guarded } => {
            let v = cond::check_pair_min(&probe, &e.f, &e.g, &e.beta, &psi, cond::PairTerm::Direct, guarded)?;
            let name = if e.beta.is_const_one() { "psi-contractive pair" } else { "beta-psi contractive pair" };
            hyps.push(Hypothesis::from_verdict(name, v));
        }
        ConditionKind::Additive => {
            let psis = e.psis.clone().ok_or_else(|| EngineError::Profile(format!("{} needs psis", profile.name)))?;
            let v = cond::check_additive_contractive(&probe, &e.f, &e.g, &e.beta, &psis)?;
            implication_exceptions = v.implication_exceptions;
            notes.push(format!("reduced condition with psi = {}: {}", v.reduced_psi, v.reduced.status));
            hyps.push(Hypothesis::from_verdict("additive contractive condition", v.additive));
        }
        ConditionKind::Linear => {
            let cs = e.coefficients.clone().ok_or_else(|| EngineError::Profile(format!("{} needs coefficients", profile.name)))?;
            hyps.push(Hypothesis::from_verdict("linear contractive condition", cond::check_linear_contractive(&probe, &e.f, &e.g, &e.beta, &cs)?));
        }
        ConditionKind::GfFg => {
            hyps.push(Hypothesis::from_verdict("gf/fg contractive condition", cond::check_gf_fg_contractive(&probe, &e.f, &e.g, &e.beta, &psi)?));
        }
    }
    if profile.min_tnorm_and_single_contractive {
        hyps.push(Hypothesis::from_verdict("f fuzzy psi-contractive", cond::check_fuzzy_psi_contractive(&probe, &e.f, &psi)?));
        hyps.push(Hypothesis::from_verdict("g fuzzy psi-contractive", cond::check_fuzzy_psi_contractive(&probe, &e.g, &psi)?));
    }
    if !profile.beta_fixed_one {
        hyps.push(Hypothesis::from_verdict(
            "symmetric pair beta-admissible",
            cond::check_symmetric_beta_admissible_pair(&probe, &e.f, &e.g, &e.beta)?,
        ));
    }
    if let Some(h) = seed_hypothesis(profile.seed, &e)? {
        hyps.push(h);
    }
    if !exhaustive {
        caveats.push(format!("conditions checked on {} probe points, not the whole space", probes.len()));
    }

    let (fixed_set, uniq_pre) = fixed_points_and_preconditions(profile, &e, &probe)?;
    let mut conclusion = Conclusion {
        fixed_point: None,
        pointwise: None,
        metric: None,
        unique: Some(fixed_set.points.len() == 1),
        fixed_points: fixed_set.points.clone(),
        relative: fixed_set.relative,
        uniqueness_preconditions: uniq_pre,
        uniqueness_claim: profile.uniqueness,
    };
    if fixed_set.relative {
        caveats.push("fixed point set is relative to the probe points".into());
    }
    let mut report = TheoremReport {
        profile: profile.clone(),
        instance: inst.name.clone(),
        status: Outcome::NotApplicable,
        hypotheses: hyps,
        orbit: None,
        certificate: None,
        cluster: None,
        conclusion: conclusion.clone(),
        caveats,
        notes,
    };
    if implication_exceptions > 0 {
        report.notes.push(format!("{implication_exceptions} points where the additive condition holds but the reduced one fails"));
        report.status = Outcome::RefutationCandidate;
        return Ok(report);
    }
    if report.first_violation().is_some() {
        return Ok(report);
    }

    let orbit = generate_orbit(&e, opts.n_max)?;
    let alternation_holds = orbit.alternation_holds(&e)?;
    let beta_propagation = orbit.seed_beta_le_one().then(|| orbit.first_beta_excess().is_none());
    report.orbit = Some(OrbitSummary {
        length: orbit.len(),
        stopped_early: orbit.stopped_early,
        head: orbit.points.iter().take(6).cloned().collect(),
        last: orbit.last().clone(),
        alternation_holds,
        beta_propagation,
    });
    if !alternation_holds || beta_propagation == Some(false) {
        report.notes.push("orbit invariant broken under holding hypotheses".into());
        report.status = Outcome::RefutationCandidate;
        return Ok(report);
    }

    match certify_orbit(&orbit, &psi, profile.certificate_kind()) {
        Ok(cert) => {
            let failed = !cert.passed;
            report.certificate = Some(cert.summary());
            if failed {
                report.notes.push("certificate fails although every hypothesis holds".into());
                report.status = Outcome::RefutationCandidate;
                return Ok(report);
            }
        }
        Err(EngineError::Precondition(msg)) => {
            report.notes.push(format!("certificate skipped: {msg}"));
            report.status = Outcome::Inconclusive;
            return Ok(report);
        }
        Err(err) => return Err(err),
    }

    let eps = opts.eps.clone().unwrap_or_else(|| default_eps(orbit.points.iter().all(Scalar::is_exact)));
    let cluster = match detect_cluster(&e.space, &orbit, &grid, &eps) {
        Ok(c) => c,
        Err(EngineError::NoClusterEvidence(msg)) => {
            report.notes.push(format!("no cluster point: {msg}"));
            report.status = Outcome::Inconclusive;
            return Ok(report);
        }
        Err(err) => return Err(err),
    };
    report.cluster = Some(cluster.clone());

    // hypotheses quantified over sequences, checked on the generated orbit
    if let Some(kind) = profile.beta_limit {
        let (indices, both) = match kind {
            BetaLimit::Subsequence => (cluster.subsequence(&orbit), false),
            BetaLimit::SubsequenceBoth => (cluster.subsequence(&orbit), true),
            BetaLimit::FullSequence => ((0..orbit.len()).collect(), false),
        };
        let v = cond::check_beta_limit_condition(&probe.times, &e.beta, &orbit.points, &indices, &cluster.candidate, both)?;
        report.hypotheses.push(Hypothesis::from_verdict("beta limit condition (on the orbit)", v));
        report.caveats.push("sequence conditions are checked on the generated orbit only".into());
    }
    if profile.eventual_pairwise {
        let v = cond::check_eventual_pairwise_beta(&probe.times, &e.beta, &orbit.points)?;
        report.hypotheses.push(Hypothesis::from_verdict("eventual pairwise beta (on the orbit)", v));
    }
    if report.first_violation().is_some() {
        report.status = Outcome::NotApplicable;
        return Ok(report);
    }
    if cluster.overall(profile.cauchy_mode) != Evidence::Convergent {
        report.notes.push(format!("limit evidence for {} is not convergent", cluster.candidate));
        report.status = Outcome::Inconclusive;
        return Ok(report);
    }

    let check = verify_common_fixed_point(&e, &cluster.candidate)?;
    conclusion.fixed_point = Some(cluster.candidate.clone());
    conclusion.pointwise = Some(check.pointwise);
    conclusion.metric = Some(check.metric);
    report.conclusion = conclusion;
    if !check.verified() || !check.agree() {
        report.notes.push(format!("cluster point {} is not a common fixed point", cluster.candidate));
        report.status = Outcome::RefutationCandidate;
        return Ok(report);
    }

    let count = fixed_set.points.len();
    match profile.uniqueness {
        UniquenessClaim::Withdrawn if count > 1 => {
            report.notes.push(format!("the withdrawn uniqueness claim fails here: {count} common fixed points"));
        }
        UniquenessClaim::Withdrawn => {}
        _ if uniq_pre == Some(true) && count != 1 => {
            report.notes.push(uniqueness_contradiction(&e, &psi, &fixed_set.points)?);
            report.status = Outcome::RefutationCandidate;
            return Ok(report);
        }
        _ => {}
    }
    report.status = Outcome::Verified;
    Ok(report)
}

/// Fixed point set, and whether the profile's uniqueness preconditions hold.
fn fixed_points_and_preconditions(
    profile: &TheoremProfile,
    e: &PairInstance,
    probe: &cond::Probe<'_>,
) -> Result<(crate::engine::FixedPointSet, Option<bool>), EngineError> {
    let set = find_all_common_fixed_points(e)?;
    let pre = match profile.uniqueness {
        UniquenessClaim::Withdrawn => None,
        UniquenessClaim::Unconditional => Some(true),
        UniquenessClaim::Conditional { beta_le_one, positive } => {
            let (b, m) = cond::check_uniqueness_preconditions(probe, &e.beta)?;
            Some((!beta_le_one || b.holds()) && (!positive || m.holds()))
        }
    };
    Ok((set, pre))
}

/// The inequality M(x,y,t) ≥ ψ(M(x,y,t)) > M(x,y,t) for two distinct fixed
/// points; reaching this is never expected.
fn uniqueness_contradiction(e: &PairInstance, psi: &PsiFunction, points: &[Scalar]) -> Result<String, EngineError> {
    if points.len() < 2 {
        return Ok("no common fixed point among the enumerated points".into());
    }
    let (x, y) = (&points[0], &points[1]);
    for t in e.time_grid().times() {
        let m = e.space.m(x, y, t)?;
        if m.is_positive() && m != Scalar::one() {
            let w = Witness::new(vec![("x", x.clone()), ("y", y.clone()), ("t", t.clone()), ("M", m.clone()), ("psi(M)", psi.eval(&m)?)], "M < psi(M)");
            return Ok(format!("two fixed points under holding uniqueness preconditions: {w}"));
        }
    }
    Ok(format!("two fixed points {x}, {y} under holding uniqueness preconditions"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_get, CorpusId};
    use crate::profile::{profile_get, ProfileName};

    #[test]
    fn kind_mismatch_is_a_profile_error() {
        let inst = corpus_get(CorpusId::CortCounterexample).instance;
        let err = verify_theorem(&profile_get(ProfileName::Th32), &inst, &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, EngineError::Profile(_)), "{err}");
    }

    #[test]
    fn report_round_trips_and_reads() {
        let inst = corpus_get(CorpusId::Ex33).instance;
        let r = verify_theorem(&profile_get(ProfileName::Res3), &inst, &VerifyOptions::default()).unwrap();
        assert_eq!(r.exit_code(), 0);
        let back: TheoremReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let text = r.to_string();
        assert!(text.contains("VERIFIED") && text.contains("fixed point: 1"), "{text}");
        assert!(r.hypotheses.iter().all(|h| h.status != HypStatus::Violated));
        let pair = r.hypothesis("beta-psi contractive pair").unwrap();
        assert_eq!(pair.status, HypStatus::HoldsExact);
        assert_eq!(pair.verdict.as_ref().unwrap().branch_hits.len(), 3);
    }

    #[test]
    fn beta_one_breaks_the_pair_condition() {
        let inst = corpus_get(CorpusId::Ex33).instance.with_beta(BetaFunction::ConstOne);
        let r = verify_theorem(&profile_get(ProfileName::Res3), &inst, &VerifyOptions::default()).unwrap();
        assert_eq!(r.status, Outcome::NotApplicable);
        let w = r.first_violation().unwrap().verdict.as_ref().unwrap().witness.clone().unwrap();
        assert_eq!(w.get("x"), Some(&Scalar::ratio(1, 2)));
        assert_eq!(w.get("y"), Some(&Scalar::one()));
        assert_eq!(w.get("lhs"), Some(&Scalar::ratio(1, 2)));
        assert_eq!(w.get("rhs"), Some(&Scalar::ratio(3, 4)));
        assert!(r.orbit.is_none());
    }

    #[test]
    fn missing_psi_triple_is_a_profile_error() {
        let inst = corpus_get(CorpusId::Ex33).instance;
        let err = verify_theorem(&profile_get(ProfileName::Thc32), &inst, &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, EngineError::Profile(_)), "{err}");
    }
}
