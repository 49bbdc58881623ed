//! Alternating orbits, contractive certificates, cluster detection and
//! common fixed points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::CondError;
use crate::instance::{InstanceError, PairInstance};
use crate::maps::MapError;
use crate::psi::{PsiError, PsiFunction};
use crate::scalar::Scalar;
use crate::sequence::{classify_prefix, limit_evidence, tail_window, Evidence, LimitVerdict};
use crate::space::{FuzzySpace, SpaceError, TimeGrid};

pub const DEFAULT_N_MAX: usize = 10_000;
/// Steps of exact period ≤ 2 after which an orbit stops early.
pub const STABLE_WINDOW: usize = 32;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Condition(#[from] CondError),
    #[error("psi: {0}")]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no cluster evidence: {0}")]
    NoClusterEvidence(String),
    #[error("profile error: {0}")]
    Profile(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("empty search space: {0}")]
    EmptySearchSpace(String),
    #[error("{0}")]
    Invalid(String),
}

/// x₀, x₁ = fx₀, x₂ = gx₁, … with adjacent traces per time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    /// `points[0]` is the seed.
    pub points: Vec<Scalar>,
    pub times: Vec<Scalar>,
    /// `adjacent[n][i]` = M(x_n, x_{n+1}, times[i])
    pub adjacent: Vec<Vec<Scalar>>,
    /// `beta[n][i]` = β(x_n, x_{n+1}, times[i])
    pub beta: Vec<Vec<Scalar>>,
    /// `beta_reverse[n][i]` = β(x_{n+1}, x_n, times[i])
    pub beta_reverse: Vec<Vec<Scalar>>,
    pub stopped_early: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> &Scalar {
        self.points.last().expect("orbit has a seed")
    }

    /// Whether every step re-derives from f and g.
    pub fn alternation_holds(&self, inst: &PairInstance) -> Result<bool, MapError> {
        for n in 1..self.points.len() {
            let map = if n % 2 == 1 { &inst.f } else { &inst.g };
            if map.apply(&self.points[n - 1])? != self.points[n] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// β(x₀, x₁, t) ≤ 1 at every time.
    pub fn seed_beta_le_one(&self) -> bool {
        self.beta.first().is_some_and(|row| row.iter().all(|b| b.compare(&Scalar::one()).is_le()))
    }

    /// First recorded (n, direction) with β > 1 in either direction.
    pub fn first_beta_excess(&self) -> Option<(usize, &'static str)> {
        for n in 0..self.beta.len() {
            if self.beta[n].iter().any(|b| b.compare(&Scalar::one()).is_gt()) {
                return Some((n, "forward"));
            }
            if self.beta_reverse[n].iter().any(|b| b.compare(&Scalar::one()).is_gt()) {
                return Some((n, "reverse"));
            }
        }
        None
    }
}

fn exactly_periodic(points: &[Scalar], window: usize) -> bool {
    let n = points.len();
    n > window + 2 && (0..window).all(|k| points[n - 1 - k] == points[n - 3 - k])
}

pub fn generate_orbit(inst: &PairInstance, n_max: usize) -> Result<Orbit, EngineError> {
    if n_max < 3 {
        return Err(EngineError::Invalid(format!("n_max must be at least 3, got {n_max}")));
    }
    let space = &inst.space;
    if !space.contains(&inst.x0) {
        return Err(SpaceError::NotInSpace(inst.x0.to_string()).into());
    }
    let times = inst.time_grid().times().to_vec();
    let mut points = vec![inst.x0.clone()];
    let mut stopped_early = false;
    for n in 1..=n_max {
        let map = if n % 2 == 1 { &inst.f } else { &inst.g };
        let prev = &points[n - 1];
        let next = map.apply(prev)?;
        if !space.contains(&next) {
            return Err(MapError::Range(map.to_string(), prev.to_string(), next.to_string()).into());
        }
        points.push(next);
        if exactly_periodic(&points, STABLE_WINDOW) {
            stopped_early = n < n_max;
            break;
        }
    }
    let mut adjacent = Vec::with_capacity(points.len() - 1);
    let mut beta = Vec::with_capacity(points.len() - 1);
    let mut beta_reverse = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        adjacent.push(times.iter().map(|t| space.m(&w[0], &w[1], t)).collect::<Result<Vec<_>, _>>()?);
        beta.push(times.iter().map(|t| inst.beta.eval(&w[0], &w[1], t)).collect::<Result<Vec<_>, _>>()?);
        beta_reverse.push(times.iter().map(|t| inst.beta.eval(&w[1], &w[0], t)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Orbit { points, times, adjacent, beta, beta_reverse, stopped_early })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateKind {
    /// M(x_n, x_{n+1}, t) ≥ ψⁿ(M(x₀, x₁, t))
    Res3,
    /// M(x_k, x_{k+1}, t) ≥ ψ^{⌈k/2⌉−1}(S_t), S_t = min{M(x₁,x₂,t), M(x₂,x₃,t)}
    Res4,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub n: usize,
    pub t: Scalar,
    pub bound: Scalar,
    pub actual: Scalar,
    pub exact: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub psi: String,
    pub steps: Vec<CertificateStep>,
    pub passed: bool,
    pub exact: bool,
    /// For the first kind: M(x_n,x_{n+1},t) ≥ ψ(M(x_{n−1},x_n,t)) at every step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stepwise_passed: Option<bool>,
}

impl Certificate {
    pub fn first_failure(&self) -> Option<&CertificateStep> {
        self.steps.iter().find(|s| !s.ok)
    }

    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            kind: self.kind,
            psi: self.psi.clone(),
            steps_checked: self.steps.len(),
            passed: self.passed,
            exact: self.exact,
            stepwise_passed: self.stepwise_passed,
            first_failure: self.first_failure().cloned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub kind: CertificateKind,
    pub psi: String,
    pub steps_checked: usize,
    pub passed: bool,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stepwise_passed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<CertificateStep>,
}

/// Successive ψ-iterates of one start value, cached.
struct Iterates<'a> {
    psi: &'a PsiFunction,
    values: Vec<Scalar>,
}

impl<'a> Iterates<'a> {
    fn new(psi: &'a PsiFunction, start: Scalar) -> Self {
        Self { psi, values: vec![start] }
    }

    fn get(&mut self, n: usize) -> Result<&Scalar, PsiError> {
        while self.values.len() <= n {
            let last = self.values.last().expect("start");
            let next = if *last == Scalar::one() { last.clone() } else { self.psi.eval(last)? };
            self.values.push(next);
        }
        Ok(&self.values[n])
    }

    /// actual vs ψⁿ(start), exact whenever ψ^{n−1}(start) is.
    fn check(&mut self, actual: &Scalar, n: usize) -> Result<(Scalar, bool, bool), PsiError> {
        let bound = self.get(n)?.clone();
        if n > 0 && !bound.is_exact() {
            let prev = self.get(n - 1)?.clone();
            if prev.is_exact() {
                let c = self.psi.compare_with_image(actual, &prev)?;
                return Ok((bound, c.is_ge(), c.exact));
            }
        }
        let c = actual.compare(&bound);
        Ok((bound, c.is_ge(), c.exact))
    }
}

pub fn certify_orbit(orbit: &Orbit, psi: &PsiFunction, kind: CertificateKind) -> Result<Certificate, EngineError> {
    let mut steps = Vec::new();
    let mut stepwise = None;
    match kind {
        CertificateKind::Res3 => {
            for (n, row) in orbit.adjacent.iter().enumerate() {
                if let Some(i) = row.iter().position(|m| !m.is_positive()) {
                    return Err(EngineError::Precondition(format!(
                        "M(x_{n}, x_{}, {}) = 0 in the orbit; the first certificate needs positive adjacent values",
                        n + 1,
                        orbit.times[i]
                    )));
                }
            }
            let mut step_ok = true;
            for (i, t) in orbit.times.iter().enumerate() {
                let mut it = Iterates::new(psi, orbit.adjacent[0][i].clone());
                for n in 0..orbit.adjacent.len() {
                    let actual = &orbit.adjacent[n][i];
                    let (bound, ok, exact) = it.check(actual, n)?;
                    steps.push(CertificateStep { n, t: t.clone(), bound, actual: actual.clone(), exact, ok });
                    if n > 0 {
                        step_ok &= psi.compare_with_image(actual, &orbit.adjacent[n - 1][i])?.is_ge();
                    }
                }
            }
            stepwise = Some(step_ok);
        }
        CertificateKind::Res4 => {
            if orbit.adjacent.len() < 3 {
                return Err(EngineError::Precondition("the second certificate needs x₀, …, x₃".into()));
            }
            for (i, t) in orbit.times.iter().enumerate() {
                let (a, b) = (&orbit.adjacent[1][i], &orbit.adjacent[2][i]);
                if !a.is_positive() || !b.is_positive() {
                    return Err(EngineError::Precondition(format!("M(x_1,x_2,{t}) or M(x_2,x_3,{t}) is 0")));
                }
                let mut it = Iterates::new(psi, a.min_of(b));
                for k in 1..orbit.adjacent.len() {
                    let actual = &orbit.adjacent[k][i];
                    let (bound, ok, exact) = it.check(actual, k.div_ceil(2) - 1)?;
                    steps.push(CertificateStep { n: k, t: t.clone(), bound, actual: actual.clone(), exact, ok });
                }
            }
        }
    }
    let passed = steps.iter().all(|s| s.ok);
    let exact = steps.iter().all(|s| s.exact);
    Ok(Certificate { kind, psi: psi.to_string(), steps, passed, exact, stepwise_passed: stepwise })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recurrence {
    Exact,
    Ball,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub candidate: Scalar,
    pub parity: Parity,
    /// Tail indices where the candidate recurs, of the chosen parity.
    pub indices: Vec<usize>,
    pub recurrence: Recurrence,
    /// Limit evidence along every orbit index of the chosen parity.
    pub evidence: LimitVerdict,
    pub gcauchy: LimitVerdict,
    pub cauchy: LimitVerdict,
}

impl Cluster {
    /// Worst of the limit and G-Cauchy evidence, and of Cauchy evidence when
    /// `cauchy_mode`.
    pub fn overall(&self, cauchy_mode: bool) -> Evidence {
        let mut e = self.evidence.evidence.max(self.gcauchy.evidence);
        if cauchy_mode {
            e = e.max(self.cauchy.evidence);
        }
        e
    }

    /// Orbit indices of the chosen parity.
    pub fn subsequence(&self, orbit: &Orbit) -> Vec<usize> {
        let first = if self.parity == Parity::Even { 0 } else { 1 };
        (first..orbit.len()).step_by(2).collect()
    }
}

fn split_parity(indices: &[usize]) -> (Parity, Vec<usize>) {
    let even: Vec<usize> = indices.iter().copied().filter(|i| i % 2 == 0).collect();
    if even.len() >= 2 {
        (Parity::Even, even)
    } else {
        (Parity::Odd, indices.iter().copied().filter(|i| i % 2 == 1).collect())
    }
}

pub fn detect_cluster(space: &FuzzySpace, orbit: &Orbit, grid: &TimeGrid, eps: &Scalar) -> Result<Cluster, EngineError> {
    let len = orbit.len();
    if len < 10 {
        return Err(EngineError::Invalid(format!("cluster detection needs at least 10 orbit points, got {len}")));
    }
    let class = classify_prefix(space, &orbit.points, grid, eps, None)?;
    if class.gcauchy.evidence == Evidence::Divergent {
        return Err(EngineError::NoClusterEvidence(format!(
            "adjacent orbit values stay below 1 - eps in the tail{}",
            class.gcauchy.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default()
        )));
    }
    let start = len - tail_window(len);
    let mut seen: BTreeMap<&Scalar, Vec<usize>> = BTreeMap::new();
    for (i, p) in orbit.points.iter().enumerate().skip(start) {
        seen.entry(p).or_default().push(i);
    }
    // most occurrences, then a recurring even index, then the smallest point
    let best = seen
        .iter()
        .filter(|(_, ix)| ix.len() >= 2)
        .max_by(|a, b| {
            let even = |ix: &Vec<usize>| ix.iter().filter(|i| *i % 2 == 0).count() >= 2;
            a.1.len().cmp(&b.1.len()).then(even(a.1).cmp(&even(b.1))).then(b.0.cmp(a.0))
        })
        .map(|(p, ix)| ((*p).clone(), ix.clone()));
    let (candidate, occurrences, recurrence) = match best {
        Some((p, ix)) => (p, ix, Recurrence::Exact),
        None if orbit.points.iter().all(Scalar::is_exact) => {
            return Err(EngineError::NoClusterEvidence("no point recurs exactly in the orbit tail".into()));
        }
        None => {
            let cand = orbit.last().clone();
            let threshold = Scalar::one().sub(eps);
            let times = space.check_times(grid);
            let mut ix = Vec::new();
            for i in start..len {
                let mut close = true;
                for t in &times {
                    close &= space.m(&orbit.points[i], &cand, t)?.compare(&threshold).is_ge();
                }
                if close {
                    ix.push(i);
                }
            }
            if ix.len() < 2 {
                return Err(EngineError::NoClusterEvidence("no point recurs within the tolerance ball".into()));
            }
            (cand, ix, Recurrence::Ball)
        }
    };
    let (parity, indices) = split_parity(&occurrences);
    let first = if parity == Parity::Even { 0 } else { 1 };
    let sub: Vec<Scalar> = orbit.points.iter().skip(first).step_by(2).cloned().collect();
    let evidence = limit_evidence(space, &sub, &candidate, grid, eps)?;
    Ok(Cluster { candidate, parity, indices, recurrence, evidence, gcauchy: class.gcauchy, cauchy: class.cauchy })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCheck {
    /// f(x) = x and g(x) = x as points.
    pub pointwise: bool,
    /// M(x,fx,t) = M(x,gx,t) = 1 on the whole grid.
    pub metric: bool,
}

impl FixedPointCheck {
    pub fn agree(&self) -> bool {
        self.pointwise == self.metric
    }

    pub fn verified(&self) -> bool {
        self.pointwise && self.metric
    }
}

pub fn verify_common_fixed_point(inst: &PairInstance, x: &Scalar) -> Result<FixedPointCheck, EngineError> {
    if !inst.space.contains(x) {
        return Err(SpaceError::NotInSpace(x.to_string()).into());
    }
    let (fx, gx) = (inst.f.apply(x)?, inst.g.apply(x)?);
    let pointwise = &fx == x && &gx == x;
    let mut metric = true;
    for t in inst.time_grid().times() {
        for y in [&fx, &gx] {
            metric &= inst.space.m(x, y, t)? == Scalar::one();
        }
    }
    Ok(FixedPointCheck { pointwise, metric })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointSet {
    pub points: Vec<Scalar>,
    /// Enumerated over probes only, not the whole space.
    pub relative: bool,
}

pub fn find_all_common_fixed_points(inst: &PairInstance) -> Result<FixedPointSet, EngineError> {
    let (candidates, relative) = match inst.space.points.finite_points() {
        Some(all) => (all.to_vec(), false),
        None => (inst.probes(), true),
    };
    let mut points = Vec::new();
    for x in candidates {
        let c = verify_common_fixed_point(inst, &x)?;
        if !c.agree() {
            return Err(EngineError::Invalid(format!("fixed point routes disagree at {x}")));
        }
        if c.verified() {
            points.push(x);
        }
    }
    points.sort();
    Ok(FixedPointSet { points, relative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Branch;
    use crate::maps::{BetaFunction, Continuity, SelfMap};
    use crate::sequence::default_eps;
    use crate::space::{Component, Metric, MetricTable, PointSet, SpaceKind};
    use crate::tnorm::TNorm;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn ex_space() -> FuzzySpace {
        let pts = PointSet::Symbolic {
            components: vec![
                Component::DyadicReciprocals { min_exponent: 2 },
                Component::Interval { lo: q(1, 2), hi: q(1, 1), lo_open: false, hi_open: false },
            ],
        };
        let probes = [(1, 8), (1, 4), (1, 2), (9, 16), (5, 8), (3, 4), (7, 8), (1, 1)].iter().map(|&(n, d)| q(n, d)).collect();
        FuzzySpace::new(pts, Metric::Ratio, TNorm::Product, SpaceKind::GV).with_probes(probes)
    }

    fn ex1(x0: Scalar) -> PairInstance {
        let m = SelfMap::piecewise(vec![Branch::new("x = 1/4", "1/4").unwrap(), Branch::new("else", "1").unwrap()], Continuity::Continuous);
        let beta = BetaFunction::Piecewise { branches: vec![Branch::new("x = y = 1", "1").unwrap(), Branch::new("else", "4").unwrap()] };
        PairInstance::new("ex1", ex_space(), m.clone(), m, beta, PsiFunction::AffineHalf, x0)
    }

    fn ex33() -> PairInstance {
        PairInstance::new("ex33", ex_space(), SelfMap::identity(), SelfMap::constant(q(1, 1)), BetaFunction::ConstOne, PsiFunction::AffineHalf, q(1, 1))
    }

    /// Reference orbit by plain iteration.
    fn reference_orbit(inst: &PairInstance, n: usize) -> Vec<Scalar> {
        let mut v = vec![inst.x0.clone()];
        for k in 1..=n {
            let m = if k % 2 == 1 { &inst.f } else { &inst.g };
            v.push(m.apply(&v[k - 1]).unwrap());
        }
        v
    }

    #[test]
    fn orbits() {
        let o = generate_orbit(&ex33(), DEFAULT_N_MAX).unwrap();
        assert!(o.stopped_early);
        assert!(o.points.iter().all(|p| *p == q(1, 1)));
        assert!(o.alternation_holds(&ex33()).unwrap());

        let o = generate_orbit(&ex1(q(1, 4)), 100).unwrap();
        assert!(o.points.iter().all(|p| *p == q(1, 4)));

        let inst = ex1(q(1, 2));
        let o = generate_orbit(&inst, 100).unwrap();
        assert_eq!(o.points, reference_orbit(&inst, o.len() - 1));
        assert_eq!(&o.points[..3], &[q(1, 2), q(1, 1), q(1, 1)]);
        assert_eq!(o.adjacent[0][0], q(1, 2));
        assert!(!o.seed_beta_le_one());

        assert!(matches!(generate_orbit(&inst, 2), Err(EngineError::Invalid(_))));
        let mut esc = ex33();
        esc.g = SelfMap::constant(q(1, 3));
        assert!(matches!(generate_orbit(&esc, 10), Err(EngineError::Map(MapError::Range(..)))));
    }

    #[test]
    fn certificates() {
        let o = generate_orbit(&ex33(), DEFAULT_N_MAX).unwrap();
        let c = certify_orbit(&o, &PsiFunction::AffineHalf, CertificateKind::Res3).unwrap();
        assert!(c.passed && c.exact && c.stepwise_passed == Some(true));
        assert!(c.steps.iter().all(|s| s.actual == Scalar::one()));

        let o = generate_orbit(&ex1(q(1, 2)), 100).unwrap();
        let c = certify_orbit(&o, &PsiFunction::AffineHalf, CertificateKind::Res3).unwrap();
        assert_eq!((&c.steps[0].actual, &c.steps[0].bound), (&q(1, 2), &q(1, 2)));
        assert_eq!(c.steps[1].bound, q(3, 4));
        assert!(c.passed);
        let r4 = certify_orbit(&o, &PsiFunction::Sqrt, CertificateKind::Res4).unwrap();
        assert!(r4.passed);
    }

    #[test]
    fn certificate_failure_is_named() {
        // hand-built orbit whose adjacent values drop
        let o = Orbit {
            points: vec![q(1, 1), q(1, 2), q(1, 4), q(1, 8)],
            times: vec![q(1, 1)],
            adjacent: vec![vec![q(1, 2)], vec![q(1, 2)], vec![q(1, 2)]],
            beta: vec![vec![q(1, 1)]; 3],
            beta_reverse: vec![vec![q(1, 1)]; 3],
            stopped_early: false,
        };
        let c = certify_orbit(&o, &PsiFunction::AffineHalf, CertificateKind::Res3).unwrap();
        assert!(!c.passed);
        let f = c.first_failure().unwrap();
        assert_eq!((f.n, &f.bound, &f.actual), (1, &q(3, 4), &q(1, 2)));
        assert_eq!(c.stepwise_passed, Some(false));

        let mut zero = o.clone();
        zero.adjacent[1][0] = Scalar::zero();
        match certify_orbit(&zero, &PsiFunction::AffineHalf, CertificateKind::Res3) {
            Err(EngineError::Precondition(msg)) => assert!(msg.contains("x_1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sqrt_certificate_stays_exact_one_step() {
        let o = Orbit {
            points: vec![q(1, 4), q(1, 1), q(1, 1)],
            times: vec![q(1, 1)],
            adjacent: vec![vec![q(1, 4)], vec![q(1, 2)]],
            beta: vec![vec![q(1, 1)]; 2],
            beta_reverse: vec![vec![q(1, 1)]; 2],
            stopped_early: false,
        };
        let c = certify_orbit(&o, &PsiFunction::Sqrt, CertificateKind::Res3).unwrap();
        assert!(c.passed && c.exact);
    }

    #[test]
    fn clusters() {
        let s = ex_space();
        let eps = default_eps(true);
        let grid = s.default_time_grid();
        let o = generate_orbit(&ex33(), DEFAULT_N_MAX).unwrap();
        let c = detect_cluster(&s, &o, &grid, &eps).unwrap();
        assert_eq!((c.candidate.clone(), c.parity, c.recurrence), (q(1, 1), Parity::Even, Recurrence::Exact));
        assert_eq!(c.overall(true), Evidence::Convergent);
        assert!(c.indices.iter().all(|i| i % 2 == 0));

        let o = generate_orbit(&ex1(q(1, 2)), 100).unwrap();
        assert_eq!(detect_cluster(&s, &o, &grid, &eps).unwrap().candidate, q(1, 1));

        let two = PairInstance::new(
            "two-cycle",
            s.clone(),
            SelfMap::constant(q(1, 2)),
            SelfMap::constant(q(1, 1)),
            BetaFunction::ConstOne,
            PsiFunction::AffineHalf,
            q(1, 1),
        );
        let o = generate_orbit(&two, 200).unwrap();
        assert!(o.stopped_early);
        assert!(matches!(detect_cluster(&s, &o, &grid, &eps), Err(EngineError::NoClusterEvidence(_))));
    }

    #[test]
    fn fixed_points() {
        let e = ex33();
        assert_eq!(verify_common_fixed_point(&e, &q(1, 1)).unwrap(), FixedPointCheck { pointwise: true, metric: true });
        assert!(!verify_common_fixed_point(&e, &q(1, 2)).unwrap().verified());
        let set = find_all_common_fixed_points(&e).unwrap();
        assert_eq!(set.points, vec![q(1, 1)]);
        assert!(set.relative);
        let set = find_all_common_fixed_points(&ex1(q(1, 1))).unwrap();
        assert_eq!(set.points, vec![q(1, 4), q(1, 1)]);

        let pts = vec![q(0, 1), q(1, 3), q(2, 3), q(1, 1)];
        let d = FuzzySpace::new(PointSet::finite(pts.clone()), Metric::Discrete, TNorm::Min, SpaceKind::KM);
        let id = SelfMap::identity();
        let inst = PairInstance::new("discrete", d, id.clone(), id, BetaFunction::ConstOne, PsiFunction::Sqrt, q(0, 1));
        let set = find_all_common_fixed_points(&inst).unwrap();
        assert_eq!((set.points, set.relative), (pts, false));
    }

    #[test]
    fn routes_agree_on_tables() {
        // a table metric where M(x,y,t) = 1 only on the diagonal
        let a = q(1, 2);
        let b = q(1, 1);
        let table = MetricTable::constant(vec![(a.clone(), b.clone(), q(1, 2))]);
        let s = FuzzySpace::new(PointSet::finite(vec![a.clone(), b.clone()]), Metric::Table(table), TNorm::Product, SpaceKind::GV);
        for (f, g) in [(SelfMap::identity(), SelfMap::constant(b.clone())), (SelfMap::constant(a.clone()), SelfMap::identity())] {
            let inst = PairInstance::new("t", s.clone(), f, g, BetaFunction::ConstOne, PsiFunction::AffineHalf, a.clone());
            for x in [&a, &b] {
                assert!(verify_common_fixed_point(&inst, x).unwrap().agree());
            }
        }
    }
}
