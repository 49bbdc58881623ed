//! Kramosil–Michalek (KM) and George–Veeramani (GV) fuzzy metric spaces.
//!
//! A space is a point universe, a membership function `M(x, y, t)`, a
//! t-norm and a kind. Universal statements ("for all x, y, z and t > 0")
//! are checked over a finite probe set and a [`TimeGrid`]; spaces whose
//! membership function ignores `t` are confirmed to do so at three times
//! and then checked at `t = 1` only, which makes their verdicts exact.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::{AxiomReport, EvidenceClass, Witness};
use crate::scalar::{Scalar, UnitValue};
use crate::tnorm::{TNorm, TNormError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("metric table has no entry for ({0}, {1})")]
    GridMiss(String, String),
    #[error("point {0} is not in the space")]
    NotInSpace(String),
    #[error("t-norm: {0}")]
    TNorm(#[from] TNormError),
    #[error("invalid space: {0}")]
    Invalid(String),
}

/// One piece of a symbolically described subset of the reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Component {
    Interval {
        lo: Scalar,
        hi: Scalar,
        #[serde(default)]
        lo_open: bool,
        #[serde(default)]
        hi_open: bool,
    },
    /// `{1/2ⁿ : n ≥ min_exponent}`
    DyadicReciprocals { min_exponent: u32 },
    Points { values: Vec<Scalar> },
}

impl Component {
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            Self::Interval { lo, hi, lo_open, hi_open } => {
                let above = if *lo_open { x > lo } else { x >= lo };
                let below = if *hi_open { x < hi } else { x <= hi };
                above && below
            }
            Self::DyadicReciprocals { min_exponent } => {
                let Some(q) = x.as_exact() else { return false };
                if !q.is_rational() {
                    return false;
                }
                let r = q.rational_part();
                if *r.numer() != 1.into() {
                    return false;
                }
                let d = r.denom();
                let bits = d.bits();
                // power of two: exactly one bit set
                bits >= 1 && d.trailing_zeros() == Some(bits - 1) && bits > u64::from(*min_exponent)
            }
            Self::Points { values } => values.contains(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointSet {
    Finite { values: Vec<Scalar> },
    Symbolic { components: Vec<Component> },
}

impl PointSet {
    pub fn finite(values: Vec<Scalar>) -> Self {
        Self::Finite { values }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        if !x.is_exact() {
            return false;
        }
        match self {
            Self::Finite { values } => values.contains(x),
            Self::Symbolic { components } => components.iter().any(|c| c.contains(x)),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite { .. })
    }

    pub fn finite_points(&self) -> Option<&[Scalar]> {
        match self {
            Self::Finite { values } => Some(values),
            Self::Symbolic { .. } => None,
        }
    }
}

/// A membership function tabulated per point pair as a step function of `t`.
///
/// With breakpoints `b₁ < … < bₖ` each entry carries `k + 1` values: the
/// first applies on `(0, b₁]`, the next on `(b₁, b₂]`, and so on, when
/// `left_continuous` is set; otherwise the steps are `[bᵢ, bᵢ₊₁)`. Missing
/// diagonal entries are 1, a missing `(x, y)` falls back to `(y, x)`, and
/// every entry is 0 at `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricTable {
    #[serde(default)]
    pub breakpoints: Vec<Scalar>,
    #[serde(default = "default_true")]
    pub left_continuous: bool,
    pub entries: Vec<TableEntry>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub x: Scalar,
    pub y: Scalar,
    pub values: Vec<Scalar>,
}

impl MetricTable {
    /// A time-independent table.
    pub fn constant(entries: Vec<(Scalar, Scalar, Scalar)>) -> Self {
        Self {
            breakpoints: Vec::new(),
            left_continuous: true,
            entries: entries.into_iter().map(|(x, y, v)| TableEntry { x, y, values: vec![v] }).collect(),
        }
    }

    fn lookup(&self, x: &Scalar, y: &Scalar) -> Option<&TableEntry> {
        self.entries
            .iter()
            .find(|e| &e.x == x && &e.y == y)
            .or_else(|| self.entries.iter().find(|e| &e.x == y && &e.y == x))
    }

    fn eval(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<Scalar, SpaceError> {
        if t.is_zero() {
            return Ok(Scalar::zero());
        }
        let Some(entry) = self.lookup(x, y) else {
            if x == y {
                return Ok(Scalar::one());
            }
            return Err(SpaceError::GridMiss(x.to_string(), y.to_string()));
        };
        let k = if self.left_continuous {
            self.breakpoints.iter().filter(|b| *b < t).count()
        } else {
            self.breakpoints.iter().filter(|b| *b <= t).count()
        };
        entry
            .values
            .get(k)
            .cloned()
            .ok_or_else(|| SpaceError::Invalid(format!("entry ({x}, {y}) has too few step values")))
    }

    fn validate(&self) -> Result<(), SpaceError> {
        let mut sorted = self.breakpoints.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != self.breakpoints || sorted.iter().any(|b| !b.is_positive()) {
            return Err(SpaceError::Invalid("table breakpoints must be positive and strictly increasing".into()));
        }
        for e in &self.entries {
            if e.values.len() != self.breakpoints.len() + 1 {
                return Err(SpaceError::Invalid(format!(
                    "entry ({}, {}) needs {} values",
                    e.x,
                    e.y,
                    self.breakpoints.len() + 1
                )));
            }
            for v in &e.values {
                UnitValue::new(v.clone()).map_err(|err| SpaceError::Invalid(err.to_string()))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Metric {
    /// min{x,y}/max{x,y} on positive reals, independent of t.
    Ratio,
    /// 1 iff x = y and t > 0, else 0.
    Discrete,
    /// t/(t + |x − y|).
    Standard,
    Table(MetricTable),
}

impl Metric {
    pub fn is_named(&self) -> bool {
        !matches!(self, Self::Table(_))
    }

    fn eval(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<Scalar, SpaceError> {
        match self {
            Self::Ratio => {
                if !x.is_positive() || !y.is_positive() {
                    return Err(SpaceError::Domain(format!("ratio metric needs positive points, got ({x}, {y})")));
                }
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                Ok(lo.div(hi).expect("positive denominator"))
            }
            Self::Discrete => Ok(if x == y && t.is_positive() { Scalar::one() } else { Scalar::zero() }),
            Self::Standard => {
                if t.is_zero() {
                    return Ok(Scalar::zero());
                }
                let d = x.sub(y);
                let d = if d < Scalar::zero() { d.neg() } else { d };
                Ok(t.div(&t.add(&d)).expect("positive denominator"))
            }
            Self::Table(tab) => tab.eval(x, y, t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    KM,
    GV,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::KM => "KM",
            Self::GV => "GV",
        })
    }
}

/// Declared completeness class. Not decidable from finite evidence, so it
/// is carried as metadata and echoed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    GComplete,
    WeakGComplete,
    Unknown,
}

impl Completeness {
    /// Whether a space declared `self` meets a theorem requiring `required`.
    /// G-complete implies both complete and weak G-complete.
    pub fn satisfies(self, required: Completeness) -> bool {
        use Completeness::*;
        match required {
            Unknown => true,
            GComplete => self == GComplete,
            Complete => matches!(self, Complete | GComplete),
            WeakGComplete => matches!(self, WeakGComplete | GComplete),
        }
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Complete => "complete",
            Self::GComplete => "G-complete",
            Self::WeakGComplete => "weak G-complete",
            Self::Unknown => "unknown",
        })
    }
}

/// Finite stand-in for "for all t > 0": sorted, positive, duplicate-free.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct TimeGrid(Vec<Scalar>);

impl TimeGrid {
    pub fn new(mut times: Vec<Scalar>) -> Result<Self, SpaceError> {
        times.sort();
        times.dedup();
        if times.is_empty() || times.iter().any(|t| !t.is_positive()) {
            return Err(SpaceError::Invalid("time grid must be nonempty and strictly positive".into()));
        }
        Ok(Self(times))
    }

    /// `{2ᵏ : k = −20..20}` together with `breakpoints`.
    pub fn default_with(breakpoints: &[Scalar]) -> Self {
        let mut v: Vec<Scalar> = (-20..=20).map(Scalar::pow2).collect();
        v.extend(breakpoints.iter().filter(|b| b.is_positive()).cloned());
        Self::new(v).expect("nonempty positive grid")
    }

    pub fn single(t: Scalar) -> Self {
        Self::new(vec![t]).expect("positive time")
    }

    pub fn times(&self) -> &[Scalar] {
        &self.0
    }
}

impl TryFrom<Vec<Scalar>> for TimeGrid {
    type Error = SpaceError;
    fn try_from(v: Vec<Scalar>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<TimeGrid> for Vec<Scalar> {
    fn from(g: TimeGrid) -> Self {
        g.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzySpace {
    pub points: PointSet,
    pub metric: Metric,
    pub tnorm: TNorm,
    pub space_kind: SpaceKind,
    #[serde(default)]
    pub t_independent: bool,
    #[serde(default = "unknown_completeness")]
    pub completeness: Completeness,
    /// Declared non-Archimedean flag; `None` means "check it".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_archimedean: Option<bool>,
    /// Probe points standing in for the universe; defaults to all points of a
    /// finite set.
    #[serde(default)]
    pub probes: Vec<Scalar>,
    #[serde(default)]
    pub time_breakpoints: Vec<Scalar>,
}

fn unknown_completeness() -> Completeness {
    Completeness::Unknown
}

/// The three times at which t-independence is confirmed.
fn independence_times() -> [Scalar; 3] {
    [Scalar::ratio(1, 2), Scalar::one(), Scalar::integer(2)]
}

impl FuzzySpace {
    pub fn new(points: PointSet, metric: Metric, tnorm: TNorm, space_kind: SpaceKind) -> Self {
        let t_independent = matches!(metric, Metric::Ratio | Metric::Discrete);
        let time_breakpoints = match &metric {
            Metric::Table(t) => t.breakpoints.clone(),
            _ => Vec::new(),
        };
        Self {
            points,
            metric,
            tnorm,
            space_kind,
            t_independent,
            completeness: Completeness::Unknown,
            non_archimedean: None,
            probes: Vec::new(),
            time_breakpoints,
        }
    }

    pub fn with_completeness(mut self, c: Completeness) -> Self {
        self.completeness = c;
        self
    }

    pub fn with_probes(mut self, probes: Vec<Scalar>) -> Self {
        self.probes = probes;
        self
    }

    pub fn with_t_independent(mut self, flag: bool) -> Self {
        self.t_independent = flag;
        self
    }

    /// Structural validation of a constructed or deserialized space.
    pub fn validate(&self) -> Result<(), SpaceError> {
        if let PointSet::Finite { values } = &self.points {
            if values.is_empty() {
                return Err(SpaceError::Invalid("finite point set is empty".into()));
            }
            let mut v = values.clone();
            v.sort();
            v.dedup();
            if v.len() != values.len() {
                return Err(SpaceError::Invalid("finite point set has duplicates".into()));
            }
            if values.iter().any(|p| !p.is_exact()) {
                return Err(SpaceError::Invalid("points must be exact".into()));
            }
        }
        if let PointSet::Symbolic { .. } = &self.points {
            if self.probes.is_empty() {
                return Err(SpaceError::Invalid("symbolic point set needs a nonempty probe set".into()));
            }
        }
        for p in &self.probes {
            if !self.points.contains(p) {
                return Err(SpaceError::NotInSpace(p.to_string()));
            }
        }
        if let Metric::Table(t) = &self.metric {
            t.validate()?;
        }
        Ok(())
    }

    /// Probe points, defaulting to every point of a finite universe.
    pub fn probe_points(&self) -> Vec<Scalar> {
        let mut p = if self.probes.is_empty() {
            self.points.finite_points().map(<[Scalar]>::to_vec).unwrap_or_default()
        } else {
            self.probes.clone()
        };
        p.sort();
        p.dedup();
        p
    }

    /// Whether the probes cover the whole universe.
    pub fn probes_exhaustive(&self) -> bool {
        match self.points.finite_points() {
            Some(all) => {
                let probes = self.probe_points();
                all.iter().all(|p| probes.contains(p))
            }
            None => false,
        }
    }

    pub fn default_time_grid(&self) -> TimeGrid {
        TimeGrid::default_with(&self.time_breakpoints)
    }

    /// Times at which universal-in-t checks are evaluated.
    pub fn check_times(&self, grid: &TimeGrid) -> Vec<Scalar> {
        if self.t_independent {
            vec![Scalar::one()]
        } else {
            grid.times().to_vec()
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.points.contains(x)
    }

    /// M(x, y, t).
    pub fn metric_eval(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<UnitValue, SpaceError> {
        for p in [x, y] {
            if !self.points.contains(p) {
                return Err(SpaceError::NotInSpace(p.to_string()));
            }
        }
        if t < &Scalar::zero() || (t.is_zero() && self.space_kind == SpaceKind::GV) {
            return Err(SpaceError::Domain(format!("t = {t} is outside the time domain of a {} space", self.space_kind)));
        }
        let v = self.metric.eval(x, y, t)?;
        UnitValue::new(v).map_err(|e| SpaceError::Invalid(e.to_string()))
    }

    /// M(x, y, t) as a plain scalar.
    pub fn m(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<Scalar, SpaceError> {
        self.metric_eval(x, y, t).map(UnitValue::into_inner)
    }

    fn evidence(&self, exact: bool) -> EvidenceClass {
        if exact && self.t_independent {
            EvidenceClass::Exact
        } else {
            EvidenceClass::Sampled
        }
    }

    fn coverage_note(&self, probes: &[Scalar]) -> String {
        if self.probes_exhaustive() {
            String::new()
        } else {
            format!("quantified over {} probe points only", probes.len())
        }
    }

    fn independence_check(&self, probe: &[Scalar]) -> Result<Option<Witness>, SpaceError> {
        let ts = independence_times();
        for x in probe {
            for y in probe {
                let base = self.m(x, y, &ts[0])?;
                for t in &ts[1..] {
                    let v = self.m(x, y, t)?;
                    if v != base {
                        return Ok(Some(Witness::new(
                            vec![("x", x.clone()), ("y", y.clone()), ("t", t.clone())],
                            format!("M = {v} differs from {base} at t = {}", ts[0]),
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Check the defining clauses (a)–(e) of the space's kind.
    pub fn check_axioms(&self, probe: &[Scalar], grid: &TimeGrid) -> Result<AxiomReport, SpaceError> {
        let mut probe = probe.to_vec();
        probe.sort();
        probe.dedup();
        if probe.is_empty() {
            return Err(SpaceError::Invalid("probe set is empty".into()));
        }
        let times = self.check_times(grid);
        let note = self.coverage_note(&probe);
        let mut report = AxiomReport::new(format!("{} fuzzy metric axioms", self.space_kind));

        if self.t_independent {
            let w = self.independence_check(&probe)?;
            let class = match &self.metric {
                Metric::Ratio | Metric::Discrete => EvidenceClass::Analytic,
                Metric::Table(t) if t.breakpoints.is_empty() => EvidenceClass::Exact,
                _ => EvidenceClass::Sampled,
            };
            report.push("t_independence", class, w);
        }

        // (a)
        let mut exact = true;
        let mut wit = None;
        'a: for x in &probe {
            for y in &probe {
                match self.space_kind {
                    SpaceKind::KM => {
                        let v = self.m(x, y, &Scalar::zero())?;
                        if !v.is_zero() {
                            wit = Some(Witness::new(vec![("x", x.clone()), ("y", y.clone()), ("t", Scalar::zero())], format!("M(x,y,0) = {v}")));
                            break 'a;
                        }
                    }
                    SpaceKind::GV => {
                        for t in &times {
                            let v = self.m(x, y, t)?;
                            let c = v.compare(&Scalar::zero());
                            exact &= c.exact;
                            if !c.is_gt() {
                                wit = Some(Witness::new(vec![("x", x.clone()), ("y", y.clone()), ("t", t.clone())], format!("M(x,y,t) = {v} is not > 0")));
                                break 'a;
                            }
                        }
                    }
                }
            }
        }
        report.push_note("a", self.evidence(exact), wit, &note);

        // (b)
        let mut wit = None;
        'b: for x in &probe {
            for y in &probe {
                let ones: Vec<bool> = times
                    .iter()
                    .map(|t| self.m(x, y, t).map(|v| v == Scalar::one()))
                    .collect::<Result<_, _>>()?;
                let same = x == y;
                let bad = match self.space_kind {
                    // M(x,y,t) = 1 ⟺ x = y, at every t
                    SpaceKind::GV => ones.iter().position(|&o| o != same),
                    // M(x,y,t) = 1 for all t ⟺ x = y
                    SpaceKind::KM => {
                        let all = ones.iter().all(|&o| o);
                        (all != same).then_some(0)
                    }
                };
                if let Some(k) = bad {
                    let t = times[k].clone();
                    wit = Some(Witness::new(
                        vec![("x", x.clone()), ("y", y.clone()), ("t", t.clone())],
                        format!("M(x,y,t) = {} with x {} y", self.m(x, y, &t)?, if same { "=" } else { "!=" }),
                    ));
                    break 'b;
                }
            }
        }
        report.push_note("b", self.evidence(true), wit, &note);

        // (c)
        let mut wit = None;
        'c: for (i, x) in probe.iter().enumerate() {
            for y in &probe[i + 1..] {
                for t in &times {
                    let (u, v) = (self.m(x, y, t)?, self.m(y, x, t)?);
                    if u != v {
                        wit = Some(Witness::new(
                            vec![("x", x.clone()), ("y", y.clone()), ("t", t.clone())],
                            format!("M(x,y,t) = {u} but M(y,x,t) = {v}"),
                        ));
                        break 'c;
                    }
                }
            }
        }
        report.push_note("c", self.evidence(true), wit, &note);

        // (d)
        let (exact, wit) = self.triangle_sweep(&probe, &times, |t, s| t.add(s))?;
        report.push_note("d", self.evidence(exact), wit, &note);

        // (e)
        let wit = self.continuity_check(&probe)?;
        let (class, enote) = if self.metric.is_named() {
            (EvidenceClass::Analytic, "named formula is continuous in t on (0,inf)".to_string())
        } else {
            (EvidenceClass::Sampled, "checked at table breakpoints".to_string())
        };
        report.push_note("e", class, wit, &enote);
        Ok(report)
    }

    /// Sweep `M(x,y,t) * M(y,z,s) <= M(x,z,combine(t,s))` over probe triples.
    fn triangle_sweep(
        &self,
        probe: &[Scalar],
        times: &[Scalar],
        combine: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<(bool, Option<Witness>), SpaceError> {
        let mut exact = true;
        for x in probe {
            for y in probe {
                for z in probe {
                    for t in times {
                        for s in times {
                            let lhs = self.tnorm.apply_scalar(&self.m(x, y, t)?, &self.m(y, z, s)?)?;
                            let ts = combine(t, s);
                            let rhs = self.m(x, z, &ts)?;
                            let c = lhs.compare(&rhs);
                            exact &= c.exact;
                            if c.is_gt() {
                                return Ok((
                                    exact,
                                    Some(Witness::new(
                                        vec![("x", x.clone()), ("y", y.clone()), ("z", z.clone()), ("t", t.clone()), ("s", s.clone())],
                                        format!("M(x,y,t)*M(y,z,s) = {lhs} > M(x,z,{ts}) = {rhs}"),
                                    )),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok((exact, None))
    }

    fn continuity_check(&self, probe: &[Scalar]) -> Result<Option<Witness>, SpaceError> {
        let Metric::Table(tab) = &self.metric else { return Ok(None) };
        for (k, b) in tab.breakpoints.iter().enumerate() {
            let prev = if k == 0 { Scalar::zero() } else { tab.breakpoints[k - 1].clone() };
            let left = b.sub(&b.sub(&prev).mul(&Scalar::ratio(1, 2)));
            let right = tab.breakpoints.get(k + 1).map(|n| b.add(&n.sub(b).mul(&Scalar::ratio(1, 2)))).unwrap_or_else(|| b.add(&Scalar::one()));
            for x in probe {
                for y in probe {
                    let at = self.m(x, y, b)?;
                    let l = self.m(x, y, &left)?;
                    if at != l {
                        return Ok(Some(Witness::new(
                            vec![("x", x.clone()), ("y", y.clone()), ("t", b.clone())],
                            format!("left limit {l} differs from value {at}"),
                        )));
                    }
                    if self.space_kind == SpaceKind::GV {
                        let r = self.m(x, y, &right)?;
                        if at != r {
                            return Ok(Some(Witness::new(
                                vec![("x", x.clone()), ("y", y.clone()), ("t", b.clone())],
                                format!("right limit {r} differs from value {at}"),
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// `M(x,y,t) * M(y,z,s) <= M(x,z,max{t,s})` over probe triples.
    pub fn check_non_archimedean(&self, probe: &[Scalar], grid: &TimeGrid) -> Result<AxiomReport, SpaceError> {
        let mut probe = probe.to_vec();
        probe.sort();
        probe.dedup();
        let times = self.check_times(grid);
        let (exact, wit) = self.triangle_sweep(&probe, &times, |t, s| t.max_of(s))?;
        let mut report = AxiomReport::new("non-Archimedean triangle inequality");
        report.push_note("non_archimedean", self.evidence(exact), wit, &self.coverage_note(&probe));
        Ok(report)
    }

    /// `M(x,y,·)` nondecreasing across the grid for every probe pair.
    pub fn check_monotone_in_t(&self, probe: &[Scalar], grid: &TimeGrid) -> Result<AxiomReport, SpaceError> {
        let mut report = AxiomReport::new("monotonicity in t");
        let mut wit = None;
        let mut exact = true;
        'outer: for x in probe {
            for y in probe {
                for w in grid.times().windows(2) {
                    let (a, b) = (self.m(x, y, &w[0])?, self.m(x, y, &w[1])?);
                    let c = a.compare(&b);
                    exact &= c.exact;
                    if c.is_gt() {
                        wit = Some(Witness::new(
                            vec![("x", x.clone()), ("y", y.clone()), ("s", w[0].clone()), ("t", w[1].clone())],
                            format!("M(x,y,s) = {a} > M(x,y,t) = {b}"),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        let class = if self.t_independent && exact { EvidenceClass::Exact } else { EvidenceClass::Sampled };
        report.push("nondecreasing_in_t", class, wit);
        Ok(report)
    }

    /// Membership of `y` in the open ball `B(center, r, t) = {y : M(center,y,t) > 1 − r}`.
    pub fn ball_contains(&self, center: &Scalar, r: &UnitValue, t: &Scalar, y: &Scalar) -> Result<bool, SpaceError> {
        let rv = r.value();
        if !rv.is_positive() || rv.compare(&Scalar::one()).is_ge() {
            return Err(SpaceError::Domain(format!("ball radius {rv} is not in (0,1)")));
        }
        if !t.is_positive() {
            return Err(SpaceError::Domain(format!("ball time {t} is not positive")));
        }
        let m = self.m(center, y, t)?;
        Ok(m.compare(&Scalar::one().sub(rv)).is_gt())
    }
}
