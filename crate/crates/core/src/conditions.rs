//! Admissibility and contractive conditions as checkable predicates.
//!
//! Every check sweeps `probes × probes × times` and returns a
//! [`ConditionVerdict`]. A violation carries the simplest failing point:
//! smallest height first, then smallest `x`, `y`, `t`. Pair conditions pick
//! an off-diagonal witness when one exists; failures at `x = y` still count.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::Witness;
use crate::maps::{BetaFunction, MapError, SelfMap};
use crate::psi::{PsiError, PsiFunction};
use crate::scalar::Scalar;
use crate::space::{FuzzySpace, SpaceError, TimeGrid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CondError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("psi: {0}")]
    Psi(#[from] PsiError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    HoldsExact,
    HoldsSampled,
    Violated,
}

impl Status {
    pub fn holds(self) -> bool {
        self != Self::Violated
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::HoldsExact => "HOLDS (exact)",
            Self::HoldsSampled => "HOLDS (sampled)",
            Self::Violated => "VIOLATED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: String,
    pub status: Status,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub info: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub branch_hits: BTreeMap<String, usize>,
    pub checked: usize,
    /// Whether the probes are the whole (finite) universe.
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_prime: Option<usize>,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.status.holds()
    }

    fn simple(condition: &str, exact: bool, exhaustive: bool, checked: usize, witness: Option<Witness>) -> Self {
        let status = match (&witness, exact) {
            (Some(_), _) => Status::Violated,
            (None, true) => Status::HoldsExact,
            (None, false) => Status::HoldsSampled,
        };
        Self {
            condition: condition.to_string(),
            status,
            witness,
            info: Vec::new(),
            branch_hits: BTreeMap::new(),
            checked,
            exhaustive,
            k_prime: None,
        }
    }
}

impl fmt::Display for ConditionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} cases", self.condition, self.status, self.checked)?;
        if !self.exhaustive {
            f.write_str(", probes only")?;
        }
        f.write_str(")")?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        if let Some(k) = self.k_prime {
            write!(f, " k' = {k}")?;
        }
        Ok(())
    }
}

/// The finite domain a check quantifies over.
#[derive(Debug, Clone)]
pub struct Probe<'a> {
    pub space: &'a FuzzySpace,
    pub points: Vec<Scalar>,
    pub times: Vec<Scalar>,
}

impl<'a> Probe<'a> {
    pub fn new(space: &'a FuzzySpace, probes: &[Scalar], grid: &TimeGrid) -> Self {
        let mut points = probes.to_vec();
        points.sort();
        points.dedup();
        Self { space, points, times: space.check_times(grid) }
    }

    /// Space probes and its default grid.
    pub fn of(space: &'a FuzzySpace) -> Self {
        Self::new(space, &space.probe_points(), &space.default_time_grid())
    }

    fn exhaustive(&self) -> bool {
        match self.space.points.finite_points() {
            Some(all) => all.iter().all(|p| self.points.contains(p)),
            None => false,
        }
    }

    fn exact_in_t(&self) -> bool {
        self.space.t_independent
    }

    fn m(&self, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<Scalar, CondError> {
        Ok(self.space.m(x, y, t)?)
    }

    fn image(&self, map: &SelfMap, x: &Scalar) -> Result<Scalar, CondError> {
        let y = map.apply(x)?;
        if !self.space.contains(&y) {
            return Err(MapError::Range(map.to_string(), x.to_string(), y.to_string()).into());
        }
        Ok(y)
    }
}

/// Outcome of a condition at one `(x, y, t)`.
enum Case {
    Vacuous,
    Pass { exact: bool, hit: Option<String> },
    Fail { exact: bool, lhs: Scalar, rhs: Scalar, hit: Option<String> },
}

struct Failure {
    x: Scalar,
    y: Scalar,
    t: Scalar,
    lhs: Scalar,
    rhs: Scalar,
}

impl Failure {
    fn key(&self) -> (num_bigint::BigInt, Scalar, Scalar, Scalar) {
        (self.x.height().max(self.y.height()), self.x.clone(), self.y.clone(), self.t.clone())
    }
}

/// Sweep a per-point predicate; with `prefer_off_diagonal` a failure at
/// `x = y` is the witness only when no other pair fails.
fn sweep<F>(probe: &Probe<'_>, condition: &str, detail: &str, prefer_off_diagonal: bool, case: F) -> Result<ConditionVerdict, CondError>
where
    F: Fn(&Scalar, &Scalar, &Scalar) -> Result<Case, CondError> + Sync,
{
    struct Acc {
        exact: bool,
        checked: usize,
        hits: BTreeMap<String, usize>,
        fails: Vec<Failure>,
        diagonal: Vec<Failure>,
    }
    let partial: Vec<Acc> = probe
        .points
        .par_iter()
        .map(|x| {
            let mut acc = Acc { exact: true, checked: 0, hits: BTreeMap::new(), fails: Vec::new(), diagonal: Vec::new() };
            for y in &probe.points {
                for t in &probe.times {
                    acc.checked += 1;
                    match case(x, y, t)? {
                        Case::Vacuous => {}
                        Case::Pass { exact, hit } => {
                            acc.exact &= exact;
                            if let Some(h) = hit {
                                *acc.hits.entry(h).or_default() += 1;
                            }
                        }
                        Case::Fail { exact, lhs, rhs, hit } => {
                            acc.exact &= exact;
                            if let Some(h) = hit {
                                *acc.hits.entry(h).or_default() += 1;
                            }
                            let f = Failure { x: x.clone(), y: y.clone(), t: t.clone(), lhs, rhs };
                            if prefer_off_diagonal && x == y {
                                acc.diagonal.push(f);
                            } else {
                                acc.fails.push(f);
                            }
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_, CondError>>()?;

    let mut exact = probe.exact_in_t();
    let mut checked = 0;
    let mut hits = BTreeMap::new();
    let mut fails = Vec::new();
    let mut diagonal = Vec::new();
    for acc in partial {
        exact &= acc.exact;
        checked += acc.checked;
        for (k, v) in acc.hits {
            *hits.entry(k).or_default() += v;
        }
        fails.extend(acc.fails);
        diagonal.extend(acc.diagonal);
    }
    let diagonal = diagonal.into_iter().min_by_key(Failure::key);
    let off = fails.into_iter().min_by_key(Failure::key);
    let (chosen, extra) = match off {
        Some(f) => (Some(f), diagonal),
        None => (diagonal, None),
    };
    let witness = chosen.map(|f| {
        Witness::new(
            vec![("x", f.x), ("y", f.y), ("t", f.t), ("lhs", f.lhs.clone()), ("rhs", f.rhs.clone())],
            format!("{detail} fails: {} < {}", f.lhs, f.rhs),
        )
    });
    let mut verdict = ConditionVerdict::simple(condition, exact, probe.exhaustive(), checked, witness);
    verdict.branch_hits = hits;
    if let Some(d) = extra {
        verdict.info.push(format!("also fails on the diagonal x = y = {} at t = {} ({} < {})", d.x, d.t, d.lhs, d.rhs));
    }
    Ok(verdict)
}

fn le_one_case(v: Scalar) -> Case {
    let c = v.compare(&Scalar::one());
    if c.is_le() {
        Case::Pass { exact: c.exact, hit: None }
    } else {
        Case::Fail { exact: c.exact, lhs: Scalar::one(), rhs: v, hit: None }
    }
}

/// β(x,y,t) ≤ 1 ⟹ β(fx,fy,t) ≤ 1.
pub fn check_beta_admissible_single(probe: &Probe<'_>, f: &SelfMap, beta: &BetaFunction) -> Result<ConditionVerdict, CondError> {
    sweep(probe, "beta-admissible", "beta(fx,fy,t) <= 1", false, |x, y, t| {
        let (le, exact) = beta.le_one(x, y, t)?;
        if !le {
            return Ok(if exact { Case::Vacuous } else { Case::Pass { exact, hit: None } });
        }
        let v = beta.eval(&probe.image(f, x)?, &probe.image(f, y)?, t)?;
        Ok(le_one_case(v))
    })
}

/// β(x,y,t) ≤ 1 ⟹ max{β(fx,gy), β(gy,fx), β(gx,fy), β(fy,gx)} ≤ 1.
pub fn check_symmetric_beta_admissible_pair(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
) -> Result<ConditionVerdict, CondError> {
    sweep(probe, "symmetric pair beta-admissible", "max of the four beta values <= 1", false, |x, y, t| {
        let (le, exact) = beta.le_one(x, y, t)?;
        if !le {
            return Ok(if exact { Case::Vacuous } else { Case::Pass { exact, hit: None } });
        }
        let (fx, fy, gx, gy) = (probe.image(f, x)?, probe.image(f, y)?, probe.image(g, x)?, probe.image(g, y)?);
        let vals = [beta.eval(&fx, &gy, t)?, beta.eval(&gy, &fx, t)?, beta.eval(&gx, &fy, t)?, beta.eval(&fy, &gx, t)?];
        let worst = vals.into_iter().max().expect("four values");
        Ok(le_one_case(worst))
    })
}

/// lhs ≥ ψ(arg), exactly where the ψ kind allows.
fn psi_case(psi: &PsiFunction, lhs: Scalar, arg: &Scalar, hit: Option<String>) -> Result<Case, CondError> {
    let c = psi.compare_with_image(&lhs, arg)?;
    Ok(if c.is_ge() {
        Case::Pass { exact: c.exact, hit }
    } else {
        Case::Fail { exact: c.exact, lhs, rhs: psi.eval(arg)?, hit }
    })
}

fn guard_positive(probe: &Probe<'_>, x: &Scalar, y: &Scalar, t: &Scalar) -> Result<Option<Scalar>, CondError> {
    let m = probe.m(x, y, t)?;
    Ok(m.is_positive().then_some(m))
}

/// M(x,y,t) > 0 ⟹ M(fx,fy,t) ≥ ψ(M(x,y,t)).
pub fn check_fuzzy_psi_contractive(probe: &Probe<'_>, f: &SelfMap, psi: &PsiFunction) -> Result<ConditionVerdict, CondError> {
    sweep(probe, "fuzzy psi-contractive", "M(fx,fy,t) >= psi(M(x,y,t))", false, |x, y, t| {
        let Some(m) = guard_positive(probe, x, y, t)? else { return Ok(Case::Vacuous) };
        let lhs = probe.m(&probe.image(f, x)?, &probe.image(f, y)?, t)?;
        psi_case(psi, lhs, &m, None)
    })
}

/// The three-term minimum min{M(x,y,t), M(x,fx,t), M(y,gy,t)}.
fn min3(probe: &Probe<'_>, f: &SelfMap, g: &SelfMap, x: &Scalar, y: &Scalar, t: &Scalar, mxy: &Scalar) -> Result<Scalar, CondError> {
    let a = probe.m(x, &probe.image(f, x)?, t)?;
    let b = probe.m(y, &probe.image(g, y)?, t)?;
    Ok(mxy.min_of(&a).min_of(&b))
}

/// Shape of the left-hand metric term of a pair condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTerm {
    /// M(fx, gy, t)
    Direct,
    /// M(gfx, fgy, t)
    Composed,
}

/// β(x,y,t)·M(fx,gy,t) ≥ ψ(min{M(x,y,t), M(x,fx,t), M(y,gy,t)}), under
/// the guard M(x,y,t) > 0 when `guarded`.
pub fn check_pair_min(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
    psi: &PsiFunction,
    term: PairTerm,
    guarded: bool,
) -> Result<ConditionVerdict, CondError> {
    let (name, detail) = match term {
        PairTerm::Direct => ("pair beta-psi contractive", "beta*M(fx,gy,t) >= psi(min{M(x,y,t),M(x,fx,t),M(y,gy,t)})"),
        PairTerm::Composed => ("gf/fg beta-psi contractive", "beta*M(gfx,fgy,t) >= psi(min{M(x,y,t),M(x,fx,t),M(y,gy,t)})"),
    };
    sweep(probe, name, detail, true, |x, y, t| {
        let mxy = probe.m(x, y, t)?;
        if guarded && !mxy.is_positive() {
            return Ok(Case::Vacuous);
        }
        let (b, hit) = beta.eval_labelled(x, y, t)?;
        let (u, v) = match term {
            PairTerm::Direct => (probe.image(f, x)?, probe.image(g, y)?),
            PairTerm::Composed => (probe.image(g, &probe.image(f, x)?)?, probe.image(f, &probe.image(g, y)?)?),
        };
        let lhs = b.mul(&probe.m(&u, &v, t)?);
        let arg = min3(probe, f, g, x, y, t, &mxy)?;
        psi_case(psi, lhs, &arg, hit)
    })
}

pub fn check_pair_beta_psi_contractive(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
    psi: &PsiFunction,
) -> Result<ConditionVerdict, CondError> {
    check_pair_min(probe, f, g, beta, psi, PairTerm::Direct, true)
}

/// The pair condition with β ≡ 1.
pub fn check_pair_fuzzy_psi_contractive(probe: &Probe<'_>, f: &SelfMap, g: &SelfMap, psi: &PsiFunction) -> Result<ConditionVerdict, CondError> {
    let mut v = check_pair_min(probe, f, g, &BetaFunction::ConstOne, psi, PairTerm::Direct, true)?;
    v.condition = "pair fuzzy psi-contractive".into();
    Ok(v)
}

pub fn check_gf_fg_contractive(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
    psi: &PsiFunction,
) -> Result<ConditionVerdict, CondError> {
    check_pair_min(probe, f, g, beta, psi, PairTerm::Composed, true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveVerdict {
    pub additive: ConditionVerdict,
    /// ψ = min{ψ₁, ψ₂, ψ₃}
    pub reduced_psi: PsiFunction,
    pub reduced: ConditionVerdict,
    /// Probe points where the additive inequality held but the reduced one
    /// did not. Always expected to be zero.
    pub implication_exceptions: usize,
}

/// β·M(fx,gy,t) ≥ ψ₁(M(x,y,t)) + ψ₂(M(x,fx,t)) + ψ₃(M(y,gy,t)), plus the
/// reduced min-ψ pair condition it implies.
pub fn check_additive_contractive(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
    psis: &[PsiFunction; 3],
) -> Result<AdditiveVerdict, CondError> {
    let reduced_psi = PsiFunction::Min(psis.to_vec());
    let additive = sweep(probe, "additive beta-psi contractive", "beta*M(fx,gy,t) >= psi1(M(x,y,t))+psi2(M(x,fx,t))+psi3(M(y,gy,t))", false, |x, y, t| {
        let Some(mxy) = guard_positive(probe, x, y, t)? else { return Ok(Case::Vacuous) };
        let lhs = beta.eval(x, y, t)?.mul(&probe.m(&probe.image(f, x)?, &probe.image(g, y)?, t)?);
        let a = probe.m(x, &probe.image(f, x)?, t)?;
        let b = probe.m(y, &probe.image(g, y)?, t)?;
        let rhs = psis[0].eval(&mxy)?.add(&psis[1].eval(&a)?).add(&psis[2].eval(&b)?);
        let c = lhs.compare(&rhs);
        Ok(if c.is_ge() { Case::Pass { exact: c.exact, hit: None } } else { Case::Fail { exact: c.exact, lhs, rhs, hit: None } })
    })?;
    let reduced = sweep(probe, "reduced min-psi pair condition", "beta*M(fx,gy,t) >= psi(min{...})", false, |x, y, t| {
        let Some(mxy) = guard_positive(probe, x, y, t)? else { return Ok(Case::Vacuous) };
        let lhs = beta.eval(x, y, t)?.mul(&probe.m(&probe.image(f, x)?, &probe.image(g, y)?, t)?);
        psi_case(&reduced_psi, lhs, &min3(probe, f, g, x, y, t, &mxy)?, None)
    })?;
    let implication_exceptions = additive_implication_exceptions(probe, f, g, beta, psis, &reduced_psi)?;
    Ok(AdditiveVerdict { additive, reduced_psi, reduced, implication_exceptions })
}

/// Count of points where the additive condition holds and the reduced one
/// fails.
fn additive_implication_exceptions(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
    psis: &[PsiFunction; 3],
    reduced: &PsiFunction,
) -> Result<usize, CondError> {
    let mut n = 0;
    for x in &probe.points {
        for y in &probe.points {
            for t in &probe.times {
                let Some(mxy) = guard_positive(probe, x, y, t)? else { continue };
                let lhs = beta.eval(x, y, t)?.mul(&probe.m(&probe.image(f, x)?, &probe.image(g, y)?, t)?);
                let a = probe.m(x, &probe.image(f, x)?, t)?;
                let b = probe.m(y, &probe.image(g, y)?, t)?;
                let rhs = psis[0].eval(&mxy)?.add(&psis[1].eval(&a)?).add(&psis[2].eval(&b)?);
                if lhs.compare(&rhs).is_ge() && reduced.compare_with_image(&lhs, &mxy.min_of(&a).min_of(&b))?.is_lt() {
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// β·M(fx,gy,t) ≥ a·M(x,y,t) + b·M(x,fx,t) + c·M(y,gy,t).
pub fn check_linear_contractive(
    probe: &Probe<'_>,
    f: &SelfMap,
    g: &SelfMap,
    beta: &BetaFunction,
    coefficients: &[Scalar; 3],
) -> Result<ConditionVerdict, CondError> {
    let [a, b, c] = coefficients;
    sweep(probe, "linear beta contractive", "beta*M(fx,gy,t) >= a*M(x,y,t)+b*M(x,fx,t)+c*M(y,gy,t)", false, |x, y, t| {
        let Some(mxy) = guard_positive(probe, x, y, t)? else { return Ok(Case::Vacuous) };
        let lhs = beta.eval(x, y, t)?.mul(&probe.m(&probe.image(f, x)?, &probe.image(g, y)?, t)?);
        let rhs = a
            .mul(&mxy)
            .add(&b.mul(&probe.m(x, &probe.image(f, x)?, t)?))
            .add(&c.mul(&probe.m(y, &probe.image(g, y)?, t)?));
        let cmp = lhs.compare(&rhs);
        Ok(if cmp.is_ge() { Case::Pass { exact: cmp.exact, hit: None } } else { Case::Fail { exact: cmp.exact, lhs, rhs, hit: None } })
    })
}

/// `(CAPPED(a), CAPPED(b), CAPPED(c))`, each validated on the default grid.
pub fn make_capped_psi_triple(a: Scalar, b: Scalar, c: Scalar) -> Result<[PsiFunction; 3], PsiError> {
    let grid = crate::scalar::unit_grid(100);
    let mk = |s: Scalar| -> Result<PsiFunction, PsiError> {
        let psi = PsiFunction::capped(s)?;
        let report = psi.validate(&grid)?;
        if !report.all_passed() {
            return Err(PsiError::Parameter(format!("{psi} fails validation: {report}")));
        }
        Ok(psi)
    };
    Ok([mk(a)?, mk(b)?, mk(c)?])
}

/// β(x_{r_n}, x, t) ≤ 1 along the subsequence, and β(x, x_{r_n}, t) ≤ 1 too
/// when `both_directions`.
pub fn check_beta_limit_condition(
    times: &[Scalar],
    beta: &BetaFunction,
    prefix: &[Scalar],
    subsequence: &[usize],
    x: &Scalar,
    both_directions: bool,
) -> Result<ConditionVerdict, CondError> {
    let mut exact = true;
    let mut checked = 0;
    for &r in subsequence {
        let p = prefix.get(r).ok_or_else(|| CondError::Invalid(format!("subsequence index {r} is outside the prefix")))?;
        for t in times {
            let pairs: &[(&Scalar, &Scalar)] = if both_directions { &[(p, x), (x, p)] } else { &[(p, x)] };
            for (u, v) in pairs {
                checked += 1;
                let b = beta.eval(u, v, t)?;
                let c = b.compare(&Scalar::one());
                exact &= c.exact;
                if c.is_gt() {
                    let w = Witness::new(
                        vec![("n", Scalar::integer(r as i64)), ("u", (*u).clone()), ("v", (*v).clone()), ("t", t.clone()), ("beta", b.clone())],
                        format!("beta(u,v,t) = {b} > 1"),
                    );
                    return Ok(ConditionVerdict::simple("beta limit condition", exact, false, checked, Some(w)));
                }
            }
        }
    }
    Ok(ConditionVerdict::simple("beta limit condition", exact, false, checked, None))
}

/// Smallest `k′` with β(x_m, x_n, t) ≤ 1 for all prefix indices
/// `m ≥ n > k′`; violated when even the final point fails.
pub fn check_eventual_pairwise_beta(times: &[Scalar], beta: &BetaFunction, prefix: &[Scalar]) -> Result<ConditionVerdict, CondError> {
    if prefix.len() < 2 {
        return Err(CondError::Invalid("eventual pairwise check needs at least two points".into()));
    }
    let last = prefix.len() - 1;
    let mut exact = true;
    let mut checked = 0;
    // bad[n]: some m ≥ n has β(x_m, x_n, t) > 1
    let mut latest_bad: Option<(usize, usize, Scalar, Scalar)> = None;
    for n in (1..=last).rev() {
        for m in n..=last {
            for t in times {
                checked += 1;
                let b = beta.eval(&prefix[m], &prefix[n], t)?;
                let c = b.compare(&Scalar::one());
                exact &= c.exact;
                if c.is_gt() && latest_bad.is_none() {
                    latest_bad = Some((m, n, t.clone(), b));
                }
            }
        }
        if latest_bad.is_some() {
            break;
        }
    }
    match latest_bad {
        None => {
            let mut v = ConditionVerdict::simple("eventual pairwise beta", exact, false, checked, None);
            v.k_prime = Some(0);
            Ok(v)
        }
        Some((m, n, t, b)) if n == last => {
            let w = Witness::new(
                vec![("m", Scalar::integer(m as i64)), ("n", Scalar::integer(n as i64)), ("t", t), ("beta", b.clone())],
                format!("beta(x_m,x_n,t) = {b} > 1 at the end of the prefix"),
            );
            Ok(ConditionVerdict::simple("eventual pairwise beta", exact, false, checked, Some(w)))
        }
        Some((_, n, _, _)) => {
            let mut v = ConditionVerdict::simple("eventual pairwise beta", exact, false, checked, None);
            v.k_prime = Some(n);
            Ok(v)
        }
    }
}

/// M(x,fx,t) > 0 for every probe x, time t and map.
pub fn check_self_distance_positive(probe: &Probe<'_>, maps: &[(&str, &SelfMap)]) -> Result<ConditionVerdict, CondError> {
    let mut checked = 0;
    for x in &probe.points {
        for t in &probe.times {
            for (name, map) in maps {
                checked += 1;
                let m = probe.m(x, &probe.image(map, x)?, t)?;
                if !m.is_positive() {
                    let w = Witness::new(vec![("x", x.clone()), ("t", t.clone())], format!("M(x,{name}x,t) = {m}"));
                    return Ok(ConditionVerdict::simple("M(x,fx,t), M(x,gx,t) > 0", true, probe.exhaustive(), checked, Some(w)));
                }
            }
        }
    }
    Ok(ConditionVerdict::simple("M(x,fx,t), M(x,gx,t) > 0", probe.exact_in_t(), probe.exhaustive(), checked, None))
}

/// β ≤ 1 everywhere and M(x,y,t) > 0 for x ≠ y, as two verdicts.
pub fn check_uniqueness_preconditions(probe: &Probe<'_>, beta: &BetaFunction) -> Result<(ConditionVerdict, ConditionVerdict), CondError> {
    let beta_le = sweep(probe, "beta <= 1 everywhere", "beta(x,y,t) <= 1", false, |x, y, t| Ok(le_one_case(beta.eval(x, y, t)?)))?;
    let positive = sweep(probe, "M(x,y,t) > 0 for x != y", "M(x,y,t) > 0", false, |x, y, t| {
        if x == y {
            return Ok(Case::Vacuous);
        }
        let m = probe.m(x, y, t)?;
        Ok(if m.is_positive() {
            Case::Pass { exact: m.is_exact(), hit: None }
        } else {
            Case::Fail { exact: true, lhs: m, rhs: Scalar::zero(), hit: None }
        })
    })?;
    Ok((beta_le, positive))
}
