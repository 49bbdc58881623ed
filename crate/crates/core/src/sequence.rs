//! Finite-prefix evidence for convergence, Cauchy and G-Cauchy behaviour.
//!
//! Nothing here proves a limit. A verdict only summarises what the tail of
//! a prefix shows: every value close enough to 1 (`Convergent`), values that
//! stay bad without improving (`Divergent`), or neither (`Inconclusive`).

use serde::{Deserialize, Serialize};

use crate::axiom::Witness;
use crate::scalar::Scalar;
use crate::space::{FuzzySpace, SpaceError, TimeGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Convergent,
    Inconclusive,
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitVerdict {
    pub evidence: Evidence,
    pub window: usize,
    /// Worst tail value and where it was seen, when not convergent.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefixClass {
    pub cauchy: LimitVerdict,
    pub gcauchy: LimitVerdict,
}

/// Default tolerance: tight for exact arithmetic, looser for floats.
pub fn default_eps(exact: bool) -> Scalar {
    if exact {
        "0.000000001".parse().expect("decimal")
    } else {
        "0.000001".parse().expect("decimal")
    }
}

/// Last 25% of a prefix, at least 10 elements, never more than the prefix.
pub fn tail_window(len: usize) -> usize {
    (len / 4).max(10).min(len)
}

type Labelled = (Vec<(&'static str, Scalar)>, Scalar);

/// Verdict from tail series, one per time.
///
/// A series that misses `1 − eps` is `Divergent` when its second half is no
/// better than its first half, `Inconclusive` otherwise. The overall verdict
/// is the worst series verdict.
fn judge(series: Vec<(Scalar, Vec<Labelled>)>, eps: &Scalar, window: usize) -> LimitVerdict {
    let threshold = Scalar::one().sub(eps);
    let mut evidence = Evidence::Convergent;
    let mut witness = None;
    for (t, values) in series {
        let Some((labels, worst)) = values.iter().min_by(|a, b| a.1.cmp(&b.1)) else { continue };
        if worst.compare(&threshold).is_ge() {
            continue;
        }
        let half = values.len() / 2;
        let min_of = |s: &[Labelled]| s.iter().map(|v| v.1.clone()).min();
        let improving = match (min_of(&values[..half]), min_of(&values[half..])) {
            (Some(a), Some(b)) => b.compare(&a).is_gt(),
            _ => false,
        };
        let this = if improving { Evidence::Inconclusive } else { Evidence::Divergent };
        if this > evidence {
            evidence = this;
            let mut vals = labels.clone();
            vals.push(("t", t.clone()));
            witness = Some(Witness::new(vals, format!("M = {worst} < 1 - eps")));
        }
    }
    LimitVerdict { evidence, window, witness }
}

fn index(i: usize) -> Scalar {
    Scalar::integer(i as i64)
}

/// Evidence that `prefix` converges to `x`: `M(x_n, x, t) ≥ 1 − eps` on
/// the tail window for every checked time.
pub fn limit_evidence(
    space: &FuzzySpace,
    prefix: &[Scalar],
    x: &Scalar,
    grid: &TimeGrid,
    eps: &Scalar,
) -> Result<LimitVerdict, SpaceError> {
    if prefix.len() < 2 {
        return Err(SpaceError::Invalid("limit evidence needs a prefix of length >= 2".into()));
    }
    let window = tail_window(prefix.len());
    let start = prefix.len() - window;
    let mut series = Vec::new();
    for t in space.check_times(grid) {
        let mut vals = Vec::with_capacity(window);
        for (i, p) in prefix.iter().enumerate().skip(start) {
            vals.push((vec![("n", index(i))], space.m(p, x, &t)?));
        }
        series.push((t, vals));
    }
    Ok(judge(series, eps, window))
}

/// Cauchy evidence from every tail pair, G-Cauchy evidence from adjacent
/// tail pairs.
pub fn classify_prefix(
    space: &FuzzySpace,
    prefix: &[Scalar],
    grid: &TimeGrid,
    eps: &Scalar,
    window: Option<usize>,
) -> Result<PrefixClass, SpaceError> {
    if prefix.len() < 3 {
        return Err(SpaceError::Invalid("classification needs a prefix of length >= 3".into()));
    }
    let window = window.unwrap_or_else(|| tail_window(prefix.len())).clamp(2, prefix.len());
    let start = prefix.len() - window;
    let mut adjacent = Vec::new();
    let mut all = Vec::new();
    for t in space.check_times(grid) {
        let mut adj = Vec::new();
        let mut pairs = Vec::new();
        for n in start..prefix.len() {
            if n + 1 < prefix.len() {
                adj.push((vec![("n", index(n))], space.m(&prefix[n], &prefix[n + 1], &t)?));
            }
            for m in n + 1..prefix.len() {
                pairs.push((vec![("n", index(n)), ("m", index(m))], space.m(&prefix[n], &prefix[m], &t)?));
            }
        }
        adjacent.push((t.clone(), adj));
        all.push((t, pairs));
    }
    let gcauchy = judge(adjacent, eps, window);
    let cauchy = judge(all, eps, window);
    debug_assert!(cauchy.evidence != Evidence::Convergent || gcauchy.evidence == Evidence::Convergent);
    Ok(PrefixClass { cauchy, gcauchy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Component, Metric, PointSet, SpaceKind};
    use crate::tnorm::TNorm;

    fn unit_ratio() -> FuzzySpace {
        let pts = PointSet::Symbolic {
            components: vec![Component::Interval { lo: Scalar::zero(), hi: Scalar::one(), lo_open: true, hi_open: false }],
        };
        FuzzySpace::new(pts, Metric::Ratio, TNorm::Product, SpaceKind::GV).with_probes(vec![Scalar::one()])
    }

    fn discrete() -> FuzzySpace {
        let pts = vec![Scalar::zero(), Scalar::ratio(1, 3), Scalar::ratio(2, 3), Scalar::one()];
        FuzzySpace::new(PointSet::finite(pts), Metric::Discrete, TNorm::Min, SpaceKind::KM)
    }

    fn harmonic() -> Vec<Scalar> {
        (2..=100).map(|n| Scalar::one().sub(&Scalar::ratio(1, n))).collect()
    }

    #[test]
    fn constant_prefix_converges() {
        let s = discrete();
        let a = Scalar::ratio(1, 3);
        let prefix = vec![a.clone(); 12];
        let g = s.default_time_grid();
        let eps = default_eps(true);
        assert_eq!(limit_evidence(&s, &prefix, &a, &g, &eps).unwrap().evidence, Evidence::Convergent);
        let c = classify_prefix(&s, &prefix, &g, &eps, None).unwrap();
        assert_eq!((c.cauchy.evidence, c.gcauchy.evidence), (Evidence::Convergent, Evidence::Convergent));
    }

    #[test]
    fn harmonic_ratio_sequence() {
        let s = unit_ratio();
        let g = s.default_time_grid();
        let eps = Scalar::ratio(1, 20);
        let prefix = harmonic();
        assert_eq!(limit_evidence(&s, &prefix, &Scalar::one(), &g, &eps).unwrap().evidence, Evidence::Convergent);
        let c = classify_prefix(&s, &prefix, &g, &eps, Some(20)).unwrap();
        assert_eq!((c.cauchy.evidence, c.gcauchy.evidence), (Evidence::Convergent, Evidence::Convergent));
        // still improving but not yet within a tight tolerance
        let tight = limit_evidence(&s, &prefix, &Scalar::one(), &g, &default_eps(true)).unwrap();
        assert_eq!(tight.evidence, Evidence::Inconclusive);
    }

    #[test]
    fn alternating_discrete_diverges() {
        let s = discrete();
        let (a, b) = (Scalar::zero(), Scalar::one());
        let prefix: Vec<Scalar> = (0..20).map(|i| if i % 2 == 0 { a.clone() } else { b.clone() }).collect();
        let g = s.default_time_grid();
        let eps = default_eps(true);
        let v = limit_evidence(&s, &prefix, &a, &g, &eps).unwrap();
        assert_eq!(v.evidence, Evidence::Divergent);
        assert!(v.witness.is_some());
        let c = classify_prefix(&s, &prefix, &g, &eps, None).unwrap();
        assert_eq!((c.cauchy.evidence, c.gcauchy.evidence), (Evidence::Divergent, Evidence::Divergent));
    }

    #[test]
    fn windows() {
        assert_eq!(tail_window(4), 4);
        assert_eq!(tail_window(20), 10);
        assert_eq!(tail_window(100), 25);
    }
}
