//! Exhaustive search over tiny finite spaces for instances satisfying the
//! unweighted pair condition on a non-Archimedean GV space, checking that
//! each has exactly one common fixed point and that every alternating orbit
//! lands on it.
//!
//! Enumeration order is lexicographic: size, then t-norm (min before
//! product), then the off-diagonal values of the upper triangle in row
//! order, then f and g as value tuples over the points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::EngineError;
use crate::psi::PsiFunction;
use crate::scalar::{unit_grid, Scalar, UnitValue};
use crate::space::{Completeness, FuzzySpace, Metric, MetricTable, PointSet, SpaceKind};
use crate::tnorm::TNorm;

/// Alternating steps allowed before an orbit must sit on the fixed point.
pub const ORBIT_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeCount {
    pub points: usize,
    pub tnorm: TNorm,
    /// Symmetric tables tried, and those passing the GV and non-Archimedean
    /// checks.
    pub tables: usize,
    pub admissible_tables: usize,
    pub map_pairs: usize,
    pub hypothesis_holds: usize,
    /// Holding instances whose comparisons needed a float.
    pub inexact: usize,
    pub verified: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub tnorm: TNorm,
    pub points: Vec<Scalar>,
    /// Upper-triangle values in row order.
    pub table: Vec<Scalar>,
    pub f: Vec<Scalar>,
    pub g: Vec<Scalar>,
    pub fixed_points: Vec<Scalar>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub max_points: usize,
    pub lattice: Vec<Scalar>,
    pub psi: PsiFunction,
    pub sizes: Vec<SizeCount>,
    pub counterexamples: Vec<Counterexample>,
}

impl OracleReport {
    pub fn instances(&self) -> usize {
        self.sizes.iter().map(|s| s.admissible_tables * s.map_pairs).sum()
    }

    pub fn holding(&self) -> usize {
        self.sizes.iter().map(|s| s.hypothesis_holds).sum()
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn oracle_points(n: usize) -> Vec<Scalar> {
    (0..n).map(|i| Scalar::integer(i as i64)).collect()
}

/// All tuples over `0..base` of length `len`, last position fastest.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..base).map(move |d| [t.clone(), vec![d]].concat())).collect();
    }
    out
}

fn table_space(points: &[Scalar], tnorm: TNorm, values: &[Scalar]) -> FuzzySpace {
    let mut entries = Vec::new();
    let mut k = 0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            entries.push((points[i].clone(), points[j].clone(), values[k].clone()));
            k += 1;
        }
    }
    FuzzySpace::new(PointSet::finite(points.to_vec()), Metric::Table(MetricTable::constant(entries)), tnorm, SpaceKind::GV)
        .with_t_independent(true)
        .with_completeness(Completeness::Complete)
}

fn admissible(space: &FuzzySpace) -> Result<bool, EngineError> {
    let probes = space.probe_points();
    let grid = space.default_time_grid();
    Ok(space.check_axioms(&probes, &grid)?.all_passed() && space.check_non_archimedean(&probes, &grid)?.all_passed())
}

fn run_orbit(f: &[usize], g: &[usize], x0: usize) -> usize {
    let mut x = x0;
    for k in 0..ORBIT_STEPS {
        x = if k % 2 == 0 { f[x] } else { g[x] };
    }
    x
}

struct PairResult {
    holds: bool,
    inexact: bool,
    counterexample: Option<(Vec<usize>, String)>,
}

/// Metric values by index, ascending, with `ge[a][b]` = `values[b] ≥ ψ(values[a])`.
struct ValueTable {
    values: Vec<Scalar>,
    ge: Vec<Vec<(bool, bool)>>,
}

impl ValueTable {
    fn new(inner: &[Scalar], psi: &PsiFunction) -> Result<Self, EngineError> {
        let mut values = inner.to_vec();
        values.push(Scalar::one());
        let ge = values
            .iter()
            .map(|a| {
                values
                    .iter()
                    .map(|b| psi.compare_with_image(b, a).map(|c| (c.is_ge(), c.exact)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| EngineError::Invalid(e.to_string()))?;
        Ok(Self { values, ge })
    }

    fn index(&self, v: &Scalar) -> usize {
        self.values.iter().position(|w| w == v).expect("table value in the lattice")
    }
}

/// M(fx,gy) ≥ ψ(min{M(x,y), M(x,fx), M(y,gy)}) for all x, y, on value indices.
fn check_pair(m: &[Vec<usize>], table: &ValueTable, f: &[usize], g: &[usize]) -> PairResult {
    let n = f.len();
    let mut inexact = false;
    for x in 0..n {
        for y in 0..n {
            let low = m[x][y].min(m[x][f[x]]).min(m[y][g[y]]);
            let (ok, exact) = table.ge[low][m[f[x]][g[y]]];
            inexact |= !exact;
            if !ok {
                return PairResult { holds: false, inexact, counterexample: None };
            }
        }
    }
    let fixed: Vec<usize> = (0..n).filter(|&i| f[i] == i && g[i] == i).collect();
    let counterexample = if fixed.len() != 1 {
        Some((fixed, "common fixed point count differs from 1".to_string()))
    } else {
        (0..n).find(|&x0| run_orbit(f, g, x0) != fixed[0]).map(|x0| (fixed.clone(), format!("orbit from point {x0} misses the fixed point")))
    };
    PairResult { holds: true, inexact, counterexample }
}

fn metric_indices(space: &FuzzySpace, points: &[Scalar], values: &ValueTable) -> Result<Vec<Vec<usize>>, EngineError> {
    let t = Scalar::one();
    points.iter().map(|x| points.iter().map(|y| Ok(values.index(&space.m(x, y, &t)?))).collect()).collect()
}

pub fn finite_oracle_search(max_points: usize, lattice: &[Scalar], psi: &PsiFunction) -> Result<OracleReport, EngineError> {
    if max_points == 0 || max_points > 4 {
        return Err(EngineError::Invalid("max_points must be between 1 and 4".into()));
    }
    if !lattice.contains(&Scalar::zero()) || !lattice.contains(&Scalar::one()) {
        return Err(EngineError::Invalid("lattice must contain 0 and 1".into()));
    }
    let mut grid = unit_grid(100);
    grid.extend(lattice.iter().filter_map(|v| UnitValue::new(v.clone()).ok()));
    let report = psi.validate(&grid).map_err(|e| EngineError::Invalid(e.to_string()))?;
    if !report.all_passed() {
        return Err(EngineError::Invalid(format!("{psi} is not in the psi family: {report}")));
    }
    let mut inner: Vec<Scalar> = lattice.iter().filter(|v| v.is_positive() && **v < Scalar::one()).cloned().collect();
    inner.sort();
    inner.dedup();

    let values = ValueTable::new(&inner, psi)?;
    let mut sizes = Vec::new();
    let mut counterexamples = Vec::new();
    for n in 1..=max_points {
        let points = oracle_points(n);
        let off = n * (n - 1) / 2;
        let maps = tuples(n, n);
        for tnorm in [TNorm::Min, TNorm::Product] {
            let tables = tuples(inner.len(), off);
            let tried = tables.len();
            let spaces: Vec<(Vec<Scalar>, FuzzySpace)> = tables
                .into_iter()
                .map(|t| {
                    let vals: Vec<Scalar> = t.iter().map(|&i| inner[i].clone()).collect();
                    let space = table_space(&points, tnorm.clone(), &vals);
                    (vals, space)
                })
                .filter_map(|(v, s)| match admissible(&s) {
                    Ok(true) => Some(Ok((v, s))),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<_, _>>()?;
            let mut count = SizeCount {
                points: n,
                tnorm: tnorm.clone(),
                tables: tried,
                admissible_tables: spaces.len(),
                map_pairs: maps.len() * maps.len(),
                hypothesis_holds: 0,
                inexact: 0,
                verified: 0,
            };
            for (vals, space) in &spaces {
                let m = metric_indices(space, &points, &values)?;
                let results: Vec<(usize, usize, PairResult)> = maps
                    .par_iter()
                    .enumerate()
                    .flat_map_iter(|(i, f)| maps.iter().enumerate().map(move |(j, g)| (i, j, f, g)))
                    .map(|(i, j, f, g)| (i, j, check_pair(&m, &values, f, g)))
                    .collect();
                for (i, j, r) in results {
                    if !r.holds {
                        continue;
                    }
                    count.hypothesis_holds += 1;
                    count.inexact += usize::from(r.inexact);
                    match r.counterexample {
                        None => count.verified += 1,
                        Some((fixed, reason)) => counterexamples.push(Counterexample {
                            tnorm: tnorm.clone(),
                            points: points.clone(),
                            table: vals.clone(),
                            f: maps[i].iter().map(|&k| points[k].clone()).collect(),
                            g: maps[j].iter().map(|&k| points[k].clone()).collect(),
                            fixed_points: fixed.iter().map(|&k| points[k].clone()).collect(),
                            reason,
                        }),
                    }
                }
            }
            sizes.push(count);
        }
    }
    if max_points > 1 && sizes.iter().filter(|s| s.points > 1).all(|s| s.admissible_tables == 0) {
        return Err(EngineError::EmptySearchSpace(format!("no admissible table over the lattice with up to {max_points} points")));
    }
    Ok(OracleReport { max_points, lattice: lattice.to_vec(), psi: psi.clone(), sizes, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(d: i64) -> Vec<Scalar> {
        (0..=d).map(|i| Scalar::ratio(i, d)).collect()
    }

    #[test]
    fn one_point_is_trivial() {
        let r = finite_oracle_search(1, &lattice(2), &PsiFunction::AffineHalf).unwrap();
        assert!(r.passed());
        assert_eq!(r.holding(), 2);
        assert_eq!(r.instances(), 2);
    }

    #[test]
    fn two_points() {
        let lat = vec![Scalar::zero(), Scalar::ratio(1, 2), Scalar::ratio(3, 4), Scalar::one()];
        let r = finite_oracle_search(2, &lat, &PsiFunction::AffineHalf).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        // 2 inner values, 2 t-norms, every table admissible, 16 map pairs
        let two: Vec<&SizeCount> = r.sizes.iter().filter(|s| s.points == 2).collect();
        assert!(two.iter().all(|s| s.admissible_tables == 2 && s.map_pairs == 16));
        assert!(two.iter().all(|s| s.hypothesis_holds > 0 && s.hypothesis_holds == s.verified));
    }

    #[test]
    fn coarse_lattice_is_empty() {
        let r = finite_oracle_search(2, &lattice(1), &PsiFunction::AffineHalf);
        assert!(matches!(r, Err(EngineError::EmptySearchSpace(_))));
    }

    #[test]
    fn index_check_agrees_with_the_sweep() {
        use crate::conditions::{check_pair_min, PairTerm, Probe};
        use crate::maps::{BetaFunction, Continuity, SelfMap};
        let inner = [Scalar::ratio(1, 4), Scalar::ratio(1, 2), Scalar::ratio(3, 4)];
        let points = oracle_points(3);
        let maps = tuples(3, 3);
        for psi in [PsiFunction::AffineHalf, PsiFunction::Sqrt] {
            let values = ValueTable::new(&inner, &psi).unwrap();
            let space = table_space(&points, TNorm::Min, &[inner[0].clone(), inner[2].clone(), inner[0].clone()]);
            assert!(admissible(&space).unwrap());
            let m = metric_indices(&space, &points, &values).unwrap();
            let probe = Probe::of(&space);
            let as_map = |v: &[usize]| SelfMap::table(points.iter().cloned().zip(v.iter().map(|&i| points[i].clone())).collect(), Continuity::Unknown);
            for f in maps.iter().step_by(2) {
                for g in maps.iter().step_by(3) {
                    let fast = check_pair(&m, &values, f, g).holds;
                    let slow = check_pair_min(&probe, &as_map(f), &as_map(g), &BetaFunction::ConstOne, &psi, PairTerm::Direct, false).unwrap();
                    assert_eq!(fast, slow.holds(), "{f:?} {g:?}");
                }
            }
        }
    }

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn rejects_psi_outside_the_family() {
        let lattice: Vec<Scalar> = (0..=2).map(|i| Scalar::ratio(i, 2)).collect();
        let psi = PsiFunction::user("x/2").unwrap();
        assert!(matches!(finite_oracle_search(2, &lattice, &psi), Err(EngineError::Invalid(_))));
    }
}
