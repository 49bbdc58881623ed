//! Continuous t-norms: the binary operation combining membership grades in
//! the triangle axiom.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::{AxiomReport, EvidenceClass, Witness};
use crate::scalar::{Scalar, UnitValue};

/// Largest jump between adjacent grid samples still read as continuous.
pub const CONTINUITY_TOLERANCE: (i64, i64) = (1, 8);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TNormError {
    #[error("t-norm table has no entry for ({0}, {1})")]
    GridMiss(String, String),
    #[error("invalid t-norm table: {0}")]
    InvalidTable(String),
    #[error("unknown t-norm `{0}`")]
    Unknown(String),
}

/// A t-norm given by its values on a finite grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TNormTable {
    grid: Vec<Scalar>,
    values: Vec<Vec<Scalar>>,
}

impl TNormTable {
    pub fn new(grid: Vec<Scalar>, values: Vec<Vec<Scalar>>) -> Result<Self, TNormError> {
        if values.len() != grid.len() || values.iter().any(|r| r.len() != grid.len()) {
            return Err(TNormError::InvalidTable("table must be square over the grid".into()));
        }
        let mut sorted = grid.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != grid.len() {
            return Err(TNormError::InvalidTable("grid has duplicates".into()));
        }
        for v in values.iter().flatten().chain(grid.iter()) {
            UnitValue::new(v.clone()).map_err(|e| TNormError::InvalidTable(e.to_string()))?;
        }
        Ok(Self { grid, values })
    }

    /// Tabulate a closure over `grid`.
    pub fn from_fn(grid: Vec<Scalar>, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self, TNormError> {
        let values = grid.iter().map(|a| grid.iter().map(|b| f(a, b)).collect()).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[Scalar] {
        &self.grid
    }

    fn index(&self, v: &Scalar) -> Option<usize> {
        self.grid.iter().position(|g| g == v)
    }

    pub fn set(&mut self, a: &Scalar, b: &Scalar, v: Scalar) -> Result<(), TNormError> {
        let (i, j) = self.indices(a, b)?;
        self.values[i][j] = v;
        Ok(())
    }

    fn indices(&self, a: &Scalar, b: &Scalar) -> Result<(usize, usize), TNormError> {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(TNormError::GridMiss(a.to_string(), b.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TNormRepr", into = "TNormRepr")]
pub enum TNorm {
    Min,
    Product,
    Lukasiewicz,
    Table(TNormTable),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TNormRepr {
    Named(String),
    Table { table: TNormTable },
}

impl TryFrom<TNormRepr> for TNorm {
    type Error = TNormError;

    fn try_from(r: TNormRepr) -> Result<Self, Self::Error> {
        match r {
            TNormRepr::Named(n) => n.parse(),
            TNormRepr::Table { table } => Ok(TNorm::Table(TNormTable::new(table.grid, table.values)?)),
        }
    }
}

impl From<TNorm> for TNormRepr {
    fn from(t: TNorm) -> Self {
        match t {
            TNorm::Table(table) => TNormRepr::Table { table },
            named => TNormRepr::Named(named.to_string()),
        }
    }
}

impl std::str::FromStr for TNorm {
    type Err = TNormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" => Ok(Self::Min),
            "product" => Ok(Self::Product),
            "lukasiewicz" => Ok(Self::Lukasiewicz),
            other => Err(TNormError::Unknown(other.to_string())),
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Min => "min",
            Self::Product => "product",
            Self::Lukasiewicz => "lukasiewicz",
            Self::Table(_) => "table",
        })
    }
}

impl TNorm {
    pub fn apply(&self, a: &UnitValue, b: &UnitValue) -> Result<UnitValue, TNormError> {
        let v = self.apply_scalar(a.value(), b.value())?;
        // Built-in kinds stay in [0,1]; tables were range-checked on construction.
        Ok(UnitValue::new(v).expect("t-norm result in [0,1]"))
    }

    /// Same as [`apply`](Self::apply) for values already known to be grades.
    pub fn apply_scalar(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, TNormError> {
        Ok(match self {
            Self::Min => a.min_of(b),
            Self::Product => a.mul(b),
            Self::Lukasiewicz => a.add(b).sub(&Scalar::one()).max_of(&Scalar::zero()),
            Self::Table(t) => {
                let (i, j) = t.indices(a, b)?;
                t.values[i][j].clone()
            }
        })
    }

    fn is_builtin(&self) -> bool {
        !matches!(self, Self::Table(_))
    }

    /// Check the t-norm axioms on `grid` (which must contain 0 and 1).
    ///
    /// Monotonicity is checked between grid neighbours in each argument,
    /// which together with transitivity covers every ordered pair on the
    /// grid.
    pub fn check_axioms(&self, grid: &[UnitValue]) -> AxiomReport {
        let mut g: Vec<Scalar> = grid.iter().map(|u| u.value().clone()).collect();
        g.sort();
        g.dedup();
        let mut report = AxiomReport::new(format!("t-norm {self} on {}-point grid", g.len()));
        let mut exact = true;
        let op = |a: &Scalar, b: &Scalar| self.apply_scalar(a, b);

        let mut comm = None;
        'comm: for a in &g {
            for b in &g {
                match (op(a, b), op(b, a)) {
                    (Ok(x), Ok(y)) => {
                        let c = x.compare(&y);
                        exact &= c.exact;
                        if !c.ordering.is_eq() {
                            comm = Some(Witness::new(
                                vec![("a", a.clone()), ("b", b.clone())],
                                format!("a*b = {x} but b*a = {y}"),
                            ));
                            break 'comm;
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        comm = Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())], e.to_string()));
                        break 'comm;
                    }
                }
            }
        }
        let ev = |exact: bool| if exact { EvidenceClass::Exact } else { EvidenceClass::Sampled };
        report.push("commutativity", ev(exact), comm);

        let mut assoc = None;
        'assoc: for a in &g {
            for b in &g {
                for c in &g {
                    let lhs = op(a, b).and_then(|ab| op(&ab, c));
                    let rhs = op(b, c).and_then(|bc| op(a, &bc));
                    let wit = |d: String| Witness::new(vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone())], d);
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => {
                            let cmp = l.compare(&r);
                            exact &= cmp.exact;
                            if !cmp.ordering.is_eq() {
                                assoc = Some(wit(format!("(a*b)*c = {l} but a*(b*c) = {r}")));
                                break 'assoc;
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            assoc = Some(wit(format!("grid not closed: {e}")));
                            break 'assoc;
                        }
                    }
                }
            }
        }
        report.push("associativity", ev(exact), assoc);

        let one = Scalar::one();
        let ident = g.iter().find_map(|a| match op(a, &one) {
            Ok(v) if v.compare(a).ordering.is_eq() => None,
            Ok(v) => Some(Witness::new(vec![("a", a.clone())], format!("a*1 = {v}"))),
            Err(e) => Some(Witness::new(vec![("a", a.clone())], e.to_string())),
        });
        report.push("identity", ev(exact), ident);

        let mut mono = None;
        let mut max_jump = Scalar::zero();
        'mono: for w in g.windows(2) {
            for b in &g {
                for (lo, hi, swapped) in [(op(&w[0], b), op(&w[1], b), false), (op(b, &w[0]), op(b, &w[1]), true)] {
                    let (a, c) = (&w[0], &w[1]);
                    let names = if swapped { ("b", "a", "d") } else { ("a", "b", "c") };
                    match (lo, hi) {
                        (Ok(lo), Ok(hi)) => {
                            let cmp = lo.compare(&hi);
                            exact &= cmp.exact;
                            let jump = hi.sub(&lo);
                            if jump > max_jump {
                                max_jump = jump;
                            }
                            if cmp.is_gt() {
                                mono = Some(Witness::new(
                                    vec![(names.0, a.clone()), (names.1, b.clone()), (names.2, c.clone())],
                                    format!("{a} <= {c} but values {lo} > {hi}"),
                                ));
                                break 'mono;
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            mono = Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())], e.to_string()));
                            break 'mono;
                        }
                    }
                }
            }
        }
        report.push("monotonicity", ev(exact), mono);

        let tol = Scalar::ratio(CONTINUITY_TOLERANCE.0, CONTINUITY_TOLERANCE.1);
        let cont = if max_jump.compare(&tol).is_gt() {
            Some(Witness::new(vec![("oscillation", max_jump.clone())], format!("adjacent-grid jump exceeds {tol}")))
        } else {
            None
        };
        let (class, note) = if self.is_builtin() {
            (EvidenceClass::Analytic, format!("continuous by construction; sampled oscillation {max_jump}"))
        } else {
            (EvidenceClass::Sampled, format!("sampled oscillation {max_jump}"))
        };
        report.push_note("continuity", class, cont, &note);
        report
    }
}
