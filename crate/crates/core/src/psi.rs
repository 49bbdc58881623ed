//! The Ψ family: nondecreasing continuous ψ:[0,1]→[0,1] with ψ(t) > t on
//! (0,1). Iterates ψⁿ(r) increase to 1 for every r > 0.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::{AxiomReport, EvidenceClass, Witness};
use crate::expr::{ExprError, Expression};
use crate::scalar::{Comparison, Scalar, UnitValue};
use crate::tnorm::CONTINUITY_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("expression error: {0}")]
    Expression(#[from] ExprError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown psi `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PsiFunction {
    /// x ↦ (1+x)/2
    AffineHalf,
    /// x ↦ √x
    Sqrt,
    /// x ↦ min{a·x, √x}, a > 1
    Capped(Scalar),
    /// User formula in `x`.
    User(Expression),
    /// Pointwise minimum of several members.
    Min(Vec<PsiFunction>),
}

impl PsiFunction {
    pub fn capped(a: Scalar) -> Result<Self, PsiError> {
        if !a.is_exact() || a.compare(&Scalar::one()).is_le() {
            return Err(PsiError::Parameter(format!("capped requires an exact a > 1, got {a}")));
        }
        Ok(Self::Capped(a))
    }

    pub fn user(src: &str) -> Result<Self, PsiError> {
        Ok(Self::User(Expression::parse(src)?))
    }

    /// True for kinds known to be continuous without sampling.
    pub fn is_builtin(&self) -> bool {
        match self {
            Self::User(_) => false,
            Self::Min(parts) => parts.iter().all(Self::is_builtin),
            _ => true,
        }
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar, PsiError> {
        Ok(match self {
            Self::AffineHalf => Scalar::one().add(x).div(&Scalar::integer(2)).expect("nonzero"),
            Self::Sqrt => x.max_of(&Scalar::zero()).sqrt().map_err(|e| PsiError::Parameter(e.to_string()))?,
            Self::Capped(a) => {
                // a·x ≤ √x  ⟺  a²·x ≤ 1 for x > 0.
                if x.compare(&Scalar::zero()).is_le() || a.mul(a).mul(x).compare(&Scalar::one()).is_le() {
                    a.mul(x)
                } else {
                    x.sqrt().map_err(|e| PsiError::Parameter(e.to_string()))?
                }
            }
            Self::User(e) => e.eval_x(x)?,
            Self::Min(parts) => {
                let mut it = parts.iter();
                let first = it.next().ok_or_else(|| PsiError::Parameter("empty min".into()))?.eval(x)?;
                it.try_fold(first, |m, p| Ok::<_, PsiError>(m.min_of(&p.eval(x)?)))?
            }
        })
    }

    /// Compare `value` against ψ(`arg`), exactly whenever the built-in kind
    /// allows it even if ψ(`arg`) itself is irrational.
    pub fn compare_with_image(&self, value: &Scalar, arg: &Scalar) -> Result<Comparison, PsiError> {
        let image = self.eval(arg)?;
        if image.is_exact() && value.is_exact() {
            return Ok(value.compare(&image));
        }
        match self {
            Self::Sqrt if value.is_exact() && arg.is_exact() => {
                if value.compare(&Scalar::zero()).is_lt() {
                    return Ok(Comparison::exact(Ordering::Less));
                }
                // value ≥ 0: value vs √arg has the sign of value² − arg.
                Ok(value.mul(value).compare(&arg.max_of(&Scalar::zero())))
            }
            Self::Capped(a) if value.is_exact() && arg.is_exact() => {
                let lin = value.compare(&a.mul(arg));
                let root = Self::Sqrt.compare_with_image(value, arg)?;
                Ok(max_cmp(lin, root))
            }
            Self::Min(parts) => {
                let mut acc: Option<Comparison> = None;
                for p in parts {
                    let c = p.compare_with_image(value, arg)?;
                    acc = Some(match acc {
                        None => c,
                        Some(a) => max_cmp(a, c),
                    });
                }
                acc.ok_or_else(|| PsiError::Parameter("empty min".into()))
            }
            _ => Ok(value.compare(&image)),
        }
    }

    /// Verify membership in Ψ on a sampled grid.
    pub fn validate(&self, grid: &[UnitValue]) -> Result<AxiomReport, PsiError> {
        psi_validate(self, grid)
    }

    /// ψⁿ(r).
    pub fn iterate(&self, r: &Scalar, n: u64) -> Result<Scalar, PsiError> {
        let mut v = r.clone();
        for _ in 0..n {
            let next = self.eval(&v)?;
            if next == v {
                break;
            }
            v = next;
        }
        Ok(v)
    }
}

/// `value` vs min(p, q) from `value` vs p and `value` vs q.
fn max_cmp(a: Comparison, b: Comparison) -> Comparison {
    let ordering = a.ordering.max(b.ordering);
    Comparison { ordering, exact: a.exact && b.exact }
}

impl fmt::Display for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AffineHalf => f.write_str("affine_half"),
            Self::Sqrt => f.write_str("sqrt"),
            Self::Capped(a) => write!(f, "capped:a={a}"),
            Self::User(e) => write!(f, "user:{e}"),
            Self::Min(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "min{{{}}}", names.join(" | "))
            }
        }
    }
}

impl FromStr for PsiFunction {
    type Err = PsiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(a) = s.strip_prefix("capped:a=") {
            let a: Scalar = a.parse().map_err(|e: crate::scalar::ScalarError| PsiError::Parameter(e.to_string()))?;
            return Self::capped(a);
        }
        if let Some(e) = s.strip_prefix("user:") {
            return Self::user(e);
        }
        if let Some(inner) = s.strip_prefix("min{").and_then(|r| r.strip_suffix('}')) {
            let parts = inner.split(" | ").map(str::parse).collect::<Result<Vec<_>, _>>()?;
            return Ok(Self::Min(parts));
        }
        match s {
            "affine_half" => Ok(Self::AffineHalf),
            "sqrt" => Ok(Self::Sqrt),
            other => Err(PsiError::Unknown(other.to_string())),
        }
    }
}

impl TryFrom<String> for PsiFunction {
    type Error = PsiError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<PsiFunction> for String {
    fn from(p: PsiFunction) -> Self {
        p.to_string()
    }
}

/// Check ψ against the defining properties of Ψ on `grid` ⊂ [0,1].
///
/// Monotonicity and continuity are compared between sorted neighbours.
/// Dominance ψ(t) > t is tested on interior points through
/// [`PsiFunction::compare_with_image`], so it stays exact for √ and capped
/// kinds even where ψ(t) is irrational.
pub fn psi_validate(psi: &PsiFunction, grid: &[UnitValue]) -> Result<AxiomReport, PsiError> {
    let mut g: Vec<Scalar> = grid.iter().map(|u| u.value().clone()).collect();
    g.sort();
    g.dedup();
    let values = g.iter().map(|x| psi.eval(x)).collect::<Result<Vec<_>, _>>()?;
    let mut report = AxiomReport::new(format!("psi {psi} on {}-point grid", g.len()));
    let class = |exact: bool| if exact { EvidenceClass::Exact } else { EvidenceClass::Sampled };

    let mut exact = true;
    let range = g.iter().zip(&values).find_map(|(x, v)| {
        let lo = v.compare(&Scalar::zero());
        let hi = v.compare(&Scalar::one());
        exact &= lo.exact && hi.exact;
        (lo.is_lt() || hi.is_gt()).then(|| Witness::new(vec![("t", x.clone()), ("psi(t)", v.clone())], "psi(t) outside [0,1]"))
    });
    report.push("codomain", class(exact), range);

    let mut exact = true;
    let mut mono = None;
    let mut max_jump = Scalar::zero();
    for (w, v) in g.windows(2).zip(values.windows(2)) {
        let c = v[0].compare(&v[1]);
        exact &= c.exact;
        let jump = v[1].sub(&v[0]);
        let jump = if jump < Scalar::zero() { jump.neg() } else { jump };
        if jump > max_jump {
            max_jump = jump;
        }
        if c.is_gt() && mono.is_none() {
            mono = Some(Witness::new(
                vec![("s", w[0].clone()), ("t", w[1].clone())],
                format!("psi(s) = {} > psi(t) = {}", v[0], v[1]),
            ));
        }
    }
    report.push("nondecreasing", class(exact), mono);

    let mut exact = true;
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut dom = None;
    for t in g.iter().filter(|t| **t > zero && **t < one) {
        let c = psi.compare_with_image(t, t)?;
        exact &= c.exact;
        if !c.is_lt() {
            dom = Some(Witness::new(vec![("t", t.clone())], format!("psi(t) = {} is not > t", psi.eval(t)?)));
            break;
        }
    }
    report.push("dominance", class(exact), dom);

    let fix = psi.compare_with_image(&one, &one)?;
    let fixed = (!fix.ordering.is_eq()).then(|| Witness::new(vec![("psi(1)", psi.eval(&one).unwrap_or(Scalar::zero()))], "psi(1) != 1"));
    report.push("fixes_one", class(fix.exact), fixed);

    let tol = Scalar::ratio(CONTINUITY_TOLERANCE.0, CONTINUITY_TOLERANCE.1);
    let cont = max_jump.compare(&tol).is_gt().then(|| {
        Witness::new(vec![("oscillation", max_jump.clone())], format!("adjacent-grid jump exceeds {tol}"))
    });
    if psi.is_builtin() {
        report.push_note("continuity", EvidenceClass::Analytic, cont, &format!("continuous by construction; sampled oscillation {max_jump}"));
    } else {
        report.push_note("continuity", EvidenceClass::Sampled, cont, &format!("sampled oscillation {max_jump}"));
    }
    Ok(report)
}

/// ψⁿ(r).
pub fn psi_iterate(psi: &PsiFunction, r: &UnitValue, n: u64) -> Result<UnitValue, PsiError> {
    let v = psi.iterate(r.value(), n)?;
    UnitValue::new(v).map_err(|e| PsiError::Parameter(e.to_string()))
}

/// Closed form of the affine-half iterate: 1 − (1−r)/2ⁿ.
pub fn affine_half_closed_form(r: &Scalar, n: u32) -> Scalar {
    Scalar::one().sub(&Scalar::one().sub(r).mul(&Scalar::dyadic(n)))
}

/// Number of iterations that analytically guarantees ψⁿ(r) ≥ 1 − eps for the
/// built-in kinds; `None` for user formulas and minima.
pub fn analytic_iteration_bound(psi: &PsiFunction, r: f64, eps: f64) -> Option<u64> {
    if !(r > 0.0 && eps > 0.0 && eps < 1.0) {
        return None;
    }
    if r >= 1.0 - eps {
        return Some(0);
    }
    let sqrt_bound = |r: f64| -> u64 {
        // r^(1/2ⁿ) ≥ 1 − eps  ⟺  2ⁿ ≥ ln r / ln(1 − eps)
        let ratio = r.ln() / (1.0 - eps).ln();
        ratio.log2().ceil().max(0.0) as u64
    };
    match psi {
        PsiFunction::AffineHalf => Some(((1.0 - r) / eps).log2().ceil().max(0.0) as u64),
        PsiFunction::Sqrt => Some(sqrt_bound(r)),
        PsiFunction::Capped(a) => {
            let a = a.to_f64();
            let knee = 1.0 / (a * a);
            if r >= knee {
                Some(sqrt_bound(r))
            } else {
                // Linear regime multiplies by a until the knee is passed.
                let linear = ((knee / r).ln() / a.ln()).ceil().max(0.0) as u64;
                Some(linear + sqrt_bound(knee))
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::unit_grid;

    fn u(n: i64, d: i64) -> UnitValue {
        UnitValue::ratio(n, d).unwrap()
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(psi_iterate(&PsiFunction::AffineHalf, &u(1, 2), 3).unwrap(), u(15, 16));
        assert_eq!(psi_iterate(&PsiFunction::Sqrt, &u(1, 16), 2).unwrap(), u(1, 2));
        for p in [PsiFunction::AffineHalf, PsiFunction::Sqrt, PsiFunction::capped(Scalar::integer(2)).unwrap()] {
            assert_eq!(psi_iterate(&p, &UnitValue::one(), 5).unwrap(), UnitValue::one());
        }
    }

    #[test]
    fn builtins_are_in_psi() {
        let grid = unit_grid(100);
        for p in [
            PsiFunction::AffineHalf,
            PsiFunction::Sqrt,
            PsiFunction::capped(Scalar::ratio(3, 2)).unwrap(),
            PsiFunction::capped(Scalar::integer(2)).unwrap(),
            PsiFunction::capped(Scalar::integer(5)).unwrap(),
        ] {
            let r = p.validate(&grid).unwrap();
            assert!(r.all_passed(), "{r}");
            assert_eq!(r.check("dominance").unwrap().evidence, EvidenceClass::Exact, "{p}");
        }
    }

    #[test]
    fn identity_fails_dominance_at_half() {
        let id = PsiFunction::user("x").unwrap();
        let r = id.validate(&[u(0, 1), u(1, 2), u(1, 1)]).unwrap();
        let d = r.check("dominance").unwrap();
        assert!(!d.passed);
        assert_eq!(d.witness.as_ref().unwrap().get("t"), Some(&Scalar::ratio(1, 2)));
        assert!(r.passed("nondecreasing") && r.passed("fixes_one"));
    }

    #[test]
    fn user_expression_errors_surface() {
        let p = PsiFunction::user("1/(x-1/2)").unwrap();
        assert!(matches!(p.validate(&unit_grid(10)), Err(PsiError::Expression(_))));
        assert!(PsiFunction::user("x +").is_err());
    }

    #[test]
    fn capped_parameter_and_crossover() {
        assert!(PsiFunction::capped(Scalar::one()).is_err());
        assert!(PsiFunction::capped(Scalar::ratio(1, 2)).is_err());
        let c2 = PsiFunction::capped(Scalar::integer(2)).unwrap();
        assert_eq!(c2.eval(&Scalar::ratio(1, 16)).unwrap(), Scalar::ratio(1, 8));
        // Crossover at 1/4: both branches give 1/2.
        assert_eq!(c2.eval(&Scalar::ratio(1, 4)).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(c2.eval(&Scalar::ratio(9, 16)).unwrap(), Scalar::ratio(3, 4));
        let c32 = PsiFunction::capped(Scalar::ratio(3, 2)).unwrap();
        assert_eq!(c32.eval(&Scalar::ratio(4, 9)).unwrap(), Scalar::ratio(2, 3));
    }

    #[test]
    fn exact_comparison_through_irrational_images() {
        // √(3/4) ≈ 0.866: 7/8 above, 6/7 below.
        let s = PsiFunction::Sqrt;
        let c = s.compare_with_image(&Scalar::ratio(7, 8), &Scalar::ratio(3, 4)).unwrap();
        assert!(c.exact && c.is_gt());
        let c = s.compare_with_image(&Scalar::ratio(6, 7), &Scalar::ratio(3, 4)).unwrap();
        assert!(c.exact && c.is_lt());
        let m = PsiFunction::Min(vec![PsiFunction::AffineHalf, PsiFunction::Sqrt]);
        // min{(1+3/4)/2, √(3/4)} = √(3/4)
        let c = m.compare_with_image(&Scalar::ratio(7, 8), &Scalar::ratio(3, 4)).unwrap();
        assert!(c.exact && c.is_ge());
    }

    #[test]
    fn names_roundtrip() {
        for s in ["affine_half", "sqrt", "capped:a=3/2", "user:(1+x)/2", "min{sqrt | capped:a=2}"] {
            let p: PsiFunction = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("cube".parse::<PsiFunction>().is_err());
    }

    #[test]
    fn analytic_bound_reaches_target() {
        let eps = 1e-6;
        for p in [PsiFunction::AffineHalf, PsiFunction::Sqrt, PsiFunction::capped(Scalar::integer(2)).unwrap()] {
            for k in 1..10 {
                let r = Scalar::ratio(k, 10);
                let n = analytic_iteration_bound(&p, r.to_f64(), eps).unwrap();
                let v = p.iterate(&r, n).unwrap();
                assert!(v.to_f64() >= 1.0 - eps - 1e-12, "{p} r={r} n={n} v={v}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn affine_half_closed_form_matches(n in 0u32..40, num in 0i64..=100) {
                let r = Scalar::ratio(num, 100);
                prop_assert_eq!(PsiFunction::AffineHalf.iterate(&r, n as u64).unwrap(), affine_half_closed_form(&r, n));
            }

            #[test]
            fn iterates_are_monotone(n in 0u64..12, num in 1i64..100) {
                let r = Scalar::ratio(num, 100);
                for p in [PsiFunction::AffineHalf, PsiFunction::Sqrt, PsiFunction::capped(Scalar::integer(3)).unwrap()] {
                    let a = p.iterate(&r, n).unwrap();
                    let b = p.iterate(&r, n + 1).unwrap();
                    prop_assert!(b.compare(&a).is_ge());
                }
            }
        }
    }
}
