//! Number tower for points, times and membership grades.
//!
//! Exact values live in the quadratic field ℚ(√2): every exact scalar is
//! `r + s·√2` with rational `r` and `s`. That field contains all rationals
//! and the tagged constant `INV_SQRT2 = 1/√2 = √2/2`, is closed under the
//! four field operations, and has a decidable order and a decidable
//! rationality test. Square roots that leave the field fall back to an
//! approximate `f64` value; anything touching an approximate value is
//! approximate, and comparisons involving one use [`APPROX_TOLERANCE`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Absolute tolerance for comparisons that involve an approximate value.
pub const APPROX_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),
    #[error("value {0} is outside [0,1]")]
    OutOfUnitRange(String),
    #[error("value {0} is not exact")]
    Inexact(String),
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// An element `rational + surd·√2` of ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    rational: BigRational,
    surd: BigRational,
}

impl Quadratic {
    pub fn new(rational: BigRational, surd: BigRational) -> Self {
        Self { rational, surd }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// Coefficient of √2.
    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&BigRational::zero());
        let b = self.surd.cmp(&BigRational::zero());
        match (a, b) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // Opposite signs: |rational| vs |surd|·√2 decided by squares.
                let lhs = &self.rational * &self.rational;
                let rhs = &self.surd * &self.surd * BigRational::from_integer(2.into());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.rational + &o.rational, &self.surd + &o.surd)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.rational - &o.rational, &self.surd - &o.surd)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.rational, -&self.surd)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let two = BigRational::from_integer(2.into());
        Self::new(
            &self.rational * &o.rational + &self.surd * &o.surd * two,
            &self.rational * &o.surd + &self.surd * &o.rational,
        )
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let two = BigRational::from_integer(2.into());
        let norm = &self.rational * &self.rational - &self.surd * &self.surd * two;
        Some(Self::new(&self.rational / &norm, -&self.surd / &norm))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.recip().map(|r| self.mul(&r))
    }

    /// Square root inside ℚ(√2), when it exists there.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() == Ordering::Less {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let two = BigRational::from_integer(2.into());
        if self.surd.is_zero() {
            if let Some(r) = exact_rational_sqrt(&self.rational) {
                return Some(Self::from_rational(r));
            }
            // √r = √(2r)/√2 = (√(2r)/2)·√2
            if let Some(r2) = exact_rational_sqrt(&(&self.rational * &two)) {
                return Some(Self::new(BigRational::zero(), r2 / &two));
            }
            return None;
        }
        // (p + q√2)² = p² + 2q² + 2pq√2; p² = (a ± √(a² − 2b²))/2.
        let (a, b) = (&self.rational, &self.surd);
        let norm = a * a - b * b * &two;
        let s = exact_rational_sqrt(&norm)?;
        for p_sq in [(a + &s) / &two, (a - &s) / &two] {
            if let Some(p) = exact_rational_sqrt(&p_sq) {
                if p.is_zero() {
                    continue;
                }
                let q = b / (&p * &two);
                let cand = Self::new(p, q);
                let cand = if cand.signum() == Ordering::Less { cand.neg() } else { cand };
                if &cand.mul(&cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let s = self.surd.to_f64().unwrap_or(f64::NAN);
        r + s * std::f64::consts::SQRT_2
    }

    fn height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for r in [&self.rational, &self.surd] {
            h = h.max(r.numer().abs()).max(r.denom().clone());
        }
        if !self.surd.is_zero() {
            // Tagged constants rank after rationals of the same size.
            h = h * 2 + 1;
        }
        h
    }
}

impl Ord for Quadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return f.write_str(&fmt_rational(&self.rational));
        }
        // Written as a multiple of inv_sqrt2 = √2/2.
        let coeff = &self.surd * BigRational::from_integer(2.into());
        let tag = if coeff.is_one() {
            "inv_sqrt2".to_string()
        } else if coeff == -BigRational::one() {
            "-inv_sqrt2".to_string()
        } else {
            format!("{}*inv_sqrt2", fmt_rational(&coeff))
        };
        if self.rational.is_zero() {
            f.write_str(&tag)
        } else if coeff.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.rational), tag)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.rational), tag)
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigRational::new(BigInt::from_str(frac).ok()?, scale);
        let whole = BigRational::from_integer(int_part.abs()) + frac_part;
        return Some(if neg { -whole } else { whole });
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

fn parse_tagged(s: &str) -> Option<BigRational> {
    // Returns the coefficient c of a term `c*inv_sqrt2`.
    let s = s.trim();
    match s {
        "inv_sqrt2" | "+inv_sqrt2" => return Some(BigRational::one()),
        "-inv_sqrt2" => return Some(-BigRational::one()),
        _ => {}
    }
    let (c, tag) = s.split_once('*')?;
    if tag.trim() != "inv_sqrt2" {
        return None;
    }
    parse_rational(c)
}

impl FromStr for Quadratic {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        if !t.contains("inv_sqrt2") {
            return parse_rational(t).map(Self::from_rational).ok_or_else(err);
        }
        // Split `r±c*inv_sqrt2` at the last sign that starts the tagged term.
        let split = t
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !t[..i].ends_with('/'))
            .map(|(i, _)| i)
            .filter(|&i| t[i..].contains("inv_sqrt2") && !t[..i].contains("inv_sqrt2"))
            .last();
        let (rational, tagged) = match split {
            Some(i) => (parse_rational(&t[..i]).ok_or_else(err)?, &t[i..]),
            None => (BigRational::zero(), t),
        };
        let tagged = tagged.strip_prefix('+').unwrap_or(tagged);
        let coeff = parse_tagged(tagged).ok_or_else(err)?;
        Ok(Self::new(rational, coeff / BigRational::from_integer(2.into())))
    }
}

/// A real value: exact in ℚ(√2), or an approximation.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Quadratic),
    Approx(f64),
}

/// Outcome of a tolerance-aware comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    /// False when an approximate value took part.
    pub exact: bool,
}

impl Comparison {
    pub fn exact(ordering: Ordering) -> Self {
        Self { ordering, exact: true }
    }

    pub fn is_ge(&self) -> bool {
        self.ordering != Ordering::Less
    }

    pub fn is_gt(&self) -> bool {
        self.ordering == Ordering::Greater
    }

    pub fn is_le(&self) -> bool {
        self.ordering != Ordering::Greater
    }

    pub fn is_lt(&self) -> bool {
        self.ordering == Ordering::Less
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Self::Exact(Quadratic::from_rational(BigRational::from_integer(n.into())))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::Exact(Quadratic::from_rational(rat(n, d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::Exact(Quadratic::from_rational(r))
    }

    /// The tagged constant 1/√2.
    pub fn inv_sqrt2() -> Self {
        Self::Exact(Quadratic::new(BigRational::zero(), rat(1, 2)))
    }

    /// `1/2^k` for `k >= 0`.
    pub fn dyadic(k: u32) -> Self {
        Self::from_rational(BigRational::new(BigInt::one(), BigInt::from(2u32).pow(k)))
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i32) -> Self {
        let p = BigInt::from(2u32).pow(k.unsigned_abs());
        if k >= 0 {
            Self::from_rational(BigRational::from_integer(p))
        } else {
            Self::from_rational(BigRational::new(BigInt::one(), p))
        }
    }

    pub fn approx(v: f64) -> Self {
        Self::Approx(v)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Quadratic> {
        match self {
            Self::Exact(q) => Some(q),
            Self::Approx(_) => None,
        }
    }

    /// Decidable ℚ-membership; approximate values are rejected.
    pub fn is_rational(&self) -> Result<bool, ScalarError> {
        match self {
            Self::Exact(q) => Ok(q.is_rational()),
            Self::Approx(v) => Err(ScalarError::Inexact(v.to_string())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(q) => q.to_f64(),
            Self::Approx(v) => *v,
        }
    }

    /// Size of the representation, used to rank witnesses simplest-first.
    pub fn height(&self) -> BigInt {
        match self {
            Self::Exact(q) => q.height(),
            Self::Approx(_) => BigInt::from(u64::MAX),
        }
    }

    fn lift(
        &self,
        other: &Self,
        exact: impl FnOnce(&Quadratic, &Quadratic) -> Quadratic,
        approx: impl FnOnce(f64, f64) -> f64,
    ) -> Self {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(exact(a, b)),
            _ => Self::Approx(approx(self.to_f64(), other.to_f64())),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.lift(o, Quadratic::add, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lift(o, Quadratic::sub, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.lift(o, Quadratic::mul, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Exact(q) => Self::Exact(q.neg()),
            Self::Approx(v) => Self::Approx(-v),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Self::Exact(a), Self::Exact(b)) => {
                a.div(b).map(Self::Exact).ok_or(ScalarError::DivisionByZero)
            }
            _ => {
                let d = o.to_f64();
                if d == 0.0 {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Self::Approx(self.to_f64() / d))
                }
            }
        }
    }

    /// Exact whenever the root lies in ℚ(√2).
    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        match self {
            Self::Exact(q) => {
                if q.signum() == Ordering::Less {
                    return Err(ScalarError::NegativeSqrt(q.to_string()));
                }
                Ok(q.sqrt().map(Self::Exact).unwrap_or_else(|| Self::Approx(q.to_f64().sqrt())))
            }
            Self::Approx(v) if *v < -APPROX_TOLERANCE => Err(ScalarError::NegativeSqrt(v.to_string())),
            Self::Approx(v) => Ok(Self::Approx(v.max(0.0).sqrt())),
        }
    }

    /// Comparison with tolerance [`APPROX_TOLERANCE`] when not both exact.
    pub fn compare(&self, o: &Self) -> Comparison {
        match (self, o) {
            (Self::Exact(a), Self::Exact(b)) => Comparison::exact(a.cmp(b)),
            _ => {
                let (a, b) = (self.to_f64(), o.to_f64());
                let ordering = if (a - b).abs() <= APPROX_TOLERANCE {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                Comparison { ordering, exact: false }
            }
        }
    }

    pub fn min_of(&self, o: &Self) -> Self {
        if self.compare(o).is_le() {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn max_of(&self, o: &Self) -> Self {
        if self.compare(o).is_ge() {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.compare(&Self::zero()).ordering == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.compare(&Self::zero()).is_gt()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Scalar {}

/// Total order: exact values by value; approximations by `total_cmp`;
/// an exact value sorts before an approximation of the same float.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => a.cmp(b),
            (Self::Approx(a), Self::Approx(b)) => a.total_cmp(b),
            (Self::Exact(a), Self::Approx(b)) => a.to_f64().total_cmp(b).then(Ordering::Less),
            (Self::Approx(a), Self::Exact(b)) => a.total_cmp(&b.to_f64()).then(Ordering::Greater),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Self::Exact(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Self::Approx(v) => {
                1u8.hash(state);
                v.to_bits().hash(state);
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(q) => q.fmt(f),
            Self::Approx(v) => write!(f, "~{v}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('~') {
            return rest
                .trim()
                .parse::<f64>()
                .map(Self::Approx)
                .map_err(|_| ScalarError::Parse(s.to_string()));
        }
        Quadratic::from_str(t).map(Self::Exact)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct ScalarVisitor;

impl de::Visitor<'_> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a scalar such as \"3/4\", \"inv_sqrt2\", \"1/2*inv_sqrt2\" or a decimal")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        Ok(Scalar::integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        Ok(Scalar::from_rational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
        // JSON decimals are read as the exact decimal they print as.
        v.to_string().parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

/// A membership grade in [0,1].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct UnitValue(Scalar);

impl UnitValue {
    pub fn new(v: Scalar) -> Result<Self, ScalarError> {
        let lo = v.compare(&Scalar::zero());
        let hi = v.compare(&Scalar::one());
        if lo.is_ge() && hi.is_le() {
            Ok(Self(v))
        } else {
            Err(ScalarError::OutOfUnitRange(v.to_string()))
        }
    }

    pub fn zero() -> Self {
        Self(Scalar::zero())
    }

    pub fn one() -> Self {
        Self(Scalar::one())
    }

    pub fn ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        Self::new(Scalar::ratio(n, d))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn into_inner(self) -> Scalar {
        self.0
    }
}

impl<'de> Deserialize<'de> for UnitValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = Scalar::deserialize(deserializer)?;
        Self::new(s).map_err(de::Error::custom)
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `n + 1` equispaced points `0, 1/n, …, 1`.
pub fn unit_grid(n: i64) -> Vec<UnitValue> {
    (0..=n).map(|k| UnitValue(Scalar::ratio(k, n))).collect()
}

/// Parse `"a,b,c"` into scalars.
pub fn parse_list(s: &str) -> Result<Vec<Scalar>, ScalarError> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn inv_sqrt2_squares_to_half() {
        let r = Scalar::inv_sqrt2();
        assert_eq!(r.mul(&r), Scalar::ratio(1, 2));
        assert!(!r.is_rational().unwrap());
        assert!(Scalar::ratio(3, 4).is_rational().unwrap());
    }

    #[test]
    fn rational_multiples_stay_exact() {
        let a = s("1/2*inv_sqrt2");
        let b = s("3*inv_sqrt2");
        assert_eq!(a.mul(&b), Scalar::ratio(3, 4));
        assert_eq!(a.div(&b).unwrap(), Scalar::ratio(1, 6));
        assert_eq!(Scalar::ratio(1, 2).div(&Scalar::inv_sqrt2()).unwrap(), Scalar::inv_sqrt2());
    }

    #[test]
    fn ordering_of_mixed_terms() {
        // 1/√2 ≈ 0.7071
        assert!(Scalar::inv_sqrt2() > Scalar::ratio(7, 10));
        assert!(Scalar::inv_sqrt2() < Scalar::ratio(71, 100));
        assert!(s("1-inv_sqrt2") > Scalar::zero());
        assert!(s("1-2*inv_sqrt2") < Scalar::zero());
        assert!(s("3/2-2*inv_sqrt2") > Scalar::zero());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Scalar::ratio(1, 16).sqrt().unwrap(), Scalar::ratio(1, 4));
        assert_eq!(Scalar::ratio(1, 2).sqrt().unwrap(), Scalar::inv_sqrt2());
        assert_eq!(Scalar::integer(8).sqrt().unwrap(), s("4*inv_sqrt2"));
        // (1 + √2/2)² = 3/2 + √2
        let v = s("3/2+2*inv_sqrt2");
        assert_eq!(v.sqrt().unwrap(), s("1+inv_sqrt2"));
        let r3 = Scalar::ratio(3, 4).sqrt().unwrap();
        assert!(!r3.is_exact());
        assert!((r3.to_f64() - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(Scalar::integer(-1).sqrt().is_err());
    }

    #[test]
    fn parse_and_display() {
        for t in ["3/4", "-1/2", "0", "inv_sqrt2", "1/2*inv_sqrt2", "1+inv_sqrt2", "1/3-3/2*inv_sqrt2", "-inv_sqrt2"] {
            assert_eq!(s(t).to_string(), t);
        }
        assert_eq!(s("0.25"), Scalar::ratio(1, 4));
        assert_eq!(s("-1.5"), Scalar::ratio(-3, 2));
        assert_eq!(s("4/8").to_string(), "1/2");
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!(!s("~0.5").is_exact());
    }

    #[test]
    fn approximate_comparison_uses_tolerance() {
        let c = Scalar::approx(0.5 + 1e-12).compare(&Scalar::ratio(1, 2));
        assert_eq!(c.ordering, Ordering::Equal);
        assert!(!c.exact);
    }

    #[test]
    fn unit_value_rejects_out_of_range() {
        assert!(UnitValue::new(Scalar::ratio(3, 2)).is_err());
        assert!(UnitValue::new(Scalar::ratio(-1, 2)).is_err());
        assert!(UnitValue::new(Scalar::inv_sqrt2()).is_ok());
    }

    #[test]
    fn serde_as_strings() {
        let v: Vec<Scalar> = serde_json::from_str(r#"["3/4", "inv_sqrt2", 2, 0.5]"#).unwrap();
        assert_eq!(v[3], Scalar::ratio(1, 2));
        let back = serde_json::to_string(&v).unwrap();
        assert_eq!(back, r#"["3/4","inv_sqrt2","2","1/2"]"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn quad() -> impl Strategy<Value = Scalar> {
            (-20i64..20, 1i64..12, -20i64..20, 1i64..12).prop_map(|(a, b, c, d)| {
                Scalar::Exact(Quadratic::new(rat(a, b), rat(c, d)))
            })
        }

        proptest! {
            #[test]
            fn display_parse_roundtrip(x in quad()) {
                let back: Scalar = x.to_string().parse().unwrap();
                prop_assert_eq!(back, x);
            }

            #[test]
            fn field_laws(x in quad(), y in quad()) {
                prop_assert_eq!(x.add(&y).sub(&y), x.clone());
                if !y.is_zero() {
                    prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x.clone());
                }
                let f = (x.to_f64() - y.to_f64()).signum();
                if (x.to_f64() - y.to_f64()).abs() > 1e-9 {
                    prop_assert_eq!(x.cmp(&y) == Ordering::Greater, f > 0.0);
                }
            }

            #[test]
            fn sqrt_of_square(x in quad()) {
                let sq = x.mul(&x);
                let r = sq.sqrt().unwrap();
                prop_assert!(r.is_exact());
                let abs = if x < Scalar::zero() { x.neg() } else { x.clone() };
                prop_assert_eq!(r, abs);
            }
        }
    }
}
