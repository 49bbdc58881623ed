//! Small exact expression language over the variables `x` and `y`.
//!
//! Expressions: numbers, `inv_sqrt2`, `x`, `y`, `+ - * /`, integer powers
//! `^k`, and the functions `sqrt`, `min`, `max`, `abs`. Evaluation stays in
//! exact arithmetic as long as every square root does.
//!
//! Guards: `else`, `x in Q` (also `x∈Q`, `x notin Q`), and relation chains
//! such as `x<=y`, `y<x<1`, `y<x=1`, `x=y=1`, joined with `&&` or `and`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error in `{src}` at offset {pos}: {msg}")]
    Syntax { src: String, pos: usize, msg: String },
    #[error("variable `{0}` is not bound here")]
    Unbound(char),
    #[error("arithmetic error: {0}")]
    Arithmetic(#[from] ScalarError),
    #[error("guard `{0}` cannot be decided exactly")]
    InexactGuard(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Sqrt,
    Min,
    Max,
    Abs,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(Scalar),
    Var(char),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Call(Func, Vec<Node>),
}

/// Variable bindings for evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Bindings<'a> {
    pub x: &'a Scalar,
    pub y: Option<&'a Scalar>,
}

impl<'a> Bindings<'a> {
    pub fn x(x: &'a Scalar) -> Self {
        Self { x, y: None }
    }

    pub fn xy(x: &'a Scalar, y: &'a Scalar) -> Self {
        Self { x, y: Some(y) }
    }
}

impl Node {
    fn eval(&self, env: Bindings<'_>) -> Result<Scalar, ExprError> {
        Ok(match self {
            Node::Const(c) => c.clone(),
            Node::Var('x') => env.x.clone(),
            Node::Var('y') => env.y.cloned().ok_or(ExprError::Unbound('y'))?,
            Node::Var(c) => return Err(ExprError::Unbound(*c)),
            Node::Neg(a) => a.eval(env)?.neg(),
            Node::Bin(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    BinOp::Add => a.add(&b),
                    BinOp::Sub => a.sub(&b),
                    BinOp::Mul => a.mul(&b),
                    BinOp::Div => a.div(&b)?,
                }
            }
            Node::Pow(a, k) => {
                let base = a.eval(env)?;
                let mut acc = Scalar::one();
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(&base);
                }
                if *k < 0 {
                    Scalar::one().div(&acc)?
                } else {
                    acc
                }
            }
            Node::Call(f, args) => {
                let vals = args.iter().map(|a| a.eval(env)).collect::<Result<Vec<_>, _>>()?;
                match f {
                    Func::Sqrt => vals[0].sqrt()?,
                    Func::Abs => {
                        if vals[0] < Scalar::zero() {
                            vals[0].neg()
                        } else {
                            vals[0].clone()
                        }
                    }
                    Func::Min => vals.iter().skip(1).fold(vals[0].clone(), |m, v| m.min_of(v)),
                    Func::Max => vals.iter().skip(1).fold(vals[0].clone(), |m, v| m.max_of(v)),
                }
            }
        })
    }

    fn uses(&self, var: char) -> bool {
        match self {
            Node::Const(_) => false,
            Node::Var(c) => *c == var,
            Node::Neg(a) | Node::Pow(a, _) => a.uses(var),
            Node::Bin(_, a, b) => a.uses(var) || b.uses(var),
            Node::Call(_, args) => args.iter().any(|a| a.uses(var)),
        }
    }
}

struct Parser<'s> {
    src: &'s str,
    bytes: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str) -> Self {
        Self { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { src: self.src.to_string(), pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: i32 = match self.src[start..self.pos].parse() {
                Ok(k) => k,
                Err(_) => return self.err("expected integer exponent"),
            };
            return Ok(Node::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                match self.src[start..self.pos].parse::<Scalar>() {
                    Ok(v) => Ok(Node::Const(v)),
                    Err(_) => self.err("bad number"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let word = &self.src[start..self.pos];
                let func = match word {
                    "x" | "y" => return Ok(Node::Var(word.chars().next().unwrap_or('x'))),
                    "inv_sqrt2" => return Ok(Node::Const(Scalar::inv_sqrt2())),
                    "sqrt" => Func::Sqrt,
                    "min" => Func::Min,
                    "max" => Func::Max,
                    "abs" => Func::Abs,
                    _ => return self.err(format!("unknown identifier `{word}`")),
                };
                if !self.eat(b'(') {
                    return self.err("expected `(`");
                }
                let mut args = vec![self.expr()?];
                while self.eat(b',') {
                    args.push(self.expr()?);
                }
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                let arity_ok = match func {
                    Func::Sqrt | Func::Abs => args.len() == 1,
                    Func::Min | Func::Max => !args.is_empty(),
                };
                if !arity_ok {
                    return self.err(format!("wrong number of arguments to `{word}`"));
                }
                Ok(Node::Call(func, args))
            }
            _ => self.err("unexpected input"),
        }
    }

    fn finish(mut self, node: Node) -> Result<Node, ExprError> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(node)
    }
}

fn parse_node(src: &str) -> Result<Node, ExprError> {
    let mut p = Parser::new(src);
    let n = p.expr()?;
    p.finish(n)
}

/// A parsed arithmetic expression that remembers its source text.
#[derive(Debug, Clone)]
pub struct Expression {
    source: String,
    node: Node,
}

impl Expression {
    pub fn parse(src: &str) -> Result<Self, ExprError> {
        Ok(Self { source: src.trim().to_string(), node: parse_node(src)? })
    }

    pub fn eval(&self, env: Bindings<'_>) -> Result<Scalar, ExprError> {
        self.node.eval(env)
    }

    pub fn eval_x(&self, x: &Scalar) -> Result<Scalar, ExprError> {
        self.eval(Bindings::x(x))
    }

    pub fn uses_y(&self) -> bool {
        self.node.uses('y')
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for Expression {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
enum Atom {
    Rel(Node, Rel, Node),
    Rational(Node, bool),
}

/// A conjunction of atomic predicates on `x` (and optionally `y`).
#[derive(Debug, Clone)]
pub struct Guard {
    source: String,
    /// Empty means `else`.
    atoms: Vec<Atom>,
}

fn split_relations(src: &str) -> Result<(Vec<&str>, Vec<Rel>), ExprError> {
    let mut parts = Vec::new();
    let mut rels = Vec::new();
    let mut start = 0;
    let mut it = src.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        let next = it.peek().map(|&(_, n)| n);
        let (rel, width) = match (c, next) {
            ('<', Some('=')) => (Rel::Le, 2),
            ('>', Some('=')) => (Rel::Ge, 2),
            ('=', Some('=')) => (Rel::Eq, 2),
            ('!', Some('=')) => (Rel::Ne, 2),
            ('<', _) => (Rel::Lt, 1),
            ('>', _) => (Rel::Gt, 1),
            ('=', _) => (Rel::Eq, 1),
            ('≤', _) => (Rel::Le, c.len_utf8()),
            ('≥', _) => (Rel::Ge, c.len_utf8()),
            ('≠', _) => (Rel::Ne, c.len_utf8()),
            _ => continue,
        };
        parts.push(&src[start..i]);
        rels.push(rel);
        if width == 2 {
            it.next();
            start = i + 2;
        } else {
            start = i + width;
        }
    }
    parts.push(&src[start..]);
    if rels.is_empty() {
        return Err(ExprError::Syntax { src: src.to_string(), pos: 0, msg: "expected a relation".into() });
    }
    Ok((parts, rels))
}

fn parse_clause(clause: &str, atoms: &mut Vec<Atom>) -> Result<(), ExprError> {
    let c = clause.trim();
    for (suffix, negated) in [(" notin Q", true), ("∉Q", true), (" in Q", false), ("∈Q", false)] {
        if let Some(lhs) = c.strip_suffix(suffix) {
            atoms.push(Atom::Rational(parse_node(lhs)?, negated));
            return Ok(());
        }
    }
    let (parts, rels) = split_relations(c)?;
    let nodes = parts.iter().map(|p| parse_node(p)).collect::<Result<Vec<_>, _>>()?;
    for (k, rel) in rels.into_iter().enumerate() {
        atoms.push(Atom::Rel(nodes[k].clone(), rel, nodes[k + 1].clone()));
    }
    Ok(())
}

impl Guard {
    pub fn parse(src: &str) -> Result<Self, ExprError> {
        let source = src.trim().to_string();
        let mut atoms = Vec::new();
        if source != "else" && source != "otherwise" {
            for clause in source.split("&&").flat_map(|c| c.split(" and ")) {
                parse_clause(clause, &mut atoms)?;
            }
        }
        Ok(Self { source, atoms })
    }

    pub fn otherwise() -> Self {
        Self { source: "else".into(), atoms: Vec::new() }
    }

    pub fn is_else(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn matches(&self, env: Bindings<'_>) -> Result<bool, ExprError> {
        for atom in &self.atoms {
            let holds = match atom {
                Atom::Rational(n, negated) => {
                    let v = n.eval(env)?;
                    let q = v.is_rational().map_err(|_| ExprError::InexactGuard(self.source.clone()))?;
                    q != *negated
                }
                Atom::Rel(a, rel, b) => {
                    let c = a.eval(env)?.compare(&b.eval(env)?);
                    if !c.exact {
                        return Err(ExprError::InexactGuard(self.source.clone()));
                    }
                    match rel {
                        Rel::Lt => c.is_lt(),
                        Rel::Le => c.is_le(),
                        Rel::Eq => c.ordering.is_eq(),
                        Rel::Ne => !c.ordering.is_eq(),
                        Rel::Gt => c.is_gt(),
                        Rel::Ge => c.is_ge(),
                    }
                }
            };
            if !holds {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PartialEq for Guard {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.source)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                Self::parse(&s).map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Expression);
string_serde!(Guard);

/// One guarded branch of a piecewise definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub when: Guard,
    pub value: Expression,
}

impl Branch {
    pub fn new(when: &str, value: &str) -> Result<Self, ExprError> {
        Ok(Self { when: Guard::parse(when)?, value: Expression::parse(value)? })
    }
}

/// First-match selection; `None` when no guard matches.
pub fn select_branch<'b>(branches: &'b [Branch], env: Bindings<'_>) -> Result<Option<(usize, &'b Branch)>, ExprError> {
    for (i, b) in branches.iter().enumerate() {
        if b.when.matches(env)? {
            return Ok(Some((i, b)));
        }
    }
    Ok(None)
}

/// Number of branches whose guard holds; used to check exclusivity.
pub fn matching_count(branches: &[Branch], env: Bindings<'_>) -> Result<usize, ExprError> {
    let mut n = 0;
    let mut saw_specific = false;
    for b in branches {
        if b.when.is_else() {
            if !saw_specific {
                n += 1;
            }
            continue;
        }
        if b.when.matches(env)? {
            n += 1;
            saw_specific = true;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(src: &str, x: Scalar) -> Scalar {
        Expression::parse(src).unwrap().eval_x(&x).unwrap()
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(ev("(1+x)/2", Scalar::ratio(1, 2)), Scalar::ratio(3, 4));
        assert_eq!(ev("(1+x)/(2*x)", Scalar::ratio(1, 2)), Scalar::ratio(3, 2));
        assert_eq!(ev("min(2*x, sqrt(x))", Scalar::ratio(1, 16)), Scalar::ratio(1, 8));
        assert_eq!(ev("x^2 - 1/4", Scalar::ratio(1, 2)), Scalar::zero());
        assert_eq!(ev("x^-1", Scalar::ratio(1, 4)), Scalar::integer(4));
        assert_eq!(ev("sqrt(x)", Scalar::ratio(1, 2)), Scalar::inv_sqrt2());
        assert_eq!(ev("-x + abs(-x)", Scalar::ratio(1, 3)), Scalar::zero());
        assert_eq!(ev("0.25 * inv_sqrt2 * inv_sqrt2", Scalar::one()), Scalar::ratio(1, 8));
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(Expression::parse("1 +"), Err(ExprError::Syntax { .. })));
        assert!(matches!(Expression::parse("foo(x)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(Expression::parse("sqrt(x, y)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(Expression::parse("(x"), Err(ExprError::Syntax { .. })));
        let e = Expression::parse("1/x").unwrap();
        assert!(matches!(e.eval_x(&Scalar::zero()), Err(ExprError::Arithmetic(ScalarError::DivisionByZero))));
        let e = Expression::parse("x+y").unwrap();
        assert_eq!(e.eval_x(&Scalar::one()), Err(ExprError::Unbound('y')));
    }

    #[test]
    fn guard_chains() {
        let g = Guard::parse("y<x<1").unwrap();
        let (a, b) = (Scalar::ratio(1, 2), Scalar::ratio(3, 4));
        assert!(g.matches(Bindings::xy(&b, &a)).unwrap());
        assert!(!g.matches(Bindings::xy(&a, &b)).unwrap());
        let g = Guard::parse("x=y=1").unwrap();
        assert!(g.matches(Bindings::xy(&Scalar::one(), &Scalar::one())).unwrap());
        assert!(!g.matches(Bindings::xy(&a, &a)).unwrap());
        let g = Guard::parse("x ≤ y").unwrap();
        assert!(g.matches(Bindings::xy(&a, &a)).unwrap());
        let g = Guard::parse("x>0 && x<=1/2").unwrap();
        assert!(g.matches(Bindings::x(&a)).unwrap());
        assert!(!g.matches(Bindings::x(&b)).unwrap());
    }

    #[test]
    fn rationality_guards() {
        let q = Guard::parse("x in Q").unwrap();
        let nq = Guard::parse("x∉Q").unwrap();
        let r = Scalar::inv_sqrt2();
        assert!(!q.matches(Bindings::x(&r)).unwrap());
        assert!(nq.matches(Bindings::x(&r)).unwrap());
        assert!(q.matches(Bindings::x(&Scalar::ratio(2, 3))).unwrap());
        assert!(matches!(q.matches(Bindings::x(&Scalar::approx(0.5))), Err(ExprError::InexactGuard(_))));
    }

    #[test]
    fn branch_selection_and_exclusivity() {
        let bs = vec![Branch::new("x=1", "1").unwrap(), Branch::new("x=inv_sqrt2", "x").unwrap(), Branch::new("else", "1/2").unwrap()];
        let (i, _) = select_branch(&bs, Bindings::x(&Scalar::inv_sqrt2())).unwrap().unwrap();
        assert_eq!(i, 1);
        assert_eq!(matching_count(&bs, Bindings::x(&Scalar::ratio(1, 4))).unwrap(), 1);
        let overlapping = vec![Branch::new("x<=1", "1").unwrap(), Branch::new("x>=1", "2").unwrap()];
        assert_eq!(matching_count(&overlapping, Bindings::x(&Scalar::one())).unwrap(), 2);
    }
}
