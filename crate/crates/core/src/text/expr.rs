//! Expressions in `t`, `i`, `e_k` and `sqrt(...)`.
//!
//! Precedence, loosest first: `+ -`, then `* /` and juxtaposition, then
//! unary minus, then `^`. So `-t^2` is `-(t^2)` and `2t e_3` is `2·t·e_3`.
//! Exponents are integer literals, optionally negative (`t^-1`).

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ParseError, ParseErrorKind};
use crate::arith::{GaussianRational, Radicand, Rational, RationalFunction, TowerElement};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    I,
    Basis(usize),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => n.to_string(),
            Tok::T => "t".into(),
            Tok::I => "i".into(),
            Tok::Basis(k) => format!("e_{k}"),
            Tok::Sqrt => "sqrt".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Int(_) | Tok::T | Tok::I | Tok::Basis(_) | Tok::Sqrt | Tok::LParen)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((Tok::Int(text[start..pos].parse().expect("digits")), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b't' => Tok::T,
            b'i' => Tok::I,
            b's' if text[pos..].starts_with("sqrt") => {
                pos += 4;
                out.push((Tok::Sqrt, start));
                continue;
            }
            b'e' => {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'_' {
                    pos += 1;
                }
                let digits = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if digits == pos {
                    return Err(ParseError::at(start, ParseErrorKind::Syntax("expected a basis index after `e`".into())));
                }
                let k: usize = text[digits..pos]
                    .parse()
                    .map_err(|_| ParseError::at(digits, ParseErrorKind::IndexOutOfRange(0)))?;
                out.push((Tok::Basis(k), start));
                continue;
            }
            _ => {
                let ch = text[pos..].chars().next().expect("in bounds");
                return Err(ParseError::at(start, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        out.push((tok, start));
        pos += 1;
    }
    Ok(out)
}

/// The square root adjoined so far; shared by all expressions of one witness.
#[derive(Clone, Debug, Default)]
pub struct RadicalContext {
    radicand: Option<Radicand>,
}

impl RadicalContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn radicand(&self) -> Option<&Radicand> {
        self.radicand.as_ref()
    }

    /// `√x` expressed over the current radicand, adopting `x` as the
    /// radicand if none is fixed yet.
    fn sqrt(&mut self, x: RationalFunction) -> Result<TowerElement, ParseErrorKind> {
        if x.is_zero() {
            return Ok(TowerElement::zero());
        }
        if let Some(root) = x.sqrt() {
            return Ok(TowerElement::from(root));
        }
        match &self.radicand {
            Some(r) => {
                // √x = q·√r when x / r = q²
                let ratio = &x / r.value();
                match ratio.sqrt() {
                    Some(q) => Ok(TowerElement::with_radical(RationalFunction::zero(), q, r.value().clone())),
                    None => Err(ParseErrorKind::MultipleRadicals),
                }
            }
            None => {
                let s = TowerElement::sqrt_of(x);
                self.radicand = s.radicand().cloned();
                Ok(s)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(TowerElement),
    Vector(Vec<TowerElement>),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    dim: usize,
    ctx: &'a mut RadicalContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError::at(self.here(), kind))
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::Syntax(format!("expected {expected}, found `{}`", t.describe()))),
            None => self.err(ParseErrorKind::Syntax(format!("expected {expected}, found end of input"))),
        }
    }

    fn sum(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            if op != Tok::Plus && op != Tok::Minus {
                break;
            }
            let at = self.here();
            self.pos += 1;
            let rhs = self.term()?;
            acc = add(acc, rhs, op == Tok::Minus, self.dim).map_err(|k| ParseError::at(at, k))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = mul(acc, rhs).map_err(|k| ParseError::at(at, k))?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = div(acc, rhs).map_err(|k| ParseError::at(at, k))?;
                }
                Some(t) if t.starts_atom() => {
                    let rhs = self.power()?;
                    acc = mul(acc, rhs).map_err(|k| ParseError::at(at, k))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(negate(self.unary()?))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.here();
        self.pos += 1;
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.unexpected("an integer exponent");
        };
        self.pos += 1;
        if paren {
            self.expect(Tok::RParen)?;
        }
        let e = n.to_i32().ok_or_else(|| ParseError::at(at, ParseErrorKind::BadExponent))?;
        let e = if negative { -e } else { e };
        match base {
            Value::Scalar(x) => x
                .pow(e)
                .map(Value::Scalar)
                .map_err(|_| ParseError::at(at, ParseErrorKind::DivisionByZero)),
            v @ Value::Vector(_) if e == 1 => Ok(v),
            Value::Vector(_) => Err(ParseError::at(at, ParseErrorKind::NotLinear)),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(&format!("`{}`", tok.describe()))
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return self.unexpected("an operand");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Value::Scalar(TowerElement::constant(GaussianRational::from_rational(Rational::from_integer(n))))),
            Tok::T => Ok(Value::Scalar(TowerElement::t())),
            Tok::I => Ok(Value::Scalar(TowerElement::constant(GaussianRational::i()))),
            Tok::Basis(k) => {
                if k == 0 || k > self.dim {
                    return Err(ParseError::at(at, ParseErrorKind::IndexOutOfRange(k)));
                }
                let mut v = vec![TowerElement::zero(); self.dim];
                v[k - 1] = TowerElement::one();
                Ok(Value::Vector(v))
            }
            Tok::Sqrt => {
                self.expect(Tok::LParen)?;
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                let Value::Scalar(x) = inner else {
                    return Err(ParseError::at(at, ParseErrorKind::NotLinear));
                };
                let Some(r) = x.as_rational_function() else {
                    return Err(ParseError::at(at, ParseErrorKind::NestedRadical));
                };
                self.ctx.sqrt(r.clone()).map(Value::Scalar).map_err(|k| ParseError::at(at, k))
            }
            Tok::LParen => {
                let v = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            _ => {
                self.pos -= 1;
                self.unexpected("an operand")
            }
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(-x),
        Value::Vector(v) => Value::Vector(v.into_iter().map(|x| -x).collect()),
    }
}

fn add(a: Value, b: Value, subtract: bool, dim: usize) -> Result<Value, ParseErrorKind> {
    let b = if subtract { negate(b) } else { b };
    let promote = |x: TowerElement| if x.is_zero() { Some(vec![TowerElement::zero(); dim]) } else { None };
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
        (Value::Vector(u), Value::Vector(w)) => Ok(Value::Vector(u.iter().zip(&w).map(|(x, y)| x + y).collect())),
        (Value::Scalar(x), v @ Value::Vector(_)) | (v @ Value::Vector(_), Value::Scalar(x)) => {
            promote(x).map(|_| v).ok_or(ParseErrorKind::NotLinear)
        }
    }
}

fn mul(a: Value, b: Value) -> Result<Value, ParseErrorKind> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x * &y)),
        (Value::Scalar(x), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(x)) => {
            Ok(Value::Vector(v.iter().map(|y| &x * y).collect()))
        }
        (Value::Vector(_), Value::Vector(_)) => Err(ParseErrorKind::NotLinear),
    }
}

fn div(a: Value, b: Value) -> Result<Value, ParseErrorKind> {
    let Value::Scalar(d) = b else {
        return Err(ParseErrorKind::NotLinear);
    };
    let inv = d.inv().map_err(|_| ParseErrorKind::DivisionByZero)?;
    mul(a, Value::Scalar(inv))
}

fn parse_value(text: &str, dim: usize, ctx: &mut RadicalContext) -> Result<Value, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), dim, ctx };
    let v = p.sum()?;
    if p.pos < p.toks.len() {
        return p.unexpected("an operator or end of input");
    }
    Ok(v)
}

/// Parses a linear combination of `e_1 … e_dim`. A literal `0` is the zero
/// vector.
pub fn parse_combination(text: &str, dim: usize, ctx: &mut RadicalContext) -> Result<Vec<TowerElement>, ParseError> {
    match parse_value(text, dim, ctx)? {
        Value::Vector(v) => Ok(v),
        Value::Scalar(x) if x.is_zero() => Ok(vec![TowerElement::zero(); dim]),
        Value::Scalar(_) => Err(ParseError::at(0, ParseErrorKind::NotLinear)),
    }
}

/// Parses a scalar expression (no basis vectors).
pub fn parse_scalar(text: &str, ctx: &mut RadicalContext) -> Result<TowerElement, ParseError> {
    match parse_value(text, 0, ctx)? {
        Value::Scalar(x) => Ok(x),
        Value::Vector(_) => Err(ParseError::at(0, ParseErrorKind::NotLinear)),
    }
}

/// Canonical text with explicit `*`, e.g. `(t)*e_1 + (1/3)*e_3`.
pub fn print_combination(v: &[TowerElement]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| if c.is_one() { format!("e_{}", k + 1) } else { format!("({c})*e_{}", k + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
