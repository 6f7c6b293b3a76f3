//! Closed-set conditions: `A_1^4 = 0`, `A_1 A_3 <= A_5`, `A_2A_3 = 0`,
//! `dim Ann >= 2` and polynomial equations such as
//! `c(1,3,4) c(2,2,5) = c(1,3,5) c(2,2,4)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ParseError, ParseErrorKind};
use crate::arith::{GaussianRational, Rational};
use crate::certificates::{Condition, StructurePolynomial};

pub fn parse_condition(text: &str) -> Result<Condition, ParseError> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if trimmed.contains("c(") {
        return parse_polynomial_equation(text);
    }
    if let Some(rest) = trimmed.strip_prefix("dim") {
        let rest = rest.trim_start();
        let rest = rest
            .strip_prefix("Ann")
            .ok_or_else(|| syntax(lead, "expected `dim Ann >= d`"))?
            .trim_start()
            .strip_prefix(">=")
            .ok_or_else(|| syntax(lead, "expected `>=` after `dim Ann`"))?;
        let d: usize = rest.trim().parse().map_err(|_| syntax(lead, "expected an integer bound"))?;
        return Ok(Condition::AnnDimAtLeast(d));
    }
    // Flag conditions, read with all whitespace removed.
    let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut cur = FlagCursor { chars: &compact, pos: 0, end: text.len() };
    let p = cur.flag()?;
    let (q, power) = if cur.eat('^') {
        (None, Some(cur.number()?))
    } else if cur.peek() == Some('A') {
        (Some(cur.flag()?), None)
    } else {
        return Err(cur.error("expected `^k` or a second flag `A_q`"));
    };
    let containment = if cur.eat('<') {
        if !cur.eat('=') {
            return Err(cur.error("expected `<=`"));
        }
        true
    } else if cur.eat('=') {
        false
    } else {
        return Err(cur.error("expected `<=` or `=`"));
    };
    let rhs = if cur.peek() == Some('A') { Some(cur.flag()?) } else { None };
    if rhs.is_none() && cur.number()? != 0 {
        return Err(cur.error("right-hand side must be a flag `A_r` or `0`"));
    }
    if cur.pos < compact.len() {
        return Err(cur.error("unexpected trailing text"));
    }
    match (q, power, containment, rhs) {
        (Some(q), None, _, r) => {
            if !containment && r.is_some() {
                return Err(cur.error("use `<=` for containment in a flag"));
            }
            Ok(Condition::FlagContainment { p, q, r })
        }
        (None, Some(2), true, r) => Ok(Condition::FlagContainment { p, q: p, r }),
        (None, Some(k), false, None) if k >= 1 => Ok(Condition::PowerVanish { p, k }),
        _ => Err(cur.error("supported forms: `A_p^k = 0`, `A_p^2 <= A_r`, `A_p A_q <= A_r`, `A_p A_q = 0`")),
    }
}

fn syntax(pos: usize, msg: &str) -> ParseError {
    ParseError::at(pos, ParseErrorKind::Syntax(msg.into()))
}

struct FlagCursor<'a> {
    chars: &'a [(usize, char)],
    pos: usize,
    end: usize,
}

impl FlagCursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn here(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn error(&self, msg: &str) -> ParseError {
        syntax(self.here(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn flag(&mut self) -> Result<usize, ParseError> {
        if !self.eat('A') {
            return Err(self.error("expected a flag `A_p`"));
        }
        self.eat('_');
        let at = self.here();
        let p = self.number()?;
        if p == 0 {
            return Err(ParseError::at(at, ParseErrorKind::IndexOutOfRange(0)));
        }
        Ok(p)
    }
}

fn parse_polynomial_equation(text: &str) -> Result<Condition, ParseError> {
    let Some(eq) = text.find('=') else {
        return Err(syntax(text.len(), "expected `=` in a polynomial equation"));
    };
    let lhs = parse_polynomial(&text[..eq], 0)?;
    let rhs = parse_polynomial(&text[eq + 1..], eq + 1)?;
    Ok(Condition::PolynomialEq(lhs.sub(&rhs)))
}

#[derive(Clone, Debug, PartialEq)]
enum PTok {
    Int(BigInt),
    I,
    Var([usize; 3]),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex_polynomial(text: &str, offset: usize) -> Result<Vec<(PTok, usize)>, ParseError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < b.len() {
        let start = pos;
        let tok = match b[pos] {
            b' ' | b'\t' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                while pos < b.len() && b[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((PTok::Int(text[start..pos].parse().expect("digits")), offset + start));
                continue;
            }
            b'c' => {
                let close = text[pos..]
                    .find(')')
                    .ok_or_else(|| syntax(offset + pos, "unterminated `c(i,j,k)`"))?;
                let inner = text[pos + 1..pos + close].trim();
                let inner = inner
                    .strip_prefix('(')
                    .ok_or_else(|| syntax(offset + pos, "expected `c(i,j,k)`"))?;
                let idx: Vec<usize> = inner
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| syntax(offset + pos, "indices of `c(i,j,k)` must be integers"))?;
                if idx.len() != 3 {
                    return Err(syntax(offset + pos, "`c` takes three indices"));
                }
                if let Some(&bad) = idx.iter().find(|&&k| k == 0) {
                    return Err(ParseError::at(offset + pos, ParseErrorKind::IndexOutOfRange(bad)));
                }
                pos += close + 1;
                out.push((PTok::Var([idx[0], idx[1], idx[2]]), offset + start));
                continue;
            }
            b'i' => PTok::I,
            b'+' => PTok::Plus,
            b'-' => PTok::Minus,
            b'*' => PTok::Star,
            b'/' => PTok::Slash,
            b'^' => PTok::Caret,
            b'(' => PTok::LParen,
            b')' => PTok::RParen,
            _ => {
                let ch = text[pos..].chars().next().expect("in bounds");
                return Err(ParseError::at(offset + pos, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        out.push((tok, offset + start));
        pos += 1;
    }
    Ok(out)
}

struct PolyParser {
    toks: Vec<(PTok, usize)>,
    pos: usize,
    end: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<&PTok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn sum(&mut self) -> Result<StructurePolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(PTok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(PTok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<StructurePolynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(PTok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(PTok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = constant_of(&d).ok_or_else(|| syntax(at, "division only by nonzero constants"))?;
                    let inv = c.inv().ok_or_else(|| ParseError::at(at, ParseErrorKind::DivisionByZero))?;
                    acc = acc.mul(&StructurePolynomial::constant(inv));
                }
                Some(PTok::Int(_) | PTok::I | PTok::Var(_) | PTok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<StructurePolynomial, ParseError> {
        if self.peek() == Some(&PTok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<StructurePolynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&PTok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        match self.peek().cloned() {
            Some(PTok::Int(n)) => {
                self.pos += 1;
                let e = n.to_u32().ok_or_else(|| ParseError::at(at, ParseErrorKind::BadExponent))?;
                Ok(base.pow(e))
            }
            _ => Err(ParseError::at(at, ParseErrorKind::BadExponent)),
        }
    }

    fn atom(&mut self) -> Result<StructurePolynomial, ParseError> {
        let at = self.here();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(PTok::Int(n)) => Ok(StructurePolynomial::constant(GaussianRational::from_rational(Rational::from_integer(n)))),
            Some(PTok::I) => Ok(StructurePolynomial::constant(GaussianRational::i())),
            Some(PTok::Var([i, j, k])) => Ok(StructurePolynomial::variable(i, j, k)),
            Some(PTok::LParen) => {
                let v = self.sum()?;
                if self.peek() != Some(&PTok::RParen) {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(syntax(at, "expected an operand")),
        }
    }
}

fn constant_of(p: &StructurePolynomial) -> Option<GaussianRational> {
    let terms: Vec<_> = p.terms().collect();
    match terms.as_slice() {
        [(m, c)] if m.is_empty() => Some((*c).clone()),
        _ => None,
    }
}

fn parse_polynomial(text: &str, offset: usize) -> Result<StructurePolynomial, ParseError> {
    let toks = lex_polynomial(text, offset)?;
    let mut p = PolyParser { toks, pos: 0, end: offset + text.len() };
    let v = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.here(), "expected an operator or `=`"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_forms() {
        assert_eq!(parse_condition("A_1^4 = 0").unwrap(), Condition::PowerVanish { p: 1, k: 4 });
        assert_eq!(parse_condition("A_1A_3 <= A_5").unwrap(), Condition::FlagContainment { p: 1, q: 3, r: Some(5) });
        assert_eq!(parse_condition("A_2 A_3 = 0").unwrap(), Condition::FlagContainment { p: 2, q: 3, r: None });
        assert_eq!(parse_condition("A_1^2 <= A_4").unwrap(), Condition::FlagContainment { p: 1, q: 1, r: Some(4) });
        assert_eq!(parse_condition("dim Ann >= 2").unwrap(), Condition::AnnDimAtLeast(2));
        assert!(parse_condition("A_1 A_3 = A_5").is_err());
        assert!(parse_condition("A_0^2 = 0").is_err());
        assert!(parse_condition("B_1").is_err());
    }

    #[test]
    fn polynomial_equation() {
        let c = parse_condition("c(1,3,4) c(2,2,5) = c(1,3,5)*c(2,2,4)").unwrap();
        let Condition::PolynomialEq(p) = &c else { panic!() };
        let expected = StructurePolynomial::variable(1, 3, 4)
            .mul(&StructurePolynomial::variable(2, 2, 5))
            .sub(&StructurePolynomial::variable(1, 3, 5).mul(&StructurePolynomial::variable(2, 2, 4)));
        assert_eq!(p, &expected);
        let printed = c.to_string();
        assert_eq!(parse_condition(&printed).unwrap(), c);
        let half = parse_condition("(1/2 - i) c(1,1,2)^2 = 0").unwrap();
        assert_eq!(parse_condition(&half.to_string()).unwrap(), half);
        assert!(parse_condition("c(1,2) = 0").is_err());
    }

    #[test]
    fn printed_forms_round_trip() {
        for text in ["A_1^4 = 0", "A_3^2 = 0", "A_1 A_3 <= A_5", "A_2 A_3 = 0", "A_1^2 <= A_4", "dim Ann >= 2", "A_1 A_1 = 0"] {
            let c = parse_condition(text).unwrap();
            assert_eq!(parse_condition(&c.to_string()).unwrap(), c, "{text}");
        }
    }
}
