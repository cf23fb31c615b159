//! Text grammar for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' ['-' | '+'] INTEGER)?
//! atom   := INTEGER | 'i' | 's'k | 'r'k | 'conj' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Rational literals are written `p/q`; division is allowed by any unit `c * s^e`.
//! Whitespace is ignored. [`AlgebraElement`]'s `Display` prints in this grammar.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{AlgebraElement, GaussRational, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownSymbol(String),
    VariableOutOfRange { index: usize, n: usize },
    NonIntegerExponent,
    NonInvertibleDivisor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            Self::UnexpectedToken(t) => write!(f, "unexpected token {t:?}"),
            Self::UnexpectedEnd => write!(f, "unexpected end of input"),
            Self::UnknownSymbol(s) => write!(f, "unknown symbol {s:?}"),
            Self::VariableOutOfRange { index, n } => {
                write!(f, "variable index {index} exceeds variable count {n}")
            }
            Self::NonIntegerExponent => write!(f, "exponent must be an integer literal"),
            Self::NonInvertibleDivisor(d) => write!(f, "cannot divide by {d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    I,
    S(usize),
    R(usize),
    Conj,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::I => write!(f, "i"),
            Tok::S(k) => write!(f, "s{k}"),
            Tok::R(k) => write!(f, "r{k}"),
            Tok::Conj => write!(f, "conj"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let start = pos;
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            out.push((start, Tok::Int(digits.parse().expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let word: String = chars[start..pos].iter().collect();
            out.push((start, classify_word(&word, start)?));
            continue;
        }
        return Err(ParseError { position: start, kind: ParseErrorKind::UnexpectedChar(c) });
    }
    Ok(out)
}

fn classify_word(word: &str, position: usize) -> Result<Tok, ParseError> {
    match word {
        "i" => return Ok(Tok::I),
        "conj" => return Ok(Tok::Conj),
        _ => {}
    }
    let unknown = || ParseError { position, kind: ParseErrorKind::UnknownSymbol(word.to_string()) };
    let (head, digits) = word.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return Err(unknown());
    }
    let index: usize = digits.parse().map_err(|_| unknown())?;
    if index > MAX_VARS {
        return Err(ParseError {
            position,
            kind: ParseErrorKind::VariableOutOfRange { index, n: MAX_VARS },
        });
    }
    match head {
        "s" => Ok(Tok::S(index)),
        "r" => Ok(Tok::R(index)),
        _ => Err(unknown()),
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.position(), kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.position();
                    let divisor = self.unary()?;
                    let inv = divisor.inverse().map_err(|_| ParseError {
                        position: at,
                        kind: ParseErrorKind::NonInvertibleDivisor(divisor.to_string()),
                    })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraElement, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<AlgebraElement, ParseError> {
        let base_at = self.position();
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let k: i64 = match self.peek() {
            Some(Tok::Int(v)) => {
                let v = i64::try_from(v.clone()).map_err(|_| self.err(ParseErrorKind::NonIntegerExponent))?;
                self.pos += 1;
                v
            }
            None => return Err(self.err(ParseErrorKind::UnexpectedEnd)),
            Some(_) => return Err(self.err(ParseErrorKind::NonIntegerExponent)),
        };
        let k = if negative { -k } else { k };
        base.pow(k).map_err(|_| ParseError {
            position: base_at,
            kind: ParseErrorKind::NonInvertibleDivisor(base.to_string()),
        })
    }

    fn atom(&mut self) -> Result<AlgebraElement, ParseError> {
        let n = self.n;
        let at = self.position();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        self.pos += 1;
        let var = |k: usize| -> Result<usize, ParseError> {
            if k > n {
                Err(ParseError { position: at, kind: ParseErrorKind::VariableOutOfRange { index: k, n } })
            } else {
                Ok(k - 1)
            }
        };
        match tok {
            Tok::Int(v) => Ok(AlgebraElement::constant(n, GaussRational::real(BigRational::from_integer(v)))),
            Tok::I => Ok(AlgebraElement::imag_unit(n)),
            Tok::S(k) => Ok(AlgebraElement::s(n, var(k)?)),
            Tok::R(k) => Ok(AlgebraElement::r(n, var(k)?)),
            Tok::Conj => {
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner.star())
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected())
            }
        }
    }
}

/// Parses `text`, taking the variable count from the largest index mentioned (at least 1).
pub fn parse_expr(text: &str) -> Result<AlgebraElement, ParseError> {
    let toks = tokenize(text)?;
    let n = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::S(k) | Tok::R(k) => Some(*k),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    run(toks, text, n)
}

/// Parses `text` as an element in exactly `n` variables.
pub fn parse_expr_in(text: &str, n: usize) -> Result<AlgebraElement, ParseError> {
    run(tokenize(text)?, text, n)
}

fn run(toks: Vec<(usize, Tok)>, text: &str, n: usize) -> Result<AlgebraElement, ParseError> {
    let mut p = Parser { toks, pos: 0, end: text.chars().count(), n };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator() {
        let e = parse_expr("2 - s1 - s1^-1").unwrap();
        assert_eq!(e, AlgebraElement::two_minus_s_sinv(1, 0));
    }

    #[test]
    fn root_reduces() {
        assert_eq!(parse_expr("r1*r1").unwrap(), AlgebraElement::two_minus_s_sinv(1, 0));
    }

    #[test]
    fn alpha_of_isely_pair() {
        let e = parse_expr("(1/8)*(1 - (1/2)*(s1 + s1^-1))").unwrap();
        let want = (&AlgebraElement::one(1) - &AlgebraElement::cos(1, 0)).scale(&GaussRational::ratio(1, 8));
        assert_eq!(e, want);
    }

    #[test]
    fn conj_and_i() {
        let e = parse_expr("conj(i*s1)").unwrap();
        assert_eq!(e, parse_expr("-i*s1^-1").unwrap());
        assert_eq!(parse_expr("conj(r2)").unwrap(), AlgebraElement::r(2, 1));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse_expr(" s1 ^ - 2 * 3/4 ").unwrap(), parse_expr("3/4*s1^-2").unwrap());
    }

    #[test]
    fn errors() {
        let e = parse_expr("s1 + x").unwrap_err();
        assert_eq!(e.position, 5);
        assert!(matches!(e.kind, ParseErrorKind::UnknownSymbol(_)));
        assert!(matches!(parse_expr("s1^(1/2)").unwrap_err().kind, ParseErrorKind::NonIntegerExponent));
        assert!(matches!(parse_expr("s1^r1").unwrap_err().kind, ParseErrorKind::NonIntegerExponent));
        assert!(matches!(parse_expr("(s1 + 1").unwrap_err().kind, ParseErrorKind::UnexpectedEnd));
        assert!(matches!(parse_expr("1.5").unwrap_err().kind, ParseErrorKind::UnexpectedChar('.')));
        assert!(matches!(parse_expr("1/r1").unwrap_err().kind, ParseErrorKind::NonInvertibleDivisor(_)));
        assert!(matches!(parse_expr("1/0").unwrap_err().kind, ParseErrorKind::NonInvertibleDivisor(_)));
        assert!(matches!(
            parse_expr_in("s3", 2).unwrap_err().kind,
            ParseErrorKind::VariableOutOfRange { index: 3, n: 2 }
        ));
        assert!(matches!(parse_expr("s0").unwrap_err().kind, ParseErrorKind::UnknownSymbol(_)));
        assert!(matches!(parse_expr("s1 s1").unwrap_err().kind, ParseErrorKind::UnexpectedToken(_)));
    }

    #[test]
    fn display_round_trip_examples() {
        for text in ["0", "r1*s2 - 3/4*i", "(1/2 - 7*i)*s1^-3*r1 + r2", "-i*s1", "conj((2+i)*s1*r1)"] {
            let e = parse_expr(text).unwrap();
            let back = parse_expr_in(&e.to_string(), e.n()).unwrap();
            assert_eq!(back, e, "{text} -> {e}");
        }
    }
}
