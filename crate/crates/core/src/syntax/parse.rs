//! Recursive-descent parser for Weyl and polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := int ('/' int)? | ident | '(' expr ')'
//! ident  := ('y' | 'x') nat
//! ```
//!
//! Whitespace is ignored. `*` keeps the written order, which matters for
//! `y` generators; integer literals commute with everything.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{ArithError, Ring, Scalar};
use crate::poly::Polynomial;
use crate::weyl::{WeylElement, WeylSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Noncommuting Weyl generator `y_i`.
    Weyl,
    /// Commuting polynomial variable `x_i`.
    Commutative,
}

impl GeneratorKind {
    fn letter(self) -> char {
        match self {
            GeneratorKind::Weyl => 'y',
            GeneratorKind::Commutative => 'x',
        }
    }
}

/// Abstract syntax of an expression. Generator indices are 1-based as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ratio(BigInt, BigInt, usize),
    Generator {
        kind: GeneratorKind,
        index: usize,
        offset: usize,
    },
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    /// Factors and the offset of the `*`.
    Product(Box<Expr>, Box<Expr>, usize),
    /// Base, exponent and the offset of the exponent.
    Power(Box<Expr>, u32, usize),
}

/// Largest degree an expression may reach, and largest exponent literal.
pub const MAX_DEGREE: u32 = 65_535;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{0}`")]
    UnexpectedToken(String),
    #[error("expected a natural number")]
    ExpectedNatural,
    #[error("negative exponents are not allowed")]
    NegativeExponent,
    #[error("exponent too large (at most {MAX_DEGREE})")]
    ExponentTooLarge,
    #[error("degree {0} exceeds the limit of {MAX_DEGREE}")]
    DegreeTooLarge(u64),
    #[error("`{letter}` generator index must be a number after the letter")]
    MissingIndex { letter: char },
    #[error("generator {letter}{index} out of range (valid: {letter}1..{letter}{max})")]
    IndexOutOfRange { letter: char, index: usize, max: usize },
    #[error("`{found}` generators are not allowed here, expected `{expected}`")]
    WrongGenerator { found: char, expected: char },
    #[error("invalid coefficient: {0}")]
    Coefficient(ArithError),
}

/// A syntax or semantic error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(char, usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "{v}"),
            Tok::Ident(c, i) => write!(f, "{c}{i}"),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Caret => f.write_str("^"),
            Tok::Slash => f.write_str("/"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |start: usize| {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let end = digits_end(i);
                let v: BigInt = text[i..end].parse().expect("ascii digits");
                i = end;
                Tok::Int(v)
            }
            b'x' | b'y' => {
                let end = digits_end(i + 1);
                if end == i + 1 {
                    return Err(ParseError::new(start, ParseErrorKind::MissingIndex { letter: c as char }));
                }
                let index = text[i + 1..end]
                    .parse::<usize>()
                    .map_err(|_| ParseError::new(start, ParseErrorKind::ExponentTooLarge))?;
                i = end;
                Tok::Ident(c as char, index)
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(start, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((o, t)) => ParseError::new(*o, ParseErrorKind::UnexpectedToken(t.to_string())),
            None => ParseError::new(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Difference(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            let at = self.offset();
            self.bump();
            lhs = Expr::Product(Box::new(lhs), Box::new(self.factor()?), at);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some((_, Tok::Int(v))) => {
                let e = u32::try_from(v)
                    .ok()
                    .filter(|&e| e <= MAX_DEGREE)
                    .ok_or(ParseError::new(at, ParseErrorKind::ExponentTooLarge))?;
                Ok(Expr::Power(Box::new(base), e, at))
            }
            Some((_, Tok::Minus)) => Err(ParseError::new(at, ParseErrorKind::NegativeExponent)),
            Some(_) => Err(ParseError::new(at, ParseErrorKind::ExpectedNatural)),
            None => Err(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.bump();
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(Expr::Int(v));
                }
                self.bump();
                match self.bump() {
                    Some((_, Tok::Int(d))) => Ok(Expr::Ratio(v, d, at)),
                    Some((o, _)) => Err(ParseError::new(o, ParseErrorKind::ExpectedNatural)),
                    None => Err(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd)),
                }
            }
            Some(Tok::Ident(letter, index)) => {
                self.bump();
                let kind = if letter == 'y' {
                    GeneratorKind::Weyl
                } else {
                    GeneratorKind::Commutative
                };
                Ok(Expr::Generator {
                    kind,
                    index,
                    offset: at,
                })
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses text into an [`Expr`] without interpreting it.
pub fn parse_ast(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// What an expression is evaluated into.
trait Target: Sized + Clone {
    const KIND: GeneratorKind;
    fn count(&self) -> usize;
    fn degree(&self) -> u64;
    fn constant(&self, c: Scalar) -> Self;
    fn generator(&self, i: usize) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u32) -> Self;
}

impl Target for WeylElement {
    const KIND: GeneratorKind = GeneratorKind::Weyl;
    fn count(&self) -> usize {
        self.signature().generators()
    }
    fn degree(&self) -> u64 {
        self.bernstein_degree().map_or(0, u64::from)
    }
    fn constant(&self, c: Scalar) -> Self {
        WeylElement::constant(self.signature(), c)
    }
    fn generator(&self, i: usize) -> Self {
        WeylElement::generator(self.signature(), self.ring(), i)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        WeylElement::pow(self, u64::from(e))
    }
}

impl Target for Polynomial {
    const KIND: GeneratorKind = GeneratorKind::Commutative;
    fn count(&self) -> usize {
        self.nvars()
    }
    fn degree(&self) -> u64 {
        self.total_degree().map_or(0, u64::from)
    }
    fn constant(&self, c: Scalar) -> Self {
        Polynomial::constant(self.nvars(), c)
    }
    fn generator(&self, i: usize) -> Self {
        Polynomial::var(self.nvars(), self.ring(), i)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        Polynomial::pow(self, e)
    }
}

fn within_limit(degree: u64, at: usize) -> Result<(), ParseError> {
    if degree > u64::from(MAX_DEGREE) {
        return Err(ParseError::new(at, ParseErrorKind::DegreeTooLarge(degree)));
    }
    Ok(())
}

fn eval<T: Target>(e: &Expr, zero: &T, ring: Ring) -> Result<T, ParseError> {
    Ok(match e {
        Expr::Int(v) => zero.constant(Scalar::from_bigint(ring, v)),
        Expr::Ratio(num, den, at) => zero.constant(
            Scalar::from_ratio(ring, num, den)
                .map_err(|err| ParseError::new(*at, ParseErrorKind::Coefficient(err)))?,
        ),
        Expr::Generator { kind, index, offset } => {
            if *kind != T::KIND {
                return Err(ParseError::new(
                    *offset,
                    ParseErrorKind::WrongGenerator {
                        found: kind.letter(),
                        expected: T::KIND.letter(),
                    },
                ));
            }
            if *index == 0 || *index > zero.count() {
                return Err(ParseError::new(
                    *offset,
                    ParseErrorKind::IndexOutOfRange {
                        letter: kind.letter(),
                        index: *index,
                        max: zero.count(),
                    },
                ));
            }
            zero.generator(index - 1)
        }
        Expr::Neg(a) => eval(a, zero, ring)?.neg(),
        Expr::Sum(a, b) => eval(a, zero, ring)?.add(&eval(b, zero, ring)?),
        Expr::Difference(a, b) => eval(a, zero, ring)?.sub(&eval(b, zero, ring)?),
        Expr::Product(a, b, at) => {
            let (a, b) = (eval(a, zero, ring)?, eval(b, zero, ring)?);
            within_limit(a.degree() + b.degree(), *at)?;
            a.mul(&b)
        }
        Expr::Power(a, k, at) => {
            let a = eval(a, zero, ring)?;
            within_limit(a.degree() * u64::from(*k), *at)?;
            a.pow(*k)
        }
    })
}

/// Parses a Weyl expression over `ring`, normal-ordering as it goes.
pub fn parse_weyl(text: &str, sig: WeylSignature, ring: Ring) -> Result<WeylElement, ParseError> {
    eval(&parse_ast(text)?, &WeylElement::zero(sig, ring), ring)
}

/// Parses a commutative polynomial in `nvars` variables over `ring`.
pub fn parse_poly(text: &str, nvars: usize, ring: Ring) -> Result<Polynomial, ParseError> {
    eval(&parse_ast(text)?, &Polynomial::zero(nvars, ring), ring)
}

/// Which algebra [`parse_expr`] should build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    /// `A_n` with generators `y1 … y{2n}`.
    Weyl(usize),
    /// Polynomials in `x1 … xN`.
    Poly(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Weyl(WeylElement),
    Poly(Polynomial),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Weyl(a) => a.fmt(f),
            Parsed::Poly(a) => a.fmt(f),
        }
    }
}

pub fn parse_expr(text: &str, mode: ParseMode, ring: Ring) -> Result<Parsed, ParseError> {
    match mode {
        ParseMode::Weyl(n) => parse_weyl(text, WeylSignature::new(n), ring).map(Parsed::Weyl),
        ParseMode::Poly(nvars) => parse_poly(text, nvars, ring).map(Parsed::Poly),
    }
}
