//! Text syntax for rings and homogeneous forms.
//!
//! Rings: `QQ[x,y,z]` or `GF(p)[x1,x2,x3]`. Polynomials: terms joined by
//! `+`/`-`, `^` for powers, `*` between factors (a numeric literal may also
//! be juxtaposed, as in `127y1^7` or `2(x+y)`), parentheses, and `p/q`
//! rational literals. Printing a form with `Display` produces text this
//! parser accepts, and parse-print-parse is the identity on canonical text.

use super::{HomogeneousForm, Monomial, RingCtx};
use crate::field::{FieldError, FieldSpec, Scalar};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    NonPrimeModulus(u64),
    NotHomogeneous { degrees: Vec<usize> },
}

/// A parse failure with the byte position it was detected at.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn syntax(position: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            position,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => {
                write!(f, "parse error at position {}: {}", self.position, msg)
            }
            ParseErrorKind::UnknownVariable(name) => write!(
                f,
                "parse error at position {}: unknown variable {:?}",
                self.position, name
            ),
            ParseErrorKind::NonPrimeModulus(p) => {
                write!(f, "parse error at position {}: modulus {} is not prime", self.position, p)
            }
            ParseErrorKind::NotHomogeneous { degrees } => write!(
                f,
                "polynomial is not homogeneous: terms of degrees {:?}",
                degrees
            ),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(String),
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Tok::Number(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(ParseError::syntax(i, format!("unexpected character {:?}", other)))
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: text.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let here = self.here();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(ParseError::syntax(here, format!("expected {}", what))),
        }
    }
}

/// Parses `QQ[x,y,z]` or `GF(p)[x1,x2,x3]` into a ring context.
pub fn parse_ring(text: &str) -> Result<RingCtx, ParseError> {
    let mut lx = lex(text)?;
    let here = lx.here();
    let field = match lx.next() {
        Some(Tok::Ident(name)) if name == "QQ" => FieldSpec::Rationals,
        Some(Tok::Ident(name)) if name == "GF" => {
            lx.expect(Tok::LParen, "'('")?;
            let phere = lx.here();
            let p = match lx.next() {
                Some(Tok::Number(n)) => u64::try_from(n)
                    .map_err(|_| ParseError::syntax(phere, "modulus too large"))?,
                _ => return Err(ParseError::syntax(phere, "expected a prime modulus")),
            };
            lx.expect(Tok::RParen, "')'")?;
            match FieldSpec::prime_field(p) {
                Ok(f) => f,
                Err(FieldError::NonPrimeModulus(p)) => {
                    return Err(ParseError {
                        position: phere,
                        kind: ParseErrorKind::NonPrimeModulus(p),
                    })
                }
                Err(_) => unreachable!(),
            }
        }
        _ => return Err(ParseError::syntax(here, "expected field QQ or GF(p)")),
    };
    lx.expect(Tok::LBracket, "'['")?;
    let mut vars = Vec::new();
    loop {
        let here = lx.here();
        match lx.next() {
            Some(Tok::Ident(name)) => vars.push(name),
            _ => return Err(ParseError::syntax(here, "expected a variable name")),
        }
        match lx.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RBracket) => break,
            _ => return Err(ParseError::syntax(lx.here(), "expected ',' or ']'")),
        }
    }
    if lx.peek().is_some() {
        return Err(ParseError::syntax(lx.here(), "trailing input after ring"));
    }
    RingCtx::new(field, vars)
        .map_err(|e| ParseError::syntax(0, format!("{}", e)))
}

/// A not-necessarily-homogeneous polynomial used only while parsing.
#[derive(Clone)]
struct RawPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl RawPoly {
    fn zero() -> RawPoly {
        RawPoly {
            terms: BTreeMap::new(),
        }
    }

    fn constant(n: usize, c: Scalar) -> RawPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(n), c);
        }
        RawPoly { terms }
    }

    fn variable(n: usize, i: usize, field: FieldSpec) -> RawPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(n, i), field.one());
        RawPoly { terms }
    }

    fn add(&self, other: &RawPoly) -> Result<RawPoly, FieldError> {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(c)?;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Ok(RawPoly { terms })
    }

    fn neg(&self) -> RawPoly {
        RawPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    fn mul(&self, other: &RawPoly) -> Result<RawPoly, FieldError> {
        let mut out = RawPoly::zero();
        for (m1, c1) in &self.terms {
            let mut piece = BTreeMap::new();
            for (m2, c2) in &other.terms {
                let c = c1.mul(c2)?;
                if !c.is_zero() {
                    piece.insert(m1.mul(m2), c);
                }
            }
            out = out.add(&RawPoly { terms: piece })?;
        }
        Ok(out)
    }

    fn pow(&self, k: u32, n: usize, field: FieldSpec) -> Result<RawPoly, FieldError> {
        let mut acc = RawPoly::constant(n, field.one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

struct PolyParser<'a> {
    lx: Lexer,
    ctx: &'a RingCtx,
}

impl<'a> PolyParser<'a> {
    fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    fn n(&self) -> usize {
        self.ctx.num_vars()
    }

    fn expr(&mut self) -> Result<RawPoly, ParseError> {
        let mut negate = false;
        match self.lx.peek() {
            Some(Tok::Minus) => {
                self.lx.next();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.lx.next();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lx.peek() {
                Some(Tok::Plus) => {
                    self.lx.next();
                    let t = self.term()?;
                    acc = acc.add(&t).map_err(|e| self.field_err(e))?;
                }
                Some(Tok::Minus) => {
                    self.lx.next();
                    let t = self.term()?;
                    acc = acc.add(&t.neg()).map_err(|e| self.field_err(e))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Star) => {
                    self.lx.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f).map_err(|e| self.field_err(e))?;
                }
                // Juxtaposition: `127y1`, `2(x+y)`.
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f).map_err(|e| self.field_err(e))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.lx.peek() {
            self.lx.next();
            let here = self.lx.here();
            match self.lx.next() {
                Some(Tok::Number(k)) => {
                    let k: u32 = u32::try_from(k)
                        .map_err(|_| ParseError::syntax(here, "exponent too large"))?;
                    base.pow(k, self.n(), self.field())
                        .map_err(|e| self.field_err(e))
                }
                _ => Err(ParseError::syntax(here, "expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RawPoly, ParseError> {
        let here = self.lx.here();
        match self.lx.next() {
            Some(Tok::Number(num)) => {
                // Optional rational literal p/q.
                if let Some(Tok::Slash) = self.lx.peek() {
                    self.lx.next();
                    let dhere = self.lx.here();
                    match self.lx.next() {
                        Some(Tok::Number(den)) => {
                            let c = Scalar::from_bigint(self.field(), num);
                            let d = Scalar::from_bigint(self.field(), den);
                            let q = c.div(&d).map_err(|e| ParseError::syntax(dhere, e.to_string()))?;
                            Ok(RawPoly::constant(self.n(), q))
                        }
                        _ => Err(ParseError::syntax(dhere, "expected a denominator")),
                    }
                } else {
                    Ok(RawPoly::constant(
                        self.n(),
                        Scalar::from_bigint(self.field(), num),
                    ))
                }
            }
            Some(Tok::Ident(name)) => match self.ctx.var_index(&name) {
                Some(i) => Ok(RawPoly::variable(self.n(), i, self.field())),
                None => Err(ParseError {
                    position: here,
                    kind: ParseErrorKind::UnknownVariable(name),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.lx.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(ParseError::syntax(here, "expected a term")),
        }
    }

    fn field_err(&self, e: FieldError) -> ParseError {
        ParseError::syntax(self.lx.here(), e.to_string())
    }
}

/// Parses polynomial text in the given ring, rejecting inhomogeneous input.
pub fn parse_form(ctx: &RingCtx, text: &str) -> Result<HomogeneousForm, ParseError> {
    let lx = lex(text)?;
    let mut parser = PolyParser { lx, ctx };
    let raw = parser.expr()?;
    if parser.lx.peek().is_some() {
        return Err(ParseError::syntax(
            parser.lx.here(),
            "trailing input after polynomial",
        ));
    }
    let mut degrees: Vec<usize> = raw.terms.keys().map(|m| m.degree()).collect();
    degrees.dedup();
    if degrees.len() > 1 {
        return Err(ParseError {
            position: 0,
            kind: ParseErrorKind::NotHomogeneous { degrees },
        });
    }
    let degree = degrees.first().copied().unwrap_or(0);
    HomogeneousForm::from_terms(ctx, degree, raw.terms)
        .map_err(|e| ParseError::syntax(0, e.to_string()))
}

/// Parses a comma-separated list of forms.
pub fn parse_forms(ctx: &RingCtx, text: &str) -> Result<Vec<HomogeneousForm>, ParseError> {
    split_top_level(text)
        .into_iter()
        .map(|part| parse_form(ctx, part.trim()))
        .collect()
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq3() -> RingCtx {
        parse_ring("QQ[x1,x2,x3]").unwrap()
    }

    #[test]
    fn ring_examples() {
        let r = parse_ring("QQ[x,y,z]").unwrap();
        assert_eq!(r.num_vars(), 3);
        assert_eq!(r.field(), FieldSpec::Rationals);
        let g = parse_ring("GF(2)[x1,x2,x3]").unwrap();
        assert_eq!(g.field().characteristic(), 2);
        let e = parse_ring("GF(4)[x]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonPrimeModulus(4));
        assert!(parse_ring("QQ[x,x]").is_err());
        assert!(parse_ring("ZZ[x]").is_err());
    }

    #[test]
    fn poly_examples() {
        let ctx = qq3();
        let f = parse_form(&ctx, "x1^2*x2^2 + x1^2*x3^2").unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 2);
        let e = parse_form(&ctx, "x1 + x1^2").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NotHomogeneous { .. }));
    }

    #[test]
    fn gf2_sign_collapse() {
        let ctx = parse_ring("GF(2)[x,y]").unwrap();
        let f = parse_form(&ctx, "-x*y").unwrap();
        let g = parse_form(&ctx, "x*y").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn juxtaposed_coefficients_and_parens() {
        let ctx = parse_ring("QQ[y1,y2,y3]").unwrap();
        let f = parse_form(&ctx, "(127y1-548y2-943y3)^2").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.coeff(&Monomial::from_exponents(vec![2, 0, 0])), Scalar::rational(127 * 127, 1));
        let g = parse_form(&ctx, "y1^2(y2^2+y3^2)").unwrap();
        let h = parse_form(&ctx, "y1^2*y2^2 + y1^2*y3^2").unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn rational_literals() {
        let ctx = qq3();
        let f = parse_form(&ctx, "1/2*x1 - 3/4*x2").unwrap();
        assert_eq!(f.coeff(&Monomial::var(3, 0)), Scalar::rational(1, 2));
        assert_eq!(f.coeff(&Monomial::var(3, 1)), Scalar::rational(-3, 4));
    }

    #[test]
    fn error_positions() {
        let ctx = qq3();
        let e = parse_form(&ctx, "x1 + $").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse_form(&ctx, "x1 * w2").unwrap_err();
        assert_eq!(e.position, 5);
        assert!(matches!(e.kind, ParseErrorKind::UnknownVariable(_)));
    }

    #[test]
    fn print_parse_roundtrip() {
        let ctx = qq3();
        for text in [
            "x1^2*x2^2 + x1^2*x3^2",
            "-x1^3 + 2*x1*x2*x3 - 5/6*x3^3",
            "0",
            "7",
            "x1 - x2",
        ] {
            let f = parse_form(&ctx, text).unwrap();
            let printed = f.to_string();
            let again = parse_form(&ctx, &printed).unwrap();
            assert_eq!(f, again, "text {:?} printed {:?}", text, printed);
        }
    }

    #[test]
    fn split_respects_parens() {
        let parts = split_top_level("x, (a,b), y");
        assert_eq!(parts, vec!["x", " (a,b)", " y"]);
    }
}
