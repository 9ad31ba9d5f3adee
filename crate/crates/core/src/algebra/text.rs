//! Canonical polynomial text.
//!
//! Terms appear in graded-lex ascending order joined by ` + ` or ` - `. A
//! term is `p/q*x1^a1*x2^a2`, with `/q` omitted when `q = 1`, a unit
//! coefficient omitted, `^1` omitted and zero exponents skipped. The zero
//! polynomial prints as `0`. The parser accepts this form plus any
//! reordering, repeated factors, and U+2212 as a minus sign.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::ParseError;

pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Panics if `names` is shorter than the polynomial's dimension.
pub fn format_polynomial(p: &Polynomial, names: &[String]) -> String {
    assert!(names.len() >= p.dim(), "not enough variable names");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(m, names));
        } else {
            let _ = write!(out, "{}*{}", format_rational(&abs), format_monomial(m, names));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tl, tc) = (line, column);
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            column += 1;
            out.push(Token { tok, line: tl, column: tc });
            continue;
        }
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if ch.is_whitespace() {
            chars.next();
            column += 1;
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            let v: BigInt = s.parse().expect("digits");
            out.push(Token { tok: Tok::Int(v), line: tl, column: tc });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: tl, column: tc });
        } else {
            return Err(ParseError::Syntax {
                line: tl,
                column: tc,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

/// A term as parsed: coefficient and (variable name, exponent, position) factors.
type RawTerm = (Rational, Vec<(String, u32, usize, usize)>);

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn syntax(&self, message: &str) -> ParseError {
        let (line, column) = self.here();
        ParseError::Syntax {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        if self.peek().is_none() {
            return Err(self.syntax("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let (mut c, factors) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((c, factors));
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else if self.peek().is_none() {
                return Ok(terms);
            } else {
                return Err(self.syntax("expected `+`, `-` or end of input"));
            }
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        loop {
            let Some(tok) = self.peek().cloned() else {
                return Err(self.syntax("expected a number or variable"));
            };
            self.pos += 1;
            match tok.tok {
                Tok::Int(n) => {
                    let mut value = Rational::from_integer(n);
                    if self.eat(&Tok::Slash) {
                        let den = match self.peek().map(|t| t.tok.clone()) {
                            Some(Tok::Int(d)) => d,
                            _ => {
                                return Err(ParseError::MalformedRational {
                                    line: tok.line,
                                    column: tok.column,
                                })
                            }
                        };
                        self.pos += 1;
                        if den.is_zero() {
                            return Err(ParseError::MalformedRational {
                                line: tok.line,
                                column: tok.column,
                            });
                        }
                        value /= Rational::from_integer(den);
                    }
                    coeff *= value;
                }
                Tok::Ident(name) => {
                    let mut exp = 1u32;
                    if self.eat(&Tok::Caret) {
                        match self.peek().map(|t| t.tok.clone()) {
                            Some(Tok::Int(e)) => {
                                exp = u32::try_from(e).map_err(|_| self.syntax("exponent too large"))?;
                                self.pos += 1;
                            }
                            _ => return Err(self.syntax("expected an integer exponent")),
                        }
                    }
                    factors.push((name, exp, tok.line, tok.column));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.syntax("expected a number or variable"));
                }
            }
            if !self.eat(&Tok::Star) {
                return Ok((coeff, factors));
            }
        }
    }
}

fn parse_raw(text: &str) -> Result<Vec<RawTerm>, ParseError> {
    let toks = tokenize(text)?;
    let end = {
        let line = text.matches('\n').count() + 1;
        let column = text.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
        (line, column)
    };
    let mut p = Parser { toks, pos: 0, end };
    p.expr()
}

fn assemble(raw: Vec<RawTerm>, names: &[String]) -> Result<Polynomial, ParseError> {
    let dim = names.len();
    let mut out = Polynomial::zero(dim);
    for (c, factors) in raw {
        let mut e = vec![0u32; dim];
        for (name, exp, line, column) in factors {
            let i = names
                .iter()
                .position(|n| *n == name)
                .ok_or(ParseError::UnknownVariable { name, line, column })?;
            e[i] += exp;
        }
        out.add_term(Monomial::new(e), c);
    }
    Ok(out)
}

/// Parses `text` over the given variable names, in order.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    assemble(parse_raw(text)?, names)
}

/// Parses `text`, inferring variables of the form `<prefix><index>`.
///
/// Prefixes are ordered alphabetically and each prefix gets indices
/// `1..=max` (so `x3` alone implies `x1, x2, x3`).
pub fn parse_polynomial_inferred(text: &str) -> Result<(Polynomial, Vec<String>), ParseError> {
    let raw = parse_raw(text)?;
    let names = infer_names(raw.iter().flat_map(|(_, f)| f.iter().map(|(n, _, l, c)| (n.as_str(), *l, *c))))?;
    Ok((assemble(raw, &names)?, names))
}

/// Infers a common variable list for several texts (e.g. a polynomial map).
pub fn parse_polynomials_inferred(texts: &[&str]) -> Result<(Vec<Polynomial>, Vec<String>), ParseError> {
    let raws = texts.iter().map(|t| parse_raw(t)).collect::<Result<Vec<_>, _>>()?;
    let names = infer_names(
        raws.iter()
            .flatten()
            .flat_map(|(_, f)| f.iter().map(|(n, _, l, c)| (n.as_str(), *l, *c))),
    )?;
    let polys = raws
        .into_iter()
        .map(|r| assemble(r, &names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((polys, names))
}

fn split_name(name: &str) -> Option<(&str, usize)> {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == name.len() {
        return None;
    }
    let (prefix, idx) = name.split_at(name.len() - digits);
    let idx: usize = idx.parse().ok()?;
    (idx >= 1).then_some((prefix, idx))
}

fn infer_names<'a>(vars: impl Iterator<Item = (&'a str, usize, usize)>) -> Result<Vec<String>, ParseError> {
    let mut max: BTreeMap<String, usize> = BTreeMap::new();
    for (name, line, column) in vars {
        let (prefix, idx) = split_name(name).ok_or_else(|| ParseError::UnknownVariable {
            name: name.to_string(),
            line,
            column,
        })?;
        let e = max.entry(prefix.to_string()).or_insert(0);
        *e = (*e).max(idx);
    }
    Ok(max
        .into_iter()
        .flat_map(|(prefix, n)| indexed_names(&prefix, n))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn xs(n: usize) -> Vec<String> {
        indexed_names("x", n)
    }

    #[test]
    fn canonical_output() {
        let p = &Polynomial::monomial(1, vec![2], rat(1, 2)) - &Polynomial::monomial(1, vec![3], rat(1, 6));
        assert_eq!(format_polynomial(&p, &indexed_names("y", 1)), "1/2*y1^2 - 1/6*y1^3");
        let q = &(&Polynomial::var(2, 0) + &Polynomial::monomial(2, vec![0, 2], int(-1))) + &Polynomial::constant(2, int(-3));
        assert_eq!(format_polynomial(&q, &xs(2)), "-3 + x1 - x2^2");
        assert_eq!(format_polynomial(&Polynomial::zero(3), &xs(3)), "0");
        let r = Polynomial::monomial(2, vec![1, 2], rat(-2, 3));
        assert_eq!(format_polynomial(&r, &xs(2)), "-2/3*x1*x2^2");
    }

    #[test]
    fn parse_examples() {
        let p = parse_polynomial("1/2*x1^2 + 1/6*x1^3", &xs(1)).unwrap();
        let want = &Polynomial::monomial(1, vec![2], rat(1, 2)) + &Polynomial::monomial(1, vec![3], rat(1, 6));
        assert_eq!(p, want);

        let k = parse_polynomial("x1 + x2^2", &xs(2)).unwrap();
        assert_eq!(k, &Polynomial::var(2, 0) + &Polynomial::monomial(2, vec![0, 2], int(1)));
    }

    #[test]
    fn zero_denominator_is_malformed() {
        assert_eq!(
            parse_polynomial("1/0*x1", &xs(1)).unwrap_err(),
            ParseError::MalformedRational { line: 1, column: 1 }
        );
        assert!(matches!(
            parse_polynomial("3/ * x1", &xs(1)),
            Err(ParseError::MalformedRational { .. })
        ));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("x1 +\n  x3", &xs(2)).unwrap_err(),
            ParseError::UnknownVariable {
                name: "x3".into(),
                line: 2,
                column: 3
            }
        );
        assert!(matches!(
            parse_polynomial("x1 + + x1", &xs(1)),
            Err(ParseError::Syntax { line: 1, column: 6, .. })
        ));
        assert!(matches!(parse_polynomial("x1 +", &xs(1)), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("", &xs(1)), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x1 $", &xs(1)), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn unicode_minus_and_products() {
        let p = parse_polynomial("2*x1*x1 \u{2212} x2*3", &xs(2)).unwrap();
        assert_eq!(p, parse_polynomial("2*x1^2 - 3*x2", &xs(2)).unwrap());
    }

    #[test]
    fn inferred_names() {
        let (p, names) = parse_polynomial_inferred("v1*x1 + v2*x2^2").unwrap();
        assert_eq!(names, vec!["v1", "v2", "x1", "x2"]);
        assert_eq!(p.dim(), 4);
        let (_, names) = parse_polynomial_inferred("x3").unwrap();
        assert_eq!(names, xs(3));
        assert!(matches!(
            parse_polynomial_inferred("t + x1"),
            Err(ParseError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn constant_and_zero() {
        assert_eq!(parse_polynomial("0", &xs(1)).unwrap(), Polynomial::zero(1));
        assert_eq!(parse_polynomial("-7/14", &xs(1)).unwrap(), Polynomial::constant(1, rat(-1, 2)));
    }
}
