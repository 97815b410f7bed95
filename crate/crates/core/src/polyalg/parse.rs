//! Text syntax for polynomials: integers, identifiers, `+ - * ^` and
//! parentheses. `^` binds tighter than `*`, which binds tighter than `+`/`-`;
//! exponents are non-negative integer literals.

use std::fmt;

use num_bigint::BigInt;

use super::Poly;
use crate::scalar::Field;

const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    /// 1-based character column of the offending token.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for PolyParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, PolyParseError> {
    Err(PolyParseError {
        column,
        message: message.into(),
    })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => return err(col, format!("unexpected character '{other}'")),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    names: &'a [String],
    field: Field,
    depth: usize,
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_POWER: u8 = 3;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self, min_prec: u8) -> Result<Poly, PolyParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return err(self.col(), "expression nested too deeply");
        }
        let mut lhs = self.unary()?;
        loop {
            let (prec, tok) = match self.peek() {
                Some(Tok::Plus) => (PREC_SUM, Tok::Plus),
                Some(Tok::Minus) => (PREC_SUM, Tok::Minus),
                Some(Tok::Star) => (PREC_PRODUCT, Tok::Star),
                Some(Tok::Caret) => (PREC_POWER, Tok::Caret),
                _ => break,
            };
            if prec < min_prec {
                break;
            }
            self.pos += 1;
            lhs = match tok {
                Tok::Caret => {
                    let col = self.col();
                    let e = match self.peek() {
                        Some(Tok::Int(n)) => n.clone(),
                        _ => return err(col, "exponent must be a non-negative integer literal"),
                    };
                    self.pos += 1;
                    let e: u32 = match u32::try_from(&e) {
                        Ok(e) if e <= MAX_EXPONENT => e,
                        _ => return err(col, format!("exponent larger than {MAX_EXPONENT}")),
                    };
                    if let Some(Tok::Caret) = self.peek() {
                        return err(self.col(), "chained exponents need parentheses");
                    }
                    lhs.pow(e)
                }
                Tok::Plus => &lhs + &self.expr(prec + 1)?,
                Tok::Minus => &lhs - &self.expr(prec + 1)?,
                Tok::Star => &lhs * &self.expr(prec + 1)?,
                _ => unreachable!(),
            };
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.expr(PREC_POWER)?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.expr(PREC_POWER)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        let col = self.col();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return err(col, "unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Poly::constant(
                self.field,
                self.nvars(),
                self.field.from_bigint(&n),
            )),
            Tok::Ident(name) => match self.names.iter().position(|v| *v == name) {
                Some(i) => Ok(Poly::var(self.field, self.nvars(), i)),
                None => err(col, format!("unknown variable '{name}'")),
            },
            Tok::LParen => {
                let inner = self.expr(PREC_SUM)?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => err(self.col(), "expected ')'"),
                }
            }
            _ => err(col, "expected a number, a variable or '('"),
        }
    }
}

/// Parses `text` as a polynomial in the variables `names` over `field`.
pub fn parse_poly(text: &str, names: &[String], field: Field) -> Result<Poly, PolyParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
        names,
        field,
        depth: 0,
    };
    let poly = p.expr(PREC_SUM)?;
    if p.pos < p.toks.len() {
        return err(p.col(), "unexpected token after expression");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z_1".into()]
    }

    fn parse(s: &str) -> Poly {
        parse_poly(s, &names(), Field::Rational).unwrap()
    }

    #[test]
    fn precedence() {
        let n = names();
        assert_eq!(parse("2*x^2 + 3").display(&n).to_string(), "2*x^2 + 3");
        assert_eq!(parse("-x^2").display(&n).to_string(), "-x^2");
        assert_eq!(parse("(x + y)^2").display(&n).to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(parse("x - y - z_1").display(&n).to_string(), "x - y - z_1");
        assert_eq!(parse(" x*y - 1 ").display(&n).to_string(), "x*y - 1");
    }

    #[test]
    fn unknown_variable_has_column() {
        let e = parse_poly("x + w", &names(), Field::Rational).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(e.message.contains("'w'"));
    }

    #[test]
    fn structural_errors() {
        for bad in ["", "x +", "(x", "x)", "x^y", "x^2^2", "x ** 2", "3 $", "x^100"] {
            assert!(parse_poly(bad, &names(), Field::Rational).is_err(), "{bad}");
        }
    }

    #[test]
    fn prime_field_reduction() {
        let f = Field::prime(3).unwrap();
        let p = parse_poly("4*x + 3", &names(), f).unwrap();
        assert_eq!(p, Poly::var(f, 3, 0));
    }

    proptest! {
        #[test]
        fn never_panics(s in "[-+*^() xyz_0-9a]{0,40}") {
            let _ = parse_poly(&s, &names(), Field::Rational);
        }

        #[test]
        fn display_reparses(a in -5i64..5, b in 0u32..4, c in -5i64..5) {
            let n = names();
            let f = Field::Rational;
            let x = Poly::var(f, 3, 0);
            let y = Poly::var(f, 3, 1);
            let p = &(&x.pow(b).scale(&f.from_i64(a)) * &y) + &Poly::constant(f, 3, f.from_i64(c));
            let text = p.display(&n).to_string();
            prop_assert_eq!(parse_poly(&text, &n, f).unwrap(), p);
        }
    }
}
