//! Literal grammar shared by every input format.
//!
//! An expression is a sum of products of powers over the atoms
//!
//! * numbers (`3`, or a quotient of integer literals such as `3/2`),
//! * the indeterminate `t` (or `x`, used in minimal polynomials),
//! * `i` (Gaussian context) and `θ` / `theta` (extension generator),
//! * parenthesised subexpressions.
//!
//! Juxtaposition multiplies (`2i`, `2θ^1`), `/` divides by nonzero
//! constants, and `^` takes an integer exponent, which may be negative
//! when the base is a unit `c·t^m`. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::field::{Field, FieldKind, Scalar};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    /// 1-based character column within the literal.
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push((col, Tok::Num(digits.parse().expect("ascii digits"))));
            continue;
        }
        if c.is_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_alphabetic() {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ParseError {
                    col,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push((col, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a Field,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            col: self.col(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = LaurentPoly::zero(self.field);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.power()?;
                    let inv = d
                        .as_constant()
                        .and_then(|c| c.inv().ok())
                        .ok_or_else(|| ParseError {
                            col,
                            msg: "division only by nonzero constants".into(),
                        })?;
                    acc = acc.scale(&inv).expect("same field");
                }
                Some(Tok::Num(_)) => {
                    return self.err("a number cannot follow a factor without '*'");
                }
                _ if self.starts_atom() => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = match self.peek() {
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
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let v: i64 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let e = self.exponent()?;
        if e >= 0 {
            let e = u32::try_from(e).map_err(|_| ParseError {
                col,
                msg: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        let inv = base.unit_inverse().ok_or_else(|| ParseError {
            col,
            msg: "negative exponent requires a monomial base".into(),
        })?;
        Ok(inv.pow(e.unsigned_abs() as u32))
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(
                    self.field.from_rational(BigRational::from_integer(n)),
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.ident(&name, col)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn ident(&self, name: &str, col: usize) -> Result<LaurentPoly, ParseError> {
        let fail = |msg: String| Err(ParseError { col, msg });
        match name {
            "t" | "x" => Ok(LaurentPoly::t(self.field)),
            "i" if self.field.kind() == FieldKind::Gaussian => {
                Ok(LaurentPoly::constant(self.field.generator()))
            }
            "i" => fail(format!("'i' is not available in {}", self.field)),
            "θ" | "theta" if !self.field.is_rational() => {
                Ok(LaurentPoly::constant(self.field.generator()))
            }
            "θ" | "theta" => fail("'θ' requires an extension field".into()),
            // juxtaposed variables, e.g. "ti"
            _ => fail(format!("unknown symbol '{name}'")),
        }
    }
}

/// Parses a Laurent polynomial over `field`.
pub fn parse_poly(src: &str, field: &Field) -> Result<LaurentPoly, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError {
            col: 1,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        end_col: src.chars().count() + 1,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a scalar literal (an expression without `t`).
pub fn parse_scalar(src: &str, field: &Field) -> Result<Scalar, ParseError> {
    let p = parse_poly(src, field)?;
    p.as_constant().ok_or_else(|| ParseError {
        col: 1,
        msg: format!("'{src}' is not a constant"),
    })
}

/// Parses a monic rational polynomial in `x` or `t` and returns its
/// ascending coefficients.
pub fn parse_minpoly(src: &str) -> Result<Vec<BigRational>, ParseError> {
    let q = Field::rational();
    let p = parse_poly(src, &q)?;
    if p.low_exp().is_some_and(|e| e < 0) {
        return Err(ParseError {
            col: 1,
            msg: "minimal polynomial has negative exponents".into(),
        });
    }
    let deg = p.degree().unwrap_or(0);
    Ok((0..=deg)
        .map(|e| p.coeff(e).to_rational().expect("rational field"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    #[test]
    fn polynomial_literals() {
        let p = parse_poly("t^2 - t + 1", &q()).unwrap();
        assert_eq!(p, LaurentPoly::from_ints(&q(), 0, &[1, -1, 1]));
        let p = parse_poly("3*t^-1 + 2", &q()).unwrap();
        assert_eq!(p, LaurentPoly::from_ints(&q(), -1, &[3, 2]));
        let p = parse_poly("t/2 - 1/4", &q()).unwrap();
        assert_eq!(p.to_string(), "1/2*t - 1/4");
        let p = parse_poly("(t-1)^2", &q()).unwrap();
        assert_eq!(p, LaurentPoly::from_ints(&q(), 0, &[1, -2, 1]));
        let p = parse_poly("-t^-2", &q()).unwrap();
        assert_eq!(p, LaurentPoly::from_ints(&q(), -2, &[-1]));
    }

    #[test]
    fn scalar_literals() {
        let g = Field::gaussian();
        let s = parse_scalar("1-2i", &g).unwrap();
        assert_eq!(s.to_string(), "1-2i");
        assert_eq!(parse_scalar(" 3 / 2 ", &q()).unwrap().to_string(), "3/2");
        let e = Field::extension(&parse_minpoly("x^2 - x + 1").unwrap()).unwrap();
        let s = parse_scalar("2θ^1-1", &e).unwrap();
        assert_eq!(s.to_string(), "2θ^1-1");
        assert_eq!(parse_scalar("2*theta - 1", &e).unwrap(), s);
        // θ^2 reduces by the minimal polynomial
        assert_eq!(parse_scalar("θ^2", &e).unwrap().to_string(), "θ^1-1");
    }

    #[test]
    fn display_round_trips() {
        let g = Field::gaussian();
        for src in ["(1+i)*t^2 - i*t + 1", "1/2*t - 1/4", "-2i*t^-3 + (3/2-1/2i)"] {
            let p = parse_poly(src, &g).unwrap();
            assert_eq!(parse_poly(&p.to_string(), &g).unwrap(), p);
            assert_eq!(parse_poly(&p.to_compact_string(), &g).unwrap(), p);
        }
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_poly("t^2 + ? ", &q()).unwrap_err();
        assert_eq!(e.col, 7);
        let e = parse_poly("i + 1", &q()).unwrap_err();
        assert_eq!(e.col, 1);
        assert!(parse_poly("(t+1)^-1", &q()).is_err());
        assert!(parse_poly("t/(t+1)", &q()).is_err());
        assert!(parse_poly("t^2 t", &q()).is_ok());
        assert!(parse_poly("(t+1", &q()).is_err());
        assert!(parse_scalar("t", &q()).is_err());
    }
}
