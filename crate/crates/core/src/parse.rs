//! Text syntax for integer polynomials.
//!
//! ```text
//! expr := term (('+'|'-') term)*
//! term := [integer] ['*'] ['x' ['^' natural]]
//! ```
//! or a bracketed ascending coefficient list `[c0, c1, ...]`. Whitespace is
//! ignored; offsets in errors are byte offsets into the original text.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("syntax error at offset {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.text[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(self.text[start..start + len].parse().expect("ascii digits"))
    }
}

pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    match cur.peek() {
        None => Err(ParseError::EmptyInput),
        Some('[') => parse_list(&mut cur),
        Some(_) => parse_expr(&mut cur),
    }
}

fn parse_list(cur: &mut Cursor) -> Result<IntPoly, ParseError> {
    cur.bump();
    let mut coeffs = Vec::new();
    if cur.peek() == Some(']') {
        cur.bump();
        return finish(cur, IntPoly::zero());
    }
    loop {
        let neg = match cur.peek() {
            Some('-') => {
                cur.bump();
                true
            }
            Some('+') => {
                cur.bump();
                false
            }
            _ => false,
        };
        let v = cur.digits().ok_or_else(|| cur.error("expected integer"))?;
        coeffs.push(if neg { -v } else { v });
        match cur.peek() {
            Some(',') => cur.bump(),
            Some(']') => {
                cur.bump();
                break;
            }
            _ => return Err(cur.error("expected ',' or ']'")),
        }
    }
    finish(cur, IntPoly::new(coeffs))
}

fn finish(cur: &mut Cursor, p: IntPoly) -> Result<IntPoly, ParseError> {
    match cur.peek() {
        None => Ok(p),
        Some(_) => Err(cur.error("unexpected trailing input")),
    }
}

fn parse_expr(cur: &mut Cursor) -> Result<IntPoly, ParseError> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            Some('+') => {
                cur.bump();
                BigInt::one()
            }
            Some('-') => {
                cur.bump();
                -BigInt::one()
            }
            None if !first => break,
            None => return Err(ParseError::EmptyInput),
            Some(_) if first => BigInt::one(),
            Some(_) => return Err(cur.error("expected '+' or '-'")),
        };
        first = false;
        let (c, e) = parse_term(cur)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::zero());
        }
        coeffs[e] += sign * c;
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_term(cur: &mut Cursor) -> Result<(BigInt, usize), ParseError> {
    let coeff = cur.digits();
    if coeff.is_some() && cur.peek() == Some('*') {
        cur.bump();
        if cur.peek() != Some('x') {
            return Err(cur.error("expected 'x' after '*'"));
        }
    }
    if cur.peek() != Some('x') {
        return coeff
            .map(|c| (c, 0))
            .ok_or_else(|| cur.error("expected integer or 'x'"));
    }
    cur.bump();
    let coeff = coeff.unwrap_or_else(BigInt::one);
    if cur.peek() != Some('^') {
        return Ok((coeff, 1));
    }
    cur.bump();
    cur.skip_ws();
    let e = cur
        .digits()
        .ok_or_else(|| cur.error("expected natural exponent"))?;
    let e: usize = e
        .try_into()
        .map_err(|_| cur.error("exponent too large"))?;
    if e > 1 << 20 {
        return Err(cur.error("exponent too large"));
    }
    Ok((coeff, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sample_quartic() {
        assert_eq!(
            parse_poly("x^4-2x^3+x-1").unwrap(),
            IntPoly::from_coeffs(&[-1, 1, 0, -2, 1])
        );
    }

    #[test]
    fn parses_lists_and_whitespace() {
        assert_eq!(parse_poly("[1,0,1]").unwrap(), IntPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(parse_poly(" [ -1 , 2 ] ").unwrap(), IntPoly::from_coeffs(&[-1, 2]));
        assert_eq!(parse_poly("[]").unwrap(), IntPoly::zero());
        assert_eq!(parse_poly(" - x ^ 2 + 3 * x").unwrap(), IntPoly::from_coeffs(&[0, 3, -1]));
        assert_eq!(parse_poly("0").unwrap(), IntPoly::zero());
        assert_eq!(parse_poly("x+x").unwrap(), IntPoly::from_coeffs(&[0, 2]));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(
            parse_poly("x^-1"),
            Err(ParseError::SyntaxError {
                offset: 2,
                message: "expected natural exponent".into()
            })
        );
        assert_eq!(parse_poly("   "), Err(ParseError::EmptyInput));
        assert!(matches!(parse_poly("x+"), Err(ParseError::SyntaxError { offset: 2, .. })));
        assert!(matches!(parse_poly("2y"), Err(ParseError::SyntaxError { offset: 1, .. })));
        assert!(matches!(parse_poly("[1,2"), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn big_coefficients_survive() {
        let p = parse_poly("123456789012345678901234567890x^2-1").unwrap();
        assert_eq!(p.to_string(), "123456789012345678901234567890x^2-1");
    }
}
