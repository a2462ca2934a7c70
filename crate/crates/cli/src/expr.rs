//! Generating-function expressions such as `1/(1-z)` or `z/(1-z^2)`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := base ('^' integer)?
//! base   := integer | 'z' | '(' expr ')'
//! ```
//!
//! Rationals are written `p/q` and parse as a quotient of integers.
//! Whitespace is ignored and the Unicode minus sign is accepted.

use std::fmt;

use num_bigint::BigInt;
use riordan::{Coefficient, Series};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Rational(Coefficient),
    Z,
    Neg(Box<Expression>),
    Sum(Box<Expression>, Box<Expression>),
    Difference(Box<Expression>, Box<Expression>),
    Product(Box<Expression>, Box<Expression>),
    Quotient(Box<Expression>, Box<Expression>),
    Power(Box<Expression>, u32),
}

/// A syntax error at a 1-based character position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: expected {}, found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "`{n}`"),
            Token::Z => f.write_str("`z`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::Slash => f.write_str("`/`"),
            Token::Caret => f.write_str("`^`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push((pos, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'z' => Token::Z,
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(ParseError {
                    position: pos,
                    expected: vec!["integer", "`z`", "operator", "parenthesis"],
                    found: format!("`{other}`"),
                })
            }
        };
        tokens.push((pos, tok));
        i += 1;
    }
    tokens.push((chars.len() + 1, Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].1.clone();
        if t != Token::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let (position, tok) = &self.tokens[self.at];
        ParseError { position: *position, expected, found: tok.to_string() }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expression::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expression::Difference(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = Expression::Product(Box::new(lhs), Box::new(self.factor()?));
                }
                Token::Slash => {
                    self.bump();
                    lhs = Expression::Quotient(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expression::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Token::Int(n) => {
                let e = u32::try_from(&n).map_err(|_| self.error(vec!["exponent below 2^32"]))?;
                self.bump();
                Ok(Expression::Power(Box::new(base), e))
            }
            _ => Err(self.error(vec!["nonnegative integer exponent"])),
        }
    }

    fn base(&mut self) -> Result<Expression, ParseError> {
        match self.peek().clone() {
            Token::Int(n) => {
                self.bump();
                Ok(Expression::Rational(Coefficient::from_integer(n)))
            }
            Token::Z => {
                self.bump();
                Ok(Expression::Z)
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(vec!["`)`", "operator"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(vec!["integer", "`z`", "`(`", "`-`"])),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    let mut parser = Parser { tokens: lex(text)?, at: 0 };
    let e = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(vec!["operator", "end of input"]));
    }
    Ok(e)
}

impl Expression {
    /// Expands the expression as a series truncated at `n`. Division needs a
    /// denominator with nonzero constant term.
    pub fn eval(&self, n: usize) -> riordan::Result<Series> {
        Ok(match self {
            Expression::Rational(c) => Series::constant(c.clone(), n),
            Expression::Z => Series::z(n),
            Expression::Neg(a) => a.eval(n)?.neg(),
            Expression::Sum(a, b) => a.eval(n)?.add(&b.eval(n)?)?,
            Expression::Difference(a, b) => a.eval(n)?.sub(&b.eval(n)?)?,
            Expression::Product(a, b) => a.eval(n)?.mul(&b.eval(n)?)?,
            Expression::Quotient(a, b) => {
                let den = b.eval(n)?;
                if den.classify() != riordan::SeriesClass::Unit {
                    return Err(riordan::Error::Domain(
                        "division by a series with zero constant term".into(),
                    ));
                }
                a.eval(n)?.div(&den)?
            }
            Expression::Power(a, e) => a.eval(n)?.pow(*e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use riordan::series::{int, rat};

    fn lit(n: i64) -> Box<Expression> {
        Box::new(Expression::Rational(int(n)))
    }

    #[test]
    fn parses_geometric() {
        let e = parse_expression("1/(1-z)").unwrap();
        let expected =
            Expression::Quotient(lit(1), Box::new(Expression::Difference(lit(1), Box::new(Expression::Z))));
        assert_eq!(e, expected);
        assert_eq!(e.eval(4).unwrap(), Series::geometric(4));
    }

    #[test]
    fn odd_geometric() {
        let s = parse_expression("z/(1−z^2)").unwrap().eval(7).unwrap();
        assert_eq!(s, Series::from_ints(&[0, 1, 0, 1, 0, 1, 0, 1], 7));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expression("-z^2").unwrap().eval(3).unwrap(), Series::from_ints(&[0, 0, -1], 3));
        assert_eq!(
            parse_expression("1/2*z + 3").unwrap().eval(2).unwrap(),
            Series::new(vec![int(3), rat(1, 2), int(0)])
        );
        assert_eq!(parse_expression("2^3").unwrap().eval(0).unwrap(), Series::from_ints(&[8], 0));
        assert_eq!(parse_expression("1 - z - z").unwrap().eval(1).unwrap(), Series::from_ints(&[1, -2], 1));
    }

    #[test]
    fn division_by_non_unit() {
        let e = parse_expression("1/z").unwrap();
        assert!(matches!(e.eval(4), Err(riordan::Error::Domain(_))));
    }

    #[test]
    fn error_positions() {
        let err = parse_expression("1 + * z").unwrap_err();
        assert_eq!(err.position, 5);
        assert_eq!(err.found, "`*`");
        let err = parse_expression("(1 - z").unwrap_err();
        assert_eq!(err.position, 7);
        assert_eq!(err.found, "end of input");
        let err = parse_expression("z^z").unwrap_err();
        assert_eq!(err.position, 3);
        let err = parse_expression("1 + x").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(parse_expression("z z").is_err());
        assert!(parse_expression("").is_err());
    }
}
