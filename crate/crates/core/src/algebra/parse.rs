//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INTEGER)?
//! primary := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Division is accepted only by a nonzero constant, which is how rational
//! literals such as `1/2` are written.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rat, VarCtx};
use crate::error::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (offset, tok) = lexer.next()?;
            let end = tok == Tok::End;
            out.push((offset, tok));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Tok::End));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos < bytes.len() && bytes[self.pos] == b'.' {
                self.pos += 1;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                return Ok((start, Tok::Decimal));
            }
            let value: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Int(value)));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        let ch = self.src[start..].chars().next().expect("in bounds");
        Err(ParseError {
            offset: start,
            kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
        })
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    ctx: &'a VarCtx,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn offset(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Syntax(msg.into()),
        })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let divisor = self.unary()?;
                    let Some(c) = divisor.constant_value() else {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::NonConstantDivisor,
                        });
                    };
                    if c.is_zero() {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::DivisionByZero,
                        });
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exp = match self.bump().1 {
            Tok::Int(e) => e,
            Tok::Minus => {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::NegativeExponent,
                })
            }
            Tok::Decimal => {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::NonIntegerExponent,
                })
            }
            _ => {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::Syntax("exponent must be a non-negative integer literal".into()),
                })
            }
        };
        let exp: u32 = match u32::try_from(&exp) {
            Ok(e) => e,
            Err(_) => {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                })
            }
        };
        if *self.peek() == Tok::Caret {
            return self.syntax("chained `^` is ambiguous; use parentheses");
        }
        Ok(base.pow(exp))
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        let n = self.ctx.len();
        let (at, tok) = self.bump();
        match tok {
            Tok::Int(v) => Ok(Poly::constant(n, Rat::from_integer(v))),
            Tok::Decimal => Err(ParseError {
                offset: at,
                kind: ParseErrorKind::Syntax("decimal literals are not supported; write p/q".into()),
            }),
            Tok::Ident(name) => match self.ctx.index_of(&name) {
                Some(i) => Ok(Poly::var(n, i)),
                None => Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::UnknownIdentifier(name),
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(ParseError {
                offset: at,
                kind: ParseErrorKind::Syntax("unexpected end of input".into()),
            }),
            other => Err(ParseError {
                offset: at,
                kind: ParseErrorKind::Syntax(format!("unexpected token {other:?}")),
            }),
        }
    }
}

/// Parses `text` into a canonical polynomial over `ctx`.
pub fn parse_expr(text: &str, ctx: &VarCtx) -> Result<Poly, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut parser = Parser { toks, idx: 0, ctx };
    let poly = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.syntax("unexpected trailing input");
    }
    Ok(poly)
}
