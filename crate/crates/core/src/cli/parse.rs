//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | atom ('^' nat)?
//! atom  := 'z1' | 'z2' | 'i' | nat ('/' nat)? | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{GaussianRational, Polynomial};

/// Largest total degree any subexpression may expand to.
pub const DEGREE_LIMIT: u32 = 256;

/// Byte offsets into the source, end exclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Var {
    Z1,
    Z2,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Var(Var),
    Literal(GaussianRational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "kind")]
pub enum ParseError {
    #[error("syntax error at {}..{}: {message}", span.start, span.end)]
    SyntaxError { span: Span, message: String },
    #[error("negative exponent at {}..{}", span.start, span.end)]
    NegativeExponent { span: Span },
    #[error("unknown variable `{name}` at {}..{}", span.start, span.end)]
    UnknownVariable { span: Span, name: String },
    #[error("degree limit {DEGREE_LIMIT} exceeded at {}..{}", span.start, span.end)]
    DegreeLimitExceeded { span: Span },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::SyntaxError { span, .. }
            | ParseError::NegativeExponent { span }
            | ParseError::UnknownVariable { span, .. }
            | ParseError::DegreeLimitExceeded { span } => *span,
        }
    }
}

/// Parsed source with its syntax tree.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedExpr {
    pub source: String,
    pub ast: Expr,
}

impl ParsedExpr {
    /// Exact expansion; fails only on [`DEGREE_LIMIT`].
    pub fn expand(&self) -> Result<Polynomial, ParseError> {
        expand(&self.ast)
    }
}

fn expand(e: &Expr) -> Result<Polynomial, ParseError> {
    let over = |d: u64| {
        if d > DEGREE_LIMIT as u64 {
            Err(ParseError::DegreeLimitExceeded { span: e.span })
        } else {
            Ok(())
        }
    };
    let deg = |p: &Polynomial| p.total_degree().unwrap_or(0) as u64;
    Ok(match &e.kind {
        ExprKind::Add(a, b) => &expand(a)? + &expand(b)?,
        ExprKind::Sub(a, b) => &expand(a)? - &expand(b)?,
        ExprKind::Mul(a, b) => {
            let (a, b) = (expand(a)?, expand(b)?);
            over(deg(&a) + deg(&b))?;
            &a * &b
        }
        ExprKind::Pow(a, k) => {
            let a = expand(a)?;
            over(deg(&a) * *k as u64)?;
            a.pow(*k)
        }
        ExprKind::Neg(a) => -&expand(a)?,
        ExprKind::Var(Var::Z1) => Polynomial::z1(),
        ExprKind::Var(Var::Z2) => Polynomial::z2(),
        ExprKind::Literal(c) => Polynomial::constant(c.clone()),
    })
}

/// Parses and expands in one step.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    parse_poly(text)?.expand()
}

pub fn parse_poly(text: &str) -> Result<ParsedExpr, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let ast = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax(parser.pos, "expected an operator or end of input"));
    }
    Ok(ParsedExpr {
        source: text.to_string(),
        ast,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, at: usize, message: &str) -> ParseError {
        // Span covers one character, or is empty at end of input.
        let end = (at + 1).min(self.src.len());
        let end = (end..=self.src.len())
            .find(|&e| std::str::from_utf8(&self.src[at..e]).is_ok())
            .unwrap_or(self.src.len());
        ParseError::SyntaxError {
            span: Span { start: at, end },
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            let kind = if op == b'+' {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            let start = self.pos;
            self.pos += 1;
            let inner = self.unary()?;
            let span = Span {
                start,
                end: inner.span.end,
            };
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let (k, kspan) = self.exponent()?;
        let span = base.span.join(kspan);
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), k),
            span,
        })
    }

    fn exponent(&mut self) -> Result<(u32, Span), ParseError> {
        let start = match self.peek() {
            Some(b) if b.is_ascii_digit() => self.pos,
            Some(b'-') => return Err(self.negative_exponent(self.pos)),
            Some(b'(') => {
                let open = self.pos;
                let save = self.pos;
                self.pos += 1;
                if self.peek() == Some(b'-') {
                    return Err(self.negative_exponent(open));
                }
                self.pos = save;
                return Err(self.syntax(open, "exponent must be a nonnegative integer literal"));
            }
            _ => return Err(self.syntax(self.pos, "expected an exponent")),
        };
        let k = self.digits().parse::<u32>();
        let span = Span {
            start,
            end: self.pos,
        };
        let k = k.map_err(|_| ParseError::DegreeLimitExceeded { span })?;
        Ok((k, span))
    }

    /// Span runs from `start` through the closing parenthesis or the digits.
    fn negative_exponent(&mut self, start: usize) -> ParseError {
        let mut end = self.pos;
        while end < self.src.len()
            && !matches!(self.src[end], b')')
            && !self.src[end].is_ascii_alphabetic()
        {
            if matches!(self.src[end], b'+' | b'*') {
                break;
            }
            end += 1;
        }
        if end < self.src.len() && self.src[end] == b')' {
            end += 1;
        }
        ParseError::NegativeExponent {
            span: Span {
                start,
                end: end.max(start + 1),
            },
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.syntax(self.pos, "unexpected end of input")),
        };
        let b = self.src[start];
        if b == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.syntax(self.pos, "expected `)`"));
            }
            self.pos += 1;
            return Ok(Expr {
                kind: inner.kind,
                span: Span {
                    start,
                    end: self.pos,
                },
            });
        }
        if b.is_ascii_digit() {
            let num: BigInt = self.digits().parse().expect("digits");
            let mut den = BigInt::from(1);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                match self.peek() {
                    Some(d) if d.is_ascii_digit() => den = self.digits().parse().expect("digits"),
                    _ => return Err(self.syntax(self.pos, "expected a denominator")),
                }
                if den.is_zero() {
                    return Err(ParseError::SyntaxError {
                        span: Span {
                            start: at,
                            end: self.pos,
                        },
                        message: "zero denominator".to_string(),
                    });
                }
            }
            let q = BigRational::new(num, den);
            let span = Span {
                start,
                end: self.pos,
            };
            return Ok(Expr {
                kind: ExprKind::Literal(GaussianRational::new(q, BigRational::zero())),
                span,
            });
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let span = Span {
                start,
                end: self.pos,
            };
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
            let kind = match name {
                "z1" => ExprKind::Var(Var::Z1),
                "z2" => ExprKind::Var(Var::Z2),
                "i" => ExprKind::Literal(GaussianRational::i()),
                _ => {
                    return Err(ParseError::UnknownVariable {
                        span,
                        name: name.to_string(),
                    })
                }
            };
            return Ok(Expr { kind, span });
        }
        Err(self.syntax(start, "expected `z1`, `z2`, `i`, a number or `(`"))
    }
}
